//! Exact computation of non-symmetric Jacobi polynomials of type BC1 and
//! their operator calculus over the rationals.

pub mod cfunc;
pub mod error;
pub mod hc;
pub mod laurent;
pub mod multiplicity;
pub mod operator;
pub mod ops;
pub mod pairing;
pub mod polynomials;
pub mod rational;
pub mod ratfunc;
pub mod shift;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::{Laurent, PolyX, Var};
pub use multiplicity::{Label, Multiplicity, Shift};
pub use operator::{DROp, MatOp};
pub use rational::Rat;
pub use ratfunc::RatFunc;
