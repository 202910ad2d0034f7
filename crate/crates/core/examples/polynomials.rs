//! The first few non-symmetric polynomials, their symmetric parts and the matrix families.

use bc1::polynomials::{c_n, mat_families, nonsym_jacobi, sym_jacobi};
use bc1::rational::fmt_rat;
use bc1::Multiplicity;

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    for n in -3..=3 {
        println!("E({n}, {k}) = {}", nonsym_jacobi(n, &k)?);
    }
    for n in 0..=3 {
        println!("p({n}, {k}) = {}", sym_jacobi(n, &k)?);
    }
    for n in 0..=3 {
        let f = mat_families(n, &k)?;
        println!("N={n}: c_N = {}, M = U⁻¹NUC holds: {}", fmt_rat(&c_n(n, &k)?), f.relation_holds);
    }
    // k = 0 collapses to monomials
    let k0 = Multiplicity::ints(0, 0);
    println!("E(-2, {k0}) = {}", nonsym_jacobi(-2, &k0)?);
    Ok(())
}
