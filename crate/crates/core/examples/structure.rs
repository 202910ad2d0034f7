//! Factoring a shift operator as S(ℓ,k)·p(B_k), and the D(W_k) decomposition.

use bc1::laurent::{Laurent, Var};
use bc1::ops::{base_operator, composite_shift, poly_of, Realization};
use bc1::structure::{decompose_dw, decompose_shift, dw_word, recompose};
use bc1::rational::fmt_rat;
use bc1::{Multiplicity, Shift};

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    let p = Laurent::from_ints(Var::Xi, &[(2, 3), (0, -1)]);
    for r in Realization::ALL {
        let l = Shift::E_PLUS;
        let op = composite_shift(r, l, &k)?.compose(&poly_of(&p, &base_operator(r, &k)));
        let d = decompose_shift(&op, r, l, &k)?;
        println!("{r:?}: p = {}, round trip exact: {}", d.poly, recompose(&d, r, &k)?.equals(&op));
    }
    // 𝔇_k · S′ · 𝔇_k
    let w = dw_word(&[2, 1, 2], &k);
    for t in decompose_dw(&w, &k)? {
        println!("order {}: c = {}, c' = {}", t.order, fmt_rat(&t.c), fmt_rat(&t.c_prime));
    }
    Ok(())
}
