//! c-functions, norms and values at the identity.

use bc1::cfunc::{c_function, evaluation_at_identity, lowering_of_one_at_e, norm_formula, weight_norm_constant, CKind};
use bc1::rational::{fmt_rat, int};
use bc1::{Label, Multiplicity, Shift};

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    println!("c̃_1(3) = {}", fmt_rat(&c_function(CKind::TildeOne, &int(3), &k)?.value));
    println!("c̃_s(2) = {}", fmt_rat(&c_function(CKind::TildeS, &int(2), &k)?.value));
    for lam in -3..=3 {
        let n = norm_formula(Label(lam), &k)?;
        let e = evaluation_at_identity(Label(lam), &k)?;
        println!(
            "λ={lam}: ||E||² = {}, c-side = {}, ratio = {} | E(1) = {} = {}",
            fmt_rat(&n.lhs),
            fmt_rat(&n.rhs),
            fmt_rat(&n.constant),
            fmt_rat(&e.lhs),
            fmt_rat(&e.rhs)
        );
    }
    println!("2^(-k1-k2) = {}", fmt_rat(&weight_norm_constant(&k).unwrap()));
    let g = lowering_of_one_at_e(Shift::E_PLUS, &k)?;
    println!("lowering of 1 at e: plain {}, rescaled {}, c̃-ratio {}", fmt_rat(&g.plain), fmt_rat(&g.rescaled), fmt_rat(&g.c_ratio));
    Ok(())
}
