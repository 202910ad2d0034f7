//! Constant terms, the Harish-Chandra image and series reconstruction.

use bc1::hc::{constant_term, eigenvalue_map, expansion, hc_map, p_of_cherednik, reconstruct, s_star_invariance, transfer};
use bc1::laurent::{Laurent, Var};
use bc1::rational::{fmt_rat, int, rat};
use bc1::Multiplicity;

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    let p = Laurent::from_ints(Var::Xi, &[(2, 1), (0, 1)]);
    let d = transfer(&p_of_cherednik(&p, &k));
    let ct = constant_term(&d)?;
    println!("constant term: {:?}", ct.e.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    let h = hc_map(&d, &k)?;
    println!("HC image: {:?}", h.e.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("series from constant term matches: {}", reconstruct(&ct, &k, 8)? == expansion(&d, 8)?);
    let ev = eigenvalue_map(&p, &k, &int(2));
    println!("γ_EV(p) at N=2: diag({}, {})", fmt_rat(&ev[0]), fmt_rat(&ev[1]));
    let inv = s_star_invariance(&p, &k, &rat(3, 2));
    println!("s_* invariance (λ+½ reading): {}, literal reading: {}", inv.shifted, inv.literal);
    Ok(())
}
