//! Orthogonality in both pairing modes, and their agreement for integer k.

use bc1::pairing::{pair_scalar, PairingKind};
use bc1::polynomials::nonsym_jacobi;
use bc1::rational::{fmt_rat, rat};
use bc1::Multiplicity;

fn main() -> bc1::Result<()> {
    let k = Multiplicity::ints(2, 1);
    let (ct, mo) = (PairingKind::ct(&k), PairingKind::moments(&k));
    let e: Vec<_> = (-2..=2).map(|n| nonsym_jacobi(n, &k)).collect::<bc1::Result<_>>()?;
    for (i, a) in e.iter().enumerate() {
        let row: Vec<String> = e.iter().map(|b| pair_scalar(a, b, &ct).map(|v| fmt_rat(&v))).collect::<bc1::Result<_>>()?;
        println!("E({}): {}", i as i64 - 2, row.join("  "));
    }
    let sq = pair_scalar(&e[3], &e[3], &ct)?;
    println!("||E(1)||² constant term = {}, moments = {}", fmt_rat(&sq), fmt_rat(&pair_scalar(&e[3], &e[3], &mo)?));

    // non-integer k: only the moments pairing is available
    let kf = Multiplicity::new(rat(1, 2), rat(1, 3));
    let m = PairingKind::moments(&kf);
    let (a, b) = (nonsym_jacobi(2, &kf)?, nonsym_jacobi(-1, &kf)?);
    println!("k={kf}: (E(2), E(-1)) = {}", fmt_rat(&pair_scalar(&a, &b, &m)?));
    Ok(())
}
