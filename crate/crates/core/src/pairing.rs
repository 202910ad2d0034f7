//! Inner products: constant term on the circle, moments on [−1, 1], vector pairing.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{lift_x, steinberg_split, x_in_z, Laurent, PolyX, Var};
use crate::multiplicity::Multiplicity;
use crate::rational::{factorial, half, int, poch, pow2, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingMode {
    ConstantTerm,
    Moments,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingKind {
    pub mode: PairingMode,
    pub k: Multiplicity,
}

impl PairingKind {
    pub fn ct(k: &Multiplicity) -> Self {
        PairingKind { mode: PairingMode::ConstantTerm, k: k.clone() }
    }

    pub fn moments(k: &Multiplicity) -> Self {
        PairingKind { mode: PairingMode::Moments, k: k.clone() }
    }

    /// Constant term when k is a nonnegative integer pair, moments otherwise.
    pub fn auto(k: &Multiplicity) -> Self {
        if k.is_nonneg_integral() {
            Self::ct(k)
        } else {
            Self::moments(k)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentTable {
    pub alpha: Rat,
    pub beta: Rat,
    pub nu: Vec<Rat>,
}

/// δ_k = (1 − (z+1/z)/2)^k1 (1 − (z²+1/z²)/2)^k2 for integer k ≥ 0.
pub fn weight(k: &Multiplicity) -> Result<Laurent> {
    let (k1, k2) = k
        .as_ints()
        .filter(|(a, b)| *a >= 0 && *b >= 0)
        .ok_or_else(|| Error::Domain(format!("constant-term weight needs integer k >= 0, got {k}")))?;
    let one = Laurent::one(Var::Z);
    let a = &one - &x_in_z();
    let b = &one - &Laurent::from_terms(Var::Z, [(2, half()), (-2, half())]);
    Ok(&a.pow(k1 as u32) * &b.pow(k2 as u32))
}

/// ν_m = μ_m/μ_0 for the weight (1−x)^α (1+x)^β.
pub fn normalized_moments(alpha: &Rat, beta: &Rat, count: usize) -> Result<MomentTable> {
    let mut nu = vec![Rat::one()];
    let s = alpha + beta + int(2);
    for m in 0..count.saturating_sub(1) {
        let d = &s + int(m as i64);
        if d.is_zero() {
            return Err(Error::Domain("moment recurrence hits a zero denominator".into()));
        }
        let prev = if m == 0 { Rat::zero() } else { nu[m - 1].clone() };
        let next = ((beta - alpha) * &nu[m] + int(m as i64) * prev) / d;
        nu.push(next);
    }
    Ok(MomentTable { alpha: alpha.clone(), beta: beta.clone(), nu })
}

/// CT(δ_k) in closed form for integer k ≥ 0:
/// 2^{k1+3k2} (1/2)_{k1+k2} (1/2)_{k2} / (k1+2k2)!.
pub fn total_mass(k: &Multiplicity) -> Option<Rat> {
    let (k1, k2) = k.as_ints().filter(|(a, b)| *a >= 0 && *b >= 0)?;
    Some(
        pow2(k1 + 3 * k2) * poch(&half(), (k1 + k2) as u32) * poch(&half(), k2 as u32)
            / factorial((k1 + 2 * k2) as u32),
    )
}

/// ∫ h(x) w_k(x) dx in the artifact's normalization.
fn integrate_x(h: &PolyX, p: &PairingKind) -> Result<Rat> {
    match p.mode {
        PairingMode::ConstantTerm => Ok((&lift_x(h) * &weight(&p.k)?).constant_term()),
        PairingMode::Moments => {
            let t = normalized_moments(&p.k.alpha(), &p.k.beta(), (h.degree() + 1).max(1) as usize)?;
            let s = h.terms().fold(Rat::zero(), |acc, (e, c)| acc + c * &t.nu[e as usize]);
            Ok(s * total_mass(&p.k).unwrap_or_else(Rat::one))
        }
    }
}

/// P1Q1 + x(P1Q2 + P2Q1) + P2Q2, the integrand of the vector pairing against W_k.
fn vector_integrand(p: &[PolyX; 2], q: &[PolyX; 2]) -> PolyX {
    let x = Laurent::monomial(Var::X, 1, Rat::one());
    &(&(&p[0] * &q[0]) + &(&x * &(&(&p[0] * &q[1]) + &(&p[1] * &q[0])))) + &(&p[1] * &q[1])
}

pub fn pair_scalar(f: &Laurent, g: &Laurent, p: &PairingKind) -> Result<Rat> {
    match p.mode {
        PairingMode::ConstantTerm => Ok((&(&f.reflect() * g) * &weight(&p.k)?).constant_term()),
        PairingMode::Moments => {
            let (f1, f2) = steinberg_split(f);
            let (g1, g2) = steinberg_split(g);
            integrate_x(&vector_integrand(&[f1, f2], &[g1, g2]), p)
        }
    }
}

/// Pairing of x-polynomial vectors against W_k; constant-term mode for integer k.
pub fn pair_vector(pv: &[PolyX; 2], qv: &[PolyX; 2], k: &Multiplicity) -> Result<Rat> {
    integrate_x(&vector_integrand(pv, qv), &PairingKind::auto(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::steinberg_split;
    use crate::rational::rat;

    fn zp(t: &[(i64, i64)]) -> Laurent {
        Laurent::from_ints(Var::Z, t)
    }

    #[test]
    fn ct_examples() {
        let one = Laurent::one(Var::Z);
        assert_eq!(pair_scalar(&one, &one, &PairingKind::ct(&Multiplicity::ints(0, 0))).unwrap(), int(1));
        assert_eq!(pair_scalar(&one, &Laurent::z(1), &PairingKind::ct(&Multiplicity::ints(1, 0))).unwrap(), rat(-1, 2));
        assert_eq!(pair_scalar(&one, &one, &PairingKind::ct(&Multiplicity::ints(2, 1))).unwrap(), rat(5, 4));
        let k = Multiplicity::new(rat(1, 2), int(0));
        assert!(pair_scalar(&one, &one, &PairingKind::ct(&k)).is_err());
    }

    #[test]
    fn vector_examples() {
        let k = Multiplicity::ints(1, 0);
        let v1 = steinberg_split(&Laurent::one(Var::Z));
        let vz = steinberg_split(&Laurent::z(1));
        assert_eq!(pair_vector(&[v1.0.clone(), v1.1.clone()], &[vz.0.clone(), vz.1.clone()], &k).unwrap(), rat(-1, 2));
        assert_eq!(pair_vector(&[vz.0.clone(), vz.1.clone()], &[vz.0, vz.1], &k).unwrap(), int(1));
        assert_eq!(pair_vector(&[v1.0.clone(), v1.1.clone()], &[v1.0, v1.1], &Multiplicity::ints(2, 1)).unwrap(), rat(5, 4));
    }

    #[test]
    fn moment_examples() {
        let t = normalized_moments(&rat(1, 2), &rat(-1, 2), 3).unwrap();
        assert_eq!(t.nu[1], rat(-1, 2));
        let t = normalized_moments(&rat(3, 7), &rat(3, 7), 3).unwrap();
        assert_eq!(t.nu[1], int(0));
        let t = normalized_moments(&rat(-1, 2), &rat(-1, 2), 3).unwrap();
        assert_eq!(t.nu[2], rat(1, 2));
    }

    #[test]
    fn modes_agree_on_integer_k() {
        for (k1, k2) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)] {
            let k = Multiplicity::ints(k1, k2);
            assert_eq!(total_mass(&k).unwrap(), weight(&k).unwrap().constant_term());
            for a in -6..=6 {
                for b in -6..=6 {
                    let (f, g) = (Laurent::z(a), zp(&[(b, 1), (0, 2)]));
                    assert_eq!(
                        pair_scalar(&f, &g, &PairingKind::ct(&k)).unwrap(),
                        pair_scalar(&f, &g, &PairingKind::moments(&k)).unwrap()
                    );
                }
            }
        }
    }
}
