//! Factoring shift operators as (composite shift) × p(base operator) by
//! leading-coefficient elimination, and the commutant of diag(ML_{k+}, ML_{k−}).

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Var};
use crate::multiplicity::{Multiplicity, Shift};
use crate::operator::{mat_op_equal, DROp, MatOp};
use crate::ops::{base_operator, composite_shift, diag_ml, frak_d, poly_of, s_prime, transmutes, AnyOp, Realization};
use crate::polynomials::{c_n, nonsym_jacobi};
use crate::rational::Rat;
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub ell: Shift,
    /// p in ξ; for the symmetric realization a polynomial in ML_k.
    pub poly: Laurent,
    pub residual_is_zero: bool,
}

/// Top-order coefficients of every entry and reflection slot.
fn top_coeffs(op: &AnyOp, o: i64) -> Vec<RatFunc> {
    let one = |d: &DROp| {
        if o < 0 {
            return vec![RatFunc::zero(), RatFunc::zero()];
        }
        vec![d.coeff(o as u32, 0), d.coeff(o as u32, 1)]
    };
    match op {
        AnyOp::Scalar(d) => one(d),
        AnyOp::Matrix(m) => (0..2).flat_map(|i| (0..2).flat_map(move |j| one(m.get(i, j)))).collect(),
    }
}

/// The constant c with top(a) = c·top(b), if there is one.
fn proportional(a: &[RatFunc], b: &[RatFunc]) -> Option<Rat> {
    let mut c: Option<Rat> = None;
    for (x, y) in a.iter().zip(b) {
        if y.is_zero() {
            if !x.is_zero() {
                return None;
            }
            continue;
        }
        let r = (x * &y.recip().ok()?).as_constant()?;
        match &c {
            None => c = Some(r),
            Some(c0) if *c0 != r => return None,
            _ => {}
        }
    }
    c
}

fn base_order(r: Realization) -> i64 {
    if r == Realization::Sym {
        2
    } else {
        1
    }
}

/// Writes `op` as S(ℓ,k)·p(B_k), S the composite shift and B_k the base operator.
///
/// A zero residual means op = S·p(B) exactly, which transmutes already; the
/// (costly) transmutation test only runs to classify a failure.
pub fn decompose_shift(op: &AnyOp, r: Realization, l: Shift, k: &Multiplicity) -> Result<Decomposition> {
    match eliminate(op, r, l, k) {
        Ok(poly) => Ok(Decomposition { ell: l, poly, residual_is_zero: true }),
        Err(Error::NotAShiftOperator) if !transmutes(r, op, l, k) => Err(Error::NotTransmuting),
        Err(e) => Err(e),
    }
}

fn eliminate(op: &AnyOp, r: Realization, l: Shift, k: &Multiplicity) -> Result<Laurent> {
    let g = composite_shift(r, l, k)?;
    let b = base_operator(r, k);
    let step = base_order(r);
    let mut rest = op.clone();
    let mut poly = Laurent::zero(Var::Xi);
    // g·b^m for increasing m, built lazily
    let mut powers = vec![g.clone()];
    while !rest.is_zero() {
        let o = rest.order();
        let d = o - g.order();
        if d < 0 || d % step != 0 {
            return Err(Error::NotAShiftOperator);
        }
        let m = (d / step) as usize;
        while powers.len() <= m {
            let next = powers.last().unwrap().compose(&b);
            powers.push(next);
        }
        let c = proportional(&top_coeffs(&rest, o), &top_coeffs(&powers[m], o)).ok_or(Error::NotAShiftOperator)?;
        rest = rest.sub(&powers[m].scale(&c));
        if rest.order() >= o && !rest.is_zero() {
            return Err(Error::NotAShiftOperator);
        }
        poly.add_term(m as i64, c);
    }
    Ok(poly)
}

/// S(ℓ,k)·p(B_k)
pub fn recompose(d: &Decomposition, r: Realization, k: &Multiplicity) -> Result<AnyOp> {
    let g = composite_shift(r, d.ell, k)?;
    Ok(g.compose(&poly_of(&d.poly, &base_operator(r, k))))
}

/// One graded piece (c·I + c′·S′)·B^M, or 𝔇_k·(c·I + c′·S′)·B^M for odd order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DwTerm {
    pub order: i64,
    #[serde(with = "crate::rational::serde_rat")]
    pub c: Rat,
    #[serde(with = "crate::rational::serde_rat")]
    pub c_prime: Rat,
}

fn dw_piece(order: i64, a: &Rat, b: &Rat, k: &Multiplicity) -> MatOp {
    let diag = MatOp::diag(DROp::scalar(a.clone()), DROp::scalar(b.clone()));
    let bm = diag_ml(k).pow((order / 2) as u32);
    if order % 2 == 0 {
        &diag * &bm
    } else {
        &(&frak_d(k) * &diag) * &bm
    }
}

/// Expresses an operator commuting with diag(ML_{k+}, ML_{k−}) through I, S′ and 𝔇_k.
pub fn decompose_dw(op: &MatOp, k: &Multiplicity) -> Result<Vec<DwTerm>> {
    let b = diag_ml(k);
    if op.has_reflection() || !mat_op_equal(&(op * &b), &(&b * op)) {
        return Err(Error::NotInCommutant);
    }
    let half = Rat::new(1.into(), 2.into());
    let mut rest = op.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let o = rest.order();
        let top = |i, j| rest.get(i, j).coeff(o as u32, 0);
        let (a, bb) = if o % 2 == 0 {
            if !top(0, 1).is_zero() || !top(1, 0).is_zero() {
                return Err(Error::NotInCommutant);
            }
            (top(0, 0).as_constant(), top(1, 1).as_constant())
        } else {
            if !top(0, 0).is_zero() || !top(1, 1).is_zero() {
                return Err(Error::NotInCommutant);
            }
            // top coefficients of 𝔇_k: (1,2) ↦ −(1+u)/(1−u), (2,1) ↦ −(1−u)/(1+u)
            let d = frak_d(k);
            let ratio = |i, j| (&top(i, j) * &d.get(i, j).coeff(1, 0).recip().ok()?).as_constant();
            (ratio(1, 0), ratio(0, 1))
        };
        let (a, bb) = match (a, bb) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotInCommutant),
        };
        rest = &rest - &dw_piece(o, &a, &bb, k);
        if !rest.is_zero() && rest.order() >= o {
            return Err(Error::NotInCommutant);
        }
        out.push(DwTerm { order: o, c: (&a + &bb) * &half, c_prime: (&a - &bb) * &half });
    }
    Ok(out)
}

pub fn recompose_dw(terms: &[DwTerm], k: &Multiplicity) -> MatOp {
    terms.iter().fold(MatOp::zero(), |acc, t| &acc + &dw_piece(t.order, &(&t.c + &t.c_prime), &(&t.c - &t.c_prime), k))
}

/// A word in {I, S′, 𝔇_k}, letters 0, 1, 2.
pub fn dw_word(word: &[u8], k: &Multiplicity) -> MatOp {
    word.iter().fold(MatOp::identity(), |acc, &w| {
        let letter = match w {
            0 => MatOp::identity(),
            1 => s_prime(),
            _ => frak_d(k),
        };
        &acc * &letter
    })
}

/// E(−N)(z⁻¹) = z⁻¹(E(N+1) − c_N E(−N)) and E(N+1)(z⁻¹) = z⁻¹(c_N E(N+1) + (1 − c_N²) E(−N)).
pub fn symmetry_identities(n: i64, k: &Multiplicity) -> Result<bool> {
    let em = nonsym_jacobi(-n, k)?;
    let ep = nonsym_jacobi(n + 1, k)?;
    let c = c_n(n, k)?;
    let first = (&ep - &em.scale(&c)).shift_exp(-1);
    let second = (&ep.scale(&c) + &em.scale(&(Rat::one() - &c * &c))).shift_exp(-1);
    Ok(em.reflect() == first && ep.reflect() == second)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{cherednik, fundamental};
    use crate::rational::{int, rat};

    fn xi(c: &[(i64, i64)]) -> Laurent {
        Laurent::from_ints(Var::Xi, c)
    }

    #[test]
    fn nonsym_examples() {
        let k = Multiplicity::ints(2, 1);
        let d = AnyOp::Scalar(cherednik(&k));
        let g = composite_shift(Realization::Nonsym, Shift::G_PLUS, &k).unwrap();
        let r = decompose_shift(&g.compose(&d), Realization::Nonsym, Shift::G_PLUS, &k).unwrap();
        assert_eq!(r.poly, xi(&[(1, 1)]));
        let p = xi(&[(2, 1), (0, 3)]);
        let g = composite_shift(Realization::Nonsym, Shift::E_PLUS, &k).unwrap();
        let op = g.compose(&poly_of(&p, &d));
        let r = decompose_shift(&op, Realization::Nonsym, Shift::E_PLUS, &k).unwrap();
        assert_eq!(r.poly, p);
        assert!(recompose(&r, Realization::Nonsym, &k).unwrap().equals(&op));
    }

    #[test]
    fn every_realization_round_trips() {
        let k = Multiplicity::ints(2, 1);
        let p = xi(&[(2, 2), (1, -1), (0, 5)]);
        for r in Realization::ALL {
            let l = Shift::new(2, 0).unwrap();
            let g = composite_shift(r, l, &k).unwrap();
            let op = g.compose(&poly_of(&p, &base_operator(r, &k)));
            let d = decompose_shift(&op, r, l, &k).unwrap();
            assert_eq!(d.poly, p, "{r:?}");
        }
    }

    #[test]
    fn rejects() {
        let k = Multiplicity::ints(2, 1);
        let g = fundamental(Realization::Nonsym, Shift::G_PLUS, &k);
        assert_eq!(decompose_shift(&g, Realization::Nonsym, Shift::E_PLUS, &k), Err(Error::NotTransmuting));
        assert!(decompose_shift(&AnyOp::Scalar(DROp::theta()), Realization::Nonsym, Shift::ZERO, &k).is_err());
    }

    #[test]
    fn dw_examples() {
        let k = Multiplicity::ints(2, 1);
        let t = decompose_dw(&s_prime(), &k).unwrap();
        assert_eq!(t, vec![DwTerm { order: 0, c: int(0), c_prime: int(1) }]);
        let fd = frak_d(&k);
        let t = decompose_dw(&(&fd * &fd), &k).unwrap();
        assert_eq!(
            t,
            vec![
                DwTerm { order: 2, c: int(1), c_prime: int(0) },
                DwTerm { order: 1, c: int(1), c_prime: int(0) },
                DwTerm { order: 0, c: rat(-1, 4), c_prime: int(0) },
            ]
        );
        let w = dw_word(&[2, 1, 2, 2], &k);
        assert!(mat_op_equal(&recompose_dw(&decompose_dw(&w, &k).unwrap(), &k), &w));
        assert_eq!(decompose_dw(&crate::ops::cal_d(&k), &k), Err(Error::NotInCommutant));
    }

    #[test]
    fn symmetry() {
        for k in [Multiplicity::ints(0, 0), Multiplicity::ints(1, 1), Multiplicity::ints(2, 1)] {
            for n in 0..=5 {
                assert!(symmetry_identities(n, &k).unwrap(), "N={n} k={k}");
            }
        }
    }
}
