//! Shift factors, raising/lowering normalizations, adjoint checks and the order normal form.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{lift_x, Laurent, PolyX, Var};
use crate::multiplicity::{Label, Multiplicity, Shift};
use crate::operator::{xmat_mul_const, DROp, RatMat, XMat};
use crate::ops::{cal_d, cherednik, composite_shift, fundamental, poly_of, AnyOp, Realization};
use crate::pairing::{pair_scalar, pair_vector, PairingKind};
use crate::polynomials::{m_family, n_family, nonsym_jacobi, sym_jacobi};
use crate::rational::{half, int, pow2, Rat};
use crate::ratfunc::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ShiftFactor {
    Scalar(#[serde(with = "crate::rational::serde_rat")] Rat),
    Matrix(#[serde(serialize_with = "ser_ratmat")] RatMat),
}

fn ser_ratmat<S: serde::Serializer>(m: &RatMat, s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::rational::fmt_rat;
    let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
    serde::Serialize::serialize(&v, s)
}

fn diag(a: Rat, b: Rat) -> RatMat {
    [[a, Rat::zero()], [Rat::zero(), b]]
}

fn check_fundamental(l: Shift) -> Result<()> {
    if [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS].contains(&l) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{l:?} is not a fundamental shift")))
    }
}

/// η(n, ·) for the symmetric fundamentals: S p(n,k) = η·p(n − ρ(ℓ), k+ℓ).
pub fn eta_sym(l: Shift, n: i64, k: &Multiplicity) -> Result<Rat> {
    check_fundamental(l)?;
    let n = int(n);
    Ok(match l {
        Shift::G_PLUS => n,
        Shift::G_MINUS => n + &k.k1 + int(2) * &k.k2 - int(1),
        Shift::E_PLUS => n + &k.k2 - half(),
        _ => n + &k.k1 + &k.k2 - half(),
    })
}

/// H(N, ·) for Ĝ_±, Ê_± acting on 𝒩: Ŝ𝒩(N,k) = 𝒩(N − ρ(ℓ), k+ℓ)·H.
pub fn h_mat(l: Shift, n: i64, k: &Multiplicity) -> Result<RatMat> {
    check_fundamental(l)?;
    let n = int(n);
    Ok(match l {
        Shift::G_PLUS => diag(n.clone(), n),
        Shift::G_MINUS => {
            let v = n + &k.k1 + int(2) * &k.k2;
            diag(v.clone(), v)
        }
        Shift::E_PLUS => [[&n + &k.k2 - half(), Rat::zero()], [-Rat::one(), n + &k.k2 + half()]],
        _ => {
            let s = n + &k.k1 + &k.k2;
            [[&s + half(), -Rat::one()], [Rat::zero(), s - half()]]
        }
    })
}

/// H(N, ·) for the U-conjugated operators acting on 𝓜; always diagonal.
pub fn h_mat_u(l: Shift, n: i64, k: &Multiplicity) -> Result<RatMat> {
    check_fundamental(l)?;
    let n = int(n);
    Ok(match l {
        Shift::G_PLUS => diag(n.clone(), n),
        Shift::G_MINUS => {
            let v = n + &k.k1 + int(2) * &k.k2;
            diag(v.clone(), v)
        }
        Shift::E_PLUS => diag(&n + &k.k2 - half(), n + &k.k2 + half()),
        _ => {
            let s = n + &k.k1 + &k.k2;
            diag(&s - half(), s + half())
        }
    })
}

/// Label of the image of E(λ,k) under a shift by ℓ, if the action is nonzero.
pub fn nonsym_target(l: Shift, lam: Label) -> Option<Label> {
    let m = lam.star() - l.rho();
    if m < 0 {
        return None;
    }
    Some(if lam.w_is_id() { Label(m) } else { Label(-m) })
}

/// η(λ, ·) for the non-symmetric fundamentals: 𝒮E(λ,k) = η·E(target, k+ℓ).
pub fn eta_nonsym(l: Shift, lam: Label, k: &Multiplicity) -> Result<Rat> {
    check_fundamental(l)?;
    if nonsym_target(l, lam).is_none() {
        return Err(Error::OutOfDomain(format!("λ*−ρ(ℓ) < 0 for λ={}, ℓ={l:?}", lam.0)));
    }
    // λ = −n or λ = n+1
    let (n, pos) = if lam.0 <= 0 { (int(-lam.0), false) } else { (int(lam.0 - 1), true) };
    let hs = if pos { half() } else { -half() };
    Ok(match l {
        Shift::G_PLUS => n,
        Shift::G_MINUS => n + &k.k1 + int(2) * &k.k2,
        Shift::E_PLUS => n + &k.k2 + hs,
        _ => n + &k.k1 + &k.k2 + hs,
    })
}

/// η(λ, 𝒢(ℓ,k)) for a composite, by chaining the fundamental factors.
/// `None` when the action is zero.
pub fn eta_nonsym_composite(l: Shift, lam: Label, k: &Multiplicity) -> Result<Option<(Rat, Label)>> {
    let mut eta = Rat::one();
    let mut cur = lam;
    for (s, kk) in crate::ops::factorization(l, k) {
        match nonsym_target(s, cur) {
            None => return Ok(None),
            Some(t) => {
                eta *= eta_nonsym(s, cur, &kk)?;
                cur = t;
            }
        }
    }
    Ok(Some((eta, cur)))
}

/// The published shift factor for a fundamental in a given realization.
pub fn shift_factor(r: Realization, l: Shift, index: i64, k: &Multiplicity) -> Result<ShiftFactor> {
    Ok(match r {
        Realization::Sym => ShiftFactor::Scalar(eta_sym(l, index, k)?),
        Realization::Mat => ShiftFactor::Matrix(h_mat(l, index, k)?),
        Realization::MatU => ShiftFactor::Matrix(h_mat_u(l, index, k)?),
        Realization::Nonsym => ShiftFactor::Scalar(eta_nonsym(l, Label(index), k)?),
    })
}

/// Applies the fundamental to its polynomial and compares with η × shifted polynomial.
/// For the non-symmetric zero branch the image must vanish.
pub fn check_action(r: Realization, l: Shift, index: i64, k: &Multiplicity) -> Result<bool> {
    let op = fundamental(r, l, k);
    let kl = k.shifted(l);
    let shifted = index - l.rho();
    match r {
        Realization::Sym => {
            let p = sym_jacobi(index, k)?;
            let lhs = op.scalar().apply_x(&p)?;
            Ok(lhs == sym_jacobi(shifted, &kl)?.scale(&eta_sym(l, index, k)?))
        }
        Realization::Mat | Realization::MatU => {
            let (fam, h): (fn(i64, &Multiplicity) -> Result<XMat>, RatMat) = if r == Realization::Mat {
                (n_family, h_mat(l, index, k)?)
            } else {
                (m_family, h_mat_u(l, index, k)?)
            };
            let lhs = op.matrix().apply_xmat(&fam(index, k)?)?;
            let rhs = xmat_mul_const(&fam(shifted, &kl)?, &h);
            Ok(lhs == rhs)
        }
        Realization::Nonsym => {
            let lam = Label(index);
            let lhs = op.scalar().apply(&nonsym_jacobi(index, k)?)?;
            match nonsym_target(l, lam) {
                None => Ok(lhs.is_zero()),
                Some(t) => Ok(lhs == nonsym_jacobi(t.0, &kl)?.scale(&eta_nonsym(l, lam, k)?)),
            }
        }
    }
}

/// 𝒢_±(±ℓ,k) = 4^{|ℓ1|/2}·𝒢(±ℓ,k) for ℓ in the cone spanned by (0,1), (2,−1).
pub fn raising_lowering(l: Shift, k: &Multiplicity) -> Result<DROp> {
    if l == Shift::ZERO || !(l.in_positive_cone() || (-l).in_positive_cone()) {
        return Err(Error::BadCone((l.l1, l.l2)));
    }
    let g = composite_shift(Realization::Nonsym, l, k)?;
    Ok(g.scalar().scale(&pow2(l.l1.abs())))
}

/// Adjointness holds for the weight Π|e^{α/2} − e^{−α/2}|^{2k_α} = 2^{k1+k2}δ_k,
/// so the (k+ℓ)-side picks up 2^{ℓ1+ℓ2} relative to δ_k-pairings.
fn adjoint_domain(l: Shift, k: &Multiplicity) -> Result<(Multiplicity, Rat)> {
    let kl = k.shifted(l);
    if !k.is_nonneg_integral() || !kl.is_nonneg_integral() {
        return Err(Error::Domain(format!("adjoint checks need integer k, k+ℓ >= 0, got {k} and {kl}")));
    }
    Ok((kl, pow2(l.l1 + l.l2)))
}

/// (𝒢(ℓ,k)p(D_k)f, g)_{k+ℓ} = (f, 𝒢(−ℓ,k+ℓ)p(D_{k+ℓ})g)_k
pub fn check_adjoint_nonsym(l: Shift, k: &Multiplicity, f: &Laurent, g: &Laurent, p: &Laurent) -> Result<bool> {
    let (kl, scale) = adjoint_domain(l, k)?;
    let a = composite_shift(Realization::Nonsym, l, k)?.compose(&poly_of(p, &AnyOp::Scalar(cherednik(k))));
    let b = composite_shift(Realization::Nonsym, -l, &kl)?.compose(&poly_of(p, &AnyOp::Scalar(cherednik(&kl))));
    let lhs = pair_scalar(&a.scalar().apply(f)?, g, &PairingKind::auto(&kl))?;
    let rhs = pair_scalar(f, &b.scalar().apply(g)?, &PairingKind::auto(k))?;
    Ok(lhs * scale == rhs)
}

/// (G(ℓ,k)f, g)_{k+ℓ} = (f, G(−ℓ,k+ℓ)g)_k for f, g ∈ C[x].
pub fn check_adjoint_sym(l: Shift, k: &Multiplicity, f: &PolyX, g: &PolyX) -> Result<bool> {
    let (kl, scale) = adjoint_domain(l, k)?;
    let a = composite_shift(Realization::Sym, l, k)?;
    let b = composite_shift(Realization::Sym, -l, &kl)?;
    let lhs = pair_scalar(&lift_x(&a.scalar().apply_x(f)?), &lift_x(g), &PairingKind::auto(&kl))?;
    let rhs = pair_scalar(&lift_x(f), &lift_x(&b.scalar().apply_x(g)?), &PairingKind::auto(k))?;
    Ok(lhs * scale == rhs)
}

/// (Ĝ^U(ℓ,k)p(𝒟_k)P, Q)_{k+ℓ} = (P, Ĝ^U(−ℓ,k+ℓ)p(𝒟_{k+ℓ})Q)_k
pub fn check_adjoint_mat(l: Shift, k: &Multiplicity, pv: &[PolyX; 2], qv: &[PolyX; 2], p: &Laurent) -> Result<bool> {
    let (kl, scale) = adjoint_domain(l, k)?;
    let a = composite_shift(Realization::MatU, l, k)?.compose(&poly_of(p, &AnyOp::Matrix(cal_d(k))));
    let b = composite_shift(Realization::MatU, -l, &kl)?.compose(&poly_of(p, &AnyOp::Matrix(cal_d(&kl))));
    let lhs = pair_vector(&a.matrix().apply_xvec(pv)?, qv, &kl)?;
    let rhs = pair_vector(pv, &b.matrix().apply_xvec(qv)?, k)?;
    Ok(lhs * scale == rhs)
}

/// Dispatching adjoint check on Laurent inputs (projected to C[x] or C[x]² as needed).
pub fn check_adjoint(r: Realization, l: Shift, k: &Multiplicity, f: &Laurent, g: &Laurent) -> Result<bool> {
    let one = Laurent::one(Var::Xi);
    match r {
        Realization::Nonsym => check_adjoint_nonsym(l, k, f, g, &one),
        Realization::Sym => {
            let sym = |h: &Laurent| crate::laurent::to_x(&(h + &h.reflect()));
            check_adjoint_sym(l, k, &sym(f)?, &sym(g)?)
        }
        _ => {
            let pv = crate::polynomials::upsilon(f);
            let qv = crate::polynomials::upsilon(g);
            check_adjoint_mat(l, k, &pv, &qv, &one)
        }
    }
}

/// (z^{1/2} − z^{−1/2})^{−ℓ1}(z − z^{−1})^{−ℓ2}
pub fn leading_shape(l: Shift) -> RatFunc {
    let a = RatFunc::poly(Laurent::from_ints(Var::Z, &[(1, 1), (0, -2), (-1, 1)]));
    let b = RatFunc::poly(Laurent::from_ints(Var::Z, &[(1, 1), (-1, -1)]));
    let pw = |f: &RatFunc, e: i64| {
        let base = if e >= 0 { f.recip().unwrap() } else { f.clone() };
        (0..e.abs()).fold(RatFunc::one(), |acc, _| &acc * &base)
    };
    &pw(&a, l.l1 / 2) * &pw(&b, l.l2)
}

/// Order N and constant a with leading term a·(shape)·θ^N.
pub fn order_normal_form(op: &DROp, l: Shift) -> Result<(usize, Rat)> {
    let n = op.order_s0();
    if n < 0 || op.order() > n {
        return Err(Error::LeadingFormMismatch);
    }
    let a = (&op.coeff(n as u32, 0) / &leading_shape(l)).as_constant().ok_or(Error::LeadingFormMismatch)?;
    if (n as usize) < l.order() {
        return Err(Error::LeadingFormMismatch);
    }
    Ok((n as usize, a))
}
