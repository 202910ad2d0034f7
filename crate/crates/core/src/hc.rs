//! Constant-term and Harish-Chandra maps, the transfer maps Γ, Γ_*, β_ns,
//! reconstruction of a commuting operator from its constant term, and γ_EV.

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{exact_divide, Laurent, Var};
use crate::multiplicity::{Label, Multiplicity};
use crate::operator::{DROp, MatOp, RatMat};
use crate::ops::{cherednik, poly_of, AnyOp};
use crate::polynomials::nonsym_jacobi;
use crate::rational::{int, Rat};

pub type XiMat = [[Laurent; 2]; 2];

/// 2×2 matrix of polynomials in ξ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstTermMatrix {
    pub e: XiMat,
}

fn xi_zero() -> Laurent {
    Laurent::zero(Var::Xi)
}

fn xi_var() -> Laurent {
    Laurent::monomial(Var::Xi, 1, Rat::one())
}

impl ConstTermMatrix {
    pub fn new(e: XiMat) -> Self {
        ConstTermMatrix { e }
    }

    pub fn zero() -> Self {
        ConstTermMatrix { e: [[xi_zero(), xi_zero()], [xi_zero(), xi_zero()]] }
    }

    pub fn identity() -> Self {
        let one = Laurent::one(Var::Xi);
        ConstTermMatrix { e: [[one.clone(), xi_zero()], [xi_zero(), one]] }
    }

    pub fn map(&self, f: impl Fn(&Laurent) -> Laurent) -> Self {
        ConstTermMatrix { e: [[f(&self.e[0][0]), f(&self.e[0][1])], [f(&self.e[1][0]), f(&self.e[1][1])]] }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(Laurent::is_zero)
    }
}

/// Γ(f) = (f, s(f))
pub fn gamma_vec(f: &Laurent) -> [Laurent; 2] {
    [f.clone(), f.reflect()]
}

/// Γ_*(D) = diag(D, sDs)
pub fn gamma_star(d: &DROp) -> MatOp {
    MatOp::diag(d.clone(), d.conj_s())
}

/// π(s) = (0 1; 1 0)
pub fn pi_s() -> RatMat {
    crate::operator::ratmat([[0, 1], [1, 0]])
}

/// β_ns: D ⊗ s ⊗ A ↦ D ⊗ Aπ(s); right multiplication by π(s) swaps columns.
pub fn beta_ns(m: &MatOp) -> MatOp {
    let mut e: [[DROp; 2]; 2] = Default::default();
    for (i, row) in e.iter_mut().enumerate() {
        for j in 0..2 {
            let (a, b) = m.get(i, j).split_reflection();
            row[j] = &row[j] + &a;
            row[1 - j] = &row[1 - j] + &b;
        }
    }
    let [[a, b], [c, d]] = e;
    MatOp::new(a, b, c, d)
}

/// β_ns(Γ_*(D))
pub fn transfer(d: &DROp) -> MatOp {
    beta_ns(&gamma_star(d))
}

/// D̃_k
pub fn d_tilde(k: &Multiplicity) -> MatOp {
    transfer(&cherednik(k))
}

/// γ′ on a reflection-free scalar operator: coefficients at z = ∞, θ ↦ ξ.
pub fn constant_term_scalar(d: &DROp) -> Result<Laurent> {
    if d.has_reflection() {
        return Err(Error::ReflectionPresent);
    }
    let mut out = xi_zero();
    for (i, _, c) in d.terms() {
        out.add_term(i as i64, c.limit_at_infinity()?);
    }
    Ok(out)
}

pub fn constant_term(m: &MatOp) -> Result<ConstTermMatrix> {
    let f = |i, j| constant_term_scalar(m.get(i, j));
    Ok(ConstTermMatrix::new([[f(0, 0)?, f(0, 1)?], [f(1, 0)?, f(1, 1)?]]))
}

/// γ = γ′ followed by ξ ↦ ξ − ρ(k).
pub fn hc_map(m: &MatOp, k: &Multiplicity) -> Result<ConstTermMatrix> {
    let rho = k.rho();
    Ok(constant_term(m)?.map(|p| p.translate(&-&rho)))
}

/// s(p)(ξ) = p(−ξ)
pub fn s_xi(p: &Laurent) -> Laurent {
    Laurent::from_terms(Var::Xi, p.terms().map(|(e, c)| (e, if e % 2 == 0 { c.clone() } else { -c })))
}

/// The closed form (p, ρ(s(p) − p)/ξ; 0, s(p)).
pub fn ct_of_p(p: &Laurent, k: &Multiplicity) -> ConstTermMatrix {
    let sp = s_xi(p);
    let diff = exact_divide(&(&sp - p), &xi_var()).expect("s(p) − p is odd").scale(&k.rho());
    ConstTermMatrix::new([[p.clone(), diff], [xi_zero(), sp]])
}

/// p(D_k) as a scalar operator; p is a polynomial in ξ.
pub fn p_of_cherednik(p: &Laurent, k: &Multiplicity) -> DROp {
    poly_of(p, &AnyOp::Scalar(cherednik(k))).scalar().clone()
}

/// Checks γ_ns(β_ns(Γ_*(p(D_k)))) against the closed form.
pub fn check_ct_of_p(p: &Laurent, k: &Multiplicity) -> Result<bool> {
    Ok(hc_map(&transfer(&p_of_cherednik(p, k)), k)? == ct_of_p(p, k))
}

/// Truncated expansion D_ij = Σ_n u^n P_n^{ij}(θ), u = 1/z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesOp {
    pub nmax: usize,
    pub coeffs: Vec<ConstTermMatrix>,
}

pub fn expansion(m: &MatOp, nmax: usize) -> Result<SeriesOp> {
    if m.has_reflection() {
        return Err(Error::ReflectionPresent);
    }
    let mut coeffs = vec![ConstTermMatrix::zero(); nmax + 1];
    for i in 0..2 {
        for j in 0..2 {
            for (deg, _, c) in m.get(i, j).terms() {
                for (n, a) in c.series_at_infinity(nmax)?.into_iter().enumerate() {
                    coeffs[n].e[i][j].add_term(deg as i64, a);
                }
            }
        }
    }
    Ok(SeriesOp { nmax, coeffs })
}

fn mat_mul(a: &XiMat, b: &XiMat) -> XiMat {
    let f = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]]
}

fn mat_translate(a: &XiMat, t: i64) -> XiMat {
    let t = int(t);
    let f = |p: &Laurent| p.translate(&t);
    [[f(&a[0][0]), f(&a[0][1])], [f(&a[1][0]), f(&a[1][1])]]
}

/// Rebuilds the operator commuting with D̃_k whose constant term is `ct`, to order `nmax`.
/// Order n of [P, D̃_k] = 0 reads, with Q_0 = γ′(D̃_k) and Σ_n from lower orders,
///   n P11 + 2ρ P21 + Σ11 = 0,          (2ξ − n + 2ρ) P21 + Σ21 = 0,
///   −(2ξ − n + 2ρ) P12 − 2ρ(P11 − P22) + Σ12 = 0,   −n P22 − 2ρ P21 + Σ22 = 0.
pub fn reconstruct(ct: &ConstTermMatrix, k: &Multiplicity, nmax: usize) -> Result<SeriesOp> {
    let q = expansion(&d_tilde(k), nmax)?;
    let rho2 = Laurent::constant(Var::Xi, int(2) * k.rho());
    let p0 = &ct.e;
    if !p0[1][0].is_zero() {
        return Err(Error::IncompatibleConstantTerm("lower-left entry must vanish".into()));
    }
    let lin = |n: i64| &xi_var().scale(&int(2)) + &Laurent::constant(Var::Xi, int(2) * k.rho() - int(n));
    if &lin(0) * &p0[0][1] != -&(&rho2 * &(&p0[0][0] - &p0[1][1])) {
        return Err(Error::IncompatibleConstantTerm("upper-right entry is not determined by the diagonal".into()));
    }
    let mut ps: Vec<XiMat> = vec![p0.clone()];
    for n in 1..=nmax {
        let mut sigma: XiMat = ConstTermMatrix::zero().e;
        for m in 1..=n {
            let pn = &ps[n - m];
            let a = mat_mul(&mat_translate(pn, -(m as i64)), &q.coeffs[m].e);
            let b = mat_mul(&mat_translate(&q.coeffs[m].e, -((n - m) as i64)), pn);
            for i in 0..2 {
                for j in 0..2 {
                    sigma[i][j] = &(&sigma[i][j] + &a[i][j]) - &b[i][j];
                }
            }
        }
        let nn = int(n as i64);
        let bad = |what: &str| Error::IncompatibleConstantTerm(format!("order {n}: {what}"));
        let p21 = exact_divide(&-&sigma[1][0], &lin(n as i64)).map_err(|_| bad("(2,1) not divisible"))?;
        let p11 = (-&(&(&rho2 * &p21) + &sigma[0][0])).scale(&(Rat::one() / &nn));
        let p22 = (&sigma[1][1] - &(&rho2 * &p21)).scale(&(Rat::one() / &nn));
        let rhs12 = &sigma[0][1] - &(&rho2 * &(&p11 - &p22));
        let p12 = exact_divide(&rhs12, &lin(n as i64)).map_err(|_| bad("(1,2) not divisible"))?;
        for p in [&p11, &p12, &p21, &p22] {
            if p.min_exp().unwrap_or(0) < 0 {
                return Err(bad("negative power of ξ"));
            }
        }
        ps.push([[p11, p12], [p21, p22]]);
    }
    Ok(SeriesOp { nmax, coeffs: ps.into_iter().map(ConstTermMatrix::new).collect() })
}

/// γ_EV(p)(N) = diag(p(−N−ρ), p(N+1+ρ)); N may be any rational.
pub fn eigenvalue_map(p: &Laurent, k: &Multiplicity, n: &Rat) -> [Rat; 2] {
    let rho = k.rho();
    [p.eval(&(-n - &rho)), p.eval(&(n + int(1) + &rho))]
}

/// P(λ,k) = Γ(E(λ,k))
pub fn vector_poly(lam: i64, k: &Multiplicity) -> Result<[Laurent; 2]> {
    Ok(gamma_vec(&nonsym_jacobi(lam, k)?))
}

/// D·P(λ) = p(λ̃)·P(λ) for D = β_ns(Γ_*(p(D_k))).
pub fn check_hc_eigenvalue(p: &Laurent, lam: i64, k: &Multiplicity) -> Result<bool> {
    let d = transfer(&p_of_cherednik(p, k));
    let v = vector_poly(lam, k)?;
    let ev = p.eval(&Label(lam).tilde(k));
    let img = d.apply_vec(&v)?;
    Ok(img[0] == v[0].scale(&ev) && img[1] == v[1].scale(&ev))
}

/// D·P(n+1) = γ′(D)₁₁(n+1)·P(n+1) and D·P(−n) = γ′(D)₂₂(n)·P(−n).
pub fn check_eigen_reading(d: &MatOp, n: i64, k: &Multiplicity) -> Result<bool> {
    let ct = constant_term(d)?;
    let mut ok = true;
    for (lam, ev) in [(n + 1, ct.e[0][0].eval(&int(n + 1))), (-n, ct.e[1][1].eval(&int(n)))] {
        let v = vector_poly(lam, k)?;
        let img = d.apply_vec(&v)?;
        ok &= img[0] == v[0].scale(&ev) && img[1] == v[1].scale(&ev);
    }
    Ok(ok)
}

/// D·M(N) = M(N)·γ_EV(p)(N), M(N) with columns P(−N), P(N+1).
pub fn check_d_on_m(p: &Laurent, n: i64, k: &Multiplicity) -> Result<bool> {
    let d = transfer(&p_of_cherednik(p, k));
    let [a, b] = eigenvalue_map(p, k, &int(n));
    let mut ok = true;
    for (lam, ev) in [(-n, a), (n + 1, b)] {
        let col = vector_poly(lam, k)?;
        let img = d.apply_vec(&col)?;
        ok &= img[0] == col[0].scale(&ev) && img[1] == col[1].scale(&ev);
    }
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceCheck {
    /// s_* acting on μ = λ + ½, the variable the map is written in.
    pub shifted: bool,
    /// s_* acting on λ itself.
    pub literal: bool,
}

/// π(s)·F(s_*⁻¹ μ)·π(s)⁻¹ = F(μ) for F(λ + ½) = γ_EV(p)(λ), s_*(μ) = −μ − 2ρ.
pub fn s_star_invariance(p: &Laurent, k: &Multiplicity, lam: &Rat) -> InvarianceCheck {
    let rho2 = int(2) * k.rho();
    let half = Rat::new(1.into(), 2.into());
    let f = |mu: &Rat| eigenvalue_map(p, k, &(mu - &half));
    let mu = lam + &half;
    let [a, b] = f(&(-&mu - &rho2));
    let shifted = [b, a] == f(&mu);
    let [a, b] = eigenvalue_map(p, k, &(-lam - &rho2));
    let literal = [b, a] == eigenvalue_map(p, k, lam);
    InvarianceCheck { shifted, literal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xi(c: &[(i64, i64)]) -> Laurent {
        Laurent::from_ints(Var::Xi, c)
    }

    #[test]
    fn constant_terms() {
        let k = Multiplicity::ints(2, 1);
        let rho = k.rho();
        let ct = constant_term(&d_tilde(&k)).unwrap();
        let want = [
            [Laurent::from_terms(Var::Xi, [(1, int(1)), (0, rho.clone())]), Laurent::constant(Var::Xi, int(-2) * &rho)],
            [xi_zero(), Laurent::from_terms(Var::Xi, [(1, int(-1)), (0, -&rho)])],
        ];
        assert_eq!(ct.e, want);
        let d = DROp::term(crate::ops::geom1(), 1, 0);
        assert_eq!(constant_term_scalar(&d).unwrap(), xi(&[(1, 1)]));
        let pole = DROp::mult(crate::ratfunc::RatFunc::poly(Laurent::z(1)));
        assert_eq!(constant_term_scalar(&pole), Err(Error::PoleAtInfinity));
    }

    #[test]
    fn hc_examples() {
        let k = Multiplicity::ints(2, 1);
        let h = hc_map(&d_tilde(&k), &k).unwrap();
        assert_eq!(h.e[0][0], xi(&[(1, 1)]));
        assert_eq!(h.e[0][1], Laurent::constant(Var::Xi, int(-2) * k.rho()));
        assert_eq!(h.e[1][1], xi(&[(1, -1)]));
        for p in [xi(&[(2, 1)]), xi(&[(3, 1)]), xi(&[(4, 2), (3, -1), (0, 7)])] {
            assert!(check_ct_of_p(&p, &k).unwrap());
        }
        assert_eq!(ct_of_p(&xi(&[(3, 1)]), &k).e[0][1], xi(&[(2, -2)]).scale(&k.rho()));
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(gamma_vec(&Laurent::z(1)), [Laurent::z(1), Laurent::z(-1)]);
        let f = Laurent::from_ints(Var::Z, &[(2, 1), (-1, 3)]);
        let img = gamma_star(&DROp::refl()).apply_vec(&gamma_vec(&f)).unwrap();
        assert_eq!(img, gamma_vec(&f.reflect()));
        assert!(!d_tilde(&Multiplicity::ints(2, 1)).has_reflection());
    }

    #[test]
    fn reconstruction() {
        let k = Multiplicity::ints(2, 1);
        for p in [xi(&[(1, 1)]), xi(&[(2, 1), (0, -3)]), xi(&[(3, 1), (1, 2)])] {
            let d = transfer(&p_of_cherednik(&p, &k));
            let ct = constant_term(&d).unwrap();
            assert_eq!(reconstruct(&ct, &k, 8).unwrap(), expansion(&d, 8).unwrap());
        }
        let r = reconstruct(&ConstTermMatrix::identity(), &k, 8).unwrap();
        assert!(r.coeffs[1..].iter().all(ConstTermMatrix::is_zero));
        let mut bad = ConstTermMatrix::identity();
        bad.e[1][0] = xi(&[(0, 1)]);
        assert!(matches!(reconstruct(&bad, &k, 4), Err(Error::IncompatibleConstantTerm(_))));
    }

    #[test]
    fn eigenvalues() {
        let k = Multiplicity::ints(2, 1);
        assert_eq!(eigenvalue_map(&xi(&[(1, 1)]), &k, &int(2)), [int(-4), int(5)]);
        assert_eq!(eigenvalue_map(&xi(&[(2, 1)]), &k, &int(2)), [int(16), int(25)]);
        assert_eq!(eigenvalue_map(&xi(&[(0, 1)]), &k, &int(2)), [int(1), int(1)]);
        let p = xi(&[(2, 1), (1, 3)]);
        for lam in -3..=3 {
            assert!(check_hc_eigenvalue(&p, lam, &k).unwrap());
        }
        let d = transfer(&p_of_cherednik(&p, &k));
        for n in 0..=3 {
            assert!(check_eigen_reading(&d, n, &k).unwrap());
            assert!(check_d_on_m(&p, n, &k).unwrap());
        }
        let c = s_star_invariance(&xi(&[(2, 1), (1, 1)]), &k, &rat(3, 2));
        assert!(c.shifted && !c.literal);
    }
}
