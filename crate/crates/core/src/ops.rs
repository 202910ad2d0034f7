//! Named operators: Cherednik operator, modified Laplacian, the matrix operators
//! 𝒟_k and 𝔇_k, the fundamental shift operators in each realization and their composites.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Var};
use crate::multiplicity::{Multiplicity, Shift};
use crate::operator::{mat_op_equal, DROp, MatOp};
use crate::rational::{half, int, Rat};
use crate::ratfunc::RatFunc;

fn zp(t: &[(i64, i64)]) -> Laurent {
    Laurent::from_ints(Var::Z, t)
}

/// num/den from integer term lists.
fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RatFunc {
    RatFunc::quot(&zp(num), &zp(den))
}

fn c(r: Rat) -> DROp {
    DROp::scalar(r)
}

fn mul(f: RatFunc) -> DROp {
    DROp::mult(f)
}

fn theta_with(f: RatFunc) -> DROp {
    DROp::term(f, 1, 0)
}

/// 1/(1 − 1/z)
pub fn geom1() -> RatFunc {
    rf(&[(0, 1)], &[(0, 1), (-1, -1)])
}

/// 1/(1 − 1/z²)
pub fn geom2() -> RatFunc {
    rf(&[(0, 1)], &[(0, 1), (-2, -1)])
}

/// D_k = θ + k1/(1−z⁻¹)(1−s) + 2k2/(1−z⁻²)(1−s) − ρ(k)
pub fn cherednik(k: &Multiplicity) -> DROp {
    let coef = &geom1().scale(&k.k1) + &geom2().scale(&(int(2) * &k.k2));
    let one_minus_s = &DROp::identity() - &DROp::refl();
    &(&DROp::theta() + &(&mul(coef) * &one_minus_s)) - &c(k.rho())
}

/// ML_k = θ² + (k1(1+z⁻¹)/(1−z⁻¹) + 2k2(1+z⁻²)/(1−z⁻²))θ + ρ(k)²
pub fn modified_laplacian(k: &Multiplicity) -> DROp {
    let a = rf(&[(0, 1), (-1, 1)], &[(0, 1), (-1, -1)]).scale(&k.k1);
    let b = rf(&[(0, 1), (-2, 1)], &[(0, 1), (-2, -1)]).scale(&(int(2) * &k.k2));
    let rho = k.rho();
    &(&DROp::term(RatFunc::one(), 2, 0) + &theta_with(&a + &b)) + &c(&rho * &rho)
}

/// G_+ = 1/(z − z⁻¹)·θ
pub fn g_plus() -> DROp {
    theta_with(rf(&[(0, 1)], &[(1, 1), (-1, -1)]))
}

/// G_−(k) = (z − z⁻¹)θ + (k1 + 2k2 − 1)(z + z⁻¹) + 2k1
pub fn g_minus(k: &Multiplicity) -> DROp {
    let s = &k.k1 + int(2) * &k.k2 - int(1);
    let m = &RatFunc::poly(zp(&[(1, 1), (-1, 1)])).scale(&s) + &RatFunc::constant(int(2) * &k.k1);
    &theta_with(RatFunc::poly(zp(&[(1, 1), (-1, -1)]))) + &mul(m)
}

/// E_+(k) = (1+z⁻¹)/(1−z⁻¹)·θ + k2 − ½
pub fn e_plus(k: &Multiplicity) -> DROp {
    &theta_with(rf(&[(0, 1), (-1, 1)], &[(0, 1), (-1, -1)])) + &c(&k.k2 - half())
}

/// E_−(k) = (1−z⁻¹)/(1+z⁻¹)·θ + k1 + k2 − ½
pub fn e_minus(k: &Multiplicity) -> DROp {
    &theta_with(rf(&[(0, 1), (-1, -1)], &[(0, 1), (-1, 1)])) + &c(&k.k1 + &k.k2 - half())
}

/// ∂_x = 2/(z − z⁻¹)·θ on symmetric functions.
pub fn d_x() -> DROp {
    theta_with(rf(&[(0, 2)], &[(1, 1), (-1, -1)]))
}

/// Multiplication by x = (z + z⁻¹)/2.
pub fn x_op() -> DROp {
    mul(RatFunc::poly(crate::laurent::x_in_z()))
}

/// 𝒟_k = (−x −1; 1 x)∂_x + (−ρ k1; 0 1+ρ)
pub fn cal_d(k: &Multiplicity) -> MatOp {
    let dx = d_x();
    let xdx = &x_op() * &dx;
    let rho = k.rho();
    MatOp::new(
        &(-&xdx) - &c(rho.clone()),
        &(-&dx) + &c(k.k1.clone()),
        dx.clone(),
        &xdx + &c(int(1) + rho),
    )
}

/// 𝔇_k = (½(1−k1) −E_+(k_−); −E_−(k_+) ½(1+k1))
pub fn frak_d(k: &Multiplicity) -> MatOp {
    MatOp::new(
        c((int(1) - &k.k1) * half()),
        -e_plus(&k.minus()),
        -e_minus(&k.plus()),
        c((int(1) + &k.k1) * half()),
    )
}

/// S = (0 1; 1 0)
pub fn swap_s() -> MatOp {
    MatOp::new(DROp::zero(), DROp::identity(), DROp::identity(), DROp::zero())
}

/// S′ = diag(1, −1)
pub fn s_prime() -> MatOp {
    MatOp::diag(DROp::identity(), -DROp::identity())
}

/// diag(ML_{k+}, ML_{k−})
pub fn diag_ml(k: &Multiplicity) -> MatOp {
    MatOp::diag(modified_laplacian(&k.plus()), modified_laplacian(&k.minus()))
}

pub fn hat_g_plus(_k: &Multiplicity) -> MatOp {
    MatOp::scalar_diag(&g_plus())
}

pub fn hat_g_minus(k: &Multiplicity) -> MatOp {
    MatOp::diag(g_minus(&k.plus()), g_minus(&k.minus()))
}

/// Ê_+(k; γ) = (E_+(k_+) 0; γ E_+(k_−))
pub fn hat_e_plus(k: &Multiplicity, gamma: &Rat) -> MatOp {
    MatOp::new(e_plus(&k.plus()), DROp::zero(), c(gamma.clone()), e_plus(&k.minus()))
}

/// Ê_−(k; γ) = (E_−(k_+) γ; 0 E_−(k_−))
pub fn hat_e_minus(k: &Multiplicity, gamma: &Rat) -> MatOp {
    MatOp::new(e_minus(&k.plus()), c(gamma.clone()), DROp::zero(), e_minus(&k.minus()))
}

/// 𝒢_+ = G_+ − z(1−s)/(z−z⁻¹)²
pub fn ns_g_plus(_k: &Multiplicity) -> DROp {
    let f = rf(&[(1, 1)], &[(2, 1), (0, -2), (-2, 1)]);
    &g_plus() - &(&mul(f) * &(&DROp::identity() - &DROp::refl()))
}

/// 𝒢_− = G_− + z⁻¹ − z·s
pub fn ns_g_minus(k: &Multiplicity) -> DROp {
    &(&g_minus(k) + &mul(RatFunc::poly(Laurent::z(-1)))) - &DROp::term(RatFunc::poly(Laurent::z(1)), 0, 1)
}

/// (1−s)/(z−z⁻¹)
fn antisym_part() -> DROp {
    &mul(rf(&[(0, 1)], &[(1, 1), (-1, -1)])) * &(&DROp::identity() - &DROp::refl())
}

/// ℰ_+ = E_+ − (1+z⁻¹)/(1−z⁻¹)·(1−s)/(z−z⁻¹)
pub fn ns_e_plus(k: &Multiplicity) -> DROp {
    &e_plus(k) - &(&mul(rf(&[(0, 1), (-1, 1)], &[(0, 1), (-1, -1)])) * &antisym_part())
}

/// ℰ_− = E_− + (1−z⁻¹)/(1+z⁻¹)·(1−s)/(z−z⁻¹)
pub fn ns_e_minus(k: &Multiplicity) -> DROp {
    &e_minus(k) + &(&mul(rf(&[(0, 1), (-1, -1)], &[(0, 1), (-1, 1)])) * &antisym_part())
}

/// Where a shift operator lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    /// G(ℓ,k), intertwining ML_k.
    Sym,
    /// Ĝ(ℓ,k), intertwining 𝔇_k.
    Mat,
    /// Ĝ^U(ℓ,k) = U⁻¹Ĝ(ℓ,k)U, intertwining 𝒟_k.
    MatU,
    /// 𝒢(ℓ,k), intertwining D_k.
    Nonsym,
}

impl Realization {
    pub const ALL: [Realization; 4] = [Realization::Sym, Realization::Mat, Realization::MatU, Realization::Nonsym];

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sym" => Ok(Realization::Sym),
            "mat" => Ok(Realization::Mat),
            "matu" | "mat-u" => Ok(Realization::MatU),
            "nonsym" => Ok(Realization::Nonsym),
            _ => Err(Error::Parse(format!("unknown realization {s:?}"))),
        }
    }
}

/// A scalar or matrix operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyOp {
    Scalar(DROp),
    Matrix(MatOp),
}

impl AnyOp {
    pub fn scalar(&self) -> &DROp {
        match self {
            AnyOp::Scalar(d) => d,
            AnyOp::Matrix(_) => panic!("expected a scalar operator"),
        }
    }

    pub fn matrix(&self) -> &MatOp {
        match self {
            AnyOp::Matrix(m) => m,
            AnyOp::Scalar(_) => panic!("expected a matrix operator"),
        }
    }

    pub fn compose(&self, o: &AnyOp) -> AnyOp {
        match (self, o) {
            (AnyOp::Scalar(a), AnyOp::Scalar(b)) => AnyOp::Scalar(a * b),
            (AnyOp::Matrix(a), AnyOp::Matrix(b)) => AnyOp::Matrix(a * b),
            _ => panic!("mixed scalar/matrix composition"),
        }
    }

    pub fn sub(&self, o: &AnyOp) -> AnyOp {
        match (self, o) {
            (AnyOp::Scalar(a), AnyOp::Scalar(b)) => AnyOp::Scalar(a - b),
            (AnyOp::Matrix(a), AnyOp::Matrix(b)) => AnyOp::Matrix(a - b),
            _ => panic!("mixed scalar/matrix subtraction"),
        }
    }

    pub fn add(&self, o: &AnyOp) -> AnyOp {
        match (self, o) {
            (AnyOp::Scalar(a), AnyOp::Scalar(b)) => AnyOp::Scalar(a + b),
            (AnyOp::Matrix(a), AnyOp::Matrix(b)) => AnyOp::Matrix(a + b),
            _ => panic!("mixed scalar/matrix addition"),
        }
    }

    pub fn scale(&self, r: &Rat) -> AnyOp {
        match self {
            AnyOp::Scalar(a) => AnyOp::Scalar(a.scale(r)),
            AnyOp::Matrix(a) => AnyOp::Matrix(a.scale(r)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            AnyOp::Scalar(a) => a.is_zero(),
            AnyOp::Matrix(a) => a.is_zero(),
        }
    }

    pub fn order(&self) -> i64 {
        match self {
            AnyOp::Scalar(a) => a.order(),
            AnyOp::Matrix(a) => a.order(),
        }
    }

    pub fn equals(&self, o: &AnyOp) -> bool {
        match (self, o) {
            (AnyOp::Scalar(a), AnyOp::Scalar(b)) => crate::operator::op_equal(a, b),
            (AnyOp::Matrix(a), AnyOp::Matrix(b)) => mat_op_equal(a, b),
            _ => false,
        }
    }

    pub fn identity_like(&self) -> AnyOp {
        match self {
            AnyOp::Scalar(_) => AnyOp::Scalar(DROp::identity()),
            AnyOp::Matrix(_) => AnyOp::Matrix(MatOp::identity()),
        }
    }
}

/// The operator a shift operator in this realization intertwines.
pub fn base_operator(r: Realization, k: &Multiplicity) -> AnyOp {
    match r {
        Realization::Sym => AnyOp::Scalar(modified_laplacian(k)),
        Realization::Mat => AnyOp::Matrix(frak_d(k)),
        Realization::MatU => AnyOp::Matrix(cal_d(k)),
        Realization::Nonsym => AnyOp::Scalar(cherednik(k)),
    }
}

/// Fundamental shift operator for ℓ ∈ {±(0,1), ±(2,−1)}, with γ = −1 in the matrix case.
pub fn fundamental(r: Realization, l: Shift, k: &Multiplicity) -> AnyOp {
    let g = -Rat::one();
    match r {
        Realization::Sym => AnyOp::Scalar(match l {
            Shift::G_PLUS => g_plus(),
            Shift::G_MINUS => g_minus(k),
            Shift::E_PLUS => e_plus(k),
            Shift::E_MINUS => e_minus(k),
            _ => panic!("not a fundamental shift: {l:?}"),
        }),
        Realization::Mat => AnyOp::Matrix(match l {
            Shift::G_PLUS => hat_g_plus(k),
            Shift::G_MINUS => hat_g_minus(k),
            Shift::E_PLUS => hat_e_plus(k, &g),
            Shift::E_MINUS => hat_e_minus(k, &g),
            _ => panic!("not a fundamental shift: {l:?}"),
        }),
        Realization::MatU => AnyOp::Matrix(fundamental(Realization::Mat, l, k).matrix().u_conj()),
        Realization::Nonsym => AnyOp::Scalar(match l {
            Shift::G_PLUS => ns_g_plus(k),
            Shift::G_MINUS => ns_g_minus(k),
            Shift::E_PLUS => ns_e_plus(k),
            Shift::E_MINUS => ns_e_minus(k),
            _ => panic!("not a fundamental shift: {l:?}"),
        }),
    }
}

/// The fundamental factors of ℓ in application order, each with its base multiplicity.
pub fn factorization(l: Shift, k: &Multiplicity) -> Vec<(Shift, Multiplicity)> {
    let cc = l.cone();
    let step2 = cc.eps2 * Shift::G_PLUS;
    let step1 = cc.eps1 * Shift::E_PLUS;
    let mut out = Vec::new();
    let mut cur = k.clone();
    for _ in 0..cc.n2 {
        out.push((step2, cur.clone()));
        cur = cur.shifted(step2);
    }
    for _ in 0..cc.n1 {
        out.push((step1, cur.clone()));
        cur = cur.shifted(step1);
    }
    out
}

fn product(r: Realization, l: Shift, k: &Multiplicity) -> AnyOp {
    let id = match r {
        Realization::Sym | Realization::Nonsym => AnyOp::Scalar(DROp::identity()),
        _ => AnyOp::Matrix(MatOp::identity()),
    };
    factorization(l, k).into_iter().fold(id, |acc, (s, kk)| fundamental(r, s, &kk).compose(&acc))
}

/// Ĝ(ℓ,k) from its explicit block form.
pub fn hat_g_block(l: Shift, k: &Multiplicity) -> MatOp {
    let sym = |l: Shift, k: &Multiplicity| product(Realization::Sym, l, k).scalar().clone();
    let d_plus = sym(l, &k.plus());
    let d_minus = sym(l, &k.minus());
    let half_l1 = int(l.l1 / 2);
    if l.l1 >= 0 {
        let low = if l.l1 == 0 { DROp::zero() } else { sym(l + -Shift::E_PLUS, &k.plus()).scale(&-half_l1) };
        MatOp::new(d_plus, DROp::zero(), low, d_minus)
    } else {
        let up = sym(l + Shift::E_PLUS, &k.minus()).scale(&half_l1);
        MatOp::new(d_plus, up, DROp::zero(), d_minus)
    }
}

/// G(ℓ,k), Ĝ(ℓ,k), Ĝ^U(ℓ,k) or 𝒢(ℓ,k) as a product of fundamentals.
pub fn composite_shift(r: Realization, l: Shift, k: &Multiplicity) -> Result<AnyOp> {
    let p = product(r, l, k);
    match r {
        Realization::Mat => {
            if !mat_op_equal(p.matrix(), &hat_g_block(l, k)) {
                return Err(Error::BlockFormulaMismatch((l.l1, l.l2)));
            }
        }
        Realization::MatU => {
            if !mat_op_equal(&product(Realization::Mat, l, k).matrix().u_conj(), p.matrix()) {
                return Err(Error::BlockFormulaMismatch((l.l1, l.l2)));
            }
        }
        _ => {}
    }
    Ok(p)
}

/// Transmutation S∘B_k = B_{k+ℓ}∘S in the given realization.
pub fn transmutes(r: Realization, s: &AnyOp, l: Shift, k: &Multiplicity) -> bool {
    let lhs = s.compose(&base_operator(r, k));
    let rhs = base_operator(r, &k.shifted(l)).compose(s);
    lhs.equals(&rhs)
}

/// p(B) for a polynomial p in ξ and an operator B.
pub fn poly_of(p: &Laurent, b: &AnyOp) -> AnyOp {
    let mut out = b.identity_like().scale(&num_traits::Zero::zero());
    for e in (0..=p.degree().max(0)).rev() {
        out = out.compose(b).add(&b.identity_like().scale(&p.coeff(e)));
    }
    out
}

/// Operator names accepted by the CLI.
pub fn make_named(name: &str, k: &Multiplicity, gamma: Option<&Rat>) -> Result<AnyOp> {
    let g = gamma.cloned().unwrap_or_else(|| -Rat::one());
    Ok(match name {
        "D" => AnyOp::Scalar(cherednik(k)),
        "ML" => AnyOp::Scalar(modified_laplacian(k)),
        "G+" => AnyOp::Scalar(g_plus()),
        "G-" => AnyOp::Scalar(g_minus(k)),
        "E+" => AnyOp::Scalar(e_plus(k)),
        "E-" => AnyOp::Scalar(e_minus(k)),
        "calD" => AnyOp::Matrix(cal_d(k)),
        "frakD" => AnyOp::Matrix(frak_d(k)),
        "hatG+" => AnyOp::Matrix(hat_g_plus(k)),
        "hatG-" => AnyOp::Matrix(hat_g_minus(k)),
        "hatE+" => AnyOp::Matrix(hat_e_plus(k, &g)),
        "hatE-" => AnyOp::Matrix(hat_e_minus(k, &g)),
        "hatUG+" => AnyOp::Matrix(hat_g_plus(k).u_conj()),
        "hatUG-" => AnyOp::Matrix(hat_g_minus(k).u_conj()),
        "hatUE+" => AnyOp::Matrix(hat_e_plus(k, &g).u_conj()),
        "hatUE-" => AnyOp::Matrix(hat_e_minus(k, &g).u_conj()),
        "nsG+" => AnyOp::Scalar(ns_g_plus(k)),
        "nsG-" => AnyOp::Scalar(ns_g_minus(k)),
        "nsE+" => AnyOp::Scalar(ns_e_plus(k)),
        "nsE-" => AnyOp::Scalar(ns_e_minus(k)),
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub const NAMES: [&str; 20] = [
    "D", "ML", "G+", "G-", "E+", "E-", "calD", "frakD", "hatG+", "hatG-", "hatE+", "hatE-", "hatUG+", "hatUG-",
    "hatUE+", "hatUE-", "nsG+", "nsG-", "nsE+", "nsE-",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::op_equal;
    use crate::rational::rat;

    #[test]
    fn cherednik_examples() {
        let k = Multiplicity::ints(1, 1);
        let r = cherednik(&k).apply(&Laurent::z(1)).unwrap();
        assert_eq!(r, Laurent::from_terms(Var::Z, [(1, rat(5, 2)), (0, int(1))]));
        let k = Multiplicity::ints(2, 1);
        assert_eq!(cherednik(&k).apply(&Laurent::one(Var::Z)).unwrap(), Laurent::constant(Var::Z, int(-2)));
    }

    #[test]
    fn ns_g_plus_kills_z() {
        let k = Multiplicity::new(rat(1, 3), int(2));
        assert!(ns_g_plus(&k).apply(&Laurent::z(1)).unwrap().is_zero());
    }

    #[test]
    fn e_relation() {
        let k = Multiplicity::new(rat(3, 2), rat(1, 5));
        let lhs = &(&e_plus(&k.shifted(Shift::E_MINUS)) * &e_minus(&k)) - &(&e_minus(&k.shifted(Shift::E_PLUS)) * &e_plus(&k));
        assert!(op_equal(&lhs, &DROp::scalar(k.k1.clone())));
    }

    #[test]
    fn frak_d_is_conjugated_cal_d() {
        let k = Multiplicity::new(int(2), rat(1, 3));
        assert!(mat_op_equal(&cal_d(&k).u_conj_inv(), &frak_d(&k)));
    }

    #[test]
    fn laplacian_relations() {
        let k = Multiplicity::new(rat(1, 2), rat(2, 3));
        let fd = frak_d(&k);
        let quarter = MatOp::scalar_diag(&DROp::scalar(rat(1, 4)));
        assert!(mat_op_equal(&(&(&(&fd * &fd) - &fd) + &quarter), &diag_ml(&k)));
        let d = cherednik(&k);
        let on_inv = (&d * &d).restrict_to_invariants();
        let f = crate::laurent::lift_x(&Laurent::from_ints(Var::X, &[(3, 1), (1, 2)]));
        assert_eq!(on_inv.apply(&f).unwrap(), modified_laplacian(&k).apply(&f).unwrap());
    }

    #[test]
    fn swap_anticommutes_up_to_constants() {
        let k = Multiplicity::ints(2, 1);
        let s = swap_s();
        let d = cal_d(&k);
        let rhs = &(&(-&(&d * &s)) + &MatOp::scalar_diag(&DROp::scalar(k.k1.clone()))) + &s;
        assert!(mat_op_equal(&(&s * &d), &rhs));
    }

    #[test]
    fn gamma_uniqueness() {
        let k = Multiplicity::ints(2, 1);
        for g in [-1, 0, 1] {
            let e = AnyOp::Matrix(hat_e_plus(&k, &int(g)));
            assert_eq!(transmutes(Realization::Mat, &e, Shift::E_PLUS, &k), g == -1);
            let e = AnyOp::Matrix(hat_e_minus(&k, &int(g)));
            assert_eq!(transmutes(Realization::Mat, &e, Shift::E_MINUS, &k), g == -1);
        }
    }

    #[test]
    fn fundamentals_transmute() {
        let k = Multiplicity::new(rat(2, 3), rat(1, 2));
        for r in Realization::ALL {
            for l in [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS] {
                assert!(transmutes(r, &fundamental(r, l, &k), l, &k), "{r:?} {l:?}");
            }
        }
    }

    #[test]
    fn composites() {
        let k = Multiplicity::ints(2, 1);
        assert!(composite_shift(Realization::Sym, Shift::ZERO, &k).unwrap().equals(&AnyOp::Scalar(DROp::identity())));
        assert!(composite_shift(Realization::Sym, Shift::G_PLUS, &k).unwrap().equals(&AnyOp::Scalar(g_plus())));
        let l = Shift::new(2, 0).unwrap();
        let m = composite_shift(Realization::Mat, l, &k).unwrap();
        assert!(op_equal(&m.matrix().e[1][0], &-g_plus()));
        for l in [Shift::new(2, 0).unwrap(), Shift::new(-2, 0).unwrap(), Shift::new(-4, 1).unwrap()] {
            for r in Realization::ALL {
                let s = composite_shift(r, l, &k).unwrap();
                assert!(transmutes(r, &s, l, &k), "{r:?} {l:?}");
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(make_named("Q", &Multiplicity::ints(0, 0), None), Err(Error::UnknownName(_))));
        for n in NAMES {
            make_named(n, &Multiplicity::ints(2, 1), None).unwrap();
        }
    }
}
