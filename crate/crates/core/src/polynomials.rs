//! E(n,k), p(n,k), classical Jacobi polynomials and the matrix families 𝒩, 𝓜.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{steinberg_split, Laurent, PolyX, Var};
use crate::multiplicity::{Label, Multiplicity};
use crate::operator::{const_mul_xmat, u_left, u_right, xmat_mul_const, xmat_zero, RatMat, XMat};
use crate::ops::cherednik;
use crate::pairing::{pair_scalar, PairingKind};
use crate::rational::{factorial, half, int, poch, pow2, Rat};

/// Flag element at position p: 1, z, 1/z, z², 1/z², …
fn flag_monomial(p: usize) -> Laurent {
    Laurent::z(Label::from_flag_pos(p).0)
}

/// E(n,k) by triangular solve against D_k on the monomial flag; Gram–Schmidt
/// is used only if the spectrum is degenerate.
pub fn nonsym_jacobi(n: i64, k: &Multiplicity) -> Result<Laurent> {
    match nonsym_jacobi_solve(n, k) {
        Err(Error::DegenerateSpectrum(_)) => {
            nonsym_jacobi_gs(n, &PairingKind::auto(k)).map_err(|_| Error::DegenerateSpectrum(n))
        }
        r => r,
    }
}

pub fn nonsym_jacobi_solve(n: i64, k: &Multiplicity) -> Result<Laurent> {
    let top = Label(n).flag_pos();
    let lam = Label(n).tilde(k);
    for p in 0..top {
        if Label::from_flag_pos(p).tilde(k) == lam {
            return Err(Error::DegenerateSpectrum(n));
        }
    }
    let d = cherednik(k);
    let images: Vec<Laurent> = (0..=top).map(|p| d.apply(&flag_monomial(p))).collect::<Result<_>>()?;
    let mut a = vec![Rat::zero(); top + 1];
    a[top] = Rat::one();
    for j in (0..top).rev() {
        let e = Label::from_flag_pos(j).0;
        let mut rhs = Rat::zero();
        for (i, img) in images.iter().enumerate().skip(j + 1) {
            if !a[i].is_zero() {
                rhs -= img.coeff(e) * &a[i];
            }
        }
        a[j] = rhs / (Label::from_flag_pos(j).tilde(k) - &lam);
    }
    Ok(Laurent::from_terms(Var::Z, a.into_iter().enumerate().map(|(p, c)| (Label::from_flag_pos(p).0, c))))
}

/// E(n,k) by Gram–Schmidt on the flag with respect to the given pairing.
pub fn nonsym_jacobi_gs(n: i64, pk: &PairingKind) -> Result<Laurent> {
    let top = Label(n).flag_pos();
    let mut basis: Vec<(Laurent, Rat)> = Vec::new();
    for p in 0..=top {
        let b = flag_monomial(p);
        let mut e = b.clone();
        for (q, nq) in &basis {
            e = &e - &q.scale(&(pair_scalar(q, &b, pk)? / nq));
        }
        let ne = pair_scalar(&e, &e, pk)?;
        if ne.is_zero() {
            return Err(Error::DegenerateSpectrum(n));
        }
        basis.push((e, ne));
    }
    Ok(basis.pop().unwrap().0)
}

/// P_n^{(α,β)}(x) via the terminating ₂F₁ sum.
pub fn classical_jacobi(n: u32, alpha: &Rat, beta: &Rat) -> PolyX {
    let one_minus_x_half = Laurent::from_terms(Var::X, [(0, half()), (1, -half())]);
    let s = alpha + beta + int(n as i64 + 1);
    let mut out = Laurent::zero(Var::X);
    for j in 0..=n {
        // (−n)_j (n+α+β+1)_j (α+1)_n / ((α+1)_j j! n!), with (α+1)_n/(α+1)_j = (α+1+j)_{n−j}
        let c = poch(&int(-(n as i64)), j) * poch(&s, j) * poch(&(alpha + int(1 + j as i64)), n - j)
            / (factorial(j) * factorial(n));
        out = &out + &one_minus_x_half.pow(j).scale(&c);
    }
    out
}

/// p(n,k) = 2^{2n} n!/(n+α+β+1)_n · P_n^{(α,β)}, monic in z + 1/z.
pub fn sym_jacobi(n: i64, k: &Multiplicity) -> Result<PolyX> {
    if n < 0 {
        return Ok(Laurent::zero(Var::X));
    }
    let n = n as u32;
    let (a, b) = (k.alpha(), k.beta());
    let den = poch(&(&a + &b + int(n as i64 + 1)), n);
    if den.is_zero() {
        return Err(Error::PochhammerZero(format!("(n+α+β+1)_n at n={n}, k={k}")));
    }
    Ok(classical_jacobi(n, &a, &b).scale(&(pow2(2 * n as i64) * factorial(n) / den)))
}

/// Υ(f) = (f1, f2) with f = f1 + f2·z.
pub fn upsilon(f: &Laurent) -> [PolyX; 2] {
    let (a, b) = steinberg_split(f);
    [a, b]
}

/// 𝒫(n,k) = Υ(E(n,k)).
pub fn cal_p(n: i64, k: &Multiplicity) -> Result<[PolyX; 2]> {
    Ok(upsilon(&nonsym_jacobi(n, k)?))
}

/// c_N(k) = k1/(1 + 2N + k1 + 2k2)
pub fn c_n(n: i64, k: &Multiplicity) -> Result<Rat> {
    let d = int(1 + 2 * n) + &k.k1 + int(2) * &k.k2;
    if d.is_zero() {
        return Err(Error::Domain(format!("c_N denominator vanishes at N={n}, k={k}")));
    }
    Ok(&k.k1 / d)
}

/// C(N,k) = (1 c_N; 0 1)
pub fn c_matrix(n: i64, k: &Multiplicity) -> Result<RatMat> {
    Ok([[Rat::one(), c_n(n, k)?], [Rat::zero(), Rat::one()]])
}

/// 𝒩(N,k) = diag(p(N,k_+), p(N,k_−)); zero for N = −1.
pub fn n_family(n: i64, k: &Multiplicity) -> Result<XMat> {
    let mut m = xmat_zero();
    if n >= 0 {
        m[0][0] = sym_jacobi(n, &k.plus())?;
        m[1][1] = sym_jacobi(n, &k.minus())?;
    }
    Ok(m)
}

/// 𝓜(N,k) = (𝒫(−N,k) 𝒫(N+1,k)); zero for N = −1.
pub fn m_family(n: i64, k: &Multiplicity) -> Result<XMat> {
    if n < 0 {
        return Ok(xmat_zero());
    }
    let [a, c] = cal_p(-n, k)?;
    let [b, d] = cal_p(n + 1, k)?;
    Ok([[a, b], [c, d]])
}

pub struct MatFamilies {
    pub n_fam: XMat,
    pub m_fam: XMat,
    pub c: RatMat,
    /// Whether 𝓜 = U⁻¹𝒩UC holds exactly.
    pub relation_holds: bool,
}

pub fn mat_families(n: i64, k: &Multiplicity) -> Result<MatFamilies> {
    let c = c_matrix(n, k)?;
    let n_fam = n_family(n, k)?;
    let m_fam = m_family(n, k)?;
    let conj = xmat_mul_const(&xmat_mul_const(&const_mul_xmat(&u_left(), &n_fam), &u_right()), &c);
    let conj = conj.map(|row| row.map(|p| p.scale(&half())));
    let relation_holds = conj == m_fam;
    Ok(MatFamilies { n_fam, m_fam, c, relation_holds })
}

/// Λ(N,k) = diag(−N−ρ, N+1+ρ)
pub fn big_lambda(n: i64, k: &Multiplicity) -> RatMat {
    let rho = k.rho();
    [[-(int(n) + &rho), Rat::zero()], [Rat::zero(), int(n + 1) + rho]]
}

/// 𝔏(N,k) with 𝔇_k𝒩 = 𝒩𝔏. Off-diagonal entries are −(N+k2+½) and −(N+k1+k2+½).
pub fn frak_l(n: i64, k: &Multiplicity) -> RatMat {
    [
        [(int(1) - &k.k1) * half(), -(int(n) + &k.k2 + half())],
        [-(int(n) + &k.k1 + &k.k2 + half()), (int(1) + &k.k1) * half()],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::modified_laplacian;
    use crate::rational::rat;

    #[test]
    fn small_cases() {
        assert_eq!(nonsym_jacobi(0, &Multiplicity::ints(3, 1)).unwrap(), Laurent::one(Var::Z));
        let e = nonsym_jacobi(1, &Multiplicity::ints(2, 1)).unwrap();
        assert_eq!(e, Laurent::from_terms(Var::Z, [(1, int(1)), (0, rat(2, 5))]));
        let k = Multiplicity::ints(1, 0);
        let e = nonsym_jacobi(1, &k).unwrap();
        assert_eq!(e, Laurent::from_terms(Var::Z, [(1, int(1)), (0, rat(1, 2))]));
        assert!(pair_scalar(&Laurent::one(Var::Z), &e, &PairingKind::ct(&k)).unwrap().is_zero());
    }

    #[test]
    fn chebyshev() {
        let k = Multiplicity::ints(0, 0);
        for n in -5..=5 {
            assert_eq!(nonsym_jacobi(n, &k).unwrap(), Laurent::z(n));
        }
        for n in 0..5 {
            let p = crate::laurent::lift_x(&sym_jacobi(n, &k).unwrap());
            let expect = if n == 0 { Laurent::one(Var::Z) } else { &Laurent::z(n) + &Laurent::z(-n) };
            assert_eq!(p, expect);
        }
    }

    #[test]
    fn solve_matches_gram_schmidt() {
        let k = Multiplicity::ints(2, 1);
        for n in -4..=4 {
            assert_eq!(nonsym_jacobi_solve(n, &k).unwrap(), nonsym_jacobi_gs(n, &PairingKind::ct(&k)).unwrap());
        }
    }

    #[test]
    fn degenerate_spectrum_detected() {
        // ρ = −1: λ̃(1) = 0 = λ̃(−1)... collision between n = 1 and n = −1 needs 2ρ = −2
        let k = Multiplicity::ints(-2, 0);
        assert_eq!(nonsym_jacobi_solve(-1, &k), Err(Error::DegenerateSpectrum(-1)));
    }

    #[test]
    fn sym_jacobi_eigen() {
        let k = Multiplicity::ints(2, 1);
        let p = sym_jacobi(2, &k).unwrap();
        let mlp = modified_laplacian(&k).apply_x(&p).unwrap();
        assert_eq!(mlp, p.scale(&int(16)));
        assert_eq!(p.lead(), int(4));
        let k = Multiplicity::ints(1, 0);
        let p1 = sym_jacobi(1, &k).unwrap();
        assert!(pair_scalar(&Laurent::one(Var::Z), &crate::laurent::lift_x(&p1), &PairingKind::ct(&k)).unwrap().is_zero());
    }

    #[test]
    fn families() {
        assert_eq!(c_n(1, &Multiplicity::ints(2, 1)).unwrap(), rat(2, 7));
        let k = Multiplicity::ints(2, 1);
        let m = m_family(0, &k).unwrap();
        assert_eq!(m[0][0], Laurent::one(Var::X));
        assert_eq!(m[0][1], Laurent::constant(Var::X, rat(2, 5)));
        assert_eq!(m[1][1], Laurent::one(Var::X));
        for n in 0..3 {
            assert!(mat_families(n, &k).unwrap().relation_holds);
        }
        let k0 = Multiplicity::new(int(0), rat(1, 3));
        assert_eq!(c_matrix(2, &k0).unwrap(), [[int(1), int(0)], [int(0), int(1)]]);
    }
}
