//! Named verification suites. Each runs exact checks and collects failing cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cfunc::{
    evaluation_at_identity, lowering_of_one_at_e, norm_formula, quotient_identities, weight_norm_constant,
};
use crate::error::{Error, Result};
use crate::hc;
use crate::laurent::{Laurent, Var};
use crate::multiplicity::{Label, Multiplicity, Shift};
use crate::operator::{mat_op_equal, DROp, MatOp};
use crate::ops::{self, base_operator, composite_shift, fundamental, poly_of, transmutes, AnyOp, Realization};
use crate::pairing::{pair_scalar, PairingKind, PairingMode};
use crate::polynomials::{mat_families, nonsym_jacobi};
use crate::rational::{fmt_rat, int, rat, Rat};
use crate::shift::{check_action, check_adjoint, check_adjoint_nonsym, raising_lowering};
use crate::structure::{decompose_dw, decompose_shift, dw_word, recompose, recompose_dw, symmetry_identities};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Transmutation,
    Orthogonality,
    ShiftFactors,
    Structure,
    Adjoint,
    Hc,
    Norms,
    Evals,
    Symmetry,
    EigenvalueMap,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Transmutation,
        Suite::Orthogonality,
        Suite::ShiftFactors,
        Suite::Structure,
        Suite::Adjoint,
        Suite::Hc,
        Suite::Norms,
        Suite::Evals,
        Suite::Symmetry,
        Suite::EigenvalueMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Transmutation => "transmutation",
            Suite::Orthogonality => "orthogonality",
            Suite::ShiftFactors => "shift-factors",
            Suite::Structure => "structure",
            Suite::Adjoint => "adjoint",
            Suite::Hc => "hc",
            Suite::Norms => "norms",
            Suite::Evals => "evals",
            Suite::Symmetry => "symmetry",
            Suite::EigenvalueMap => "eigenvalue-map",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub k: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Why some or all checks did not apply at this k.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx {
    cases: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Ctx {
    fn check(&mut self, what: impl Fn() -> String, f: impl FnOnce() -> Result<bool>) {
        self.cases += 1;
        match f() {
            Ok(true) => {}
            Ok(false) => self.failures.push(what()),
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Random ordinary polynomial of the given degree in `var`, nonzero leading coefficient.
pub fn random_poly(rng: &mut ChaCha8Rng, var: Var, deg: i64) -> Laurent {
    let mut p = Laurent::from_terms(var, (0..deg).map(|e| (e, small_rat(&mut *rng))));
    let mut lead = small_rat(rng);
    if lead == int(0) {
        lead = int(1);
    }
    p.add_term(deg, lead);
    p
}

/// Random Laurent polynomial in z with exponents in [−deg, deg].
pub fn random_laurent(rng: &mut ChaCha8Rng, deg: i64) -> Laurent {
    Laurent::from_terms(Var::Z, (-deg..=deg).map(|e| (e, small_rat(&mut *rng))))
}

fn cone_shifts(max: i64) -> Vec<Shift> {
    let mut out = Vec::new();
    for n1 in 0..=max {
        for n2 in 0..=max {
            for e1 in [1, -1] {
                for e2 in [1, -1] {
                    let l = (e1 * n1) * Shift::E_PLUS + (e2 * n2) * Shift::G_PLUS;
                    if !out.contains(&l) {
                        out.push(l);
                    }
                }
            }
        }
    }
    out
}

fn fundamentals() -> [Shift; 4] {
    [Shift::G_PLUS, Shift::G_MINUS, Shift::E_PLUS, Shift::E_MINUS]
}

/// Transmutation of fundamentals and composites, γ-uniqueness and the algebraic relations.
fn transmutation(ctx: &mut Ctx, k: &Multiplicity) {
    for r in Realization::ALL {
        for l in fundamentals() {
            ctx.check(|| format!("fundamental {r:?} {l}"), || Ok(transmutes(r, &fundamental(r, l, k), l, k)));
        }
    }
    for l in cone_shifts(2) {
        for r in Realization::ALL {
            ctx.check(|| format!("composite {r:?} {l}"), || Ok(transmutes(r, &composite_shift(r, l, k)?, l, k)));
        }
    }
    for g in [-1, 0, 1] {
        for (l, op) in [
            (Shift::E_PLUS, ops::hat_e_plus(k, &int(g))),
            (Shift::E_MINUS, ops::hat_e_minus(k, &int(g))),
        ] {
            ctx.check(
                || format!("γ-uniqueness {l} γ={g}"),
                || Ok(transmutes(Realization::Mat, &AnyOp::Matrix(op), l, k) == (g == -1)),
            );
        }
    }
    ctx.check(
        || "E_+E_− relation".into(),
        || {
            let lhs = &(&ops::e_plus(&k.shifted(Shift::E_MINUS)) * &ops::e_minus(k))
                - &(&ops::e_minus(&k.shifted(Shift::E_PLUS)) * &ops::e_plus(k));
            Ok(crate::operator::op_equal(&lhs, &DROp::scalar(k.k1.clone())))
        },
    );
    ctx.check(
        || "𝔇² − 𝔇 + ¼ = diag(ML)".into(),
        || {
            let fd = ops::frak_d(k);
            let q = MatOp::scalar_diag(&DROp::scalar(rat(1, 4)));
            Ok(mat_op_equal(&(&(&(&fd * &fd) - &fd) + &q), &ops::diag_ml(k)))
        },
    );
    ctx.check(
        || "S𝒟 + 𝒟S = k1 + S".into(),
        || {
            let (s, d) = (ops::swap_s(), ops::cal_d(k));
            let rhs = &MatOp::scalar_diag(&DROp::scalar(k.k1.clone())) + &s;
            Ok(mat_op_equal(&(&(&s * &d) + &(&d * &s)), &rhs))
        },
    );
    // 𝒢(ℓ+ℓ′,k) = 𝒢(ℓ′,k+ℓ)𝒢(ℓ,k) whenever ℓ, ℓ′ lie in a common chamber
    for (a, b) in [(Shift::G_PLUS, Shift::E_PLUS), (Shift::G_MINUS, Shift::E_MINUS), (Shift::G_PLUS, Shift::E_MINUS)] {
        for r in Realization::ALL {
            ctx.check(
                || format!("composite relation {r:?} {a}+{b}"),
                || {
                    let lhs = composite_shift(r, a + b, k)?;
                    let rhs = composite_shift(r, b, &k.shifted(a))?.compose(&composite_shift(r, a, k)?);
                    Ok(lhs.equals(&rhs))
                },
            );
        }
    }
}

/// Eigenvalue equation, orthogonality and mode agreement.
fn orthogonality(ctx: &mut Ctx, k: &Multiplicity) {
    let d = ops::cherednik(k);
    let polys: Vec<(i64, Result<Laurent>)> = (-8..=8).map(|n| (n, nonsym_jacobi(n, k))).collect();
    for (n, e) in &polys {
        ctx.check(
            || format!("D E({n}) = λ̃ E({n})"),
            || {
                let e = e.clone()?;
                Ok(d.apply(&e)? == e.scale(&Label(*n).tilde(k)))
            },
        );
    }
    let integral = k.is_nonneg_integral();
    let modes: Vec<PairingKind> =
        if integral { vec![PairingKind::ct(k), PairingKind::moments(k)] } else { vec![PairingKind::moments(k)] };
    for (i, (m, em)) in polys.iter().enumerate() {
        for (n, en) in &polys[i + 1..] {
            for mode in &modes {
                ctx.check(
                    || format!("({m},{n}) orthogonal in {:?}", mode.mode),
                    || Ok(pair_scalar(em.as_ref().map_err(Clone::clone)?, en.as_ref().map_err(Clone::clone)?, mode)? == int(0)),
                );
            }
        }
    }
    if integral {
        for (n, e) in &polys {
            ctx.check(
                || format!("modes agree on ||E({n})||²"),
                || {
                    let e = e.clone()?;
                    Ok(pair_scalar(&e, &e, &PairingKind::ct(k))? == pair_scalar(&e, &e, &PairingKind::moments(k))?)
                },
            );
        }
    }
    debug_assert!(matches!(modes[0].mode, PairingMode::ConstantTerm | PairingMode::Moments));
}

fn shift_factors(ctx: &mut Ctx, k: &Multiplicity) {
    for l in fundamentals() {
        let kl = k.shifted(l);
        let off_edge = kl.k1 < int(0) || kl.k2 < int(0);
        for n in 0..=6 {
            for r in [Realization::Sym, Realization::Mat, Realization::MatU] {
                match check_action(r, l, n, k) {
                    Err(Error::PochhammerZero(_) | Error::DegenerateSpectrum(_)) if off_edge => {
                        ctx.notes.push(format!("{r:?} {l} N={n}: target family undefined at k+ℓ = {kl}"));
                    }
                    res => ctx.check(|| format!("{r:?} {l} N={n}"), || res),
                }
            }
        }
        for lam in -6..=7 {
            match check_action(Realization::Nonsym, l, lam, k) {
                Err(Error::PochhammerZero(_) | Error::DegenerateSpectrum(_)) if off_edge => {
                    ctx.notes.push(format!("Nonsym {l} λ={lam}: target family undefined at k+ℓ = {kl}"));
                }
                res => ctx.check(|| format!("Nonsym {l} λ={lam}"), || res),
            }
        }
    }
}

fn structure(ctx: &mut Ctx, k: &Multiplicity, rng: &mut ChaCha8Rng) {
    let shifts = cone_shifts(1);
    for r in Realization::ALL {
        for case in 0..20 {
            let l = shifts[rng.gen_range(0..shifts.len())];
            let deg = rng.gen_range(0..=3);
            let p = random_poly(rng, Var::Xi, deg);
            ctx.check(
                || format!("{r:?} case {case} ℓ={l} p={p}"),
                || {
                    let op = composite_shift(r, l, k)?.compose(&poly_of(&p, &base_operator(r, k)));
                    let d = decompose_shift(&op, r, l, k)?;
                    Ok(d.poly == p && recompose(&d, r, k)?.equals(&op))
                },
            );
        }
    }
    for case in 0..20 {
        let len = rng.gen_range(0..=4);
        let word: Vec<u8> = (0..len).map(|_| rng.gen_range(0..3)).collect();
        ctx.check(
            || format!("D(W) word {word:?} (case {case})"),
            || {
                let w = dw_word(&word, k);
                Ok(mat_op_equal(&recompose_dw(&decompose_dw(&w, k)?, k), &w))
            },
        );
    }
    let d = AnyOp::Scalar(ops::cherednik(k));
    for len in 0..=4u32 {
        ctx.check(
            || format!("scalar commutant D^{len}"),
            || {
                let mut op = d.identity_like();
                for _ in 0..len {
                    op = op.compose(&d);
                }
                let dec = decompose_shift(&op, Realization::Nonsym, Shift::ZERO, k)?;
                Ok(dec.poly == Laurent::monomial(Var::Xi, len as i64, int(1)))
            },
        );
    }
}

fn adjoint(ctx: &mut Ctx, k: &Multiplicity, rng: &mut ChaCha8Rng) {
    let shifts = [Shift::G_PLUS, Shift::E_PLUS, Shift::new(2, 0).unwrap()];
    let shifts: Vec<Shift> = shifts
        .into_iter()
        .filter(|l| {
            let ok = k.is_nonneg_integral() && k.shifted(*l).is_nonneg_integral();
            if !ok {
                ctx.notes.push(format!("ℓ={l}: adjointness is checked for integer k, k+ℓ >= 0 only"));
            }
            ok
        })
        .collect();
    for case in 0..10 {
        let f = random_laurent(rng, 5);
        let g = random_laurent(rng, 5);
        for &l in &shifts {
            for r in [Realization::Sym, Realization::MatU, Realization::Nonsym] {
                ctx.check(|| format!("{r:?} ℓ={l} case {case}"), || check_adjoint(r, l, k, &f, &g));
            }
        }
        let p = random_poly(rng, Var::Xi, 1);
        if !shifts.contains(&Shift::G_PLUS) {
            continue;
        }
        ctx.check(
            || format!("Nonsym with p(D) ℓ=(0,1) case {case}"),
            || check_adjoint_nonsym(Shift::G_PLUS, k, &f, &g, &p),
        );
    }
}

fn hc_suite(ctx: &mut Ctx, k: &Multiplicity, rng: &mut ChaCha8Rng) {
    for deg in 0..=4 {
        let p = random_poly(rng, Var::Xi, deg);
        ctx.check(|| format!("CT of p={p}"), || hc::check_ct_of_p(&p, k));
    }
    let p = random_poly(rng, Var::Xi, 2);
    let d = hc::transfer(&hc::p_of_cherednik(&p, k));
    for n in 0..=5 {
        ctx.check(|| format!("eigenvalue reading n={n}"), || hc::check_eigen_reading(&d, n, k));
    }
    for deg in 0..=3 {
        let p = random_poly(rng, Var::Xi, deg);
        for lam in -5..=5 {
            ctx.check(|| format!("D P({lam}) = p(λ̃)P({lam}), p={p}"), || hc::check_hc_eigenvalue(&p, lam, k));
        }
        ctx.check(
            || format!("reconstruction p={p}"),
            || {
                let d = hc::transfer(&hc::p_of_cherednik(&p, k));
                Ok(hc::reconstruct(&hc::constant_term(&d)?, k, 8)? == hc::expansion(&d, 8)?)
            },
        );
    }
}

fn in_c_domain(k: &Multiplicity) -> bool {
    k.in_2z_z() && k.k1 >= int(1) && k.k2 >= int(1)
}

fn norms(ctx: &mut Ctx, k: &Multiplicity) {
    if !in_c_domain(k) {
        if *k != Multiplicity::ints(0, 0) {
            ctx.notes.push(format!("c-functions need k in 2Z x Z with k >= 1; nothing to check at {k}"));
            return;
        }
        // Chebyshev: every c-function is 1 and ||z^n||² = 1
        for lam in -5..=5 {
            ctx.check(
                || format!("λ={lam} degenerate norm"),
                || {
                    let e = nonsym_jacobi(lam, k)?;
                    Ok(pair_scalar(&e, &e, &PairingKind::ct(k))? == int(1))
                },
            );
        }
        return;
    }
    let want = weight_norm_constant(k);
    for lam in -5..=5 {
        ctx.check(
            || format!("λ={lam} norm constant is 2^(-k1-k2)"),
            || Ok(Some(norm_formula(Label(lam), k)?.constant) == want),
        );
    }
}

fn evals(ctx: &mut Ctx, k: &Multiplicity, rng: &mut ChaCha8Rng) {
    if !in_c_domain(k) {
        if *k != Multiplicity::ints(0, 0) {
            ctx.notes.push(format!("c-functions need k in 2Z x Z with k >= 1; nothing to check at {k}"));
            return;
        }
        for lam in -5..=5 {
            ctx.check(|| format!("λ={lam} degenerate evaluation"), || Ok(nonsym_jacobi(lam, k)?.value_at_one() == int(1)));
        }
        return;
    }
    for lam in -5..=5 {
        ctx.check(
            || format!("λ={lam} evaluation at identity"),
            || {
                let r = evaluation_at_identity(Label(lam), k)?;
                Ok(r.lhs == r.rhs)
            },
        );
    }
    for l in [Shift::G_PLUS, Shift::E_PLUS] {
        let km = k.shifted(-l);
        if km.k1 < int(0) || km.k2 < int(0) {
            continue;
        }
        ctx.check(
            || format!("𝒢_−(−{l})(1)(e) as c̃-ratio"),
            || {
                let g = lowering_of_one_at_e(l, k)?;
                Ok(g.rescaled == g.c_ratio)
            },
        );
        for lam in -4..=4 {
            ctx.check(|| format!("quotient identities ℓ={l} λ={lam}"), || Ok(quotient_identities(l, Label(lam), k)?.holds()));
        }
        for case in 0..5 {
            let f = random_laurent(rng, 3);
            ctx.check(
                || format!("restriction property ℓ={l} case {case}"),
                || {
                    let op = raising_lowering(-l, k)?;
                    let one = op.apply(&Laurent::one(Var::Z))?.value_at_one();
                    Ok(op.apply(&f)?.value_at_one() == one * f.value_at_one())
                },
            );
        }
    }
}

fn symmetry(ctx: &mut Ctx, k: &Multiplicity) {
    for n in 0..=5 {
        ctx.check(|| format!("E(z⁻¹) identities N={n}"), || symmetry_identities(n, k));
        ctx.check(|| format!("matrix family relation N={n}"), || Ok(mat_families(n, k)?.relation_holds));
    }
}

fn eigenvalue_map(ctx: &mut Ctx, k: &Multiplicity, rng: &mut ChaCha8Rng) {
    for deg in 0..=3 {
        let p = random_poly(rng, Var::Xi, deg);
        for n in 0..=5 {
            ctx.check(|| format!("D M(N) = M(N) γ_EV N={n} p={p}"), || hc::check_d_on_m(&p, n, k));
        }
        for i in 0..10 {
            let lam = rat(rng.gen_range(-12..=12), if i % 2 == 0 { 1 } else { 2 });
            ctx.check(
                || format!("s_* invariance at λ={} p={p}", fmt_rat(&lam)),
                || Ok(hc::s_star_invariance(&p, k, &lam).shifted),
            );
        }
    }
}

pub fn run_suite(suite: Suite, k: &Multiplicity, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut ctx = Ctx { cases: 0, failures: Vec::new(), notes: Vec::new() };
    match suite {
        Suite::Transmutation => transmutation(&mut ctx, k),
        Suite::Orthogonality => orthogonality(&mut ctx, k),
        Suite::ShiftFactors => shift_factors(&mut ctx, k),
        Suite::Structure => structure(&mut ctx, k, &mut rng),
        Suite::Adjoint => adjoint(&mut ctx, k, &mut rng),
        Suite::Hc => hc_suite(&mut ctx, k, &mut rng),
        Suite::Norms => norms(&mut ctx, k),
        Suite::Evals => evals(&mut ctx, k, &mut rng),
        Suite::Symmetry => symmetry(&mut ctx, k),
        Suite::EigenvalueMap => eigenvalue_map(&mut ctx, k, &mut rng),
    }
    SuiteReport { suite, k: k.to_string(), seed, cases: ctx.cases, failures: ctx.failures, notes: ctx.notes }
}

pub fn run_all(k: &Multiplicity, seed: u64) -> Vec<SuiteReport> {
    Suite::ALL.into_iter().map(|s| run_suite(s, k, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        let k = Multiplicity::ints(2, 1);
        for s in [Suite::Norms, Suite::Evals, Suite::Symmetry] {
            let r = run_suite(s, &k, 7);
            assert!(r.passed(), "{:?}", r.failures);
        }
    }
}
