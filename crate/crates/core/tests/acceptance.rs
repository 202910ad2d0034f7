//! One line per acceptance criterion, then a single assertion over all of them.

use bc1::cfunc::{c_function, conjectured_norm_constant, evaluation_at_identity, norm_formula, CKind};
use bc1::ops::cherednik;
use bc1::polynomials::{c_n, mat_families, nonsym_jacobi};
use bc1::rational::{fmt_rat, int, rat};
use bc1::shift::h_mat_u;
use bc1::verify::{run_all, run_suite, Suite, SuiteReport};
use bc1::{Label, Laurent, Multiplicity, Rat, Shift};

const SEED: u64 = 0;

struct Line {
    id: u32,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn k(a: i64, b: i64) -> Multiplicity {
    Multiplicity::ints(a, b)
}

fn k_frac() -> Multiplicity {
    Multiplicity::new(rat(1, 2), rat(1, 3))
}

fn summary(reports: &[SuiteReport]) -> (bool, String) {
    let ok = reports.iter().all(SuiteReport::passed);
    let parts: Vec<String> = reports
        .iter()
        .map(|r| {
            let mut s = format!("{} at {}: {}/{}", r.suite.name(), r.k, r.cases - r.failures.len(), r.cases);
            if let Some(f) = r.failures.first() {
                s.push_str(&format!(" (first failure: {f})"));
            }
            s
        })
        .collect();
    (ok, parts.join("; "))
}

fn c1_eigen() -> (bool, String) {
    let mut bad = Vec::new();
    for kk in [k(0, 0), k(1, 1), k(2, 1), k_frac()] {
        let d = cherednik(&kk);
        for n in -8..=8 {
            let e = nonsym_jacobi(n, &kk).unwrap();
            if d.apply(&e).unwrap() != e.scale(&Label(n).tilde(&kk)) {
                bad.push(format!("n={n} k={kk}"));
            }
        }
    }
    (bad.is_empty(), format!("68 cases, {} bad {bad:?}", bad.len()))
}

fn c3_matrix_relation() -> (bool, String) {
    let mut ok = true;
    for kk in [k(2, 1), k(1, 1)] {
        for n in 0..=5 {
            ok &= mat_families(n, &kk).unwrap().relation_holds;
            let want = &kk.k1 / (int(1 + 2 * n) + &kk.k1 + int(2) * &kk.k2);
            ok &= c_n(n, &kk).unwrap() == want;
        }
    }
    let anchor = c_n(1, &k(2, 1)).unwrap();
    ok &= anchor == rat(2, 7);
    (ok, format!("N ≤ 5 at (2,1),(1,1); c_1((2,1)) = {}", fmt_rat(&anchor)))
}

fn c4_shift_tables() -> (bool, String) {
    let (mut ok, d) = summary(&[run_suite(Suite::ShiftFactors, &k(2, 1), SEED), run_suite(Suite::ShiftFactors, &k(1, 1), SEED)]);
    let h = h_mat_u(Shift::G_PLUS, 0, &k(2, 1)).unwrap();
    let zero = h.iter().flatten().all(|x| *x == int(0));
    ok &= zero;
    (ok, format!("{d}; H(0, Ĝ^U_+) zero: {zero}"))
}

fn c9_norms() -> (bool, String) {
    let ks = [k(2, 1), k(2, 2), k(4, 1)];
    let mut ok = true;
    let mut measured = Vec::new();
    for kk in &ks {
        let rows: Vec<Rat> = (-5..=5).map(|l| norm_formula(Label(l), kk).unwrap().constant).collect();
        ok &= rows.iter().all(|c| *c == rows[0]);
        let conj = conjectured_norm_constant(kk).unwrap();
        measured.push(format!("{kk}: {} vs 2^(1-k1-2k2) = {}", fmt_rat(&rows[0]), fmt_rat(&conj)));
        ok &= rows[0] == conj;
    }
    let a = norm_formula(Label(1), &k(2, 1)).unwrap();
    ok &= (a.lhs, a.rhs, a.constant) == (rat(21, 20), rat(42, 5), rat(1, 8));
    (ok, format!("λ-independent for |λ| ≤ 5; anchor (21/20, 42/5, 1/8); {}", measured.join(", ")))
}

fn c10_evals() -> (bool, String) {
    let (mut ok, d) = summary(&[run_suite(Suite::Evals, &k(2, 1), SEED), run_suite(Suite::Evals, &k(2, 2), SEED)]);
    let kk = k(2, 1);
    let at_one = nonsym_jacobi(1, &kk).unwrap().value_at_one();
    let ratio = c_function(CKind::TildeS, &int(2), &kk).unwrap().value / c_function(CKind::TildeOne, &int(3), &kk).unwrap().value;
    let row = evaluation_at_identity(Label(1), &kk).unwrap();
    ok &= at_one == rat(7, 5) && ratio == rat(7, 5) && row.lhs == row.rhs;
    (ok, format!("{d}; E(ε,(2,1);1) = {}, c̃_s(2)/c̃_1(3) = {}", fmt_rat(&at_one), fmt_rat(&ratio)))
}

fn c14_chebyshev() -> (bool, String) {
    let k0 = k(0, 0);
    let monomials = (-8..=8).all(|n| nonsym_jacobi(n, &k0).unwrap() == Laurent::z(n));
    let (ok, d) = summary(&run_all(&k0, SEED));
    (ok && monomials, format!("E(n,0) = z^n: {monomials}; {d}"))
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();
    let mut push = |id, title, (ok, detail): (bool, String)| lines.push(Line { id, title, ok, detail });

    push(1, "eigenvalue identity", c1_eigen());
    push(
        2,
        "orthogonality",
        summary(&[k(0, 0), k(1, 1), k(2, 1), k_frac()].map(|kk| run_suite(Suite::Orthogonality, &kk, SEED))),
    );
    push(3, "matrix family relation", c3_matrix_relation());
    push(4, "shift-factor tables", c4_shift_tables());

    let tr = run_suite(Suite::Transmutation, &k(2, 1), SEED);
    let relation = |f: &String| f.starts_with("E_+") || f.starts_with("𝔇") || f.starts_with("S𝒟") || f.starts_with("composite relation");
    let fails5: Vec<_> = tr.failures.iter().filter(|f| !relation(f)).collect();
    let fails6: Vec<_> = tr.failures.iter().filter(|f| relation(f)).collect();
    push(5, "transmutation identities", (fails5.is_empty(), format!("{} cases at {}, failures {fails5:?}", tr.cases, tr.k)));
    push(6, "algebraic relations", (fails6.is_empty(), format!("failures {fails6:?}")));

    push(7, "structure round trips", summary(&[run_suite(Suite::Structure, &k(2, 1), SEED)]));
    push(8, "adjointness", summary(&[run_suite(Suite::Adjoint, &k(2, 1), SEED)]));
    push(9, "norm formula", c9_norms());
    push(10, "evaluation at identity", c10_evals());
    push(11, "Harish-Chandra suite", summary(&[run_suite(Suite::Hc, &k(2, 1), SEED)]));
    push(
        12,
        "symmetry identities",
        summary(&[k(0, 0), k(1, 1), k(2, 1)].map(|kk| run_suite(Suite::Symmetry, &kk, SEED))),
    );
    push(13, "eigenvalue-map invariance", summary(&[run_suite(Suite::EigenvalueMap, &k(2, 1), SEED)]));
    push(14, "Chebyshev regression", c14_chebyshev());

    println!();
    for l in &lines {
        println!("criterion {:>2} {} {}: {}", l.id, if l.ok { "PASS" } else { "FAIL" }, l.title, l.detail);
    }
    let red: Vec<u32> = lines.iter().filter(|l| !l.ok).map(|l| l.id).collect();
    assert!(red.is_empty(), "failing criteria: {red:?}");
}
