use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bc1::cfunc::{c_function, evaluation_at_identity, norm_formula, CKind};
use bc1::hc;
use bc1::laurent::{parse_coeffs, parse_terms, Laurent, Var};
use bc1::ops::{base_operator, composite_shift, make_named, poly_of, AnyOp, Realization};
use bc1::polynomials::{cal_p, m_family, n_family, nonsym_jacobi, sym_jacobi};
use bc1::rational::{fmt_rat, int, Rat};
use bc1::shift::{check_action, shift_factor};
use bc1::structure::decompose_shift;
use bc1::verify::{run_all, run_suite, Suite, SuiteReport};
use bc1::{Error, Label, Multiplicity, Shift};

#[derive(Parser)]
#[command(name = "bc1", version, about = "Non-symmetric BC1 Jacobi polynomials and shift operators, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// non-symmetric E(n,k), Laurent in z
    E,
    /// symmetric p(n,k), polynomial in x
    P,
    /// vector 𝒫(n,k) = Υ(E(n,k)) in x
    Vec,
    /// matrix family 𝒩(N,k)
    N,
    /// matrix family 𝓜(N,k)
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Norms,
    Evals,
    ShiftFactors,
    Cfunc,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a polynomial or matrix polynomial.
    Poly {
        #[arg(long, value_enum, ignore_case = true, default_value = "e")]
        family: Family,
        #[arg(long, short = 'n', allow_negative_numbers = true)]
        n: Option<i64>,
        #[arg(long = "N")]
        big_n: Option<i64>,
        #[arg(long, default_value = "2,1")]
        k: String,
    },
    /// Print a named operator's coefficients.
    Op {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "2,1")]
        k: String,
        /// γ for the Ê_± operators (default −1)
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<String>,
    },
    /// Apply a named operator; f and g are "exp:coef,..." lists (z for scalar, x for matrix operators).
    Apply {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = "2,1")]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        g: String,
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<String>,
    },
    /// Run a verification suite, or all of them.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "2,1")]
        k: String,
        #[arg(long, env = "BC1_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Factor 𝒮 = S(ℓ,k)·p(B_k). Without --name the input is built from --p.
    Decompose {
        #[arg(long, default_value = "nonsym")]
        realization: String,
        #[arg(long, allow_hyphen_values = true)]
        ell: String,
        #[arg(long, default_value = "2,1")]
        k: String,
        /// coefficients c0,c1,... of p in ξ
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Constant term and Harish-Chandra image of β_ns(Γ_*(p(D_k))).
    Hc {
        /// coefficients c0,c1,... of p in ξ
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "2,1")]
        k: String,
        /// order for the reconstruction round trip
        #[arg(long, default_value_t = 8)]
        truncation: usize,
    },
    /// Emit a table of rows.
    Table {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, default_value = "2,1")]
        k: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-3..3")]
        range: String,
        #[arg(long, allow_hyphen_values = true)]
        ell: Option<String>,
        #[arg(long, default_value = "nonsym")]
        realization: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = std::result::Result<Value, Failure>;

fn laurent_json(p: &Laurent) -> Value {
    json!({ "text": p.to_string(), "poly": p })
}

fn op_json(op: &AnyOp) -> Value {
    match op {
        AnyOp::Scalar(d) => json!({ "kind": "scalar", "order": d.order(), "terms": d.dump() }),
        AnyOp::Matrix(m) => {
            let e: Vec<Vec<Value>> =
                (0..2).map(|i| (0..2).map(|j| json!(m.get(i, j).dump())).collect()).collect();
            json!({ "kind": "matrix", "order": m.order(), "entries": e })
        }
    }
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn need(v: Option<i64>, what: &str) -> std::result::Result<i64, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{what} is required for this family")))
}

fn poly(family: Family, n: Option<i64>, big_n: Option<i64>, k: &Multiplicity) -> Out {
    let xm = |m: bc1::operator::XMat| {
        json!(m.iter().map(|r| r.iter().map(laurent_json).collect::<Vec<_>>()).collect::<Vec<_>>())
    };
    Ok(match family {
        Family::E => {
            let n = need(n, "n")?;
            json!({ "family": "E", "n": n, "k": k.to_string(), "result": laurent_json(&nonsym_jacobi(n, k)?) })
        }
        Family::P => {
            let n = need(n.or(big_n), "n")?;
            json!({ "family": "p", "n": n, "k": k.to_string(), "result": laurent_json(&sym_jacobi(n, k)?) })
        }
        Family::Vec => {
            let n = need(n, "n")?;
            let [a, b] = cal_p(n, k)?;
            json!({ "family": "vec", "n": n, "k": k.to_string(), "result": [laurent_json(&a), laurent_json(&b)] })
        }
        Family::N => {
            let n = need(big_n.or(n), "N")?;
            json!({ "family": "N", "N": n, "k": k.to_string(), "result": xm(n_family(n, k)?) })
        }
        Family::M => {
            let n = need(big_n.or(n), "N")?;
            json!({ "family": "M", "N": n, "k": k.to_string(), "result": xm(m_family(n, k)?) })
        }
    })
}

fn parse_gamma(g: &Option<String>) -> std::result::Result<Option<Rat>, Failure> {
    Ok(match g {
        Some(s) => Some(bc1::rational::parse_rat(s)?),
        None => None,
    })
}

fn apply(name: &str, k: &Multiplicity, f: &str, g: &str, gamma: &Option<String>) -> Out {
    let op = make_named(name, k, parse_gamma(gamma)?.as_ref())?;
    Ok(match &op {
        AnyOp::Scalar(d) => {
            let f = parse_terms(Var::Z, f)?;
            json!({ "name": name, "input": laurent_json(&f), "result": laurent_json(&d.apply(&f)?) })
        }
        AnyOp::Matrix(m) => {
            let v = [parse_terms(Var::X, f)?, parse_terms(Var::X, g)?];
            let r = m.apply_xvec(&v)?;
            json!({ "name": name, "result": [laurent_json(&r[0]), laurent_json(&r[1])] })
        }
    })
}

fn report_json(r: &SuiteReport) -> Value {
    json!({ "suite": r.suite, "k": r.k, "seed": r.seed, "cases": r.cases, "passed": r.passed(),
            "failures": r.failures.iter().take(5).collect::<Vec<_>>(), "failure_count": r.failures.len() })
}

fn verify(suite: &Option<String>, all: bool, k: &Multiplicity, seed: u64) -> Out {
    let reports = match (suite, all) {
        (Some(s), false) => vec![run_suite(Suite::parse(s)?, k, seed)],
        (None, true) => run_all(k, seed),
        _ => return Err(Failure::Usage("give exactly one of --suite or --all".into())),
    };
    let ok = reports.iter().all(SuiteReport::passed);
    let v = json!({ "passed": ok, "reports": reports.iter().map(report_json).collect::<Vec<_>>() });
    if ok {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn decompose(r: &str, ell: &str, k: &Multiplicity, p: &Option<String>, name: &Option<String>) -> Out {
    let r = Realization::parse(r)?;
    let l = Shift::parse(ell)?;
    let op = match (p, name) {
        (Some(p), None) => {
            let p = parse_coeffs(Var::Xi, p)?;
            composite_shift(r, l, k)?.compose(&poly_of(&p, &base_operator(r, k)))
        }
        (None, Some(n)) => make_named(n, k, None)?,
        _ => return Err(Failure::Usage("give exactly one of --p or --name".into())),
    };
    let d = decompose_shift(&op, r, l, k)?;
    Ok(json!({ "ell": [d.ell.l1, d.ell.l2], "p": laurent_json(&d.poly), "residual_is_zero": d.residual_is_zero }))
}

fn hc_cmd(p: &str, k: &Multiplicity, nmax: usize) -> Out {
    let p = parse_coeffs(Var::Xi, p)?;
    let d = hc::transfer(&hc::p_of_cherednik(&p, k));
    let ct = hc::constant_term(&d)?;
    let h = hc::hc_map(&d, k)?;
    let round_trip = hc::reconstruct(&ct, k, nmax)? == hc::expansion(&d, nmax)?;
    let m = |c: &hc::ConstTermMatrix| {
        json!(c.e.iter().map(|r| r.iter().map(laurent_json).collect::<Vec<_>>()).collect::<Vec<_>>())
    };
    let v = json!({ "p": laurent_json(&p), "k": k.to_string(), "constant_term": m(&ct), "hc": m(&h),
                    "closed_form_holds": h == hc::ct_of_p(&p, k), "reconstruction_matches": round_trip,
                    "truncation": nmax });
    if round_trip && h == hc::ct_of_p(&p, k) {
        Ok(v)
    } else {
        Err(Failure::Check(v))
    }
}

fn table(what: What, k: &Multiplicity, range: (i64, i64), ell: &Option<String>, r: &str) -> std::result::Result<Vec<Vec<(String, String)>>, Failure> {
    let mut rows = Vec::new();
    for i in range.0..=range.1 {
        let row: Vec<(String, String)> = match what {
            What::Norms => {
                let n = norm_formula(Label(i), k)?;
                vec![
                    ("lambda".into(), i.to_string()),
                    ("lhs".into(), fmt_rat(&n.lhs)),
                    ("rhs".into(), fmt_rat(&n.rhs)),
                    ("constant".into(), fmt_rat(&n.constant)),
                ]
            }
            What::Evals => {
                let e = evaluation_at_identity(Label(i), k)?;
                vec![
                    ("lambda".into(), i.to_string()),
                    ("lhs".into(), fmt_rat(&e.lhs)),
                    ("rhs".into(), fmt_rat(&e.rhs)),
                    ("equal".into(), (e.lhs == e.rhs).to_string()),
                ]
            }
            What::ShiftFactors => {
                let l = Shift::parse(ell.as_deref().ok_or_else(|| Failure::Usage("--ell is required".into()))?)?;
                let r = Realization::parse(r)?;
                let f = serde_json::to_string(&shift_factor(r, l, i, k)?).unwrap_or_default();
                vec![
                    ("index".into(), i.to_string()),
                    ("factor".into(), f),
                    ("verified".into(), check_action(r, l, i, k)?.to_string()),
                ]
            }
            What::Cfunc => {
                let x = int(i);
                let mut row = vec![("x".into(), i.to_string())];
                for (name, kind) in [("c~1", CKind::TildeOne), ("c~s", CKind::TildeS), ("c*1", CKind::StarOne), ("c*s", CKind::StarS)] {
                    let v = c_function(kind, &x, k).map(|c| fmt_rat(&c.value)).unwrap_or_else(|_| "pole".into());
                    row.push((name.into(), v));
                }
                row
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

fn emit_table(rows: &[Vec<(String, String)>], format: Format) -> String {
    match format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(r.iter().map(|(a, b)| (a.clone(), Value::String(b.clone()))).collect()))
                .collect();
            serde_json::to_string_pretty(&v).unwrap()
        }
        Format::Csv => {
            let mut out = String::new();
            if let Some(first) = rows.first() {
                out += &first.iter().map(|(a, _)| a.as_str()).collect::<Vec<_>>().join(",");
                out.push('\n');
            }
            for r in rows {
                let cells: Vec<String> =
                    r.iter().map(|(_, b)| if b.contains(',') || b.contains('"') { format!("\"{}\"", b.replace('"', "\"\"")) } else { b.clone() }).collect();
                out += &cells.join(",");
                out.push('\n');
            }
            out
        }
    }
}

fn run(cli: Cli) -> std::result::Result<String, Failure> {
    let k_of = |s: &str| Multiplicity::parse(s).map_err(Failure::from);
    let v = match cli.cmd {
        Cmd::Poly { family, n, big_n, k } => poly(family, n, big_n, &k_of(&k)?)?,
        Cmd::Op { name, k, gamma } => op_json(&make_named(&name, &k_of(&k)?, parse_gamma(&gamma)?.as_ref())?),
        Cmd::Apply { name, k, f, g, gamma } => apply(&name, &k_of(&k)?, &f, &g, &gamma)?,
        Cmd::Verify { suite, all, k, seed } => verify(&suite, all, &k_of(&k)?, seed)?,
        Cmd::Decompose { realization, ell, k, p, name } => decompose(&realization, &ell, &k_of(&k)?, &p, &name)?,
        Cmd::Hc { p, k, truncation } => hc_cmd(&p, &k_of(&k)?, truncation)?,
        Cmd::Table { what, k, range, ell, realization, format } => {
            let rows = table(what, &k_of(&k)?, parse_range(&range)?, &ell, &realization)?;
            return Ok(emit_table(&rows, format));
        }
    };
    Ok(serde_json::to_string_pretty(&v).unwrap())
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(s) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(v)) => {
            emit(&serde_json::to_string_pretty(&v).unwrap());
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
