//! Runs every verification suite at one k and prints a summary; `cargo run --example verify_suites -- 1,1`.

use bc1::verify::run_all;
use bc1::Multiplicity;

fn main() -> bc1::Result<()> {
    let k = match std::env::args().nth(1) {
        Some(s) => Multiplicity::parse(&s)?,
        None => Multiplicity::ints(1, 1),
    };
    let mut ok = true;
    for r in run_all(&k, 0) {
        ok &= r.passed();
        println!("{:<15} {:>4} cases  {} failures  {} notes", r.suite.name(), r.cases, r.failures.len(), r.notes.len());
    }
    println!("{}", if ok { "all passed" } else { "FAILED" });
    Ok(())
}
