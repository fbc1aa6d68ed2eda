//! Exact braided Hopf axiom suite on FK(n), optionally truncated.
//!
//! ```text
//! cargo run --release --example axiom_suite [n] [max_degree]
//! ```

use std::time::Instant;

use braidhopf::axioms::{check_axioms, AxiomConfig};
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;

fn main() -> braidhopf::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(3, |s| s.parse().expect("n"));
    let max: Option<usize> = args.next().map(|s| s.parse().expect("max_degree"));
    let start = Instant::now();
    let session = elaborate::<Rational>(&fk(n), max)?;
    let built = start.elapsed();
    let report = check_axioms(&session.algebra, &AxiomConfig::default());
    println!("FK{n} to degree {} (built in {built:.2?})", report.degrees_checked);
    for c in &report.checks {
        let status = if c.passed { "ok" } else { "FAILED" };
        print!("  {:<26} {status:<6} ({} checked)", c.name, c.checked);
        match &c.witness {
            Some(w) => println!(" witness: {w}"),
            None => println!(),
        }
    }
    println!("verdict {} in {:.2?}", report.verdict, start.elapsed());
    Ok(())
}
