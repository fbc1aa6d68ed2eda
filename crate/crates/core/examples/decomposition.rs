//! K (x) Abar = A for every coideal generated by a set of transpositions.
//!
//! ```text
//! cargo run --release --example decomposition [n] [max_degree]
//! ```

use std::sync::Arc;
use std::time::Instant;

use braidhopf::coideal::CoidealSubalgebra;
use braidhopf::decomp::build_decomposition;
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::word::FreeElement;
use itertools::Itertools;

fn main() -> braidhopf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(3);
    let max = args.next();
    let session = elaborate::<Rational>(&fk(n), max)?;
    let alg = session.algebra.clone();
    let labels = session.module().labels().to_vec();
    println!("FK{n} to degree {}: hilbert {:?}", alg.max_degree(), alg.hilbert());

    // Singletons only beyond FK3; the full power set grows quickly.
    let sizes = if labels.len() <= 3 { 1..=labels.len() } else { 1..=1 };
    for size in sizes {
        for subset in (0..labels.len()).combinations(size) {
            let start = Instant::now();
            let gens: Vec<_> = subset.iter().map(|&l| FreeElement::letter(l)).collect();
            let k = Arc::new(CoidealSubalgebra::generate(alg.clone(), &gens)?);
            let r = build_decomposition(&k, size == 1 && n == 3)?;
            let name = subset.iter().map(|&l| labels[l].as_str()).join(",");
            println!(
                "<{name}>: K {:?} Abar {:?} phi bijective {} -> {} ({:.2?})",
                braidhopf::report::trim(&r.hilbert_k),
                braidhopf::report::trim(&r.hilbert_abar),
                r.phi_bijective,
                if r.verdict { "ok" } else { "FAIL" },
                start.elapsed()
            );
            for e in &r.section {
                println!("    h({}) = {}", e.abar, e.h);
            }
        }
    }
    Ok(())
}
