//! A as a free right K-module: a homogeneous basis N with N (x) K = A.
//!
//! ```text
//! cargo run --release --example freeness [n] [max_degree]
//! ```

use std::sync::Arc;

use braidhopf::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::hopf_module::{find_free_basis, HopfModuleData};
use braidhopf::linalg::SparseVec;
use braidhopf::algebra::Homogeneous;
use braidhopf::word::FreeElement;

fn main() -> braidhopf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(3);
    let session = elaborate::<Rational>(&fk(n), args.next())?;
    let alg = session.algebra.clone();
    for (l, name) in session.module().labels().iter().enumerate() {
        let k = Arc::new(CoidealSubalgebra::generate(alg.clone(), &[FreeElement::letter(l)])?);
        let q = QuotientCoalgebra::new(&k)?;
        let r = find_free_basis(&HopfModuleData::of_algebra(&k))?;
        println!(
            "K = <{name}>: N {:?}, Abar {:?}, free: {}",
            braidhopf::report::trim(&r.hilbert_n),
            braidhopf::report::trim(&q.hilbert()),
            r.verdict
        );
        if n == 3 {
            let basis: Vec<String> = r
                .basis
                .iter()
                .enumerate()
                .flat_map(|(d, ps)| ps.iter().map(move |&p| (d, p)))
                .map(|(d, p)| alg.render(&Homogeneous::new(d, SparseVec::unit(p))))
                .collect();
            println!("    N = span{{{}}}", basis.join(", "));
        }
    }
    Ok(())
}
