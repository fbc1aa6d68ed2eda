//! The coideal subalgebra generated by one transposition in FK3 and the
//! quotient coalgebra A/K+A, with its left A-coaction.
//!
//! ```text
//! cargo run --example coideal_quotient [generator]
//! ```

use std::sync::Arc;

use braidhopf::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::linalg::SparseVec;
use braidhopf::word::FreeElement;

fn main() -> braidhopf::Result<()> {
    let session = elaborate::<Rational>(&fk(3), None)?;
    let alg = session.algebra.clone();
    let name = std::env::args().nth(1).unwrap_or_else(|| "v12".into());
    let l = session.module().label_index(&name).expect("unknown generator");

    let k = Arc::new(CoidealSubalgebra::generate(alg.clone(), &[FreeElement::letter(l)])?);
    println!("K = <{name}>: hilbert {:?}", k.hilbert());
    match k.check_left_coideal() {
        None => println!("left coideal: yes"),
        Some(w) => println!("left coideal: no, {} escapes via {}", w.element, w.escaping),
    }

    let q = QuotientCoalgebra::new(&k)?;
    println!("Abar = A/K+A: hilbert {:?}", q.hilbert());
    for n in 0..=q.max_degree() {
        let words: Vec<String> = (0..q.dim(n)).map(|j| q.render(n, &SparseVec::unit(j))).collect();
        if !words.is_empty() {
            println!("  Abar_{n}: {}", words.join(", "));
        }
    }
    println!("coaction coassociative: {}", q.check_coaction_coassociative().is_none());

    let pair = FreeElement::letter(l).mul(&FreeElement::letter((l + 1) % 3));
    println!("generated by {}, not a coideal:", pair.render(session.module().labels()));
    let bad = CoidealSubalgebra::generate(alg, &[pair])?;
    if let Some(w) = bad.check_left_coideal() {
        println!("  {} in degree {} has coproduct part {} outside A (x) K", w.element, w.degree, w.escaping);
    }
    Ok(())
}
