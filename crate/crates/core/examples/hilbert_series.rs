//! Hilbert series of the Fomin-Kirillov algebras FK2, FK3, FK4.
//!
//! ```text
//! cargo run --release --example hilbert_series [n]
//! ```

use std::time::Instant;

use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;

fn main() -> braidhopf::Result<()> {
    let ns: Vec<usize> = match std::env::args().nth(1) {
        Some(n) => vec![n.parse().expect("n must be an integer")],
        None => vec![2, 3, 4],
    };
    for n in ns {
        let start = Instant::now();
        let session = elaborate::<Rational>(&fk(n), None)?;
        let a = &session.algebra;
        println!(
            "FK{n}: hilbert {:?}, total {} ({:.2?})",
            a.hilbert(),
            a.total_dim(),
            start.elapsed()
        );
    }
    Ok(())
}
