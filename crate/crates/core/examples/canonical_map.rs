//! The canonical map can(x (x) y) = x y1 (x) pi(y2), its kernel, and the
//! isomorphism Phi(x (x) a) = x a1 (x) a2 of A (x) A with its inverse.

use std::sync::Arc;

use braidhopf::canonical::{can, check_canonical, phi, phi_inverse};
use braidhopf::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::word::FreeElement;

fn main() -> braidhopf::Result<()> {
    let session = elaborate::<Rational>(&fk(3), None)?;
    let alg = session.algebra.clone();
    let k = Arc::new(CoidealSubalgebra::generate(alg.clone(), &[FreeElement::letter(0)])?);
    let q = QuotientCoalgebra::new(&k)?;

    println!("degree  dim(A(x)A)  rank Phi  dim(A(x)Abar)  rank can");
    for n in 0..=alg.max_degree() {
        let p = phi(&alg, n);
        let round = p.mul(&phi_inverse(&alg, n))?;
        assert_eq!(round, braidhopf::linalg::SparseMatrix::identity(p.nrows()));
        let c = can(&q, n);
        println!("{n:>6}  {:>10}  {:>8}  {:>13}  {:>8}", p.nrows(), p.rank(), c.ncols(), c.rank());
    }

    let r = check_canonical(&k)?;
    for d in &r.kernel {
        println!(
            "degree {}: dim ker(can) {} = dim im(x (x) ka - xk (x) a) {}: {}",
            d.degree, d.dim_kernel, d.dim_image, d.equal
        );
    }
    println!("Phi^-1 Phi = id: {}, Psi square commutes: {}", r.phi_roundtrip, r.psi);
    Ok(())
}
