//! The Yetter-Drinfeld module of transpositions over S3: its braiding,
//! the braid equation and the primitive quadratic relations of FK3.

use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::Rational;
use braidhopf::linalg::SparseVec;
use braidhopf::word::{is_primitive, FreeElement};

fn main() -> braidhopf::Result<()> {
    let session = elaborate::<Rational>(&fk(3), None)?;
    let v = session.module();
    let labels = v.labels();
    let d = v.dim();
    println!("V = span{labels:?} over S3, YD condition: {}", v.check_yd().is_none());

    for a in 0..d {
        for b in 0..d {
            let c = v.braid(&SparseVec::unit(a), v, &SparseVec::unit(b))?;
            let (k, s) = c.iter().next().expect("braiding is monomial here");
            println!(
                "c({} (x) {}) = {s} {} (x) {}",
                labels[a],
                labels[b],
                labels[k / d],
                labels[k % d]
            );
        }
    }
    println!("braid equation: {}", v.check_braid_equation().is_none());

    for r in session.algebra.relations() {
        println!("relation {} primitive: {}", r.render(labels), is_primitive(v, r));
    }
    let sq = FreeElement::letter(0).mul(&FreeElement::letter(1));
    println!("{} primitive: {}", sq.render(labels), is_primitive(v, &sq));
    Ok(())
}
