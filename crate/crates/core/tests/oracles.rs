//! Values checked against independent computations: Hilbert series by row
//! reduction over raw free words, and hand-computed coproducts and
//! antipodes in the tensor algebra.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use common::oracle::dense_hilbert;

use braidhopf::algebra::GradedAlgebra;
use braidhopf::dsl::{elaborate, fk};
use braidhopf::field::{Field, Rational};
use braidhopf::word::{is_primitive, FreeElement, Word};

#[test]
fn hilbert_series_agree_with_raw_word_reduction() {
    for (n, max) in [(2, 4), (3, 6), (4, 4)] {
        let lib = elaborate::<Rational>(&fk(n), Some(max)).unwrap().algebra.hilbert();
        for p in [1_000_003, 998_244_353] {
            assert_eq!(dense_hilbert(n, max, p), lib, "FK{n} mod {p}");
        }
    }
}

#[test]
fn fk_dimensions() {
    let a = |n| elaborate::<Rational>(&fk(n), None).unwrap().algebra;
    assert_eq!(a(2).hilbert(), vec![1, 1, 0, 0, 0]);
    assert_eq!(a(3).hilbert(), vec![1, 3, 4, 3, 1, 0, 0]);
    let fk4 = a(4);
    let h = fk4.hilbert();
    assert_eq!(h.len(), 14);
    assert_eq!(fk4.total_dim(), 576);
    assert_eq!(h[12], 1);
    assert_eq!(h[13], 0);
    assert_eq!(h, vec![1, 6, 19, 42, 71, 96, 106, 96, 71, 42, 19, 6, 1, 0]);
}

fn free_fk3(max: usize) -> Arc<GradedAlgebra<Rational>> {
    let s = elaborate::<Rational>(&fk(3), None).unwrap();
    Arc::new(GradedAlgebra::free(s.module().clone(), max).unwrap())
}

fn word(letters: &[usize]) -> Word {
    letters.iter().fold(Word::unit(), |w, &l| w.concat(&Word::letter(l)))
}

#[test]
fn free_algebra_on_two_letters() {
    use braidhopf::group::FiniteGroup;
    use braidhopf::linalg::SparseMatrix;
    use braidhopf::yd::YdModule;
    let g = FiniteGroup::trivial();
    let m = YdModule::<Rational>::from_generator_action(
        g.clone(),
        vec!["x".into(), "y".into()],
        vec![g.identity(), g.identity()],
        Vec::<SparseMatrix<Rational>>::new(),
    )
    .unwrap();
    let a = GradedAlgebra::free(m, 3).unwrap();
    assert_eq!(a.hilbert(), vec![1, 2, 4, 8]);
}

#[test]
fn coproduct_of_v12_v13_in_tensor_algebra() {
    // Letters: v12 = 0, v13 = 1, v23 = 2.
    let t = free_fk3(2);
    let x = FreeElement::word(word(&[0, 1]));
    let delta = t.coproduct(&x).unwrap();
    let one = Rational::one();
    let expected: BTreeMap<(Word, Word), Rational> = [
        ((Word::unit(), word(&[0, 1])), one.clone()),
        ((word(&[2]), word(&[0])), one.clone()),
        ((word(&[0]), word(&[1])), one.clone()),
        ((word(&[0, 1]), Word::unit()), one),
    ]
    .into_iter()
    .collect();
    assert_eq!(delta, expected);
}

#[test]
fn antipode_in_tensor_algebra() {
    let t = free_fk3(2);
    let s = t.antipode(&FreeElement::word(word(&[0, 1]))).unwrap();
    assert_eq!(s, FreeElement::word(word(&[2, 0])));
    let v = t.antipode(&FreeElement::letter(1)).unwrap();
    assert_eq!(v, FreeElement::letter(1).scale(&Rational::from_i64(-1)));
}

#[test]
fn primitivity() {
    let s = elaborate::<Rational>(&fk(3), None).unwrap();
    let m = s.module();
    let sq = FreeElement::word(word(&[0, 0]));
    assert!(is_primitive(m, &FreeElement::letter(0)));
    assert!(is_primitive(m, &sq));
    assert!(!is_primitive(m, &FreeElement::word(word(&[0, 1]))));
}

#[test]
fn fk3_relation_products_vanish() {
    let s = elaborate::<Rational>(&fk(3), None).unwrap();
    let a = &s.algebra;
    let v12 = FreeElement::letter(0);
    assert!(a.multiply(&v12, &v12).unwrap().is_zero());
}
