use braidhopf::field::{set_modulus, Field, Fp, Rational};
use braidhopf::linalg::{kernel, left_kernel, rref, solve_affine, SparseMatrix, SparseVec};
use proptest::prelude::*;

const P: u64 = 32003;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn fp() -> impl Strategy<Value = Fp> {
    set_modulus(P).unwrap();
    (0..P as i64).prop_map(Fp::from_i64)
}

fn axioms<F: Field>(a: &F, b: &F, c: &F) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&F::zero()), a.clone());
    assert_eq!(a.mul(&F::one()), a.clone());
    assert!(a.add(&a.neg()).is_zero());
    assert_eq!(a.sub(b), a.add(&b.neg()));
    match a.inv() {
        Some(i) => assert!(a.mul(&i).is_one()),
        None => assert!(a.is_zero()),
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
}

fn to_matrix<F: Field>(rows: &[Vec<i64>]) -> SparseMatrix<F> {
    let dense: Vec<Vec<F>> = rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect();
    SparseMatrix::from_dense(&dense)
}

fn linalg_laws<F: Field>(rows: &[Vec<i64>]) {
    let m = to_matrix::<F>(rows);
    let (r, pivots) = rref(&m);
    let rank = m.rank();
    assert_eq!(pivots.len(), rank);
    assert_eq!(rank, m.transpose().rank());
    // Rank-nullity on both sides.
    let k = kernel(&m);
    assert_eq!(k.dim() + rank, m.ncols());
    for v in k.basis() {
        assert!(m.mul_vec(v).is_zero());
    }
    let lk = left_kernel(&m);
    assert_eq!(lk.dim() + rank, m.nrows());
    for v in lk.basis() {
        assert!(m.apply(v).is_zero());
    }
    // rref is idempotent and spans the same rows.
    assert_eq!(rref(&r).0, r);
    assert_eq!(r.rank(), rank);
    // m x = m x0 is solvable and the solution differs from x0 by the kernel.
    let x0 = SparseVec::from_pairs((0..m.ncols()).map(|i| (i, F::from_i64(i as i64 + 1))));
    let b = m.mul_vec(&x0);
    let (x, ker) = solve_affine(&m, &b).expect("consistent");
    assert_eq!(m.mul_vec(&x), b);
    assert!(ker.contains(&x.sub(&x0)));
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn prime_field_axioms(a in fp(), b in fp(), c in fp()) {
        axioms(&a, &b, &c);
    }

    #[test]
    fn rational_linalg(rows in small_matrix()) {
        linalg_laws::<Rational>(&rows);
    }

    #[test]
    fn prime_field_linalg(rows in small_matrix()) {
        set_modulus(P).unwrap();
        linalg_laws::<Fp>(&rows);
    }

    #[test]
    fn inconsistent_systems_are_rejected(rows in small_matrix()) {
        let m = to_matrix::<Rational>(&rows);
        prop_assume!(m.rank() < m.nrows());
        // A vector outside the column space: pair it against a left kernel vector.
        let y = left_kernel(&m).basis()[0].clone();
        let b = y.clone();
        prop_assert!(!b.dot(&y).is_zero());
        prop_assert!(solve_affine(&m, &b).is_none());
    }
}
