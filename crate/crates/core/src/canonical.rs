//! The maps `Phi`, `Phi^-1`, `can` and `Psi` on `A (x) A` and
//! `A (x) K (x) A`, and the exactness checks relating them.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use crate::field::Field;
use crate::linalg::{left_kernel, Accumulator, PivotRule, SparseMatrix, SparseVec, Subspace};
use crate::tensor::{Layout2, Layout3};
use crate::Result;

/// `Phi(x (x) a) = x a_(1) (x) a_(2)` on `(A (x) A)_n`.
pub fn phi<F: Field>(alg: &GradedAlgebra<F>, n: usize) -> SparseMatrix<F> {
    phi_with(alg, n, false)
}

/// `Phi^-1(x (x) a) = x S(a_(1)) (x) a_(2)` on `(A (x) A)_n`.
pub fn phi_inverse<F: Field>(alg: &GradedAlgebra<F>, n: usize) -> SparseMatrix<F> {
    phi_with(alg, n, true)
}

fn phi_with<F: Field>(alg: &GradedAlgebra<F>, n: usize, inverse: bool) -> SparseMatrix<F> {
    let lay = alg.layout2(n);
    let rows = (0..lay.dim())
        .map(|idx| {
            let (i, p, q) = lay.decode(idx);
            let inner = alg.layout2(n - i);
            let mut acc = Accumulator::new();
            for (t, c) in alg.coproduct_matrix(n - i).row(q).iter() {
                let (s, u, w) = inner.decode(t);
                let a1 = if inverse {
                    alg.antipode_matrix(s).row(u).clone()
                } else {
                    SparseVec::unit(u)
                };
                for (y, d) in alg.multiply_vec(i, &SparseVec::unit(p), s, &a1).iter() {
                    acc.add(lay.index(i + s, y, w), &d.mul(c));
                }
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_rows(lay.dim(), rows)
}

/// First degree where `Phi^-1 Phi` or `Phi Phi^-1` is not the identity.
pub fn check_phi_roundtrip<F: Field>(alg: &GradedAlgebra<F>) -> Option<usize> {
    (0..=alg.max_degree()).into_par_iter().find_first(|&n| {
        let (f, g) = (phi(alg, n), phi_inverse(alg, n));
        let id = SparseMatrix::identity(f.nrows());
        f.mul(&g).map_or(true, |m| m != id) || g.mul(&f).map_or(true, |m| m != id)
    })
}

/// `can(x (x) y) = x y_(1) (x) pi(y_(2))`: `(A (x) A)_n -> (A (x) Abar)_n`.
pub fn can<F: Field>(q: &QuotientCoalgebra<F>, n: usize) -> SparseMatrix<F> {
    let alg = q.algebra();
    let lay = alg.layout2(n);
    let out = q.mixed_layout(n);
    let rows = (0..lay.dim())
        .map(|idx| {
            let (i, p, y) = lay.decode(idx);
            let inner = q.mixed_layout(n - i);
            let mut acc = Accumulator::new();
            for (t, c) in q.coaction(n - i, &SparseVec::unit(y)).iter() {
                let (s, u, w) = inner.decode(t);
                for (a, d) in alg.multiply_vec(i, &SparseVec::unit(p), s, &SparseVec::unit(u)).iter() {
                    acc.add(out.index(i + s, a, w), &d.mul(c));
                }
            }
            acc.finish()
        })
        .collect();
    SparseMatrix::from_rows(out.dim(), rows)
}

/// `ker(can)` against `im(id (x) mu - mu (x) id)` in one degree.
#[derive(Clone, Debug, Serialize)]
pub struct KernelDegree {
    pub degree: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub equal: bool,
    pub can_surjective: bool,
}

fn k_layout<F: Field>(k: &CoidealSubalgebra<F>, n: usize) -> Layout3 {
    let a = k.algebra().dims();
    Layout3::new(n, &a, &k.hilbert(), &a)
}

/// `x (x) k a - x k (x) a` for the basis triple `(x_p, k_r, a_t)`.
fn relation_image<F: Field>(
    k: &CoidealSubalgebra<F>,
    n: usize,
    (i, j, p, r, t): (usize, usize, usize, usize, usize),
) -> SparseVec<F> {
    let alg = k.algebra();
    let lay = alg.layout2(n);
    let l = n - i - j;
    let kb = &k.basis(j)[r];
    let mut acc = Accumulator::new();
    for (y, c) in alg.multiply_vec(j, kb, l, &SparseVec::unit(t)).iter() {
        acc.add(lay.index(i, p, y), c);
    }
    for (y, c) in alg.multiply_vec(i, &SparseVec::unit(p), j, kb).iter() {
        acc.add(lay.index(i + j, y, t), &c.neg());
    }
    acc.finish()
}

pub fn kernel_check<F: Field>(k: &CoidealSubalgebra<F>, q: &QuotientCoalgebra<F>) -> Vec<KernelDegree> {
    let alg = k.algebra();
    (0..=alg.max_degree())
        .into_par_iter()
        .map(|n| {
            let c = can(q, n);
            let ker = left_kernel(&c);
            let l3 = k_layout(k, n);
            let image = Subspace::span(
                c.nrows(),
                (0..l3.dim()).map(|idx| relation_image(k, n, l3.decode(idx))),
                PivotRule::Lowest,
            );
            KernelDegree {
                degree: n,
                dim_kernel: ker.dim(),
                dim_image: image.dim(),
                equal: ker.contains_subspace(&image) && image.contains_subspace(&ker),
                can_surjective: c.rank() == q.mixed_layout(n).dim(),
            }
        })
        .collect()
}

/// Checks `Phi_A (id (x) mu - mu (x) id) = (id (x) mu - id (x) eps (x) id) Psi`
/// on every basis triple of `A (x) K (x) A`, where
/// `Psi(x (x) k (x) a) = x k_(1) (k_(2)_(-1) . a_(1)) (x) k_(2)_(0) (x) a_(2)`.
/// Returns the first failing triple.
pub fn psi_check<F: Field>(k: &CoidealSubalgebra<F>) -> Result<Option<String>> {
    let alg = k.algebra();
    let results: Vec<Result<Option<String>>> = (0..=alg.max_degree())
        .into_par_iter()
        .map(|n| psi_check_degree(k, n))
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn psi_check_degree<F: Field>(k: &CoidealSubalgebra<F>, n: usize) -> Result<Option<String>> {
    let alg = k.algebra();
    let lay = alg.layout2(n);
    let phi_n = phi(alg, n);
    let l3 = k_layout(k, n);
    for idx in 0..l3.dim() {
        let (i, j, p, r, t) = l3.decode(idx);
        let l = n - i - j;
        let lhs = phi_n.apply(&relation_image(k, n, (i, j, p, r, t)));

        let a_lay = alg.layout2(l);
        let delta_a = alg.coproduct_matrix(l).row(t);
        let mut rhs = Accumulator::new();
        for (s, b, coords) in k.coproduct_in_k(j, r)? {
            let xb = alg.multiply_vec(i, &SparseVec::unit(p), s, &SparseVec::unit(b));
            let j2 = j - s;
            for (r2, c) in coords.iter() {
                let g = k.g_degree(j2, r2);
                let k2 = &k.basis(j2)[r2];
                for (e, d) in delta_a.iter() {
                    let (du, u, w) = a_lay.decode(e);
                    let coef = c.mul(d);
                    let gu = alg.action(du, g).row(u);
                    let left = alg.multiply_vec(i + s, &xb, du, gu);
                    let right = alg.multiply_vec(j2, k2, l - du, &SparseVec::unit(w));
                    for (y, cy) in left.iter() {
                        for (z, cz) in right.iter() {
                            rhs.add(lay.index(i + s + du, y, z), &coef.mul(cy).mul(cz));
                        }
                    }
                    if j2 == 0 {
                        // eps(k_(2)) = coefficient on the unit.
                        let eps = k2.get(0);
                        let plain = alg.multiply_vec(i + s, &xb, du, &SparseVec::unit(u));
                        for (y, cy) in plain.iter() {
                            rhs.add(lay.index(i + s + du, y, w), &coef.mul(cy).mul(&eps).neg());
                        }
                    }
                }
            }
        }
        if lhs != rhs.finish() {
            let render = |d: usize, v: SparseVec<F>| {
                alg.render(&crate::algebra::Homogeneous::new(d, v))
            };
            return Ok(Some(format!(
                "({}) (x) ({}) (x) ({})",
                render(i, SparseVec::unit(p)),
                render(j, k.basis(j)[r].clone()),
                render(l, SparseVec::unit(t))
            )));
        }
    }
    Ok(None)
}

/// Summary of the `Phi` / `can` / `Psi` checks.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalReport {
    pub degrees_checked: usize,
    pub phi_roundtrip: bool,
    pub kernel: Vec<KernelDegree>,
    pub kernel_equal: bool,
    pub can_surjective: bool,
    pub psi: bool,
    pub psi_witness: Option<String>,
    pub verdict: bool,
}

pub fn check_canonical<F: Field>(k: &Arc<CoidealSubalgebra<F>>) -> Result<CanonicalReport> {
    let q = QuotientCoalgebra::new(k)?;
    let alg = k.algebra();
    let phi_roundtrip = check_phi_roundtrip(alg).is_none();
    let kernel = kernel_check(k, &q);
    let kernel_equal = kernel.iter().all(|d| d.equal);
    let can_surjective = kernel.iter().all(|d| d.can_surjective);
    let psi_witness = psi_check(k)?;
    let psi = psi_witness.is_none();
    Ok(CanonicalReport {
        degrees_checked: alg.max_degree(),
        phi_roundtrip,
        kernel,
        kernel_equal,
        can_surjective,
        psi,
        psi_witness,
        verdict: phi_roundtrip && kernel_equal && can_surjective && psi,
    })
}

/// Position of `x (x) 1bar` in `(A (x) Abar)_n`, for tests and examples.
pub fn mixed_index<F: Field>(q: &QuotientCoalgebra<F>, n: usize, i: usize, p: usize, w: usize) -> usize {
    let lay: Layout2 = q.mixed_layout(n);
    lay.index(i, p, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;
    use crate::word::FreeElement;

    #[test]
    fn fk3_k12() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let k = s.coideal("K12").unwrap();
        let r = check_canonical(k).unwrap();
        assert!(r.verdict, "{r:?}");
    }

    #[test]
    fn can_on_generator() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let k = s.coideal("K12").unwrap();
        let q = QuotientCoalgebra::new(k).unwrap();
        let a = &s.algebra;
        // can(1 (x) v12) = v12 (x) 1bar
        let c = can(&q, 1);
        let src = a.layout2(1).index(0, 0, 0);
        assert_eq!(c.row(src), &SparseVec::unit(mixed_index(&q, 1, 1, 0, 0)));
    }

    #[test]
    fn phi_on_primitive() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let a = &s.algebra;
        let lay = a.layout2(1);
        let f = phi(a, 1);
        let row = f.row(lay.index(0, 0, 1));
        let expected = SparseVec::unit(lay.index(0, 0, 1)).add(&SparseVec::unit(lay.index(1, 1, 0)));
        assert_eq!(row, &expected);
    }

    #[test]
    fn free_algebra() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let free = Arc::new(GradedAlgebra::free(s.module().clone(), 3).unwrap());
        let k = Arc::new(CoidealSubalgebra::generate(free, &[FreeElement::letter(0)]).unwrap());
        assert_eq!(k.hilbert(), vec![1, 1, 1, 1]);
        let r = check_canonical(&k).unwrap();
        assert!(r.verdict, "{r:?}");
    }
}
