//! Graded, G-degree preserving maps out of `Abar`, with and without
//! right `Abar`-colinearity, and the bijection
//! `Hom^C(V, X (x) C) -> Hom(V, X)`, `f -> (id (x) eps) f`,
//! with inverse `phi -> (phi (x) id) delta`, for `V = C = Abar`.

use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::coideal::QuotientCoalgebra;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{left_kernel, Accumulator, SparseMatrix, SparseVec};
use crate::tensor::{Layout2, Layout3};

/// A graded vector space with a G-degree on every basis vector.
#[derive(Clone, Debug)]
pub struct GradedGSpace {
    pub name: String,
    pub g_degrees: Vec<Vec<usize>>,
}

impl GradedGSpace {
    /// The ground field in degree 0, G-degree 1.
    pub fn unit(group: &FiniteGroup) -> Self {
        GradedGSpace {
            name: "k".into(),
            g_degrees: vec![vec![group.identity()]],
        }
    }

    pub fn of_algebra<F: Field>(alg: &GradedAlgebra<F>) -> Self {
        GradedGSpace {
            name: "A".into(),
            g_degrees: (0..=alg.max_degree()).map(|n| alg.g_degrees(n).to_vec()).collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.g_degrees.iter().map(Vec::len).collect()
    }

    fn g(&self, n: usize, p: usize) -> usize {
        self.g_degrees[n][p]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub x: String,
    pub dim_hom: usize,
    pub dim_hom_colinear: usize,
    pub dims_equal: bool,
    /// `(id (x) eps)((phi (x) id) delta) = phi` on the basis of `Hom(V, X)`.
    pub alpha_beta_identity: bool,
    /// `(f (x) id) delta` is colinear for every `f` in the basis of `Hom(V, X)`.
    pub beta_colinear: bool,
    /// `((id (x) eps) f (x) id) delta = f` on the computed basis of `Hom^C`.
    pub beta_alpha_identity: bool,
    pub verdict: bool,
}

/// Unknowns of `Hom(Abar, X)` (`(n, b, x)`) or `Hom(Abar, X (x) C)` (`(n, b, t)`).
struct Unknowns {
    list: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Unknowns {
    fn new(list: Vec<(usize, usize, usize)>) -> Self {
        let index = list.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        Unknowns { list, index }
    }
}

/// The two Hom spaces and the maps between them.
pub struct HomSolver<'a, F> {
    q: &'a QuotientCoalgebra<F>,
    x: &'a GradedGSpace,
    plain: Unknowns,
    colinear: Unknowns,
    /// For `(n, b)`: every `(n', b', w, lambda)` with `lambda b (x) c_w` a term of `Delta(b')`.
    cooccur: HashMap<(usize, usize), Vec<(usize, usize, usize, F)>>,
    block_offsets: HashMap<(usize, usize), usize>,
    columns: usize,
}

impl<'a, F: Field> HomSolver<'a, F> {
    pub fn new(q: &'a QuotientCoalgebra<F>, x: &'a GradedGSpace) -> Self {
        let group = q.algebra().module().group().clone();
        let top = q.max_degree();
        let (xd, cd) = (x.dims(), q.dims());
        let mut plain = Vec::new();
        let mut colinear = Vec::new();
        let mut block_offsets = HashMap::new();
        let mut columns = 0;
        for n in 0..=top {
            let lay = Layout2::new(n, &xd, &cd);
            let l3 = Layout3::new(n, &xd, &cd, &cd);
            for b in 0..q.dim(n) {
                let gb = q.g_degree(n, b);
                for p in 0..xd.get(n).copied().unwrap_or(0) {
                    if x.g(n, p) == gb {
                        plain.push((n, b, p));
                    }
                }
                for t in 0..lay.dim() {
                    let (i, p, c) = lay.decode(t);
                    if group.mul(x.g(i, p), q.g_degree(n - i, c)) == gb {
                        colinear.push((n, b, t));
                    }
                }
                block_offsets.insert((n, b), columns);
                columns += l3.dim();
            }
        }
        let mut cooccur: HashMap<_, Vec<_>> = HashMap::new();
        for n2 in 0..=top {
            let bar = q.bar_layout(n2);
            for b2 in 0..q.dim(n2) {
                for (e, lambda) in q.coproduct_matrix(n2).row(b2).iter() {
                    let (s, u, w) = bar.decode(e);
                    cooccur.entry((s, u)).or_default().push((n2, b2, w, lambda.clone()));
                }
            }
        }
        HomSolver {
            q,
            x,
            plain: Unknowns::new(plain),
            colinear: Unknowns::new(colinear),
            cooccur,
            block_offsets,
            columns,
        }
    }

    pub fn dim_hom(&self) -> usize {
        self.plain.list.len()
    }

    /// Rows indexed by the unknowns of `Hom(Abar, X (x) C)`; a coefficient
    /// vector `y` is colinear iff `y . M = 0`.
    pub fn constraints(&self) -> SparseMatrix<F> {
        let (xd, cd) = (self.x.dims(), self.q.dims());
        let rows = self
            .colinear
            .list
            .iter()
            .map(|&(n, b, t)| {
                let (i, p, c) = Layout2::new(n, &xd, &cd).decode(t);
                let mut acc = Accumulator::new();
                let off = self.block_offsets[&(n, b)];
                let l3 = Layout3::new(n, &xd, &cd, &cd);
                let bar = self.q.bar_layout(n - i);
                for (e, d) in self.q.coproduct_matrix(n - i).row(c).iter() {
                    let (s, c1, c2) = bar.decode(e);
                    acc.add(off + l3.index(i, s, p, c1, c2), d);
                }
                for (n2, b2, w, lambda) in self.cooccur.get(&(n, b)).into_iter().flatten() {
                    let off2 = self.block_offsets[&(*n2, *b2)];
                    let l3 = Layout3::new(*n2, &xd, &cd, &cd);
                    acc.add(off2 + l3.index(i, n - i, p, c, *w), &lambda.neg());
                }
                acc.finish()
            })
            .collect();
        SparseMatrix::from_rows(self.columns, rows)
    }

    /// `f -> (f (x) id) delta`.
    pub fn beta(&self, f: &SparseVec<F>) -> SparseVec<F> {
        let (xd, cd) = (self.x.dims(), self.q.dims());
        let mut acc = Accumulator::new();
        for (u, c) in f.iter() {
            let (n, b, p) = self.plain.list[u];
            for (n2, b2, w, lambda) in self.cooccur.get(&(n, b)).into_iter().flatten() {
                let t = Layout2::new(*n2, &xd, &cd).index(n, p, *w);
                let idx = self.colinear.index[&(*n2, *b2, t)];
                acc.add(idx, &c.mul(lambda));
            }
        }
        acc.finish()
    }

    /// `phi -> (id (x) eps) phi`.
    pub fn alpha(&self, phi: &SparseVec<F>) -> SparseVec<F> {
        let (xd, cd) = (self.x.dims(), self.q.dims());
        let mut acc = Accumulator::new();
        for (u, c) in phi.iter() {
            let (n, b, t) = self.colinear.list[u];
            let (i, p, w) = Layout2::new(n, &xd, &cd).decode(t);
            if i == n {
                let eps = self.q.counit(0, &SparseVec::unit(w));
                acc.add(self.plain.index[&(n, b, p)], &c.mul(&eps));
            }
        }
        acc.finish()
    }

    pub fn report(&self) -> HomReport {
        let m = self.constraints();
        let kernel = left_kernel(&m);
        let dim_hom = self.dim_hom();
        let mut alpha_beta_identity = true;
        let mut beta_colinear = true;
        for u in 0..dim_hom {
            let f = SparseVec::unit(u);
            let phi = self.beta(&f);
            beta_colinear &= m.apply(&phi).is_zero();
            alpha_beta_identity &= self.alpha(&phi) == f;
        }
        let beta_alpha_identity = kernel
            .basis()
            .iter()
            .all(|phi| &self.beta(&self.alpha(phi)) == phi);
        let dims_equal = kernel.dim() == dim_hom;
        HomReport {
            x: self.x.name.clone(),
            dim_hom,
            dim_hom_colinear: kernel.dim(),
            dims_equal,
            alpha_beta_identity,
            beta_colinear,
            beta_alpha_identity,
            verdict: dims_equal && alpha_beta_identity && beta_colinear && beta_alpha_identity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;

    #[test]
    fn fk3_k12() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let q = QuotientCoalgebra::new(s.coideal("K12").unwrap()).unwrap();
        let k = GradedGSpace::unit(&s.group);
        let r = HomSolver::new(&q, &k).report();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.dim_hom, 1);
        let a = GradedGSpace::of_algebra(&s.algebra);
        let r = HomSolver::new(&q, &a).report();
        assert!(r.verdict, "{r:?}");
        assert!(r.dim_hom > 1);
    }
}
