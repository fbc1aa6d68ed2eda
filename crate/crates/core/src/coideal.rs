//! Left coideal subalgebras `K` of a graded quotient `A`, the left ideal
//! `K+A` and the quotient coalgebra `A/K+A`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GradedAlgebra, Homogeneous};
use crate::field::Field;
use crate::linalg::{Accumulator, PivotRule, SparseMatrix, SparseVec, Subspace};
use crate::tensor::{Layout2, Layout3};
use crate::word::FreeElement;
use crate::{Error, Result};

/// An element of `K` whose coproduct leaves `A (x) K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoidealWitness {
    pub element: String,
    pub degree: usize,
    /// A tensor term `a (x) b` of the coproduct whose right factor is not in `K`.
    pub escaping: String,
}

/// Subalgebra of `A` generated by N- and G-homogeneous elements.
#[derive(Debug)]
pub struct CoidealSubalgebra<F> {
    algebra: Arc<GradedAlgebra<F>>,
    generators: Vec<Homogeneous<F>>,
    spaces: Vec<Subspace<F>>,
    /// G-degree of each echelon basis vector, per degree.
    gdeg: Vec<Vec<usize>>,
}

fn g_degree_of<F: Field>(alg: &GradedAlgebra<F>, n: usize, v: &SparseVec<F>) -> Option<usize> {
    let mut it = v.indices().map(|k| alg.g_degree(n, k));
    let g = it.next()?;
    it.all(|h| h == g).then_some(g)
}

impl<F: Field> CoidealSubalgebra<F> {
    /// `K_n = sum_d span(gens_d) K_{n-d}`, which is the subalgebra generated
    /// by `gens` since every product of generators factors as `g * rest`.
    pub fn generate(algebra: Arc<GradedAlgebra<F>>, gens: &[FreeElement<F>]) -> Result<Self> {
        let labels = algebra.module().labels().to_vec();
        let mut generators = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let h = match g.degree() {
                Some(0) | None => {
                    return Err(Error::NotHomogeneous(format!(
                        "generator {} must be homogeneous of positive degree",
                        g.render(&labels)
                    )))
                }
                Some(n) if n > algebra.max_degree() => continue,
                Some(_) => algebra.to_homogeneous(g)?,
            };
            if h.is_zero() {
                continue;
            }
            if g_degree_of(&algebra, h.degree, &h.coords).is_none() {
                return Err(Error::NotHomogeneous(format!(
                    "generator {} is not G-homogeneous",
                    g.render(&labels)
                )));
            }
            generators.push(h);
        }
        let max = algebra.max_degree();
        let mut spaces: Vec<Subspace<F>> = vec![Subspace::full(1)];
        for n in 1..=max {
            let mut vecs = Vec::new();
            for g in generators.iter().filter(|g| g.degree <= n) {
                for b in spaces[n - g.degree].basis() {
                    vecs.push(algebra.multiply_vec(g.degree, &g.coords, n - g.degree, b));
                }
            }
            spaces.push(Subspace::span(algebra.dim(n), vecs, PivotRule::Highest));
        }
        let gdeg = spaces
            .iter()
            .enumerate()
            .map(|(n, s)| {
                s.basis()
                    .iter()
                    .map(|b| g_degree_of(&algebra, n, b).expect("generated by homogeneous elements"))
                    .collect()
            })
            .collect();
        Ok(CoidealSubalgebra {
            algebra,
            generators,
            spaces,
            gdeg,
        })
    }

    /// The subalgebra `k1`.
    pub fn trivial(algebra: Arc<GradedAlgebra<F>>) -> Self {
        Self::generate(algebra, &[]).expect("no generators")
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Homogeneous<F>] {
        &self.generators
    }

    pub fn space(&self, n: usize) -> &Subspace<F> {
        &self.spaces[n]
    }

    pub fn basis(&self, n: usize) -> &[SparseVec<F>] {
        self.spaces[n].basis()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces.get(n).map_or(0, Subspace::dim)
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn g_degree(&self, n: usize, r: usize) -> usize {
        self.gdeg[n][r]
    }

    /// Coordinates of a member of `A_n` on the basis of `K_n`.
    pub fn coordinates(&self, n: usize, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        self.spaces[n]
            .coordinates(v)
            .map(|c| SparseVec::from_dense(&c))
    }

    /// Degreewise test of `Delta(K_n) in sum A_i (x) K_{n-i}`.
    pub fn check_left_coideal(&self) -> Option<CoidealWitness> {
        let alg = &*self.algebra;
        for n in 1..self.spaces.len() {
            let lay = alg.layout2(n);
            for b in self.basis(n) {
                let delta = alg.coproduct_vec(&Homogeneous::new(n, b.clone()));
                for (i, p, right) in split_rows(&lay, &delta) {
                    if !self.spaces[n - i].contains(&right) {
                        let left = Homogeneous::new(i, SparseVec::unit(p));
                        return Some(CoidealWitness {
                            element: alg.render(&Homogeneous::new(n, b.clone())),
                            degree: n,
                            escaping: format!(
                                "({}) (x) ({})",
                                alg.render(&left),
                                alg.render(&Homogeneous::new(n - i, right))
                            ),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn require_left_coideal(&self) -> Result<()> {
        match self.check_left_coideal() {
            None => Ok(()),
            Some(w) => Err(Error::CoidealViolation {
                witness: w.element,
                degree: w.degree,
            }),
        }
    }

    /// `Delta(k)` for the basis vector `r` of `K_n`, as terms
    /// `(s, p, coords)`: the left factor is normal word `p` of `A_s`, the right
    /// factor has coordinates `coords` on the basis of `K_{n-s}`.
    pub fn coproduct_in_k(&self, n: usize, r: usize) -> Result<Vec<(usize, usize, SparseVec<F>)>> {
        let alg = &*self.algebra;
        let lay = alg.layout2(n);
        let delta = alg.coproduct_vec(&Homogeneous::new(n, self.basis(n)[r].clone()));
        let mut out = Vec::new();
        for (s, p, right) in split_rows(&lay, &delta) {
            let coords = self.coordinates(n - s, &right).ok_or_else(|| Error::CoidealViolation {
                witness: alg.render(&Homogeneous::new(n, self.basis(n)[r].clone())),
                degree: n,
            })?;
            out.push((s, p, coords));
        }
        Ok(out)
    }
}

/// Groups a flat `(A (x) B)_n` vector by left basis vector: yields
/// `(i, p, right)` with `right` in `B_{n-i}`.
pub(crate) fn split_rows<F: Field>(
    lay: &Layout2,
    v: &SparseVec<F>,
) -> Vec<(usize, usize, SparseVec<F>)> {
    let mut out: Vec<(usize, usize, Vec<(usize, F)>)> = Vec::new();
    for (idx, c) in v.iter() {
        let (i, p, q) = lay.decode(idx);
        match out.last_mut() {
            Some((li, lp, entries)) if *li == i && *lp == p => entries.push((q, c.clone())),
            _ => out.push((i, p, vec![(q, c.clone())])),
        }
    }
    out.into_iter()
        .map(|(i, p, e)| (i, p, SparseVec::from_pairs(e)))
        .collect()
}

/// `A/K+A` with its induced coalgebra structure.
#[derive(Debug)]
pub struct QuotientCoalgebra<F> {
    algebra: Arc<GradedAlgebra<F>>,
    k_dims: Vec<usize>,
    kplus: Vec<Subspace<F>>,
    /// Normal words of `A_n` that survive in the quotient.
    words: Vec<Vec<usize>>,
    /// `pi_n: A_n -> Abar_n`.
    projection: Vec<SparseMatrix<F>>,
    /// `Abar_n -> sum Abar_i (x) Abar_{n-i}`.
    coproduct: Vec<SparseMatrix<F>>,
    gdeg: Vec<Vec<usize>>,
}

impl<F: Field> QuotientCoalgebra<F> {
    /// Builds `A/K+A`. Fails with [`Error::CoidealViolation`] when `K` is
    /// not a left coideal, because then the coproduct does not descend.
    pub fn new(k: &CoidealSubalgebra<F>) -> Result<Self> {
        k.require_left_coideal()?;
        let alg = k.algebra().clone();
        let max = alg.max_degree();
        let mut kplus = Vec::with_capacity(max + 1);
        let mut words = Vec::with_capacity(max + 1);
        let mut projection = Vec::with_capacity(max + 1);
        let mut gdeg = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut vecs = Vec::new();
            for i in 1..=n {
                for b in k.basis(i) {
                    for q in 0..alg.dim(n - i) {
                        vecs.push(alg.multiply_vec(i, b, n - i, &SparseVec::unit(q)));
                    }
                }
            }
            let space = Subspace::span(alg.dim(n), vecs, PivotRule::Highest);
            let mut is_pivot = vec![false; alg.dim(n)];
            for &p in space.pivots() {
                is_pivot[p] = true;
            }
            let kept: Vec<usize> = (0..alg.dim(n)).filter(|&c| !is_pivot[c]).collect();
            let mut position = vec![usize::MAX; alg.dim(n)];
            for (j, &c) in kept.iter().enumerate() {
                position[c] = j;
            }
            let rows = (0..alg.dim(n))
                .map(|c| space.reduce(&SparseVec::unit(c)).map_indices(|j| position[j]))
                .collect();
            projection.push(SparseMatrix::from_rows(kept.len(), rows));
            gdeg.push(kept.iter().map(|&c| alg.g_degree(n, c)).collect());
            words.push(kept);
            kplus.push(space);
        }
        let mut q = QuotientCoalgebra {
            algebra: alg,
            k_dims: k.hilbert(),
            kplus,
            words,
            projection,
            coproduct: Vec::new(),
            gdeg,
        };
        q.coproduct = (0..=max).map(|n| q.induced_coproduct(n)).collect();
        q.check_projection_is_coalgebra_map()?;
        Ok(q)
    }

    fn induced_coproduct(&self, n: usize) -> SparseMatrix<F> {
        let alg = &*self.algebra;
        let lay = self.bar_layout(n);
        let rows = self.words[n]
            .iter()
            .map(|&c| self.project_pair(n, &alg.coproduct_vec(&Homogeneous::new(n, SparseVec::unit(c)))))
            .collect();
        SparseMatrix::from_rows(lay.dim(), rows)
    }

    /// `(pi (x) pi)` on a flat `(A (x) A)_n` vector.
    pub fn project_pair(&self, n: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let src = self.algebra.layout2(n);
        let dst = self.bar_layout(n);
        let mut acc = Accumulator::new();
        for (idx, c) in v.iter() {
            let (i, p, q) = src.decode(idx);
            let a = self.projection[i].row(p);
            let b = self.projection[n - i].row(q);
            for (x, u) in a.iter() {
                for (y, w) in b.iter() {
                    acc.add(dst.index(i, x, y), &u.mul(w).mul(c));
                }
            }
        }
        acc.finish()
    }

    /// `(id (x) pi)` on a flat `(A (x) A)_n` vector, landing in `(A (x) Abar)_n`.
    pub fn project_right(&self, n: usize, v: &SparseVec<F>) -> SparseVec<F> {
        let src = self.algebra.layout2(n);
        let dst = self.mixed_layout(n);
        let mut acc = Accumulator::new();
        for (idx, c) in v.iter() {
            let (i, p, q) = src.decode(idx);
            for (y, w) in self.projection[n - i].row(q).iter() {
                acc.add(dst.index(i, p, y), &w.mul(c));
            }
        }
        acc.finish()
    }

    fn check_projection_is_coalgebra_map(&self) -> Result<()> {
        let alg = &*self.algebra;
        for n in 0..=alg.max_degree() {
            for c in 0..alg.dim(n) {
                let lhs = self.project_pair(n, &alg.coproduct_vec(&Homogeneous::new(n, SparseVec::unit(c))));
                let rhs = self.coproduct[n].apply(self.projection[n].row(c));
                if lhs != rhs {
                    return Err(Error::CoidealViolation {
                        witness: alg.render(&Homogeneous::new(n, SparseVec::unit(c))),
                        degree: n,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.algebra.max_degree()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.words.get(n).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.dims()
    }

    pub fn k_dims(&self) -> &[usize] {
        &self.k_dims
    }

    /// `K+A` in degree `n`.
    pub fn kplus_a(&self, n: usize) -> &Subspace<F> {
        &self.kplus[n]
    }

    /// Normal word of `A_n` representing basis vector `j` of `Abar_n`.
    pub fn lift_word(&self, n: usize, j: usize) -> usize {
        self.words[n][j]
    }

    pub fn projection(&self, n: usize) -> &SparseMatrix<F> {
        &self.projection[n]
    }

    pub fn project(&self, n: usize, a: &SparseVec<F>) -> SparseVec<F> {
        self.projection[n].apply(a)
    }

    pub fn coproduct_matrix(&self, n: usize) -> &SparseMatrix<F> {
        &self.coproduct[n]
    }

    pub fn g_degree(&self, n: usize, j: usize) -> usize {
        self.gdeg[n][j]
    }

    pub fn counit(&self, n: usize, x: &SparseVec<F>) -> F {
        if n == 0 {
            x.get(0)
        } else {
            F::zero()
        }
    }

    /// Layout of `(Abar (x) Abar)_n`.
    pub fn bar_layout(&self, n: usize) -> Layout2 {
        let d = self.dims();
        Layout2::new(n, &d, &d)
    }

    /// Layout of `(A (x) Abar)_n`.
    pub fn mixed_layout(&self, n: usize) -> Layout2 {
        Layout2::new(n, &self.algebra.dims(), &self.dims())
    }

    /// Right coaction `A_n -> (A (x) Abar)_n`, `a -> a_(1) (x) pi(a_(2))`.
    pub fn coaction(&self, n: usize, a: &SparseVec<F>) -> SparseVec<F> {
        let delta = self.algebra.coproduct_matrix(n).apply(a);
        self.project_right(n, &delta)
    }

    /// Renders a basis vector of `Abar_n` by its representative word.
    pub fn render(&self, n: usize, x: &SparseVec<F>) -> String {
        let lifted = x.map_indices(|j| self.words[n][j]);
        self.algebra.render(&Homogeneous::new(n, lifted))
    }

    /// Checks `(id (x) Dbar) delta = (delta (x) id) delta` on every normal
    /// word; returns the first failing word.
    pub fn check_coaction_coassociative(&self) -> Option<(usize, usize)> {
        let alg = &*self.algebra;
        let a_dims = alg.dims();
        let b_dims = self.dims();
        for n in 0..=alg.max_degree() {
            let l3 = Layout3::new(n, &a_dims, &b_dims, &b_dims);
            let mixed = self.mixed_layout(n);
            for c in 0..alg.dim(n) {
                let delta = self.coaction(n, &SparseVec::unit(c));
                let mut lhs = Accumulator::new();
                let mut rhs = Accumulator::new();
                for (idx, x) in delta.iter() {
                    let (i, p, q) = mixed.decode(idx);
                    // (id (x) Dbar)
                    let bl = self.bar_layout(n - i);
                    for (t, y) in self.coproduct[n - i].row(q).iter() {
                        let (j, u, w) = bl.decode(t);
                        lhs.add(l3.index(i, j, p, u, w), &x.mul(y));
                    }
                    // (delta (x) id)
                    let ml = self.mixed_layout(i);
                    for (t, y) in self.coaction(i, &SparseVec::unit(p)).iter() {
                        let (k, a, b) = ml.decode(t);
                        rhs.add(l3.index(k, i - k, a, b, q), &x.mul(y));
                    }
                }
                if lhs.finish() != rhs.finish() {
                    return Some((n, c));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;

    fn fk3() -> Arc<GradedAlgebra<Rational>> {
        elaborate::<Rational>(&fk(3), None).unwrap().algebra
    }

    fn letter(alg: &GradedAlgebra<Rational>, l: &str) -> FreeElement<Rational> {
        FreeElement::letter(alg.module().label_index(l).unwrap())
    }

    #[test]
    fn generated_dimensions() {
        let a = fk3();
        let k = CoidealSubalgebra::generate(a.clone(), &[letter(&a, "v12")]).unwrap();
        assert_eq!(k.hilbert(), vec![1, 1, 0, 0, 0, 0, 0]);
        let all: Vec<_> = ["v12", "v13", "v23"].iter().map(|l| letter(&a, l)).collect();
        let k = CoidealSubalgebra::generate(a.clone(), &all).unwrap();
        assert_eq!(k.hilbert(), vec![1, 3, 4, 3, 1, 0, 0]);
        let k = CoidealSubalgebra::trivial(a);
        assert_eq!(k.hilbert(), vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn quotient_dimensions() {
        let a = fk3();
        let k = CoidealSubalgebra::generate(a.clone(), &[letter(&a, "v12")]).unwrap();
        let q = QuotientCoalgebra::new(&k).unwrap();
        assert_eq!(q.hilbert(), vec![1, 2, 2, 1, 0, 0, 0]);
        assert_eq!(q.check_coaction_coassociative(), None);

        let all: Vec<_> = ["v12", "v13", "v23"].iter().map(|l| letter(&a, l)).collect();
        let k = CoidealSubalgebra::generate(a.clone(), &all).unwrap();
        assert_eq!(QuotientCoalgebra::new(&k).unwrap().hilbert(), vec![1, 0, 0, 0, 0, 0, 0]);

        let q = QuotientCoalgebra::new(&CoidealSubalgebra::trivial(a.clone())).unwrap();
        assert_eq!(q.hilbert(), a.hilbert());
        assert_eq!(q.projection(2), &SparseMatrix::identity(4));
    }

    #[test]
    fn non_primitive_generator_in_free_algebra() {
        let a = fk3();
        let free = Arc::new(GradedAlgebra::free(a.module().clone(), 3).unwrap());
        let x = letter(&a, "v12").mul(&letter(&a, "v13"));
        let k = CoidealSubalgebra::generate(free, &[x]).unwrap();
        let w = k.check_left_coideal().expect("not a coideal");
        assert_eq!(w.element, "v12*v13");
        assert_eq!(w.degree, 2);
        assert!(QuotientCoalgebra::new(&k).is_err());
    }
}
