//! Hopf modules in `A`-comodules / `K`-modules over the Yetter-Drinfeld
//! category: the half-braided diagonal action, the compatibility check and
//! greedy free bases over `K`.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GradedAlgebra, Homogeneous};
use crate::coideal::{split_rows, CoidealSubalgebra};
use crate::field::Field;
use crate::linalg::{Accumulator, PivotRule, SparseMatrix, SparseVec, Subspace};
use crate::tensor::{Layout2, Layout3};
use crate::{Error, Result};

/// A graded left `A`-comodule in the Yetter-Drinfeld category, with a
/// basis of G-homogeneous vectors.
#[derive(Clone, Debug)]
pub struct LeftComodule<F> {
    pub name: String,
    pub labels: Vec<Vec<String>>,
    pub gdeg: Vec<Vec<usize>>,
    /// `U_n -> (A (x) U)_n`.
    pub coaction: Vec<SparseMatrix<F>>,
}

impl<F: Field> LeftComodule<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// `A_{<=m}` with the coproduct as coaction.
    pub fn truncated_algebra(alg: &GradedAlgebra<F>, m: usize) -> Self {
        let max = alg.max_degree();
        let dims: Vec<usize> = (0..=max).map(|n| if n <= m { alg.dim(n) } else { 0 }).collect();
        let labels = (0..=max)
            .map(|n| (0..dims[n]).map(|k| word_label(alg, n, k)).collect())
            .collect();
        let gdeg = (0..=max).map(|n| alg.g_degrees(n)[..dims[n]].to_vec()).collect();
        let coaction = (0..=max)
            .map(|n| {
                let lay = Layout2::new(n, &alg.dims(), &dims);
                if n > m {
                    return SparseMatrix::zero(0, lay.dim());
                }
                // Same layout as A (x) A because U_j = A_j for j <= n <= m.
                alg.coproduct_matrix(n).clone()
            })
            .collect();
        LeftComodule {
            name: format!("A<={m}"),
            labels,
            gdeg,
            coaction,
        }
    }

    /// `A_m` with the trivial coaction `u -> 1 (x) u`.
    pub fn trivial_coaction(alg: &GradedAlgebra<F>, m: usize) -> Self {
        let max = alg.max_degree();
        let dims: Vec<usize> = (0..=max).map(|n| if n == m { alg.dim(n) } else { 0 }).collect();
        let labels = (0..=max)
            .map(|n| (0..dims[n]).map(|k| word_label(alg, n, k)).collect())
            .collect();
        let gdeg = (0..=max).map(|n| alg.g_degrees(n)[..dims[n]].to_vec()).collect();
        let coaction = (0..=max)
            .map(|n| {
                let lay = Layout2::new(n, &alg.dims(), &dims);
                let rows = (0..dims[n]).map(|k| SparseVec::unit(lay.index(0, 0, k))).collect();
                SparseMatrix::from_rows(lay.dim(), rows)
            })
            .collect();
        let name = if m == 0 { "k1".to_string() } else { format!("A_{m} (trivial coaction)") };
        LeftComodule {
            name,
            labels,
            gdeg,
            coaction,
        }
    }
}

fn word_label<F: Field>(alg: &GradedAlgebra<F>, n: usize, k: usize) -> String {
    alg.render(&Homogeneous::new(n, SparseVec::unit(k)))
}

fn k_label<F: Field>(k: &CoidealSubalgebra<F>, j: usize, r: usize) -> String {
    k.algebra()
        .render(&Homogeneous::new(j, k.basis(j)[r].clone()))
}

/// A graded object with a left `A`-coaction and a right `K`-action, each
/// given degreewise on G-homogeneous bases.
#[derive(Clone, Debug)]
pub struct HopfModuleData<F> {
    pub name: String,
    algebra: Arc<GradedAlgebra<F>>,
    coideal: Arc<CoidealSubalgebra<F>>,
    labels: Vec<Vec<String>>,
    gdeg: Vec<Vec<usize>>,
    /// `V_n -> (A (x) V)_n`.
    coaction: Vec<SparseMatrix<F>>,
    /// `action[m][j]`: row `p * dim K_j + r` is `v_p . k_r` in `V_{m+j}`.
    action: Vec<Vec<SparseMatrix<F>>>,
}

/// Failure of the Hopf-module law on a basis pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfWitness {
    pub law: String,
    pub element: String,
    pub k: Option<String>,
    pub degree: usize,
}

impl<F: Field> HopfModuleData<F> {
    /// `A` itself: coaction `Delta`, action by right multiplication.
    pub fn of_algebra(k: &Arc<CoidealSubalgebra<F>>) -> Self {
        Self::algebra_with_action(k, false)
    }

    /// `A` with `K` acting through the counit. Not a Hopf module unless
    /// `K = k1`.
    pub fn with_trivial_action(k: &Arc<CoidealSubalgebra<F>>) -> Self {
        Self::algebra_with_action(k, true)
    }

    fn algebra_with_action(k: &Arc<CoidealSubalgebra<F>>, trivial: bool) -> Self {
        let alg = k.algebra().clone();
        let max = alg.max_degree();
        let labels = (0..=max)
            .map(|n| (0..alg.dim(n)).map(|c| word_label(&alg, n, c)).collect())
            .collect();
        let gdeg = (0..=max).map(|n| alg.g_degrees(n).to_vec()).collect();
        let coaction = (0..=max).map(|n| alg.coproduct_matrix(n).clone()).collect();
        let action = (0..=max)
            .map(|m| {
                (0..=max - m)
                    .map(|j| {
                        let rows = (0..alg.dim(m))
                            .flat_map(|p| {
                                let alg = &alg;
                                k.basis(j).iter().map(move |b| {
                                    if trivial {
                                        if j == 0 {
                                            SparseVec::unit(p).scale(&b.get(0))
                                        } else {
                                            SparseVec::zero()
                                        }
                                    } else {
                                        alg.multiply_vec(m, &SparseVec::unit(p), j, b)
                                    }
                                })
                            })
                            .collect();
                        SparseMatrix::from_rows(alg.dim(m + j), rows)
                    })
                    .collect()
            })
            .collect();
        HopfModuleData {
            name: if trivial { "A (trivial K-action)".into() } else { "A".into() },
            algebra: alg,
            coideal: k.clone(),
            labels,
            gdeg,
            coaction,
            action,
        }
    }

    /// `U (x) K` with diagonal G-grading, half-braided diagonal coaction
    /// `u (x) k -> u_(-1) (u_(0)_(-1) . k_(1)) (x) u_(0)_(0) (x) k_(2)` and
    /// `K` acting on the second factor.
    pub fn induced(u: &LeftComodule<F>, k: &Arc<CoidealSubalgebra<F>>) -> Result<Self> {
        let alg = k.algebra().clone();
        let group = alg.module().group().clone();
        let max = alg.max_degree();
        let u_dims = u.dims();
        let k_dims = k.hilbert();
        let lay = |n: usize| Layout2::new(n, &u_dims, &k_dims);
        let mut labels = Vec::new();
        let mut gdeg = Vec::new();
        for n in 0..=max {
            let l = lay(n);
            let mut ls = vec![String::new(); l.dim()];
            let mut gs = vec![0; l.dim()];
            for (idx, (lab, g)) in ls.iter_mut().zip(gs.iter_mut()).enumerate() {
                let (i, p, r) = l.decode(idx);
                *lab = format!("({}) (x) ({})", u.labels[i][p], k_label(k, n - i, r));
                *g = group.mul(u.gdeg[i][p], k.g_degree(n - i, r));
            }
            labels.push(ls);
            gdeg.push(gs);
        }
        let v_dims: Vec<usize> = labels.iter().map(Vec::len).collect();

        // k_a . k_b on K coordinates.
        let k_product = |j: usize, a: usize, l: usize, b: usize| -> Result<SparseVec<F>> {
            let prod = alg.multiply_vec(j, &k.basis(j)[a], l, &k.basis(l)[b]);
            k.coordinates(j + l, &prod)
                .ok_or_else(|| Error::Dimension("K is not closed under multiplication".into()))
        };

        let mut action = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let src = lay(m);
            let mut per_j = Vec::with_capacity(max + 1 - m);
            for j in 0..=max - m {
                let dst = lay(m + j);
                let mut rows = Vec::with_capacity(src.dim() * k_dims[j]);
                for idx in 0..src.dim() {
                    let (i, p, a) = src.decode(idx);
                    for b in 0..k_dims[j] {
                        let c = k_product(m - i, a, j, b)?;
                        rows.push(c.map_indices(|t| dst.index(i, p, t)));
                    }
                }
                per_j.push(SparseMatrix::from_rows(dst.dim(), rows));
            }
            action.push(per_j);
        }

        let a_dims = alg.dims();
        let mut coaction = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let src = lay(n);
            let out = Layout2::new(n, &a_dims, &v_dims);
            let mut rows = Vec::with_capacity(src.dim());
            for idx in 0..src.dim() {
                let (i, p, r) = src.decode(idx);
                let j = n - i;
                let delta_k = k.coproduct_in_k(j, r)?;
                let ulay = Layout2::new(i, &a_dims, &u_dims);
                let mut acc = Accumulator::new();
                for (uidx, x) in u.coaction[i].row(p).iter() {
                    let (s, a, q) = ulay.decode(uidx);
                    let gq = u.gdeg[i - s][q];
                    for (t, b, coords) in &delta_k {
                        let k1 = alg.action(*t, gq).row(*b);
                        let left = alg.multiply_vec(s, &SparseVec::unit(a), *t, k1);
                        let vlay = lay(i - s + j - t);
                        for (c, y) in left.iter() {
                            for (kr, z) in coords.iter() {
                                let v = vlay.index(i - s, q, kr);
                                acc.add(out.index(s + t, c, v), &x.mul(y).mul(z));
                            }
                        }
                    }
                }
                rows.push(acc.finish());
            }
            coaction.push(SparseMatrix::from_rows(out.dim(), rows));
        }
        Ok(HopfModuleData {
            name: format!("{} (x) K", u.name),
            algebra: alg,
            coideal: k.clone(),
            labels,
            gdeg,
            coaction,
            action,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn dim(&self, n: usize) -> usize {
        self.labels.get(n).map_or(0, Vec::len)
    }

    pub fn label(&self, n: usize, p: usize) -> &str {
        &self.labels[n][p]
    }

    pub fn g_degree(&self, n: usize, p: usize) -> usize {
        self.gdeg[n][p]
    }

    pub fn coideal(&self) -> &Arc<CoidealSubalgebra<F>> {
        &self.coideal
    }

    fn out_layout(&self, n: usize) -> Layout2 {
        Layout2::new(n, &self.algebra.dims(), &self.dims())
    }

    /// `v_p . k_r` for `v_p` in `V_m` and `k_r` in `K_j`.
    pub fn act(&self, m: usize, v: &SparseVec<F>, j: usize, r: usize) -> SparseVec<F> {
        let kd = self.coideal.dim(j);
        let mut acc = Accumulator::new();
        for (p, c) in v.iter() {
            acc.add_vec(self.action[m][j].row(p * kd + r), c);
        }
        acc.finish()
    }

    pub fn coact(&self, n: usize, v: &SparseVec<F>) -> SparseVec<F> {
        self.coaction[n].apply(v)
    }

    /// `(a (x) v) . k = a (v_(-1) . k_(1)) (x) v_(0) . k_(2)` on a flat
    /// `(A (x) V)_n` vector and the basis vector `r` of `K_j`.
    pub fn braided_diagonal_action(
        &self,
        n: usize,
        x: &SparseVec<F>,
        j: usize,
        r: usize,
    ) -> Result<SparseVec<F>> {
        let alg = &*self.algebra;
        if n + j > alg.max_degree() {
            return Err(Error::DegreeOverflow {
                requested: n + j,
                max: alg.max_degree(),
            });
        }
        let src = self.out_layout(n);
        let dst = self.out_layout(n + j);
        let delta_k = self.coideal.coproduct_in_k(j, r)?;
        let mut acc = Accumulator::new();
        for (i, a, vq) in split_rows(&src, x) {
            let m = n - i;
            for (q, c) in vq.iter() {
                let gq = self.gdeg[m][q];
                for (s, b, coords) in &delta_k {
                    let k1 = alg.action(*s, gq).row(*b);
                    let left = alg.multiply_vec(i, &SparseVec::unit(a), *s, k1);
                    let mut right = Accumulator::new();
                    for (t, z) in coords.iter() {
                        right.add_vec(&self.act(m, &SparseVec::unit(q), j - s, t), z);
                    }
                    let right = right.finish();
                    for (u, y) in left.iter() {
                        for (w, z) in right.iter() {
                            acc.add(dst.index(i + s, u, w), &c.mul(y).mul(z));
                        }
                    }
                }
            }
        }
        Ok(acc.finish())
    }

    /// Counit and coassociativity of the coaction, unit and associativity
    /// of the action, and `delta(v . k) = delta(v) . k`.
    pub fn check(&self) -> Result<Option<HopfWitness>> {
        if let Some(w) = self.check_structure() {
            return Ok(Some(w));
        }
        self.check_compatibility()
    }

    fn check_structure(&self) -> Option<HopfWitness> {
        let alg = &*self.algebra;
        let max = alg.max_degree();
        let a_dims = alg.dims();
        let v_dims = self.dims();
        let fail = |law: &str, n: usize, p: usize, k: Option<String>| HopfWitness {
            law: law.into(),
            element: self.labels[n][p].clone(),
            k,
            degree: n,
        };
        for n in 0..=max {
            let lay = self.out_layout(n);
            let l3 = Layout3::new(n, &a_dims, &a_dims, &v_dims);
            for p in 0..self.dim(n) {
                let delta = self.coaction[n].row(p);
                // (eps (x) id) delta = id
                let counit = SparseVec::from_pairs(delta.iter().filter_map(|(idx, c)| {
                    let (i, a, q) = lay.decode(idx);
                    (i == 0 && a == 0).then(|| (q, c.clone()))
                }));
                if counit != SparseVec::unit(p) {
                    return Some(fail("counit", n, p, None));
                }
                // (Delta (x) id) delta = (id (x) delta) delta
                let mut lhs = Accumulator::new();
                let mut rhs = Accumulator::new();
                for (idx, c) in delta.iter() {
                    let (i, a, q) = lay.decode(idx);
                    let al = alg.layout2(i);
                    for (t, y) in alg.coproduct_matrix(i).row(a).iter() {
                        let (s, u, w) = al.decode(t);
                        lhs.add(l3.index(s, i - s, u, w, q), &c.mul(y));
                    }
                    let vl = self.out_layout(n - i);
                    for (t, y) in self.coaction[n - i].row(q).iter() {
                        let (s, u, w) = vl.decode(t);
                        rhs.add(l3.index(i, s, a, u, w), &c.mul(y));
                    }
                }
                if lhs.finish() != rhs.finish() {
                    return Some(fail("coassociativity", n, p, None));
                }
            }
        }
        let k = &*self.coideal;
        for m in 0..=max {
            for p in 0..self.dim(m) {
                let v = SparseVec::unit(p);
                if self.act(m, &v, 0, 0) != v {
                    return Some(fail("unit", m, p, None));
                }
                for j in 1..=max - m {
                    for r in 0..k.dim(j) {
                        let vk = self.act(m, &v, j, r);
                        for l in 1..=max - m - j {
                            for s in 0..k.dim(l) {
                                let lhs = self.act(m + j, &vk, l, s);
                                let prod = alg.multiply_vec(j, &k.basis(j)[r], l, &k.basis(l)[s]);
                                let Some(coords) = k.coordinates(j + l, &prod) else {
                                    return Some(fail("associativity", m, p, Some(k_label(k, j, r))));
                                };
                                let mut rhs = Accumulator::new();
                                for (t, c) in coords.iter() {
                                    rhs.add_vec(&self.act(m, &v, j + l, t), c);
                                }
                                if lhs != rhs.finish() {
                                    return Some(fail("associativity", m, p, Some(k_label(k, j, r))));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn check_compatibility(&self) -> Result<Option<HopfWitness>> {
        let max = self.algebra.max_degree();
        let k = &*self.coideal;
        for n in 0..=max {
            for j in 0..=max - n {
                for r in 0..k.dim(j) {
                    for p in 0..self.dim(n) {
                        let v = SparseVec::unit(p);
                        let lhs = self.coact(n + j, &self.act(n, &v, j, r));
                        let rhs = self.braided_diagonal_action(n, &self.coact(n, &v), j, r)?;
                        if lhs != rhs {
                            return Ok(Some(HopfWitness {
                                law: "K-linearity of the coaction".into(),
                                element: self.labels[n][p].clone(),
                                k: Some(k_label(k, j, r)),
                                degree: n + j,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// Outcome of the greedy free-basis construction.
#[derive(Clone, Debug, Serialize)]
pub struct FreeBasisReport {
    pub verdict: bool,
    #[serde(rename = "hilbert_N", serialize_with = "crate::report::trimmed")]
    pub hilbert_n: Vec<usize>,
    pub bijective_by_degree: Vec<bool>,
    pub failed_degree: Option<usize>,
    #[serde(skip)]
    pub basis: Vec<Vec<usize>>,
}

/// Greedy degreewise basis `N` of `V` as a right `K`-module: `N(n)` is the
/// set of basis vectors of `V_n` outside the pivots of
/// `sum_{i<n} N(i) K_{n-i}`. Fails with [`Error::FreenessFailed`] at the
/// first degree where the products are linearly dependent.
pub fn find_free_basis<F: Field>(d: &HopfModuleData<F>) -> Result<FreeBasisReport> {
    let k = d.coideal();
    let max = d.algebra.max_degree();
    let mut basis: Vec<Vec<usize>> = Vec::with_capacity(max + 1);
    let mut bijective = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut products = Vec::new();
        for i in 0..n {
            for &b in &basis[i] {
                for r in 0..k.dim(n - i) {
                    products.push(d.act(i, &SparseVec::unit(b), n - i, r));
                }
            }
        }
        let count = products.len();
        let span = Subspace::span(d.dim(n), products, PivotRule::Highest);
        if span.dim() != count {
            return Err(Error::FreenessFailed {
                degree: n,
                detail: format!(
                    "{count} products of lower free generators span only {} dimensions",
                    span.dim()
                ),
            });
        }
        let mut is_pivot = vec![false; d.dim(n)];
        for &p in span.pivots() {
            is_pivot[p] = true;
        }
        basis.push((0..d.dim(n)).filter(|&c| !is_pivot[c]).collect());
        bijective.push(true);
    }
    Ok(FreeBasisReport {
        verdict: true,
        hilbert_n: basis.iter().map(Vec::len).collect(),
        bijective_by_degree: bijective,
        failed_degree: None,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;
    use crate::word::FreeElement;

    fn setup() -> (Arc<GradedAlgebra<Rational>>, Arc<CoidealSubalgebra<Rational>>) {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let k = s.coideal("K12").unwrap().clone();
        (s.algebra.clone(), k)
    }

    #[test]
    fn diagonal_action_example() {
        let (a, k) = setup();
        let d = HopfModuleData::of_algebra(&k);
        let v13 = a.module().label_index("v13").unwrap();
        let lay = Layout2::new(1, &a.dims(), &a.dims());
        let x = SparseVec::unit(lay.index(0, 0, v13));
        let y = d.braided_diagonal_action(1, &x, 1, 0).unwrap();
        // -v23 (x) v13 + 1 (x) v13*v12
        let out = Layout2::new(2, &a.dims(), &a.dims());
        let v23 = a.module().label_index("v23").unwrap();
        let v13v12 = a
            .to_homogeneous(&FreeElement::letter(v13).mul(&FreeElement::letter(0)))
            .unwrap();
        let mut expected = SparseVec::single(out.index(1, v23, v13), Rational::from_i64(-1));
        for (c, x) in v13v12.coords.iter() {
            expected = expected.add(&SparseVec::single(out.index(0, 0, c), x.clone()));
        }
        assert_eq!(y, expected);
        assert_eq!(d.braided_diagonal_action(1, &x, 0, 0).unwrap(), x);
    }

    #[test]
    fn algebra_and_induced_modules_are_hopf_modules() {
        let (a, k) = setup();
        assert_eq!(HopfModuleData::of_algebra(&k).check().unwrap(), None);
        for m in 0..=2 {
            let u = LeftComodule::trivial_coaction(&a, m);
            assert_eq!(HopfModuleData::induced(&u, &k).unwrap().check().unwrap(), None);
            let u = LeftComodule::truncated_algebra(&a, m);
            assert_eq!(HopfModuleData::induced(&u, &k).unwrap().check().unwrap(), None);
        }
    }

    #[test]
    fn trivial_action_fails() {
        let (_, k) = setup();
        let w = HopfModuleData::with_trivial_action(&k).check().unwrap().unwrap();
        assert_eq!(w.element, "1");
        assert_eq!(w.k.as_deref(), Some("v12"));
    }

    #[test]
    fn free_basis_of_fk3() {
        let (a, k) = setup();
        let r = find_free_basis(&HopfModuleData::of_algebra(&k)).unwrap();
        assert_eq!(r.hilbert_n, vec![1, 2, 2, 1, 0, 0, 0]);
        let trivial = Arc::new(CoidealSubalgebra::trivial(a.clone()));
        let r = find_free_basis(&HopfModuleData::of_algebra(&trivial)).unwrap();
        assert_eq!(r.hilbert_n, a.hilbert());
    }
}
