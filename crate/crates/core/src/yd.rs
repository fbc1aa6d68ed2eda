//! Yetter-Drinfeld modules over a group algebra and their braiding.
//!
//! A module is a G-graded space with a basis of homogeneous vectors and a
//! G-action such that `g . V_h` lies in `V_{g h g^-1}`. The braiding is
//! `c(v (x) w) = deg(v) . w (x) v`.

use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct YdModule<F> {
    group: FiniteGroup,
    labels: Vec<String>,
    degree: Vec<usize>,
    /// `action[g]` maps basis vector `b` to row `b`.
    action: Vec<SparseMatrix<F>>,
}

/// Why a module fails to be Yetter-Drinfeld.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum YdWitness {
    /// `action(g h) != action(g) action(h)`.
    NotHomomorphism { g: String, h: String },
    /// `g . basis` has a component on a vector of the wrong degree.
    Grading {
        g: String,
        basis: String,
        component: String,
    },
}

impl<F: Field> YdModule<F> {
    /// Builds the module from the images of the group's declared generators
    /// and extends to all elements along the breadth-first closure. Whether
    /// the result is a genuine action is left to [`YdModule::check_yd`].
    pub fn from_generator_action(
        group: FiniteGroup,
        labels: Vec<String>,
        degree: Vec<usize>,
        generator_action: Vec<SparseMatrix<F>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if degree.len() != dim {
            return Err(Error::InvalidModule("one degree per basis label required".into()));
        }
        if degree.iter().any(|&g| g >= group.order()) {
            return Err(Error::InvalidModule("degree outside the group".into()));
        }
        let gens = group.generator_indices();
        if generator_action.len() != gens.len() {
            return Err(Error::InvalidModule(format!(
                "expected {} generator actions, got {}",
                gens.len(),
                generator_action.len()
            )));
        }
        for m in &generator_action {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::InvalidModule("action matrix has wrong shape".into()));
            }
        }
        let n = group.order();
        let mut action: Vec<Option<SparseMatrix<F>>> = vec![None; n];
        action[group.identity()] = Some(SparseMatrix::identity(dim));
        let mut queue = vec![group.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, ms) in gens.iter().zip(&generator_action) {
                let y = group.mul(*s, x);
                if action[y].is_none() {
                    // (s x) . b = s . (x . b)
                    let mx = action[x].as_ref().expect("queued elements are set");
                    action[y] = Some(mx.mul(ms)?);
                    queue.push(y);
                }
            }
        }
        let action = action
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::InvalidModule("generators do not reach every element".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(YdModule {
            group,
            labels,
            degree,
            action,
        })
    }

    /// Builds the module from explicit matrices for every group element.
    pub fn from_full_action(
        group: FiniteGroup,
        labels: Vec<String>,
        degree: Vec<usize>,
        action: Vec<SparseMatrix<F>>,
    ) -> Result<Self> {
        if action.len() != group.order() || degree.len() != labels.len() {
            return Err(Error::InvalidModule("action table has wrong size".into()));
        }
        Ok(YdModule {
            group,
            labels,
            degree,
            action,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// G-degree of basis vector `b`.
    pub fn degree(&self, b: usize) -> usize {
        self.degree[b]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn action(&self, g: usize) -> &SparseMatrix<F> {
        &self.action[g]
    }

    /// `g . v` for a coordinate vector `v`.
    pub fn act(&self, g: usize, v: &SparseVec<F>) -> SparseVec<F> {
        self.action[g].apply(v)
    }

    /// Checks the homomorphism law and the grading compatibility.
    ///
    /// Generators are examined before the remaining elements so that
    /// witnesses point at declared data where possible.
    pub fn check_yd(&self) -> Option<YdWitness> {
        let g = &self.group;
        let n = g.order();
        let gens = g.generator_indices();
        let mut order: Vec<usize> = gens.clone();
        order.extend((0..n).filter(|x| !gens.contains(x)));

        if self.action[g.identity()] != SparseMatrix::identity(self.dim()) {
            return Some(YdWitness::NotHomomorphism {
                g: g.label(g.identity()),
                h: g.label(g.identity()),
            });
        }
        for &s in &order {
            for b in 0..self.dim() {
                let want = g.conj(s, self.degree[b]);
                if let Some(c) = self.action[s]
                    .row(b)
                    .indices()
                    .find(|&c| self.degree[c] != want)
                {
                    return Some(YdWitness::Grading {
                        g: g.label(s),
                        basis: self.labels[b].clone(),
                        component: self.labels[c].clone(),
                    });
                }
            }
        }
        for &s in &gens {
            for x in 0..n {
                let lhs = &self.action[g.mul(s, x)];
                let rhs = self.action[x].mul(&self.action[s]).expect("square matrices");
                if *lhs != rhs {
                    return Some(YdWitness::NotHomomorphism {
                        g: g.label(s),
                        h: g.label(x),
                    });
                }
            }
        }
        None
    }

    /// `c(v (x) w)` on `W (x) V`, indexed `w_index * dim(V) + v_index`.
    pub fn braid(
        &self,
        v: &SparseVec<F>,
        other: &YdModule<F>,
        w: &SparseVec<F>,
    ) -> Result<SparseVec<F>> {
        if self.group != other.group {
            return Err(Error::OwnerMismatch);
        }
        let dv = self.dim();
        let mut pairs = Vec::new();
        for (i, a) in v.iter() {
            let gw = other.act(self.degree[i], w);
            for (j, b) in gw.iter() {
                pairs.push((j * dv + i, a.mul(b)));
            }
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    /// The braiding on `V (x) V` as a map, index `a * dim + b` for `v_a (x) v_b`.
    pub fn braiding_matrix(&self) -> SparseMatrix<F> {
        let d = self.dim();
        let rows = (0..d * d)
            .map(|k| {
                let (a, b) = (k / d, k % d);
                self.braid(&SparseVec::unit(a), self, &SparseVec::unit(b))
                    .expect("same module")
            })
            .collect();
        SparseMatrix::from_rows(d * d, rows)
    }

    /// Checks `(c (x) id)(id (x) c)(c (x) id) = (id (x) c)(c (x) id)(id (x) c)`
    /// on every basis triple; returns the first failing triple.
    pub fn check_braid_equation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let c = self.braiding_matrix();
        // On V^(x)3 with index (a, b, e) -> a d^2 + b d + e.
        let c12 = |x: &SparseVec<F>| {
            let mut pairs = Vec::new();
            for (k, s) in x.iter() {
                let (ab, e) = (k / d, k % d);
                for (ab2, t) in c.row(ab).iter() {
                    pairs.push((ab2 * d + e, s.mul(t)));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        let c23 = |x: &SparseVec<F>| {
            let mut pairs = Vec::new();
            for (k, s) in x.iter() {
                let (a, be) = (k / (d * d), k % (d * d));
                for (be2, t) in c.row(be).iter() {
                    pairs.push((a * d * d + be2, s.mul(t)));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        for a in 0..d {
            for b in 0..d {
                for e in 0..d {
                    let x = SparseVec::unit(a * d * d + b * d + e);
                    let lhs = c12(&c23(&c12(&x)));
                    let rhs = c23(&c12(&c23(&x)));
                    if lhs != rhs {
                        return Some((a, b, e));
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::group::Perm;

    /// One-dimensional S_3 module of degree (1 2) with trivial action.
    fn broken_module() -> YdModule<Rational> {
        let s3 = FiniteGroup::from_permutation_generators(
            3,
            &[
                Perm::parse_cycles(3, "(1 3)").unwrap(),
                Perm::parse_cycles(3, "(1 2)").unwrap(),
            ],
        )
        .unwrap();
        let deg = s3.index_of(&Perm::parse_cycles(3, "(1 2)").unwrap()).unwrap();
        YdModule::from_generator_action(
            s3,
            vec!["v".into()],
            vec![deg],
            vec![SparseMatrix::identity(1), SparseMatrix::identity(1)],
        )
        .unwrap()
    }

    #[test]
    fn wrong_grading_is_detected() {
        let w = broken_module().check_yd().unwrap();
        assert_eq!(
            w,
            YdWitness::Grading {
                g: "(1 3)".into(),
                basis: "v".into(),
                component: "v".into()
            }
        );
    }

    #[test]
    fn trivial_group_module_is_yd() {
        let g = FiniteGroup::trivial();
        let m = YdModule::<Rational>::from_generator_action(
            g,
            vec!["x".into(), "y".into()],
            vec![0, 0],
            vec![],
        )
        .unwrap();
        assert!(m.check_yd().is_none());
        // Trivial braiding is the flip.
        let c = m.braid(&SparseVec::unit(0), &m, &SparseVec::unit(1)).unwrap();
        assert_eq!(c, SparseVec::unit(2)); // y (x) x
        assert!(m.check_braid_equation().is_none());
    }

    #[test]
    fn non_homomorphic_action_is_detected() {
        let c2 = FiniteGroup::from_permutation_generators(2, &[Perm::parse_cycles(2, "(1 2)").unwrap()])
            .unwrap();
        // The generator acts by 2, but its square must act by 1.
        let two = SparseMatrix::from_i64(&[&[2]]);
        let m = YdModule::<Rational>::from_generator_action(c2, vec!["v".into()], vec![0], vec![two])
            .unwrap();
        assert!(matches!(m.check_yd(), Some(YdWitness::NotHomomorphism { .. })));
    }
}
