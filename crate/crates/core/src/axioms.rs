//! Exact verification of the braided Hopf algebra axioms of a truncated
//! algebra, degree by degree.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, Homogeneous};
use crate::field::Field;
use crate::linalg::{Accumulator, SparseVec};
use crate::tensor::Layout3;

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    pub seed: u64,
    /// Random pairs of homogeneous elements for the multiplicativity and
    /// associativity checks.
    pub samples: usize,
    /// Basis pairs are checked exhaustively when there are at most this many.
    pub exhaustive_limit: usize,
}

impl Default for AxiomConfig {
    fn default() -> Self {
        AxiomConfig {
            seed: 0,
            samples: 500,
            exhaustive_limit: 500,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub degrees_checked: usize,
    #[serde(serialize_with = "crate::report::trimmed")]
    pub hilbert: Vec<usize>,
    pub checks: Vec<AxiomCheck>,
    pub verdict: bool,
}

impl AxiomReport {
    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn basis_word<F: Field>(alg: &GradedAlgebra<F>, n: usize, a: usize) -> String {
    alg.render(&Homogeneous::new(n, SparseVec::unit(a)))
}

/// Runs every check of a degree-indexed predicate, returning the first
/// failing basis element (by degree, then index).
fn per_word<F: Field>(
    alg: &GradedAlgebra<F>,
    name: &'static str,
    test: impl Fn(usize, usize) -> bool + Sync,
) -> AxiomCheck {
    let top = alg.max_degree();
    let checked = alg.total_dim();
    let failure = (0..=top)
        .into_par_iter()
        .filter_map(|n| (0..alg.dim(n)).find(|&a| !test(n, a)).map(|a| (n, a)))
        .min();
    AxiomCheck {
        name,
        passed: failure.is_none(),
        checked,
        witness: failure.map(|(n, a)| basis_word(alg, n, a)),
    }
}

fn coassociative<F: Field>(alg: &GradedAlgebra<F>, n: usize, a: usize) -> bool {
    let dims = alg.dims();
    let l3 = Layout3::new(n, &dims, &dims, &dims);
    let lay = alg.layout2(n);
    let (mut left, mut right) = (Accumulator::new(), Accumulator::new());
    for (e, c) in alg.coproduct_matrix(n).row(a).iter() {
        let (i, p, q) = lay.decode(e);
        let li = alg.layout2(i);
        for (f, d) in alg.coproduct_matrix(i).row(p).iter() {
            let (s, u, w) = li.decode(f);
            left.add(l3.index(s, i - s, u, w, q), &c.mul(d));
        }
        let lj = alg.layout2(n - i);
        for (f, d) in alg.coproduct_matrix(n - i).row(q).iter() {
            let (s, u, w) = lj.decode(f);
            right.add(l3.index(i, s, p, u, w), &c.mul(d));
        }
    }
    left.finish() == right.finish()
}

fn counital<F: Field>(alg: &GradedAlgebra<F>, n: usize, a: usize) -> bool {
    let lay = alg.layout2(n);
    let row = alg.coproduct_matrix(n).row(a);
    let first = row.filter(|e| lay.decode(e).0 == 0);
    let last = row.filter(|e| lay.decode(e).0 == n);
    if n == 0 {
        return row == &SparseVec::unit(0);
    }
    first == SparseVec::unit(lay.index(0, 0, a)) && last == SparseVec::unit(lay.index(n, a, 0))
}

fn antipode_law<F: Field>(alg: &GradedAlgebra<F>, n: usize, a: usize, left: bool) -> bool {
    let lay = alg.layout2(n);
    let mut acc = Accumulator::new();
    for (e, c) in alg.coproduct_matrix(n).row(a).iter() {
        let (i, p, q) = lay.decode(e);
        let x = if left {
            alg.multiply_vec(i, alg.antipode_matrix(i).row(p), n - i, &SparseVec::unit(q))
        } else {
            alg.multiply_vec(i, &SparseVec::unit(p), n - i, alg.antipode_matrix(n - i).row(q))
        };
        acc.add_vec(&x, c);
    }
    let expected = if n == 0 { SparseVec::unit(0) } else { SparseVec::zero() };
    acc.finish() == expected
}

/// `Delta` and `S` preserve G-degrees and commute with the generators of G.
fn equivariant<F: Field>(alg: &GradedAlgebra<F>, n: usize, a: usize) -> bool {
    let group = alg.module().group();
    let lay = alg.layout2(n);
    let g_a = alg.g_degree(n, a);
    let delta = alg.coproduct_matrix(n).row(a);
    let degrees_ok = delta.iter().all(|(e, _)| {
        let (i, p, q) = lay.decode(e);
        group.mul(alg.g_degree(i, p), alg.g_degree(n - i, q)) == g_a
    }) && alg
        .antipode_matrix(n)
        .row(a)
        .iter()
        .all(|(b, _)| alg.g_degree(n, b) == g_a);
    degrees_ok
        && group.generator_indices().into_iter().all(|g| {
            let ga = alg.action(n, g).row(a);
            let lhs = alg.coproduct_matrix(n).apply(ga);
            let mut rhs = Accumulator::new();
            for (e, c) in delta.iter() {
                let (i, p, q) = lay.decode(e);
                for (u, d) in alg.action(i, g).row(p).iter() {
                    for (w, f) in alg.action(n - i, g).row(q).iter() {
                        rhs.add(lay.index(i, u, w), &c.mul(d).mul(f));
                    }
                }
            }
            let s_lhs = alg.antipode_matrix(n).apply(ga);
            let s_rhs = alg.action(n, g).apply(alg.antipode_matrix(n).row(a));
            lhs == rhs.finish() && s_lhs == s_rhs
        })
}

/// Up to three random basis terms with small integer coefficients.
fn random_element<F: Field>(alg: &GradedAlgebra<F>, n: usize, rng: &mut ChaCha8Rng) -> SparseVec<F> {
    let d = alg.dim(n);
    if d == 0 {
        return SparseVec::zero();
    }
    let terms = rng.gen_range(1..=3);
    SparseVec::from_pairs((0..terms).map(|_| (rng.gen_range(0..d), F::from_i64(*[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty")))))
}

/// Pairs `(m, a, k, b)` of homogeneous elements with `m + k <= max_degree`.
fn sample_pairs<F: Field>(
    alg: &GradedAlgebra<F>,
    cfg: &AxiomConfig,
) -> Vec<(usize, SparseVec<F>, usize, SparseVec<F>)> {
    let top = alg.max_degree();
    let mut out = Vec::new();
    let basis_pairs: usize = (0..=top)
        .map(|m| alg.dim(m) * (0..=top - m).map(|k| alg.dim(k)).sum::<usize>())
        .sum();
    if basis_pairs <= cfg.exhaustive_limit {
        for m in 0..=top {
            for k in 0..=top - m {
                for a in 0..alg.dim(m) {
                    for b in 0..alg.dim(k) {
                        out.push((m, SparseVec::unit(a), k, SparseVec::unit(b)));
                    }
                }
            }
        }
    }
    let degree_pairs: Vec<(usize, usize)> = (0..=top)
        .flat_map(|m| (0..=top - m).map(move |k| (m, k)))
        .filter(|&(m, k)| alg.dim(m) > 0 && alg.dim(k) > 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let (m, k) = degree_pairs[rng.gen_range(0..degree_pairs.len())];
        let a = random_element(alg, m, &mut rng);
        let b = random_element(alg, k, &mut rng);
        out.push((m, a, k, b));
    }
    out
}

fn multiplicativity<F: Field>(alg: &GradedAlgebra<F>, cfg: &AxiomConfig) -> (AxiomCheck, AxiomCheck) {
    let pairs = sample_pairs(alg, cfg);
    let top = alg.max_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let thirds: Vec<(usize, SparseVec<F>)> = pairs
        .iter()
        .map(|(m, _, k, _)| {
            let l = rng.gen_range(0..=top - m - k);
            (l, random_element(alg, l, &mut rng))
        })
        .collect();
    let render = |m: usize, a: &SparseVec<F>, k: usize, b: &SparseVec<F>| {
        format!(
            "({}) * ({})",
            alg.render(&Homogeneous::new(m, a.clone())),
            alg.render(&Homogeneous::new(k, b.clone()))
        )
    };
    let delta_fail = pairs.par_iter().position_first(|(m, a, k, b)| {
        let ab = alg.multiply_vec(*m, a, *k, b);
        let lhs = alg.coproduct_matrix(m + k).apply(&ab);
        let da = alg.coproduct_matrix(*m).apply(a);
        let db = alg.coproduct_matrix(*k).apply(b);
        lhs != alg.braided_product(*m, &da, *k, &db)
    });
    let assoc_fail = pairs.par_iter().zip(thirds.par_iter()).position_first(|((m, a, k, b), (l, c))| {
        let ab_c = alg.multiply_vec(m + k, &alg.multiply_vec(*m, a, *k, b), *l, c);
        let a_bc = alg.multiply_vec(*m, a, k + l, &alg.multiply_vec(*k, b, *l, c));
        ab_c != a_bc
    });
    let witness = |i: Option<usize>| {
        i.map(|i| {
            let (m, a, k, b) = &pairs[i];
            render(*m, a, *k, b)
        })
    };
    (
        AxiomCheck {
            name: "coproduct_multiplicative",
            passed: delta_fail.is_none(),
            checked: pairs.len(),
            witness: witness(delta_fail),
        },
        AxiomCheck {
            name: "associativity",
            passed: assoc_fail.is_none(),
            checked: pairs.len(),
            witness: witness(assoc_fail),
        },
    )
}

pub fn check_axioms<F: Field>(alg: &GradedAlgebra<F>, cfg: &AxiomConfig) -> AxiomReport {
    let module = alg.module();
    let d = module.dim();
    let braid = module.check_braid_equation();
    let labels = module.labels();
    let mut checks = vec![AxiomCheck {
        name: "braid_equation",
        passed: braid.is_none(),
        checked: d * d * d,
        witness: braid.map(|(a, b, c)| format!("{} (x) {} (x) {}", labels[a], labels[b], labels[c])),
    }];
    let relation_fail = alg
        .relations()
        .iter()
        .find(|r| alg.reduce_free(r).map_or(true, |x| !x.is_zero()));
    checks.push(AxiomCheck {
        name: "relations_vanish",
        passed: relation_fail.is_none(),
        checked: alg.relations().len(),
        witness: relation_fail.map(|r| r.render(labels)),
    });
    checks.push(per_word(alg, "coassociativity", |n, a| coassociative(alg, n, a)));
    checks.push(per_word(alg, "counit", |n, a| counital(alg, n, a)));
    checks.push(per_word(alg, "antipode_left", |n, a| antipode_law(alg, n, a, true)));
    checks.push(per_word(alg, "antipode_right", |n, a| antipode_law(alg, n, a, false)));
    checks.push(per_word(alg, "g_equivariance", |n, a| equivariant(alg, n, a)));
    let (mult, assoc) = multiplicativity(alg, cfg);
    checks.push(mult);
    checks.push(assoc);
    AxiomReport {
        degrees_checked: alg.max_degree(),
        hilbert: alg.hilbert(),
        verdict: checks.iter().all(|c| c.passed),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;
    use std::sync::Arc;

    #[test]
    fn fk3_passes() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let r = check_axioms(&s.algebra, &AxiomConfig::default());
        assert!(r.verdict, "{r:?}");
        let m = r.check("coproduct_multiplicative").unwrap();
        assert!(m.checked >= 500);
    }

    #[test]
    fn free_algebra_passes() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let free = Arc::new(GradedAlgebra::free(s.module().clone(), 3).unwrap());
        let r = check_axioms(&free, &AxiomConfig { samples: 100, ..Default::default() });
        assert!(r.verdict, "{r:?}");
    }
}
