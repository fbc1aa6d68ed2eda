//! The decomposition `K (x) A/K+A -> A`, `k (x) a -> k h(a)`, for a
//! colinear section `h` of the projection.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GradedAlgebra, Homogeneous};
use crate::coideal::{CoidealSubalgebra, CoidealWitness, QuotientCoalgebra};
use crate::field::Field;
use crate::hopf_module::{find_free_basis, FreeBasisReport, HopfModuleData};
use crate::linalg::{Accumulator, LeftSolver, SparseMatrix, SparseVec};
use crate::tensor::Layout2;
use crate::{Error, Result};

/// `hilbert(K) * hilbert(Abar)` as polynomials, truncated to `len` terms.
pub fn convolve(a: &[usize], b: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|n| {
            (0..=n)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(n - i).copied().unwrap_or(0))
                .sum()
        })
        .collect()
}

/// A right `Abar`-colinear, G-degree preserving section `h: Abar -> A`.
#[derive(Clone, Debug)]
pub struct Section<F> {
    /// `maps[n]`: row `j` is `h(abar_j)` in `A_n`.
    pub maps: Vec<SparseMatrix<F>>,
    /// Dimension of the affine solution space in each degree.
    pub solution_dims: Vec<usize>,
}

/// Solves for `h` degree by degree. In degree `n` the unknown `x = h(abar)`
/// must satisfy `(id (x) pi) Delta(x) = (h (x) id) Dbar(abar)` in all
/// components of left degree below `n`; the component of left degree `n`
/// holds for every `x` because `pi(1) = 1bar`.
pub fn solve_section<F: Field>(q: &QuotientCoalgebra<F>) -> Result<Section<F>> {
    let alg = q.algebra();
    let max = alg.max_degree();
    let mut maps: Vec<SparseMatrix<F>> = vec![SparseMatrix::identity(1)];
    let mut solution_dims = vec![0];
    for n in 1..=max {
        let mixed = q.mixed_layout(n);
        let cut = mixed.block(n).start;
        // Restricted map x -> components i < n, per G-block of A_n.
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..alg.dim(n) {
            blocks.entry(alg.g_degree(n, c)).or_default().push(c);
        }
        let solvers: BTreeMap<usize, LeftSolver<F>> = blocks
            .iter()
            .filter(|(g, _)| (0..q.dim(n)).any(|j| q.g_degree(n, j) == **g))
            .map(|(&g, words)| {
                let rows = words
                    .iter()
                    .map(|&c| q.coaction(n, &SparseVec::unit(c)).filter(|i| i < cut));
                (g, LeftSolver::from_rows(cut, rows.collect::<Vec<_>>()))
            })
            .collect();
        let bar = q.bar_layout(n);
        let mut rows = Vec::with_capacity(q.dim(n));
        let mut sol_dim = 0;
        for j in 0..q.dim(n) {
            let g = q.g_degree(n, j);
            let mut rhs = Accumulator::new();
            for (idx, c) in q.coproduct_matrix(n).row(j).iter() {
                let (i, u, w) = bar.decode(idx);
                if i == n {
                    continue;
                }
                for (a, x) in maps[i].row(u).iter() {
                    rhs.add(mixed.index(i, a, w), &x.mul(c));
                }
            }
            let solver = &solvers[&g];
            let coeffs = solver
                .solve(&rhs.finish())
                .ok_or(Error::NoSection { degree: n })?;
            let words = &blocks[&g];
            rows.push(coeffs.map_indices(|t| words[t]));
            sol_dim += solver.kernel_dim();
        }
        maps.push(SparseMatrix::from_rows(alg.dim(n), rows));
        solution_dims.push(sol_dim);
    }
    Ok(Section {
        maps,
        solution_dims,
    })
}

/// Checks of a section, one flag per property.
#[derive(Clone, Debug, Serialize)]
pub struct SectionChecks {
    pub unit: bool,
    pub pi_h_identity: bool,
    pub colinear: bool,
    pub g_degree: bool,
}

pub fn check_section<F: Field>(q: &QuotientCoalgebra<F>, h: &Section<F>) -> SectionChecks {
    let alg = q.algebra();
    let unit = h.maps[0].row(0) == &SparseVec::unit(0);
    let mut pi_h = true;
    let mut colinear = true;
    let mut g_degree = true;
    for n in 0..=alg.max_degree() {
        let mixed = q.mixed_layout(n);
        let bar = q.bar_layout(n);
        for j in 0..q.dim(n) {
            let x = h.maps[n].row(j);
            pi_h &= q.project(n, x) == SparseVec::unit(j);
            g_degree &= x.indices().all(|c| alg.g_degree(n, c) == q.g_degree(n, j));
            let mut rhs = Accumulator::new();
            for (idx, c) in q.coproduct_matrix(n).row(j).iter() {
                let (i, u, w) = bar.decode(idx);
                for (a, y) in h.maps[i].row(u).iter() {
                    rhs.add(mixed.index(i, a, w), &y.mul(c));
                }
            }
            colinear &= q.coaction(n, x) == rhs.finish();
        }
    }
    SectionChecks {
        unit,
        pi_h_identity: pi_h,
        colinear,
        g_degree,
    }
}

/// Per-degree verdicts for `phi(k (x) abar) = k h(abar)`.
#[derive(Clone, Debug, Serialize)]
pub struct PhiDegree {
    pub degree: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
    pub bijective: bool,
    pub k_linear: bool,
    pub colinear: bool,
    pub g_degree: bool,
}

/// One value of the section, in document syntax.
#[derive(Clone, Debug, Serialize)]
pub struct SectionEntry {
    pub degree: usize,
    pub abar: String,
    pub h: String,
}

/// Everything established about `K (x) Abar -> A`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub degrees_checked: usize,
    #[serde(rename = "hilbert_A", serialize_with = "crate::report::trimmed")]
    pub hilbert_a: Vec<usize>,
    #[serde(rename = "hilbert_K", serialize_with = "crate::report::trimmed")]
    pub hilbert_k: Vec<usize>,
    #[serde(rename = "hilbert_Abar", serialize_with = "crate::report::trimmed")]
    pub hilbert_abar: Vec<usize>,
    #[serde(rename = "left_coideal")]
    pub coideal: bool,
    pub coideal_witness: Option<CoidealWitness>,
    pub factorization: bool,
    pub section_found: bool,
    pub section_solution_dims: Vec<usize>,
    pub section_checks: Option<SectionChecks>,
    pub phi_bijective: bool,
    pub phi_k_linear: bool,
    pub phi_colinear: bool,
    pub phi_g_degree: bool,
    pub phi_n_degree: bool,
    pub phi_by_degree: Vec<PhiDegree>,
    pub free_basis: Option<FreeBasisReport>,
    pub free_matches_abar: bool,
    pub section: Vec<SectionEntry>,
    pub failure: Option<String>,
    pub verdict: bool,
}

/// The decomposition data for one coideal subalgebra.
#[derive(Debug)]
pub struct Decomposition<F> {
    pub coideal: Arc<CoidealSubalgebra<F>>,
    pub quotient: QuotientCoalgebra<F>,
    pub section: Section<F>,
    /// `phi[n]`: rows in the layout of `(K (x) Abar)_n`, values in `A_n`.
    pub phi: Vec<SparseMatrix<F>>,
}

impl<F: Field> Decomposition<F> {
    /// Computes `Abar`, checks the Hilbert factorization, solves for `h` and
    /// assembles `phi`.
    pub fn build(k: &Arc<CoidealSubalgebra<F>>) -> Result<Self> {
        let q = QuotientCoalgebra::new(k)?;
        let alg = k.algebra();
        let len = alg.max_degree() + 1;
        let conv = convolve(&k.hilbert(), &q.hilbert(), len);
        if let Some(n) = (0..len).find(|&n| conv[n] != alg.dim(n)) {
            return Err(Error::FactorizationFailed {
                degree: n,
                detail: format!("dim A_{n} = {} but (K * Abar)_{n} = {}", alg.dim(n), conv[n]),
            });
        }
        let section = solve_section(&q)?;
        let phi = (0..len).map(|n| phi_matrix(k, &q, &section, n)).collect();
        Ok(Decomposition {
            coideal: k.clone(),
            quotient: q,
            section,
            phi,
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        self.coideal.algebra()
    }

    pub fn layout(&self, n: usize) -> Layout2 {
        Layout2::new(n, &self.coideal.hilbert(), &self.quotient.dims())
    }

    /// Verdicts for degree `n`.
    pub fn check_degree(&self, n: usize) -> PhiDegree {
        let alg = self.algebra();
        let k = &*self.coideal;
        let q = &self.quotient;
        let lay = self.layout(n);
        let m = &self.phi[n];
        let rank = m.rank();
        let bijective = lay.dim() == alg.dim(n) && rank == alg.dim(n);
        let group = alg.module().group();

        let mut g_degree = true;
        let mut colinear = true;
        let mixed = q.mixed_layout(n);
        for idx in 0..lay.dim() {
            let (i, r, j) = lay.decode(idx);
            let image = m.row(idx);
            let g = group.mul(k.g_degree(i, r), q.g_degree(n - i, j));
            g_degree &= image.indices().all(|c| alg.g_degree(n, c) == g);
            // (id (x) pi) Delta phi(k (x) a) = (phi (x) id)(k (x) Dbar a)
            let bar = q.bar_layout(n - i);
            let mut rhs = Accumulator::new();
            for (t, c) in q.coproduct_matrix(n - i).row(j).iter() {
                let (s, u, w) = bar.decode(t);
                let inner = self.layout(i + s).index(i, r, u);
                for (a, y) in self.phi[i + s].row(inner).iter() {
                    rhs.add(mixed.index(i + s, a, w), &y.mul(c));
                }
            }
            colinear &= q.coaction(n, image) == rhs.finish();
        }

        // k' phi(k (x) a) = phi(k'k (x) a) for k' in K_l, l >= 1.
        let mut k_linear = true;
        let max = alg.max_degree();
        for l in 1..=max.saturating_sub(n) {
            let target = self.layout(n + l);
            for kp in k.basis(l) {
                for idx in 0..lay.dim() {
                    let (i, r, j) = lay.decode(idx);
                    let lhs = alg.multiply_vec(l, kp, n, m.row(idx));
                    let prod = alg.multiply_vec(l, kp, i, &k.basis(i)[r]);
                    let Some(coords) = k.coordinates(l + i, &prod) else {
                        k_linear = false;
                        continue;
                    };
                    let mut rhs = Accumulator::new();
                    for (t, c) in coords.iter() {
                        rhs.add_vec(self.phi[n + l].row(target.index(l + i, t, j)), c);
                    }
                    k_linear &= lhs == rhs.finish();
                }
            }
        }
        PhiDegree {
            degree: n,
            dim_source: lay.dim(),
            dim_target: alg.dim(n),
            rank,
            bijective,
            k_linear,
            colinear,
            g_degree,
        }
    }

    pub fn section_entries(&self) -> Vec<SectionEntry> {
        let alg = self.algebra();
        let q = &self.quotient;
        (0..=alg.max_degree())
            .flat_map(|n| {
                (0..q.dim(n)).map(move |j| SectionEntry {
                    degree: n,
                    abar: q.render(n, &SparseVec::unit(j)),
                    h: alg.render(&Homogeneous::new(n, self.section.maps[n].row(j).clone())),
                })
            })
            .collect()
    }
}

fn phi_matrix<F: Field>(
    k: &CoidealSubalgebra<F>,
    q: &QuotientCoalgebra<F>,
    h: &Section<F>,
    n: usize,
) -> SparseMatrix<F> {
    let alg = k.algebra();
    let lay = Layout2::new(n, &k.hilbert(), &q.dims());
    let rows = (0..lay.dim())
        .map(|idx| {
            let (i, r, j) = lay.decode(idx);
            alg.multiply_vec(i, &k.basis(i)[r], n - i, h.maps[n - i].row(j))
        })
        .collect();
    SparseMatrix::from_rows(alg.dim(n), rows)
}

/// Runs the full pipeline and summarizes it. Hypothesis failures become a
/// report with `verdict = false` rather than an error; input errors
/// propagate.
pub fn build_decomposition<F: Field>(
    k: &Arc<CoidealSubalgebra<F>>,
    include_section: bool,
) -> Result<DecompositionReport> {
    let alg = k.algebra();
    let mut report = DecompositionReport {
        degrees_checked: alg.max_degree(),
        hilbert_a: alg.hilbert(),
        hilbert_k: k.hilbert(),
        hilbert_abar: Vec::new(),
        coideal: false,
        coideal_witness: None,
        factorization: false,
        section_found: false,
        section_solution_dims: Vec::new(),
        section_checks: None,
        phi_bijective: false,
        phi_k_linear: false,
        phi_colinear: false,
        phi_g_degree: false,
        phi_n_degree: false,
        phi_by_degree: Vec::new(),
        free_basis: None,
        free_matches_abar: false,
        section: Vec::new(),
        failure: None,
        verdict: false,
    };
    if let Some(w) = k.check_left_coideal() {
        report.failure = Some(format!("not a left coideal: {} in degree {}", w.element, w.degree));
        report.coideal_witness = Some(w);
        return Ok(report);
    }
    report.coideal = true;
    let d = match Decomposition::build(k) {
        Ok(d) => d,
        Err(e) if e.is_input_error() => return Err(e),
        Err(e) => {
            if let Error::FactorizationFailed { .. } = e {
                if let Ok(q) = QuotientCoalgebra::new(k) {
                    report.hilbert_abar = q.hilbert();
                }
            } else {
                report.factorization = true;
            }
            report.failure = Some(e.to_string());
            return Ok(report);
        }
    };
    report.hilbert_abar = d.quotient.hilbert();
    report.factorization = true;
    report.section_found = true;
    report.section_solution_dims = d.section.solution_dims.clone();
    let checks = check_section(&d.quotient, &d.section);
    let section_ok = checks.unit && checks.pi_h_identity && checks.colinear && checks.g_degree;
    report.section_checks = Some(checks);
    report.phi_by_degree = (0..=alg.max_degree())
        .into_par_iter()
        .map(|n| d.check_degree(n))
        .collect();
    let all = |f: fn(&PhiDegree) -> bool| report.phi_by_degree.iter().all(f);
    report.phi_bijective = all(|p| p.bijective);
    report.phi_k_linear = all(|p| p.k_linear);
    report.phi_colinear = all(|p| p.colinear);
    report.phi_g_degree = all(|p| p.g_degree);
    report.phi_n_degree = d.phi.iter().enumerate().all(|(n, m)| m.ncols() == alg.dim(n));
    if let Some(p) = report.phi_by_degree.iter().find(|p| !p.bijective) {
        report.failure = Some(Error::NotBijective { degree: p.degree }.to_string());
    }
    match find_free_basis(&HopfModuleData::of_algebra(k)) {
        Ok(f) => {
            report.free_matches_abar = f.hilbert_n == report.hilbert_abar;
            report.free_basis = Some(f);
        }
        Err(e) => {
            report.failure.get_or_insert(e.to_string());
        }
    }
    if include_section {
        report.section = d.section_entries();
    }
    report.verdict = section_ok
        && report.phi_bijective
        && report.phi_k_linear
        && report.phi_colinear
        && report.phi_g_degree
        && report.phi_n_degree
        && report.free_matches_abar
        && report.failure.is_none();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, fk};
    use crate::field::Rational;

    #[test]
    fn fk3_k12() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let k = s.coideal("K12").unwrap();
        let r = build_decomposition(k, true).unwrap();
        assert!(r.verdict, "{r:?}");
        assert_eq!(r.hilbert_abar, vec![1, 2, 2, 1, 0, 0, 0]);
        assert_eq!(r.section[0].h, "1");
        assert_eq!(r.section.len(), 6);
    }

    #[test]
    fn trivial_and_full_coideals() {
        let s = elaborate::<Rational>(&fk(3), None).unwrap();
        let a = s.algebra.clone();
        let trivial = Arc::new(CoidealSubalgebra::trivial(a.clone()));
        let r = build_decomposition(&trivial, false).unwrap();
        assert!(r.verdict);
        assert_eq!(r.hilbert_abar, a.hilbert());
        let gens: Vec<_> = (0..3).map(crate::word::FreeElement::letter).collect();
        let full = Arc::new(CoidealSubalgebra::generate(a, &gens).unwrap());
        let r = build_decomposition(&full, false).unwrap();
        assert!(r.verdict);
        assert_eq!(r.hilbert_abar, vec![1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn convolution() {
        assert_eq!(convolve(&[1, 1], &[1, 2, 2, 1], 5), vec![1, 3, 4, 3, 1]);
    }
}
