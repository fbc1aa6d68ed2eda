//! Serializable run reports and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Serialize, Serializer};

use crate::axioms::AxiomReport;
use crate::canonical::CanonicalReport;
use crate::coideal::CoidealWitness;
use crate::decomp::DecompositionReport;
use crate::hom::HomReport;
use crate::hopf_module::{FreeBasisReport, HopfWitness};

/// Hilbert coefficients without the zeros above the top nonzero degree.
pub fn trim(v: &[usize]) -> &[usize] {
    let end = v.iter().rposition(|&d| d != 0).map_or(v.len().min(1), |i| i + 1);
    &v[..end]
}

pub fn trimmed<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    trim(v).serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_digest: String,
    pub field: String,
    pub max_degree: usize,
    pub seed: u64,
    pub tasks: Vec<TaskReport>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "task", rename_all = "lowercase")]
pub enum TaskReport {
    Check(CheckTask),
    Hilbert(HilbertTask),
    Decompose(DecomposeTask),
    Canmap(CanmapTask),
    Freeness(FreenessTask),
    Hopfmod(HopfmodTask),
    /// A task that could not run to completion for a mathematical reason.
    Failed(FailedTask),
}

impl TaskReport {
    pub fn verdict(&self) -> bool {
        match self {
            TaskReport::Check(t) => t.verdict,
            TaskReport::Hilbert(t) => t.verdict,
            TaskReport::Decompose(t) => t.report.verdict,
            TaskReport::Canmap(t) => t.verdict,
            TaskReport::Freeness(t) => t.verdict,
            TaskReport::Hopfmod(t) => t.verdict,
            TaskReport::Failed(_) => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            TaskReport::Check(_) => "check".into(),
            TaskReport::Hilbert(_) => "hilbert".into(),
            TaskReport::Decompose(t) => format!("decompose {}", t.coideal),
            TaskReport::Canmap(t) => format!("canmap {}", t.coideal),
            TaskReport::Freeness(t) => format!("freeness {}", t.coideal),
            TaskReport::Hopfmod(t) => format!("hopfmod {}", t.coideal),
            TaskReport::Failed(t) => t.label.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CoidealEntry {
    pub name: String,
    #[serde(serialize_with = "trimmed")]
    pub hilbert: Vec<usize>,
    pub left_coideal: bool,
    pub witness: Option<CoidealWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckTask {
    pub yd_module: bool,
    pub yd_witness: Option<String>,
    pub axioms: AxiomReport,
    pub coideals: Vec<CoidealEntry>,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertTask {
    pub degrees_checked: usize,
    #[serde(serialize_with = "trimmed")]
    pub hilbert: Vec<usize>,
    pub total: usize,
    pub top_degree: usize,
    /// The top nonzero degree lies strictly below the truncation.
    pub stabilized: bool,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeTask {
    pub coideal: String,
    #[serde(flatten)]
    pub report: DecompositionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CanmapTask {
    pub coideal: String,
    pub canonical: CanonicalReport,
    pub hom: Vec<HomReport>,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessTask {
    pub coideal: String,
    #[serde(rename = "hilbert_Abar", serialize_with = "trimmed")]
    pub hilbert_abar: Vec<usize>,
    pub free_basis: FreeBasisReport,
    pub matches_abar: bool,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfEntry {
    pub module: String,
    #[serde(serialize_with = "trimmed")]
    pub dims: Vec<usize>,
    pub hopf_module: bool,
    pub witness: Option<HopfWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HopfmodTask {
    pub coideal: String,
    pub modules: Vec<HopfEntry>,
    /// `A` with `K` acting through the counit; expected to fail.
    pub counterexample: HopfEntry,
    pub verdict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FailedTask {
    pub label: String,
    pub failure: String,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}

fn list(v: &[usize]) -> String {
    format!("{:?}", trim(v))
}

/// Human-readable summary; witnesses are printed in document syntax.
pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} over {} (max degree {}, seed {})",
        r.tool, r.command, r.field, r.max_degree, r.seed
    );
    for t in &r.tasks {
        let status = if t.verdict() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{}: {status}", t.label());
        match t {
            TaskReport::Check(c) => {
                let _ = writeln!(out, "  yd module: {}", yes(c.yd_module));
                if let Some(w) = &c.yd_witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
                for a in &c.axioms.checks {
                    let _ = writeln!(out, "  {}: {} ({} checked)", a.name, yes(a.passed), a.checked);
                    if let Some(w) = &a.witness {
                        let _ = writeln!(out, "    witness: {w}");
                    }
                }
                for k in &c.coideals {
                    let _ = writeln!(out, "  coideal {}: {} hilbert {}", k.name, yes(k.left_coideal), list(&k.hilbert));
                    if let Some(w) = &k.witness {
                        let _ = writeln!(out, "    witness: {} in degree {}", w.element, w.degree);
                    }
                }
            }
            TaskReport::Hilbert(h) => {
                let _ = writeln!(out, "  hilbert {} total {} top degree {}", list(&h.hilbert), h.total, h.top_degree);
            }
            TaskReport::Decompose(d) => {
                let d = &d.report;
                let _ = writeln!(
                    out,
                    "  hilbert A {} K {} Abar {}",
                    list(&d.hilbert_a),
                    list(&d.hilbert_k),
                    list(&d.hilbert_abar)
                );
                let _ = writeln!(
                    out,
                    "  left coideal {}, factorization {}, section {}",
                    yes(d.coideal),
                    yes(d.factorization),
                    yes(d.section_found)
                );
                let _ = writeln!(
                    out,
                    "  phi bijective {}, K-linear {}, colinear {}, G-degree {}, N-degree {}",
                    yes(d.phi_bijective),
                    yes(d.phi_k_linear),
                    yes(d.phi_colinear),
                    yes(d.phi_g_degree),
                    yes(d.phi_n_degree)
                );
                if let Some(w) = &d.coideal_witness {
                    let _ = writeln!(out, "  witness: {} in degree {}", w.element, w.degree);
                }
                if let Some(f) = &d.failure {
                    let _ = writeln!(out, "  failure: {f}");
                }
            }
            TaskReport::Canmap(c) => {
                let k = &c.canonical;
                let _ = writeln!(
                    out,
                    "  Phi round trip {}, ker(can) = im {}, can onto {}, Psi square {}",
                    yes(k.phi_roundtrip),
                    yes(k.kernel_equal),
                    yes(k.can_surjective),
                    yes(k.psi)
                );
                if let Some(w) = &k.psi_witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
                for h in &c.hom {
                    let _ = writeln!(
                        out,
                        "  Hom(Abar, {x}) dim {} = Hom^C(Abar, {x} (x) Abar) dim {}: {}; maps inverse {}",
                        h.dim_hom,
                        h.dim_hom_colinear,
                        yes(h.dims_equal),
                        yes(h.alpha_beta_identity && h.beta_alpha_identity && h.beta_colinear),
                        x = h.x
                    );
                }
            }
            TaskReport::Freeness(f) => {
                let _ = writeln!(
                    out,
                    "  N hilbert {} (Abar {}), bijective in every degree {}",
                    list(&f.free_basis.hilbert_n),
                    list(&f.hilbert_abar),
                    yes(f.free_basis.verdict)
                );
                if let Some(d) = f.free_basis.failed_degree {
                    let _ = writeln!(out, "  first failing degree: {d}");
                }
            }
            TaskReport::Hopfmod(h) => {
                for m in h.modules.iter().chain(std::iter::once(&h.counterexample)) {
                    let _ = writeln!(out, "  {}: Hopf module {}", m.module, yes(m.hopf_module));
                    if let Some(w) = &m.witness {
                        let k = w.k.as_deref().unwrap_or("-");
                        let _ = writeln!(out, "    witness ({}): {} . {} in degree {}", w.law, w.element, k, w.degree);
                    }
                }
            }
            TaskReport::Failed(f) => {
                let _ = writeln!(out, "  failure: {}", f.failure);
            }
        }
    }
    let _ = writeln!(out, "status: {}", if r.status == Status::Pass { "pass" } else { "fail" });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming() {
        assert_eq!(trim(&[1, 3, 4, 3, 1, 0, 0]), &[1, 3, 4, 3, 1]);
        assert_eq!(trim(&[1]), &[1]);
        assert_eq!(trim(&[0, 0]), &[0]);
        assert!(trim(&[]).is_empty());
    }
}
