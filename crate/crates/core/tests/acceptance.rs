//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use braidhopf::algebra::GradedAlgebra;
use braidhopf::axioms::{check_axioms, AxiomConfig};
use braidhopf::canonical::check_canonical;
use braidhopf::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use braidhopf::decomp::{build_decomposition, convolve};
use braidhopf::dsl::{elaborate, fk, parse, print};
use braidhopf::field::Rational;
use braidhopf::hom::{GradedGSpace, HomSolver};
use braidhopf::hopf_module::{find_free_basis, HopfModuleData, LeftComodule};
use braidhopf::word::FreeElement;
use common::*;
use itertools::Itertools;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn algebra(n: usize, max: Option<usize>) -> Arc<GradedAlgebra<Rational>> {
    elaborate::<Rational>(&fk(n), max).expect("fk elaborates").algebra
}

fn coideal(alg: &Arc<GradedAlgebra<Rational>>, letters: &[usize]) -> Arc<CoidealSubalgebra<Rational>> {
    let gens: Vec<FreeElement<Rational>> = letters.iter().map(|&l| FreeElement::letter(l)).collect();
    Arc::new(CoidealSubalgebra::generate(alg.clone(), &gens).expect("coideal builds"))
}

fn label(alg: &GradedAlgebra<Rational>, letters: &[usize]) -> String {
    let names = alg.module().labels();
    format!("<{}>", letters.iter().map(|&l| names[l].as_str()).join(","))
}

/// The coideals of criteria 3 and 6: every nonempty subset of the
/// transpositions for FK3, every single transposition for FK4 to degree 10.
fn coideal_family() -> Vec<(String, Arc<CoidealSubalgebra<Rational>>)> {
    let fk3 = algebra(3, None);
    let fk4 = algebra(4, Some(10));
    let mut out = Vec::new();
    for size in 1..=3 {
        for s in (0..3).combinations(size) {
            out.push((format!("FK3 {}", label(&fk3, &s)), coideal(&fk3, &s)));
        }
    }
    for l in 0..6 {
        out.push((format!("FK4 {}", label(&fk4, &[l])), coideal(&fk4, &[l])));
    }
    out
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    for (n, max, limit) in [
        (2, None, Duration::from_secs(10)),
        (3, None, Duration::from_secs(10)),
        (4, Some(8), Duration::from_secs(300)),
    ] {
        let start = Instant::now();
        let a = algebra(n, max);
        let r = check_axioms(&a, &AxiomConfig::default());
        let elapsed = start.elapsed();
        for name in [
            "braid_equation",
            "coassociativity",
            "counit",
            "antipode_left",
            "antipode_right",
            "coproduct_multiplicative",
        ] {
            let c = r.check(name).ok_or(format!("missing check {name}"))?;
            ensure(c.passed, || format!("FK{n}: {name} fails on {:?}", c.witness))?;
        }
        ensure(r.verdict, || format!("FK{n}: {:?}", r.checks.iter().find(|c| !c.passed)))?;
        let pairs = r.check("coproduct_multiplicative").unwrap().checked;
        ensure(pairs >= 500, || format!("FK{n}: only {pairs} multiplicativity pairs"))?;
        ensure(elapsed < limit, || format!("FK{n}: {elapsed:.2?} exceeds {limit:?}"))?;
        ensure(r.check("coassociativity").unwrap().checked == a.total_dim(), || {
            format!("FK{n}: not every normal word checked")
        })?;
        notes.push(format!("FK{n}<={} {elapsed:.1?}", r.degrees_checked));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Outcome {
    let h2 = algebra(2, None).hilbert();
    ensure(braidhopf::report::trim(&h2) == [1, 1], || format!("FK2 {h2:?}"))?;
    let fk3 = algebra(3, None);
    let h3 = fk3.hilbert();
    ensure(h3 == [1, 3, 4, 3, 1, 0, 0], || format!("FK3 {h3:?}"))?;
    ensure(fk3.total_dim() == 12, || "FK3 total".into())?;
    let fk4 = algebra(4, None);
    let h4 = fk4.hilbert();
    ensure(fk4.total_dim() == 576, || format!("FK4 total {}", fk4.total_dim()))?;
    ensure(h4.len() == 14 && h4[12] > 0 && h4[13] == 0, || format!("FK4 {h4:?}"))?;
    for n in [2, 3, 4] {
        let lib = algebra(n, Some(4)).hilbert();
        let raw = common::oracle::dense_hilbert(n, 4, 1_000_003);
        ensure(lib == raw, || format!("FK{n}: degreewise {lib:?} vs raw words {raw:?}"))?;
    }
    Ok("FK2 [1,1], FK3 [1,3,4,3,1], FK4 576 with top degree 12; raw-word cross-check to degree 4".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let family = coideal_family();
    let mut fk3_time = Duration::ZERO;
    for (name, k) in &family {
        let t = Instant::now();
        let r = build_decomposition(k, false).map_err(|e| format!("{name}: {e}"))?;
        if name.starts_with("FK3") {
            fk3_time += t.elapsed();
        }
        ensure(r.coideal, || format!("{name}: coideal check fails"))?;
        let len = r.hilbert_a.len();
        ensure(convolve(&r.hilbert_k, &r.hilbert_abar, len) == r.hilbert_a, || {
            format!("{name}: Hilbert convolution")
        })?;
        ensure(r.section_found, || format!("{name}: no section"))?;
        ensure(
            r.phi_bijective && r.phi_k_linear && r.phi_colinear && r.phi_g_degree && r.phi_n_degree,
            || format!("{name}: phi verdicts {:?}", r.phi_by_degree.iter().find(|d| !d.bijective)),
        )?;
        ensure(r.phi_by_degree.len() == len, || format!("{name}: not every degree checked"))?;
        ensure(r.verdict, || format!("{name}: {:?}", r.failure))?;
    }
    ensure(fk3_time < Duration::from_secs(60), || format!("FK3 sweep took {fk3_time:.2?}"))?;
    Ok(format!(
        "{} coideals (7 for FK3, 6 for FK4 to degree 10); FK3 sweep {fk3_time:.2?}, total {:.2?}",
        family.len(),
        start.elapsed()
    ))
}

fn criterion_4() -> Outcome {
    let fk3 = algebra(3, None);
    let module = fk3.module().clone();
    let free = Arc::new(GradedAlgebra::free(module, 3).expect("free algebra"));
    for (name, alg) in [("FK3", fk3), ("T(V) to degree 3", free)] {
        let k = coideal(&alg, &[0]);
        let r = check_canonical(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.phi_roundtrip, || format!("{name}: Phi^-1 Phi != id"))?;
        ensure(r.kernel.iter().all(|d| d.equal), || {
            format!("{name}: kernel check fails in degree {:?}", r.kernel.iter().find(|d| !d.equal))
        })?;
        ensure(r.kernel.len() == alg.max_degree() + 1, || format!("{name}: degrees missing"))?;
        ensure(r.psi, || format!("{name}: Psi square fails on {:?}", r.psi_witness))?;
    }
    Ok("Phi round trip, ker(can) = im(id (x) mu - mu (x) id), Psi square: FK3 and T(V)".into())
}

fn criterion_5() -> Outcome {
    let fk3 = algebra(3, None);
    let k = coideal(&fk3, &[0]);
    let mut modules = vec![HopfModuleData::of_algebra(&k)];
    for m in 0..=2 {
        modules.push(HopfModuleData::induced(&LeftComodule::trivial_coaction(&fk3, m), &k).map_err(|e| e.to_string())?);
    }
    for m in 1..=2 {
        modules.push(HopfModuleData::induced(&LeftComodule::truncated_algebra(&fk3, m), &k).map_err(|e| e.to_string())?);
    }
    for d in &modules {
        let w = d.check().map_err(|e| e.to_string())?;
        ensure(w.is_none(), || format!("{}: {w:?}", d.name))?;
    }
    let bad = HopfModuleData::with_trivial_action(&k);
    let w = bad.check().map_err(|e| e.to_string())?;
    let w = w.ok_or("trivial-action counterexample passed")?;
    Ok(format!(
        "{} Hopf modules pass; trivial action fails: {} at {} . {} in degree {}",
        modules.len(),
        w.law,
        w.element,
        w.k.unwrap_or_default(),
        w.degree
    ))
}

fn criterion_6() -> Outcome {
    let family = coideal_family();
    for (name, k) in &family {
        let q = QuotientCoalgebra::new(k).map_err(|e| format!("{name}: {e}"))?;
        let r = find_free_basis(&HopfModuleData::of_algebra(k)).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.verdict, || format!("{name}: failed in degree {:?}", r.failed_degree))?;
        ensure(r.bijective_by_degree.iter().all(|&b| b), || format!("{name}: not bijective"))?;
        ensure(r.bijective_by_degree.len() == k.algebra().max_degree() + 1, || {
            format!("{name}: degrees missing")
        })?;
        ensure(r.hilbert_n == q.hilbert(), || format!("{name}: N {:?} vs Abar {:?}", r.hilbert_n, q.hilbert()))?;
    }
    Ok(format!("free bases for {} coideals with N = Abar coefficientwise", family.len()))
}

fn criterion_7() -> Outcome {
    let s = elaborate::<Rational>(&fk(3), None).map_err(|e| e.to_string())?;
    let k = s.coideal("K12").ok_or("no K12")?;
    let q = QuotientCoalgebra::new(k).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for x in [GradedGSpace::unit(&s.group), GradedGSpace::of_algebra(&s.algebra)] {
        let r = HomSolver::new(&q, &x).report();
        ensure(r.dims_equal, || format!("X = {}: {} vs {}", r.x, r.dim_hom, r.dim_hom_colinear))?;
        ensure(r.alpha_beta_identity && r.beta_alpha_identity && r.beta_colinear, || {
            format!("X = {}: maps are not mutually inverse: {r:?}", r.x)
        })?;
        dims.push(format!("X = {}: dim {}", r.x, r.dim_hom));
    }
    Ok(dims.join(", "))
}

fn criterion_8() -> Outcome {
    let mut round_trips = 0;
    for path in all_documents() {
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        if let Ok(doc) = parse(&text) {
            let printed = print(&doc);
            let again = parse(&printed).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure(again == doc && print(&again) == printed, || format!("{}: round trip", path.display()))?;
            round_trips += 1;
        }
    }
    let fk3 = fixture("fk3.bha").to_string_lossy().into_owned();
    let out = bha(&["decompose", &fk3, "--coideal", "K12", "--format", "json", "--no-timing"]);
    let golden = std::fs::read_to_string(fixture("golden/fk3.decompose.K12.json")).map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || "decompose exit status".into())?;
    ensure(stdout(&out) == golden, || "golden report differs".into())?;
    let timed = bha(&["decompose", &fk3, "--coideal", "K12", "--format", "json"]);
    let mut v: serde_json::Value = serde_json::from_str(&stdout(&timed)).map_err(|e| e.to_string())?;
    v.as_object_mut().and_then(|o| o.remove("timing")).ok_or("no timing key")?;
    ensure(v == serde_json::from_str::<serde_json::Value>(&golden).unwrap(), || {
        "report without timing differs from golden".into()
    })?;
    let broken = fixture("broken.bha").to_string_lossy().into_owned();
    ensure(bha(&["decompose", &broken, "--coideal", "X"]).status.code() == Some(1), || "broken.bha should exit 1".into())?;
    let mut negatives = 0;
    for path in all_documents().iter().filter(|p| p.parent().is_some_and(|d| d.ends_with("negative"))) {
        let code = bha(&["run", &path.to_string_lossy()]).status.code();
        ensure(code == Some(2), || format!("{} exits {code:?}", path.display()))?;
        negatives += 1;
    }
    Ok(format!(
        "{round_trips} fixtures round-trip, golden reproduced, broken exits 1, {negatives} input errors exit 2"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("axiom suites", criterion_1),
        ("Fomin-Kirillov dimensions", criterion_2),
        ("decomposition K (x) Abar = A", criterion_3),
        ("canonical map, Phi and Psi", criterion_4),
        ("Hopf-module law", criterion_5),
        ("freeness", criterion_6),
        ("colinear Hom bijection", criterion_7),
        ("DSL and CLI", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} ({name}): PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
