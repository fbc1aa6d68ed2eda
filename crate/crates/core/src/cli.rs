//! The `bha` command line: argument parsing, task execution and exit codes.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use crate::axioms::{check_axioms, AxiomConfig};
use crate::canonical::check_canonical;
use crate::coideal::{CoidealSubalgebra, QuotientCoalgebra};
use crate::decomp::build_decomposition;
use crate::dsl::{elaborate, fk, parse, print, Session, SpecDocument, TaskDecl, TaskKind};
use crate::field::{set_modulus, Field, Fp, Rational};
use crate::hom::{GradedGSpace, HomSolver};
use crate::hopf_module::{find_free_basis, HopfModuleData, LeftComodule};
use crate::report::*;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "bha", version, about = "Exact checks for graded braided Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Override the truncation degree declared in the document.
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// `q` for the rationals, `fp:<p>` for a prime field.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldChoice,
    /// Seed for randomized sampling in property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for per-degree verification.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Leave the `timing` object out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Yetter-Drinfeld condition, braided Hopf axioms and coideal checks.
    Check { file: PathBuf },
    /// Hilbert series of the algebra.
    Hilbert { file: PathBuf },
    /// Build and verify K (x) Abar -> A.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        coideal: String,
    },
    /// The canonical map, Phi, Psi, and the colinear Hom bijection.
    Canmap {
        file: PathBuf,
        #[arg(long)]
        coideal: String,
    },
    /// Free basis of A as a right K-module.
    Freeness {
        file: PathBuf,
        #[arg(long)]
        coideal: String,
    },
    /// Hopf-module law for A and U (x) K (all coideals unless one is named).
    Hopfmod {
        file: PathBuf,
        #[arg(long)]
        coideal: Option<String>,
    },
    /// The Fomin-Kirillov document FK(n): print it, or run its tasks.
    Fk {
        n: usize,
        #[arg(long)]
        emit: bool,
    },
    /// Run the task list declared in the document.
    Run { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Fp(u64),
}

impl FieldChoice {
    fn name(self) -> String {
        match self {
            FieldChoice::Q => "Q".into(),
            FieldChoice::Fp(p) => format!("F_{p}"),
        }
    }
}

fn parse_field(s: &str) -> std::result::Result<FieldChoice, String> {
    if s == "q" || s == "Q" {
        return Ok(FieldChoice::Q);
    }
    s.strip_prefix("fp:")
        .and_then(|p| p.parse().ok())
        .map(FieldChoice::Fp)
        .ok_or_else(|| format!("expected `q` or `fp:<prime>`, got `{s}`"))
}

/// What a run writes to stdout and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
    pub report: Option<RunReport>,
}

/// Parses the process arguments, runs, prints, and maps errors to exit
/// status 2.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

struct Input {
    command: String,
    digest: String,
    doc: SpecDocument,
    /// Tasks to run; `None` means the document's own list.
    tasks: Option<Vec<TaskDecl>>,
}

fn task(kind: TaskKind, args: Vec<String>) -> TaskDecl {
    TaskDecl {
        kind,
        args,
        span: Default::default(),
    }
}

fn read_doc(path: &PathBuf) -> Result<(String, SpecDocument)> {
    let bytes = std::fs::read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).map_err(|_| Error::Usage(format!("{} is not UTF-8", path.display())))?;
    Ok((digest, parse(&text)?))
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let input = match &cli.command {
        Command::Fk { n, emit } => {
            if *n < 2 {
                return Err(Error::Usage("fk needs n >= 2".into()));
            }
            let doc = fk(*n);
            let text = print(&doc);
            if *emit {
                return Ok(Outcome {
                    stdout: text,
                    code: 0,
                    report: None,
                });
            }
            Input {
                command: format!("fk {n}"),
                digest: hex::encode(Sha256::digest(text.as_bytes())),
                doc,
                tasks: None,
            }
        }
        Command::Run { file } => {
            let (digest, doc) = read_doc(file)?;
            Input {
                command: "run".into(),
                digest,
                doc,
                tasks: None,
            }
        }
        Command::Check { file } | Command::Hilbert { file } => {
            let (digest, doc) = read_doc(file)?;
            let kind = if matches!(cli.command, Command::Check { .. }) {
                TaskKind::Check
            } else {
                TaskKind::Hilbert
            };
            Input {
                command: kind.keyword().into(),
                digest,
                doc,
                tasks: Some(vec![task(kind, vec![])]),
            }
        }
        Command::Decompose { file, coideal }
        | Command::Canmap { file, coideal }
        | Command::Freeness { file, coideal } => {
            let (digest, doc) = read_doc(file)?;
            let kind = match cli.command {
                Command::Decompose { .. } => TaskKind::Decompose,
                Command::Canmap { .. } => TaskKind::Canmap,
                _ => TaskKind::Freeness,
            };
            Input {
                command: format!("{} {coideal}", kind.keyword()),
                digest,
                doc,
                tasks: Some(vec![task(kind, vec![coideal.clone()])]),
            }
        }
        Command::Hopfmod { file, coideal } => {
            let (digest, doc) = read_doc(file)?;
            let args = coideal.iter().cloned().collect();
            Input {
                command: "hopfmod".into(),
                digest,
                doc,
                tasks: Some(vec![task(TaskKind::Hopfmod, args)]),
            }
        }
    };
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cli.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))?
    };
    let report = pool.install(|| match cli.field {
        FieldChoice::Q => run_tasks::<Rational>(cli, &input),
        FieldChoice::Fp(p) => {
            set_modulus(p)?;
            run_tasks::<Fp>(cli, &input)
        }
    })?;
    let code = if report.status == Status::Pass { 0 } else { 1 };
    let stdout = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(&report),
    };
    Ok(Outcome {
        stdout,
        code,
        report: Some(report),
    })
}

fn run_tasks<F: Field>(cli: &Cli, input: &Input) -> Result<RunReport> {
    let mut timing = BTreeMap::new();
    let start = Instant::now();
    let session = elaborate::<F>(&input.doc, cli.max_degree)?;
    timing.insert("elaborate_s".to_string(), start.elapsed().as_secs_f64());
    let tasks = input.tasks.as_ref().unwrap_or(&input.doc.tasks);
    let mut reports = Vec::new();
    for t in tasks {
        let names: Vec<String> = match (t.kind, t.args.is_empty()) {
            (TaskKind::Hopfmod, true) => session.coideals.iter().map(|(n, _)| n.clone()).collect(),
            _ => t.args.clone(),
        };
        let started = Instant::now();
        let mut batch = Vec::new();
        match t.kind {
            TaskKind::Check => batch.push(run_check(&session, cli.seed)),
            TaskKind::Hilbert => batch.push(run_hilbert(&session)),
            _ => {
                for name in &names {
                    let k = session
                        .coideal(name)
                        .ok_or_else(|| Error::Usage(format!("no coideal named `{name}` in the document")))?;
                    let label = format!("{} {name}", t.kind.keyword());
                    let r = match t.kind {
                        TaskKind::Decompose => run_decompose(name, k),
                        TaskKind::Canmap => run_canmap(&session, name, k),
                        TaskKind::Freeness => run_freeness(name, k),
                        _ => run_hopfmod(name, k),
                    };
                    batch.push(match r {
                        Ok(r) => r,
                        Err(e) if e.is_input_error() => return Err(e),
                        Err(e) => TaskReport::Failed(FailedTask {
                            label,
                            failure: e.to_string(),
                        }),
                    });
                }
            }
        }
        let secs = started.elapsed().as_secs_f64();
        for r in &batch {
            timing.insert(format!("{} {}", reports.len(), r.label()), secs / batch.len() as f64);
            reports.push(r.clone());
        }
    }
    timing.insert("total_s".to_string(), start.elapsed().as_secs_f64());
    let status = if reports.iter().all(TaskReport::verdict) {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(RunReport {
        tool: "bha",
        version: env!("CARGO_PKG_VERSION"),
        command: input.command.clone(),
        input_digest: input.digest.clone(),
        field: cli.field.name(),
        max_degree: session.algebra.max_degree(),
        seed: cli.seed,
        tasks: reports,
        status,
        timing: (!cli.no_timing).then_some(timing),
    })
}

fn run_check<F: Field>(s: &Session<F>, seed: u64) -> TaskReport {
    let yd = s.module().check_yd();
    let axioms = check_axioms(
        &s.algebra,
        &AxiomConfig {
            seed,
            ..Default::default()
        },
    );
    let coideals: Vec<CoidealEntry> = s
        .coideals
        .iter()
        .map(|(name, k)| {
            let witness = k.check_left_coideal();
            CoidealEntry {
                name: name.clone(),
                hilbert: k.hilbert(),
                left_coideal: witness.is_none(),
                witness,
            }
        })
        .collect();
    let verdict = yd.is_none() && axioms.verdict && coideals.iter().all(|c| c.left_coideal);
    TaskReport::Check(CheckTask {
        yd_module: yd.is_none(),
        yd_witness: yd.map(|w| format!("{w:?}")),
        axioms,
        coideals,
        verdict,
    })
}

fn run_hilbert<F: Field>(s: &Session<F>) -> TaskReport {
    let a = &s.algebra;
    let hilbert = a.hilbert();
    let top_degree = trim(&hilbert).len().saturating_sub(1);
    TaskReport::Hilbert(HilbertTask {
        degrees_checked: a.max_degree(),
        total: a.total_dim(),
        top_degree,
        stabilized: top_degree < a.max_degree(),
        hilbert,
        verdict: true,
    })
}

fn run_decompose<F: Field>(name: &str, k: &Arc<CoidealSubalgebra<F>>) -> Result<TaskReport> {
    Ok(TaskReport::Decompose(DecomposeTask {
        coideal: name.into(),
        report: build_decomposition(k, true)?,
    }))
}

fn run_canmap<F: Field>(s: &Session<F>, name: &str, k: &Arc<CoidealSubalgebra<F>>) -> Result<TaskReport> {
    k.require_left_coideal()?;
    let canonical = check_canonical(k)?;
    let q = QuotientCoalgebra::new(k)?;
    let hom: Vec<_> = [GradedGSpace::unit(&s.group), GradedGSpace::of_algebra(&s.algebra)]
        .iter()
        .map(|x| HomSolver::new(&q, x).report())
        .collect();
    let verdict = canonical.verdict && hom.iter().all(|h| h.verdict);
    Ok(TaskReport::Canmap(CanmapTask {
        coideal: name.into(),
        canonical,
        hom,
        verdict,
    }))
}

fn run_freeness<F: Field>(name: &str, k: &Arc<CoidealSubalgebra<F>>) -> Result<TaskReport> {
    k.require_left_coideal()?;
    let q = QuotientCoalgebra::new(k)?;
    let free_basis = find_free_basis(&HopfModuleData::of_algebra(k))?;
    let matches_abar = free_basis.hilbert_n == q.hilbert();
    Ok(TaskReport::Freeness(FreenessTask {
        coideal: name.into(),
        hilbert_abar: q.hilbert(),
        verdict: free_basis.verdict && matches_abar,
        free_basis,
        matches_abar,
    }))
}

fn hopf_entry<F: Field>(d: &HopfModuleData<F>) -> Result<HopfEntry> {
    let witness = d.check()?;
    Ok(HopfEntry {
        module: d.name.clone(),
        dims: d.dims(),
        hopf_module: witness.is_none(),
        witness,
    })
}

fn run_hopfmod<F: Field>(name: &str, k: &Arc<CoidealSubalgebra<F>>) -> Result<TaskReport> {
    k.require_left_coideal()?;
    let alg = k.algebra();
    let mut data = vec![HopfModuleData::of_algebra(k)];
    for m in 0..=2.min(alg.max_degree()) {
        data.push(HopfModuleData::induced(&LeftComodule::trivial_coaction(alg, m), k)?);
    }
    for m in 1..=2.min(alg.max_degree()) {
        data.push(HopfModuleData::induced(&LeftComodule::truncated_algebra(alg, m), k)?);
    }
    let modules = data.iter().map(hopf_entry).collect::<Result<Vec<_>>>()?;
    let counterexample = hopf_entry(&HopfModuleData::with_trivial_action(k))?;
    // The counterexample must fail unless K is trivial.
    let expected_failure = k.hilbert().iter().skip(1).any(|&d| d > 0);
    let verdict = modules.iter().all(|m| m.hopf_module)
        && counterexample.hopf_module != expected_failure
        && (counterexample.witness.is_some() == expected_failure);
    Ok(TaskReport::Hopfmod(HopfmodTask {
        coideal: name.into(),
        modules,
        counterexample,
        verdict,
    }))
}
