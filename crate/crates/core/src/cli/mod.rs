//! The `minorforge` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 input error,
//! 3 resource cap.

pub mod bundles;

use crate::detideal::{
    build_family, check_hypotheses, height_profile, minors_ideal, perturb_matrix, Hypotheses, LinearMatrix,
};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Limits};
use crate::powers::linear_powers_check;
use crate::rees::{classify, ReesOptions};
use crate::resolve::{betti_table, linearity, quotient_betti_table};
use crate::ring::{MonomialOrder, Ring};
use bundles::{run_bundle, BundleConfig, Check, Status, BUNDLES};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Duration;

#[derive(Debug, Parser)]
#[command(name = "minorforge", version, about = "Ideals of minors, resolutions and Rees algebras over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Characteristic of the coefficient field.
    #[arg(long = "char", global = true, default_value_t = 32003)]
    pub characteristic: u64,
    /// Seed for random linear forms and perturbations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest power tested.
    #[arg(long, global = true, default_value_t = 3)]
    pub kmax: u32,
    /// Monomial order: degrevlex, lex, elim:<k> or weight:<w1,..>.
    #[arg(long, global = true, default_value = "degrevlex")]
    pub order: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest number of variables of S[y] for which reg_(1,0) is computed.
    #[arg(long, global = true, default_value_t = 12)]
    pub budget: usize,
    /// S-pair cap per Gröbner basis computation.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub max_pairs: u64,
    /// Wall-clock cap per Gröbner basis computation, in seconds (0 disables).
    #[arg(long, global = true, default_value_t = 600)]
    pub timeout: u64,
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            max_pairs: self.max_pairs,
            timeout: (self.timeout > 0).then(|| Duration::from_secs(self.timeout)),
        }
    }

    fn bundle_config(&self) -> BundleConfig {
        BundleConfig {
            p: self.characteristic,
            seed: self.seed,
            kmax: self.kmax,
            reg10_budget: self.budget,
            limits: self.limits(),
        }
    }
}

/// Where an ideal comes from.
#[derive(Debug, Clone, Args)]
pub struct IdealInput {
    /// Ideal JSON file `{"ring": {...}, "gens": [...]}`.
    #[arg(long, conflicts_with_all = ["matrix", "family", "gens"])]
    pub ideal: Option<PathBuf>,
    #[command(flatten)]
    pub matrix: MatrixInput,
    /// Size of the minors taken from a matrix (default: maximal minors).
    #[arg(long)]
    pub j: Option<usize>,
    /// Comma separated generators, e.g. `x^2,x*y`.
    #[arg(long, value_delimiter = ',', requires = "vars")]
    pub gens: Vec<String>,
    /// Comma separated variable names for `--gens`.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
}

/// Where a matrix of linear forms comes from.
#[derive(Debug, Clone, Args)]
pub struct MatrixInput {
    /// Matrix JSON file `{"ring": {...}?, "rows": [[...], ...]}`.
    #[arg(long, conflicts_with = "family")]
    pub matrix: Option<PathBuf>,
    /// Family spec: generic:MxN, symmetric:N, scroll:a,b,.., paper:m3x5, paper:m4x5, custom:<file>.
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb(IdealInput),
    /// Graded Betti numbers of the ideal (or of S/I with --quotient).
    Betti {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long)]
        quotient: bool,
    },
    /// Regularity and projective dimension of the ideal.
    Reg(IdealInput),
    /// Minimal generators of the ideal of j-minors.
    Minors {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Heights of all ideals of minors.
    Heights(MatrixInput),
    /// Evaluates the height hypotheses (mainThm or ABWEH).
    CheckHypotheses {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long = "hyp", default_value = "mainThm")]
        hypotheses: String,
    },
    /// Rees algebra presentation and classification.
    Rees(IdealInput),
    /// Regularity of the powers up to --kmax.
    LinearPowers(IdealInput),
    /// Perturbs a matrix by yA with a seeded random A.
    Perturb {
        #[command(flatten)]
        input: MatrixInput,
        /// Skip the height comparison.
        #[arg(long)]
        no_check: bool,
    },
    /// Runs regression bundles for the worked examples.
    PaperExamples {
        /// Bundle id or `all`.
        #[arg(default_value = "all")]
        id: String,
    },
}

/// Exit code and the text to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource_cap() {
        3
    } else {
        2
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match cli.config.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_matrix(input: &MatrixInput, cfg: &RunConfig) -> Result<LinearMatrix> {
    match (&input.matrix, &input.family) {
        (Some(path), _) => LinearMatrix::from_json(&read(path)?, cfg.characteristic),
        (None, Some(spec)) => build_family(spec, cfg.characteristic),
        (None, None) => Err(Error::InvalidArgument("give --matrix or --family".into())),
    }
}

fn stem(path: &std::path::Path) -> String {
    path.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().replace(' ', "_"))
}

/// The ideal and a short label for report headers.
fn load_ideal(input: &IdealInput, cfg: &RunConfig) -> Result<(Ideal, String)> {
    let (ideal, label) = if let Some(path) = &input.ideal {
        (Ideal::from_json(&read(path)?)?, stem(path))
    } else if !input.gens.is_empty() {
        let names: Vec<&str> = input.vars.iter().map(|s| s.trim()).collect();
        let ring = Ring::standard(&names, cfg.characteristic)?;
        let gens: Vec<&str> = input.gens.iter().map(|s| s.trim()).collect();
        (Ideal::parse(&ring, &gens)?, "I".to_string())
    } else if input.matrix.matrix.is_some() || input.matrix.family.is_some() {
        let x = load_matrix(&input.matrix, cfg)?;
        let j = input.j.unwrap_or(x.nrows());
        let base = match (&input.matrix.matrix, &input.matrix.family) {
            (Some(path), _) => stem(path),
            (None, Some(spec)) => spec.replace(' ', ""),
            (None, None) => unreachable!(),
        };
        (minors_ideal(&x, j)?, format!("{base}/I{j}"))
    } else {
        return Err(Error::InvalidArgument("give --ideal, --gens with --vars, --matrix or --family".into()));
    };
    Ok((ideal.with_limits(cfg.limits()), label))
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let cfg = &cli.config;
    let order: MonomialOrder = cfg.order.parse()?;
    let mut out = String::new();
    match &cli.command {
        Command::Gb(input) => {
            let (ideal, _) = load_ideal(input, cfg)?;
            let gb = ideal.groebner_basis_for(order)?;
            let mut gens: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
            gens.sort();
            match cfg.format {
                Format::Json => out = json(&serde_json::json!({ "order": cfg.order, "gb": gens }))?,
                Format::Text => gens.iter().for_each(|g| {
                    let _ = writeln!(out, "{g}");
                }),
            }
        }
        Command::Betti { input, quotient } => {
            let (ideal, label) = load_ideal(input, cfg)?;
            let table = if *quotient {
                quotient_betti_table(&ideal)?.with_id(format!("{label}/quotient"))
            } else {
                betti_table(&ideal)?.with_id(label)
            };
            out = match cfg.format {
                Format::Json => json(&table)?,
                Format::Text => table.to_text(),
            };
        }
        Command::Reg(input) => {
            let (ideal, _) = load_ideal(input, cfg)?;
            let table = betti_table(&ideal)?;
            let lin = linearity(&ideal)?;
            let report = serde_json::json!({
                "reg": table.regularity()?,
                "projdim": table.projdim(),
                "linear": lin.linear,
                "reason": lin.reason,
            });
            out = match cfg.format {
                Format::Json => json(&report)?,
                Format::Text => {
                    let mut s = format!("reg {}\nprojdim {}\nlinear {}", report["reg"], report["projdim"], lin.linear);
                    if let Some(r) = &lin.reason {
                        let _ = write!(s, " ({r})");
                    }
                    s.push('\n');
                    s
                }
            };
        }
        Command::Minors { input, j } => {
            let x = load_matrix(input, cfg)?;
            let j = j.unwrap_or(x.nrows());
            let gens: Vec<String> = minors_ideal(&x, j)?.generators().iter().map(|g| g.to_string()).collect();
            match cfg.format {
                Format::Json => out = json(&serde_json::json!({ "j": j, "minors": gens }))?,
                Format::Text => gens.iter().for_each(|g| {
                    let _ = writeln!(out, "{g}");
                }),
            }
        }
        Command::Heights(input) => {
            let x = load_matrix(input, cfg)?;
            let mut profile = height_profile(&x)?;
            profile.sort_by(|a, b| b.0.cmp(&a.0));
            match cfg.format {
                Format::Json => {
                    let v: Vec<_> = profile.iter().map(|&(j, h)| serde_json::json!({"j": j, "height": h})).collect();
                    out = json(&v)?;
                }
                Format::Text => profile.iter().for_each(|(j, h)| {
                    let _ = writeln!(out, "I{j}: {h}");
                }),
            }
        }
        Command::CheckHypotheses { input, hypotheses } => {
            let x = load_matrix(input, cfg)?;
            let which: Hypotheses = hypotheses.parse()?;
            let r = check_hypotheses(&x, which)?;
            out = match cfg.format {
                Format::Json => json(&r)?,
                Format::Text => {
                    let mut s = format!("m {} n {} N {} p {:?}\n", r.m, r.n, r.big_n, r.p);
                    for c in &r.conditions {
                        let _ = writeln!(
                            s,
                            "height I{} = {} >= {}: {}",
                            c.j, c.actual, c.required, c.satisfied
                        );
                    }
                    let _ = writeln!(s, "verdict {}", r.verdict);
                    s
                }
            };
        }
        Command::Rees(input) => {
            let (ideal, _) = load_ideal(input, cfg)?;
            let opts = ReesOptions {
                reg10_budget: cfg.budget,
                extra_orders: if order == MonomialOrder::DegRevLex {
                    vec![]
                } else {
                    vec![(cfg.order.clone(), order)]
                },
            };
            let c = classify(&ideal, &opts)?;
            let report = c.report();
            if c.fiber_type != c.fiber_type_by_bidegree {
                out = json(&report)?;
                let _ = writeln!(out, "FAIL: the fiber-type criteria disagree");
                return Ok((1, out));
            }
            out = match cfg.format {
                Format::Json => json(&report)?,
                Format::Text => {
                    let mut s = format!("mu {}\n", report.mu);
                    for (g, b) in report.p_gens.iter().zip(&report.bidegrees) {
                        let _ = writeln!(s, "({}, {}) {g}", b[0], b[1]);
                    }
                    let _ = writeln!(s, "linear type {}", report.linear_type);
                    let _ = writeln!(s, "fiber type {}", report.fiber_type);
                    for (o, q) in &report.quadratic_gb {
                        let _ = writeln!(s, "quadratic GB in {o}: {}", if *q { "found" } else { "not found" });
                    }
                    match c.reg10 {
                        Some(r) => {
                            let _ = writeln!(s, "reg10 {r}");
                        }
                        None => s.push_str("reg10 skipped: budget\n"),
                    }
                    s
                }
            };
        }
        Command::LinearPowers(input) => {
            let (ideal, _) = load_ideal(input, cfg)?;
            let r = linear_powers_check(&ideal, cfg.kmax)?;
            out = match cfg.format {
                Format::Json => json(&r)?,
                Format::Text => {
                    let mut s = format!("d {}\n", r.d);
                    for row in &r.powers {
                        match (row.reg, row.linear) {
                            (Some(reg), Some(lin)) => {
                                let _ = writeln!(
                                    s,
                                    "k={} reg {reg} expected {} {}",
                                    row.k,
                                    row.expected,
                                    if lin { "linear" } else { "not linear" }
                                );
                            }
                            _ => {
                                let _ = writeln!(s, "k={} {}", row.k, row.error.as_deref().unwrap_or(""));
                            }
                        }
                    }
                    let _ = writeln!(s, "verdict: {}", r.verdict);
                    s
                }
            };
            if r.powers.iter().any(|row| row.capped) {
                return Ok((3, out));
            }
        }
        Command::Perturb { input, no_check } => {
            let x = load_matrix(input, cfg)?;
            let p = perturb_matrix(&x, cfg.seed, !no_check)?;
            let report = serde_json::json!({
                "seed": p.seed,
                "A": p.a,
                "matrix": p.matrix.to_json(),
                "heights": p.heights.as_ref().map(|h| h.iter().map(|&(j, a, b)| serde_json::json!({"j": j, "before": a, "after": b})).collect::<Vec<_>>()),
            });
            out = match cfg.format {
                Format::Json => json(&report)?,
                Format::Text => {
                    let mut s = format!("seed {}\n{}", p.seed, p.matrix);
                    for (j, a, b) in p.heights.iter().flatten() {
                        let _ = writeln!(s, "I{j}: {a} -> {b}");
                    }
                    s
                }
            };
        }
        Command::PaperExamples { id } => {
            let ids: Vec<&str> = if id == "all" { BUNDLES.to_vec() } else { vec![id.as_str()] };
            let bc = cfg.bundle_config();
            let mut checks: Vec<Check> = vec![];
            for id in ids {
                checks.extend(run_bundle(id, &bc)?);
            }
            return Ok(bundle_output(&checks, cfg.format));
        }
    }
    Ok((0, out))
}

fn bundle_output(checks: &[Check], format: Format) -> (i32, String) {
    let first_fail = checks.iter().find(|c| c.status == Status::Fail);
    let capped = checks.iter().any(|c| c.status == Status::Capped);
    let code = if first_fail.is_some() {
        1
    } else if capped {
        3
    } else {
        0
    };
    let out = match format {
        Format::Json => {
            let v = serde_json::json!({
                "checks": checks,
                "first_failure": first_fail.map(|c| format!("{}/{}: {}", c.bundle, c.name, c.claim)),
                "passed": code == 0,
            });
            json(&v).unwrap_or_default()
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Capped => "CAP ",
                };
                let _ = write!(s, "[{tag}] {}/{}: {}", c.bundle, c.name, c.claim);
                if !c.detail.is_empty() {
                    let _ = write!(s, " [{}]", c.detail);
                }
                s.push('\n');
            }
            if let Some(c) = first_fail {
                let _ = writeln!(s, "first failure: {}/{}: {}", c.bundle, c.name, c.claim);
            }
            let n = checks.iter().filter(|c| c.passed()).count();
            let _ = writeln!(s, "{n}/{} checks passed", checks.len());
            s
        }
    };
    (code, out)
}
