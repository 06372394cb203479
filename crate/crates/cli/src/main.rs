//! `normevs` command-line front end.
//!
//! Exit codes: `compare` returns 0 (equivalent), 1 (not equivalent) or 2
//! (undetermined); the other commands return 0 on success and 1 when the
//! check fails. Usage and parse errors exit with 64, runtime errors with 3.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normevs::comparing::{
    equivalence_verdict, family_scan, nonequivalence_witness, ComparingConfig, ComparingResult,
    EquivalenceVerdict, FamilyScan, Space, WitnessError,
};
use normevs::evs::AxiomReport;
use normevs::instances::{check_instance, InstanceId};
use normevs::json::{to_line, to_pretty};
use normevs::NormExpr;

const EXIT_USAGE: u8 = 64;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(name = "normevs", version, about = "Norm comparison and evs axiom checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceKind {
    Rn,
    C00,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two norms are equivalent.
    Compare {
        /// Reference norm, e.g. "p(1)".
        f: String,
        /// Compared norm, e.g. "sup".
        g: String,
        /// Dimension of R^n (defaults to the weight length, else 2).
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = SpaceKind::Rn)]
        space: SpaceKind,
        /// Number of pattern-search starts.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Step-size floor of the pattern search.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Check the evs axioms A1-A6 and the derived properties on samples.
    CheckAxioms {
        /// One of norms, hyperspace, cone.
        instance: String,
        /// n for N(R^n), ambient dimension for point sets, m for the cone.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of sampled elements.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Number of sampled scalars.
        #[arg(long, default_value_t = 8)]
        scalars: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Print a witness sequence as JSON lines (n, vector, ratio, formula_ratio).
    Witness {
        /// c00_sup_vs_one, hamel_sup_vs_one or p_vs_q.
        family: String,
        /// Larger exponent of p_vs_q.
        #[arg(short = 'p')]
        p: Option<f64>,
        /// Smaller exponent of p_vs_q.
        #[arg(short = 'q')]
        q: Option<f64>,
        /// Number of terms.
        #[arg(short = 'N', default_value_t = 10)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Certify pairwise non-equivalence of p-norms on c00.
    FamilyScan {
        /// Exponents, e.g. 1 2 4 inf.
        #[arg(num_args = 0..)]
        p_values: Vec<f64>,
        /// Witness length used to check each pair.
        #[arg(short = 'N', default_value_t = 64)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let common = match &cli.command {
        Command::Compare { common, .. }
        | Command::CheckAxioms { common, .. }
        | Command::Witness { common, .. }
        | Command::FamilyScan { common, .. } => common,
    };
    let result = match &cli.command {
        Command::Compare {
            f,
            g,
            dim,
            space,
            samples,
            tol,
            common,
        } => compare(f, g, *dim, *space, *samples, *tol, common),
        Command::CheckAxioms {
            instance,
            dim,
            samples,
            scalars,
            common,
        } => check_axioms(instance, *dim, *samples, *scalars, common),
        Command::Witness {
            family,
            p,
            q,
            n,
            common,
        } => witness(family, *p, *q, *n, common),
        Command::FamilyScan { p_values, n, common } => scan(p_values, *n, common),
    };
    match result {
        Ok((report, code)) => match emit(&report, common) {
            Ok(()) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_RUNTIME)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}

fn emit(report: &str, common: &Common) -> std::io::Result<()> {
    match &common.output {
        Some(path) => fs::write(path, report),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn compare(
    f: &str,
    g: &str,
    dim: Option<usize>,
    space: SpaceKind,
    samples: usize,
    tol: f64,
    common: &Common,
) -> Outcome {
    let parse = |s: &str| {
        s.parse::<NormExpr>()
            .map_err(|e| Failure::Usage(format!("cannot parse norm '{s}': {e}")))
    };
    let (f, g) = (parse(f)?, parse(g)?);
    if tol.is_nan() || tol <= 0.0 {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let space = match space {
        SpaceKind::C00 => {
            if dim.is_some() {
                return Err(Failure::Usage("--dim is meaningless with --space c00".into()));
            }
            Space::C00
        }
        SpaceKind::Rn => {
            let pinned = |e: &NormExpr| e.required_dim().ok().flatten();
            let n = dim.or(pinned(&f)).or(pinned(&g)).unwrap_or(2);
            if n == 0 {
                return Err(Failure::Usage("--dim must be at least 1".into()));
            }
            Space::Rn(n)
        }
    };
    let config = ComparingConfig {
        starts: samples,
        tol_opt: tol,
        seed: common.seed,
        ..ComparingConfig::default()
    };
    let verdict = equivalence_verdict(&f, &g, space, &config).map_err(|e| match e {
        normevs::comparing::ComparingError::SandwichViolation { .. } => Failure::Runtime(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })?;
    let code = match verdict.equivalent {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    };
    let report = match common.format {
        Format::Json => to_pretty(&verdict) + "\n",
        Format::Text => verdict_text(&verdict),
    };
    Ok((report, code))
}

fn result_text(r: &ComparingResult) -> String {
    let how = match r.method {
        normevs::comparing::Method::ClosedForm => "closed form",
        normevs::comparing::Method::WitnessFamily => "witness family",
        normevs::comparing::Method::Minimization => "minimization",
    };
    match r.value() {
        Some(v) => format!("{v} (exact, {how})"),
        None => format!("[{}, {}] (bracketed, {how})", r.lower, r.upper),
    }
}

fn verdict_text(v: &EquivalenceVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f          {}", v.f);
    let _ = writeln!(s, "g          {}", v.g);
    let _ = writeln!(s, "space      {}", v.space);
    let _ = writeln!(s, "C_f(g)     {}", result_text(&v.c_fg));
    let _ = writeln!(s, "C_g(f)     {}", result_text(&v.c_gf));
    match v.psi.value() {
        Some(p) => {
            let _ = writeln!(s, "psi        {p}");
        }
        None => {
            let _ = writeln!(s, "psi        [{}, {}]", v.psi.lower, v.psi.upper);
        }
    }
    let verdict = match v.equivalent {
        Some(true) => "equivalent",
        Some(false) => "not equivalent",
        None => "undetermined",
    };
    let _ = writeln!(s, "verdict    {verdict}");
    if let Some(sw) = &v.sandwich {
        let _ = writeln!(s, "sandwich   {} f <= g <= {} f", sw.lambda, sw.mu);
    }
    if let Some(w) = &v.divergence_witness {
        let _ = writeln!(
            s,
            "witness    {} ({} / {} along x_n, factor {})",
            w.family.id(),
            w.target,
            w.reference,
            w.factor
        );
        for row in w.rows(5) {
            let _ = writeln!(s, "  n={:<3} ratio {}  {}", row.n, row.ratio, row.vector);
        }
    }
    s
}

fn check_axioms(instance: &str, dim: usize, samples: usize, scalars: usize, common: &Common) -> Outcome {
    let id: InstanceId = instance.parse().map_err(Failure::Usage)?;
    if dim == 0 {
        return Err(Failure::Usage("--dim must be at least 1".into()));
    }
    let report: AxiomReport = check_instance(id, dim, common.seed, samples, scalars).map_err(|e| match e {
        normevs::evs::EvsError::TooFewSamples(_) => Failure::Usage(e.to_string()),
        other => Failure::Runtime(other.to_string()),
    })?;
    let code = if report.axioms_pass() { 0 } else { 1 };
    let text = match common.format {
        Format::Json => to_pretty(&report) + "\n",
        Format::Text => report.to_string(),
    };
    Ok((text, code))
}

fn witness_failure(e: WitnessError) -> Failure {
    match e {
        WitnessError::Mismatch { .. } | WitnessError::NotMonotone { .. } => Failure::Runtime(e.to_string()),
        other => Failure::Usage(other.to_string()),
    }
}

fn witness(family: &str, p: Option<f64>, q: Option<f64>, n: usize, common: &Common) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("-N must be at least 1".into()));
    }
    let seq = nonequivalence_witness(family, p, q, n).map_err(witness_failure)?;
    let mut out = String::new();
    for row in seq.rows(n) {
        match common.format {
            Format::Json => out.push_str(&to_line(&row)),
            Format::Text => {
                let _ = write!(
                    out,
                    "n={:<4} ratio {:<22} formula {:<22} {}",
                    row.n, row.ratio, row.formula_ratio, row.vector
                );
            }
        }
        out.push('\n');
    }
    Ok((out, 0))
}

fn scan_text(scan: &FamilyScan) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "exponents {:?}, n_check {}", scan.p_values, scan.n_check);
    for e in &scan.pairs {
        let status = match &e.status {
            normevs::comparing::PairStatus::NonequivalentCertified => "nonequivalent_certified".to_string(),
            normevs::comparing::PairStatus::Error(m) => format!("error: {m}"),
        };
        let _ = writeln!(s, "  p={:<5} q={:<5} {status}  last ratio {}", e.p, e.q, e.last_ratio);
    }
    s
}

fn scan(p_values: &[f64], n: usize, common: &Common) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("-N must be at least 1".into()));
    }
    let scan = family_scan(p_values, n).map_err(witness_failure)?;
    let code = if scan.all_certified() { 0 } else { 1 };
    let text = match common.format {
        Format::Json => to_pretty(&scan) + "\n",
        Format::Text => scan_text(&scan),
    };
    Ok((text, code))
}
