//! Command-line front end: decide separability of pure-state files, compute
//! entanglement measures, factor separable states, generate test states, and
//! compare two-qubit states for local-unitary equivalence.
//!
//! Exit codes: 0 = separable / success / equivalent, 1 = entangled / not
//! equivalent, 2 = input or usage error. Reports go to stdout as JSON,
//! diagnostics to stderr.

mod report;
mod statefile;

use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use qsep_core::{
    d_e, det_invariant, factor, ghz, is_separable_minors, is_separable_pairs, lu_equiv_two_qubit,
    oracle_separable, random_product_state, random_state, schmidt_two_qubit, w, FactorError,
    PureState, Verdict, DEFAULT_FACTOR_TOL, DEFAULT_TOL,
};

use report::{EquivReport, FactorReport, Report, SchmidtReport, VerdictReport};
use statefile::StateFile;

#[derive(Parser)]
#[command(
    name = "qsep",
    version,
    about = "Separability analysis for multipartite pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a state is fully separable
    Check {
        /// State file path, or "-" for stdin
        path: String,
        /// Zero tolerance for the scale-aware criterion tests
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Which criterion to run
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        /// Accept states whose norm differs from 1
        #[arg(long)]
        allow_unnormalized: bool,
        /// Include wall-clock timing in the report
        #[arg(long)]
        timing: bool,
    },
    /// Compute the entanglement measure and shape-dependent invariants
    Measure {
        /// State file path, or "-" for stdin
        path: String,
        /// Include wall-clock timing in the report
        #[arg(long)]
        timing: bool,
    },
    /// Recover per-party local vectors from a separable state
    Factor {
        /// State file path, or "-" for stdin
        path: String,
        /// Maximum accepted reconstruction residual
        #[arg(long, default_value_t = DEFAULT_FACTOR_TOL)]
        tol: f64,
        /// Accept states whose norm differs from 1
        #[arg(long)]
        allow_unnormalized: bool,
        /// Include wall-clock timing in the report
        #[arg(long)]
        timing: bool,
    },
    /// Generate a state file
    Gen {
        /// Kind of state to generate
        #[arg(value_enum)]
        kind: GenKind,
        /// Per-party dimensions, e.g. 2,2,2
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// RNG seed for the random kinds
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test two two-qubit states for local-unitary equivalence
    Equiv {
        /// First state file path
        path_a: String,
        /// Second state file path
        path_b: String,
        /// Maximum accepted difference of the entanglement measures
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Include wall-clock timing in the report
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Minors,
    Pairs,
    Oracle,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Ghz,
    W,
    Product,
    Random,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Check {
            path,
            tol,
            method,
            allow_unnormalized,
            timing,
        } => cmd_check(&path, tol, method, allow_unnormalized, timing),
        Command::Measure { path, timing } => cmd_measure(&path, timing),
        Command::Factor {
            path,
            tol,
            allow_unnormalized,
            timing,
        } => cmd_factor(&path, tol, allow_unnormalized, timing),
        Command::Gen {
            kind,
            dims,
            seed,
            out,
        } => cmd_gen(kind, &dims, seed, out.as_deref()),
        Command::Equiv {
            path_a,
            path_b,
            tol,
            timing,
        } => cmd_equiv(&path_a, &path_b, tol, timing),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("failed to read stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("failed to read {path}"))
    }
}

fn load_state(path: &str, allow_unnormalized: bool) -> Result<(PureState, Option<String>)> {
    let file = StateFile::parse(&read_input(path)?)?;
    let state = file.to_state(allow_unnormalized)?;
    Ok((state, file.name))
}

fn cmd_check(
    path: &str,
    tol: f64,
    method: MethodArg,
    allow_unnormalized: bool,
    timing: bool,
) -> Result<i32> {
    let start = Instant::now();
    let (state, name) = load_state(path, allow_unnormalized)?;
    let mut report = Report::new("check", name, state.dims().to_vec());
    report.tolerances.separability = tol;

    let verdicts: Vec<Verdict> = match method {
        MethodArg::Minors => vec![is_separable_minors(&state, tol)?],
        MethodArg::Pairs => vec![is_separable_pairs(&state, tol)?],
        MethodArg::Oracle => vec![oracle_separable(&state, tol)?],
        MethodArg::All => vec![
            is_separable_minors(&state, tol)?,
            is_separable_pairs(&state, tol)?,
            oracle_separable(&state, tol)?,
        ],
    };
    report.verdicts = Some(verdicts.iter().map(VerdictReport::from).collect());

    let agreement = verdicts
        .windows(2)
        .all(|w| w[0].separable == w[1].separable);
    if method == MethodArg::All {
        report.agreement = Some(agreement);
    }
    if timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    println!("{}", report::to_json(&report));
    if !agreement {
        eprintln!("error: criteria disagree near the tolerance boundary; adjust --tol");
        return Ok(2);
    }
    Ok(if verdicts[0].separable { 0 } else { 1 })
}

fn cmd_measure(path: &str, timing: bool) -> Result<i32> {
    let start = Instant::now();
    let (state, name) = load_state(path, false)?;
    let mut report = Report::new("measure", name, state.dims().to_vec());
    report.d_e = Some(d_e(&state)?);
    if state.num_parties() == 2 && state.dims()[0] == state.dims()[1] {
        report.det_invariant = Some(det_invariant(&state)?);
    }
    if state.dims() == [2, 2] {
        report.schmidt = Some(SchmidtReport::from(schmidt_two_qubit(&state)?));
    }
    if timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    println!("{}", report::to_json(&report));
    Ok(0)
}

fn cmd_factor(path: &str, tol: f64, allow_unnormalized: bool, timing: bool) -> Result<i32> {
    let start = Instant::now();
    let (state, name) = load_state(path, allow_unnormalized)?;
    let mut report = Report::new("factor", name, state.dims().to_vec());
    report.tolerances.factorization = tol;
    let code = match factor(&state, tol) {
        Ok(fact) => {
            report.factorization = Some(FactorReport::new(
                &fact.locals,
                fact.global_phase,
                fact.residual,
            ));
            0
        }
        Err(FactorError::Entangled { residual }) => {
            report.entangled_residual = Some(residual);
            1
        }
        Err(err) => return Err(err.into()),
    };
    if timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    println!("{}", report::to_json(&report));
    Ok(code)
}

fn cmd_gen(kind: GenKind, dims: &[usize], seed: u64, out: Option<&std::path::Path>) -> Result<i32> {
    let state = match kind {
        GenKind::Ghz | GenKind::W => {
            if dims.iter().any(|&d| d != 2) {
                bail!("ghz and w are qubit states; every dimension must be 2");
            }
            match kind {
                GenKind::Ghz => ghz(dims.len())?,
                _ => w(dims.len())?,
            }
        }
        GenKind::Product => random_product_state(dims, seed)?,
        GenKind::Random => random_state(dims, seed)?,
    };
    let file = StateFile::from_state(&state, None);
    let json = report::to_json(&file);
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .with_context(|| format!("failed to write {}", path.display()))?,
        None => println!("{json}"),
    }
    Ok(0)
}

fn cmd_equiv(path_a: &str, path_b: &str, tol: f64, timing: bool) -> Result<i32> {
    let start = Instant::now();
    let (a, _) = load_state(path_a, false)?;
    let (b, _) = load_state(path_b, false)?;
    if a.dims() != [2, 2] || b.dims() != [2, 2] {
        bail!("equiv requires two-qubit states");
    }
    let d_e_a = d_e(&a)?;
    let d_e_b = d_e(&b)?;
    let equivalent = lu_equiv_two_qubit(&a, &b, tol)?;
    let report = EquivReport {
        command: "equiv",
        d_e_a,
        d_e_b,
        difference: (d_e_a - d_e_b).abs(),
        tolerance: tol,
        equivalent,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    println!("{}", report::to_json(&report));
    Ok(if equivalent { 0 } else { 1 })
}
