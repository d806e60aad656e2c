//! `calg`: run analyses of a graded quotient `Q[x..]/I` from a problem file.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition error, 4 internal
//! invariant violation (including a harness counterexample candidate).

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use calg_core::reports::{
    emit_report, parse_polynomial_list, parse_problem, run_analyses, run_conjecture_harness,
    Analysis, Format, ProblemSpec,
};
use calg_core::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "calg",
    version,
    about = "Exact graded commutative algebra over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format: text or json.
    #[arg(long, default_value = "text", global = true)]
    format: Format,
    /// Homological bound D.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Order N of series expansions.
    #[arg(long = "series-order", global = true)]
    series_order: Option<usize>,
    /// Seed for randomized choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Internal degree cap for resolvents.
    #[arg(long = "degree-cap", global = true)]
    degree_cap: Option<i32>,
}

#[derive(Subcommand)]
enum Command {
    /// Complete intersection, perfect, Gorenstein and related predicates.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal free resolutions over R and of the residue field over S.
    Resolve {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Koszul homology on the minimal generators.
    Koszul {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The minimal Tate resolvent of R -> R/I.
    Tate {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Cotangent modules T_i(S/R, S).
    Cotangent {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Deviations of S.
    Deviations {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Poincaré series, alpha coefficients and the complete-intersection test.
    Series {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Link I by a regular sequence.
    Link {
        /// Problem file (same as --ideal).
        file: Option<PathBuf>,
        #[arg(long)]
        ideal: Option<PathBuf>,
        /// Comma-separated regular sequence inside I.
        #[arg(long, conflicts_with = "auto")]
        regseq: Option<String>,
        /// Search for a regular sequence (seeded).
        #[arg(long)]
        auto: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Implication checks for the complete-intersection conjectures.
    Harness {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

fn load(path: &Path, common: &Common) -> anyhow::Result<ProblemSpec> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut spec = parse_problem(&text)?;
    if common.bound.is_some() {
        spec.bound = common.bound;
    }
    if common.series_order.is_some() {
        spec.series_order = common.series_order;
    }
    if common.degree_cap.is_some() {
        spec.degree_cap = common.degree_cap;
    }
    if let Some(s) = common.seed {
        spec.seed = s;
    }
    Ok(spec)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let (analysis, file, common) = match &cli.command {
        Command::Classify { file, common } => (Analysis::Classify, file, common),
        Command::Resolve { file, common } => (Analysis::Resolve, file, common),
        Command::Koszul { file, common } => (Analysis::Koszul, file, common),
        Command::Tate { file, common } => (Analysis::Tate, file, common),
        Command::Cotangent { file, common } => (Analysis::Cotangent, file, common),
        Command::Deviations { file, common } => (Analysis::Deviations, file, common),
        Command::Series { file, common } => (Analysis::Series, file, common),
        Command::Link {
            file,
            ideal,
            regseq,
            auto,
            common,
        } => {
            let path = ideal
                .as_ref()
                .or(file.as_ref())
                .ok_or_else(|| anyhow!(Error::Precondition("link needs --ideal <file>".into())))?;
            let mut spec = load(path, common)?;
            match (regseq, auto) {
                (Some(r), _) => spec.regseq = Some(parse_polynomial_list(&spec.ring, r)?),
                (None, true) => spec.regseq = None,
                (None, false) if spec.regseq.is_some() => {}
                (None, false) => bail!(Error::Precondition(
                    "link needs --regseq \"<p1>,...\" or --auto".into()
                )),
            }
            spec.analyses = BTreeSet::from([Analysis::Link]);
            print!("{}", emit_report(&run_analyses(&spec)?, common.format));
            return Ok(());
        }
        Command::Harness { file, common } => {
            let spec = load(file, common)?;
            let report = run_conjecture_harness(&spec)?;
            print!("{}", emit_report(&report, common.format));
            if report
                .caveats
                .iter()
                .any(|c| c.contains("COUNTEREXAMPLE CANDIDATE"))
            {
                bail!(Error::Invariant(
                    "harness reported a counterexample candidate".into()
                ));
            }
            return Ok(());
        }
    };
    let mut spec = load(file, common)?;
    spec.analyses = BTreeSet::from([analysis]);
    print!("{}", emit_report(&run_analyses(&spec)?, common.format));
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::Inhomogeneous { .. }) => 2,
        Some(Error::Invariant(_)) => 4,
        Some(Error::Precondition(_) | Error::Structural(_) | Error::Undetermined(_)) => 3,
        None if e.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
