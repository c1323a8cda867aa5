use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use burnside::{Error, GroupSpec, DEFAULT_ORACLE_CAP, DEFAULT_ORDER_CAP};

mod report;

use report::{Context, Failure};

/// Unit groups of Burnside rings of finite permutation groups.
///
/// GROUP is one of S<n>, A<n>, C<n>, D<k> (dihedral of order k), EA<k>
/// (elementary abelian of order 2^k), products such as C2xC4, inv(C3xC5)
/// (odd abelian group extended by inversion), perm:<file> (one generator per
/// line in cycle notation) or lattice:<file> (a lattice exported by the
/// `lattice --json` command).
#[derive(Parser, Debug)]
#[command(name = "burnside", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank and basis of the unit group
    Units { group: String },
    /// Table of marks
    Marks { group: String },
    /// Conjugacy classes of subgroups
    Lattice { group: String },
    /// Compare the unit group with an exhaustive search
    Oracle { group: String },
    /// Compare the unit-group rank with the pair-class dimension
    Conjecture { group: String },
    /// Everything above as a single JSON report
    All { group: String },
}

#[derive(Args, Debug)]
pub struct Options {
    /// Print JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Refuse to enumerate groups larger than this
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_ORDER_CAP)]
    pub max_order: usize,
    /// Largest number of subgroup classes the exhaustive search accepts
    #[arg(long, global = true, value_name = "R", default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,
    /// Randomize class and coset representatives with this seed
    #[arg(long, global = true, value_name = "K")]
    pub seed: Option<u64>,
    /// Print only the summary line
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    pub jobs: usize,
}

type Render = fn(&Context) -> Result<String, Failure>;

fn exit_code(err: &Failure) -> u8 {
    match err {
        Failure::Core(Error::OrderCapExceeded { .. } | Error::OracleCapExceeded { .. }) => 2,
        Failure::Core(
            Error::VerificationFailed { .. }
            | Error::Internal(_)
            | Error::NotInNormalizer
            | Error::NotNormal,
        ) => 3,
        Failure::Core(_) => 1,
        Failure::Mismatch(_) => 4,
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(jobs: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| Failure::Core(Error::InvalidParameter(e.to_string())))
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_jobs: usize) -> Result<(), Failure> {
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads(cli.opts.jobs)?;
    let (group, run): (&String, Render) = match &cli.command {
        Command::Units { group } => (group, report::units),
        Command::Marks { group } => (group, report::marks),
        Command::Lattice { group } => (group, report::lattice),
        Command::Oracle { group } => (group, report::oracle),
        Command::Conjecture { group } => (group, report::conjecture),
        Command::All { group } => (group, report::all),
    };
    let spec = GroupSpec::parse(group)?;
    let classes = spec.load(cli.opts.max_order)?.into_classes();
    let ctx = Context {
        name: spec.to_string(),
        classes: Arc::new(classes),
        opts: &cli.opts,
    };
    // mismatches still print their report before exiting
    let (text, status) = match run(&ctx) {
        Err(Failure::Mismatch(text)) => (text.clone(), Err(Failure::Mismatch(text))),
        other => (other?, Ok(())),
    };
    match &cli.opts.out {
        Some(path) => fs::write(path, text).map_err(Error::from)?,
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(Error::from)?,
    }
    status
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Mismatch(_) => {
                    eprintln!("error: unit group disagrees with the exhaustive search")
                }
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
