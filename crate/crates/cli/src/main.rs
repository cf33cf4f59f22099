use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fbasis_core::harness::{
    build_report, default_report_path, expand, heavy_from_env, read_report, run_suite, write_report, ExpandKind, ExpandRequest,
};
use fbasis_core::{HarnessError, Report, Status, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "fbasis", version, about = "Exact checks of the fermionic basis of the XXZ chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fock,
    Lr,
    Basis,
    Lattice,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Fock => Suite::Fock,
            SuiteArg::Lr => Suite::Lr,
            SuiteArg::Basis => Suite::Basis,
            SuiteArg::Lattice => Suite::Lattice,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Bj,
    Family,
    HstarMonomial,
    Lr,
}

impl From<KindArg> for ExpandKind {
    fn from(k: KindArg) -> ExpandKind {
        match k {
            KindArg::Bj => ExpandKind::Bj,
            KindArg::Family => ExpandKind::Family,
            KindArg::HstarMonomial => ExpandKind::HstarMonomial,
            KindArg::Lr => ExpandKind::Lr,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write a JSON report.
    Verify {
        suite: SuiteArg,
        /// Largest chain length for the basis cases.
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Series order in z for the lattice identities.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Largest window for the anticommutation check.
        #[arg(long, default_value_t = 6)]
        window: u32,
        /// Largest weight for the monomial rank.
        #[arg(long, default_value_t = 4)]
        weight: usize,
        /// Value of y, e.g. `3/1` or `(2)+(1)i`.
        #[arg(long, default_value = "3")]
        y: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also run the n = 4 rank and weight 5 (or set FBASIS_HEAVY=1).
        #[arg(long)]
        heavy: bool,
        /// Report path; defaults to $FBASIS_REPORT_DIR/fbasis-<suite>.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an object in the canonical text grammar or as JSON.
    Expand {
        kind: KindArg,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Comma-separated indices: J for bj, the partition for
        /// hstar-monomial, l for lr.
        #[arg(long, value_delimiter = ',')]
        j: Vec<u32>,
        #[arg(long, default_value = "3")]
        y: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Summarise a saved report.
    Report { file: PathBuf },
}

fn summarise(report: &Report) {
    for v in &report.verdicts {
        let tag = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        println!("{tag} {}", v.id);
        if v.status == Status::Fail {
            println!("     {}", v.details);
            if let Some(r) = &v.reproducer {
                println!("     rerun: {r}");
            }
        }
    }
    let count = |s| report.verdicts.iter().filter(|v| v.status == s).count();
    println!("{} passed, {} failed, {} skipped", count(Status::Pass), count(Status::Fail), count(Status::Skip));
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Verify { suite, n, order, window, weight, y, seed, heavy, out } => {
            let cfg = SuiteConfig {
                suite: suite.into(),
                n,
                order,
                window,
                weight,
                y,
                seed,
                heavy: heavy || heavy_from_env(),
                out,
            };
            let verdicts = run_suite(&cfg)?;
            let report = build_report(&cfg, verdicts);
            let path = cfg.out.clone().unwrap_or_else(|| default_report_path(cfg.suite));
            write_report(&report, &path)?;
            summarise(&report);
            println!("report: {}", path.display());
            Ok(report.passed)
        }
        Command::Expand { kind, n, j, y, format } => {
            let (text, value) = expand(&ExpandRequest { kind: kind.into(), n, j, y })?;
            match format {
                Format::Text => println!("{text}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
            }
            Ok(true)
        }
        Command::Report { file } => {
            let report = read_report(&file)?;
            summarise(&report);
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fbasis: {e}");
            ExitCode::from(2)
        }
    }
}
