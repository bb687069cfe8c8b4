//! `khbn`: compute Khovanov / Bar-Natan homology and run identity checks.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 size guard.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use khbn::complex::{BnComplex, Fault};
use khbn::cube::{CubeError, DEFAULT_MAX_CROSSINGS};
use khbn::diagram::{parse_pd, LinkDiagram};
use khbn::homology::{self, Theory};
use khbn::verify::{self, Check};

#[derive(Parser)]
#[command(
    name = "khbn",
    version,
    about = "Khovanov and Bar-Natan homology over F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Kh,
    Bn,
    ReducedX,
    #[value(name = "reduced-1")]
    Reduced1,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Self {
        match t {
            TheoryArg::Kh => Theory::Kh,
            TheoryArg::Bn => Theory::Bn,
            TheoryArg::ReducedX => Theory::ReducedX,
            TheoryArg::Reduced1 => Theory::Reduced1,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(clap::Args)]
struct Input {
    /// PD code inline (e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)") or a file path.
    pd: String,
    /// Arc carrying the basepoint; overrides any `@arc` in the input.
    #[arg(long)]
    basepoint: Option<u32>,
    /// Refuse diagrams with more crossings than this.
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print a homology report.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "kh")]
        theory: TheoryArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run identity checks; prints a JSON report, summary lines on stderr.
    Verify {
        #[command(flatten)]
        input: Input,
        /// `all` or a comma list of dsq,k0,ladder,full,iota,split,jones.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Corrupt one map on purpose: split-drops-term, k-keeps-basepoint,
        /// k-with-repetition, iota-without-h.
        #[arg(long)]
        inject: Option<String>,
        /// Second diagram of the same link; adds an invariance check.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Print the Jones polynomial from the state sum.
    Jones {
        #[command(flatten)]
        input: Input,
    },
}

enum Failure {
    Input(String),
    Size(String),
    Check,
    Internal(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        match self {
            Failure::Check => ExitCode::from(1),
            Failure::Internal(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Size(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
        }
    }
}

impl From<CubeError> for Failure {
    fn from(e: CubeError) -> Self {
        match e {
            CubeError::TooManyCrossings { .. } | CubeError::TooManyCircles(_) => {
                Failure::Size(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_diagram(pd: &str, basepoint: Option<u32>) -> Result<LinkDiagram, Failure> {
    let path = Path::new(pd);
    let text = if path.is_file() {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {pd}: {e}")))?
    } else {
        pd.to_string()
    };
    let diagram = parse_pd(&text).map_err(|e| Failure::Input(e.to_string()))?;
    match basepoint {
        Some(arc) => diagram
            .with_basepoint(arc)
            .map_err(|e| Failure::Input(e.to_string())),
        None => Ok(diagram),
    }
}

fn load(input: &Input) -> Result<BnComplex, Failure> {
    let diagram = read_diagram(&input.pd, input.basepoint)?;
    Ok(BnComplex::with_limit(&diagram, input.max_crossings)?)
}

fn parse_checks(spec: &str) -> Result<Vec<Check>, Failure> {
    if spec == "all" {
        return Ok(Check::ALL.to_vec());
    }
    spec.split(',')
        .map(|name| {
            Check::from_name(name.trim())
                .ok_or_else(|| Failure::Input(format!("unknown check `{name}`")))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute {
            input,
            theory,
            format,
        } => {
            let cx = load(&input)?;
            let module = homology::compute(&cx, theory.into())
                .map_err(|e| Failure::Internal(e.to_string()))?;
            match format {
                Format::Table => print!("{}", module.to_table()),
                Format::Json => println!("{}", module.to_json(&cx.diagram().to_string())),
            }
            Ok(())
        }
        Command::Verify {
            input,
            checks,
            inject,
            compare,
        } => {
            let checks = parse_checks(&checks)?;
            let mut cx = load(&input)?;
            if let Some(name) = inject {
                let fault = Fault::from_name(&name)
                    .ok_or_else(|| Failure::Input(format!("unknown fault `{name}`")))?;
                cx = cx.with_fault(fault);
            }
            let mut reports = verify::run_checks(&cx, &checks);
            if let Some(other) = compare {
                let other = load(&Input {
                    pd: other,
                    basepoint: None,
                    max_crossings: input.max_crossings,
                })?;
                reports.push(verify::check_invariance_pair(&cx, &other));
            }
            for r in &reports {
                eprintln!("{}", r.summary_line());
            }
            println!(
                "{}",
                verify::reports_json(&cx.diagram().to_string(), &reports)
            );
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Jones { input } => {
            let diagram = read_diagram(&input.pd, input.basepoint)?;
            let cx = BnComplex::with_limit(&diagram, input.max_crossings)?;
            let d = cx.diagram();
            println!(
                "{}",
                verify::jones_state_sum(cx.cube(), d.n_plus(), d.n_minus())
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
