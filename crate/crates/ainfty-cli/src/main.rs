use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ainfty::linalg::Ring;

mod commands;
mod report;
mod schema;

use commands::{parse_degrees, InputError};

/// Exact checks for A-infinity categories over Z and F2.
///
/// Exit codes: 0 pass, 1 mathematical failure, 2 input error.
/// Set AINFTY_THREADS to bound the worker threads.
#[derive(Parser, Debug)]
#[command(name = "ainfty", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Add wall-clock time to the report (not deterministic).
    #[arg(long, global = true)]
    timing: bool,
    /// Override the coefficient ring of the file.
    #[arg(long, global = true, value_enum)]
    ring: Option<RingArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RingArg {
    #[value(name = "Z")]
    Z,
    #[value(name = "F2")]
    F2,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::Z => Ring::Integers,
            RingArg::F2 => Ring::F2,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schema check, A-infinity relations, units and the coproduct.
    Validate {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        /// Bound on r + s for the coproduct equation.
        #[arg(long, default_value_t = 3)]
        bimodule_inputs: usize,
        /// Also replay a generation certificate.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Hochschild homology of a truncation of the cyclic bar complex.
    Hh {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Inclusive range a..b.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
        /// Comma-separated objects (default: all).
        #[arg(long, value_delimiter = ',')]
        subcategory: Vec<String>,
    },
    /// Search for a generation certificate.
    Generate {
        file: PathBuf,
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_delimiter = ',')]
        subcategory: Vec<String>,
        #[arg(long, default_value_t = 1)]
        max_length: usize,
        /// Write the certificate here.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Replay a generation certificate against a category file.
    Replay { file: PathBuf, certificate: PathBuf },
    /// Check the homotopy equation and its consequence on homology.
    Cardy {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_length: usize,
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
        /// Solve for the homotopy instead of checking the one in the file.
        #[arg(long)]
        solve: bool,
    },
    /// Codimension-one strata of a moduli space, e.g. R_4, R_{1|1|2}, R^1_3, C_2.
    Strata {
        space: String,
        /// Match strata with the terms of ainf, bimodule-map, hochschild or homotopy.
        #[arg(long)]
        equation: Option<String>,
    },
    /// Evaluate a sign formula.
    Sign {
        tag: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<i64>,
    },
    /// Print or write a shipped fixture file.
    Fixture {
        name: String,
        /// Degree of eps (dual numbers) or of the shift (shifted summand).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn degrees(s: &Option<String>) -> Result<Option<(i64, i64)>, InputError> {
    s.as_deref().map(parse_degrees).transpose()
}

fn run(cli: &Cli) -> Result<report::Report, InputError> {
    let ring = cli.ring.map(Ring::from);
    let no_ring = |cmd: &str| -> Result<(), InputError> {
        match ring {
            Some(_) => Err(InputError(format!("--ring has no effect on `{cmd}`"))),
            None => Ok(()),
        }
    };
    match &cli.command {
        Command::Validate { file, max_arity, bimodule_inputs, certificate } => {
            commands::validate(file, ring, *max_arity, *bimodule_inputs, certificate.as_deref())
        }
        Command::Hh { file, max_length, degrees: d, subcategory } => {
            commands::hh(file, ring, *max_length, degrees(d)?, subcategory)
        }
        Command::Generate { file, object, subcategory, max_length, out } => {
            commands::generate(file, ring, object.as_deref(), subcategory, *max_length, out.as_deref())
        }
        Command::Replay { file, certificate } => {
            no_ring("replay")?;
            commands::replay(file, certificate)
        }
        Command::Cardy { file, max_length, degrees: d, solve } => {
            commands::cardy(file, ring, *max_length, degrees(d)?, *solve)
        }
        Command::Strata { space, equation } => {
            no_ring("strata")?;
            commands::strata(space, equation.as_deref())
        }
        Command::Sign { tag, args } => {
            no_ring("sign")?;
            commands::sign(tag, args)
        }
        Command::Fixture { .. } => unreachable!("handled in main"),
    }
}

fn init_threads() -> Result<(), InputError> {
    if let Ok(v) = std::env::var("AINFTY_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| InputError(format!("AINFTY_THREADS must be a positive integer, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {}", e.0);
        return ExitCode::from(2);
    }
    if let Command::Fixture { name, degree, out } = &cli.command {
        let text = match (cli.ring, commands::fixture_text(name, *degree)) {
            (Some(_), _) => Err(InputError("--ring has no effect on `fixture`".into())),
            (None, r) => r,
        };
        return match text {
            Ok(text) => match out {
                Some(p) => match std::fs::write(p, text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {}: {e}", p.display());
                        ExitCode::from(2)
                    }
                },
                None => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
            },
            Err(e) => {
                eprintln!("error: {}", e.0);
                ExitCode::from(2)
            }
        };
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut rep) => {
            if cli.timing {
                rep.timing_ms = Some(start.elapsed().as_millis());
            }
            if cli.json {
                print!("{}", rep.json());
            } else {
                print!("{}", rep.text());
            }
            if rep.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
