//! `tropvol` — exact Euclidean volumes of polytropes from Kleene star
//! matrices, with verification subcommands and 2d SVG rendering.

mod parse;
mod report;
mod svg;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropvol::{
    cross_check_with, enumerate_pseudovertices, is_maximal, is_simple,
    random_polytrope_with_attempts, Error, GenConfig, ObjectivePolicy, ObjectiveSpec, Polytrope,
    TropicalMatrix,
};

use parse::{parse_matrix, ParseError};

#[derive(Parser)]
#[command(
    name = "tropvol",
    version,
    about = "Exact Euclidean volumes of polytropes via tropical Cramer pseudovertices and the Lawrence formula"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Ones,
    Powers,
    Random,
}

#[derive(Args)]
struct InputArgs {
    /// Input file with a matrix; `-` reads standard input
    #[arg(long, default_value = "-")]
    input: String,
    /// Treat the input columns as arbitrary tropical points (canonically
    /// projected and closed) instead of a finished Kleene star
    #[arg(long)]
    points: bool,
}

#[derive(Args)]
struct FormatArg {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Canonically project the input and print its Kleene star closure
    Star {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Print the half-space representation
    Hrep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Enumerate the pseudovertices with generators and tight facets
    Pv {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Compute the exact Euclidean volume via the Lawrence formula
    Volume {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
        /// Objective choice; the default ladder falls back automatically
        #[arg(long, value_enum)]
        objective: Option<ObjectiveArg>,
        /// Seed for the random objective
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report the kleene / degenerate / maximal / simple flags
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
    },
    /// Recompute the volume under an alternate objective and compare with
    /// an independent oracle (exact in 2d/3d, Monte Carlo otherwise)
    CrossCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        fmt: FormatArg,
        /// Monte Carlo sample count (used when no exact oracle applies)
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Monte Carlo seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Render a 2d polytrope as SVG
    Render {
        #[command(flatten)]
        input: InputArgs,
        /// Output path; stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random Kleene star matrix by rejection sampling
    Random {
        /// Polytrope dimension d (matrix is (d+1)×(d+1))
        #[arg(long)]
        dim: usize,
        /// Smallest off-diagonal entry (must be ≥ 0)
        #[arg(long, default_value_t = 0)]
        entry_min: i64,
        /// Largest off-diagonal entry
        #[arg(long, default_value_t = 100)]
        entry_max: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        fmt: FormatArg,
    },
}

enum CliError {
    Domain(Error),
    Parse(ParseError),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "error[{}]: {e}", e.module()),
            CliError::Parse(e) => write!(f, "error[cli]: {e}"),
            CliError::Io(msg) => write!(f, "error[cli]: {msg}"),
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ CliError::Usage(_)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading `{path}`: {e}")))
    }
}

fn load_matrix(input: &InputArgs) -> Result<TropicalMatrix, CliError> {
    Ok(parse_matrix(&read_input(&input.input)?)?)
}

fn load_polytrope(input: &InputArgs) -> Result<Polytrope, CliError> {
    let m = load_matrix(input)?;
    let p = if input.points {
        Polytrope::from_points(&m)?
    } else {
        Polytrope::from_star(m)?
    };
    Ok(p)
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing JSON: {e}")))?;
    println!("{text}");
    Ok(())
}

fn emit_csv(result: Result<String, csv::Error>) -> Result<(), CliError> {
    let text = result.map_err(|e| CliError::Io(format!("writing CSV: {e}")))?;
    print!("{text}");
    Ok(())
}

fn emit_matrix(m: &TropicalMatrix, format: Format) -> Result<(), CliError> {
    match format {
        Format::Text => println!("{m}"),
        Format::Json => emit_json(&serde_json::json!({ "star": report::matrix_rows(m) }))?,
        Format::Csv => emit_csv(report::matrix_csv(m))?,
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Star { input, fmt } => {
            let m = load_matrix(&input)?;
            let star = m.canonical_projection()?.kleene_star()?;
            emit_matrix(&star, fmt.format)
        }
        Command::Hrep { input, fmt } => {
            let p = load_polytrope(&input)?;
            match fmt.format {
                Format::Text => print!("{}", report::hrep_text(&p)),
                Format::Json => emit_json(&report::hrep_report_json(&p))?,
                Format::Csv => emit_csv(report::hrep_csv(&p))?,
            }
            Ok(())
        }
        Command::Pv { input, fmt } => {
            let p = load_polytrope(&input)?;
            let pvs = enumerate_pseudovertices(&p)?;
            match fmt.format {
                Format::Text => print!("{}", report::pv_text(&p, &pvs)),
                Format::Json => emit_json(&report::pv_json(&p, &pvs))?,
                Format::Csv => emit_csv(report::pv_csv(&p, &pvs))?,
            }
            Ok(())
        }
        Command::Volume {
            input,
            fmt,
            objective,
            seed,
        } => {
            let p = load_polytrope(&input)?;
            let policy = match objective {
                None => ObjectivePolicy::default(),
                Some(ObjectiveArg::Ones) => ObjectivePolicy {
                    attempts: vec![ObjectiveSpec::Ones],
                },
                Some(ObjectiveArg::Powers) => ObjectivePolicy {
                    attempts: vec![ObjectiveSpec::Powers],
                },
                Some(ObjectiveArg::Random) => ObjectivePolicy {
                    attempts: vec![ObjectiveSpec::Random(seed)],
                },
            };
            let report_data = tropvol::compute_volume_with(&p, &policy)?;
            match fmt.format {
                Format::Text => print!("{}", report::volume_text(&p, &report_data)),
                Format::Json => emit_json(&report::volume_json(&p, &report_data))?,
                Format::Csv => emit_csv(report::volume_csv(&p, &report_data))?,
            }
            Ok(())
        }
        Command::Check { input, fmt } => run_check(&input, fmt.format),
        Command::CrossCheck {
            input,
            fmt,
            samples,
            seed,
        } => {
            if samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let p = load_polytrope(&input)?;
            let report_data = cross_check_with(&p, samples, seed)?;
            match fmt.format {
                Format::Text => println!("{report_data}"),
                Format::Json => emit_json(&report::cross_check_json(&report_data))?,
                Format::Csv => {
                    let oracle_pairs: Vec<(&str, String)> = match &report_data.oracle {
                        tropvol::OracleOutcome::Exact { value, matches } => vec![
                            ("oracle", "exact".into()),
                            ("oracle_value", report::rat_pq(value)),
                            ("oracle_matches", matches.to_string()),
                        ],
                        tropvol::OracleOutcome::MonteCarlo {
                            estimate,
                            within_three_sigma,
                        } => vec![
                            ("oracle", "monte_carlo".into()),
                            ("mc_estimate", report::rat_pq(&estimate.estimate)),
                            ("mc_stderr", report::rat_pq(&estimate.stderr)),
                            ("mc_hits", estimate.hits.to_string()),
                            ("mc_samples", estimate.samples.to_string()),
                            ("mc_seed", estimate.seed.to_string()),
                            ("mc_within_three_sigma", within_three_sigma.to_string()),
                        ],
                    };
                    let mut pairs = vec![
                        ("dim", report_data.dim.to_string()),
                        ("default_total", report::rat_pq(&report_data.default_total)),
                        (
                            "alternate_total",
                            report::rat_pq(&report_data.alternate_total),
                        ),
                        (
                            "objectives_match",
                            report_data.objectives_match.to_string(),
                        ),
                    ];
                    pairs.extend(oracle_pairs);
                    pairs.push(("pass", report_data.pass.to_string()));
                    for w in &report_data.warnings {
                        pairs.push(("warning", w.clone()));
                    }
                    emit_csv(report::pairs_csv(&pairs))?;
                }
            }
            Ok(())
        }
        Command::Render { input, out } => {
            let p = load_polytrope(&input)?;
            let svg_text = svg::render_svg_2d(&p)?;
            match out {
                Some(path) => std::fs::write(&path, svg_text)
                    .map_err(|e| CliError::Io(format!("writing `{}`: {e}", path.display())))?,
                None => print!("{svg_text}"),
            }
            Ok(())
        }
        Command::Random {
            dim,
            entry_min,
            entry_max,
            seed,
            fmt,
        } => {
            if dim == 0 {
                return Err(CliError::Usage("--dim must be at least 1".into()));
            }
            if entry_min < 0 {
                return Err(CliError::Usage(
                    "--entry-min must be nonnegative: negative entries never satisfy the triangle property".into(),
                ));
            }
            if entry_min > entry_max {
                return Err(CliError::Usage(format!(
                    "empty entry range [{entry_min}, {entry_max}]"
                )));
            }
            let cfg = GenConfig {
                dim,
                entry_min,
                entry_max,
                seed,
            };
            let (p, attempts) = random_polytrope_with_attempts(&cfg)?;
            match fmt.format {
                Format::Text => println!("{}", p.star()),
                Format::Json => emit_json(&report::RandomJson {
                    dim,
                    seed,
                    attempts,
                    star: report::matrix_rows(p.star()),
                })?,
                Format::Csv => emit_csv(report::matrix_csv(p.star()))?,
            }
            Ok(())
        }
    }
}

fn run_check(input: &InputArgs, format: Format) -> Result<(), CliError> {
    let m = load_matrix(input)?;
    let built = if input.points {
        Polytrope::from_points(&m).map_err(CliError::from)
    } else {
        Polytrope::from_star(m).map_err(CliError::from)
    };
    let (kleene, violation, flags) = match built {
        Ok(p) => {
            let degenerate = p.is_degenerate();
            let maximal = is_maximal(&p)?;
            let simple = is_simple(&p)?;
            (true, None, Some((degenerate, maximal, simple)))
        }
        Err(CliError::Domain(Error::NotKleeneStar { violation })) => {
            (false, Some(violation.to_string()), None)
        }
        Err(other) => return Err(other),
    };
    match format {
        Format::Text => match (&violation, flags) {
            (Some(v), _) => println!("kleene=false ({v})"),
            (None, Some((degenerate, maximal, simple))) => println!(
                "kleene={kleene} degenerate={degenerate} maximal={maximal} simple={simple}"
            ),
            _ => unreachable!("kleene=true always carries flags"),
        },
        Format::Json => emit_json(&report::CheckJson {
            kleene,
            violation,
            degenerate: flags.map(|f| f.0),
            maximal: flags.map(|f| f.1),
            simple: flags.map(|f| f.2),
        })?,
        Format::Csv => {
            let mut pairs = vec![("kleene", kleene.to_string())];
            if let Some(v) = &violation {
                pairs.push(("violation", v.clone()));
            }
            if let Some((degenerate, maximal, simple)) = flags {
                pairs.push(("degenerate", degenerate.to_string()));
                pairs.push(("maximal", maximal.to_string()));
                pairs.push(("simple", simple.to_string()));
            }
            emit_csv(report::pairs_csv(&pairs))?;
        }
    }
    Ok(())
}
