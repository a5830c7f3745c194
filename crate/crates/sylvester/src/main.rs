//! Thin command-line front end; all logic lives in the library.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sylvester::cli::{self, GenKind};
use sylvester::report::Report;

#[derive(Parser)]
#[command(
    name = "sylvester",
    version,
    about = "Exact incidence analysis of point-line configurations over cyclotomic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a configuration file on standard output.
    Gen {
        /// Fermat configuration on 3n points.
        #[arg(long, conflicts_with_all = ["hesse", "random"])]
        fermat: Option<u64>,
        /// The Hesse configuration on nine points.
        #[arg(long, conflicts_with = "random")]
        hesse: bool,
        /// Random pencil: m, comma-separated per-line counts, seed.
        #[arg(long, num_args = 3, value_names = ["M", "COUNTS", "SEED"])]
        random: Option<Vec<String>>,
        /// Include the apex in the random configuration.
        #[arg(long)]
        include_apex: bool,
    },
    /// List all spanned lines with their members.
    Lines { file: Option<PathBuf> },
    /// List all ordinary (2-point) lines.
    Ordinary { file: Option<PathBuf> },
    /// Check the Sylvester-Gallai property.
    SgCheck { file: Option<PathBuf> },
    /// Pencil structure and the concurrent-line bound report.
    Pencil {
        file: Option<PathBuf>,
        /// Apex as "x;y;z" coordinate expressions.
        #[arg(long, conflicts_with = "search", allow_hyphen_values = true)]
        apex: Option<String>,
        /// Search for concurrency points with at most this many lines.
        #[arg(long)]
        search: Option<usize>,
    },
    /// Run the support-graph pipeline at an apex.
    Graph {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
        /// Write an SVG drawing of the graph to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Constructively find an ordinary line through the pencil.
    FindOrdinary {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
    },
    /// Search for a point set realizing a target graph.
    Realize {
        graph_file: Option<PathBuf>,
        #[arg(long, default_value_t = sylvester::realizer::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numeric boundary-integral check of the support-graph envelope.
    GreenCheck {
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        apex: String,
        /// Comma-separated support-graph vertex indices.
        #[arg(long)]
        polygon: String,
        #[arg(long, default_value_t = 1000)]
        resolution: u32,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| e.to_string())?;
            Ok(buf)
        }
    }
}

/// Write to stdout, tolerating a closed pipe downstream.
fn print_out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

/// Print the report on success, or the error with its exit status.
fn finish(result: sylvester::Result<Report>) -> ExitCode {
    match result {
        Ok(r) => {
            print_out(&r.to_string());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { fermat, hesse, random, include_apex } => {
            let kind = if let Some(n) = fermat {
                GenKind::Fermat(n)
            } else if hesse {
                GenKind::Hesse
            } else if let Some(args) = random {
                let m = match args[0].parse::<usize>() {
                    Ok(m) => m,
                    Err(_) => return usage("m must be an integer"),
                };
                let counts: Result<Vec<usize>, _> =
                    args[1].split(',').map(|s| s.trim().parse()).collect();
                let counts = match counts {
                    Ok(c) => c,
                    Err(_) => return usage("counts must be comma-separated integers"),
                };
                let seed = match args[2].parse::<u64>() {
                    Ok(s) => s,
                    Err(_) => return usage("seed must be an integer"),
                };
                GenKind::Random { m, counts, include_apex, seed }
            } else {
                return usage("gen requires one of --fermat, --hesse, --random");
            };
            match cli::cmd_gen(kind) {
                Ok(text) => {
                    print_out(&text);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(cli::exit_code(&e) as u8)
                }
            }
        }
        Command::Lines { file } => match read_input(&file) {
            Ok(input) => finish(cli::cmd_lines(&input)),
            Err(m) => usage(&m),
        },
        Command::Ordinary { file } => match read_input(&file) {
            Ok(input) => finish(cli::cmd_ordinary(&input)),
            Err(m) => usage(&m),
        },
        Command::SgCheck { file } => match read_input(&file) {
            Ok(input) => finish(cli::cmd_sg_check(&input)),
            Err(m) => usage(&m),
        },
        Command::Pencil { file, apex, search } => match read_input(&file) {
            Ok(input) => match (apex, search) {
                (Some(a), None) => finish(cli::cmd_pencil_apex(&input, &a)),
                (None, Some(max_m)) => finish(cli::cmd_pencil_search(&input, max_m)),
                _ => usage("pencil requires exactly one of --apex or --search"),
            },
            Err(m) => usage(&m),
        },
        Command::Graph { file, apex, svg } => match read_input(&file) {
            Ok(input) => match cli::cmd_graph(&input, &apex) {
                Ok((mut report, rendered)) => {
                    if let (Some(path), Some(svg_text)) = (&svg, &rendered) {
                        if let Err(e) = std::fs::write(path, svg_text) {
                            return usage(&format!("{}: {e}", path.display()));
                        }
                        report.push("svg", path.display());
                    }
                    finish(Ok(report))
                }
                Err(e) => finish(Err(e)),
            },
            Err(m) => usage(&m),
        },
        Command::FindOrdinary { file, apex } => match read_input(&file) {
            Ok(input) => finish(cli::cmd_find_ordinary(&input, &apex)),
            Err(m) => usage(&m),
        },
        Command::Realize { graph_file, budget, seed } => match read_input(&graph_file) {
            Ok(input) => finish(cli::cmd_realize(&input, budget, seed)),
            Err(m) => usage(&m),
        },
        Command::GreenCheck { file, apex, polygon, resolution } => match read_input(&file) {
            Ok(input) => {
                let parsed: Result<Vec<usize>, _> =
                    polygon.split(',').map(|s| s.trim().parse()).collect();
                match parsed {
                    Ok(poly) => finish(cli::cmd_green_check(&input, &apex, &poly, resolution)),
                    Err(_) => usage("polygon must be comma-separated vertex indices"),
                }
            }
            Err(m) => usage(&m),
        },
    }
}
