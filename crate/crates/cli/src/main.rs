use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ngspec::bounds::{parse_bound_list, DEFAULT_EPSILON};
use ngspec::family::parse_family_range;
use ngspec::harness::{
    cmd_ratio, cmd_search, cmd_spectrum, parse_graph_arg, ratio_table_text, run_scan, Emit, ScanConfig, Source,
};
use ngspec::{construct, write_graph6};

#[derive(Parser)]
#[command(name = "ngspec", version, about = "Laplacian and signless Laplacian bounds for a graph and its complement")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// One-sided tolerance for `holds` and equality.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Violations,
    Equalities,
    All,
    None,
}

#[derive(Subcommand)]
enum Command {
    /// L and Q spectra plus key values of a graph and its complement.
    Spectrum {
        /// A graph6 record or a family such as `star:6`.
        graph: String,
    },
    /// Print graph6 records for a family, e.g. `hn:6..30` or `bip-h:8,3,1,2`.
    Construct { family: String },
    /// Evaluate bounds over every labelled graph, a graph6 file or a family.
    Scan {
        /// Every labelled graph on this many vertices (at most 8).
        #[arg(long, group = "source")]
        n: Option<usize>,
        /// One graph6 record per line.
        #[arg(long, group = "source")]
        file: Option<PathBuf>,
        #[arg(long, group = "source")]
        family: Option<String>,
        /// Comma-separated bound ids, or `all`.
        #[arg(long, default_value = "all")]
        bounds: String,
        /// Which reports go to the output as JSON lines.
        #[arg(long, value_enum, default_value_t = EmitArg::Violations)]
        emit: EmitArg,
        /// Graphs per work unit.
        #[arg(long, default_value_t = 4096)]
        chunk: usize,
    },
    /// Best split join K̄_{n-k} ∨ K_k by closed form, for each n.
    Ratio {
        #[arg(required = true, num_args = 1..)]
        n: Vec<usize>,
    },
    /// Hill-climb on q1(G)·q1(Ḡ) by edge flips.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20_000)]
        iterations: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn open_output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("reports serialise")
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let c = &cli.common;
    let mut out = open_output(&c.output)?;
    match cli.command {
        Command::Spectrum { graph } => {
            let r = cmd_spectrum(&parse_graph_arg(&graph)?)?;
            match c.format {
                Format::Json => writeln!(out, "{}", json(&r))?,
                Format::Text => write!(out, "{}", r.to_text())?,
            }
        }
        Command::Construct { family } => {
            for spec in parse_family_range(&family)? {
                let g6 = write_graph6(&construct(&spec)?)?;
                match c.format {
                    Format::Json => {
                        writeln!(out, "{}", json(&serde_json::json!({ "family": spec.to_string(), "graph6": g6 })))?
                    }
                    Format::Text => writeln!(out, "{g6}")?,
                }
            }
        }
        Command::Scan { n, file, family, bounds, emit, chunk } => {
            let source = match (n, file, family) {
                (Some(n), None, None) => Source::Exhaustive(n),
                (None, Some(f), None) => Source::Graph6File(f),
                (None, None, Some(s)) => Source::Family(parse_family_range(&s)?),
                _ => anyhow::bail!("give exactly one of --n, --file, --family"),
            };
            let mut cfg = ScanConfig::new(source, parse_bound_list(&bounds)?);
            cfg.jobs = c.jobs;
            cfg.epsilon = c.epsilon;
            cfg.chunk = chunk;
            cfg.emit = match emit {
                EmitArg::Violations => Emit::Violations,
                EmitArg::Equalities => Emit::Equalities,
                EmitArg::All => Emit::All,
                EmitArg::None => Emit::Nothing,
            };
            let summary = run_scan(&cfg, &mut out)?;
            match c.format {
                Format::Json => eprintln!("{}", json(&summary)),
                Format::Text => eprint!("{}", summary.to_text()),
            }
            out.flush()?;
            return Ok(summary.exit_code() as u8);
        }
        Command::Ratio { n } => {
            let points = cmd_ratio(&n)?;
            match c.format {
                Format::Json => {
                    for p in &points {
                        writeln!(out, "{}", json(p))?;
                    }
                }
                Format::Text => write!(out, "{}", ratio_table_text(&points))?,
            }
        }
        Command::Search { n, iterations, seed } => {
            let r = cmd_search(n, iterations, seed)?;
            match c.format {
                Format::Json => writeln!(out, "{}", json(&r))?,
                Format::Text => write!(out, "{}", r.to_text())?,
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
