use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use bei_core::graph::decode_graph6;
use bei_core::groebner::DEFAULT_GB_CAP;
use bei_core::harness::{
    compute_report, sweep, verify_family, PipelineConfig, SweepOptions, DEFAULT_MAX_N,
};
use bei_core::hochster::DEFAULT_BETTI_CAP;
use bei_core::primes::{minimal_primes, prime_record};
use bei_core::{Family, Graph, VertexSet};
use clap::{Args, Parser, Subcommand};

/// Binomial edge ideals: Hilbert series, regularity and minimal primes.
#[derive(Parser)]
#[command(name = "bei", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on one graph and print a JSON report.
    Compute {
        #[command(flatten)]
        input: GraphInput,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run the pipeline on every isomorphism class of small graphs.
    Sweep {
        /// Largest vertex count swept.
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Smallest vertex count swept.
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// Only connected graphs.
        #[arg(long)]
        connected: bool,
        /// Emit a CSV table instead of JSON lines.
        #[arg(long)]
        csv: bool,
        /// Log and skip graphs that exceed a cap instead of failing.
        #[arg(long)]
        skip_oversize: bool,
        /// Largest vertex count the pipeline accepts.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        cap_n: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Compare a family's closed forms with direct computation, e.g.
    /// `bei family multipartite 2 2 1` or `bei family suspath:3,5`.
    Family {
        tag: String,
        params: Vec<usize>,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// List the minimal primes P_S as JSON lines.
    Primes {
        #[command(flatten)]
        input: GraphInput,
        /// List every vertex set, not only those giving minimal primes.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// Edge list file: vertex count on the first line, then one `i j` per line.
    #[arg(long)]
    edges: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> anyhow::Result<Graph> {
        match (&self.graph6, &self.edges) {
            (Some(s), _) => Ok(decode_graph6(s)?),
            (_, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Graph::parse_edge_list(&text)?)
            }
            _ => bail!("no graph given"),
        }
    }
}

#[derive(Args)]
struct Caps {
    /// Largest Stanley-Reisner vertex count (2n) for the Betti scan.
    #[arg(long, default_value_t = DEFAULT_BETTI_CAP)]
    betti_cap: usize,
    /// Largest Groebner basis size before aborting.
    #[arg(long, default_value_t = DEFAULT_GB_CAP)]
    gb_cap: usize,
    /// Include per-stage timings in reports.
    #[arg(long)]
    timings: bool,
}

impl Caps {
    fn config(&self, max_n: usize) -> PipelineConfig {
        PipelineConfig {
            max_n,
            betti_cap: self.betti_cap,
            gb_cap: self.gb_cap,
            timings: self.timings,
        }
    }
}

fn set_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("BEI_THREADS") {
        let n: usize = v.parse().with_context(|| format!("BEI_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// `Ok(true)` when no violation or mismatch was found.
fn run(cli: Cli) -> anyhow::Result<bool> {
    set_threads()?;
    let mut out = BufWriter::new(io::stdout().lock());
    match cli.command {
        Command::Compute { input, max_n, caps } => {
            let report = compute_report(&input.load()?, &caps.config(max_n))?;
            writeln!(out, "{}", report.to_json())?;
            Ok(report.invariant_failures().is_empty())
        }
        Command::Sweep {
            max_n,
            min_n,
            connected,
            csv,
            skip_oversize,
            cap_n,
            caps,
        } => {
            let options = SweepOptions {
                min_n,
                max_n,
                connected_only: connected,
                skip_oversize,
            };
            let outcome = sweep(&options, &caps.config(cap_n))?;
            if csv {
                writeln!(out, "graph6,n,reg,deg_h,dim,cm,unmixed")?;
                for r in &outcome.reports {
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        r.graph6, r.n, r.reg, r.deg_h, r.dim, r.is_cm, r.is_unmixed
                    )?;
                }
                eprintln!("{}", serde_json::to_string(&outcome.summary)?);
            } else {
                for r in &outcome.reports {
                    writeln!(out, "{}", r.to_json())?;
                }
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({ "summary": &outcome.summary })
                )?;
            }
            Ok(outcome.summary.ok())
        }
        Command::Family {
            tag,
            params,
            json,
            max_n,
            caps,
        } => {
            let family = if params.is_empty() && tag.contains(':') {
                tag.parse::<Family>()?
            } else {
                Family::from_parts(&tag, &params)?
            };
            let verdict = verify_family(&family, &caps.config(max_n))?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&verdict)?)?;
            } else {
                write!(out, "{}", verdict.render())?;
            }
            Ok(verdict.pass)
        }
        Command::Primes { input, all } => {
            let g = input.load()?;
            let records = if all {
                (0..1u64 << g.n())
                    .map(|s| prime_record(&g, VertexSet::from_bits(s)))
                    .collect::<Result<Vec<_>, _>>()?
            } else {
                minimal_primes(&g)?
            };
            for r in records {
                writeln!(out, "{}", serde_json::to_string(&r)?)?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
