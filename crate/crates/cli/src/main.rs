use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use robustnet::dynamics::{run_cascade, run_consensus, ConsensusConfig};
use robustnet::experiments::{gnuplot_script, run_sweep, write_records, RecordFormat, SweepSpec};
use robustnet::generators::{gen_erdos_renyi, gen_geometric, gen_preferential, RngSeed, RNG_ALGORITHM};
use robustnet::graph::{
    find_degree_cut_with, find_relaxed_degree_cut_with, is_r_robust_with, min_degree,
    robustness_with, vertex_connectivity, CutOptions, DEFAULT_SEARCH_LIMIT,
};
use robustnet::hardness::{build_g_phi, build_g_rho_phi, build_h_phi, build_h_rho_phi};
use robustnet::io;

const EXACT_NOTE: &str = "Exact robustness is coNP-complete; searches above --limit nodes \
                          stop with exit code 2 instead of running unbounded.";

#[derive(Parser)]
#[command(name = "robustnet", version, about = "Graph robustness analysis, generation and simulation")]
#[command(after_help = EXACT_NOTE)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Robustness, connectivity and minimum degree of a graph.
    #[command(after_help = EXACT_NOTE)]
    Robustness {
        graph: PathBuf,
        /// Decide r-robustness only.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
    /// Search for a ρ-degree cut and print it as JSON.
    #[command(after_help = EXACT_NOTE)]
    Cut {
        graph: PathBuf,
        #[arg(long)]
        rho: usize,
        /// Require X to be empty.
        #[arg(long)]
        relaxed: bool,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random graph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run a Monte-Carlo sweep described by a JSON spec.
    Sweep {
        family: Family,
        #[arg(long)]
        spec: PathBuf,
        /// Output file; `.json` writes JSON, anything else CSV.
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Simulate W-MSR consensus.
    Consensus {
        #[arg(long)]
        graph: PathBuf,
        /// JSON config; `initial` holds starting values (random in [0, 1) if absent).
        #[arg(long)]
        config: PathBuf,
        /// Trace CSV destination (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate threshold contagion.
    Cascade {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long = "seed-set")]
        seed_set: PathBuf,
        #[arg(long)]
        threshold: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduction graph from an NAE3SAT formula.
    Gadget {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = 1)]
        rho: usize,
        #[arg(long, value_enum, default_value_t = Build::G)]
        build: Build,
        /// Graph destination; roles go to `<out>.roles.csv`.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: PathBuf,
    },
    Geom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        side: f64,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        out: PathBuf,
        /// Positions file (defaults to `<out>.pos`).
        #[arg(long)]
        positions: Option<PathBuf>,
    },
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Er,
    Geom,
    Ba,
}

#[derive(Clone, Copy, ValueEnum)]
enum Build {
    G,
    H,
    Grho,
    Hrho,
}

#[derive(serde::Deserialize)]
struct ConsensusFile {
    #[serde(flatten)]
    config: ConsensusConfig<f64>,
    #[serde(default)]
    initial: Option<Vec<f64>>,
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => io::write_text(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let seed = RngSeed::new(cli.seed);
    match cli.command {
        Command::Robustness { graph, r, limit } => {
            let g = io::read_graph(&graph)?;
            let opts = CutOptions::with_limit(limit);
            match r {
                Some(r) => println!("{r}-robust: {}", is_r_robust_with(&g, r, &opts)?),
                None => {
                    println!("nodes: {}", g.node_count());
                    println!("min_degree: {}", min_degree(&g)?);
                    println!("connectivity: {}", vertex_connectivity(&g)?);
                    println!("robustness: {}", robustness_with(&g, &opts)?);
                }
            }
        }
        Command::Cut {
            graph,
            rho,
            relaxed,
            limit,
            out,
        } => {
            let g = io::read_graph(&graph)?;
            let opts = CutOptions::with_limit(limit);
            let cut = if relaxed {
                find_relaxed_degree_cut_with(&g, rho, &opts)?
            } else {
                find_degree_cut_with(&g, rho, &opts)?
            };
            let text = match &cut {
                Some(c) => serde_json::to_string(c)? + "\n",
                None => "null\n".to_string(),
            };
            emit(&text, out.as_deref())?;
            if cut.is_none() {
                eprintln!("no {}{rho}-degree cut", if relaxed { "relaxed " } else { "" });
            }
        }
        Command::Gen { family } => match family {
            GenFamily::Er { n, p, out } => io::write_graph(&gen_erdos_renyi(n, p, seed)?, &out)?,
            GenFamily::Geom {
                n,
                radius,
                side,
                dim,
                out,
                positions,
            } => {
                let (g, pl) = gen_geometric(n, radius, side, dim, seed)?;
                io::write_graph(&g, &out)?;
                let pos = positions.unwrap_or_else(|| sidecar(&out, ".pos"));
                io::write_text(&pos, &io::format_positions(&pl))?;
            }
            GenFamily::Ba { n, r, out } => io::write_graph(&gen_preferential(n, r, seed)?, &out)?,
        },
        Command::Sweep {
            family,
            spec,
            out,
            plot,
        } => {
            let text = io::read_text(&spec)?;
            let spec: SweepSpec =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", spec.display()))?;
            let matches = matches!(
                (family, &spec),
                (Family::Er, SweepSpec::ErdosRenyi { .. })
                    | (Family::Geom, SweepSpec::Geometric1d { .. })
                    | (Family::Ba, SweepSpec::Preferential { .. })
            );
            if !matches {
                bail!("spec family does not match the `sweep` subcommand");
            }
            let records = run_sweep(&spec)?;
            write_records(&records, &out, RecordFormat::from_path(&out))?;
            if let Some(plot) = plot {
                io::write_text(&plot, &gnuplot_script(&records, &out.to_string_lossy()))?;
            }
            eprintln!("{} records, rng {RNG_ALGORITHM}", records.len());
        }
        Command::Consensus { graph, config, out } => {
            let g = io::read_graph(&graph)?;
            let text = io::read_text(&config)?;
            let file: ConsensusFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
            let initial = match file.initial {
                Some(v) => v,
                None => {
                    use rand::Rng;
                    let mut rng = seed.rng();
                    (0..g.node_count()).map(|_| rng.gen::<f64>()).collect()
                }
            };
            let trace = run_consensus(&g, &initial, &file.config)?;
            emit(&io::format_consensus_trace(&trace), out.as_deref())?;
            eprintln!(
                "converged: {} after {} rounds, spread {}, validity held: {}",
                trace.converged,
                trace.rounds.len() - 1,
                trace.final_spread,
                trace.validity_held
            );
        }
        Command::Cascade {
            graph,
            seed_set,
            threshold,
            out,
        } => {
            let g = io::read_graph(&graph)?;
            let initial = io::parse_node_list(&io::read_text(&seed_set)?, g.node_count())?;
            let outcome = run_cascade(&g, &initial, threshold)?;
            emit(&io::format_cascade_history(&outcome), out.as_deref())?;
            eprintln!(
                "infected {} of {} after {} rounds",
                outcome.infected.len(),
                g.node_count(),
                outcome.rounds
            );
        }
        Command::Gadget {
            formula,
            rho,
            build,
            out,
        } => {
            let phi = io::parse_formula(&io::read_text(&formula)?)?;
            let gg = match build {
                Build::G => build_g_phi(&phi),
                Build::H => build_h_phi(&phi),
                Build::Grho => build_g_rho_phi(&phi, rho)?,
                Build::Hrho => build_h_rho_phi(&phi, rho)?,
            };
            io::write_graph(&gg.graph, &out)?;
            io::write_text(&sidecar(&out, ".roles.csv"), &io::format_roles(&gg))?;
            eprintln!("{} nodes, {} edges", gg.node_count(), gg.graph.edge_count());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let guard = e
                .downcast_ref::<robustnet::Error>()
                .is_some_and(robustnet::Error::is_resource_guard);
            ExitCode::from(if guard { 2 } else { 1 })
        }
    }
}
