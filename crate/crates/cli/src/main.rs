mod bench;
mod error;
mod gen;
mod load;
mod report;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mbc_core::{apsp, gbc_direct};

use error::{CliError, Result};
use solve::Algo;

/// Maximum Betweenness Centrality: evaluate, solve, generate and cross-check.
#[derive(Debug, Parser)]
#[command(name = "mbc", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized generators; echoed in reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// Graph file: edge list or JSON instance.
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
    /// Cost file with `label cost` lines; unlisted nodes cost 1.
    #[arg(long)]
    costs: Option<PathBuf>,
    /// Budget; overrides the one stored in a JSON instance.
    #[arg(long)]
    budget: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the group betweenness centrality of a node set.
    Gbc {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Comma-separated node labels.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Solve an instance and print a JSON report.
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Comma-separated candidate labels (modified and exact only).
        #[arg(long)]
        candidates: Option<String>,
        /// Report `time_ms` as null so identical runs print identical bytes.
        #[arg(long)]
        no_timing: bool,
    },
    /// Generate instance families.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Run a cross-check suite; exits with status 4 when a check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Run a benchmark suite and print CSV.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Tight examples for the greedy algorithms.
    Tight {
        #[arg(long)]
        k: usize,
        /// Source-side clique size (default 40k).
        #[arg(long)]
        ls: Option<usize>,
        /// Sink-side clique size (default 20k).
        #[arg(long)]
        lt: Option<usize>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Gadget graph turning a vertex cover instance into an MBC instance.
    Apx {
        #[arg(short = 'g', long = "graph")]
        graph: PathBuf,
        /// Number of nodes to select in the source instance.
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Copies per node.
        #[arg(long)]
        l: Option<usize>,
        /// Choose the copy count from this error tolerance instead.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Seeded random connected graph or tree.
    Random {
        #[arg(long)]
        n: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        /// Generate a uniform random tree instead.
        #[arg(long)]
        tree: bool,
        /// Integer cost range `LO:HI`.
        #[arg(long, value_parser = parse_range)]
        costs: Option<(u32, u32)>,
        #[arg(long)]
        budget: Option<f64>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Reduction,
    Oracle,
    Tree,
    Ratio,
}

fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

fn print_json(v: &serde_json::Value) {
    println!("{v:#}");
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Fault(e.to_string()))?;
    }
    match cli.command {
        Command::Gbc { graph, set } => {
            let g = load::document(&graph)?.graph;
            let ids = load::node_list(&g, &set)?;
            let pc = apsp(&g);
            println!("{}", report::num(gbc_direct(&g, &pc, &ids)));
        }
        Command::Solve {
            instance,
            algo,
            candidates,
            no_timing,
        } => {
            let start = Instant::now();
            let inst = load::instance(&instance.graph, instance.costs.as_deref(), instance.budget)?;
            let candidates = candidates.map(|c| load::node_list(&inst.graph, &c)).transpose()?;
            let pc = apsp(&inst.graph);
            let sol = solve::run(&inst, &pc, algo, candidates.as_deref())?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            report::audit(&inst, &pc, &sol)?;
            let time = (!no_timing).then_some(elapsed);
            println!("{}", report::run_report(&inst, &sol, time, cli.seed));
        }
        Command::Gen { family } => {
            let summary = match family {
                Family::Tight { k, ls, lt, out } => gen::tight(k, ls, lt, &out)?,
                Family::Apx {
                    graph,
                    k,
                    l,
                    epsilon,
                    out,
                } => gen::apx(&graph, k, l, epsilon, &out)?,
                Family::Random {
                    n,
                    p,
                    tree,
                    costs,
                    budget,
                    out,
                } => gen::random(
                    &gen::RandomSpec {
                        n,
                        p,
                        tree,
                        costs,
                        budget,
                        seed: cli.seed,
                    },
                    &out,
                )?,
            };
            print_json(&summary);
        }
        Command::Verify { suite, instance } => {
            let doc_budget = instance.budget;
            let inst = match load::instance(&instance.graph, instance.costs.as_deref(), doc_budget) {
                Err(CliError::Usage(_)) => {
                    let n = load::document(&instance.graph)?.graph.n();
                    load::instance(&instance.graph, instance.costs.as_deref(), Some(verify::default_budget(n)))?
                }
                other => other?,
            };
            let pc = apsp(&inst.graph);
            let (summary, status) = match suite {
                Suite::Reduction => verify::reduction(&inst, &pc)?,
                Suite::Oracle => verify::oracle(&inst, &pc)?,
                Suite::Tree => verify::tree(&inst, &pc)?,
                Suite::Ratio => verify::ratio(&inst, &pc)?,
            };
            print_json(&summary);
            status?;
        }
        Command::Bench { suite, no_timing } => {
            print!("{}", bench::run(&suite, !no_timing)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mbc: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1:5"), Ok((1, 5)));
        assert!(parse_range("5").is_err());
        assert!(parse_range("a:b").is_err());
    }
}
