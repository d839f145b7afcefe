//! `nac`: decide, count and enumerate NAC-colorings; build 3-SAT gadget
//! graphs; run benchmarks.
//!
//! Exit codes: 0 success, 1 "no NAC-coloring" (for `exists`) or a failed
//! verification, 2 input errors.

mod bench;
mod input;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nac_core::graph::Graph;
use nac_core::sat;
use nac_core::search::{self, MergeStrategy, NacColoring, SearchConfig, SplitStrategy};

use input::{load_first_graph, FormatArg};

#[derive(Parser)]
#[command(name = "nac", version, about = "NAC-coloring search and 3-SAT reduction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    None,
    Neighbors,
    NeighborsDegree,
}

impl From<StrategyArg> for SplitStrategy {
    fn from(v: StrategyArg) -> SplitStrategy {
        match v {
            StrategyArg::None => SplitStrategy::None,
            StrategyArg::Neighbors => SplitStrategy::Neighbors,
            StrategyArg::NeighborsDegree => SplitStrategy::NeighborsDegree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MergeArg {
    Linear,
    SharedVertices,
}

impl From<MergeArg> for MergeStrategy {
    fn from(v: MergeArg) -> MergeStrategy {
        match v {
            MergeArg::Linear => MergeStrategy::Linear,
            MergeArg::SharedVertices => MergeStrategy::SharedVertices,
        }
    }
}

#[derive(Args, Clone)]
struct SearchOpts {
    #[arg(long, value_enum, default_value = "neighbors-degree")]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "linear")]
    merge: MergeArg,
    /// Classes per bag for subgraph decomposition.
    #[arg(long, default_value_t = 4)]
    bag_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum distinct classes on a cached cycle.
    #[arg(long, default_value_t = 4)]
    cycles_depth: usize,
    /// Cached cycles kept per class.
    #[arg(long, default_value_t = 2)]
    cycles_per_class: usize,
    /// Disable block decomposition.
    #[arg(long)]
    no_blocks: bool,
    /// Disable small-cycle pre-checks.
    #[arg(long)]
    no_cycles: bool,
}

impl SearchOpts {
    fn to_config(&self) -> SearchConfig {
        SearchConfig {
            strategy: self.strategy.into(),
            merge: self.merge.into(),
            bag_size: self.bag_size,
            cycle_depth: self.cycles_depth,
            cycles_per_class: self.cycles_per_class,
            use_cycles: !self.no_cycles,
            use_blocks: !self.no_blocks,
            rng_seed: self.seed,
            deadline: None,
        }
    }
}

#[derive(Args, Clone)]
struct InputOpts {
    /// Graph file (graph6 or edge list); `-` reads standard input.
    input: String,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first NAC-coloring found; exit 1 when none exists.
    Exists {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        opts: SearchOpts,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Print every NAC-coloring, one JSON object per line.
    Enumerate {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        opts: SearchOpts,
        /// Stop after this many colorings.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        timing: bool,
    },
    /// Print the number of NAC-colorings (one per swap pair).
    Count {
        #[command(flatten)]
        input: InputOpts,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Print the monochromatic classes as JSON.
    Classes {
        #[command(flatten)]
        input: InputOpts,
    },
    /// Brute-force enumeration (small graphs only).
    Oracle {
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        limit: Option<u64>,
        /// Edge-count cap for the oracle.
        #[arg(long, default_value_t = search::DEFAULT_ORACLE_EDGE_LIMIT)]
        edge_limit: usize,
    },
    /// Build the gadget graph of a 3-CNF formula.
    Reduce {
        /// DIMACS CNF file; `-` reads standard input.
        #[arg(long)]
        cnf: String,
        /// Repeat the last literal of clauses shorter than three.
        #[arg(long)]
        pad_clauses: bool,
        /// Extend the graph so |E| <= (2+eps)|V|; accepts `1/4` or `0.25`.
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: EmitArg,
        /// Also print the edge-label map.
        #[arg(long)]
        labels: bool,
        /// Compare NAC existence against the SAT brute force.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Batch runs over graph files with timing and check counters.
    Bench(bench::BenchArgs),
}

fn main() -> ExitCode {
    // die quietly when a pipe consumer such as `head` closes early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn coloring_json(g: &Graph, c: &NacColoring) -> serde_json::Value {
    json!({
        "red": c.red_edges(g),
        "blue": c.blue_edges(g),
    })
}

fn stats_json(stats: search::CheckStats) -> serde_json::Value {
    json!({
        "stats": {
            "mask_candidates": stats.mask_candidates,
            "cycle_rejections": stats.cycle_rejections,
            "full_checks": stats.full_checks,
            "found": stats.found,
        }
    })
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Exists {
            input,
            opts,
            stats,
            timing,
        } => {
            let g = load_first_graph(&input.input, input.format)?;
            let cfg = opts.to_config();
            let start = Instant::now();
            let mut stream = search::enumerate(&g, &cfg);
            let first = stream.next();
            let elapsed = start.elapsed();
            let code = match first {
                Some(c) => {
                    println!("{}", coloring_json(&g, &c));
                    ExitCode::SUCCESS
                }
                None => ExitCode::from(1),
            };
            if stats {
                println!("{}", stats_json(stream.stats()));
            }
            if timing {
                println!("{}", json!({"elapsed_ms": elapsed.as_secs_f64() * 1e3}));
            }
            Ok(code)
        }
        Command::Enumerate {
            input,
            opts,
            limit,
            stats,
            timing,
        } => {
            let g = load_first_graph(&input.input, input.format)?;
            let cfg = opts.to_config();
            let start = Instant::now();
            let mut stream = search::enumerate(&g, &cfg);
            for (emitted, c) in stream.by_ref().enumerate() {
                println!("{}", coloring_json(&g, &c));
                if limit.is_some_and(|l| emitted as u64 + 1 >= l) {
                    break;
                }
            }
            let elapsed = start.elapsed();
            if stats {
                println!("{}", stats_json(stream.stats()));
            }
            if timing {
                println!("{}", json!({"elapsed_ms": elapsed.as_secs_f64() * 1e3}));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { input, opts } => {
            let g = load_first_graph(&input.input, input.format)?;
            let cfg = opts.to_config();
            println!("{}", search::count(&g, &cfg));
            Ok(ExitCode::SUCCESS)
        }
        Command::Classes { input } => {
            let g = load_first_graph(&input.input, input.format)?;
            let p = nac_core::mono::monochromatic_classes(&g);
            let classes: Vec<Vec<(u32, u32)>> = p
                .classes()
                .iter()
                .map(|cl| cl.ones().map(|e| g.edge(e)).collect())
                .collect();
            println!("{}", json!(classes));
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            input,
            limit,
            edge_limit,
        } => {
            let g = load_first_graph(&input.input, input.format)?;
            let found = search::enumerate_brute_force_with_limit(&g, edge_limit)
                .map_err(|e| e.to_string())?;
            for (i, c) in found.iter().enumerate() {
                if limit.is_some_and(|l| i as u64 >= l) {
                    break;
                }
                println!("{}", coloring_json(&g, c));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reduce {
            cnf,
            pad_clauses,
            epsilon,
            emit,
            labels,
            verify,
            opts,
        } => run_reduce(cnf, pad_clauses, epsilon, emit, labels, verify, opts),
        Command::Bench(args) => bench::run_bench(args),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Graph6,
    Edgelist,
    Json,
}

/// Parses `p/q` or a decimal like `0.25` into a reduced fraction.
fn parse_epsilon(text: &str) -> Result<(u64, u64), String> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let (num, den): (u64, u64) = if let Some((p, q)) = text.split_once('/') {
        let p = p.trim().parse().map_err(|_| format!("bad fraction: {text}"))?;
        let q = q.trim().parse().map_err(|_| format!("bad fraction: {text}"))?;
        (p, q)
    } else if let Some((int, frac)) = text.split_once('.') {
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| format!("bad decimal: {text}"))?
        };
        let digits = frac.len() as u32;
        if digits == 0 || digits > 9 {
            return Err(format!("bad decimal: {text}"));
        }
        let frac: u64 = frac.parse().map_err(|_| format!("bad decimal: {text}"))?;
        let den = 10u64.pow(digits);
        (int * den + frac, den)
    } else {
        let v: u64 = text.parse().map_err(|_| format!("bad epsilon: {text}"))?;
        (v, 1)
    };
    if den == 0 {
        return Err("zero denominator".into());
    }
    let d = gcd(num.max(1), den);
    Ok((num / d, den / d))
}

fn run_reduce(
    cnf: String,
    pad_clauses: bool,
    epsilon: Option<String>,
    emit: EmitArg,
    labels: bool,
    verify: bool,
    opts: SearchOpts,
) -> Result<ExitCode, String> {
    let text = input::read_input(&cnf)?;
    let formula = sat::parse_dimacs(&text, pad_clauses).map_err(|e| e.to_string())?;
    let mut artifact = sat::build_reduction(&formula);
    if let Some(eps) = &epsilon {
        let (num, den) = parse_epsilon(eps)?;
        artifact = sat::extend_for_density(&artifact, num, den).map_err(|e| e.to_string())?;
    }
    let g = &artifact.graph;
    match emit {
        EmitArg::Graph6 => println!("{}", nac_core::graph6::encode_graph6(g)),
        EmitArg::Edgelist => {
            let mut out = String::new();
            for &(u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
            print!("{out}");
        }
        EmitArg::Json => {
            let mut obj = json!({
                "vertices": g.vertex_count(),
                "edges": g.edges(),
            });
            if labels {
                obj["labels"] = json!(artifact
                    .labels
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>());
            }
            println!("{obj}");
        }
    }
    if labels && emit != EmitArg::Json {
        println!(
            "{}",
            json!({"labels": artifact.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>()})
        );
    }
    if verify {
        let satisfiable = sat::sat_brute_force(&formula).map_err(|e| e.to_string())?;
        let cfg = opts.to_config();
        let nac_exists = search::exists(g, &cfg);
        let agree = satisfiable == nac_exists;
        println!(
            "{}",
            json!({"satisfiable": satisfiable, "nac_exists": nac_exists, "agree": agree})
        );
        if !agree {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}
