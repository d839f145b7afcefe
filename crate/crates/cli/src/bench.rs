//! Benchmark harness: batch runs over graph files and seeded fixtures,
//! per-strategy timing and check counters, CSV and JSON-lines reports.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use clap::Args;
use serde_json::json;

use nac_core::fixtures::{self, FixtureKind, FixtureParams};
use nac_core::graph::Graph;
use nac_core::mono::monochromatic_classes;
use nac_core::search::{self, CheckStats, SearchConfig};

use crate::input::{load_all_graphs, FormatArg};
use crate::{MergeArg, SearchOpts, StrategyArg};

pub const CSV_HEADER: &str = "graph_id,n,m,strategy,merge,bag_size,mean_ms,mask_candidates,cycle_rejections,full_checks,found,timed_out";

#[derive(Args, Clone)]
pub struct BenchArgs {
    /// Graph files (graph6 holds one graph per line).
    #[arg(long, num_args = 1..)]
    inputs: Vec<String>,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    /// Seeded fixture families, e.g. `cycles:4..10`, `prism-chains:3`,
    /// `grid-ladders:3..6`, `random-gnp:n=8,p=0.4,count=5`.
    #[arg(long, num_args = 1..)]
    fixture: Vec<String>,
    /// Strategies to compare.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "neighbors-degree")]
    strategies: Vec<StrategyArg>,
    /// Merge strategies to compare.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "linear")]
    merges: Vec<MergeArg>,
    #[arg(long, default_value_t = 4)]
    bag_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per graph and configuration; the mean time is reported.
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    /// Per-run time limit in milliseconds.
    #[arg(long, default_value_t = 30_000)]
    timeout_ms: u64,
    /// Stop each run at the first coloring, as `exists` does.
    #[arg(long)]
    first: bool,
    /// Disable small-cycle pre-checks.
    #[arg(long)]
    no_cycles: bool,
    /// Disable block decomposition.
    #[arg(long)]
    no_blocks: bool,
    /// Write the CSV report here instead of standard output.
    #[arg(long)]
    csv: Option<String>,
    /// Also write a JSON-lines report.
    #[arg(long)]
    jsonl: Option<String>,
    /// Exit nonzero when any run timed out.
    #[arg(long)]
    strict: bool,
    /// Worker threads; parallelism is across graphs only.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub graph_id: String,
    pub vertex_count: usize,
    pub class_count: usize,
    pub strategy: String,
    pub merge: String,
    pub bag_size: usize,
    pub mean_ms: f64,
    pub stats: CheckStats,
    pub found: u64,
    pub timed_out: bool,
}

impl BenchRecord {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.3},{},{},{},{},{}",
            self.graph_id,
            self.vertex_count,
            self.class_count,
            self.strategy,
            self.merge,
            self.bag_size,
            self.mean_ms,
            self.stats.mask_candidates,
            self.stats.cycle_rejections,
            self.stats.full_checks,
            self.found,
            self.timed_out
        )
    }

    fn json_line(&self) -> serde_json::Value {
        json!({
            "graph_id": self.graph_id,
            "n": self.vertex_count,
            "m": self.class_count,
            "strategy": self.strategy,
            "merge": self.merge,
            "bag_size": self.bag_size,
            "mean_ms": self.mean_ms,
            "mask_candidates": self.stats.mask_candidates,
            "cycle_rejections": self.stats.cycle_rejections,
            "full_checks": self.stats.full_checks,
            "found": self.found,
            "timed_out": self.timed_out,
        })
    }
}

fn strategy_name(s: StrategyArg) -> &'static str {
    match s {
        StrategyArg::None => "none",
        StrategyArg::Neighbors => "neighbors",
        StrategyArg::NeighborsDegree => "neighbors-degree",
    }
}

fn merge_name(m: MergeArg) -> &'static str {
    match m {
        MergeArg::Linear => "linear",
        MergeArg::SharedVertices => "shared-vertices",
    }
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, String> {
    if let Some((a, b)) = text.split_once("..") {
        let a = a.parse().map_err(|_| format!("bad range: {text}"))?;
        let b = b.parse().map_err(|_| format!("bad range: {text}"))?;
        Ok(a..=b)
    } else {
        let v: usize = text.parse().map_err(|_| format!("bad range: {text}"))?;
        Ok(v..=v)
    }
}

fn parse_fixture(spec: &str, seed: u64) -> Result<Vec<(String, Graph)>, String> {
    let (kind, params) = spec
        .split_once(':')
        .ok_or_else(|| format!("fixture spec needs kind:params, got {spec:?}"))?;
    match kind {
        "cycles" => Ok(fixtures::generate_fixtures(
            FixtureKind::Cycles,
            &FixtureParams { range: parse_range(params)?, ..FixtureParams::default() },
            seed,
        )),
        "prism-chains" => Ok(fixtures::generate_fixtures(
            FixtureKind::PrismChains,
            &FixtureParams { range: parse_range(params)?, ..FixtureParams::default() },
            seed,
        )),
        "grid-ladders" => Ok(fixtures::generate_fixtures(
            FixtureKind::GridLadders,
            &FixtureParams { range: parse_range(params)?, ..FixtureParams::default() },
            seed,
        )),
        "random-gnp" => {
            let mut n = 8usize;
            let mut p = 0.4f64;
            let mut count = 5usize;
            for kv in params.split(',') {
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| format!("bad fixture parameter {kv:?}"))?;
                match key {
                    "n" => n = value.parse().map_err(|_| format!("bad n: {value}"))?,
                    "p" => p = value.parse().map_err(|_| format!("bad p: {value}"))?,
                    "count" => count = value.parse().map_err(|_| format!("bad count: {value}"))?,
                    _ => return Err(format!("unknown fixture parameter {key:?}")),
                }
            }
            Ok(fixtures::generate_fixtures(
                FixtureKind::RandomGnp,
                &FixtureParams { range: n..=n, p, count },
                seed,
            ))
        }
        _ => Err(format!("unknown fixture kind {kind:?}")),
    }
}

struct RunPlan<'a> {
    strategies: &'a [StrategyArg],
    merges: &'a [MergeArg],
    base: SearchOpts,
    repeats: usize,
    timeout: Duration,
    first: bool,
}

fn bench_graph(id: &str, g: &Graph, plan: &RunPlan<'_>) -> Vec<BenchRecord> {
    let class_count = monochromatic_classes(g).len();
    let mut out = Vec::new();
    for &strategy in plan.strategies {
        for &merge in plan.merges {
            let opts = SearchOpts {
                strategy,
                merge,
                ..plan.base.clone()
            };
            let mut total = Duration::ZERO;
            let mut stats = CheckStats::default();
            let mut found = 0u64;
            let mut timed_out = false;
            for _ in 0..plan.repeats.max(1) {
                let cfg = SearchConfig {
                    deadline: Some(Instant::now() + plan.timeout),
                    ..opts.to_config()
                };
                let start = Instant::now();
                let mut stream = search::enumerate(g, &cfg);
                let yielded = if plan.first {
                    stream.next().map_or(0, |_| 1)
                } else {
                    stream.by_ref().count() as u64
                };
                total += start.elapsed();
                stats = stream.stats();
                found = yielded;
                timed_out |= stream.timed_out();
            }
            out.push(BenchRecord {
                graph_id: id.to_string(),
                vertex_count: g.vertex_count(),
                class_count,
                strategy: strategy_name(strategy).to_string(),
                merge: merge_name(merge).to_string(),
                bag_size: opts.bag_size,
                mean_ms: total.as_secs_f64() * 1e3 / plan.repeats.max(1) as f64,
                stats,
                found,
                timed_out,
            });
        }
    }
    out
}

pub fn run_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for path in &args.inputs {
        graphs.extend(load_all_graphs(path, args.format)?);
    }
    for spec in &args.fixture {
        graphs.extend(parse_fixture(spec, args.seed)?);
    }
    if graphs.is_empty() {
        return Err("no graphs: pass --inputs or --fixture".into());
    }

    let plan = RunPlan {
        strategies: &args.strategies,
        merges: &args.merges,
        base: SearchOpts {
            strategy: StrategyArg::NeighborsDegree,
            merge: MergeArg::Linear,
            bag_size: args.bag_size,
            seed: args.seed,
            cycles_depth: 4,
            cycles_per_class: 2,
            no_blocks: args.no_blocks,
            no_cycles: args.no_cycles,
        },
        repeats: args.repeats,
        timeout: Duration::from_millis(args.timeout_ms),
        first: args.first,
    };

    let workers = args.parallel.max(1).min(graphs.len());
    let mut records: Vec<BenchRecord> = if workers <= 1 {
        graphs
            .iter()
            .flat_map(|(id, g)| bench_graph(id, g, &plan))
            .collect()
    } else {
        // parallel across graphs only; timings stay per-run
        let slots: Mutex<Vec<Option<Vec<BenchRecord>>>> =
            Mutex::new(vec![None; graphs.len()]);
        let next = std::sync::atomic::AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let idx = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    if idx >= graphs.len() {
                        break;
                    }
                    let (id, g) = &graphs[idx];
                    let recs = bench_graph(id, g, &plan);
                    slots.lock().unwrap()[idx] = Some(recs);
                });
            }
        });
        slots
            .into_inner()
            .unwrap()
            .into_iter()
            .flat_map(|r| r.expect("worker filled every slot"))
            .collect()
    };
    records.sort_by(|a, b| {
        (&a.graph_id, &a.strategy, &a.merge).cmp(&(&b.graph_id, &b.strategy, &b.merge))
    });

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &records {
        csv.push_str(&r.csv_line());
        csv.push('\n');
    }
    match &args.csv {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| format!("{path}: {e}"))?;
            f.write_all(csv.as_bytes()).map_err(|e| format!("{path}: {e}"))?;
        }
        None => print!("{csv}"),
    }
    if let Some(path) = &args.jsonl {
        let mut f = std::fs::File::create(path).map_err(|e| format!("{path}: {e}"))?;
        for r in &records {
            writeln!(f, "{}", r.json_line()).map_err(|e| format!("{path}: {e}"))?;
        }
    }

    let any_timeout = records.iter().any(|r| r.timed_out);
    if args.strict && any_timeout {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
