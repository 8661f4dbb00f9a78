use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use social_cli::{
    performance_profile, read_jsonl_records, run, EvalMode, OutputFormat, ProfileMetric, RunConfig, SeedSource,
};
use social_core::flow_model::build_flow_model;
use social_core::{
    bfs_ball, count_triangles_global, enumerate_triangles_touching, ExpansionKind, HypergraphModel, NodeSet,
    SocialParams, MIN_BALL_SIZE,
};

/// Local motif clustering with triangle motifs.
#[derive(Parser)]
#[command(name = "social", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a batch of seeds and write one record per seed plus a summary.
    Run(RunArgs),
    /// Performance-profile points comparing two or more JSONL runs.
    Profile(ProfileArgs),
    /// Print the number of triangles in the graph.
    Triangles {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Write the graph back as a sorted edge list.
    Dump {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Debug dumps of the local model or the first improvement network.
    Inspect(InspectArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    graph: PathBuf,
    /// File with one original node id per line.
    #[arg(long, conflicts_with = "num_seeds")]
    seeds_file: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    num_seeds: usize,
    #[arg(long, default_value_t = 1)]
    rng_seed: u64,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    /// BFS depth per repetition, comma separated. Defaults to 1,2,...,alpha.
    #[arg(long, value_delimiter = ',')]
    layers: Option<Vec<usize>>,
    #[arg(long, default_value = "clique")]
    expansion: ExpansionKind,
    #[arg(long, value_enum, default_value = "exact")]
    eval: EvalMode,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Minimum size of the last ball; 0 disables growth.
    #[arg(long, default_value_t = MIN_BALL_SIZE)]
    min_ball: usize,
}

#[derive(Args)]
struct ProfileArgs {
    /// JSONL run to profile.
    #[arg(long)]
    input: PathBuf,
    /// JSONL runs to compare against.
    #[arg(long, required = true)]
    profile_against: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "conductance")]
    metric: ProfileMetric,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum InspectWhat {
    Hypergraph,
    Dimacs,
}

#[derive(Args)]
struct InspectArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Original id of the seed.
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    layers: usize,
    #[arg(long, value_enum, default_value = "hypergraph")]
    what: InspectWhat,
    #[arg(long, default_value = "clique")]
    expansion: ExpansionKind,
}

fn run_command(args: RunArgs) -> Result<()> {
    let layers = args.layers.unwrap_or_else(|| (1..=args.alpha).collect());
    let config = RunConfig {
        graph: args.graph,
        seeds: match args.seeds_file {
            Some(path) => SeedSource::File(path),
            None => SeedSource::Random {
                count: args.num_seeds,
                rng_seed: args.rng_seed,
            },
        },
        params: SocialParams {
            alpha: args.alpha,
            layers,
            expansion: args.expansion,
            min_ball: (args.min_ball > 0).then_some(args.min_ball),
            triangle_total: None,
        },
        eval: args.eval,
        format: args.format,
        output: args.output,
        threads: worker_count()?,
    };
    let summary = run(&config)?;
    if config.output.is_some() {
        eprintln!("{}", serde_json::to_string(&summary)?);
    }
    Ok(())
}

fn worker_count() -> Result<Option<usize>> {
    match std::env::var("SOCIAL_THREADS") {
        Ok(v) => {
            let n: usize = v.parse().with_context(|| format!("SOCIAL_THREADS={v:?} is not a number"))?;
            if n == 0 {
                bail!("SOCIAL_THREADS must be at least 1");
            }
            Ok(Some(n))
        }
        Err(_) => Ok(None),
    }
}

fn profile_command(args: ProfileArgs) -> Result<()> {
    let mut runs = Vec::new();
    for path in std::iter::once(&args.input).chain(&args.profile_against) {
        runs.push((path.display().to_string(), read_jsonl_records(path)?));
    }
    let mut out = csv::Writer::from_writer(std::io::stdout().lock());
    for p in performance_profile(&runs, args.metric) {
        out.serialize(p)?;
    }
    out.flush()?;
    Ok(())
}

fn inspect_command(args: InspectArgs) -> Result<()> {
    let g = social_cli::load_graph(&args.graph)?;
    let Some(seed) = g.dense_id(args.seed) else {
        bail!("seed {} is not a node of the graph", args.seed);
    };
    let ball = bfs_ball(&g, seed, args.layers, false);
    let h = HypergraphModel::build(&ball.nodes, &enumerate_triangles_touching(&g, &ball.nodes))?;
    let mut out = std::io::stdout().lock();
    match args.what {
        InspectWhat::Hypergraph => {
            // the dump uses dense ids; translate back for the user
            for line in h.dump().lines() {
                let (w, pins) = line.split_once(':').unwrap_or((line, ""));
                let mut ids: Vec<u64> = Vec::new();
                let mut has_r = false;
                for p in pins.split_whitespace() {
                    match p.parse::<u32>() {
                        Ok(v) => ids.push(g.original_id(v)),
                        Err(_) => has_r = true,
                    }
                }
                ids.sort_unstable();
                let mut pins: Vec<String> = ids.iter().map(u64::to_string).collect();
                if has_r {
                    pins.push("r".into());
                }
                writeln!(out, "{w}: {}", pins.join(" "))?;
            }
        }
        InspectWhat::Dimacs => {
            let seed_pin = h.local_id(seed).expect("seed is in its ball");
            let c0 = NodeSet::from_iter(
                h.local_count(),
                (0..h.local_count() as u32).filter(|&p| p == seed_pin || h.weighted_degree(p) > 0),
            );
            let net = build_flow_model(&h, &c0, seed_pin, args.expansion)?;
            out.write_all(net.to_dimacs().as_bytes())?;
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => run_command(args),
        Command::Profile(args) => profile_command(args),
        Command::Triangles { graph } => {
            let g = social_cli::load_graph(&graph)?;
            println!("{}", count_triangles_global(&g));
            Ok(())
        }
        Command::Dump { graph } => {
            let g = social_cli::load_graph(&graph)?;
            let mut out = std::io::BufWriter::new(std::io::stdout().lock());
            g.write_edge_list(&mut out)?;
            out.flush()?;
            Ok(())
        }
        Command::Inspect(args) => inspect_command(args),
    }
}
