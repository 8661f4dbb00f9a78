//! Library side of the `social` command: seed selection, batch runs over a
//! worker pool, record/summary output and performance profiles.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use social_core::{
    count_triangles_global, load_edge_list, local_cluster, Conductance, Graph, NodeId, SocialParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalMode {
    /// Count all triangles once and report conductance in the graph.
    Exact,
    /// Report conductance in the local model only.
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

#[derive(Clone, Debug)]
pub enum SeedSource {
    /// File with one original node id per line.
    File(PathBuf),
    Random { count: usize, rng_seed: u64 },
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub graph: PathBuf,
    pub seeds: SeedSource,
    pub params: SocialParams,
    pub eval: EvalMode,
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    /// Worker count; `None` lets rayon decide.
    pub threads: Option<usize>,
}

/// One line of output per seed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Record {
    pub seed: u64,
    pub status: String,
    pub cluster_size: usize,
    pub conductance_local: Option<f64>,
    pub conductance_exact: Option<f64>,
    /// `holds`, `violated` or `unverified`.
    pub assumption: String,
    pub time_ball_s: f64,
    pub time_enum_s: f64,
    pub time_model_s: f64,
    pub time_flow_s: f64,
    pub time_total_s: f64,
    /// Original node ids, ascending.
    pub cluster: Vec<u64>,
}

impl Record {
    /// The conductance a summary should use: exact when available.
    pub fn conductance(&self) -> Option<f64> {
        self.conductance_exact.or(self.conductance_local)
    }
}

// CSV cannot hold a list column; the cluster is space separated.
#[derive(Serialize)]
struct CsvRecord<'a> {
    seed: u64,
    status: &'a str,
    cluster_size: usize,
    conductance_local: Option<f64>,
    conductance_exact: Option<f64>,
    assumption: &'a str,
    time_ball_s: f64,
    time_enum_s: f64,
    time_model_s: f64,
    time_flow_s: f64,
    time_total_s: f64,
    cluster: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Summary {
    pub seeds: usize,
    /// Seeds with a defined conductance.
    pub evaluated: usize,
    pub mean_conductance: Option<f64>,
    pub geomean_time_s: Option<f64>,
    pub geomean_cluster_size: Option<f64>,
}

fn ratio_f64(r: Conductance) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn geometric_mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut log_sum, mut n) = (0.0, 0usize);
    for v in values {
        log_sum += v.ln();
        n += 1;
    }
    (n > 0).then(|| (log_sum / n as f64).exp())
}

/// Conductance can be zero, so it is averaged arithmetically; times and
/// sizes use the geometric mean.
pub fn summarize(records: &[Record]) -> Summary {
    let phis: Vec<f64> = records.iter().filter_map(Record::conductance).collect();
    Summary {
        seeds: records.len(),
        evaluated: phis.len(),
        mean_conductance: (!phis.is_empty()).then(|| phis.iter().sum::<f64>() / phis.len() as f64),
        // clock resolution can report 0 for trivial seeds
        geomean_time_s: geometric_mean(records.iter().map(|r| r.time_total_s.max(1e-9))),
        geomean_cluster_size: geometric_mean(
            records.iter().filter(|r| r.cluster_size > 0).map(|r| r.cluster_size as f64),
        ),
    }
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    load_edge_list(BufReader::new(file)).with_context(|| format!("cannot load {}", path.display()))
}

/// `count` distinct nodes drawn uniformly; the same `rng_seed` always gives
/// the same list.
pub fn sample_seeds(g: &Graph, count: usize, rng_seed: u64) -> Result<Vec<NodeId>> {
    let n = g.node_count();
    if count > n {
        bail!("cannot sample {count} seeds from a graph with {n} nodes");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    Ok(rand::seq::index::sample(&mut rng, n, count)
        .into_iter()
        .map(|v| v as NodeId)
        .collect())
}

/// Reads original ids (one per line, `#` comments allowed) and maps them to
/// dense ids.
pub fn read_seed_file(g: &Graph, path: &Path) -> Result<Vec<NodeId>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut seeds = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let token = line.trim();
        if token.is_empty() || token.starts_with('#') {
            continue;
        }
        let id: u64 = token
            .parse()
            .with_context(|| format!("{}:{}: bad seed id {token:?}", path.display(), i + 1))?;
        match g.dense_id(id) {
            Some(v) => seeds.push(v),
            None => bail!("seed {id} is not a node of the graph"),
        }
    }
    Ok(seeds)
}

fn record_for(g: &Graph, seed: NodeId, params: &SocialParams) -> Result<Record> {
    let r = local_cluster(g, seed, params)
        .with_context(|| format!("seed {} failed", g.original_id(seed)))?;
    let assumption = match r.assumption_holds {
        Some(true) => "holds",
        Some(false) => "violated",
        None => "unverified",
    };
    let mut cluster = r.original_ids(g);
    cluster.sort_unstable();
    Ok(Record {
        seed: g.original_id(seed),
        status: r.status.as_str().to_string(),
        cluster_size: cluster.len(),
        conductance_local: r.local_conductance.map(ratio_f64),
        conductance_exact: r.exact_conductance.map(ratio_f64),
        assumption: assumption.to_string(),
        time_ball_s: r.timings.ball.as_secs_f64(),
        time_enum_s: r.timings.enumeration.as_secs_f64(),
        time_model_s: r.timings.model.as_secs_f64(),
        time_flow_s: r.timings.flow.as_secs_f64(),
        time_total_s: r.timings.total.as_secs_f64(),
        cluster,
    })
}

/// Runs every seed on a pool of `threads` workers. Records come back in seed
/// order regardless of scheduling.
pub fn cluster_seeds(
    g: &Graph,
    seeds: &[NodeId],
    params: &SocialParams,
    threads: Option<usize>,
) -> Result<Vec<Record>> {
    use rayon::prelude::*;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        pool = pool.num_threads(t);
    }
    let pool = pool.build()?;
    pool.install(|| seeds.par_iter().map(|&s| record_for(g, s, params)).collect())
}

pub fn write_records<W: Write>(
    out: W,
    format: OutputFormat,
    records: &[Record],
    summary: &Summary,
) -> Result<()> {
    match format {
        OutputFormat::Jsonl => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            serde_json::to_writer(&mut out, &serde_json::json!({ "summary": summary }))?;
            out.write_all(b"\n")?;
            out.flush()?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(CsvRecord {
                    seed: r.seed,
                    status: &r.status,
                    cluster_size: r.cluster_size,
                    conductance_local: r.conductance_local,
                    conductance_exact: r.conductance_exact,
                    assumption: &r.assumption,
                    time_ball_s: r.time_ball_s,
                    time_enum_s: r.time_enum_s,
                    time_model_s: r.time_model_s,
                    time_flow_s: r.time_flow_s,
                    time_total_s: r.time_total_s,
                    cluster: r.cluster.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                })?;
            }
            w.flush()?;
            let mut out = w.into_inner().map_err(|e| e.into_error())?;
            writeln!(out, "# summary: {}", serde_json::to_string(summary)?)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// Loads the graph, picks seeds, clusters them and writes the output.
pub fn run(config: &RunConfig) -> Result<Summary> {
    config.params.validate()?;
    let g = load_graph(&config.graph)?;
    let seeds = match &config.seeds {
        SeedSource::File(path) => read_seed_file(&g, path)?,
        SeedSource::Random { count, rng_seed } => sample_seeds(&g, *count, *rng_seed)?,
    };
    let mut params = config.params.clone();
    params.triangle_total = match config.eval {
        EvalMode::Exact => Some(count_triangles_global(&g)),
        EvalMode::Local => None,
    };
    let records = cluster_seeds(&g, &seeds, &params, config.threads)?;
    let summary = summarize(&records);
    match &config.output {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_records(std::io::BufWriter::new(file), config.format, &records, &summary)?;
        }
        None => write_records(std::io::stdout().lock(), config.format, &records, &summary)?,
    }
    Ok(summary)
}

/// Reads the per-seed records of a JSONL run, skipping the summary line.
pub fn read_jsonl_records(path: &Path) -> Result<Vec<Record>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut records = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: invalid JSON", path.display(), i + 1))?;
        if value.get("summary").is_some() {
            continue;
        }
        records.push(
            serde_json::from_value(value)
                .with_context(|| format!("{}:{}: not a record", path.display(), i + 1))?,
        );
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ProfileMetric {
    Conductance,
    Time,
}

/// One step of a performance profile: the fraction of instances on which
/// `algorithm` is within factor `tau` of the best.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ProfilePoint {
    pub algorithm: String,
    pub tau: f64,
    pub fraction: f64,
}

fn metric_value(r: &Record, metric: ProfileMetric) -> Option<f64> {
    match metric {
        ProfileMetric::Conductance => r.conductance(),
        ProfileMetric::Time => Some(r.time_total_s),
    }
}

/// Performance profile over the seeds present in every run. An instance
/// whose best value is 0 gives ratio 1 to runs that also hit 0 and ratio ∞
/// to the rest; a run with no value on an instance gets ratio ∞.
pub fn performance_profile(runs: &[(String, Vec<Record>)], metric: ProfileMetric) -> Vec<ProfilePoint> {
    let by_seed: Vec<HashMap<u64, &Record>> = runs
        .iter()
        .map(|(_, recs)| recs.iter().map(|r| (r.seed, r)).collect())
        .collect();
    let mut instances: Vec<u64> = runs
        .first()
        .map(|(_, recs)| recs.iter().map(|r| r.seed).collect())
        .unwrap_or_default();
    instances.retain(|s| by_seed.iter().all(|m| m.contains_key(s)));
    instances.sort_unstable();
    instances.dedup();

    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); runs.len()];
    for seed in &instances {
        let values: Vec<Option<f64>> = by_seed.iter().map(|m| metric_value(m[seed], metric)).collect();
        let best = values.iter().flatten().copied().fold(f64::INFINITY, f64::min);
        for (k, v) in values.iter().enumerate() {
            let ratio = match *v {
                None => f64::INFINITY,
                Some(v) if best == 0.0 => {
                    if v == 0.0 {
                        1.0
                    } else {
                        f64::INFINITY
                    }
                }
                Some(v) => v / best,
            };
            ratios[k].push(ratio);
        }
    }

    let mut taus: Vec<f64> = ratios.iter().flatten().copied().filter(|r| r.is_finite()).collect();
    taus.sort_by(f64::total_cmp);
    taus.dedup();
    let total = instances.len().max(1) as f64;
    let mut points = Vec::new();
    for ((name, _), rs) in runs.iter().zip(&ratios) {
        for &tau in &taus {
            let within = rs.iter().filter(|&&r| r <= tau).count();
            points.push(ProfilePoint {
                algorithm: name.clone(),
                tau,
                fraction: within as f64 / total,
            });
        }
    }
    points
}

/// Conductance distribution of a run, for reporting.
pub fn conductance_histogram(records: &[Record], buckets: usize) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for phi in records.iter().filter_map(Record::conductance) {
        let b = ((phi * buckets as f64) as usize).min(buckets - 1);
        *hist.entry(b).or_insert(0) += 1;
    }
    hist
}
