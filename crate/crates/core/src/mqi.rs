//! Flow-based improvement loop and the full local clustering driver.
//!
//! For each repetition a BFS ball S is grown around the seed, the triangles
//! touching S are enumerated and the hypergraph model is built. Starting from
//! C = S, the improvement network is solved repeatedly; every round either
//! returns a strict subset of C containing the seed with strictly smaller
//! `cut/vol`, or certifies that no such subset exists. The best cluster over
//! all repetitions is reported.

use std::time::{Duration, Instant};

use crate::ball::{bfs_ball_with_min, MIN_BALL_SIZE};
use crate::error::{Error, Result};
use crate::evaluator::evaluate_exact;
use crate::flow_model::{build_flow_model, Capacity, ExpansionKind, NodeOrigin};
use crate::graph::{Graph, NodeId};
use crate::hypergraph::{Conductance, HypergraphModel, Pin};
use crate::maxflow::{max_flow, min_cut_sink_side};
use crate::motif::enumerate_triangles_touching;
use crate::nodeset::NodeSet;

/// Outcome of one max-flow round.
#[derive(Clone, Debug)]
pub struct ImproveStep {
    /// `None` when C₀ already has zero cut and no network was solved.
    pub flow_value: Option<Capacity>,
    pub trivial_cut_weight: Option<Capacity>,
    /// Strict improvement found by the round, over local indices.
    pub cluster: Option<NodeSet>,
}

pub fn improve_step(
    h: &HypergraphModel,
    c0: &NodeSet,
    seed: Pin,
    kind: ExpansionKind,
) -> Result<ImproveStep> {
    if !c0.contains(seed) {
        return Err(Error::InvalidFlowModel("seed is not in the cluster"));
    }
    if h.weighted_volume(c0) == 0 {
        return Err(Error::UndefinedConductance);
    }
    if h.cut_net(c0) == 0 {
        return Ok(ImproveStep {
            flow_value: None,
            trivial_cut_weight: None,
            cluster: None,
        });
    }
    let net = build_flow_model(h, c0, seed, kind)?;
    let state = max_flow(&net);
    let trivial = net.trivial_cut_weight();
    let cluster = if state.value() < trivial {
        let side = min_cut_sink_side(&net, &state);
        let members = (0..net.node_count()).filter_map(|v| match net.origin(v) {
            NodeOrigin::Cluster(p) if side[v] => Some(p),
            _ => None,
        });
        Some(NodeSet::from_iter(h.local_count(), members))
    } else {
        None
    };
    Ok(ImproveStep {
        flow_value: Some(state.value()),
        trivial_cut_weight: Some(trivial),
        cluster,
    })
}

/// One improvement round: a strict subset of `c0` containing `seed` with
/// strictly smaller local conductance, or `None` if no such subset exists.
pub fn improve_once(
    h: &HypergraphModel,
    c0: &NodeSet,
    seed: Pin,
    kind: ExpansionKind,
) -> Result<Option<NodeSet>> {
    Ok(improve_step(h, c0, seed, kind)?.cluster)
}

#[derive(Clone, Debug)]
pub struct SocialParams {
    /// Number of repetitions with distinct balls.
    pub alpha: usize,
    /// BFS depth per repetition; length must equal `alpha`.
    pub layers: Vec<usize>,
    pub expansion: ExpansionKind,
    /// Minimum ball size enforced on the last repetition.
    pub min_ball: Option<usize>,
    /// Global triangle count; enables exact evaluation and assumption checks.
    pub triangle_total: Option<u64>,
}

impl Default for SocialParams {
    fn default() -> Self {
        Self {
            alpha: 3,
            layers: vec![1, 2, 3],
            expansion: ExpansionKind::Clique,
            min_ball: Some(MIN_BALL_SIZE),
            triangle_total: None,
        }
    }
}

impl SocialParams {
    pub fn validate(&self) -> Result<()> {
        if self.alpha == 0 {
            return Err(Error::InvalidParams("alpha must be at least 1".into()));
        }
        if self.layers.len() != self.alpha {
            return Err(Error::InvalidParams(format!(
                "layers schedule has {} entries but alpha is {}",
                self.layers.len(),
                self.alpha
            )));
        }
        if self.layers.contains(&0) {
            return Err(Error::InvalidParams("layer counts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterStatus {
    Ok,
    /// The ball was the seed's whole connected component and held a motif.
    WholeComponentZero,
    /// No repetition found a motif near the seed.
    NoMotifs,
}

impl ClusterStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::WholeComponentZero => "whole-component-zero",
            Self::NoMotifs => "no-motifs",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    /// Cluster solved in this round, as dense graph ids (ascending).
    pub cluster: Vec<NodeId>,
    pub local_conductance: Conductance,
    pub flow_value: Option<Capacity>,
}

#[derive(Clone, Debug)]
pub struct RepetitionTrace {
    pub layers: usize,
    pub ball_size: usize,
    pub motif_count: usize,
    pub whole_component: bool,
    /// d_µ(S) ≤ d_µ(V∖S), when the global triangle count is known.
    pub assumption_holds: Option<bool>,
    pub steps: Vec<TraceStep>,
}

#[derive(Clone, Debug, Default)]
pub struct PhaseTimings {
    pub ball: Duration,
    pub enumeration: Duration,
    pub model: Duration,
    pub flow: Duration,
    pub total: Duration,
}

#[derive(Clone, Debug)]
pub struct ClusteringResult {
    pub seed: NodeId,
    pub status: ClusterStatus,
    /// Best cluster in dense graph ids (ascending); empty for `NoMotifs`.
    pub best_cluster: Vec<NodeId>,
    pub local_conductance: Option<Conductance>,
    pub exact_conductance: Option<Conductance>,
    /// Whether every repetition's ball satisfied d_µ(S) ≤ d_µ(V∖S); `None`
    /// when unverified.
    pub assumption_holds: Option<bool>,
    pub best_repetition: Option<usize>,
    pub timings: PhaseTimings,
    pub traces: Vec<RepetitionTrace>,
}

impl ClusteringResult {
    pub fn original_ids(&self, g: &Graph) -> Vec<u64> {
        self.best_cluster.iter().map(|&v| g.original_id(v)).collect()
    }
}

fn to_global(h: &HypergraphModel, c: &NodeSet) -> Vec<NodeId> {
    let mut ids: Vec<NodeId> = c.iter().map(|p| h.global_id(p)).collect();
    ids.sort_unstable();
    ids
}

/// Runs the improvement loop from `start` until no round improves. Returns
/// the final cluster and appends one trace step per solved round.
pub fn improve_to_fixpoint(
    h: &HypergraphModel,
    start: NodeSet,
    seed: Pin,
    kind: ExpansionKind,
    steps: &mut Vec<TraceStep>,
) -> Result<NodeSet> {
    let mut c = start;
    loop {
        let step = improve_step(h, &c, seed, kind)?;
        steps.push(TraceStep {
            cluster: to_global(h, &c),
            local_conductance: h.local_conductance(&c)?,
            flow_value: step.flow_value,
        });
        match step.cluster {
            Some(next) => c = next,
            None => return Ok(c),
        }
    }
}

/// Local motif clustering around `seed` for the triangle motif.
pub fn local_cluster(g: &Graph, seed: NodeId, params: &SocialParams) -> Result<ClusteringResult> {
    params.validate()?;
    if seed as usize >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: seed as u64,
            node_count: g.node_count(),
        });
    }
    let started = Instant::now();
    let mut timings = PhaseTimings::default();
    let mut traces = Vec::with_capacity(params.alpha);
    let mut best: Option<(Conductance, Vec<NodeId>, usize)> = None;
    let mut status = ClusterStatus::NoMotifs;

    for (rep, &layers) in params.layers.iter().enumerate() {
        let last = rep + 1 == params.layers.len();
        let t = Instant::now();
        let ball = bfs_ball_with_min(g, seed, layers, if last { params.min_ball } else { None });
        timings.ball += t.elapsed();

        let t = Instant::now();
        let motifs = enumerate_triangles_touching(g, &ball.nodes);
        timings.enumeration += t.elapsed();

        let mut trace = RepetitionTrace {
            layers: ball.depth_used,
            ball_size: ball.nodes.len(),
            motif_count: motifs.len(),
            whole_component: ball.whole_component,
            assumption_holds: params.triangle_total.map(|total| {
                let inside = motifs.motif_volume(ball.nodes.iter());
                inside <= (3 * total).saturating_sub(inside)
            }),
            steps: Vec::new(),
        };

        if motifs.is_empty() {
            traces.push(trace);
            continue;
        }

        if ball.whole_component {
            trace.steps.push(TraceStep {
                cluster: ball.nodes.sorted(),
                local_conductance: Conductance::new(0, 1),
                flow_value: None,
            });
            traces.push(trace);
            best = Some((Conductance::new(0, 1), ball.nodes.sorted(), rep));
            status = ClusterStatus::WholeComponentZero;
            break;
        }

        let t = Instant::now();
        let h = HypergraphModel::build(&ball.nodes, &motifs)?;
        let seed_local = h.local_id(seed).expect("seed is in its own ball");
        // nodes outside every net change neither cut nor volume
        let start = NodeSet::from_iter(
            h.local_count(),
            (0..h.local_count() as Pin).filter(|&p| p == seed_local || h.weighted_degree(p) > 0),
        );
        timings.model += t.elapsed();

        let t = Instant::now();
        let fixpoint = improve_to_fixpoint(&h, start, seed_local, params.expansion, &mut trace.steps)?;
        timings.flow += t.elapsed();

        let phi = h.local_conductance(&fixpoint)?;
        if best.as_ref().is_none_or(|(b, _, _)| phi < *b) {
            best = Some((phi, to_global(&h, &fixpoint), rep));
        }
        status = ClusterStatus::Ok;
        traces.push(trace);
    }

    let (local_conductance, best_cluster, best_repetition) = match best {
        Some((phi, cluster, rep)) => (Some(phi), cluster, Some(rep)),
        None => (None, Vec::new(), None),
    };
    let exact_conductance = match params.triangle_total {
        Some(total) if !best_cluster.is_empty() => {
            let c = NodeSet::from_iter(g.node_count(), best_cluster.iter().copied());
            evaluate_exact(g, &c, total).ok().map(|e| e.conductance)
        }
        _ => None,
    };
    let assumption_holds = params
        .triangle_total
        .map(|_| traces.iter().all(|t| t.assumption_holds == Some(true)));
    timings.total = started.elapsed();

    Ok(ClusteringResult {
        seed,
        status,
        best_cluster,
        local_conductance,
        exact_conductance,
        assumption_holds,
        best_repetition,
        timings,
        traces,
    })
}
