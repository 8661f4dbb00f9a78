//! Flow networks and the quotient-cut improvement model built on H_µ.
//!
//! Given H_µ, a cluster C₀ ⊆ S and the seed u ∈ C₀, the network is built by
//! expanding each net into directed arcs, contracting everything outside C₀
//! (plus auxiliaries not attached to C₀) into the source, scaling interior
//! capacities by 𝔡_𝔴(C₀), adding sink arcs `(v, t)` of capacity
//! `cut(C₀)·𝔡_𝔴(v)` and an uncuttable arc `(u, t)`. Any s-t cut with sink side
//! B₂ and C = C₀ ∩ B₂ then weighs at least
//! `cut(C₀)·𝔡_𝔴(C₀∖C) + cut(C)·𝔡_𝔴(C₀)`, with equality for the best placement
//! of auxiliary nodes, so the max-flow value drops below
//! `cut(C₀)·𝔡_𝔴(C₀)` exactly when some C ⊂ C₀ containing u has smaller
//! `cut/vol`.
//!
//! Every finite capacity carries an extra global factor `scale = motif size − 1`
//! so the clique expansion's division by `|e| − 1` stays integral.

use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphModel, Pin};
use crate::nodeset::NodeSet;

pub type Capacity = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    Clique,
    Star,
    Lawler,
}

impl ExpansionKind {
    pub const ALL: [ExpansionKind; 3] = [Self::Clique, Self::Star, Self::Lawler];

    pub fn name(self) -> &'static str {
        match self {
            Self::Clique => "clique",
            Self::Star => "star",
            Self::Lawler => "lawler",
        }
    }
}

impl fmt::Display for ExpansionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ExpansionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique" => Ok(Self::Clique),
            "star" => Ok(Self::Star),
            "lawler" => Ok(Self::Lawler),
            other => Err(Error::InvalidParams(format!("unknown expansion {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuxRole {
    /// Star-expansion center.
    Star,
    /// Lawler `w₁`: receives uncuttable arcs from the pins.
    LawlerIn,
    /// Lawler `w₂`: sends uncuttable arcs to the pins.
    LawlerOut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeOrigin {
    Source,
    Sink,
    /// A member of C₀, by local index in H_µ.
    Cluster(Pin),
    Auxiliary { net: usize, role: AuxRole },
    /// Plain node of a network not built from a hypergraph model.
    Plain,
}

/// Directed network in CSR form. Each stored arc has a twin in the opposite
/// direction (`reverse`); a twin that was not requested has capacity 0.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    source: usize,
    sink: usize,
    first_out: Vec<usize>,
    head: Vec<usize>,
    capacity: Vec<Capacity>,
    reverse: Vec<usize>,
    infinite: Capacity,
    origin: Vec<NodeOrigin>,
    scale: Capacity,
    trivial_cut_weight: Capacity,
}

impl FlowNetwork {
    pub fn node_count(&self) -> usize {
        self.first_out.len() - 1
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Arc index range of node `v`.
    #[inline]
    pub fn arcs_of(&self, v: usize) -> std::ops::Range<usize> {
        self.first_out[v]..self.first_out[v + 1]
    }

    #[inline]
    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    #[inline]
    pub fn capacity(&self, arc: usize) -> Capacity {
        self.capacity[arc]
    }

    #[inline]
    pub fn reverse(&self, arc: usize) -> usize {
        self.reverse[arc]
    }

    pub fn arc_slot_count(&self) -> usize {
        self.head.len()
    }

    /// The uncuttable-capacity sentinel; exceeds the sum of all finite
    /// capacities.
    pub fn infinite(&self) -> Capacity {
        self.infinite
    }

    pub fn is_infinite(&self, arc: usize) -> bool {
        self.capacity[arc] == self.infinite
    }

    pub fn origin(&self, v: usize) -> NodeOrigin {
        self.origin[v]
    }

    pub fn scale(&self) -> Capacity {
        self.scale
    }

    /// scale · cut(C₀) · 𝔡_𝔴(C₀) for networks built from a hypergraph model.
    pub fn trivial_cut_weight(&self) -> Capacity {
        self.trivial_cut_weight
    }

    /// All arcs with positive capacity as `(from, to, capacity)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Capacity)> + '_ {
        (0..self.node_count()).flat_map(move |v| {
            self.arcs_of(v)
                .filter(move |&a| self.capacity[a] > 0)
                .map(move |a| (v, self.head[a], self.capacity[a]))
        })
    }

    /// Total capacity of arcs entering `sink_side` from its complement.
    pub fn cut_weight(&self, sink_side: &[bool]) -> i128 {
        self.arcs()
            .filter(|&(u, v, _)| !sink_side[u] && sink_side[v])
            .map(|(_, _, c)| c as i128)
            .sum()
    }

    /// DIMACS max-flow text (1-based node ids).
    pub fn to_dimacs(&self) -> String {
        let arcs: Vec<_> = self.arcs().collect();
        let mut out = String::new();
        let _ = writeln!(out, "p max {} {}", self.node_count(), arcs.len());
        let _ = writeln!(out, "n {} s", self.source + 1);
        let _ = writeln!(out, "n {} t", self.sink + 1);
        for (u, v, c) in arcs {
            let _ = writeln!(out, "a {} {} {}", u + 1, v + 1, c);
        }
        out
    }
}

/// Accumulates arcs, merging parallel ones by summing capacities, and lays
/// them out with paired reverse arcs.
#[derive(Clone, Debug)]
pub struct FlowNetworkBuilder {
    source: usize,
    sink: usize,
    origin: Vec<NodeOrigin>,
    // (from, to, capacity); None = infinite
    arcs: Vec<(usize, usize, Option<Capacity>)>,
    scale: Capacity,
    trivial_cut_weight: Capacity,
}

impl FlowNetworkBuilder {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        let mut origin = vec![NodeOrigin::Plain; node_count];
        origin[source] = NodeOrigin::Source;
        origin[sink] = NodeOrigin::Sink;
        Self {
            source,
            sink,
            origin,
            arcs: Vec::new(),
            scale: 1,
            trivial_cut_weight: 0,
        }
    }

    pub fn add_node(&mut self, origin: NodeOrigin) -> usize {
        self.origin.push(origin);
        self.origin.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.origin.len()
    }

    /// Adds `cap` to arc `(u, v)`. Zero capacities and self-loops are ignored.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: Capacity) {
        assert!(cap >= 0, "negative capacity");
        if u != v && cap > 0 {
            self.arcs.push((u, v, Some(cap)));
        }
    }

    pub fn add_infinite_arc(&mut self, u: usize, v: usize) {
        if u != v {
            self.arcs.push((u, v, None));
        }
    }

    pub fn build(self) -> Result<FlowNetwork> {
        let n = self.origin.len();
        for &(u, v, _) in &self.arcs {
            assert!(u < n && v < n, "arc endpoint out of range");
        }
        // bucket by the smaller endpoint, then sort each bucket by
        // (larger endpoint, direction); forward means u < v
        let mut bucket_start = vec![0usize; n + 1];
        for &(u, v, _) in &self.arcs {
            bucket_start[u.min(v) + 1] += 1;
        }
        for i in 0..n {
            bucket_start[i + 1] += bucket_start[i];
        }
        let mut fill = bucket_start.clone();
        let mut keyed: Vec<(usize, bool, Option<Capacity>)> = vec![(0, false, None); self.arcs.len()];
        for &(u, v, c) in &self.arcs {
            let a = u.min(v);
            keyed[fill[a]] = (u.max(v), u > v, c);
            fill[a] += 1;
        }

        // (a, b, a->b, b->a) per unordered pair; infinite absorbs finite
        let mut pairs: Vec<(usize, usize, Option<Capacity>, Option<Capacity>)> = Vec::with_capacity(keyed.len());
        let add = |slot: &mut Option<Capacity>, c: Option<Capacity>| -> Result<()> {
            *slot = match (*slot, c) {
                (Some(x), Some(y)) => Some(x.checked_add(y).ok_or(Error::CapacityOverflow)?),
                _ => None,
            };
            Ok(())
        };
        for a in 0..n {
            let bucket = &mut keyed[bucket_start[a]..bucket_start[a + 1]];
            bucket.sort_unstable_by_key(|&(b, backward, _)| (b, backward));
            let first = pairs.len();
            for &(b, backward, c) in bucket.iter() {
                if pairs.len() == first || pairs.last().unwrap().1 != b {
                    pairs.push((a, b, Some(0), Some(0)));
                }
                let last = pairs.last_mut().unwrap();
                if backward {
                    add(&mut last.3, c)?;
                } else {
                    add(&mut last.2, c)?;
                }
            }
        }

        let mut finite_total: Capacity = 0;
        for &(_, _, ab, ba) in &pairs {
            for c in [ab, ba].into_iter().flatten() {
                finite_total = finite_total.checked_add(c).ok_or(Error::CapacityOverflow)?;
            }
        }
        let infinite = finite_total.checked_add(1).ok_or(Error::CapacityOverflow)?;
        let pairs: Vec<(usize, usize, Capacity, Capacity)> = pairs
            .into_iter()
            .map(|(a, b, ab, ba)| (a, b, ab.unwrap_or(infinite), ba.unwrap_or(infinite)))
            .collect();

        let mut degree = vec![0usize; n + 1];
        for &(a, b, _, _) in &pairs {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut first_out = vec![0usize; n + 1];
        for v in 0..n {
            first_out[v + 1] = first_out[v] + degree[v];
        }
        let slots = first_out[n];
        let mut fill = first_out.clone();
        let mut head = vec![0usize; slots];
        let mut capacity = vec![0 as Capacity; slots];
        let mut reverse = vec![0usize; slots];
        for (a, b, ab, ba) in pairs {
            let i = fill[a];
            let j = fill[b];
            fill[a] += 1;
            fill[b] += 1;
            head[i] = b;
            capacity[i] = ab;
            reverse[i] = j;
            head[j] = a;
            capacity[j] = ba;
            reverse[j] = i;
        }

        Ok(FlowNetwork {
            source: self.source,
            sink: self.sink,
            first_out,
            head,
            capacity,
            reverse,
            infinite,
            origin: self.origin,
            scale: self.scale,
            trivial_cut_weight: self.trivial_cut_weight,
        })
    }
}

fn mul(a: Capacity, b: Capacity) -> Result<Capacity> {
    a.checked_mul(b).ok_or(Error::CapacityOverflow)
}

fn to_cap(x: u64) -> Result<Capacity> {
    Capacity::try_from(x).map_err(|_| Error::CapacityOverflow)
}

/// Builds the improvement network for cluster `c0` (local indices of `h`)
/// and seed `seed` (a local index in `c0`).
pub fn build_flow_model(
    h: &HypergraphModel,
    c0: &NodeSet,
    seed: Pin,
    kind: ExpansionKind,
) -> Result<FlowNetwork> {
    if c0.universe() != h.local_count() {
        return Err(Error::InvalidFlowModel("cluster universe does not match the model"));
    }
    if !c0.contains(seed) {
        return Err(Error::InvalidFlowModel("seed is not in the cluster"));
    }
    if matches!(kind, ExpansionKind::Clique | ExpansionKind::Star) {
        let pins = h.max_net_size().max(h.motif_size());
        if pins > 3 {
            return Err(Error::UnsupportedExpansion {
                kind: kind.name(),
                pins,
            });
        }
    }
    let volume = to_cap(h.weighted_volume(c0))?;
    if volume == 0 {
        return Err(Error::InvalidFlowModel("cluster has zero weighted volume"));
    }
    let cut = to_cap(h.cut_net(c0))?;
    if cut == 0 {
        return Err(Error::InvalidFlowModel("cluster has zero cut"));
    }
    let scale = (h.motif_size() as Capacity - 1).max(1);

    const SOURCE: usize = 0;
    const SINK: usize = 1;
    let mut b = FlowNetworkBuilder::new(2, SOURCE, SINK);
    let mut flow_id = vec![SOURCE; h.local_count() + 1];
    for v in c0.iter() {
        flow_id[v as usize] = b.add_node(NodeOrigin::Cluster(v));
    }
    let in_c0 = |p: Pin| (p as usize) < h.local_count() && c0.contains(p);

    let mut inside: Vec<usize> = Vec::new();
    for e in h.nets_touching(c0) {
        let pins = h.net(e);
        inside.clear();
        inside.extend(pins.iter().filter(|&&p| in_c0(p)).map(|&p| flow_id[p as usize]));
        let outside = pins.len() - inside.len();
        let weight = mul(mul(scale, to_cap(h.net_weight(e))?)?, volume)?;

        match kind {
            ExpansionKind::Clique => {
                let per_arc = weight / (pins.len() as Capacity - 1);
                debug_assert_eq!(per_arc * (pins.len() as Capacity - 1), weight);
                for &x in &inside {
                    for &y in &inside {
                        b.add_arc(x, y, per_arc);
                    }
                    b.add_arc(SOURCE, x, mul(per_arc, outside as Capacity)?);
                }
            }
            ExpansionKind::Star => {
                let center = b.add_node(NodeOrigin::Auxiliary { net: e, role: AuxRole::Star });
                for &x in &inside {
                    b.add_arc(center, x, weight);
                    b.add_arc(x, center, weight);
                }
                b.add_arc(SOURCE, center, mul(weight, outside as Capacity)?);
            }
            ExpansionKind::Lawler => {
                let w2 = b.add_node(NodeOrigin::Auxiliary { net: e, role: AuxRole::LawlerOut });
                for &x in &inside {
                    b.add_infinite_arc(w2, x);
                }
                if outside == 0 {
                    let w1 = b.add_node(NodeOrigin::Auxiliary { net: e, role: AuxRole::LawlerIn });
                    for &x in &inside {
                        b.add_infinite_arc(x, w1);
                    }
                    b.add_arc(w1, w2, weight);
                } else {
                    // w₁ has an in-arc from outside C₀ and is part of the source
                    b.add_arc(SOURCE, w2, weight);
                }
            }
        }
    }

    for v in c0.iter() {
        if v == seed {
            b.add_infinite_arc(flow_id[v as usize], SINK);
        } else {
            let cap = mul(mul(scale, cut)?, to_cap(h.weighted_degree(v))?)?;
            b.add_arc(flow_id[v as usize], SINK, cap);
        }
    }

    b.scale = scale;
    b.trivial_cut_weight = mul(mul(scale, cut)?, volume)?;
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::motif::enumerate_triangles_touching;

    // bowtie: a=0, b=1, v=2, c=3, d=4
    fn bowtie_model() -> HypergraphModel {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 2), (4, 2)]).unwrap();
        let s = NodeSet::from_iter(5, [0, 1, 2]);
        HypergraphModel::build(&s, &enumerate_triangles_touching(&g, &s)).unwrap()
    }

    fn node_of(net: &FlowNetwork, pin: Pin) -> usize {
        (0..net.node_count())
            .find(|&v| net.origin(v) == NodeOrigin::Cluster(pin))
            .unwrap()
    }

    fn cap(net: &FlowNetwork, u: usize, v: usize) -> Option<Capacity> {
        net.arcs().find(|&(a, b, _)| a == u && b == v).map(|(_, _, c)| c)
    }

    #[test]
    fn bowtie_clique_seed_v() {
        let h = bowtie_model();
        let net = build_flow_model(&h, &NodeSet::full(3), 2, ExpansionKind::Clique).unwrap();
        let (a, b, v) = (node_of(&net, 0), node_of(&net, 1), node_of(&net, 2));
        let (s, t) = (net.source(), net.sink());
        assert_eq!(net.scale(), 2);
        for (x, y) in [(a, b), (b, a), (a, v), (v, a), (b, v), (v, b)] {
            assert_eq!(cap(&net, x, y), Some(4));
        }
        assert_eq!(cap(&net, s, v), Some(8));
        assert_eq!(cap(&net, s, a), None);
        assert_eq!(cap(&net, a, t), Some(2));
        assert_eq!(cap(&net, b, t), Some(2));
        assert_eq!(cap(&net, v, t), Some(net.infinite()));
        assert_eq!(net.trivial_cut_weight(), 8);
        // finite total: 6*4 + 8 + 2 + 2 = 36
        assert_eq!(net.infinite(), 37);
    }

    #[test]
    fn bowtie_clique_seed_a() {
        let h = bowtie_model();
        let net = build_flow_model(&h, &NodeSet::full(3), 0, ExpansionKind::Clique).unwrap();
        let (a, b, v) = (node_of(&net, 0), node_of(&net, 1), node_of(&net, 2));
        let t = net.sink();
        assert_eq!(cap(&net, b, t), Some(2));
        assert_eq!(cap(&net, v, t), Some(4));
        assert_eq!(cap(&net, a, t), Some(net.infinite()));
    }

    #[test]
    fn source_has_no_in_arcs_and_sink_no_out_arcs() {
        let h = bowtie_model();
        for kind in ExpansionKind::ALL {
            for c0 in [vec![0, 1, 2], vec![0, 2], vec![2]] {
                let c0 = NodeSet::from_iter(3, c0);
                let net = build_flow_model(&h, &c0, 2, kind).unwrap();
                assert!(net.arcs().all(|(_, v, _)| v != net.source()), "{kind}");
                assert!(net.arcs().all(|(u, _, _)| u != net.sink()), "{kind}");
                let infinite_to_sink = net
                    .arcs()
                    .filter(|&(_, v, c)| v == net.sink() && c == net.infinite())
                    .count();
                assert_eq!(infinite_to_sink, 1);
                let finite: i128 = net
                    .arcs()
                    .filter(|&(_, _, c)| c != net.infinite())
                    .map(|(_, _, c)| c as i128)
                    .sum();
                assert!((net.infinite() as i128) > finite);
            }
        }
    }

    #[test]
    fn star_and_lawler_shapes() {
        let h = bowtie_model();
        let c0 = NodeSet::from_iter(3, [0, 2]);
        let star = build_flow_model(&h, &c0, 2, ExpansionKind::Star).unwrap();
        // two nets touch C₀, one center each
        let centers = (0..star.node_count())
            .filter(|&v| matches!(star.origin(v), NodeOrigin::Auxiliary { role: AuxRole::Star, .. }))
            .count();
        assert_eq!(centers, 2);
        let lawler = build_flow_model(&h, &c0, 2, ExpansionKind::Lawler).unwrap();
        // both nets cross C₀, so only w₂ nodes survive contraction
        let roles: Vec<_> = (0..lawler.node_count())
            .filter_map(|v| match lawler.origin(v) {
                NodeOrigin::Auxiliary { role, .. } => Some(role),
                _ => None,
            })
            .collect();
        assert_eq!(roles, vec![AuxRole::LawlerOut, AuxRole::LawlerOut]);

        let full = build_flow_model(&h, &NodeSet::full(3), 2, ExpansionKind::Lawler).unwrap();
        let w1 = (0..full.node_count())
            .filter(|&v| matches!(full.origin(v), NodeOrigin::Auxiliary { role: AuxRole::LawlerIn, .. }))
            .count();
        assert_eq!(w1, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = bowtie_model();
        assert!(matches!(
            build_flow_model(&h, &NodeSet::from_iter(3, [0, 1]), 2, ExpansionKind::Clique),
            Err(Error::InvalidFlowModel(_))
        ));
        // {a, b} still has the cut net {a, b, v}; zero cut needs a closed component
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = NodeSet::full(3);
        let closed = HypergraphModel::build(&s, &enumerate_triangles_touching(&g, &s)).unwrap();
        assert!(matches!(
            build_flow_model(&closed, &s, 0, ExpansionKind::Clique),
            Err(Error::InvalidFlowModel(_))
        ));
    }

    #[test]
    fn clique_and_star_reject_large_nets() {
        let s = NodeSet::from_iter(6, [0, 1, 2, 3]);
        let m = crate::motif::MotifSet::from_occurrences(4, [[0, 1, 2, 3], [2, 3, 4, 5]]);
        let h = HypergraphModel::build(&s, &m).unwrap();
        let c0 = NodeSet::full(4);
        for kind in [ExpansionKind::Clique, ExpansionKind::Star] {
            assert!(matches!(
                build_flow_model(&h, &c0, 0, kind),
                Err(Error::UnsupportedExpansion { pins: 4, .. })
            ));
        }
        let net = build_flow_model(&h, &c0, 0, ExpansionKind::Lawler).unwrap();
        assert_eq!(net.scale(), 3);
    }

    #[test]
    fn dimacs_dump() {
        let mut b = FlowNetworkBuilder::new(2, 0, 1);
        b.add_arc(0, 1, 5);
        let net = b.build().unwrap();
        assert_eq!(net.to_dimacs(), "p max 2 1\nn 1 s\nn 2 t\na 1 2 5\n");
    }

    #[test]
    fn builder_merges_parallel_arcs() {
        let mut b = FlowNetworkBuilder::new(3, 0, 2);
        b.add_arc(0, 1, 2);
        b.add_arc(0, 1, 3);
        b.add_arc(1, 0, 4);
        b.add_arc(1, 2, 1);
        b.add_arc(1, 1, 9);
        let net = b.build().unwrap();
        let arcs: Vec<_> = net.arcs().collect();
        assert_eq!(arcs, vec![(0, 1, 5), (1, 0, 4), (1, 2, 1)]);
        assert_eq!(net.infinite(), 11);
    }
}
