// Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use social_core::flow_model::{Capacity, FlowNetwork, FlowNetworkBuilder};
use social_core::{Conductance, Graph, HypergraphModel, NodeId, NodeSet};

pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Sparse background plus a few dense blocks, so balls contain triangles
/// while staying small relative to the whole graph.
pub fn clustered<R: Rng>(rng: &mut R, n: usize, blocks: usize, p_in: f64, p_out: f64) -> Graph {
    let block_of = |v: usize| v * blocks / n;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block_of(u) == block_of(v) { p_in } else { p_out };
            if rng.random_bool(p) {
                edges.push((u as NodeId, v as NodeId));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Every triangle of `g` by triple scan, as sorted triples.
pub fn triangles_brute(g: &Graph) -> BTreeSet<[NodeId; 3]> {
    let n = g.node_count() as NodeId;
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    out.insert([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn motif_set_as_triples(m: &social_core::MotifSet) -> BTreeSet<[NodeId; 3]> {
    m.iter()
        .map(|o| {
            let mut t = [o[0], o[1], o[2]];
            t.sort_unstable();
            t
        })
        .collect()
}

/// Motif conductance of `c` in `g` from the full triangle list.
pub fn conductance_brute(g: &Graph, c: &[NodeId]) -> Option<Conductance> {
    let inside: BTreeSet<NodeId> = c.iter().copied().collect();
    let (mut cut, mut vol_in, mut vol_out) = (0u64, 0u64, 0u64);
    for t in triangles_brute(g) {
        let k = t.iter().filter(|v| inside.contains(v)).count() as u64;
        vol_in += k;
        vol_out += 3 - k;
        if k > 0 && k < 3 {
            cut += 1;
        }
    }
    let d = vol_in.min(vol_out);
    (d > 0).then(|| Conductance::new(cut, d))
}

/// cut/vol in the model computed straight from the net list.
pub fn local_conductance_brute(h: &HypergraphModel, c: &[u32]) -> Option<Conductance> {
    let inside: BTreeSet<u32> = c.iter().copied().collect();
    let r = h.r();
    let (mut cut, mut vol) = (0u64, 0u64);
    for (pins, w) in h.nets() {
        let k = pins.iter().filter(|&&p| p != r && inside.contains(&p)).count();
        vol += w * k as u64;
        if k > 0 && k < pins.len() {
            cut += w;
        }
    }
    (vol > 0).then(|| Conductance::new(cut, vol))
}

/// Weight of arcs from the complement into `sink_side`.
pub fn cut_of(net: &FlowNetwork, sink_side: &[bool]) -> i128 {
    let mut total = 0i128;
    for v in 0..net.node_count() {
        for a in net.arcs_of(v) {
            let u = net.head(a);
            if !sink_side[v] && sink_side[u] {
                total += net.capacity(a) as i128;
            }
        }
    }
    total
}

/// Minimum s-t cut over all 2^(n-2) partitions.
pub fn min_cut_brute(net: &FlowNetwork) -> i128 {
    let n = net.node_count();
    let (s, t) = (net.source(), net.sink());
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = i128::MAX;
    for mask in 0u64..(1u64 << free.len()) {
        let mut side = vec![false; n];
        side[t] = true;
        for (i, &v) in free.iter().enumerate() {
            side[v] = mask >> i & 1 == 1;
        }
        best = best.min(cut_of(net, &side));
    }
    best
}

/// Random network with s = 0, t = n - 1 and a guaranteed s-t path.
pub fn random_network<R: Rng>(rng: &mut R) -> FlowNetwork {
    let n = rng.random_range(2..=10usize);
    let (s, t) = (0, n - 1);
    let mut b = FlowNetworkBuilder::new(n, s, t);
    let density = rng.random_range(0.1..0.7);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                b.add_arc(u, v, rng.random_range(1..=20));
            }
        }
    }
    // a path s -> ... -> t through a random subset of the middle nodes
    let mut prev = s;
    for v in 1..n - 1 {
        if rng.random_bool(0.4) {
            b.add_arc(prev, v, rng.random_range(1..=20));
            prev = v;
        }
    }
    b.add_arc(prev, t, rng.random_range(1..=20));
    b.build().unwrap()
}

pub fn scaled(net: &FlowNetwork, factor: Capacity) -> FlowNetwork {
    let mut b = FlowNetworkBuilder::new(net.node_count(), net.source(), net.sink());
    for (u, v, c) in net.arcs() {
        b.add_arc(u, v, c * factor);
    }
    b.build().unwrap()
}

/// Subsets of `items` (as bit masks) in increasing mask order.
pub fn subsets<T: Copy>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

pub fn local_set(h: &HypergraphModel, pins: &[u32]) -> NodeSet {
    NodeSet::from_iter(h.local_count(), pins.iter().copied())
}
