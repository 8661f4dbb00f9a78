//! Triangle enumeration and motif degrees.
//!
//! Enumeration runs on the subgraph induced by N[S], which contains every
//! triangle with at least one endpoint in S. Nodes are ranked by
//! non-increasing degree and each edge is oriented from lower to higher rank;
//! marking the out-neighbors of a node and scanning the out-neighbors of each
//! of them reports every triangle exactly once, in O(m·a) time for
//! arboricity a. The rank uses degrees in G, so no per-ball subgraph has to
//! be materialized.

use std::collections::HashMap;

use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;

/// One motif occurrence: its endpoints in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotifOccurrence(pub [NodeId; 3]);

impl MotifOccurrence {
    pub fn new(a: NodeId, b: NodeId, c: NodeId) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        Self(t)
    }

    pub fn endpoints(&self) -> &[NodeId] {
        &self.0
    }
}

/// A deduplicated collection of occurrences of one motif, stored flat with a
/// fixed stride so that motifs of any size share the same representation.
#[derive(Clone, Debug, Default)]
pub struct MotifSet {
    motif_size: usize,
    endpoints: Vec<NodeId>,
    motif_degree: HashMap<NodeId, u64>,
}

impl MotifSet {
    pub fn empty(motif_size: usize) -> Self {
        Self {
            motif_size,
            ..Self::default()
        }
    }

    /// Builds a set from arbitrary occurrences (each a list of `motif_size`
    /// distinct nodes). Endpoints are sorted and duplicates dropped.
    pub fn from_occurrences<I, O>(motif_size: usize, occurrences: I) -> Self
    where
        I: IntoIterator<Item = O>,
        O: AsRef<[NodeId]>,
    {
        let mut canon: Vec<Vec<NodeId>> = occurrences
            .into_iter()
            .map(|o| {
                let mut o = o.as_ref().to_vec();
                assert_eq!(o.len(), motif_size, "occurrence size mismatch");
                o.sort_unstable();
                assert!(o.windows(2).all(|w| w[0] != w[1]), "repeated endpoint");
                o
            })
            .collect();
        canon.sort_unstable();
        canon.dedup();
        let mut set = Self::empty(motif_size);
        for o in canon {
            set.push_unchecked(&o);
        }
        set
    }

    fn push_unchecked(&mut self, occ: &[NodeId]) {
        self.endpoints.extend_from_slice(occ);
        for &v in occ {
            *self.motif_degree.entry(v).or_insert(0) += 1;
        }
    }

    pub fn motif_size(&self) -> usize {
        self.motif_size
    }

    pub fn len(&self) -> usize {
        if self.motif_size == 0 {
            0
        } else {
            self.endpoints.len() / self.motif_size
        }
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn occurrence(&self, i: usize) -> &[NodeId] {
        &self.endpoints[i * self.motif_size..(i + 1) * self.motif_size]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[NodeId]> + '_ {
        self.endpoints.chunks_exact(self.motif_size.max(1))
    }

    /// d_µ(v) counted over the stored occurrences.
    pub fn motif_degree(&self, v: NodeId) -> u64 {
        self.motif_degree.get(&v).copied().unwrap_or(0)
    }

    /// d_µ(S) = Σ_{v∈S} d_µ(v) over the stored occurrences.
    pub fn motif_volume<I: IntoIterator<Item = NodeId>>(&self, nodes: I) -> u64 {
        nodes.into_iter().map(|v| self.motif_degree(v)).sum()
    }

    pub fn total_motif_degree(&self) -> u64 {
        self.motif_degree.values().sum()
    }
}

/// `a` is ranked before `b`: higher degree first, ties broken by id.
#[inline]
fn precedes(g: &Graph, a: NodeId, b: NodeId) -> bool {
    let (da, db) = (g.degree(a), g.degree(b));
    da > db || (da == db && a < b)
}

/// Reports every triangle whose first-ranked node is a pivot, whose nodes lie
/// in the region and which has at least one node in the target set.
fn for_each_triangle<F>(
    g: &Graph,
    pivots: &[NodeId],
    in_region: impl Fn(NodeId) -> bool,
    in_target: impl Fn(NodeId) -> bool,
    mut f: F,
) where
    F: FnMut(NodeId, NodeId, NodeId),
{
    let mut marked = vec![false; g.node_count()];
    let mut out: Vec<NodeId> = Vec::new();
    for &v in pivots {
        out.clear();
        out.extend(g.neighbors(v).iter().copied().filter(|&w| precedes(g, v, w) && in_region(w)));
        for &w in &out {
            marked[w as usize] = true;
        }
        let v_in = in_target(v);
        for &w in &out {
            // with v and w both outside, only a target can close the triangle
            let need_target = !v_in && !in_target(w);
            for &x in g.neighbors(w) {
                if marked[x as usize] && precedes(g, w, x) && (!need_target || in_target(x)) {
                    f(v, w, x);
                }
            }
        }
        for &w in &out {
            marked[w as usize] = false;
        }
    }
}

/// All triangles of `g` with at least one endpoint in `s`.
pub fn enumerate_triangles_touching(g: &Graph, s: &NodeSet) -> MotifSet {
    let region = g.closed_neighborhood(s);
    let mut found: Vec<MotifOccurrence> = Vec::new();
    for_each_triangle(
        g,
        region.as_slice(),
        |v| region.contains(v),
        |v| s.contains(v),
        |a, b, c| found.push(MotifOccurrence::new(a, b, c)),
    );
    found.sort_unstable();
    let mut set = MotifSet::empty(3);
    for t in &found {
        set.push_unchecked(t.endpoints());
    }
    set
}

/// Exact number of triangles in `g`.
pub fn count_triangles_global(g: &Graph) -> u64 {
    let all: Vec<NodeId> = (0..g.node_count() as NodeId).collect();
    let mut count = 0u64;
    for_each_triangle(g, &all, |_| true, |_| true, |_, _, _| count += 1);
    count
}
