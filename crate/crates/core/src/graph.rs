//! Immutable undirected simple graph in CSR form.
//!
//! Nodes are dense ids `0..n`. When a graph is loaded from an edge list the
//! original ids are kept so clusters can be reported in the file's id space.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

pub type NodeId = u32;

#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    edge_count: usize,
    original_ids: Vec<u64>,
    dense_ids: HashMap<u64, NodeId>,
}

impl Graph {
    /// Builds a graph over `0..node_count` from an undirected edge list.
    /// Self-loops and duplicate edges are dropped. Original ids equal dense ids.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: w as u64,
                        node_count,
                    });
                }
            }
        }
        let original_ids = (0..node_count as u64).collect();
        Self::assemble(node_count, edges, original_ids)
    }

    fn assemble(node_count: usize, edges: &[(NodeId, NodeId)], original_ids: Vec<u64>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut degree = vec![0usize; node_count + 1];
        for &(u, v) in edges {
            if u != v {
                degree[u as usize] += 1;
                degree[v as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; node_count + 1];
        for v in 0..node_count {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0 as NodeId; offsets[node_count]];
        for &(u, v) in edges {
            if u != v {
                targets[fill[u as usize]] = v;
                fill[u as usize] += 1;
                targets[fill[v as usize]] = u;
                fill[v as usize] += 1;
            }
        }

        // Sort each list, drop duplicates, and compact in place.
        let mut write = 0usize;
        let mut new_offsets = vec![0usize; node_count + 1];
        for v in 0..node_count {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            targets[lo..hi].sort_unstable();
            let mut prev: Option<NodeId> = None;
            for i in lo..hi {
                let t = targets[i];
                if prev != Some(t) {
                    targets[write] = t;
                    write += 1;
                    prev = Some(t);
                }
            }
            new_offsets[v + 1] = write;
        }
        targets.truncate(write);
        targets.shrink_to_fit();

        let dense_ids = original_ids
            .iter()
            .enumerate()
            .map(|(i, &o)| (o, i as NodeId))
            .collect();
        Ok(Self {
            offsets: new_offsets,
            edge_count: write / 2,
            targets,
            original_ids,
            dense_ids,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    pub fn original_id(&self, v: NodeId) -> u64 {
        self.original_ids[v as usize]
    }

    pub fn dense_id(&self, original: u64) -> Option<NodeId> {
        self.dense_ids.get(&original).copied()
    }

    /// N[s]: the members of `s` together with all their neighbors.
    pub fn closed_neighborhood(&self, s: &NodeSet) -> NodeSet {
        let mut out = NodeSet::new(self.node_count());
        for v in s.iter() {
            out.insert(v);
        }
        for v in s.iter() {
            for &w in self.neighbors(v) {
                out.insert(w);
            }
        }
        out
    }

    /// Writes the graph as a sorted edge list of original ids, one `u v` pair
    /// per line with `u < v`. Nodes without edges are not representable.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut pairs: Vec<(u64, u64)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.original_id(u), self.original_id(v));
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        for (a, b) in pairs {
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }
}

/// Reads a whitespace-separated edge list (SNAP "ungraph" style).
///
/// Lines starting with `#` or `%` and blank lines are skipped. Ids are
/// remapped densely in order of first appearance; self-loops and repeated
/// edges (in either direction) are dropped.
pub fn load_edge_list<R: BufRead>(mut source: R) -> Result<Graph> {
    let mut dense: HashMap<u64, NodeId> = HashMap::new();
    let mut original_ids: Vec<u64> = Vec::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut line = String::new();
    let mut line_no = 0usize;

    let mut intern = |id: u64, original_ids: &mut Vec<u64>| -> NodeId {
        *dense.entry(id).or_insert_with(|| {
            original_ids.push(id);
            (original_ids.len() - 1) as NodeId
        })
    };

    loop {
        line.clear();
        if source.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let mut next_id = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("missing {what} node id"),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let u = next_id("first")?;
        let v = next_id("second")?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected token {extra:?} after edge"),
            });
        }
        let du = intern(u, &mut original_ids);
        let dv = intern(v, &mut original_ids);
        if du != dv {
            edges.push((du, dv));
        }
    }

    if original_ids.len() >= NodeId::MAX as usize {
        return Err(Error::Parse {
            line: line_no,
            message: "too many distinct node ids".into(),
        });
    }
    Graph::assemble(original_ids.len(), &edges, original_ids)
}
