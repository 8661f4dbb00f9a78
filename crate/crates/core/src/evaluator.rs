//! Exact motif conductance in the original graph.
//!
//! φ_µ(C) = |M′| / min(d_µ(C), d_µ(V∖C)), where M′ holds the triangles with
//! endpoints on both sides of C. d_µ(V∖C) is obtained as 3·T − d_µ(C) from
//! the global triangle count T, so only triangles touching C are enumerated.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Conductance;
use crate::motif::enumerate_triangles_touching;
use crate::nodeset::NodeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    /// |M′|
    pub cut_motifs: u64,
    /// d_µ(C)
    pub motif_volume_inside: u64,
    /// d_µ(V) = 3·T
    pub motif_volume_total: u64,
    pub conductance: Conductance,
}

pub fn evaluate_exact(g: &Graph, c: &NodeSet, total_triangles: u64) -> Result<Evaluation> {
    let motifs = enumerate_triangles_touching(g, c);
    let mut cut_motifs = 0u64;
    let mut inside_volume = 0u64;
    for occ in motifs.iter() {
        let inside = occ.iter().filter(|&&v| c.contains(v)).count();
        inside_volume += inside as u64;
        if inside < occ.len() {
            cut_motifs += 1;
        }
    }
    let total = 3 * total_triangles;
    if inside_volume > total {
        return Err(Error::InvalidParams(format!(
            "triangle total {total_triangles} is smaller than the triangles touching the cluster"
        )));
    }
    let denominator = inside_volume.min(total - inside_volume);
    if denominator == 0 {
        return Err(Error::UndefinedConductance);
    }
    Ok(Evaluation {
        cut_motifs,
        motif_volume_inside: inside_volume,
        motif_volume_total: total,
        conductance: Ratio::new(cut_motifs, denominator),
    })
}

/// d_µ(S) ≤ d_µ(V∖S): the condition under which local-model conductance
/// equals conductance in the graph.
pub fn check_assumption_b(g: &Graph, s: &NodeSet, total_triangles: u64) -> bool {
    if s.is_empty() {
        return true;
    }
    let motifs = enumerate_triangles_touching(g, s);
    let inside = motifs.motif_volume(s.iter());
    inside <= (3 * total_triangles).saturating_sub(inside)
}
