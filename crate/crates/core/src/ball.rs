//! BFS balls around a seed node.

use crate::graph::{Graph, NodeId};
use crate::nodeset::NodeSet;

/// Minimum ball size enforced on the last repetition of the driver.
pub const MIN_BALL_SIZE: usize = 100;

#[derive(Clone, Debug)]
pub struct Ball {
    pub seed: NodeId,
    pub nodes: NodeSet,
    /// Number of BFS layers (beyond the seed) actually included.
    pub depth_used: usize,
    /// Set when the ball is the seed's whole connected component.
    pub whole_component: bool,
}

/// Collects the first `layers` BFS layers around `seed` (neighbors visited in
/// ascending id order). With `enforce_min_size`, whole layers keep being added
/// until the ball holds at least [`MIN_BALL_SIZE`] nodes or the component is
/// exhausted.
pub fn bfs_ball(g: &Graph, seed: NodeId, layers: usize, enforce_min_size: bool) -> Ball {
    bfs_ball_with_min(g, seed, layers, enforce_min_size.then_some(MIN_BALL_SIZE))
}

pub fn bfs_ball_with_min(g: &Graph, seed: NodeId, layers: usize, min_size: Option<usize>) -> Ball {
    assert!((seed as usize) < g.node_count(), "seed out of range");
    let mut nodes = NodeSet::new(g.node_count());
    nodes.insert(seed);
    let mut frontier = vec![seed];
    let mut next = Vec::new();
    let mut depth = 0usize;

    loop {
        let want_more = depth < layers || min_size.is_some_and(|m| nodes.len() < m);
        if !want_more || frontier.is_empty() {
            break;
        }
        next.clear();
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if nodes.insert(w) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            frontier.clear();
            break;
        }
        depth += 1;
        std::mem::swap(&mut frontier, &mut next);
    }

    // The component is exhausted iff the last layer has no unvisited neighbor.
    let whole_component = frontier
        .iter()
        .all(|&v| g.neighbors(v).iter().all(|&w| nodes.contains(w)));

    Ball {
        seed,
        nodes,
        depth_used: depth,
        whole_component,
    }
}
