//! Local motif clustering around a seed node.
//!
//! The pipeline selects a BFS ball around the seed, enumerates the triangles
//! touching it, builds an exact local hypergraph model with the complement of
//! the ball contracted to a single node, and then repeatedly solves a max-flow
//! problem that either shrinks the cluster to a strict subset with smaller
//! motif conductance or proves that none exists.
//!
//! Conductances are exact rationals throughout; floating point only appears
//! when values are reported.

pub mod ball;
pub mod error;
pub mod evaluator;
pub mod flow_model;
pub mod graph;
pub mod hypergraph;
pub mod maxflow;
pub mod motif;
pub mod mqi;
pub mod nodeset;

pub use ball::{bfs_ball, Ball, MIN_BALL_SIZE};
pub use error::{Error, Result};
pub use evaluator::{check_assumption_b, evaluate_exact, Evaluation};
pub use flow_model::{build_flow_model, ExpansionKind, FlowNetwork};
pub use graph::{load_edge_list, Graph, NodeId};
pub use hypergraph::{Conductance, HypergraphModel};
pub use maxflow::{max_flow, min_cut_sink_side, FlowState};
pub use motif::{count_triangles_global, enumerate_triangles_touching, MotifSet};
pub use mqi::{improve_once, local_cluster, ClusterStatus, ClusteringResult, SocialParams};
pub use nodeset::NodeSet;
