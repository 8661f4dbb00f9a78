//! The local hypergraph model H_µ = (S ∪ {r}, E).
//!
//! Every motif occurrence touching the ball S becomes a net over the dense
//! local indices of S. Endpoints outside S collapse into the single node `r`,
//! and nets that end up with identical pin sets are merged with summed
//! weight. For any C ⊆ S, `cut(C) / vol(C)` in this model is the motif
//! conductance of C in the graph whenever d_µ(S) ≤ d_µ(V∖S).

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::motif::MotifSet;
use crate::nodeset::NodeSet;

/// Exact conductance value (cut over volume).
pub type Conductance = Ratio<u64>;

/// Local pin index; `local_count()` denotes the contracted node `r`.
pub type Pin = u32;

#[derive(Clone, Debug)]
pub struct HypergraphModel {
    motif_size: usize,
    local_nodes: Vec<NodeId>,
    local_index: HashMap<NodeId, Pin>,
    pin_offsets: Vec<usize>,
    pins: Vec<Pin>,
    weights: Vec<u64>,
    weighted_degree: Vec<u64>,
    total_weighted_volume: u64,
    // nets incident to each local node (r excluded), CSR
    incidence_offsets: Vec<usize>,
    incidence: Vec<u32>,
}

impl HypergraphModel {
    /// Builds the model for ball `s`; parallel nets are merged.
    pub fn build(s: &NodeSet, motifs: &MotifSet) -> Result<Self> {
        Self::build_inner(s, motifs, true)
    }

    /// Same as [`build`](Self::build) but keeps parallel nets separate.
    pub fn build_unmerged(s: &NodeSet, motifs: &MotifSet) -> Result<Self> {
        Self::build_inner(s, motifs, false)
    }

    fn build_inner(s: &NodeSet, motifs: &MotifSet, merge: bool) -> Result<Self> {
        let local_nodes: Vec<NodeId> = s.iter().collect();
        let local_index: HashMap<NodeId, Pin> = local_nodes
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Pin))
            .collect();
        let r = local_nodes.len() as Pin;

        let mut model = Self {
            motif_size: motifs.motif_size(),
            weighted_degree: vec![0; local_nodes.len()],
            local_nodes,
            local_index,
            pin_offsets: vec![0],
            pins: Vec::new(),
            weights: Vec::new(),
            total_weighted_volume: 0,
            incidence_offsets: Vec::new(),
            incidence: Vec::new(),
        };

        // pin set (with r) -> net index, only for nets containing r; nets fully
        // inside S come from distinct occurrences and cannot be parallel.
        let mut boundary_nets: HashMap<Vec<Pin>, usize> = HashMap::new();
        let mut buf: Vec<Pin> = Vec::with_capacity(motifs.motif_size());
        for occ in motifs.iter() {
            buf.clear();
            let mut touches_outside = false;
            for &v in occ {
                match model.local_index.get(&v) {
                    Some(&p) => buf.push(p),
                    None => touches_outside = true,
                }
            }
            if buf.is_empty() {
                return Err(Error::MotifOutsideBall(occ.to_vec()));
            }
            buf.sort_unstable();
            if touches_outside {
                buf.push(r);
                if merge {
                    if let Some(&e) = boundary_nets.get(&buf) {
                        model.weights[e] += 1;
                        continue;
                    }
                    boundary_nets.insert(buf.clone(), model.weights.len());
                }
            }
            model.pins.extend_from_slice(&buf);
            model.pin_offsets.push(model.pins.len());
            model.weights.push(1);
        }

        let k = model.local_nodes.len();
        let mut offsets = vec![0usize; k + 1];
        for e in 0..model.net_count() {
            let w = model.weights[e];
            for i in model.pin_offsets[e]..model.pin_offsets[e + 1] {
                let p = model.pins[i];
                if p != r {
                    model.weighted_degree[p as usize] += w;
                    model.total_weighted_volume += w;
                    offsets[p as usize + 1] += 1;
                }
            }
        }
        for i in 0..k {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        model.incidence = vec![0; offsets[k]];
        for e in 0..model.net_count() {
            for i in model.pin_offsets[e]..model.pin_offsets[e + 1] {
                let p = model.pins[i];
                if p != r {
                    model.incidence[fill[p as usize]] = e as u32;
                    fill[p as usize] += 1;
                }
            }
        }
        model.incidence_offsets = offsets;
        Ok(model)
    }

    pub fn motif_size(&self) -> usize {
        self.motif_size
    }

    /// |S|.
    pub fn local_count(&self) -> usize {
        self.local_nodes.len()
    }

    /// The pin index standing for the contracted complement.
    pub fn r(&self) -> Pin {
        self.local_nodes.len() as Pin
    }

    pub fn global_id(&self, local: Pin) -> NodeId {
        self.local_nodes[local as usize]
    }

    pub fn local_id(&self, global: NodeId) -> Option<Pin> {
        self.local_index.get(&global).copied()
    }

    pub fn net_count(&self) -> usize {
        self.weights.len()
    }

    /// Pins of net `e`, ascending, with `r` last if present.
    pub fn net(&self, e: usize) -> &[Pin] {
        &self.pins[self.pin_offsets[e]..self.pin_offsets[e + 1]]
    }

    pub fn net_weight(&self, e: usize) -> u64 {
        self.weights[e]
    }

    pub fn nets(&self) -> impl Iterator<Item = (&[Pin], u64)> + '_ {
        (0..self.net_count()).map(move |e| (self.net(e), self.weights[e]))
    }

    /// Nets containing local node `p`, ascending.
    pub fn incident_nets(&self, p: Pin) -> &[u32] {
        &self.incidence[self.incidence_offsets[p as usize]..self.incidence_offsets[p as usize + 1]]
    }

    /// Nets with at least one pin in `c`, ascending.
    pub fn nets_touching(&self, c: &NodeSet) -> Vec<usize> {
        let mut seen = vec![false; self.net_count()];
        let mut nets = Vec::new();
        for p in c.iter() {
            for &e in self.incident_nets(p) {
                if !std::mem::replace(&mut seen[e as usize], true) {
                    nets.push(e as usize);
                }
            }
        }
        if nets.len() * 8 < seen.len() {
            nets.sort_unstable();
            nets
        } else {
            (0..seen.len()).filter(|&e| seen[e]).collect()
        }
    }

    pub fn max_net_size(&self) -> usize {
        self.pin_offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn weighted_degree(&self, local: Pin) -> u64 {
        self.weighted_degree[local as usize]
    }

    /// 𝔡_𝔴(S).
    pub fn total_weighted_volume(&self) -> u64 {
        self.total_weighted_volume
    }

    /// Σ weights of nets with a pin in `c` and a pin outside `c` (r is
    /// always outside).
    pub fn cut_net(&self, c: &NodeSet) -> u64 {
        let r = self.r();
        self.nets_touching(c)
            .into_iter()
            .filter(|&e| self.net(e).iter().any(|&p| p == r || !c.contains(p)))
            .map(|e| self.weights[e])
            .sum()
    }

    pub fn weighted_volume(&self, c: &NodeSet) -> u64 {
        c.iter().map(|v| self.weighted_degree(v)).sum()
    }

    pub fn local_conductance(&self, c: &NodeSet) -> Result<Conductance> {
        let vol = self.weighted_volume(c);
        if vol == 0 {
            return Err(Error::UndefinedConductance);
        }
        Ok(Ratio::new(self.cut_net(c), vol))
    }

    /// Debug dump: one net per line as `w: pin pin pin` using global ids,
    /// with the contracted node rendered as `r`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let r = self.r();
        for (pins, w) in self.nets() {
            let _ = write!(out, "{w}:");
            for &p in pins {
                if p == r {
                    out.push_str(" r");
                } else {
                    let _ = write!(out, " {}", self.global_id(p));
                }
            }
            out.push('\n');
        }
        out
    }
}
