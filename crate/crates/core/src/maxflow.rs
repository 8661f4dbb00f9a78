//! FIFO push-relabel maximum flow with the gap heuristic and periodic global
//! relabeling.
//!
//! The solver runs to a true maximum flow (excess returned to the source),
//! after which the minimum cut with the smallest sink side is read off by a
//! reverse BFS from the sink over residual arcs.

use std::collections::VecDeque;

use crate::flow_model::{Capacity, FlowNetwork};

#[derive(Clone, Debug)]
pub struct FlowState {
    residual: Vec<Capacity>,
    excess: Vec<Capacity>,
    label: Vec<usize>,
    value: Capacity,
}

impl FlowState {
    pub fn value(&self) -> Capacity {
        self.value
    }

    pub fn residual(&self, arc: usize) -> Capacity {
        self.residual[arc]
    }

    /// Flow on `arc`; skew-symmetric with its twin.
    pub fn flow(&self, net: &FlowNetwork, arc: usize) -> Capacity {
        net.capacity(arc) - self.residual[arc]
    }

    pub fn excess(&self, v: usize) -> Capacity {
        self.excess[v]
    }

    pub fn label(&self, v: usize) -> usize {
        self.label[v]
    }
}

struct Solver<'a> {
    net: &'a FlowNetwork,
    n: usize,
    residual: Vec<Capacity>,
    excess: Vec<Capacity>,
    label: Vec<usize>,
    current: Vec<usize>,
    // number of nodes per label below n (gap detection)
    label_count: Vec<usize>,
    queue: VecDeque<usize>,
    queued: Vec<bool>,
    relabels_since_global: usize,
}

impl<'a> Solver<'a> {
    fn new(net: &'a FlowNetwork) -> Self {
        let n = net.node_count();
        let residual = (0..net.arc_slot_count()).map(|a| net.capacity(a)).collect();
        Self {
            net,
            n,
            residual,
            excess: vec![0; n],
            label: vec![0; n],
            current: (0..n).map(|v| net.arcs_of(v).start).collect(),
            label_count: vec![0; n + 1],
            queue: VecDeque::new(),
            queued: vec![false; n],
            relabels_since_global: 0,
        }
    }

    fn enqueue(&mut self, v: usize) {
        if !self.queued[v] && v != self.net.source() && v != self.net.sink() && self.excess[v] > 0 {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    fn set_label(&mut self, v: usize, d: usize) {
        let old = self.label[v];
        if old < self.n {
            self.label_count[old] -= 1;
        }
        if d < self.n {
            self.label_count[d] += 1;
        }
        self.label[v] = d;
    }

    /// Exact labels: distance to the sink in the residual graph, or `n` plus
    /// the distance to the source for nodes that cannot reach the sink.
    fn global_relabel(&mut self) {
        let (s, t, n) = (self.net.source(), self.net.sink(), self.n);
        let unset = usize::MAX;
        let mut dist = vec![unset; n];
        let mut bfs = VecDeque::new();
        for (root, base) in [(t, 0usize), (s, n)] {
            dist[root] = base;
            bfs.push_back(root);
            while let Some(v) = bfs.pop_front() {
                for a in self.net.arcs_of(v) {
                    let u = self.net.head(a);
                    // u reaches v if the twin arc u -> v has residual capacity
                    if dist[u] == unset && self.residual[self.net.reverse(a)] > 0 {
                        dist[u] = dist[v] + 1;
                        bfs.push_back(u);
                    }
                }
            }
        }
        self.label_count.iter_mut().for_each(|c| *c = 0);
        for v in 0..n {
            let d = if v == s {
                n
            } else if dist[v] == unset {
                2 * n
            } else {
                dist[v].min(2 * n)
            };
            self.label[v] = d;
            if d < n {
                self.label_count[d] += 1;
            }
            self.current[v] = self.net.arcs_of(v).start;
        }
        self.relabels_since_global = 0;
    }

    fn push(&mut self, v: usize, arc: usize) {
        let w = self.net.head(arc);
        let delta = self.excess[v].min(self.residual[arc]);
        self.residual[arc] -= delta;
        self.residual[self.net.reverse(arc)] += delta;
        self.excess[v] -= delta;
        self.excess[w] += delta;
        self.enqueue(w);
    }

    fn relabel(&mut self, v: usize) {
        let old = self.label[v];
        let mut best = 2 * self.n;
        for a in self.net.arcs_of(v) {
            if self.residual[a] > 0 {
                best = best.min(self.label[self.net.head(a)] + 1);
            }
        }
        self.set_label(v, best.min(2 * self.n));
        self.current[v] = self.net.arcs_of(v).start;
        self.relabels_since_global += 1;

        if old < self.n && self.label_count[old] == 0 {
            self.gap(old);
        }
    }

    /// No node has label `k`: nodes with labels in (k, n) cannot reach the
    /// sink and are lifted to `n`.
    fn gap(&mut self, k: usize) {
        let n = self.n;
        for u in 0..n {
            let d = self.label[u];
            if d > k && d < n && u != self.net.source() {
                self.set_label(u, n);
                self.current[u] = self.net.arcs_of(u).start;
            }
        }
    }

    fn discharge(&mut self, v: usize) {
        while self.excess[v] > 0 {
            let end = self.net.arcs_of(v).end;
            let mut arc = self.current[v];
            while arc < end {
                if self.residual[arc] > 0 && self.label[v] == self.label[self.net.head(arc)] + 1 {
                    break;
                }
                arc += 1;
            }
            if arc < end {
                self.current[v] = arc;
                self.push(v, arc);
            } else {
                self.relabel(v);
                if self.label[v] >= 2 * self.n {
                    break;
                }
            }
        }
    }

    fn run(mut self) -> FlowState {
        let s = self.net.source();
        self.global_relabel();
        for a in self.net.arcs_of(s) {
            let cap = self.residual[a];
            if cap > 0 {
                let w = self.net.head(a);
                self.residual[a] = 0;
                self.residual[self.net.reverse(a)] += cap;
                self.excess[w] += cap;
                self.excess[s] -= cap;
                self.enqueue(w);
            }
        }

        while let Some(v) = self.queue.pop_front() {
            self.queued[v] = false;
            self.discharge(v);
            if self.relabels_since_global >= self.n {
                self.global_relabel();
            }
        }

        let value = self.excess[self.net.sink()];
        FlowState {
            residual: self.residual,
            excess: self.excess,
            label: self.label,
            value,
        }
    }
}

/// Maximum s-t flow of `net`.
pub fn max_flow(net: &FlowNetwork) -> FlowState {
    Solver::new(net).run()
}

/// Nodes that can reach the sink in the residual graph of a maximum flow:
/// the inclusion-minimal sink side of a minimum cut.
pub fn min_cut_sink_side(net: &FlowNetwork, state: &FlowState) -> Vec<bool> {
    let mut side = vec![false; net.node_count()];
    let t = net.sink();
    side[t] = true;
    let mut bfs = VecDeque::from([t]);
    while let Some(v) = bfs.pop_front() {
        for a in net.arcs_of(v) {
            let u = net.head(a);
            if !side[u] && state.residual(net.reverse(a)) > 0 {
                side[u] = true;
                bfs.push_back(u);
            }
        }
    }
    side
}
