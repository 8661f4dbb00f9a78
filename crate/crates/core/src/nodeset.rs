//! Node membership sets with O(1) lookup.
//!
//! A [`NodeSet`] is bound to a universe `0..universe`; the universe is either
//! the whole graph or the dense local index space of a hypergraph model.

use fixedbitset::FixedBitSet;

use crate::graph::NodeId;

#[derive(Clone, Debug)]
pub struct NodeSet {
    members: Vec<NodeId>,
    bits: FixedBitSet,
}

impl NodeSet {
    pub fn new(universe: usize) -> Self {
        Self {
            members: Vec::new(),
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn from_iter<I: IntoIterator<Item = NodeId>>(universe: usize, nodes: I) -> Self {
        let mut set = Self::new(universe);
        for v in nodes {
            set.insert(v);
        }
        set
    }

    /// The full universe `0..universe` in ascending order.
    pub fn full(universe: usize) -> Self {
        Self::from_iter(universe, 0..universe as NodeId)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Inserts `v`; returns `false` if it was already present.
    ///
    /// Panics if `v` lies outside the universe.
    pub fn insert(&mut self, v: NodeId) -> bool {
        let idx = v as usize;
        assert!(
            idx < self.bits.len(),
            "node {v} outside universe of size {}",
            self.bits.len()
        );
        if self.bits.put(idx) {
            false
        } else {
            self.members.push(v);
            true
        }
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.bits.contains(v as usize)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.members
    }

    /// Members in ascending order.
    pub fn sorted(&self) -> Vec<NodeId> {
        self.bits.ones().map(|i| i as NodeId).collect()
    }

    /// Members of `self` not in `other`, in insertion order.
    pub fn difference(&self, other: &NodeSet) -> NodeSet {
        NodeSet::from_iter(
            self.universe(),
            self.iter().filter(|&v| !other.contains(v)),
        )
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    /// Set equality, ignoring insertion order.
    pub fn same_members(&self, other: &NodeSet) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl PartialEq for NodeSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe() == other.universe() && self.same_members(other)
    }
}

impl Eq for NodeSet {}
