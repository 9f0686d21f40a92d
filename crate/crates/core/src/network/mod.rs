//! Qualitative constraint networks over RCC8 (binary) and CYC_t (ternary).
//!
//! Both network kinds share the same life cycle: constraints are inserted
//! with [`BinaryNetwork::insert_constraint`] / [`TernaryNetwork::insert_constraint`],
//! which intersect and enqueue on strict shrink; the queue is then drained by
//! the local-consistency filter (path consistency, resp. quadruple-based
//! 4-consistency); [`search_scenario`] refines to an atomic network by
//! chronological backtracking with the filter applied after every split.

mod binary;
mod search;
mod ternary;

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

pub use binary::BinaryNetwork;
pub use search::{search_scenario, QualitativeNetwork, Scenario};
pub use ternary::{TernaryKey, TernaryNetwork};

/// Marker returned when a filter empties a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inconsistent;

impl std::fmt::Display for Inconsistent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("constraint network is inconsistent")
    }
}

impl std::error::Error for Inconsistent {}

/// FIFO of constraints awaiting re-propagation, without duplicates.
#[derive(Debug, Clone)]
pub struct PropagationQueue<K> {
    queue: VecDeque<K>,
    members: HashSet<K>,
}

impl<K> Default for PropagationQueue<K> {
    fn default() -> Self {
        PropagationQueue {
            queue: VecDeque::new(),
            members: HashSet::new(),
        }
    }
}

impl<K: Copy + Eq + Hash> PropagationQueue<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Enqueues `k` unless it is already pending. Returns whether it was added.
    pub fn push(&mut self, k: K) -> bool {
        if self.members.insert(k) {
            self.queue.push_back(k);
            true
        } else {
            false
        }
    }

    pub fn pop(&mut self) -> Option<K> {
        let k = self.queue.pop_front()?;
        self.members.remove(&k);
        Some(k)
    }

    pub fn len(&self) -> usize {
        self.queue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }

    pub fn contains(&self, k: &K) -> bool {
        self.members.contains(k)
    }

    pub fn clear(&mut self) {
        self.queue.clear();
        self.members.clear();
    }
}

/// Path consistency on an RCC8 network, draining `queue`.
pub fn path_consistency(
    net: &mut BinaryNetwork,
    queue: &mut PropagationQueue<(usize, usize)>,
) -> Result<(), Inconsistent> {
    net.path_consistency(queue)
}

/// Quadruple-based 4-consistency on a CYC_t network, draining `queue`.
pub fn four_consistency(
    net: &mut TernaryNetwork,
    queue: &mut PropagationQueue<TernaryKey>,
) -> Result<(), Inconsistent> {
    net.four_consistency(queue)
}
