use std::hash::Hash;

use super::{BinaryNetwork, Inconsistent, PropagationQueue, TernaryKey, TernaryNetwork};
use crate::algebra::{CyctAtom, Rcc8Atom};

/// What [`search_scenario`] needs from a network.
pub trait QualitativeNetwork: Clone {
    type Key: Copy + Eq + Hash;
    /// A constraint search can split on.
    type Slot: Copy + Ord;
    type Atom: Copy;

    fn all_keys(&self) -> Vec<Self::Key>;
    fn propagate(&mut self, queue: &mut PropagationQueue<Self::Key>) -> Result<(), Inconsistent>;
    /// Every splittable slot with its current atoms.
    fn slots(&self) -> Vec<(Self::Slot, Vec<Self::Atom>)>;
    fn fix(&mut self, slot: Self::Slot, atom: Self::Atom, queue: &mut PropagationQueue<Self::Key>);
    /// Final check on a propagated network whose slots are all atomic.
    fn accept_atomic(&self) -> bool {
        true
    }
}

/// An atomic refinement: one atom per slot, in slot order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario<S, A> {
    pub assignments: Vec<(S, A)>,
}

/// Chronological backtracking over the network's slots. The slot with the
/// fewest atoms (above one) is split first, ties broken by slot order, and
/// atoms are tried in declaration order. The network's filter runs after
/// every split.
pub fn search_scenario<N: QualitativeNetwork>(net: &N) -> Option<Scenario<N::Slot, N::Atom>> {
    let mut net = net.clone();
    let mut q = PropagationQueue::new();
    for k in net.all_keys() {
        q.push(k);
    }
    net.propagate(&mut q).ok()?;
    dfs(net)
}

fn dfs<N: QualitativeNetwork>(net: N) -> Option<Scenario<N::Slot, N::Atom>> {
    let slots = net.slots();
    let split = slots
        .iter()
        .filter(|(_, atoms)| atoms.len() > 1)
        .min_by_key(|(slot, atoms)| (atoms.len(), *slot));
    let Some((slot, atoms)) = split else {
        if !net.accept_atomic() {
            return None;
        }
        return Some(Scenario {
            assignments: slots.into_iter().map(|(s, a)| (s, a[0])).collect(),
        });
    };
    for &atom in atoms {
        let mut child = net.clone();
        let mut q = PropagationQueue::new();
        child.fix(*slot, atom, &mut q);
        if child.propagate(&mut q).is_ok() {
            if let Some(s) = dfs(child) {
                return Some(s);
            }
        }
    }
    None
}

impl QualitativeNetwork for BinaryNetwork {
    type Key = (usize, usize);
    type Slot = (usize, usize);
    type Atom = Rcc8Atom;

    fn all_keys(&self) -> Vec<(usize, usize)> {
        self.pairs().collect()
    }

    fn propagate(&mut self, queue: &mut PropagationQueue<(usize, usize)>) -> Result<(), Inconsistent> {
        self.path_consistency(queue)
    }

    fn slots(&self) -> Vec<((usize, usize), Vec<Rcc8Atom>)> {
        self.pairs().map(|(i, j)| ((i, j), self.get(i, j).atoms().collect())).collect()
    }

    fn fix(&mut self, (i, j): (usize, usize), atom: Rcc8Atom, queue: &mut PropagationQueue<(usize, usize)>) {
        self.insert_constraint(i, j, crate::algebra::Rcc8Relation::atom(atom), queue);
    }
}

impl QualitativeNetwork for TernaryNetwork {
    type Key = TernaryKey;
    type Slot = (usize, usize, usize);
    type Atom = CyctAtom;

    fn all_keys(&self) -> Vec<TernaryKey> {
        TernaryNetwork::all_keys(self)
    }

    fn propagate(&mut self, queue: &mut PropagationQueue<TernaryKey>) -> Result<(), Inconsistent> {
        self.four_consistency(queue)
    }

    fn slots(&self) -> Vec<((usize, usize, usize), Vec<CyctAtom>)> {
        self.triples()
            .map(|(i, j, k)| ((i, j, k), self.get(i, j, k).atoms().collect()))
            .collect()
    }

    fn fix(&mut self, (i, j, k): (usize, usize, usize), atom: CyctAtom, queue: &mut PropagationQueue<TernaryKey>) {
        self.insert_constraint(i, j, k, crate::algebra::CyctRelation::atom(atom), queue);
    }

    fn accept_atomic(&self) -> bool {
        self.atomic_realizable()
    }
}
