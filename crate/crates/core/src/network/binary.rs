use std::fmt;

use super::{Inconsistent, PropagationQueue};
use crate::algebra::{Rcc8Atom, Rcc8Relation};
use crate::error::NetworkError;

/// RCC8 constraint network.
///
/// Both halves of the matrix are stored and kept converse-consistent; the
/// diagonal is `{EQ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryNetwork {
    n: usize,
    rel: Vec<Rcc8Relation>,
    inconsistent: bool,
}

impl BinaryNetwork {
    pub fn new(n: usize) -> Self {
        let mut rel = vec![Rcc8Relation::FULL; n * n];
        for i in 0..n {
            rel[i * n + i] = Rcc8Relation::atom(Rcc8Atom::EQ);
        }
        BinaryNetwork {
            n,
            rel,
            inconsistent: false,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Adds a variable related to every other by the universal relation.
    pub fn add_variable(&mut self) -> usize {
        self.grow(self.n + 1);
        self.n - 1
    }

    fn grow(&mut self, n: usize) {
        if n <= self.n {
            return;
        }
        let mut next = BinaryNetwork::new(n);
        for i in 0..self.n {
            for j in 0..self.n {
                next.rel[i * n + j] = self.rel[i * self.n + j];
            }
        }
        next.inconsistent = self.inconsistent;
        *self = next;
    }

    pub fn get(&self, i: usize, j: usize) -> Rcc8Relation {
        self.rel[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, r: Rcc8Relation) {
        self.rel[i * self.n + j] = r;
        self.rel[j * self.n + i] = r.converse();
        if r.is_empty() {
            self.inconsistent = true;
        }
    }

    /// True once any entry has become empty.
    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    pub fn is_atomic(&self) -> bool {
        self.pairs().all(|(i, j)| self.get(i, j).len() == 1)
    }

    /// All pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j)))
    }

    /// Intersects the constraint on `(i, j)` with `r`, creating variables on
    /// demand. The pair is enqueued only if its relation strictly shrank.
    pub fn insert_constraint(
        &mut self,
        i: usize,
        j: usize,
        r: Rcc8Relation,
        queue: &mut PropagationQueue<(usize, usize)>,
    ) {
        self.grow(i.max(j) + 1);
        if i == j {
            if !r.contains(Rcc8Atom::EQ) {
                self.inconsistent = true;
            }
            return;
        }
        let old = self.get(i, j);
        let new = old & r;
        if new != old {
            self.set(i, j, new);
            queue.push((i.min(j), i.max(j)));
        }
    }

    /// Same as [`insert_constraint`](Self::insert_constraint) but checks that the ids exist.
    pub fn try_insert(
        &mut self,
        ids: &[usize],
        r: Rcc8Relation,
        queue: &mut PropagationQueue<(usize, usize)>,
    ) -> Result<(), NetworkError> {
        match ids {
            [i, j] => {
                self.insert_constraint(*i, *j, r, queue);
                Ok(())
            }
            _ => Err(NetworkError::Arity {
                expected: 2,
                found: ids.len(),
            }),
        }
    }

    /// Refines `(i, k)` by `(i, j) ∘ (j, k)`; returns whether it shrank.
    fn revise(&mut self, i: usize, j: usize, k: usize) -> Result<bool, Inconsistent> {
        let old = self.get(i, k);
        let new = old & self.get(i, j).compose(self.get(j, k));
        if new == old {
            return Ok(false);
        }
        self.set(i, k, new);
        if new.is_empty() {
            return Err(Inconsistent);
        }
        Ok(true)
    }

    pub fn path_consistency(
        &mut self,
        queue: &mut PropagationQueue<(usize, usize)>,
    ) -> Result<(), Inconsistent> {
        if self.inconsistent {
            queue.clear();
            return Err(Inconsistent);
        }
        while let Some((i, j)) = queue.pop() {
            for k in 0..self.n {
                if k == i || k == j {
                    continue;
                }
                let res = self.revise(i, j, k).and_then(|changed| {
                    if changed {
                        queue.push((i.min(k), i.max(k)));
                    }
                    self.revise(k, i, j)
                });
                match res {
                    Ok(true) => {
                        queue.push((k.min(j), k.max(j)));
                    }
                    Ok(false) => {}
                    Err(e) => {
                        queue.clear();
                        return Err(e);
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses the dump format: one `i j {ATOMS}` line per constraint.
    pub fn from_dump(n: usize, text: &str) -> Result<Self, NetworkError> {
        let mut net = BinaryNetwork::new(n);
        let mut q = PropagationQueue::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let brace = line
                .find('{')
                .ok_or_else(|| NetworkError::Dump(lineno + 1, line.to_string()))?;
            let ids = parse_ids(&line[..brace]).ok_or_else(|| NetworkError::Dump(lineno + 1, line.to_string()))?;
            let r: Rcc8Relation = line[brace..]
                .parse()
                .map_err(|_| NetworkError::Dump(lineno + 1, line.to_string()))?;
            net.try_insert(&ids, r, &mut q)?;
        }
        Ok(net)
    }
}

pub(super) fn parse_ids(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

impl fmt::Display for BinaryNetwork {
    /// Dump format: one `i j {ATOMS}` line per non-universal constraint, `i < j`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in self.pairs() {
            let r = self.get(i, j);
            if !r.is_full() {
                writeln!(f, "{i} {j} {r}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Rcc8Atom::*;

    fn rel(atoms: &[Rcc8Atom]) -> Rcc8Relation {
        Rcc8Relation::from_atoms(atoms.iter().copied())
    }

    fn pc(net: &mut BinaryNetwork) -> Result<(), Inconsistent> {
        let mut q = PropagationQueue::new();
        for (i, j) in net.pairs().collect::<Vec<_>>() {
            q.push((i, j));
        }
        net.path_consistency(&mut q)
    }

    #[test]
    fn tpp_chain_contradicts_dc() {
        let mut net = BinaryNetwork::from_dump(3, "0 1 {TPP}\n1 2 {TPP}\n0 2 {DC}\n").unwrap();
        assert_eq!(pc(&mut net), Err(Inconsistent));
    }

    #[test]
    fn universal_network_is_a_fixpoint() {
        let mut net = BinaryNetwork::new(4);
        let before = net.clone();
        assert_eq!(pc(&mut net), Ok(()));
        assert_eq!(net, before);
    }

    #[test]
    fn ntpp_chain_refines_outer_edge() {
        let mut net = BinaryNetwork::from_dump(3, "0 1 {NTPP}\n1 2 {NTPP}\n").unwrap();
        assert_eq!(pc(&mut net), Ok(()));
        assert_eq!(net.get(0, 2), rel(&[NTPP]));
        assert_eq!(net.get(2, 0), rel(&[NTPPi]));
    }

    #[test]
    fn insert_enqueues_only_on_shrink() {
        let mut net = BinaryNetwork::new(2);
        let mut q = PropagationQueue::new();
        net.insert_constraint(0, 1, Rcc8Relation::FULL, &mut q);
        assert!(q.is_empty());
        net.insert_constraint(0, 1, rel(&[TPP]), &mut q);
        assert_eq!(net.get(0, 1), rel(&[TPP]));
        assert_eq!(q.pop(), Some((0, 1)));
        net.insert_constraint(1, 0, rel(&[TPPi]), &mut q);
        assert!(q.is_empty());
    }

    #[test]
    fn disjoint_inserts_make_network_inconsistent() {
        let mut net = BinaryNetwork::new(2);
        let mut q = PropagationQueue::new();
        net.insert_constraint(0, 1, rel(&[DC]), &mut q);
        net.insert_constraint(0, 1, rel(&[EC]), &mut q);
        assert!(net.is_inconsistent());
        assert_eq!(net.path_consistency(&mut q), Err(Inconsistent));
    }

    #[test]
    fn insert_creates_variables_and_checks_arity() {
        let mut net = BinaryNetwork::new(0);
        let mut q = PropagationQueue::new();
        net.insert_constraint(0, 3, rel(&[PO]), &mut q);
        assert_eq!(net.len(), 4);
        assert_eq!(net.get(3, 0), rel(&[PO]));
        assert_eq!(net.get(1, 2), Rcc8Relation::FULL);
        assert!(net.try_insert(&[0, 1, 2], Rcc8Relation::FULL, &mut q).is_err());
        // same variable twice
        net.insert_constraint(1, 1, rel(&[TPP]), &mut q);
        assert!(net.is_inconsistent());
    }

    #[test]
    fn dump_round_trip() {
        let text = "0 1 {TPP,NTPP}\n1 2 {DC}\n";
        let net = BinaryNetwork::from_dump(3, text).unwrap();
        assert_eq!(net.to_string(), text);
        assert!(BinaryNetwork::from_dump(3, "0 1 2 {DC}").is_err());
        assert!(BinaryNetwork::from_dump(3, "0 x {DC}").is_err());
    }
}
