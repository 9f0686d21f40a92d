use std::fmt;

use super::binary::parse_ids;
use super::{Inconsistent, PropagationQueue};
use crate::algebra::cyc::pair_of;
use crate::algebra::{orientations_realizable, quad_configs, CycbAtom, CycbRelation, CyctAtom, CyctRelation};
use crate::error::NetworkError;

/// Unit of re-propagation in a ternary network. Indices are strictly increasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TernaryKey {
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

/// CYC_t constraint network.
///
/// Only triples `i < j < k` are stored; other orderings are read through the
/// permutation transforms. A separate store of pairwise CYC_b relations
/// carries what constraints with a repeated variable imply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryNetwork {
    n: usize,
    triples: Vec<CyctRelation>,
    pairs: Vec<CycbRelation>,
    inconsistent: bool,
}

/// Sorts three distinct ids; `order[t]` is the argument position of the t-th smallest.
fn canonical(ids: [usize; 3]) -> ([usize; 3], [usize; 3]) {
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&p| ids[p]);
    ([ids[order[0]], ids[order[1]], ids[order[2]]], order)
}

fn eee() -> CyctAtom {
    CyctAtom::from_parts([CycbAtom::E; 3]).expect("eee is realizable")
}

impl TernaryNetwork {
    pub fn new(n: usize) -> Self {
        TernaryNetwork {
            n,
            triples: vec![CyctRelation::FULL; n * n * n],
            pairs: vec![CycbRelation::FULL; n * n],
            inconsistent: false,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_variable(&mut self) -> usize {
        self.grow(self.n + 1);
        self.n - 1
    }

    fn grow(&mut self, n: usize) {
        if n <= self.n {
            return;
        }
        let mut next = TernaryNetwork::new(n);
        for i in 0..self.n {
            for j in 0..self.n {
                next.pairs[i * n + j] = self.pairs[i * self.n + j];
                for k in 0..self.n {
                    next.triples[(i * n + j) * n + k] = self.triples[(i * self.n + j) * self.n + k];
                }
            }
        }
        next.inconsistent = self.inconsistent;
        *self = next;
    }

    fn tidx(&self, [i, j, k]: [usize; 3]) -> usize {
        (i * self.n + j) * self.n + k
    }

    fn raw(&self, t: [usize; 3]) -> CyctRelation {
        self.triples[self.tidx(t)]
    }

    fn set_raw(&mut self, t: [usize; 3], r: CyctRelation) {
        let idx = self.tidx(t);
        self.triples[idx] = r;
        if r.is_empty() {
            self.inconsistent = true;
        }
    }

    /// Relation on `(i, j, k)` for three distinct variables.
    pub fn get(&self, i: usize, j: usize, k: usize) -> CyctRelation {
        let (sorted, order) = canonical([i, j, k]);
        // position of each argument in the sorted triple
        let mut pos = [0usize; 3];
        for (t, &p) in order.iter().enumerate() {
            pos[p] = t;
        }
        self.raw(sorted).permute(pos)
    }

    /// Pairwise angle relation `⟨x_i, x_j⟩` for `i != j`.
    pub fn get_pair(&self, i: usize, j: usize) -> CycbRelation {
        if i < j {
            self.pairs[i * self.n + j]
        } else {
            self.pairs[j * self.n + i].converse()
        }
    }

    fn set_pair(&mut self, i: usize, j: usize, r: CycbRelation) {
        self.pairs[i * self.n + j] = r;
        if r.is_empty() {
            self.inconsistent = true;
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// All triples `(i, j, k)` with `i < j < k`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).flat_map(move |j| ((j + 1)..n).map(move |k| (i, j, k))))
    }

    pub fn is_atomic(&self) -> bool {
        self.triples().all(|(i, j, k)| self.raw([i, j, k]).len() == 1)
    }

    /// Every key, for seeding a full propagation.
    pub fn all_keys(&self) -> Vec<TernaryKey> {
        let mut keys: Vec<TernaryKey> = (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| TernaryKey::Pair(i, j)))
            .collect();
        keys.extend(self.triples().map(|(i, j, k)| TernaryKey::Triple(i, j, k)));
        keys
    }

    fn restrict_pair(&mut self, i: usize, j: usize, r: CycbRelation, queue: &mut PropagationQueue<TernaryKey>) {
        let (a, b, r) = if i < j { (i, j, r) } else { (j, i, r.converse()) };
        let old = self.pairs[a * self.n + b];
        let new = old & r;
        if new != old {
            self.set_pair(a, b, new);
            queue.push(TernaryKey::Pair(a, b));
        }
    }

    fn restrict_triple(&mut self, t: [usize; 3], r: CyctRelation, queue: &mut PropagationQueue<TernaryKey>) {
        let old = self.raw(t);
        let new = old & r;
        if new != old {
            self.set_raw(t, new);
            queue.push(TernaryKey::Triple(t[0], t[1], t[2]));
        }
    }

    /// Intersects the constraint on `(i, j, k)` with `r`, creating variables on
    /// demand. With a repeated variable the constraint is turned into the
    /// pairwise restriction it implies.
    pub fn insert_constraint(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        r: CyctRelation,
        queue: &mut PropagationQueue<TernaryKey>,
    ) {
        let ids = [i, j, k];
        self.grow(i.max(j).max(k) + 1);
        if i == j && j == k {
            if !r.contains(eee()) {
                self.inconsistent = true;
            }
            return;
        }
        for (p, q, s) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
            if ids[p] == ids[q] {
                // coinciding arguments have angle e; what remains is a pair constraint
                let mut allowed = CycbRelation::EMPTY;
                for a in r.atoms() {
                    if pair_of(a.parts(), p, q) == CycbAtom::E {
                        allowed.insert(pair_of(a.parts(), p, s));
                    }
                }
                if allowed.is_empty() {
                    self.inconsistent = true;
                    return;
                }
                self.restrict_pair(ids[p], ids[s], allowed, queue);
                return;
            }
        }
        let (sorted, order) = canonical(ids);
        self.restrict_triple(sorted, r.permute(order), queue);
    }

    pub fn try_insert(
        &mut self,
        ids: &[usize],
        r: CyctRelation,
        queue: &mut PropagationQueue<TernaryKey>,
    ) -> Result<(), NetworkError> {
        match ids {
            [i, j, k] => {
                self.insert_constraint(*i, *j, *k, r, queue);
                Ok(())
            }
            _ => Err(NetworkError::Arity {
                expected: 3,
                found: ids.len(),
            }),
        }
    }

    /// Intersects a pairwise angle constraint `⟨x_i, x_j⟩ ∈ r`.
    pub fn insert_pair(&mut self, i: usize, j: usize, r: CycbRelation, queue: &mut PropagationQueue<TernaryKey>) {
        self.grow(i.max(j) + 1);
        if i == j {
            if !r.contains(CycbAtom::E) {
                self.inconsistent = true;
            }
            return;
        }
        self.restrict_pair(i, j, r, queue);
    }

    /// Triple against its own pairs, in both directions.
    fn revise_triple(&mut self, t: [usize; 3], queue: &mut PropagationQueue<TernaryKey>) {
        let mut r = self.raw(t);
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            r = r.restrict_pair(p, q, self.get_pair(t[p], t[q]));
        }
        self.restrict_triple(t, r, queue);
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            let proj = r.project_pair(p, q);
            self.restrict_pair(t[p], t[q], proj, queue);
        }
    }

    /// Removes from the four triples and six pairs of `v` every atom without
    /// a realizable four-orientation configuration supporting it.
    fn revise_quad(&mut self, v: [usize; 4], queue: &mut PropagationQueue<TernaryKey>) {
        const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let rels: Vec<CyctRelation> = TRIPLES
            .iter()
            .map(|t| self.raw([v[t[0]], v[t[1]], v[t[2]]]))
            .collect();
        let prels: Vec<CycbRelation> = PAIRS.iter().map(|&(a, b)| self.get_pair(v[a], v[b])).collect();
        let mut new_t = [CyctRelation::EMPTY; 4];
        let mut new_p = [CycbRelation::EMPTY; 6];
        for cfg in quad_configs() {
            if !(0..6).all(|p| prels[p].contains(cfg.pairs[p])) {
                continue;
            }
            let atoms: Vec<CyctAtom> = TRIPLES.iter().map(|t| cfg.triple(t[0], t[1], t[2])).collect();
            if !(0..4).all(|t| rels[t].contains(atoms[t])) {
                continue;
            }
            for t in 0..4 {
                new_t[t] = new_t[t] | CyctRelation::atom(atoms[t]);
            }
            for p in 0..6 {
                new_p[p].insert(cfg.pairs[p]);
            }
        }
        for (t, tr) in TRIPLES.iter().enumerate() {
            self.restrict_triple([v[tr[0]], v[tr[1]], v[tr[2]]], new_t[t], queue);
        }
        for (p, &(a, b)) in PAIRS.iter().enumerate() {
            self.restrict_pair(v[a], v[b], new_p[p], queue);
        }
    }

    /// Drains `queue`, enforcing support of every atom within every quadruple
    /// of variables.
    pub fn four_consistency(&mut self, queue: &mut PropagationQueue<TernaryKey>) -> Result<(), Inconsistent> {
        while !self.inconsistent {
            let Some(key) = queue.pop() else {
                return Ok(());
            };
            match key {
                TernaryKey::Pair(i, j) => {
                    for k in 0..self.n {
                        if k != i && k != j {
                            let (t, _) = canonical([i, j, k]);
                            self.revise_triple(t, queue);
                        }
                    }
                }
                TernaryKey::Triple(a, b, c) => {
                    self.revise_triple([a, b, c], queue);
                    for w in 0..self.n {
                        if self.inconsistent {
                            break;
                        }
                        if w != a && w != b && w != c {
                            let mut v = [a, b, c, w];
                            v.sort_unstable();
                            self.revise_quad(v, queue);
                        }
                    }
                }
            }
        }
        queue.clear();
        Err(Inconsistent)
    }

    /// Exact check of an atomic network, by solving for actual angles.
    pub fn atomic_realizable(&self) -> bool {
        if self.n < 3 {
            // a single nonempty angle constraint is always realizable
            return !self.inconsistent;
        }
        let mut cons = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let mut atoms = self.get_pair(i, j).atoms();
                match (atoms.next(), atoms.next()) {
                    (Some(b), None) => cons.push((i, j, b)),
                    _ => return false,
                }
            }
        }
        orientations_realizable(self.n, &cons)
    }

    /// Parses the dump format: one `i j k {ATOMS}` line per constraint.
    pub fn from_dump(n: usize, text: &str) -> Result<Self, NetworkError> {
        let mut net = TernaryNetwork::new(n);
        let mut q = PropagationQueue::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || NetworkError::Dump(lineno + 1, line.to_string());
            let brace = line.find('{').ok_or_else(bad)?;
            let ids = parse_ids(&line[..brace]).ok_or_else(bad)?;
            let r: CyctRelation = line[brace..].parse().map_err(|_| bad())?;
            net.try_insert(&ids, r, &mut q)?;
        }
        Ok(net)
    }
}

impl fmt::Display for TernaryNetwork {
    /// Dump format: one `i j k {ATOMS}` line per non-universal triple, `i < j < k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, k) in self.triples() {
            let r = self.raw([i, j, k]);
            if !r.is_full() {
                writeln!(f, "{i} {j} {k} {r}")?;
            }
        }
        Ok(())
    }
}
