//! Input generators shared by the benchmarks.

use mtalc_core::algebra::{CyctAtom, CyctRelation, Rcc8Atom, Rcc8Relation};
use mtalc_core::network::{BinaryNetwork, PropagationQueue, TernaryNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every pair gets a random relation, each atom kept with probability
/// `density`; a relation is dropped if it would make the network fail path
/// consistency, so the result is path consistent.
pub fn random_rcc8_network(n: usize, density: f64, seed: u64) -> BinaryNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = BinaryNetwork::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut r = Rcc8Relation::from_atoms(Rcc8Atom::ALL.into_iter().filter(|_| rng.gen_bool(density)));
            if r.is_empty() {
                r = Rcc8Relation::atom(Rcc8Atom::ALL[rng.gen_range(0..8)]);
            }
            let mut next = net.clone();
            let mut q = PropagationQueue::new();
            next.insert_constraint(i, j, r, &mut q);
            if next.path_consistency(&mut q).is_ok() {
                net = next;
            }
        }
    }
    net
}

/// Each triple gets a random relation with probability one half, kept only
/// if the network stays 4-consistent.
pub fn random_cyct_network(n: usize, density: f64, seed: u64) -> TernaryNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = TernaryNetwork::new(n);
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if !rng.gen_bool(0.5) {
                    continue;
                }
                let mut r = CyctRelation::from_atoms(CyctAtom::all().filter(|_| rng.gen_bool(density)));
                if r.is_empty() {
                    r = CyctRelation::atom(CyctAtom::from_index(rng.gen_range(0..24)));
                }
                let mut next = net.clone();
                let mut q = PropagationQueue::new();
                next.insert_constraint(a, b, c, r, &mut q);
                if next.four_consistency(&mut q).is_ok() {
                    net = next;
                }
            }
        }
    }
    net
}

/// `k` eventualities, each fulfilled by the next one along the feature `f`;
/// the last one needs a primitive to hold. Satisfiable.
pub fn eventuality_chain(k: usize) -> String {
    let mut out = String::from("tfeature f; trole R; primitive A temporal;\n");
    for i in 0..k {
        let next = if i + 1 < k { format!("E{}", i + 1) } else { "A".to_string() };
        out += &format!("define E{i} temporal eventuality := {next} or some f . E{i};\n");
    }
    out += "check sat E0;\n";
    out
}

/// A region that shrinks along `f` forever while `k` features each carry a
/// region related to it. Satisfiable only through a back-edge.
pub fn spatial_loop(k: usize) -> String {
    let mut out = String::from("tfeature f; sfeature g");
    for i in 0..k {
        out += &format!(", h{i}");
    }
    out += ";\ndefine L temporal := some (g)(f g).{NTPP} and some f . L";
    for i in 0..k {
        out += &format!(" and some (h{i})(g).{{TPP,NTPP,PO}} and some (h{i})(f h{i}).{{EQ,TPP}}");
    }
    out += ";\ncheck sat L;\n";
    out
}
