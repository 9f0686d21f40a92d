mod common;

use std::collections::BTreeMap;

use common::*;
use mtalc_core::algebra::{CycbAtom, CyctAtom, CyctRelation, Rcc8Atom, Rcc8Relation};
use proptest::prelude::*;

/// CYC_t composition read off four orientations on the grid: the atom on
/// (x, y, u) composed with the atom on (y, u, z) yields the atom on (x, y, z).
#[test]
fn cyct_composition_matches_the_grid() {
    let mut table: BTreeMap<([CycbAtom; 3], [CycbAtom; 3]), Vec<[CycbAtom; 3]>> = BTreeMap::new();
    for y in 0..STEPS {
        for u in 0..STEPS {
            for z in 0..STEPS {
                let key = (grid_triple(0, y, u), grid_triple(y, u, z));
                let out = table.entry(key).or_default();
                let t = grid_triple(0, y, z);
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    for a in CyctAtom::all() {
        for b in CyctAtom::all() {
            let expected = match table.get(&(a.parts(), b.parts())) {
                Some(ts) => CyctRelation::from_atoms(ts.iter().map(|t| CyctAtom::from_parts(*t).unwrap())),
                None => CyctRelation::EMPTY,
            };
            assert_eq!(a.compose(b), expected, "{a:?} ∘ {b:?}");
        }
    }
}

#[test]
fn cyct_permutations_match_the_grid() {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for y in 0..STEPS {
        for z in 0..STEPS {
            let angles = [0, y, z];
            let a = CyctAtom::from_parts(grid_triple(0, y, z)).unwrap();
            for p in perms {
                let expected = grid_triple(angles[p[0]], angles[p[1]], angles[p[2]]);
                assert_eq!(a.permute(p).parts(), expected, "{a:?} permuted by {p:?}");
            }
        }
    }
}

/// RCC8 triangles observed on pixel regions, compared entry by entry.
#[test]
fn rcc8_table_covers_observed_triangles() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    let mut hits = BTreeMap::new();
    for _ in 0..400 {
        let a = random_region(&mut rng);
        let b = related_region(&mut rng, &a);
        let c = related_region(&mut rng, &b);
        let (ab, bc, ac) = (pixel_relation(&a, &b), pixel_relation(&b, &c), pixel_relation(&a, &c));
        assert!(ab.compose(bc).contains(ac), "{ab:?} ∘ {bc:?} misses {ac:?}");
        *hits.entry((ab, bc)).or_insert(0) += 1;
    }
    assert!(hits.len() > 30, "{}", hits.len());
}

fn rcc8_relation() -> impl Strategy<Value = Rcc8Relation> {
    any::<u8>().prop_map(Rcc8Relation::from_bits)
}

fn cyct_relation() -> impl Strategy<Value = CyctRelation> {
    any::<u32>().prop_map(|b| CyctRelation::from_bits(b & CyctRelation::FULL.bits()))
}

proptest! {
    #[test]
    fn rcc8_converse_is_an_involution(r in rcc8_relation()) {
        prop_assert_eq!(r.converse().converse(), r);
        prop_assert_eq!(r.converse().len(), r.len());
    }

    #[test]
    fn rcc8_composition_is_union_of_atoms(r in rcc8_relation(), s in rcc8_relation()) {
        let mut expected = Rcc8Relation::EMPTY;
        for a in r.atoms() {
            for b in s.atoms() {
                expected = expected | a.compose(b);
            }
        }
        prop_assert_eq!(r.compose(s), expected);
        prop_assert_eq!(r.compose(s).converse(), s.converse().compose(r.converse()));
    }

    #[test]
    fn rcc8_composition_is_associative_on_atoms(a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let (a, b, c) = (Rcc8Atom::from_index(a), Rcc8Atom::from_index(b), Rcc8Atom::from_index(c));
        let left = a.compose(b).compose(Rcc8Relation::atom(c));
        let right = Rcc8Relation::atom(a).compose(b.compose(c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn cyct_rotation_has_order_three(r in cyct_relation()) {
        prop_assert_eq!(r.rotate().rotate().rotate(), r);
        prop_assert_eq!(r.rotate().len(), r.len());
    }
}
