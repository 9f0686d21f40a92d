//! Oracles and corpora shared by the integration tests. Nothing here calls
//! the filters or search under test.
#![allow(dead_code)]

use mtalc_core::algebra::{Calculus, CycbAtom, Rcc8Atom, Rcc8Relation};
use mtalc_core::atemporal::RationalOrderDomain;
use mtalc_core::lang::{parse, Concept, Directive, Role, RoleKind, Sort};
use mtalc_core::temporal::{satisfiable, subsumes, SearchOptions};
use rand::Rng;

// ---------------------------------------------------------------------------
// RCC8 over pixel regions

pub const GRID: usize = 32;

/// A union of closed unit squares on a `GRID × GRID` board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region(pub Vec<bool>);

impl Region {
    pub fn empty() -> Self {
        Region(vec![false; GRID * GRID])
    }

    pub fn is_empty(&self) -> bool {
        !self.0.iter().any(|&b| b)
    }

    fn at(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= GRID as i64 || y >= GRID as i64 {
            return false;
        }
        self.0[y as usize * GRID + x as usize]
    }

    fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (0..GRID * GRID)
            .filter(|&i| self.0[i])
            .map(|i| ((i % GRID) as i64, (i / GRID) as i64))
    }

    pub fn disc(cx: f64, cy: f64, r: f64) -> Self {
        let mut out = Region::empty();
        for y in 0..GRID {
            for x in 0..GRID {
                let (dx, dy) = (x as f64 + 0.5 - cx, y as f64 + 0.5 - cy);
                out.0[y * GRID + x] = dx * dx + dy * dy <= r * r;
            }
        }
        out
    }

    pub fn union(&self, other: &Region) -> Region {
        Region(self.0.iter().zip(&other.0).map(|(a, b)| *a || *b).collect())
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region(self.0.iter().zip(&other.0).map(|(a, b)| *a && *b).collect())
    }

    /// Cells within Chebyshev distance one.
    pub fn dilate(&self) -> Region {
        let mut out = Region::empty();
        for y in 0..GRID as i64 {
            for x in 0..GRID as i64 {
                out.0[y as usize * GRID + x as usize] = NEIGHBOURS.iter().any(|(dx, dy)| self.at(x + dx, y + dy));
            }
        }
        out
    }

    pub fn erode(&self) -> Region {
        let mut out = Region::empty();
        for (x, y) in self.cells() {
            if NEIGHBOURS.iter().all(|(dx, dy)| self.at(x + dx, y + dy)) {
                out.0[y as usize * GRID + x as usize] = true;
            }
        }
        out
    }
}

const NEIGHBOURS: [(i64, i64); 9] = [(-1, -1), (0, -1), (1, -1), (-1, 0), (0, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];

/// Exact RCC8 relation of two nonempty pixel regions: closed squares touch
/// when they share a corner, interiors meet only on a shared cell.
pub fn pixel_relation(a: &Region, b: &Region) -> Rcc8Atom {
    let share = a.0.iter().zip(&b.0).any(|(x, y)| *x && *y);
    if !share {
        let touch = a.cells().any(|(x, y)| NEIGHBOURS.iter().any(|(dx, dy)| b.at(x + dx, y + dy)));
        return if touch { Rcc8Atom::EC } else { Rcc8Atom::DC };
    }
    let a_in_b = a.0.iter().zip(&b.0).all(|(x, y)| !*x || *y);
    let b_in_a = a.0.iter().zip(&b.0).all(|(x, y)| *x || !*y);
    // some cell of the inner region touches a cell outside the outer one
    let tangential = |inner: &Region, outer: &Region| {
        inner
            .cells()
            .any(|(x, y)| NEIGHBOURS.iter().any(|(dx, dy)| !outer.at(x + dx, y + dy)))
    };
    match (a_in_b, b_in_a) {
        (true, true) => Rcc8Atom::EQ,
        (true, false) if tangential(a, b) => Rcc8Atom::TPP,
        (true, false) => Rcc8Atom::NTPP,
        (false, true) if tangential(b, a) => Rcc8Atom::TPPi,
        (false, true) => Rcc8Atom::NTPPi,
        (false, false) => Rcc8Atom::PO,
    }
}

pub fn random_region<R: Rng>(rng: &mut R) -> Region {
    loop {
        let mut out = Region::empty();
        for _ in 0..rng.gen_range(1..=3) {
            let d = Region::disc(
                rng.gen_range(3.0..(GRID as f64 - 3.0)),
                rng.gen_range(3.0..(GRID as f64 - 3.0)),
                rng.gen_range(1.5..8.0),
            );
            out = out.union(&d);
        }
        if !out.is_empty() {
            return out;
        }
    }
}

/// A region related to `base` in one of several structured ways, so that
/// every RCC8 atom shows up with useful frequency.
pub fn related_region<R: Rng>(rng: &mut R, base: &Region) -> Region {
    loop {
        let r = match rng.gen_range(0..7) {
            0 => random_region(rng),
            1 => base.clone(),
            2 => {
                let mut r = base.dilate();
                if rng.gen_bool(0.5) {
                    r = r.dilate();
                }
                r
            }
            3 => base.union(&random_region(rng)),
            4 => base.erode(),
            5 => base.intersection(&random_region(rng).dilate().dilate()),
            _ => {
                // something right next to the base
                let ring = base.dilate().intersection(&Region(base.0.iter().map(|b| !b).collect()));
                ring.intersection(&random_region(rng).dilate().dilate().dilate())
            }
        };
        if !r.is_empty() {
            return r;
        }
    }
}

// ---------------------------------------------------------------------------
// RCC8 networks by exhaustive enumeration

/// Whether the atomic network `atoms[(i, j)]` (`i < j`) satisfies every
/// triangle law in all three readings.
pub fn triangles_ok(n: usize, atom: &dyn Fn(usize, usize) -> Rcc8Atom) -> bool {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                if !atom(i, j).compose(atom(j, k)).contains(atom(i, k)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Atoms `x = ⟨i,j⟩`, `y = ⟨j,k⟩`, `z = ⟨i,k⟩` agree in every reading of the triangle.
fn triangle(x: Rcc8Atom, y: Rcc8Atom, z: Rcc8Atom) -> bool {
    x.compose(y).contains(z) && z.compose(y.converse()).contains(x) && x.converse().compose(z).contains(y)
}

/// Enumerates atomic refinements of `rel` (upper-triangle relations, row
/// major), pruning a partial assignment as soon as a complete triangle fails.
pub fn rcc8_brute_force(n: usize, rel: &[Vec<Rcc8Relation>]) -> bool {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let mut chosen = vec![vec![None::<Rcc8Atom>; n]; n];
    fn get(chosen: &[Vec<Option<Rcc8Atom>>], i: usize, j: usize) -> Option<Rcc8Atom> {
        if i < j {
            chosen[i][j]
        } else {
            chosen[j][i].map(Rcc8Atom::converse)
        }
    }
    fn go(k: usize, pairs: &[(usize, usize)], rel: &[Vec<Rcc8Relation>], chosen: &mut [Vec<Option<Rcc8Atom>>]) -> bool {
        let Some(&(i, j)) = pairs.get(k) else {
            return true;
        };
        for a in rel[i][j].atoms() {
            chosen[i][j] = Some(a);
            let ok = (0..chosen.len()).filter(|&w| w != i && w != j).all(|w| {
                match (get(chosen, j, w), get(chosen, i, w)) {
                    (Some(jw), Some(iw)) => triangle(a, jw, iw),
                    _ => true,
                }
            });
            if ok && go(k + 1, pairs, rel, chosen) {
                chosen[i][j] = None;
                return true;
            }
        }
        chosen[i][j] = None;
        false
    }
    go(0, &pairs, rel, &mut chosen)
}

pub fn random_rcc8_relation<R: Rng>(rng: &mut R, density: f64) -> Rcc8Relation {
    loop {
        let r = Rcc8Relation::from_atoms(Rcc8Atom::ALL.into_iter().filter(|_| rng.gen_bool(density)));
        if !r.is_empty() {
            return r;
        }
    }
}

// ---------------------------------------------------------------------------
// Orientations on the π/12 grid

pub const STEPS: i64 = 24;

/// CYC_b atom of an anticlockwise angle given in units of π/12.
pub fn grid_cycb(steps: i64) -> CycbAtom {
    match steps.rem_euclid(STEPS) {
        0 => CycbAtom::E,
        12 => CycbAtom::O,
        s if s < 12 => CycbAtom::L,
        _ => CycbAtom::R,
    }
}

/// Letters of the atom on `(x, y, z)` for orientations at grid angles.
pub fn grid_triple(x: i64, y: i64, z: i64) -> [CycbAtom; 3] {
    [grid_cycb(y - x), grid_cycb(z - y), grid_cycb(z - x)]
}

/// Every triple realized on the grid.
pub fn grid_cyct_atoms() -> Vec<[CycbAtom; 3]> {
    let mut out = Vec::new();
    for y in 0..STEPS {
        for z in 0..STEPS {
            let t = grid_triple(0, y, z);
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Whether orientations on the grid satisfy every ternary constraint, with
/// the first orientation fixed at angle zero.
pub fn cyct_grid_satisfiable(n: usize, constraints: &[([usize; 3], Vec<[CycbAtom; 3]>)]) -> bool {
    let mut angles = vec![0i64; n];
    fn go(k: usize, n: usize, angles: &mut Vec<i64>, cons: &[([usize; 3], Vec<[CycbAtom; 3]>)]) -> bool {
        if k == n {
            return cons.iter().all(|([a, b, c], allowed)| {
                allowed.contains(&grid_triple(angles[*a], angles[*b], angles[*c]))
            });
        }
        for v in 0..STEPS {
            angles[k] = v;
            // prune with constraints whose variables are all placed
            let ok = cons.iter().all(|([a, b, c], allowed)| {
                *a.max(b).max(c) > k || allowed.contains(&grid_triple(angles[*a], angles[*b], angles[*c]))
            });
            if ok && go(k + 1, n, angles, cons) {
                return true;
            }
        }
        false
    }
    if n == 0 {
        return true;
    }
    go(1, n, &mut angles, constraints)
}

// ---------------------------------------------------------------------------
// Logic corpora

pub struct Case {
    pub name: &'static str,
    pub calculus: Calculus,
    pub text: &'static str,
    /// One verdict per directive: SAT for `check sat`, YES for `check subsume`.
    pub expected: &'static [bool],
}

pub const REGRESSION: &[Case] = &[
    Case {
        name: "propositional clash",
        calculus: Calculus::Rcc8,
        text: "primitive A temporal; check sat A and not A;",
        expected: &[false],
    },
    Case {
        name: "universal against existential",
        calculus: Calculus::Rcc8,
        text: "trole R; arole S; primitive A temporal; primitive X atemporal;\n\
               check sat some R . A and all R . not A;\n\
               check sat some S . X and all S . not X;\n\
               check sat some R . A and some R . not A;",
        expected: &[false, false, true],
    },
    Case {
        name: "rational order cycle",
        calculus: Calculus::Rcc8,
        text: "cfeature g1, g2; check sat some (g1)(g2).lt and some (g2)(g1).lt; check sat some (g1)(g2).le and some (g2)(g1).le;",
        expected: &[false, true],
    },
    Case {
        name: "proper part both ways across a feature",
        calculus: Calculus::Rcc8,
        text: "tfeature f; sfeature g; check sat some (g)(f g).{NTPP} and some (f g)(g).{NTPP}; check sat some (g)(f g).{NTPP};",
        expected: &[false, true],
    },
    Case {
        name: "self loop without eventuality",
        calculus: Calculus::Rcc8,
        text: "tfeature f; define B temporal := some f . B; check sat B;",
        expected: &[true],
    },
    Case {
        name: "self loop as eventuality",
        calculus: Calculus::Rcc8,
        text: "tfeature f; define B temporal eventuality := some f . B; check sat B;",
        expected: &[false],
    },
    Case {
        name: "eventuality fulfilled now",
        calculus: Calculus::Rcc8,
        text: "tfeature f; primitive A temporal; define B temporal eventuality := A or some f . B; check sat B; check sat B and not A;",
        expected: &[true, true],
    },
    Case {
        name: "eventuality never fulfilled",
        calculus: Calculus::Rcc8,
        text: "tfeature f; primitive A temporal;\n\
               define E temporal eventuality := A or some f . E;\n\
               define G temporal := not A and some f . G;\n\
               define H temporal := E and some f . H;\n\
               check sat G and E; check sat H; check sat H and G;",
        expected: &[false, true, false],
    },
    Case {
        name: "mixed atemporal under temporal feature",
        calculus: Calculus::Rcc8,
        text: "tfeature f; cfeature g1, g2; primitive A atemporal;\n\
               check sat some f . (A and some (g1)(g2).lt);\n\
               check sat some f . (A and not A);\n\
               check sat all f . (some (g1)(g2).lt and some (g2)(g1).lt);\n\
               check sat some f . top and all f . (some (g1)(g2).lt and some (g2)(g1).lt);",
        expected: &[true, false, true, false],
    },
    Case {
        name: "spatial and aspatial constraints side by side",
        calculus: Calculus::Rcc8,
        text: "tfeature f; sfeature g; cfeature c1, c2;\n\
               check sat some (g)(f g).{NTPP} and some f . (some (c1)(c2).lt);\n\
               check sat some (g)(f g).{NTPP} and some f . (some (c1)(c2).lt and some (c2)(c1).le);",
        expected: &[true, false],
    },
    Case {
        name: "spatial constraints around a loop",
        calculus: Calculus::Rcc8,
        text: "tfeature f; sfeature g;\n\
               define Grow temporal := some (g)(f g).{NTPP} and some f . Grow;\n\
               define Stuck temporal := some (g)(f g).{EQ} and some (g)(f f g).{DC} and some f . Stuck;\n\
               check sat Grow; check sat Stuck;",
        expected: &[true, false],
    },
    Case {
        name: "composition through an intermediate region",
        calculus: Calculus::Rcc8,
        text: "tfeature f; sfeature g, h;\n\
               check sat some (g)(h).{TPP} and some (h)(f g).{TPP} and some (g)(f g).{DC};\n\
               check sat some (g)(h).{TPP} and some (h)(f g).{TPP} and some (g)(f g).{NTPP};",
        expected: &[false, true],
    },
    Case {
        name: "negated greatest fixpoint",
        calculus: Calculus::Rcc8,
        text: "tfeature f; define B temporal := some f . B; check sat B and not B; check sat not B;",
        expected: &[false, true],
    },
    Case {
        name: "orientations",
        calculus: Calculus::Cyct,
        text: "tfeature f; sfeature a, b, c, d;\n\
               check sat some (a)(b)(c).{eee} and some (b)(c)(d).{lll};\n\
               check sat some (a)(b)(f a).{lll,rlr} and some (b)(f a)(a).{lll};",
        expected: &[false, true],
    },
    Case {
        name: "subsumption",
        calculus: Calculus::Rcc8,
        text: "tfeature f; primitive A, B temporal; define E temporal eventuality := A or some f . E;\n\
               check subsume A and B A; check subsume A A and B; check subsume A E; check subsume E A;",
        expected: &[true, false, true, false],
    },
    Case {
        name: "trivial",
        calculus: Calculus::Rcc8,
        text: "check sat top; check sat bot;",
        expected: &[true, false],
    },
];

/// Verdicts for every directive of a case.
pub fn run_case(case: &Case, options: &SearchOptions) -> Vec<bool> {
    let doc = parse(case.text, case.calculus, &RationalOrderDomain).unwrap_or_else(|e| panic!("{}: {e:?}", case.name));
    doc.directives
        .iter()
        .map(|d| match d {
            Directive::Sat(c) => satisfiable(c, &doc.tbox, case.calculus, &RationalOrderDomain, options)
                .unwrap()
                .is_sat(),
            Directive::Subsume(sub, sup) => {
                subsumes(sup, sub, &doc.tbox, case.calculus, &RationalOrderDomain, options).unwrap()
            }
        })
        .collect()
}

/// Classifier corpus: source text and the expected classification line.
pub const CLASSIFIER: &[(&str, &str)] = &[
    ("tfeature f; define B temporal := some f . B;", "TWC_ATAC"),
    ("primitive A temporal; define B temporal := B and A;", "REJECTED: condition 2"),
    ("tfeature f; define A temporal := some f . B; define B temporal := some f . A;", "REJECTED: condition 1"),
    ("primitive P temporal; tfeature f; define A temporal := some f . B; define B temporal := P;", "ACYCLIC"),
    ("afeature k; define C atemporal := some k . C;", "WEAKLY_CYCLIC"),
    ("trole R; primitive A temporal; define B temporal := A or all R . (B and A);", "TWC_ATAC"),
    ("primitive A temporal; define B temporal := not B or A;", "REJECTED: condition 2"),
    (
        "tfeature f; trole R; define A temporal := some f . B; define B temporal := all R . C; define C temporal := some f . A;",
        "REJECTED: condition 1",
    ),
    (
        "tfeature f; afeature k; primitive X atemporal; define B temporal := some f . B and some f . C; define C atemporal := X and some k . X;",
        "TWC_ATAC",
    ),
    (
        "tfeature f; afeature k; define B temporal := some f . B; define C atemporal := some k . C;",
        "WEAKLY_CYCLIC",
    ),
];

// ---------------------------------------------------------------------------
// Random temporal concepts

pub fn random_concept<R: Rng>(rng: &mut R, depth: usize) -> Concept {
    let f = Role::new("f", RoleKind::TemporalFeature);
    let r = Role::new("R", RoleKind::TemporalRole);
    let leaf = |rng: &mut R| {
        let n = ["A", "B", "C", "E"][rng.gen_range(0..4)];
        let c = Concept::name(n, Sort::Temporal);
        if rng.gen_bool(0.3) {
            Concept::not(c)
        } else {
            c
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..7) {
        0 => leaf(rng),
        1 => Concept::and([random_concept(rng, depth - 1), random_concept(rng, depth - 1)]),
        2 => Concept::or([random_concept(rng, depth - 1), random_concept(rng, depth - 1)]),
        3 => Concept::exists(f, random_concept(rng, depth - 1)),
        4 => Concept::forall(f, random_concept(rng, depth - 1)),
        5 => Concept::exists(r, random_concept(rng, depth - 1)),
        _ => Concept::not(random_concept(rng, depth - 1)),
    }
}

/// Declarations and TBox for [`random_concept`].
pub const RANDOM_TBOX: &str = "tfeature f; trole R; primitive A, B, C temporal;\n\
                               define E temporal eventuality := A or some f . E;";
