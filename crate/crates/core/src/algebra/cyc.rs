//! Orientation algebras: the binary CYC_b and the ternary CYC_t.
//!
//! A CYC_t atom `b1b2b3` on `(x, y, z)` states that the anticlockwise angle
//! `⟨x,y⟩` lies in region `b1`, `⟨y,z⟩` in `b2` and `⟨x,z⟩` in `b3`. The atom
//! set, the permutation transforms and the composition table are all derived
//! from the exact angle solver in [`super::angles`] the first time they are
//! needed.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::angles;
use crate::error::AlgebraError;

/// Region of an anticlockwise angle between two orientations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum CycbAtom {
    /// angle 0
    E = 0,
    /// angle in (0, π)
    L = 1,
    /// angle π
    O = 2,
    /// angle in (π, 2π)
    R = 3,
}

impl CycbAtom {
    pub const ALL: [CycbAtom; 4] = [CycbAtom::E, CycbAtom::L, CycbAtom::O, CycbAtom::R];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Region of the reversed angle.
    pub fn converse(self) -> CycbAtom {
        match self {
            CycbAtom::L => CycbAtom::R,
            CycbAtom::R => CycbAtom::L,
            b => b,
        }
    }

    pub fn letter(self) -> char {
        match self {
            CycbAtom::E => 'e',
            CycbAtom::L => 'l',
            CycbAtom::O => 'o',
            CycbAtom::R => 'r',
        }
    }

    pub fn from_letter(c: char) -> Option<CycbAtom> {
        match c {
            'e' => Some(CycbAtom::E),
            'l' => Some(CycbAtom::L),
            'o' => Some(CycbAtom::O),
            'r' => Some(CycbAtom::R),
            _ => None,
        }
    }
}

/// Set of CYC_b atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CycbRelation(u8);

impl CycbRelation {
    pub const EMPTY: CycbRelation = CycbRelation(0);
    pub const FULL: CycbRelation = CycbRelation(0b1111);

    pub fn atom(b: CycbAtom) -> Self {
        CycbRelation(1 << b.index())
    }

    pub fn contains(self, b: CycbAtom) -> bool {
        self.0 & (1 << b.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn insert(&mut self, b: CycbAtom) {
        self.0 |= 1 << b.index();
    }

    pub fn atoms(self) -> impl Iterator<Item = CycbAtom> {
        CycbAtom::ALL.into_iter().filter(move |b| self.contains(*b))
    }

    pub fn converse(self) -> Self {
        let mut out = CycbRelation::EMPTY;
        for b in self.atoms() {
            out.insert(b.converse());
        }
        out
    }
}

impl std::ops::BitAnd for CycbRelation {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        CycbRelation(self.0 & rhs.0)
    }
}

/// A realizable triple of CYC_b atoms; stored as its index in the derived
/// atom list (lexicographic over `e < l < o < r`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyctAtom(u8);

/// Number of CYC_t atoms.
pub const CYCT_ATOM_COUNT: usize = 24;

impl CyctAtom {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> CyctAtom {
        assert!(i < CYCT_ATOM_COUNT);
        CyctAtom(i as u8)
    }

    /// Looks up the atom for a triple, if the triple is realizable.
    pub fn from_parts(parts: [CycbAtom; 3]) -> Option<CyctAtom> {
        tables().by_parts[parts_key(parts)].map(CyctAtom)
    }

    pub fn parts(self) -> [CycbAtom; 3] {
        tables().parts[self.index()]
    }

    /// All 24 atoms in declaration order.
    pub fn all() -> impl Iterator<Item = CyctAtom> {
        (0..CYCT_ATOM_COUNT).map(CyctAtom::from_index)
    }

    /// Reads the configuration with arguments reordered: `perm = [p0, p1, p2]`
    /// yields the atom on `(v_p0, v_p1, v_p2)` where `(v0, v1, v2)` are the
    /// original arguments.
    pub fn permute(self, perm: [usize; 3]) -> CyctAtom {
        tables().permute[perm_index(perm)][self.index()]
    }

    /// Atom on `(y, z, x)` for an atom on `(x, y, z)`.
    pub fn rotate(self) -> CyctAtom {
        self.permute([1, 2, 0])
    }

    /// Atom on `(y, x, z)`.
    pub fn swap(self) -> CyctAtom {
        self.permute([1, 0, 2])
    }

    /// Composition of an atom on `(x, y, u)` with one on `(y, u, z)`; the result
    /// is the set of atoms realizable on `(x, y, z)`.
    pub fn compose(self, other: CyctAtom) -> CyctRelation {
        CyctRelation(tables().compose[self.index()][other.index()])
    }
}

impl fmt::Display for CyctAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.parts() {
            write!(f, "{}", b.letter())?;
        }
        Ok(())
    }
}

impl FromStr for CyctAtom {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters: Vec<CycbAtom> = s.chars().filter_map(CycbAtom::from_letter).collect();
        if letters.len() != 3 || s.chars().count() != 3 {
            return Err(AlgebraError::UnknownAtom(s.to_string()));
        }
        CyctAtom::from_parts([letters[0], letters[1], letters[2]])
            .ok_or_else(|| AlgebraError::UnknownAtom(s.to_string()))
    }
}

/// Set of CYC_t atoms, one bit per atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CyctRelation(u32);

impl CyctRelation {
    pub const EMPTY: CyctRelation = CyctRelation(0);
    pub const FULL: CyctRelation = CyctRelation((1 << CYCT_ATOM_COUNT) - 1);

    pub fn from_bits(bits: u32) -> Self {
        CyctRelation(bits & Self::FULL.0)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn atom(a: CyctAtom) -> Self {
        CyctRelation(1 << a.index())
    }

    pub fn from_atoms<I: IntoIterator<Item = CyctAtom>>(atoms: I) -> Self {
        atoms.into_iter().fold(Self::EMPTY, |r, a| r | Self::atom(a))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self) -> bool {
        self.0 == Self::FULL.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: CyctAtom) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn is_subset(self, other: CyctRelation) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn atoms(self) -> impl Iterator<Item = CyctAtom> {
        CyctAtom::all().filter(move |a| self.contains(*a))
    }

    pub fn complement(self) -> Self {
        CyctRelation(!self.0 & Self::FULL.0)
    }

    pub fn permute(self, perm: [usize; 3]) -> Self {
        Self::from_atoms(self.atoms().map(|a| a.permute(perm)))
    }

    pub fn rotate(self) -> Self {
        self.permute([1, 2, 0])
    }

    pub fn compose(self, other: CyctRelation) -> Self {
        let mut out = 0u32;
        for a in self.atoms() {
            for b in other.atoms() {
                out |= a.compose(b).0;
            }
        }
        CyctRelation(out)
    }

    /// Keeps the atoms whose angle between argument positions `i < j` lies in `allowed`.
    pub fn restrict_pair(self, i: usize, j: usize, allowed: CycbRelation) -> Self {
        Self::from_atoms(self.atoms().filter(|a| allowed.contains(pair_of(a.parts(), i, j))))
    }

    /// Angles between argument positions `i < j` that some atom of the relation allows.
    pub fn project_pair(self, i: usize, j: usize) -> CycbRelation {
        let mut out = CycbRelation::EMPTY;
        for a in self.atoms() {
            out.insert(pair_of(a.parts(), i, j));
        }
        out
    }
}

impl std::ops::BitOr for CyctRelation {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        CyctRelation(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for CyctRelation {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        CyctRelation(self.0 & rhs.0)
    }
}

impl fmt::Display for CyctRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for CyctRelation {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| AlgebraError::Malformed(s.to_string()))?;
        inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(CyctAtom::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_atoms)
    }
}

/// Region of the angle between argument positions `i` and `j` of a triple.
pub fn pair_of(parts: [CycbAtom; 3], i: usize, j: usize) -> CycbAtom {
    match (i, j) {
        (0, 1) => parts[0],
        (1, 2) => parts[1],
        (0, 2) => parts[2],
        (a, b) if a == b => CycbAtom::E,
        (a, b) => pair_of(parts, b, a).converse(),
    }
}

/// Returns every realizable CYC_b triple, in declaration order.
pub fn derive_cyct_atoms() -> Vec<[CycbAtom; 3]> {
    let mut out = Vec::new();
    for b1 in CycbAtom::ALL {
        for b2 in CycbAtom::ALL {
            for b3 in CycbAtom::ALL {
                if angles::realizable(3, &[(0, 1, b1), (1, 2, b2), (0, 2, b3)]) {
                    out.push([b1, b2, b3]);
                }
            }
        }
    }
    out
}

/// A realizable assignment of angle regions to the six pairs of four
/// orientations, in pair order (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadConfig {
    pub pairs: [CycbAtom; 6],
}

const QUAD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

impl QuadConfig {
    fn pair(&self, i: usize, j: usize) -> CycbAtom {
        if i == j {
            return CycbAtom::E;
        }
        if i > j {
            return self.pair(j, i).converse();
        }
        let k = QUAD_PAIRS.iter().position(|&p| p == (i, j)).unwrap();
        self.pairs[k]
    }

    /// Atom induced on positions `(i, j, k)` of the four orientations.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> CyctAtom {
        CyctAtom::from_parts([self.pair(i, j), self.pair(j, k), self.pair(i, k)])
            .expect("sub-configuration of a realizable configuration is realizable")
    }
}

/// All realizable four-orientation configurations.
pub fn quad_configs() -> &'static [QuadConfig] {
    &tables().quads
}

struct Tables {
    parts: Vec<[CycbAtom; 3]>,
    by_parts: [Option<u8>; 64],
    permute: [[CyctAtom; CYCT_ATOM_COUNT]; 6],
    compose: [[u32; CYCT_ATOM_COUNT]; CYCT_ATOM_COUNT],
    quads: Vec<QuadConfig>,
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn perm_index(perm: [usize; 3]) -> usize {
    PERMS
        .iter()
        .position(|&p| p == perm)
        .expect("not a permutation of three positions")
}

fn parts_key(p: [CycbAtom; 3]) -> usize {
    p[0].index() * 16 + p[1].index() * 4 + p[2].index()
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn build_tables() -> Tables {
    let parts = derive_cyct_atoms();
    assert_eq!(parts.len(), CYCT_ATOM_COUNT);
    let mut by_parts = [None; 64];
    for (i, p) in parts.iter().enumerate() {
        by_parts[parts_key(*p)] = Some(i as u8);
    }
    let lookup = |p: [CycbAtom; 3]| CyctAtom(by_parts[parts_key(p)].expect("unrealizable triple"));

    let mut permute = [[CyctAtom(0); CYCT_ATOM_COUNT]; 6];
    for (pi, perm) in PERMS.iter().enumerate() {
        for (ai, p) in parts.iter().enumerate() {
            let q = [
                pair_of(*p, perm[0], perm[1]),
                pair_of(*p, perm[1], perm[2]),
                pair_of(*p, perm[0], perm[2]),
            ];
            permute[pi][ai] = lookup(q);
        }
    }

    // variables: x = 0, y = 1, u = 2, z = 3
    let mut compose = [[0u32; CYCT_ATOM_COUNT]; CYCT_ATOM_COUNT];
    for (ai, a) in parts.iter().enumerate() {
        for (bi, b) in parts.iter().enumerate() {
            if a[1] != b[0] {
                continue;
            }
            let mut bits = 0u32;
            for d in CycbAtom::ALL {
                let constraints = [
                    (0, 1, a[0]),
                    (1, 2, a[1]),
                    (0, 2, a[2]),
                    (2, 3, b[1]),
                    (1, 3, b[2]),
                    (0, 3, d),
                ];
                if angles::realizable(4, &constraints) {
                    bits |= 1 << lookup([a[0], b[2], d]).index();
                }
            }
            compose[ai][bi] = bits;
        }
    }

    let mut quads = Vec::new();
    for code in 0..4usize.pow(6) {
        let mut pairs = [CycbAtom::E; 6];
        let mut c = code;
        for slot in pairs.iter_mut().rev() {
            *slot = CycbAtom::ALL[c % 4];
            c /= 4;
        }
        let constraints: Vec<_> = QUAD_PAIRS
            .iter()
            .zip(pairs.iter())
            .map(|(&(i, j), &b)| (i, j, b))
            .collect();
        if angles::realizable(4, &constraints) {
            quads.push(QuadConfig { pairs });
        }
    }

    Tables {
        parts,
        by_parts,
        permute,
        compose,
        quads,
    }
}
