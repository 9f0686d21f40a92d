//! The region connection calculus RCC8.
//!
//! Relations are 8-bit sets over the eight base relations. Composition is a
//! static 8x8 table; every entry is a relation over `(x, z)` given an atom on
//! `(x, y)` and an atom on `(y, z)`.

use std::fmt;
use std::str::FromStr;

use crate::error::AlgebraError;

/// One of the eight jointly exhaustive, pairwise disjoint base relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Rcc8Atom {
    DC = 0,
    EC = 1,
    PO = 2,
    TPP = 3,
    NTPP = 4,
    TPPi = 5,
    NTPPi = 6,
    EQ = 7,
}

impl Rcc8Atom {
    /// Declaration order; also the order in which search tries atoms.
    pub const ALL: [Rcc8Atom; 8] = [
        Rcc8Atom::DC,
        Rcc8Atom::EC,
        Rcc8Atom::PO,
        Rcc8Atom::TPP,
        Rcc8Atom::NTPP,
        Rcc8Atom::TPPi,
        Rcc8Atom::NTPPi,
        Rcc8Atom::EQ,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Rcc8Atom {
        Self::ALL[i]
    }

    pub fn converse(self) -> Rcc8Atom {
        match self {
            Rcc8Atom::TPP => Rcc8Atom::TPPi,
            Rcc8Atom::TPPi => Rcc8Atom::TPP,
            Rcc8Atom::NTPP => Rcc8Atom::NTPPi,
            Rcc8Atom::NTPPi => Rcc8Atom::NTPP,
            a => a,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rcc8Atom::DC => "DC",
            Rcc8Atom::EC => "EC",
            Rcc8Atom::PO => "PO",
            Rcc8Atom::TPP => "TPP",
            Rcc8Atom::NTPP => "NTPP",
            Rcc8Atom::TPPi => "TPPi",
            Rcc8Atom::NTPPi => "NTPPi",
            Rcc8Atom::EQ => "EQ",
        }
    }

    /// Composition of two atoms, read from the static table.
    pub fn compose(self, other: Rcc8Atom) -> Rcc8Relation {
        Rcc8Relation(table::COMPOSITION[self.index()][other.index()])
    }
}

impl fmt::Display for Rcc8Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rcc8Atom {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rcc8Atom::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| AlgebraError::UnknownAtom(s.to_string()))
    }
}

/// A set of RCC8 atoms. The empty set is the inconsistent relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rcc8Relation(u8);

impl Rcc8Relation {
    pub const EMPTY: Rcc8Relation = Rcc8Relation(0);
    pub const FULL: Rcc8Relation = Rcc8Relation(0xff);

    pub fn from_bits(bits: u8) -> Self {
        Rcc8Relation(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn atom(a: Rcc8Atom) -> Self {
        Rcc8Relation(1 << a.index())
    }

    pub fn from_atoms<I: IntoIterator<Item = Rcc8Atom>>(atoms: I) -> Self {
        atoms
            .into_iter()
            .fold(Self::EMPTY, |r, a| r | Self::atom(a))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self) -> bool {
        self.0 == 0xff
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, a: Rcc8Atom) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn is_subset(self, other: Rcc8Relation) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn atoms(self) -> impl Iterator<Item = Rcc8Atom> {
        Rcc8Atom::ALL.into_iter().filter(move |a| self.contains(*a))
    }

    pub fn complement(self) -> Self {
        Rcc8Relation(!self.0)
    }

    pub fn converse(self) -> Self {
        Self::from_atoms(self.atoms().map(Rcc8Atom::converse))
    }

    pub fn compose(self, other: Rcc8Relation) -> Self {
        if self.is_full() || other.is_full() {
            // Every atom composed with the universal relation covers all atoms.
            if !self.is_empty() && !other.is_empty() {
                return Self::FULL;
            }
        }
        let mut out = 0u8;
        for a in self.atoms() {
            for b in other.atoms() {
                out |= table::COMPOSITION[a.index()][b.index()];
                if out == 0xff {
                    return Self::FULL;
                }
            }
        }
        Rcc8Relation(out)
    }
}

impl std::ops::BitOr for Rcc8Relation {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        Rcc8Relation(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for Rcc8Relation {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        Rcc8Relation(self.0 & rhs.0)
    }
}

impl fmt::Display for Rcc8Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.atoms().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(a.name())?;
        }
        f.write_str("}")
    }
}

impl FromStr for Rcc8Relation {
    type Err = AlgebraError;

    /// Parses a brace list such as `{TPP,NTPP}`.
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
            .map(Rcc8Atom::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::from_atoms)
    }
}

mod table {
    const DC: u8 = 1 << 0;
    const EC: u8 = 1 << 1;
    const PO: u8 = 1 << 2;
    const TPP: u8 = 1 << 3;
    const NTPP: u8 = 1 << 4;
    const TPPI: u8 = 1 << 5;
    const NTPPI: u8 = 1 << 6;
    const EQ: u8 = 1 << 7;
    const DR: u8 = DC | EC;
    const PP: u8 = TPP | NTPP;
    const PPI: u8 = TPPI | NTPPI;
    const ALL: u8 = 0xff;

    /// `COMPOSITION[a][b]` is the relation on `(x, z)` given `a(x, y)` and `b(y, z)`.
    #[rustfmt::skip]
    pub(super) static COMPOSITION: [[u8; 8]; 8] = [
        // DC
        [ALL, DR | PO | PP, DR | PO | PP, DR | PO | PP, DR | PO | PP, DC, DC, DC],
        // EC
        [DR | PO | PPI, DR | PO | TPP | TPPI | EQ, DR | PO | PP, EC | PO | PP, PO | PP, DR, DC, EC],
        // PO
        [DR | PO | PPI, DR | PO | PPI, ALL, PO | PP, PO | PP, DR | PO | PPI, DR | PO | PPI, PO],
        // TPP
        [DC, DR, DR | PO | PP, PP, NTPP, DR | PO | TPP | TPPI | EQ, DR | PO | PPI, TPP],
        // NTPP
        [DC, DC, DR | PO | PP, NTPP, NTPP, DR | PO | PP, ALL, NTPP],
        // TPPi
        [DR | PO | PPI, EC | PO | PPI, PO | PPI, PO | TPP | TPPI | EQ, PO | PP, PPI, NTPPI, TPPI],
        // NTPPi
        [DR | PO | PPI, PO | PPI, PO | PPI, PO | PPI, PO | PP | PPI | EQ, NTPPI, NTPPI, NTPPI],
        // EQ
        [DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ],
    ];
}

#[cfg(test)]
mod tests {
    use super::*;
    use Rcc8Atom::*;

    fn rel(atoms: &[Rcc8Atom]) -> Rcc8Relation {
        Rcc8Relation::from_atoms(atoms.iter().copied())
    }

    #[test]
    fn converse_examples() {
        assert_eq!(rel(&[TPP]).converse(), rel(&[TPPi]));
        assert_eq!(rel(&[EQ]).converse(), rel(&[EQ]));
        assert_eq!(rel(&[DC, TPP]).converse(), rel(&[DC, TPPi]));
    }

    #[test]
    fn identity_and_converse_laws_hold_for_every_entry() {
        for a in Rcc8Atom::ALL {
            assert_eq!(EQ.compose(a), Rcc8Relation::atom(a));
            assert_eq!(a.compose(EQ), Rcc8Relation::atom(a));
            assert_eq!(a.converse().converse(), a);
            for b in Rcc8Atom::ALL {
                assert_eq!(
                    a.compose(b).converse(),
                    b.converse().compose(a.converse()),
                    "{a}∘{b}"
                );
                // every entry contains the atom witnessing a(x,y), b(y,z) with x=z when possible
                if b == a.converse() {
                    assert!(a.compose(b).contains(EQ));
                }
            }
        }
    }

    #[test]
    fn atoms_are_jepd() {
        let mut union = 0u8;
        for a in Rcc8Atom::ALL {
            let bit = Rcc8Relation::atom(a).bits();
            assert_eq!(union & bit, 0);
            union |= bit;
        }
        assert_eq!(Rcc8Relation::from_bits(union), Rcc8Relation::FULL);
    }

    #[test]
    fn compose_examples() {
        for bits in 0..=255u8 {
            let r = Rcc8Relation::from_bits(bits);
            assert_eq!(rel(&[EQ]).compose(r), r);
        }
        assert_eq!(rel(&[NTPP]).compose(rel(&[NTPP])), rel(&[NTPP]));
        assert_eq!(rel(&[DC]).compose(rel(&[DC])), Rcc8Relation::FULL);
        assert_eq!(rel(&[TPP]).compose(rel(&[TPP])), rel(&[TPP, NTPP]));
        assert_eq!(Rcc8Relation::EMPTY.compose(Rcc8Relation::FULL), Rcc8Relation::EMPTY);
    }

    #[test]
    fn serialization() {
        assert_eq!(rel(&[TPP, NTPP]).to_string(), "{TPP,NTPP}");
        assert_eq!("{TPP, NTPP}".parse::<Rcc8Relation>().unwrap(), rel(&[TPP, NTPP]));
        assert_eq!("{}".parse::<Rcc8Relation>().unwrap(), Rcc8Relation::EMPTY);
        assert!("{TPX}".parse::<Rcc8Relation>().is_err());
        assert!("TPP".parse::<Rcc8Relation>().is_err());
    }
}
