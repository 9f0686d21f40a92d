//! Qualitative relation algebras used as spatial concrete domains.

mod angles;
pub mod cyc;
pub mod rcc8;

pub use angles::realizable as orientations_realizable;
pub use cyc::{
    derive_cyct_atoms, quad_configs, CycbAtom, CycbRelation, CyctAtom, CyctRelation, QuadConfig,
    CYCT_ATOM_COUNT,
};
pub use rcc8::{Rcc8Atom, Rcc8Relation};

/// The spatial calculus a problem is stated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    #[default]
    Rcc8,
    Cyct,
}

impl Calculus {
    /// Arity of the spatial predicates of this calculus.
    pub fn arity(self) -> usize {
        match self {
            Calculus::Rcc8 => 2,
            Calculus::Cyct => 3,
        }
    }
}

impl std::fmt::Display for Calculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Calculus::Rcc8 => "rcc8",
            Calculus::Cyct => "cyct",
        })
    }
}

impl std::str::FromStr for Calculus {
    type Err = crate::error::AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rcc8" => Ok(Calculus::Rcc8),
            "cyct" => Ok(Calculus::Cyct),
            _ => Err(crate::error::AlgebraError::UnknownCalculus(s.to_string())),
        }
    }
}

/// Converse of an RCC8 relation.
pub fn converse(r: Rcc8Relation) -> Rcc8Relation {
    r.converse()
}

/// Composition of two RCC8 relations.
pub fn compose(r1: Rcc8Relation, r2: Rcc8Relation) -> Rcc8Relation {
    r1.compose(r2)
}

/// Argument rotation `(x, y, z) -> (y, z, x)` of a CYC_t atom.
pub fn cyct_rotate(a: CyctAtom) -> CyctAtom {
    a.rotate()
}

/// Composition of CYC_t relations on `(x, y, u)` and `(y, u, z)`.
pub fn cyct_compose(r1: CyctRelation, r2: CyctRelation) -> CyctRelation {
    r1.compose(r2)
}
