use std::collections::{BTreeMap, BTreeSet};

use super::syntax::{Concept, RoleKind, Sort};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameKind {
    Concept(Sort),
    Role(RoleKind),
    SpatialFeature,
    AspatialFeature,
}

/// The declared vocabulary. Every name belongs to exactly one kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    names: BTreeMap<String, NameKind>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares `name`; fails with the existing kind if it is already declared.
    pub fn declare(&mut self, name: &str, kind: NameKind) -> Result<(), NameKind> {
        match self.names.get(name) {
            Some(&k) => Err(k),
            None => {
                self.names.insert(name.to_string(), kind);
                Ok(())
            }
        }
    }

    pub fn kind(&self, name: &str) -> Option<NameKind> {
        self.names.get(name).copied()
    }

    pub fn names_of(&self, kind: NameKind) -> BTreeSet<&str> {
        self.names
            .iter()
            .filter(|(_, &k)| k == kind)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn concept_sort(&self, name: &str) -> Option<Sort> {
        match self.kind(name)? {
            NameKind::Concept(s) => Some(s),
            _ => None,
        }
    }
}

/// `(p, q)`: general temporal roles and temporal abstract features used.
pub fn role_counts<'a, I: IntoIterator<Item = &'a Concept>>(concepts: I) -> (usize, usize) {
    let mut general = BTreeSet::new();
    let mut features = BTreeSet::new();
    fn walk(c: &Concept, general: &mut BTreeSet<String>, features: &mut BTreeSet<String>) {
        match c {
            Concept::Exists(r, d) | Concept::Forall(r, d) => {
                match r.kind {
                    RoleKind::TemporalRole => {
                        general.insert(r.name.clone());
                    }
                    RoleKind::TemporalFeature => {
                        features.insert(r.name.clone());
                    }
                    _ => {}
                }
                walk(d, general, features);
            }
            Concept::Not(d) => walk(d, general, features),
            Concept::And(v) | Concept::Or(v) => v.iter().for_each(|d| walk(d, general, features)),
            Concept::Pred(chains, _) => {
                for ch in chains.iter().filter(|ch| ch.spatial) {
                    features.extend(ch.features.iter().cloned());
                }
            }
            _ => {}
        }
    }
    for c in concepts {
        walk(c, &mut general, &mut features);
    }
    (general.len(), features.len())
}
