use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{CyctRelation, Rcc8Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Atemporal,
    Temporal,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Atemporal => "atemporal",
            Sort::Temporal => "temporal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleKind {
    TemporalRole,
    TemporalFeature,
    AtemporalRole,
    AtemporalFeature,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Role {
    pub name: String,
    pub kind: RoleKind,
}

impl Role {
    pub fn new(name: impl Into<String>, kind: RoleKind) -> Self {
        Role {
            name: name.into(),
            kind,
        }
    }

    pub fn is_feature(&self) -> bool {
        matches!(self.kind, RoleKind::TemporalFeature | RoleKind::AtemporalFeature)
    }

    pub fn is_temporal(&self) -> bool {
        matches!(self.kind, RoleKind::TemporalRole | RoleKind::TemporalFeature)
    }
}

/// `f1 … fk g`: abstract features followed by one concrete feature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    pub features: Vec<String>,
    pub concrete: String,
    /// Temporal features and a spatial tip, as opposed to atemporal features
    /// and an aspatial tip.
    pub spatial: bool,
}

impl Chain {
    pub fn new(features: &[&str], concrete: &str, spatial: bool) -> Self {
        Chain {
            features: features.iter().map(|s| s.to_string()).collect(),
            concrete: concrete.to_string(),
            spatial,
        }
    }

    pub fn feature_role(&self, i: usize) -> Role {
        let kind = if self.spatial {
            RoleKind::TemporalFeature
        } else {
            RoleKind::AtemporalFeature
        };
        Role::new(self.features[i].clone(), kind)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for feat in &self.features {
            write!(f, "{feat} ")?;
        }
        write!(f, "{})", self.concrete)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Predicate {
    Rcc8(Rcc8Relation),
    Cyct(CyctRelation),
    /// A predicate of the aspatial concrete domain; `negated` selects its
    /// complement, which the domain resolves.
    Domain { name: String, negated: bool },
}

impl Predicate {
    pub fn domain(name: impl Into<String>) -> Self {
        Predicate::Domain {
            name: name.into(),
            negated: false,
        }
    }

    pub fn complement(&self) -> Predicate {
        match self {
            Predicate::Rcc8(r) => Predicate::Rcc8(r.complement()),
            Predicate::Cyct(r) => Predicate::Cyct(r.complement()),
            Predicate::Domain { name, negated } => Predicate::Domain {
                name: name.clone(),
                negated: !negated,
            },
        }
    }

    pub fn is_spatial(&self) -> bool {
        !matches!(self, Predicate::Domain { .. })
    }

    /// True for a spatial relation without atoms.
    pub fn is_empty_relation(&self) -> bool {
        match self {
            Predicate::Rcc8(r) => r.is_empty(),
            Predicate::Cyct(r) => r.is_empty(),
            Predicate::Domain { .. } => false,
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Rcc8(r) => write!(f, "{r}"),
            Predicate::Cyct(r) => write!(f, "{r}"),
            Predicate::Domain { name, negated: false } => f.write_str(name),
            Predicate::Domain { name, negated: true } => write!(f, "!{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bot,
    Name { name: String, sort: Sort },
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(Role, Box<Concept>),
    Forall(Role, Box<Concept>),
    Pred(Vec<Chain>, Predicate),
    /// The aspatial concrete feature has no value at the current object.
    NoValue(String),
    /// The aspatial concrete feature has a value at the current object.
    HasValue(String),
}

impl Concept {
    pub fn name(name: impl Into<String>, sort: Sort) -> Self {
        Concept::Name {
            name: name.into(),
            sort,
        }
    }

    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn exists(role: Role, c: Concept) -> Self {
        Concept::Exists(role, Box::new(c))
    }

    pub fn forall(role: Role, c: Concept) -> Self {
        Concept::Forall(role, Box::new(c))
    }

    /// Conjunction with nested conjunctions flattened, `top` dropped, duplicates
    /// removed (first occurrence kept) and `bot` absorbing.
    pub fn and<I: IntoIterator<Item = Concept>>(items: I) -> Self {
        let mut out: Vec<Concept> = Vec::new();
        for c in items {
            match c {
                Concept::Top => {}
                Concept::Bot => return Concept::Bot,
                Concept::And(inner) => {
                    for d in inner {
                        if !out.contains(&d) {
                            out.push(d);
                        }
                    }
                }
                c => {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        match out.len() {
            0 => Concept::Top,
            1 => out.pop().unwrap(),
            _ => Concept::And(out),
        }
    }

    /// Dual of [`Concept::and`].
    pub fn or<I: IntoIterator<Item = Concept>>(items: I) -> Self {
        let mut out: Vec<Concept> = Vec::new();
        for c in items {
            match c {
                Concept::Bot => {}
                Concept::Top => return Concept::Top,
                Concept::Or(inner) => {
                    for d in inner {
                        if !out.contains(&d) {
                            out.push(d);
                        }
                    }
                }
                c => {
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        match out.len() {
            0 => Concept::Bot,
            1 => out.pop().unwrap(),
            _ => Concept::Or(out),
        }
    }

    /// Sort of the concept; `None` for `top`/`bot`, which fit either sort.
    pub fn sort(&self) -> Option<Sort> {
        match self {
            Concept::Top | Concept::Bot => None,
            Concept::Name { sort, .. } => Some(*sort),
            Concept::Not(c) => c.sort(),
            Concept::And(v) | Concept::Or(v) => {
                let sorts: Vec<Sort> = v.iter().filter_map(Concept::sort).collect();
                if sorts.contains(&Sort::Temporal) {
                    Some(Sort::Temporal)
                } else {
                    sorts.first().copied()
                }
            }
            Concept::Exists(r, _) | Concept::Forall(r, _) => Some(if r.is_temporal() {
                Sort::Temporal
            } else {
                Sort::Atemporal
            }),
            Concept::Pred(chains, p) => Some(if p.is_spatial() || chains.first().is_some_and(|c| c.spatial) {
                Sort::Temporal
            } else {
                Sort::Atemporal
            }),
            Concept::NoValue(_) | Concept::HasValue(_) => Some(Sort::Atemporal),
        }
    }

    /// Top-level conjuncts.
    pub fn conjuncts(&self) -> Vec<Concept> {
        match self {
            Concept::Top => Vec::new(),
            Concept::And(v) => v.clone(),
            c => vec![c.clone()],
        }
    }

    /// Name of a concept name or a negated concept name.
    pub fn literal_name(&self) -> Option<&str> {
        match self {
            Concept::Name { name, .. } => Some(name),
            Concept::Not(c) => match c.as_ref() {
                Concept::Name { name, .. } => Some(name),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn is_negative_literal(&self) -> bool {
        matches!(self, Concept::Not(c) if matches!(c.as_ref(), Concept::Name { .. }))
    }

    /// Every concept name occurring in the concept, in order of occurrence.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match self {
            Concept::Name { name, .. } => out.push(name.clone()),
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => c.collect_names(out),
            Concept::And(v) | Concept::Or(v) => v.iter().for_each(|c| c.collect_names(out)),
            _ => {}
        }
    }

    /// Number of constructors, for size bounds in tests.
    pub fn size(&self) -> usize {
        match self {
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => 1 + c.size(),
            Concept::And(v) | Concept::Or(v) => 1 + v.iter().map(Concept::size).sum::<usize>(),
            _ => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        match self {
            Concept::Top => f.write_str("top"),
            Concept::Bot => f.write_str("bot"),
            Concept::Name { name, .. } => f.write_str(name),
            Concept::Not(c) => {
                f.write_str("not ")?;
                c.fmt_prec(f, 2)
            }
            Concept::And(v) | Concept::Or(v) => {
                let (op, level) = if matches!(self, Concept::And(_)) {
                    (" and ", 1)
                } else {
                    (" or ", 0)
                };
                if prec > level {
                    f.write_str("(")?;
                }
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    c.fmt_prec(f, level + 1)?;
                }
                if prec > level {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Concept::Exists(r, c) => {
                write!(f, "some {} . ", r.name)?;
                c.fmt_prec(f, 2)
            }
            Concept::Forall(r, c) => {
                write!(f, "all {} . ", r.name)?;
                c.fmt_prec(f, 2)
            }
            Concept::Pred(chains, p) => {
                f.write_str("some ")?;
                for c in chains {
                    write!(f, "{c}")?;
                }
                write!(f, ".{p}")
            }
            Concept::NoValue(g) => write!(f, "novalue {g}"),
            Concept::HasValue(g) => write!(f, "hasvalue {g}"),
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
