use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::syntax::{Concept, Role, Sort};

/// `name ≐ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub sort: Sort,
    pub eventuality: bool,
    pub rhs: Concept,
}

/// Axioms in declaration order, at most one per defined name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TBox {
    axioms: Vec<Axiom>,
    index: BTreeMap<String, usize>,
}

impl TBox {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an axiom; fails if the name is already defined.
    pub fn add(&mut self, axiom: Axiom) -> Result<(), Axiom> {
        if self.index.contains_key(&axiom.name) {
            return Err(axiom);
        }
        self.index.insert(axiom.name.clone(), self.axioms.len());
        self.axioms.push(axiom);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Axiom> {
        self.index.get(name).map(|&i| &self.axioms[i])
    }

    pub fn is_defined(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// Defined names appearing in the right-hand side of `name`'s axiom.
    pub fn directly_uses(&self, name: &str) -> BTreeSet<String> {
        self.get(name)
            .map(|ax| ax.rhs.names().into_iter().filter(|n| self.is_defined(n)).collect())
            .unwrap_or_default()
    }

    /// Transitive closure of [`directly_uses`](Self::directly_uses).
    pub fn uses(&self) -> BTreeMap<String, BTreeSet<String>> {
        let direct: BTreeMap<String, BTreeSet<String>> = self
            .axioms
            .iter()
            .map(|ax| (ax.name.clone(), self.directly_uses(&ax.name)))
            .collect();
        let mut closure = BTreeMap::new();
        for start in direct.keys() {
            let mut seen = BTreeSet::new();
            let mut stack: Vec<&String> = direct[start].iter().collect();
            while let Some(n) = stack.pop() {
                if seen.insert(n.clone()) {
                    stack.extend(direct[n].iter());
                }
            }
            closure.insert(start.clone(), seen);
        }
        closure
    }

    /// The axioms whose names are of the given sort.
    pub fn restricted_to(&self, sort: Sort) -> TBox {
        let mut out = TBox::new();
        for ax in self.axioms.iter().filter(|ax| ax.sort == sort) {
            out.add(ax.clone()).expect("names are unique");
        }
        out
    }
}

impl fmt::Display for TBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in &self.axioms {
            let ev = if ax.eventuality { " eventuality" } else { "" };
            writeln!(f, "define {} {}{} := {};", ax.name, ax.sort, ev, ax.rhs)?;
        }
        Ok(())
    }
}

/// Outcome of the TBox classifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Acyclic,
    /// Weakly cyclic, with some atemporal name using itself.
    WeaklyCyclic,
    /// Weakly cyclic, and only temporal names use themselves.
    TwcAtac,
    Rejected(String),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Acyclic => f.write_str("ACYCLIC"),
            Classification::WeaklyCyclic => f.write_str("WEAKLY_CYCLIC"),
            Classification::TwcAtac => f.write_str("TWC_ATAC"),
            Classification::Rejected(reason) => write!(f, "REJECTED: {reason}"),
        }
    }
}

/// True if `name` occurs in `c` outside the scope of every quantifier.
fn occurs_unguarded(c: &Concept, name: &str) -> bool {
    match c {
        Concept::Name { name: n, .. } => n == name,
        Concept::Not(d) => occurs_unguarded(d, name),
        Concept::And(v) | Concept::Or(v) => v.iter().any(|d| occurs_unguarded(d, name)),
        _ => false,
    }
}

/// Classifies a TBox by its use graph.
pub fn validate(tbox: &TBox) -> Classification {
    let uses = tbox.uses();
    let self_users: Vec<&Axiom> = tbox
        .axioms()
        .iter()
        .filter(|ax| uses[&ax.name].contains(&ax.name))
        .collect();
    if self_users.is_empty() {
        return Classification::Acyclic;
    }
    for ax in tbox.axioms() {
        for other in &uses[&ax.name] {
            if other != &ax.name && uses[other].contains(&ax.name) {
                return Classification::Rejected("condition 1".to_string());
            }
        }
    }
    for ax in tbox.axioms() {
        if occurs_unguarded(&ax.rhs, &ax.name) {
            return Classification::Rejected("condition 2".to_string());
        }
    }
    if self_users.iter().all(|ax| ax.sort == Sort::Temporal) {
        Classification::TwcAtac
    } else {
        Classification::WeaklyCyclic
    }
}

/// Replaces every quantifier body that is not already a (negated) defined
/// name by a fresh defined name with its own axiom.
///
/// Fresh names are `<root><k>` for the axiom they descend from, numbered
/// breadth-first and skipping names already in use; structurally equal
/// bodies share one name. Fresh names are never eventualities.
pub fn name_subconcepts(tbox: &TBox, reserved: &BTreeSet<String>) -> TBox {
    let mut out = TBox::new();
    let mut taken: BTreeSet<String> = reserved.clone();
    taken.extend(tbox.axioms().iter().map(|ax| ax.name.clone()));
    let mut names: BTreeMap<Concept, String> = BTreeMap::new();
    let defined: BTreeSet<String> = tbox.axioms().iter().map(|ax| ax.name.clone()).collect();

    for root in tbox.axioms() {
        let mut counter = 0usize;
        let mut queue: VecDeque<Axiom> = VecDeque::from([root.clone()]);
        while let Some(mut ax) = queue.pop_front() {
            let mut ctx = Namer {
                root: &root.name,
                counter: &mut counter,
                taken: &mut taken,
                names: &mut names,
                defined: &defined,
                fresh: Vec::new(),
            };
            ax.rhs = ctx.walk(&ax.rhs);
            let fresh = std::mem::take(&mut ctx.fresh);
            out.add(ax).expect("fresh names are unique");
            queue.extend(fresh);
        }
    }
    out
}

struct Namer<'a> {
    root: &'a str,
    counter: &'a mut usize,
    taken: &'a mut BTreeSet<String>,
    names: &'a mut BTreeMap<Concept, String>,
    defined: &'a BTreeSet<String>,
    fresh: Vec<Axiom>,
}

impl Namer<'_> {
    fn is_defined_literal(&self, c: &Concept) -> bool {
        c.literal_name().is_some_and(|n| self.defined.contains(n))
    }

    fn walk(&mut self, c: &Concept) -> Concept {
        match c {
            Concept::Not(d) => Concept::not(self.walk(d)),
            Concept::And(v) => Concept::And(v.iter().map(|d| self.walk(d)).collect()),
            Concept::Or(v) => Concept::Or(v.iter().map(|d| self.walk(d)).collect()),
            Concept::Exists(r, d) => Concept::exists(r.clone(), self.body(r, d)),
            Concept::Forall(r, d) => Concept::forall(r.clone(), self.body(r, d)),
            c => c.clone(),
        }
    }

    fn body(&mut self, role: &Role, body: &Concept) -> Concept {
        if self.is_defined_literal(body) {
            return body.clone();
        }
        let sort = body.sort().unwrap_or(if role.is_temporal() {
            Sort::Temporal
        } else {
            Sort::Atemporal
        });
        if let Some(n) = self.names.get(body) {
            return Concept::name(n.clone(), sort);
        }
        let name = loop {
            *self.counter += 1;
            let cand = format!("{}{}", self.root, self.counter);
            if self.taken.insert(cand.clone()) {
                break cand;
            }
        };
        self.names.insert(body.clone(), name.clone());
        self.fresh.push(Axiom {
            name: name.clone(),
            sort,
            eventuality: false,
            rhs: body.clone(),
        });
        Concept::name(name, sort)
    }
}
