use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::algebra::Calculus;
use crate::error::EngineError;
use crate::lang::{
    name_subconcepts, negate, nnf, raw_dnf, role_counts, validate, Axiom, Classification, Concept, Predicate,
    RawElement, Role, RoleKind, Sort, TBox,
};

/// Members of a run node's label, each with the eventualities it is still
/// carrying for some ancestor.
pub type Label = BTreeMap<Concept, BTreeSet<Concept>>;

/// Successor direction: an abstract feature, or an index into `rrc`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Feature(usize),
    Role(usize),
}

/// The TBox `T ∪ {B_init ≐ C}`, named and decomposed for the run search.
#[derive(Debug, Clone)]
pub struct PreparedTBox {
    pub calculus: Calculus,
    pub tbox: TBox,
    pub init: String,
    /// Temporal abstract features, in order of first use.
    pub af: Vec<String>,
    /// `∃R.E` with `R` a general temporal role, in order of first use.
    pub rrc: Vec<Concept>,
    /// General temporal roles and temporal abstract features used.
    pub roles: (usize, usize),
    pub(super) defs: BTreeMap<Concept, Vec<RawElement>>,
    pub(super) eventualities: BTreeSet<Concept>,
    /// Eventuality literals reachable from each defined literal.
    pub(super) reach: BTreeMap<Concept, BTreeSet<Concept>>,
}

impl PreparedTBox {
    /// `m + p`.
    pub fn arity(&self) -> usize {
        self.af.len() + self.rrc.len()
    }

    pub fn is_defined_literal(&self, c: &Concept) -> bool {
        self.defs.contains_key(c)
    }

    pub fn eventualities(&self) -> impl Iterator<Item = &Concept> {
        self.eventualities.iter()
    }

    /// Eventualities `c` can lead back to.
    pub(super) fn reach_of(&self, c: &Concept) -> BTreeSet<Concept> {
        let mut out = BTreeSet::new();
        let mut occ = Vec::new();
        literal_occurrences(c, &mut occ);
        for l in occ {
            if let Some(r) = self.reach.get(&l) {
                out.extend(r.iter().cloned());
            }
        }
        out
    }

    pub(super) fn direction(&self, role: &Role, body: &Concept) -> Direction {
        if role.is_feature() {
            Direction::Feature(self.af.iter().position(|f| f == &role.name).expect("feature collected"))
        } else {
            let c = Concept::exists(role.clone(), body.clone());
            Direction::Role(self.rrc.iter().position(|x| x == &c).expect("obligation collected"))
        }
    }

    pub fn direction_name(&self, d: &Direction) -> String {
        match d {
            Direction::Feature(i) => self.af[*i].clone(),
            Direction::Role(i) => self.rrc[*i].to_string(),
        }
    }

    pub(super) fn direction_role(&self, d: &Direction) -> &str {
        match d {
            Direction::Feature(i) => &self.af[*i],
            Direction::Role(i) => match &self.rrc[*i] {
                Concept::Exists(r, _) => &r.name,
                _ => unreachable!("rrc holds existentials"),
            },
        }
    }
}

impl fmt::Display for PreparedTBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# init {}; af = {:?}; p = {}", self.init, self.af, self.rrc.len())?;
        write!(f, "{}", self.tbox)
    }
}

/// Defined-or-primitive literal occurrences of an NNF concept, skipping
/// atemporal parts.
fn literal_occurrences(c: &Concept, out: &mut Vec<Concept>) {
    match c {
        c if c.sort() == Some(Sort::Atemporal) => {}
        Concept::Name { .. } | Concept::Not(_) => out.push(c.clone()),
        Concept::And(v) | Concept::Or(v) => v.iter().for_each(|d| literal_occurrences(d, out)),
        Concept::Exists(_, d) | Concept::Forall(_, d) => literal_occurrences(d, out),
        _ => {}
    }
}

fn fresh_init(taken: &BTreeSet<String>) -> String {
    let mut name = "B_init".to_string();
    let mut k = 0;
    while taken.contains(&name) {
        k += 1;
        name = format!("B_init_{k}");
    }
    name
}

fn definition(tbox: &TBox, lit: &Concept) -> Option<Concept> {
    let name = lit.literal_name()?;
    let ax = tbox.get(name)?;
    if ax.sort != Sort::Temporal {
        return None;
    }
    Some(if lit.is_negative_literal() {
        negate(&ax.rhs)
    } else {
        nnf(&ax.rhs)
    })
}

/// Adds `B_init ≐ c`, names quantifier bodies and decomposes every defined
/// literal reachable from `B_init`.
pub fn prepare(tbox: &TBox, c: &Concept, calculus: Calculus) -> Result<PreparedTBox, EngineError> {
    match validate(tbox) {
        Classification::Rejected(reason) => return Err(EngineError::Rejected(reason)),
        Classification::WeaklyCyclic => return Err(EngineError::CyclicAtemporal),
        Classification::Acyclic | Classification::TwcAtac => {}
    }
    let uses = tbox.uses();
    let self_users: BTreeSet<&str> = tbox
        .axioms()
        .iter()
        .filter(|ax| uses[&ax.name].contains(&ax.name))
        .map(|ax| ax.name.as_str())
        .collect();

    let mut taken: BTreeSet<String> = c.names().into_iter().collect();
    for ax in tbox.axioms() {
        taken.insert(ax.name.clone());
        taken.extend(ax.rhs.names());
    }
    let init = fresh_init(&taken);
    taken.insert(init.clone());
    let mut extended = tbox.clone();
    extended
        .add(Axiom {
            name: init.clone(),
            sort: c.sort().unwrap_or(Sort::Temporal),
            eventuality: false,
            rhs: c.clone(),
        })
        .expect("fresh name");
    let named = name_subconcepts(&extended, &taken);

    // literal closure from B_init
    let root = Concept::name(init.clone(), named.get(&init).expect("init").sort);
    let mut defs: BTreeMap<Concept, Vec<RawElement>> = BTreeMap::new();
    let mut uses_lit: BTreeMap<Concept, BTreeSet<Concept>> = BTreeMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(lit) = queue.pop_front() {
        if defs.contains_key(&lit) {
            continue;
        }
        let Some(body) = definition(&named, &lit) else {
            continue;
        };
        let mut occ = Vec::new();
        literal_occurrences(&body, &mut occ);
        let direct: BTreeSet<Concept> = occ
            .into_iter()
            .filter(|l| definition(&named, l).is_some())
            .collect();
        queue.extend(direct.iter().cloned());
        uses_lit.insert(lit.clone(), direct);
        defs.insert(lit.clone(), raw_dnf(&body));
        order.push(lit);
    }

    let eventualities: BTreeSet<Concept> = order
        .iter()
        .filter(|lit| {
            let name = lit.literal_name().expect("literal");
            let declared = named.get(name).is_some_and(|ax| ax.eventuality);
            if lit.is_negative_literal() {
                self_users.contains(name) && !declared
            } else {
                declared
            }
        })
        .cloned()
        .collect();

    let mut reach = BTreeMap::new();
    for lit in &order {
        let mut seen = BTreeSet::from([lit.clone()]);
        let mut stack = vec![lit.clone()];
        while let Some(l) = stack.pop() {
            for m in &uses_lit[&l] {
                if seen.insert(m.clone()) {
                    stack.push(m.clone());
                }
            }
        }
        seen.retain(|l| eventualities.contains(l));
        reach.insert(lit.clone(), seen);
    }

    let mut af: Vec<String> = Vec::new();
    let mut rrc: Vec<Concept> = Vec::new();
    let add_feature = |f: &str, af: &mut Vec<String>| {
        if !af.iter().any(|x| x == f) {
            af.push(f.to_string());
        }
    };
    for lit in &order {
        for el in &defs[lit] {
            for (r, body) in el.exists.iter().chain(&el.forall) {
                match r.kind {
                    RoleKind::TemporalFeature => add_feature(&r.name, &mut af),
                    RoleKind::TemporalRole if el.exists.contains(&(r.clone(), body.clone())) => {
                        let e = Concept::exists(r.clone(), body.clone());
                        if !rrc.contains(&e) {
                            rrc.push(e);
                        }
                    }
                    _ => {}
                }
                let mut nested = Vec::new();
                spatial_features(body, &mut nested);
                nested.iter().for_each(|f| add_feature(f, &mut af));
            }
            for p in &el.csp {
                let Concept::Pred(chains, pred) = p else { continue };
                let ok = matches!(
                    (pred, calculus),
                    (Predicate::Rcc8(_), Calculus::Rcc8) | (Predicate::Cyct(_), Calculus::Cyct)
                );
                if !ok || chains.len() != calculus.arity() {
                    return Err(EngineError::Calculus(p.to_string(), calculus));
                }
                for ch in chains {
                    ch.features.iter().for_each(|f| add_feature(f, &mut af));
                }
            }
        }
    }

    let roles = role_counts(named.axioms().iter().map(|ax| &ax.rhs));
    Ok(PreparedTBox {
        calculus,
        tbox: named,
        init,
        af,
        rrc,
        roles,
        defs,
        eventualities,
        reach,
    })
}

/// Temporal features under nested markers such as `∀f.∀f'.⊥`.
fn spatial_features(c: &Concept, out: &mut Vec<String>) {
    match c {
        Concept::Exists(r, d) | Concept::Forall(r, d) => {
            if r.kind == RoleKind::TemporalFeature {
                out.push(r.name.clone());
            }
            spatial_features(d, out);
        }
        Concept::And(v) | Concept::Or(v) => v.iter().for_each(|d| spatial_features(d, out)),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atemporal::RationalOrderDomain;
    use crate::lang::{parse, Directive};

    fn prep(text: &str) -> PreparedTBox {
        let doc = parse(text, Calculus::Rcc8, &RationalOrderDomain).unwrap();
        let Some(Directive::Sat(c)) = doc.directives.first() else { panic!() };
        prepare(&doc.tbox, c, Calculus::Rcc8).unwrap()
    }

    #[test]
    fn feature_self_loop() {
        let pt = prep("tfeature f; define B temporal := some f . B; check sat B;");
        assert_eq!(pt.af, ["f"]);
        assert!(pt.rrc.is_empty());
        assert_eq!(pt.arity(), 1);
        assert_eq!(pt.init, "B_init");
    }

    #[test]
    fn general_role_obligation() {
        let pt = prep("trole R; primitive A temporal; check sat some R . A;");
        assert!(pt.af.is_empty());
        assert_eq!(pt.rrc.len(), 1);
        assert_eq!(pt.roles, (1, 0));
    }

    #[test]
    fn empty_tbox_primitive() {
        let pt = prep("primitive A temporal; check sat A;");
        assert_eq!(pt.arity(), 0);
        assert_eq!(pt.defs.len(), 1);
    }

    #[test]
    fn chain_features_are_directions() {
        let pt = prep("tfeature f; sfeature g; check sat some (g)(f g).{NTPP};");
        assert_eq!(pt.af, ["f"]);
    }

    #[test]
    fn negated_greatest_fixpoint_is_an_eventuality() {
        let pt = prep("tfeature f; define B temporal := some f . B; check sat not B;");
        let evs: Vec<String> = pt.eventualities().map(|e| e.to_string()).collect();
        assert_eq!(evs, ["not B"]);
        let pt = prep("tfeature f; primitive A temporal; define B temporal eventuality := A or some f . B; check sat not B and B;");
        let evs: Vec<String> = pt.eventualities().map(|e| e.to_string()).collect();
        assert_eq!(evs, ["B"]);
    }

    #[test]
    fn rejected_tboxes_do_not_prepare() {
        let doc = parse(
            "tfeature f; define A temporal := some f . B; define B temporal := some f . A; check sat A;",
            Calculus::Rcc8,
            &RationalOrderDomain,
        )
        .unwrap();
        let Directive::Sat(c) = &doc.directives[0] else { panic!() };
        assert!(matches!(prepare(&doc.tbox, c, Calculus::Rcc8), Err(EngineError::Rejected(_))));
    }
}
