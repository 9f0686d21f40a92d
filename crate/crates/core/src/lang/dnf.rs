//! The dnf2 decomposition of temporal concepts.
//!
//! [`raw_dnf`] distributes disjunction and keeps universal restrictions as
//! they are; [`finalize`] then absorbs them into the existential obligations
//! of the same element. Keeping the two steps apart lets a caller conjoin raw
//! elements coming from several concepts before absorbing.

use std::collections::BTreeSet;

use super::syntax::{Concept, Role, Sort};

/// One disjunct before universal restrictions are absorbed.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawElement {
    /// Temporal concept names and their negations.
    pub literals: BTreeSet<Concept>,
    /// Spatial predicates.
    pub csp: BTreeSet<Concept>,
    /// Atemporal concepts asserted at this world.
    pub atemporal: BTreeSet<Concept>,
    pub exists: Vec<(Role, Concept)>,
    pub forall: Vec<(Role, Concept)>,
}

/// `S_prop ∪ S_csp ∪ S_∃`, plus the atemporal part.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DnfElement {
    pub literals: BTreeSet<Concept>,
    pub csp: BTreeSet<Concept>,
    pub atemporal: BTreeSet<Concept>,
    /// Obligations in order of first appearance; at most one per abstract feature.
    pub exists: Vec<(Role, Concept)>,
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

impl RawElement {
    /// Conjunction of two elements, or `None` on complementary literals.
    pub fn merge(&self, other: &RawElement) -> Option<RawElement> {
        let mut out = self.clone();
        for l in &other.literals {
            let neg = match l {
                Concept::Not(x) => (**x).clone(),
                x => Concept::not(x.clone()),
            };
            if out.literals.contains(&neg) {
                return None;
            }
            out.literals.insert(l.clone());
        }
        out.csp.extend(other.csp.iter().cloned());
        out.atemporal.extend(other.atemporal.iter().cloned());
        for e in &other.exists {
            push_unique(&mut out.exists, e.clone());
        }
        for a in &other.forall {
            push_unique(&mut out.forall, a.clone());
        }
        Some(out)
    }
}

/// Product of two disjunctions, dropping clashing combinations.
pub fn product(left: &[RawElement], right: &[RawElement]) -> Vec<RawElement> {
    let mut out = Vec::new();
    for l in left {
        for r in right {
            if let Some(m) = l.merge(r) {
                push_unique(&mut out, m);
            }
        }
    }
    out
}

/// Disjunctive decomposition of an NNF concept, keeping `∀` restrictions.
/// Atemporal subconcepts are kept whole.
pub fn raw_dnf(c: &Concept) -> Vec<RawElement> {
    let single = |f: &dyn Fn(&mut RawElement)| {
        let mut e = RawElement::default();
        f(&mut e);
        vec![e]
    };
    match c {
        Concept::Top => vec![RawElement::default()],
        Concept::Bot => Vec::new(),
        c if c.sort() == Some(Sort::Atemporal) => single(&|e| {
            e.atemporal.insert(c.clone());
        }),
        Concept::Name { .. } | Concept::Not(_) => single(&|e| {
            e.literals.insert(c.clone());
        }),
        Concept::Pred(..) => single(&|e| {
            e.csp.insert(c.clone());
        }),
        Concept::And(v) => v
            .iter()
            .fold(vec![RawElement::default()], |acc, d| product(&acc, &raw_dnf(d))),
        Concept::Or(v) => {
            let mut out = Vec::new();
            for d in v {
                for e in raw_dnf(d) {
                    push_unique(&mut out, e);
                }
            }
            out
        }
        Concept::Exists(r, d) => single(&|e| e.exists.push((r.clone(), (**d).clone()))),
        Concept::Forall(r, d) => single(&|e| e.forall.push((r.clone(), (**d).clone()))),
        Concept::NoValue(_) | Concept::HasValue(_) => unreachable!("atemporal"),
    }
}

/// Obligation `∃f1.∃f2…∃fk.⊤` for each spatial chain with a nonempty prefix.
fn chain_obligations(csp: &BTreeSet<Concept>) -> Vec<(Role, Concept)> {
    let mut out = Vec::new();
    for p in csp {
        let Concept::Pred(chains, _) = p else { continue };
        for ch in chains.iter().filter(|ch| ch.spatial && !ch.features.is_empty()) {
            let body = (1..ch.features.len())
                .rev()
                .fold(Concept::Top, |b, i| Concept::exists(ch.feature_role(i), b));
            push_unique(&mut out, (ch.feature_role(0), body));
        }
    }
    out
}

/// Merges obligations on one abstract feature and absorbs every `∀R.E'` into
/// the `∃R` obligations; a `∀R` without a matching `∃R` is dropped.
pub fn finalize(raw: &RawElement) -> DnfElement {
    let mut obligations: Vec<(Role, Vec<Concept>)> = Vec::new();
    let all = raw.exists.iter().cloned().chain(chain_obligations(&raw.csp));
    for (role, body) in all {
        if role.is_feature() {
            if let Some(slot) = obligations.iter_mut().find(|(r, _)| r == &role) {
                slot.1.push(body);
                continue;
            }
        } else if obligations.iter().any(|(r, b)| r == &role && b[0] == body) {
            continue;
        }
        obligations.push((role, vec![body]));
    }
    let exists = obligations
        .into_iter()
        .map(|(role, mut bodies)| {
            bodies.extend(raw.forall.iter().filter(|(r, _)| r == &role).map(|(_, b)| b.clone()));
            let body = Concept::and(bodies);
            (role, body)
        })
        .collect();
    DnfElement {
        literals: raw.literals.clone(),
        csp: raw.csp.clone(),
        atemporal: raw.atemporal.clone(),
        exists,
    }
}

/// dnf2 of an NNF concept.
pub fn dnf2(c: &Concept) -> Vec<DnfElement> {
    let mut out = Vec::new();
    for raw in raw_dnf(c) {
        push_unique(&mut out, finalize(&raw));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::syntax::{Chain, Predicate, RoleKind};

    fn t(n: &str) -> Concept {
        Concept::name(n, Sort::Temporal)
    }

    fn f() -> Role {
        Role::new("f", RoleKind::TemporalFeature)
    }

    fn pred() -> Concept {
        Concept::Pred(
            vec![Chain::new(&[], "g1", true), Chain::new(&[], "g2", true)],
            Predicate::Rcc8("{TPP}".parse().unwrap()),
        )
    }

    #[test]
    fn distribution() {
        let c = Concept::and([Concept::or([t("A"), t("B")]), Concept::exists(f(), t("C"))]);
        let els = dnf2(&c);
        assert_eq!(els.len(), 2);
        assert_eq!(els[0].literals, BTreeSet::from([t("A")]));
        assert_eq!(els[1].literals, BTreeSet::from([t("B")]));
        for e in &els {
            assert_eq!(e.exists, vec![(f(), t("C"))]);
        }
    }

    #[test]
    fn universal_absorbed_into_existential() {
        let r = Role::new("R", RoleKind::TemporalRole);
        let c = Concept::and([Concept::exists(r.clone(), t("C")), Concept::forall(r.clone(), t("D"))]);
        let els = dnf2(&c);
        assert_eq!(els.len(), 1);
        assert_eq!(els[0].exists, vec![(r, Concept::And(vec![t("C"), t("D")]))]);
    }

    #[test]
    fn unmatched_universal_dropped() {
        let els = dnf2(&Concept::forall(f(), Concept::Bot));
        assert_eq!(els, vec![DnfElement::default()]);
    }

    #[test]
    fn predicates_land_in_csp() {
        let els = dnf2(&Concept::and([t("A"), pred()]));
        assert_eq!(els.len(), 1);
        assert_eq!(els[0].literals, BTreeSet::from([t("A")]));
        assert_eq!(els[0].csp, BTreeSet::from([pred()]));
        assert!(els[0].exists.is_empty());
    }

    #[test]
    fn feature_obligations_merge_and_roles_stay_apart() {
        let r = Role::new("R", RoleKind::TemporalRole);
        let c = Concept::and([
            Concept::exists(f(), t("A")),
            Concept::exists(f(), t("B")),
            Concept::exists(r.clone(), t("A")),
            Concept::exists(r.clone(), t("B")),
        ]);
        let els = dnf2(&c);
        assert_eq!(
            els[0].exists,
            vec![
                (f(), Concept::And(vec![t("A"), t("B")])),
                (r.clone(), t("A")),
                (r, t("B"))
            ]
        );
    }

    #[test]
    fn chain_prefix_creates_existence_obligation() {
        let p = Concept::Pred(
            vec![Chain::new(&[], "g", true), Chain::new(&["f"], "g", true)],
            Predicate::Rcc8("{NTPP}".parse().unwrap()),
        );
        let els = dnf2(&Concept::and([p, Concept::forall(f(), t("A"))]));
        assert_eq!(els[0].exists, vec![(f(), t("A"))]);
    }

    #[test]
    fn clashing_literals_are_pruned() {
        let c = Concept::and([Concept::or([t("A"), t("B")]), Concept::not(t("A"))]);
        let els = dnf2(&c);
        assert_eq!(els.len(), 1);
        assert!(els[0].literals.contains(&t("B")));
    }

    #[test]
    fn atemporal_parts_are_kept_whole() {
        let a = Concept::or([Concept::name("X", Sort::Atemporal), Concept::name("Y", Sort::Atemporal)]);
        let els = dnf2(&Concept::exists(f(), a.clone()));
        assert_eq!(els[0].exists, vec![(f(), a.clone())]);
        let els = dnf2(&a);
        assert_eq!(els.len(), 1);
        assert_eq!(els[0].atemporal, BTreeSet::from([a]));
    }
}
