use super::syntax::{Chain, Concept};

/// Negation normal form: negation only in front of concept names.
///
/// A negated predicate becomes the complemented predicate or'ed with one
/// marker per chain saying the chain has no value: `∀f1…∀fk.novalue g` for
/// aspatial chains, `∀f1…∀fk.⊥` for spatial chains with a prefix. Spatial
/// features are total, so a spatial chain without prefix needs no marker.
pub fn nnf(c: &Concept) -> Concept {
    match c {
        Concept::Not(d) => negate(d),
        Concept::And(v) => Concept::and(v.iter().map(nnf)),
        Concept::Or(v) => Concept::or(v.iter().map(nnf)),
        Concept::Exists(r, d) => Concept::exists(r.clone(), nnf(d)),
        Concept::Forall(r, d) => Concept::forall(r.clone(), nnf(d)),
        Concept::Pred(_, p) if p.is_empty_relation() => Concept::Bot,
        c => c.clone(),
    }
}

/// NNF of `¬c`.
pub fn negate(c: &Concept) -> Concept {
    match c {
        Concept::Top => Concept::Bot,
        Concept::Bot => Concept::Top,
        Concept::Name { .. } => Concept::not(c.clone()),
        Concept::Not(d) => nnf(d),
        Concept::And(v) => Concept::or(v.iter().map(negate)),
        Concept::Or(v) => Concept::and(v.iter().map(negate)),
        Concept::Exists(r, d) => Concept::forall(r.clone(), negate(d)),
        Concept::Forall(r, d) => Concept::exists(r.clone(), negate(d)),
        Concept::Pred(chains, p) => {
            let comp = p.complement();
            let head = if comp.is_empty_relation() {
                Concept::Bot
            } else {
                Concept::Pred(chains.clone(), comp)
            };
            Concept::or(std::iter::once(head).chain(chains.iter().filter_map(undefined)))
        }
        Concept::NoValue(g) => Concept::HasValue(g.clone()),
        Concept::HasValue(g) => Concept::NoValue(g.clone()),
    }
}

/// Concept satisfied exactly where `chain` has no value, if that can happen.
pub fn undefined(chain: &Chain) -> Option<Concept> {
    if chain.spatial && chain.features.is_empty() {
        return None;
    }
    let tip = if chain.spatial {
        Concept::Bot
    } else {
        Concept::NoValue(chain.concrete.clone())
    };
    Some(
        (0..chain.features.len())
            .rev()
            .fold(tip, |body, i| Concept::forall(chain.feature_role(i), body)),
    )
}
