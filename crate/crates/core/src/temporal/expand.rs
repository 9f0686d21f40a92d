use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::prepare::{Direction, Label, PreparedTBox};
use crate::lang::{raw_dnf, Concept, RawElement, Role, Sort};

/// One way of satisfying a label at a single world: the disjunction-free
/// choice made for every member and everything it unfolds to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    /// Defined literals unfolded at this world.
    pub unfolded: BTreeSet<Concept>,
    pub primitives: BTreeSet<Concept>,
    pub csp: BTreeSet<Concept>,
    pub atemporal: BTreeSet<Concept>,
    /// Successor labels, in direction order.
    pub successors: Vec<(Direction, Label)>,
}

#[derive(Clone)]
struct Item {
    concept: Concept,
    inherited: BTreeSet<Concept>,
    parents: Vec<usize>,
    exists: Vec<(Role, Concept)>,
    forall: Vec<(Role, Concept)>,
}

#[derive(Clone, Default)]
struct Local {
    items: Vec<Item>,
    index: BTreeMap<Concept, usize>,
    primitives: BTreeSet<Concept>,
    csp: BTreeSet<Concept>,
    atemporal: BTreeSet<Concept>,
    queue: VecDeque<(Concept, Option<usize>, BTreeSet<Concept>)>,
}

impl PreparedTBox {
    /// Every clash-free expansion of `label`, in the order the choices are
    /// made: members in label order, disjuncts left first.
    pub fn expand(&self, label: &Label) -> Vec<Expansion> {
        let mut local = Local::default();
        for (m, tags) in label {
            local.queue.push_back((m.clone(), None, tags.clone()));
        }
        let mut out = Vec::new();
        self.enumerate(local, &mut out);
        out
    }

    fn enumerate(&self, mut local: Local, out: &mut Vec<Expansion>) {
        while let Some((c, parent, inherited)) = local.queue.pop_front() {
            if let Some(&i) = local.index.get(&c) {
                let item = &mut local.items[i];
                item.inherited.extend(inherited);
                item.parents.extend(parent);
                continue;
            }
            if c.sort() == Some(Sort::Atemporal) {
                local.atemporal.insert(c);
                continue;
            }
            if c.literal_name().is_some() && !self.is_defined_literal(&c) {
                let complement = match &c {
                    Concept::Not(x) => (**x).clone(),
                    x => Concept::not(x.clone()),
                };
                if local.primitives.contains(&complement) {
                    return;
                }
                local.primitives.insert(c);
                continue;
            }
            let elements = match self.defs.get(&c) {
                Some(els) => els.clone(),
                None => raw_dnf(&c),
            };
            let idx = local.items.len();
            local.index.insert(c.clone(), idx);
            local.items.push(Item {
                concept: c,
                inherited,
                parents: parent.into_iter().collect(),
                exists: Vec::new(),
                forall: Vec::new(),
            });
            match elements.len() {
                0 => return,
                1 => self.apply(&mut local, idx, &elements[0]),
                _ => {
                    for el in &elements {
                        let mut branch = local.clone();
                        self.apply(&mut branch, idx, el);
                        self.enumerate(branch, out);
                    }
                    return;
                }
            }
        }
        let exp = self.finish(local);
        if !out.contains(&exp) {
            out.push(exp);
        }
    }

    fn apply(&self, local: &mut Local, idx: usize, el: &RawElement) {
        for l in &el.literals {
            local.queue.push_back((l.clone(), Some(idx), BTreeSet::new()));
        }
        local.csp.extend(el.csp.iter().cloned());
        for a in &el.atemporal {
            local.queue.push_back((a.clone(), Some(idx), BTreeSet::new()));
        }
        local.items[idx].exists = el.exists.clone();
        local.items[idx].forall = el.forall.clone();
    }

    /// Tags each item with what it carries, then groups obligations by direction.
    fn finish(&self, local: Local) -> Expansion {
        let n = local.items.len();
        let reach: Vec<BTreeSet<Concept>> = local.items.iter().map(|it| self.reach_of(&it.concept)).collect();
        let mut out_tags: Vec<BTreeSet<Concept>> = local
            .items
            .iter()
            .map(|it| {
                let mut tags = it.inherited.clone();
                if self.eventualities.contains(&it.concept) {
                    tags.insert(it.concept.clone());
                }
                tags
            })
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for &p in &local.items[i].parents {
                    let add: Vec<Concept> = out_tags[p]
                        .intersection(&reach[i])
                        .filter(|t| !out_tags[i].contains(*t))
                        .cloned()
                        .collect();
                    changed |= !add.is_empty();
                    out_tags[i].extend(add);
                }
            }
        }

        let mut dirs: BTreeMap<Direction, Label> = BTreeMap::new();
        let carried = |i: usize, body: &Concept| -> BTreeSet<Concept> {
            out_tags[i].intersection(&self.reach_of(body)).cloned().collect()
        };
        for (i, item) in local.items.iter().enumerate() {
            for (r, body) in &item.exists {
                let slot = dirs.entry(self.direction(r, body)).or_default();
                slot.entry(body.clone()).or_default().extend(carried(i, body));
            }
        }
        for p in &local.csp {
            let Concept::Pred(chains, _) = p else { continue };
            for ch in chains.iter().filter(|ch| ch.spatial && !ch.features.is_empty()) {
                let body = (1..ch.features.len())
                    .rev()
                    .fold(Concept::Top, |b, i| Concept::exists(ch.feature_role(i), b));
                let first = ch.feature_role(0);
                let slot = dirs.entry(self.direction(&first, &body)).or_default();
                slot.entry(body).or_default();
            }
        }
        for (i, item) in local.items.iter().enumerate() {
            for (r, body) in &item.forall {
                let tags = carried(i, body);
                for (d, label) in dirs.iter_mut() {
                    if self.direction_role(d) == r.name {
                        label.entry(body.clone()).or_default().extend(tags.iter().cloned());
                    }
                }
            }
        }
        for label in dirs.values_mut() {
            label.remove(&Concept::Top);
        }

        Expansion {
            unfolded: local
                .items
                .iter()
                .map(|it| it.concept.clone())
                .filter(|c| self.is_defined_literal(c))
                .collect(),
            primitives: local.primitives,
            csp: local.csp,
            atemporal: local.atemporal,
            successors: dirs.into_iter().collect(),
        }
    }
}
