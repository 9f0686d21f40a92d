use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::domain::{AdmissibleDomain, DomainAtom};
use crate::error::AtemporalError;
use crate::lang::{negate, nnf, validate, Classification, Concept, Predicate, Role, Sort, TBox};

/// One object of a clash-free completion.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CompletionNode {
    pub label: BTreeSet<Concept>,
    /// `(role name, child)` in creation order.
    pub edges: Vec<(String, usize)>,
    /// Concrete feature → concrete variable.
    pub concrete: BTreeMap<String, usize>,
    /// Concrete features known to have no value.
    pub absent: BTreeSet<String>,
}

impl CompletionNode {
    /// Positive primitive names in the label.
    pub fn primitives<'a>(&'a self, tbox: &'a TBox) -> impl Iterator<Item = &'a str> + 'a {
        self.label.iter().filter_map(move |c| match c {
            Concept::Name { name, .. } if !tbox.is_defined(name) => Some(name.as_str()),
            _ => None,
        })
    }
}

/// A clash-free, fully expanded tableau; node 0 is the root.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Completion {
    pub nodes: Vec<CompletionNode>,
    pub atoms: Vec<DomainAtom>,
    pub variables: usize,
}

struct Clash;

#[derive(Clone)]
struct State {
    c: Completion,
    agenda: VecDeque<(usize, Concept)>,
}

/// ALC(D) satisfiability with respect to an acyclic atemporal TBox.
pub struct AlcdReasoner<'a> {
    tbox: TBox,
    domain: &'a dyn AdmissibleDomain,
    positive: BTreeMap<String, Concept>,
    negative: BTreeMap<String, Concept>,
}

impl<'a> AlcdReasoner<'a> {
    /// Keeps the atemporal axioms of `tbox`; they must be acyclic.
    pub fn new(tbox: &TBox, domain: &'a dyn AdmissibleDomain) -> Result<Self, AtemporalError> {
        let tbox = tbox.restricted_to(Sort::Atemporal);
        if validate(&tbox) != Classification::Acyclic {
            return Err(AtemporalError::CyclicTBox);
        }
        let positive = tbox.axioms().iter().map(|ax| (ax.name.clone(), nnf(&ax.rhs))).collect();
        let negative = tbox.axioms().iter().map(|ax| (ax.name.clone(), negate(&ax.rhs))).collect();
        Ok(AlcdReasoner {
            tbox,
            domain,
            positive,
            negative,
        })
    }

    pub fn tbox(&self) -> &TBox {
        &self.tbox
    }

    pub fn satisfiable(&self, c: &Concept) -> Result<bool, AtemporalError> {
        Ok(self.complete(c)?.is_some())
    }

    /// A completion of `c`, exploring disjunctions left first.
    pub fn complete(&self, c: &Concept) -> Result<Option<Completion>, AtemporalError> {
        if c.sort() == Some(Sort::Temporal) {
            return Err(AtemporalError::Temporal(c.to_string()));
        }
        let mut st = State {
            c: Completion {
                nodes: vec![CompletionNode::default()],
                ..Completion::default()
            },
            agenda: VecDeque::new(),
        };
        if self.add(&mut st, 0, nnf(c)).is_err() {
            return Ok(None);
        }
        self.run(st)
    }

    fn run(&self, mut st: State) -> Result<Option<Completion>, AtemporalError> {
        while let Some((n, c)) = st.agenda.pop_front() {
            if let Concept::Or(v) = &c {
                if v.iter().any(|d| st.c.nodes[n].label.contains(d)) {
                    continue;
                }
                for d in v {
                    let mut branch = st.clone();
                    if self.add(&mut branch, n, d.clone()).is_ok() {
                        if let Some(done) = self.run(branch)? {
                            return Ok(Some(done));
                        }
                    }
                }
                return Ok(None);
            }
            match self.apply(&mut st, n, &c) {
                Ok(()) => {}
                Err(StepError::Clash) => return Ok(None),
                Err(StepError::Fatal(e)) => return Err(e),
            }
        }
        Ok(Some(st.c))
    }

    /// Adds `c` to node `n`, checking immediate clashes.
    fn add(&self, st: &mut State, n: usize, c: Concept) -> Result<(), Clash> {
        let label = &st.c.nodes[n].label;
        if label.contains(&c) {
            return Ok(());
        }
        match &c {
            Concept::Bot => return Err(Clash),
            Concept::Name { .. } if label.contains(&Concept::not(c.clone())) => return Err(Clash),
            Concept::Not(x) if label.contains(x.as_ref()) => return Err(Clash),
            _ => {}
        }
        st.c.nodes[n].label.insert(c.clone());
        st.agenda.push_back((n, c));
        Ok(())
    }

    fn apply(&self, st: &mut State, n: usize, c: &Concept) -> Result<(), StepError> {
        match c {
            Concept::Top | Concept::Bot | Concept::Or(_) => Ok(()),
            Concept::Name { name, .. } => match self.positive.get(name) {
                Some(rhs) => Ok(self.add(st, n, rhs.clone())?),
                None => Ok(()),
            },
            Concept::Not(x) => match x.literal_name().and_then(|name| self.negative.get(name)) {
                Some(rhs) => Ok(self.add(st, n, rhs.clone())?),
                None => Ok(()),
            },
            Concept::And(v) => {
                for d in v {
                    self.add(st, n, d.clone())?;
                }
                Ok(())
            }
            Concept::Exists(r, body) => {
                let child = if r.is_feature() {
                    self.successor(st, n, r)?
                } else {
                    self.new_child(st, n, r)?
                };
                Ok(self.add(st, child, (**body).clone())?)
            }
            Concept::Forall(r, body) => {
                let children: Vec<usize> = st.c.nodes[n]
                    .edges
                    .iter()
                    .filter(|(name, _)| name == &r.name)
                    .map(|&(_, ch)| ch)
                    .collect();
                for ch in children {
                    self.add(st, ch, (**body).clone())?;
                }
                Ok(())
            }
            Concept::Pred(chains, pred) => {
                let Predicate::Domain { name, negated } = pred else {
                    return Err(StepError::Fatal(AtemporalError::Temporal(c.to_string())));
                };
                let resolved = self
                    .domain
                    .resolve(name, *negated)
                    .ok_or_else(|| StepError::Fatal(AtemporalError::UnknownPredicate(name.clone())))?
                    .to_string();
                let mut args = Vec::with_capacity(chains.len());
                for ch in chains {
                    let mut node = n;
                    for i in 0..ch.features.len() {
                        node = self.successor(st, node, &ch.feature_role(i))?;
                    }
                    args.push(self.variable(st, node, &ch.concrete)?);
                }
                st.c.atoms.push(DomainAtom { pred: resolved, args });
                if self.domain.satisfiable(&st.c.atoms).map_err(|e| StepError::Fatal(e.into()))? {
                    Ok(())
                } else {
                    Err(StepError::Clash)
                }
            }
            Concept::NoValue(g) => {
                if st.c.nodes[n].concrete.contains_key(g) {
                    return Err(StepError::Clash);
                }
                st.c.nodes[n].absent.insert(g.clone());
                Ok(())
            }
            Concept::HasValue(g) => {
                let v = self.variable(st, n, g)?;
                st.c.atoms.push(DomainAtom {
                    pred: self.domain.top().to_string(),
                    args: vec![v],
                });
                Ok(())
            }
        }
    }

    fn variable(&self, st: &mut State, n: usize, g: &str) -> Result<usize, Clash> {
        let node = &mut st.c.nodes[n];
        if let Some(&v) = node.concrete.get(g) {
            return Ok(v);
        }
        if node.absent.contains(g) {
            return Err(Clash);
        }
        let v = st.c.variables;
        st.c.variables += 1;
        node.concrete.insert(g.to_string(), v);
        Ok(v)
    }

    /// The unique `f`-successor of `n`, created on demand.
    fn successor(&self, st: &mut State, n: usize, f: &Role) -> Result<usize, Clash> {
        if let Some(&(_, ch)) = st.c.nodes[n].edges.iter().find(|(name, _)| name == &f.name) {
            return Ok(ch);
        }
        self.new_child(st, n, f)
    }

    fn new_child(&self, st: &mut State, n: usize, r: &Role) -> Result<usize, Clash> {
        let child = st.c.nodes.len();
        st.c.nodes.push(CompletionNode::default());
        st.c.nodes[n].edges.push((r.name.clone(), child));
        let inherited: Vec<Concept> = st.c.nodes[n]
            .label
            .iter()
            .filter_map(|c| match c {
                Concept::Forall(q, body) if q.name == r.name => Some((**body).clone()),
                _ => None,
            })
            .collect();
        for body in inherited {
            self.add(st, child, body)?;
        }
        Ok(child)
    }
}

enum StepError {
    Clash,
    Fatal(AtemporalError),
}

impl From<Clash> for StepError {
    fn from(_: Clash) -> Self {
        StepError::Clash
    }
}

/// One-shot form of [`AlcdReasoner::satisfiable`].
pub fn alcd_satisfiable(c: &Concept, tbox: &TBox, domain: &dyn AdmissibleDomain) -> Result<bool, AtemporalError> {
    AlcdReasoner::new(tbox, domain)?.satisfiable(c)
}
