use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use super::expand::Expansion;
use super::prepare::{Direction, Label, PreparedTBox};
use super::witness::{Witness, WitnessConstraint, WitnessEdge, WitnessElement, WitnessMember, WitnessNode, WitnessVariable};
use super::SearchOptions;
use crate::algebra::Calculus;
use crate::atemporal::AlcdReasoner;
use crate::error::EngineError;
use crate::lang::{Chain, Concept, Predicate};
use crate::network::{search_scenario, BinaryNetwork, PropagationQueue, TernaryKey, TernaryNetwork};

/// The global spatial CSP in the calculus of the problem.
#[derive(Debug, Clone)]
enum Net {
    Rcc8(BinaryNetwork, PropagationQueue<(usize, usize)>),
    Cyct(TernaryNetwork, PropagationQueue<TernaryKey>),
}

impl Net {
    fn new(calculus: Calculus) -> Self {
        match calculus {
            Calculus::Rcc8 => Net::Rcc8(BinaryNetwork::new(0), PropagationQueue::new()),
            Calculus::Cyct => Net::Cyct(TernaryNetwork::new(0), PropagationQueue::new()),
        }
    }

    fn insert(&mut self, ids: &[usize], p: &Predicate) {
        match (self, p, ids) {
            (Net::Rcc8(net, q), Predicate::Rcc8(r), &[i, j]) => net.insert_constraint(i, j, *r, q),
            (Net::Cyct(net, q), Predicate::Cyct(r), &[i, j, k]) => net.insert_constraint(i, j, k, *r, q),
            _ => unreachable!("calculus checked when preparing"),
        }
    }

    fn propagate(&mut self) -> bool {
        match self {
            Net::Rcc8(net, q) => net.path_consistency(q).is_ok(),
            Net::Cyct(net, q) => net.four_consistency(q).is_ok(),
        }
    }

    fn solve(&self) -> Option<Vec<WitnessConstraint>> {
        match self {
            Net::Rcc8(net, _) => search_scenario(net).map(|s| {
                s.assignments
                    .into_iter()
                    .map(|((i, j), a)| WitnessConstraint {
                        vars: vec![i, j],
                        atom: a.to_string(),
                    })
                    .collect()
            }),
            Net::Cyct(net, _) => search_scenario(net).map(|s| {
                s.assignments
                    .into_iter()
                    .map(|((i, j, k), a)| WitnessConstraint {
                        vars: vec![i, j, k],
                        atom: a.to_string(),
                    })
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Tree(usize),
    Back(usize),
}

#[derive(Debug, Clone)]
struct RunNode {
    label: Label,
    parent: Option<usize>,
    expansion: Option<Rc<Expansion>>,
    children: Vec<(Direction, Target)>,
}

#[derive(Debug, Clone)]
struct State {
    nodes: Vec<RunNode>,
    /// Unexpanded nodes; the last one is expanded next.
    frontier: Vec<usize>,
    online: Option<Net>,
    vars: BTreeMap<(usize, String), usize>,
    /// Spatial predicates whose chains are not yet fully built.
    deferred: Vec<(usize, Concept)>,
}

enum Walk {
    Ready(usize),
    Later,
    Never,
}

pub(super) struct Search<'a> {
    pt: &'a PreparedTBox,
    alcd: Option<AlcdReasoner<'a>>,
    options: SearchOptions,
    expansions: RefCell<HashMap<Label, Rc<Vec<Rc<Expansion>>>>>,
    atemporal: RefCell<BTreeMap<Concept, bool>>,
}

impl<'a> Search<'a> {
    pub(super) fn new(pt: &'a PreparedTBox, alcd: Option<AlcdReasoner<'a>>, options: SearchOptions) -> Self {
        Search {
            pt,
            alcd,
            options,
            expansions: RefCell::new(HashMap::new()),
            atemporal: RefCell::new(BTreeMap::new()),
        }
    }

    pub(super) fn run(&self) -> Result<Option<Witness>, EngineError> {
        let init = self.pt.tbox.get(&self.pt.init).expect("init axiom");
        let root = RunNode {
            label: Label::from([(Concept::name(init.name.clone(), init.sort), BTreeSet::new())]),
            parent: None,
            expansion: None,
            children: Vec::new(),
        };
        let st = State {
            nodes: vec![root],
            frontier: vec![0],
            online: self.options.online_filtering.then(|| Net::new(self.pt.calculus)),
            vars: BTreeMap::new(),
            deferred: Vec::new(),
        };
        self.search(st)
    }

    /// Clash-free expansions of `label` whose atemporal part is satisfiable.
    fn expansions(&self, label: &Label) -> Result<Rc<Vec<Rc<Expansion>>>, EngineError> {
        if let Some(e) = self.expansions.borrow().get(label) {
            return Ok(e.clone());
        }
        let mut out = Vec::new();
        for exp in self.pt.expand(label) {
            if self.atemporal_ok(&exp.atemporal)? {
                out.push(Rc::new(exp));
            }
        }
        let out = Rc::new(out);
        self.expansions.borrow_mut().insert(label.clone(), out.clone());
        Ok(out)
    }

    fn atemporal_ok(&self, parts: &BTreeSet<Concept>) -> Result<bool, EngineError> {
        if parts.is_empty() {
            return Ok(true);
        }
        let c = Concept::and(parts.iter().cloned());
        if let Some(&v) = self.atemporal.borrow().get(&c) {
            return Ok(v);
        }
        let alcd = self.alcd.as_ref().ok_or(EngineError::NoDomain)?;
        let v = alcd.satisfiable(&c)?;
        self.atemporal.borrow_mut().insert(c, v);
        Ok(v)
    }

    fn search(&self, mut st: State) -> Result<Option<Witness>, EngineError> {
        let Some(n) = st.frontier.pop() else {
            return Ok(self.finish(&st));
        };
        let label = st.nodes[n].label.clone();
        for exp in self.expansions(&label)?.iter() {
            let mut next = st.clone();
            if self.apply(&mut next, n, exp.clone())? {
                if let Some(w) = self.search(next)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    fn apply(&self, st: &mut State, n: usize, exp: Rc<Expansion>) -> Result<bool, EngineError> {
        let mut fresh = Vec::new();
        for (dir, label) in &exp.successors {
            let mut cur = Some(n);
            let mut same = None;
            while let Some(x) = cur {
                if &st.nodes[x].label == label {
                    same = Some(x);
                    break;
                }
                cur = st.nodes[x].parent;
            }
            if let Some(a) = same {
                if !accepts_back_edge(st, a, n) {
                    return Ok(false);
                }
                st.nodes[n].children.push((dir.clone(), Target::Back(a)));
            } else {
                if self.expansions(label)?.is_empty() {
                    return Ok(false);
                }
                let id = st.nodes.len();
                st.nodes.push(RunNode {
                    label: label.clone(),
                    parent: Some(n),
                    expansion: None,
                    children: Vec::new(),
                });
                st.nodes[n].children.push((dir.clone(), Target::Tree(id)));
                fresh.push(id);
            }
        }
        st.frontier.extend(fresh.into_iter().rev());
        if st.online.is_some() {
            st.deferred.extend(exp.csp.iter().map(|p| (n, p.clone())));
        }
        st.nodes[n].expansion = Some(exp);
        Ok(self.flush(st))
    }

    fn walk(&self, st: &State, from: usize, chain: &Chain) -> Walk {
        let mut cur = from;
        for f in &chain.features {
            let d = Direction::Feature(self.pt.af.iter().position(|x| x == f).expect("feature collected"));
            match st.nodes[cur].children.iter().find(|(dir, _)| dir == &d) {
                Some((_, Target::Tree(c))) => cur = *c,
                Some((_, Target::Back(_))) => return Walk::Never,
                None if st.nodes[cur].expansion.is_none() => return Walk::Later,
                None => return Walk::Never,
            }
        }
        Walk::Ready(cur)
    }

    /// Moves every deferred predicate whose chains now stay inside the tree
    /// into the online network, then propagates.
    fn flush(&self, st: &mut State) -> bool {
        if st.online.is_none() {
            return true;
        }
        let deferred = std::mem::take(&mut st.deferred);
        for (node, p) in deferred {
            let Concept::Pred(chains, pred) = &p else { continue };
            let mut ends = Vec::with_capacity(chains.len());
            let mut later = false;
            let mut never = false;
            for ch in chains {
                match self.walk(st, node, ch) {
                    Walk::Ready(e) => ends.push((e, ch.concrete.clone())),
                    Walk::Later => later = true,
                    Walk::Never => never = true,
                }
            }
            if never {
                continue;
            }
            if later {
                st.deferred.push((node, p));
                continue;
            }
            let ids: Vec<usize> = ends
                .into_iter()
                .map(|key| {
                    let next = st.vars.len();
                    *st.vars.entry(key).or_insert(next)
                })
                .collect();
            st.online.as_mut().expect("online").insert(&ids, pred);
        }
        st.online.as_mut().expect("online").propagate()
    }

    /// Solves the global CSP of the unfolded lasso and builds the witness.
    fn finish(&self, st: &State) -> Option<Witness> {
        let mut u = Unfolding {
            st,
            unfold: self.options.unfold.max(1),
            insts: Vec::new(),
            copies: BTreeMap::new(),
            visits: BTreeMap::new(),
        };
        u.build(0);
        let built = u.insts.len();
        let mut net = Net::new(self.pt.calculus);
        let mut vars: BTreeMap<(usize, String), usize> = BTreeMap::new();
        for i in 0..built {
            if !u.insts[i].real {
                continue;
            }
            let node = u.insts[i].node.expect("real instance");
            let exp = st.nodes[node].expansion.as_ref().expect("expanded");
            for p in &exp.csp {
                let Concept::Pred(chains, pred) = p else { continue };
                let ids: Vec<usize> = chains
                    .iter()
                    .map(|ch| {
                        let end = u.walk(i, ch, self.pt);
                        let next = vars.len();
                        *vars.entry((end, ch.concrete.clone())).or_insert(next)
                    })
                    .collect();
                net.insert(&ids, pred);
            }
        }
        let scenario = if vars.is_empty() { Vec::new() } else { net.solve()? };

        let mut variables: Vec<WitnessVariable> = vars
            .iter()
            .map(|((inst, g), &id)| WitnessVariable {
                id,
                node: u.insts[*inst].node,
                copy: u.insts[*inst].copy,
                feature: g.clone(),
            })
            .collect();
        variables.sort_by_key(|v| v.id);
        Some(self.witness(st, variables, scenario))
    }

    fn witness(&self, st: &State, variables: Vec<WitnessVariable>, scenario: Vec<WitnessConstraint>) -> Witness {
        let strings = |s: &BTreeSet<Concept>| s.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut edges = Vec::new();
        let mut back_edges = Vec::new();
        let nodes = st
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| {
                for (d, t) in &n.children {
                    let (to, list) = match t {
                        Target::Tree(c) => (*c, &mut edges),
                        Target::Back(a) => (*a, &mut back_edges),
                    };
                    list.push(WitnessEdge {
                        from: id,
                        to,
                        direction: self.pt.direction_name(d),
                    });
                }
                let exp = n.expansion.as_ref().expect("expanded");
                WitnessNode {
                    id,
                    label: n
                        .label
                        .iter()
                        .map(|(c, tags)| WitnessMember {
                            concept: c.to_string(),
                            pending: strings(tags),
                        })
                        .collect(),
                    element: WitnessElement {
                        unfolded: strings(&exp.unfolded),
                        primitives: strings(&exp.primitives),
                        csp: strings(&exp.csp),
                        atemporal: strings(&exp.atemporal),
                    },
                }
            })
            .collect();
        Witness {
            schema: 1,
            calculus: self.pt.calculus,
            unfold: self.options.unfold.max(1),
            init: self.pt.init.clone(),
            nodes,
            edges,
            back_edges,
            variables,
            scenario,
        }
    }
}

/// Whether a loop closing at `n` back to its ancestor `a` may be accepted:
/// no eventuality is pending at every node of the cycle.
fn accepts_back_edge(st: &State, a: usize, n: usize) -> bool {
    let pending = |x: usize| -> BTreeSet<&Concept> { st.nodes[x].label.values().flatten().collect() };
    let mut common = pending(n);
    let mut cur = n;
    while cur != a && !common.is_empty() {
        cur = st.nodes[cur].parent.expect("a is an ancestor");
        let p = pending(cur);
        common.retain(|e| p.contains(e));
    }
    common.is_empty()
}

#[derive(Debug, Clone)]
struct Instance {
    /// `None` for the padding below a truncated loop.
    node: Option<usize>,
    copy: usize,
    real: bool,
    succ: BTreeMap<Direction, usize>,
}

/// The run with every back-edge target repeated up to `unfold` times along a
/// path; the last repetition is cut to a bare stub.
struct Unfolding<'s> {
    st: &'s State,
    unfold: usize,
    insts: Vec<Instance>,
    copies: BTreeMap<usize, usize>,
    visits: BTreeMap<usize, usize>,
}

impl Unfolding<'_> {
    fn instance(&mut self, node: Option<usize>, real: bool) -> usize {
        let copy = match node {
            Some(n) => {
                let c = self.copies.entry(n).or_insert(0);
                *c += 1;
                *c - 1
            }
            None => 0,
        };
        self.insts.push(Instance {
            node,
            copy,
            real,
            succ: BTreeMap::new(),
        });
        self.insts.len() - 1
    }

    fn build(&mut self, node: usize) -> usize {
        let id = self.instance(Some(node), true);
        for (dir, target) in &self.st.nodes[node].children {
            let child = match *target {
                Target::Tree(c) => self.build(c),
                Target::Back(a) => {
                    let v = self.visits.get(&a).copied().unwrap_or(0);
                    if v + 1 < self.unfold {
                        self.visits.insert(a, v + 1);
                        let r = self.build(a);
                        self.visits.insert(a, v);
                        r
                    } else {
                        self.stub(Some(a))
                    }
                }
            };
            self.insts[id].succ.insert(dir.clone(), child);
        }
        id
    }

    fn stub(&mut self, node: Option<usize>) -> usize {
        self.instance(node, false)
    }

    fn walk(&mut self, from: usize, chain: &Chain, pt: &PreparedTBox) -> usize {
        let mut cur = from;
        for f in &chain.features {
            let d = Direction::Feature(pt.af.iter().position(|x| x == f).expect("feature collected"));
            cur = match self.insts[cur].succ.get(&d) {
                Some(&c) => c,
                None => {
                    let s = self.stub(None);
                    self.insts[cur].succ.insert(d, s);
                    s
                }
            };
        }
        cur
    }
}
