use std::collections::BTreeMap;

use crate::error::DomainError;

/// `pred(args…)` over variables numbered by the caller.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DomainAtom {
    pub pred: String,
    pub args: Vec<usize>,
}

impl DomainAtom {
    pub fn new(pred: &str, args: &[usize]) -> Self {
        DomainAtom {
            pred: pred.to_string(),
            args: args.to_vec(),
        }
    }
}

/// A concrete domain closed under negation, with a predicate for the whole
/// domain and a decision procedure for finite conjunctions.
pub trait AdmissibleDomain {
    fn name(&self) -> &str;
    fn arity(&self, pred: &str) -> Option<usize>;
    fn negate(&self, pred: &str) -> Option<&str>;
    /// Unary predicate true of every object.
    fn top(&self) -> &str;
    fn satisfiable(&self, atoms: &[DomainAtom]) -> Result<bool, DomainError>;

    /// The predicate denoted by `name`, complemented if `negated`.
    fn resolve<'a>(&'a self, name: &'a str, negated: bool) -> Option<&'a str> {
        self.arity(name)?;
        if negated {
            self.negate(name)
        } else {
            Some(name)
        }
    }
}

/// The rationals with `<`, `≤`, `=`, `≠`, `≥`, `>`, plus `top1`/`bot1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RationalOrderDomain;

const PREDICATES: [(&str, usize, &str); 8] = [
    ("lt", 2, "ge"),
    ("le", 2, "gt"),
    ("eq", 2, "neq"),
    ("neq", 2, "eq"),
    ("ge", 2, "lt"),
    ("gt", 2, "le"),
    ("top1", 1, "bot1"),
    ("bot1", 1, "top1"),
];

impl RationalOrderDomain {
    fn check(&self, atoms: &[DomainAtom]) -> Result<(), DomainError> {
        for a in atoms {
            let arity = self
                .arity(&a.pred)
                .ok_or_else(|| DomainError::UnknownPredicate(a.pred.clone()))?;
            if arity != a.args.len() {
                return Err(DomainError::Arity {
                    predicate: a.pred.clone(),
                    expected: arity,
                    found: a.args.len(),
                });
            }
        }
        Ok(())
    }

    /// Strongly connected components of the `≤` graph plus the strict edges
    /// and disequalities, or `None` if the conjunction is unsatisfiable.
    fn components(&self, atoms: &[DomainAtom]) -> Option<(Vec<usize>, Vec<(usize, usize, bool)>)> {
        let mut vars: Vec<usize> = atoms.iter().flat_map(|a| a.args.iter().copied()).collect();
        vars.sort_unstable();
        vars.dedup();
        let idx = |v: usize| vars.binary_search(&v).unwrap();
        let n = vars.len();
        // (from, to, strict): from ≤ to, or from < to
        let mut edges: Vec<(usize, usize, bool)> = Vec::new();
        let mut neq: Vec<(usize, usize)> = Vec::new();
        for a in atoms {
            let x = a.args.first().map(|&v| idx(v));
            let y = a.args.get(1).map(|&v| idx(v));
            match (a.pred.as_str(), x, y) {
                ("lt", Some(x), Some(y)) => edges.push((x, y, true)),
                ("le", Some(x), Some(y)) => edges.push((x, y, false)),
                ("gt", Some(x), Some(y)) => edges.push((y, x, true)),
                ("ge", Some(x), Some(y)) => edges.push((y, x, false)),
                ("eq", Some(x), Some(y)) => {
                    edges.push((x, y, false));
                    edges.push((y, x, false));
                }
                ("neq", Some(x), Some(y)) => neq.push((x, y)),
                ("bot1", _, _) => return None,
                _ => {}
            }
        }
        // reachability closure; the variable counts involved are small
        let mut reach = vec![false; n * n];
        for i in 0..n {
            reach[i * n + i] = true;
        }
        for &(x, y, _) in &edges {
            reach[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i * n + k] {
                    for j in 0..n {
                        if reach[k * n + j] {
                            reach[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for i in 0..n {
            if comp[i] == usize::MAX {
                for j in i..n {
                    if reach[i * n + j] && reach[j * n + i] {
                        comp[j] = count;
                    }
                }
                count += 1;
            }
        }
        if edges.iter().any(|&(x, y, strict)| strict && comp[x] == comp[y]) {
            return None;
        }
        if neq.iter().any(|&(x, y)| comp[x] == comp[y]) {
            return None;
        }
        let comp_edges = edges.iter().map(|&(x, y, s)| (comp[x], comp[y], s)).collect();
        Some((comp, comp_edges))
    }

    /// A satisfying assignment with integer values, if one exists.
    pub fn model(&self, atoms: &[DomainAtom]) -> Result<Option<BTreeMap<usize, i64>>, DomainError> {
        self.check(atoms)?;
        let Some((comp, edges)) = self.components(atoms) else {
            return Ok(None);
        };
        let mut vars: Vec<usize> = atoms.iter().flat_map(|a| a.args.iter().copied()).collect();
        vars.sort_unstable();
        vars.dedup();
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        // topological order of the condensation, every component at a distinct value
        let mut indeg = vec![0usize; ncomp];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for &(x, y, _) in &edges {
            if x != y {
                succ[x].push(y);
                indeg[y] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..ncomp).filter(|&c| indeg[c] == 0).collect();
        let mut value = vec![0i64; ncomp];
        let mut next = 0i64;
        while let Some(c) = ready.pop() {
            value[c] = next;
            next += 1;
            for &d in &succ[c] {
                indeg[d] -= 1;
                if indeg[d] == 0 {
                    ready.push(d);
                }
            }
        }
        Ok(Some(vars.iter().zip(&comp).map(|(&v, &c)| (v, value[c])).collect()))
    }

    /// Evaluates an atom under an assignment.
    pub fn holds(atom: &DomainAtom, values: &BTreeMap<usize, i64>) -> bool {
        let v = |i: usize| values[&atom.args[i]];
        match atom.pred.as_str() {
            "lt" => v(0) < v(1),
            "le" => v(0) <= v(1),
            "eq" => v(0) == v(1),
            "neq" => v(0) != v(1),
            "ge" => v(0) >= v(1),
            "gt" => v(0) > v(1),
            "top1" => true,
            _ => false,
        }
    }
}

impl AdmissibleDomain for RationalOrderDomain {
    fn name(&self) -> &str {
        "rational-order"
    }

    fn arity(&self, pred: &str) -> Option<usize> {
        PREDICATES.iter().find(|p| p.0 == pred).map(|p| p.1)
    }

    fn negate(&self, pred: &str) -> Option<&str> {
        PREDICATES.iter().find(|p| p.0 == pred).map(|p| p.2)
    }

    fn top(&self) -> &str {
        "top1"
    }

    fn satisfiable(&self, atoms: &[DomainAtom]) -> Result<bool, DomainError> {
        self.check(atoms)?;
        Ok(self.components(atoms).is_some())
    }
}

/// Decides a conjunction over the rational order domain.
pub fn rational_satisfiable(atoms: &[DomainAtom]) -> Result<bool, DomainError> {
    RationalOrderDomain.satisfiable(atoms)
}
