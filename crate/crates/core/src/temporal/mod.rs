//! Satisfiability of temporal concepts: run search over the named TBox with
//! online spatial filtering, lasso closing and a final solve of the global CSP.

mod expand;
mod prepare;
mod run;
mod witness;

pub use expand::Expansion;
pub use prepare::{prepare, Direction, Label, PreparedTBox};
pub use witness::{Witness, WitnessConstraint, WitnessEdge, WitnessElement, WitnessMember, WitnessNode, WitnessVariable};

use crate::algebra::Calculus;
use crate::atemporal::{AdmissibleDomain, AlcdReasoner};
use crate::error::EngineError;
use crate::lang::{negate, Concept, TBox};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// How many times a loop body is repeated in the final CSP.
    pub unfold: usize,
    /// Propagate the spatial CSP while the run grows.
    pub online_filtering: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            unfold: 2,
            online_filtering: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Box<Witness>),
    Unsat,
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Sat(w) => Some(w),
            Outcome::Unsat => None,
        }
    }
}

fn outcome(w: Option<Witness>) -> Outcome {
    match w {
        Some(w) => Outcome::Sat(Box::new(w)),
        None => Outcome::Unsat,
    }
}

/// Satisfiability without a concrete domain; atemporal content is an error.
pub fn mtalc_satisfiable(pt: &PreparedTBox, options: &SearchOptions) -> Result<Outcome, EngineError> {
    run::Search::new(pt, None, *options).run().map(outcome)
}

/// Satisfiability with atemporal parts decided over `domain`.
pub fn mtalcd_satisfiable(
    pt: &PreparedTBox,
    domain: &dyn AdmissibleDomain,
    options: &SearchOptions,
) -> Result<Outcome, EngineError> {
    let alcd = AlcdReasoner::new(&pt.tbox, domain).map_err(|_| EngineError::CyclicAtemporal)?;
    run::Search::new(pt, Some(alcd), *options).run().map(outcome)
}

/// Prepares and decides `c` w.r.t. `tbox`.
pub fn satisfiable(
    c: &Concept,
    tbox: &TBox,
    calculus: Calculus,
    domain: &dyn AdmissibleDomain,
    options: &SearchOptions,
) -> Result<Outcome, EngineError> {
    let pt = prepare(tbox, c, calculus)?;
    mtalcd_satisfiable(&pt, domain, options)
}


/// Whether `c` subsumes `d`, i.e. `d ⊓ ¬c` is unsatisfiable.
pub fn subsumes(
    c: &Concept,
    d: &Concept,
    tbox: &TBox,
    calculus: Calculus,
    domain: &dyn AdmissibleDomain,
    options: &SearchOptions,
) -> Result<bool, EngineError> {
    if let (Some(a), Some(b)) = (c.sort(), d.sort()) {
        if a != b {
            return Err(EngineError::SortMismatch);
        }
    }
    let test = Concept::and([d.clone(), negate(c)]);
    Ok(!satisfiable(&test, tbox, calculus, domain, options)?.is_sat())
}
