//! ALC(D) reasoning: admissible concrete domains and a completion tableau.

mod domain;
mod tableau;

pub use domain::{rational_satisfiable, AdmissibleDomain, DomainAtom, RationalOrderDomain};
pub use tableau::{alcd_satisfiable, AlcdReasoner, Completion, CompletionNode};
