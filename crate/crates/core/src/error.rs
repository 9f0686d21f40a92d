use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("malformed relation `{0}`, expected a brace list such as {{TPP,NTPP}}")]
    Malformed(String),
    #[error("unknown calculus `{0}`, expected rcc8 or cyct")]
    UnknownCalculus(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("constraint has {found} variables, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("line {0}: malformed constraint `{1}`")]
    Dump(usize, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("unknown concrete-domain predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{predicate}` takes {expected} arguments, got {found}")]
    Arity {
        predicate: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtemporalError {
    #[error("`{0}` is not an atemporal concept")]
    Temporal(String),
    #[error("the atemporal part of the TBox is cyclic")]
    CyclicTBox,
    #[error("unknown concrete-domain predicate `{0}`")]
    UnknownPredicate(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("TBox rejected: {0}")]
    Rejected(String),
    #[error("the atemporal part of the TBox is not acyclic")]
    CyclicAtemporal,
    #[error("`{0}` is not a predicate of {1}")]
    Calculus(String, crate::algebra::Calculus),
    #[error("the two concepts have different sorts")]
    SortMismatch,
    #[error("atemporal concepts need a concrete domain")]
    NoDomain,
    #[error(transparent)]
    Atemporal(#[from] AtemporalError),
}
