//! Concept language: syntax, parsing, TBoxes, normal forms.

mod dnf;
mod nnf;
mod parser;
mod signature;
mod syntax;
mod tbox;

pub use dnf::{dnf2, finalize, product, raw_dnf, DnfElement, RawElement};
pub use nnf::{negate, nnf, undefined};
pub use parser::{parse, parse_concept, Directive, Document, ParseError};
pub use signature::{role_counts, NameKind, Signature};
pub use syntax::{Chain, Concept, Predicate, Role, RoleKind, Sort};
pub use tbox::{name_subconcepts, validate, Axiom, Classification, TBox};
