use serde::Serialize;

use crate::algebra::Calculus;

/// A satisfying run, as written by `--witness`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub schema: u32,
    pub calculus: Calculus,
    pub unfold: usize,
    pub init: String,
    pub nodes: Vec<WitnessNode>,
    pub edges: Vec<WitnessEdge>,
    pub back_edges: Vec<WitnessEdge>,
    pub variables: Vec<WitnessVariable>,
    /// One atom per constrained pair (RCC8) or triple (CYC_t) of variables.
    pub scenario: Vec<WitnessConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessNode {
    pub id: usize,
    pub label: Vec<WitnessMember>,
    pub element: WitnessElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessMember {
    pub concept: String,
    pub pending: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessElement {
    pub unfolded: Vec<String>,
    pub primitives: Vec<String>,
    pub csp: Vec<String>,
    pub atemporal: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEdge {
    pub from: usize,
    pub to: usize,
    pub direction: String,
}

/// `⟨node, feature⟩`; `node` is absent for padding below a cut loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessVariable {
    pub id: usize,
    pub node: Option<usize>,
    pub copy: usize,
    pub feature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessConstraint {
    pub vars: Vec<usize>,
    pub atom: String,
}

impl Witness {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }
}
