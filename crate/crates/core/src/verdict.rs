//! Structured outcomes of every check in the crate.

use std::fmt;

use serde::Serialize;

use crate::graphs::HullSignature;
use crate::sign::SignVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    C0,
    C1,
    C2,
    C3,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A violated cocircuit axiom together with its witness.
///
/// `C0` carries no vectors (the zero vector is the witness), `C1` the member whose negation is
/// missing, `C2` the pair `(X, Y)` with `supp X ⊆ supp Y`, and `C3` the pair `(X, Y)` plus the
/// element `e ∈ S(X, Y)` that no member eliminates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub vectors: Vec<SignVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Axiom(AxiomViolation),
    /// No crabbed path between two cocircuits `X ≠ ±Y`.
    NoCrabbedPath {
        x: SignVector,
        y: SignVector,
    },
    /// A crabbed hull whose vertex connectivity is below `h(X1 ∘ … ∘ Xk) - 1`.
    HullConnectivity {
        generators: Vec<SignVector>,
        signature: HullSignature,
        connectivity: usize,
        target: usize,
    },
    /// No crabbed path between two topes in the tope graph.
    NoTopePath {
        s: SignVector,
        t: SignVector,
    },
    /// A tope whose cocircuit subgraph is not `(r - 1)`-connected.
    TopeSubgraph {
        tope: SignVector,
        connectivity: usize,
        target: usize,
    },
    /// A hull generator whose degree inside the hull differs from `h - 1`.
    NeighborCount {
        generators: Vec<SignVector>,
        vertex: SignVector,
        degree: usize,
        target: usize,
    },
    /// `r(M / U0) ≠ h(U)`.
    ContractionRank {
        covector: SignVector,
        contraction_rank: usize,
        height: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Axiom(v) => {
                write!(f, "axiom {} violated", v.axiom)?;
                if !v.vectors.is_empty() {
                    let vs: Vec<String> = v.vectors.iter().map(|x| x.to_string()).collect();
                    write!(f, " by {}", vs.join(", "))?;
                }
                if let Some(label) = &v.element_label {
                    write!(f, " at element {label}")?;
                }
                if v.axiom == Axiom::C0 {
                    write!(f, " (zero vector is a member)")?;
                }
                Ok(())
            }
            Violation::NoCrabbedPath { x, y } => write!(f, "no crabbed path between {x} and {y}"),
            Violation::HullConnectivity { generators, connectivity, target, .. } => {
                let gs: Vec<String> = generators.iter().map(|x| x.to_string()).collect();
                write!(f, "hull of [{}] has connectivity {connectivity} < {target}", gs.join(", "))
            }
            Violation::NoTopePath { s, t } => write!(f, "no crabbed tope path between {s} and {t}"),
            Violation::TopeSubgraph { tope, connectivity, target } => {
                write!(f, "tope {tope}: subgraph connectivity {connectivity} < {target}")
            }
            Violation::NeighborCount { generators, vertex, degree, target } => {
                let gs: Vec<String> = generators.iter().map(|x| x.to_string()).collect();
                write!(f, "{vertex} has {degree} neighbors in hull of [{}], expected {target}", gs.join(", "))
            }
            Violation::ContractionRank { covector, contraction_rank, height } => {
                write!(f, "covector {covector}: contraction rank {contraction_rank} != height {height}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass {
        #[serde(skip_serializing_if = "Vec::is_empty")]
        warnings: Vec<String>,
    },
    Fail {
        violation: Violation,
    },
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict::Pass { warnings: Vec::new() }
    }

    pub fn pass_with_warning(warning: impl Into<String>) -> Self {
        Verdict::Pass { warnings: vec![warning.into()] }
    }

    pub fn fail(violation: Violation) -> Self {
        Verdict::Fail { violation }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass { .. } => None,
            Verdict::Fail { violation } => Some(violation),
        }
    }

    pub fn warnings(&self) -> &[String] {
        match self {
            Verdict::Pass { warnings } => warnings,
            Verdict::Fail { .. } => &[],
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { warnings } if warnings.is_empty() => write!(f, "pass"),
            Verdict::Pass { warnings } => write!(f, "pass (warning: {})", warnings.join("; ")),
            Verdict::Fail { violation } => write!(f, "fail: {violation}"),
        }
    }
}
