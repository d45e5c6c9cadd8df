//! Recognizing cocircuit sets of oriented matroids.
//!
//! A [`SignSystem`] is a finite set of sign vectors over a ground set of at most 64 elements.
//! [`axioms`] checks the cocircuit axioms directly. [`lattice`] closes a system under composition
//! and ranks the resulting face lattice. [`graphs`] builds cocircuit and tope graphs and searches
//! them for crabbed paths, and [`verify`] turns the graph characterization into checks that can be
//! compared against the axioms. [`generators`] produces realizable systems from integer matrices
//! and perturbs them.
//!
//! ```
//! use cocircuit::{axioms, verify, SignSystem};
//!
//! let sys = SignSystem::from_strs(&["0++", "0--", "+0+", "-0-", "+-0", "-+0"]).unwrap();
//! assert!(axioms::check_all(&sys).is_pass());
//! let iii = verify::check_condition_iii(&sys, &Default::default()).unwrap();
//! assert!(iii.verdict.is_pass());
//! ```

pub mod axioms;
pub mod error;
pub mod generators;
pub mod graphs;
pub mod lattice;
pub mod sign;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use graphs::{GraphKind, HullSignature, SignedGraph};
pub use lattice::{Budget, FaceLattice, Tope};
pub use sign::{ElementSet, GroundSet, Sign, SignSystem, SignVector};
pub use verdict::{Axiom, Verdict, Violation};
