//! Checkers for the cocircuit axioms (C0)–(C3).
//!
//! Every checker scans members in canonical order and reports the first violating tuple, so
//! witnesses are reproducible.

use crate::sign::{SignSystem, SignVector};
use crate::verdict::{Axiom, AxiomViolation, Verdict, Violation};

const EMPTY_SYSTEM_WARNING: &str = "empty system: accepted as the degenerate rank-0 oriented matroid";

fn violation(axiom: Axiom, vectors: Vec<SignVector>) -> Verdict {
    Verdict::fail(Violation::Axiom(AxiomViolation { axiom, vectors, element: None, element_label: None }))
}

/// (C0): the zero vector is not a member.
pub fn check_c0(system: &SignSystem) -> Verdict {
    if system.iter().any(SignVector::is_zero) {
        violation(Axiom::C0, Vec::new())
    } else {
        Verdict::pass()
    }
}

/// (C1): the system is closed under negation.
pub fn check_c1(system: &SignSystem) -> Verdict {
    match system.iter().find(|x| !system.contains(&x.negate())) {
        Some(x) => violation(Axiom::C1, vec![*x]),
        None => Verdict::pass(),
    }
}

/// (C2): no member's support is contained in another's unless they are equal up to sign.
pub fn check_c2(system: &SignSystem) -> Verdict {
    for x in system {
        let sx = x.support();
        for y in system {
            if x == y || *x == y.negate() {
                continue;
            }
            if sx.is_subset(y.support()) {
                return violation(Axiom::C2, vec![*x, *y]);
            }
        }
    }
    Verdict::pass()
}

/// Result of the naive (C3) scan together with its work counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C3Outcome {
    pub verdict: Verdict,
    /// Number of `(X, Y, e, Z)` membership tests performed.
    pub inspections: u64,
}

/// (C3) by the direct triple loop: for every ordered pair `X ≠ ±Y` and every `e ∈ S(X, Y)`, look
/// for `Z` with `Z(e) = 0`, `Z+ ⊆ X+ ∪ Y+` and `Z- ⊆ X- ∪ Y-`.
pub fn check_c3(system: &SignSystem) -> Verdict {
    check_c3_counted(system).verdict
}

pub fn check_c3_counted(system: &SignSystem) -> C3Outcome {
    let members = system.members();
    let mut inspections = 0u64;
    for x in members {
        for y in members {
            if x == y || *x == y.negate() {
                continue;
            }
            let plus = x.plus_bits() | y.plus_bits();
            let minus = x.minus_bits() | y.minus_bits();
            for e in x.separator_bits(y).iter_bits() {
                let bit = 1u64 << e;
                let mut found = false;
                for z in members {
                    inspections += 1;
                    if z.support_bits() & bit == 0 && z.plus_bits() & !plus == 0 && z.minus_bits() & !minus == 0 {
                        found = true;
                        break;
                    }
                }
                if !found {
                    let verdict = Verdict::fail(Violation::Axiom(AxiomViolation {
                        axiom: Axiom::C3,
                        vectors: vec![*x, *y],
                        element: Some(e),
                        element_label: Some(system.ground().label(e).to_string()),
                    }));
                    return C3Outcome { verdict, inspections };
                }
            }
        }
    }
    C3Outcome { verdict: Verdict::pass(), inspections }
}

/// (C0) through (C2), the hypothesis of the graph characterization.
pub fn check_c0_c2(system: &SignSystem) -> Verdict {
    for check in [check_c0, check_c1, check_c2] {
        let verdict = check(system);
        if !verdict.is_pass() {
            return verdict;
        }
    }
    Verdict::pass()
}

/// Runs (C0)–(C3) in order and returns the first violation. Passing means the system is the
/// cocircuit set of an oriented matroid.
pub fn check_all(system: &SignSystem) -> Verdict {
    check_all_counted(system).verdict
}

pub fn check_all_counted(system: &SignSystem) -> C3Outcome {
    let verdict = check_c0_c2(system);
    if !verdict.is_pass() {
        return C3Outcome { verdict, inspections: 0 };
    }
    let mut outcome = check_c3_counted(system);
    if system.is_empty() && outcome.verdict.is_pass() {
        outcome.verdict = Verdict::pass_with_warning(EMPTY_SYSTEM_WARNING);
    }
    outcome
}

trait IterBits {
    fn iter_bits(self) -> BitIter;
}

impl IterBits for u64 {
    fn iter_bits(self) -> BitIter {
        BitIter(self)
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }
}
