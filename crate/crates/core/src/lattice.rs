//! Composition closure, the big face lattice and contraction minors.
//!
//! The covectors `L(C*)` are all finite compositions of members of `C*` (including the empty
//! composition, the zero vector). Ordered conformally and topped with an artificial maximum `1̂`
//! they form the big face lattice. Heights are longest-chain lengths from the zero vector, so they
//! stay meaningful for candidate systems whose lattice is not graded.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sign::{ElementSet, GroundSet, SignSystem, SignVector};
use crate::verdict::{Verdict, Violation};

pub const DEFAULT_MAX_COVECTORS: usize = 200_000;

/// Limits on closure computations, which are exponential in the worst case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_covectors: usize,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_covectors: DEFAULT_MAX_COVECTORS, time_limit: None }
    }
}

impl Budget {
    pub fn with_max_covectors(max_covectors: usize) -> Self {
        Budget { max_covectors, ..Budget::default() }
    }
}

/// The set of all finite compositions of members of `system`, zero vector included.
///
/// Every composition is a left fold, so breadth-first right-composition with the generators from
/// the zero vector reaches all of them.
pub fn closure(system: &SignSystem, budget: &Budget) -> Result<SignSystem> {
    if budget.max_covectors == 0 {
        return Err(Error::Parameter("covector budget must be positive".into()));
    }
    let start = Instant::now();
    let zero = SignVector::zero(system.ground_size());
    let mut seen: HashSet<SignVector> = HashSet::from([zero]);
    let mut queue = VecDeque::from([zero]);
    while let Some(v) = queue.pop_front() {
        for x in system {
            let w = v.compose_unchecked(x);
            if seen.insert(w) {
                if seen.len() > budget.max_covectors {
                    return Err(Error::Budget(format!("closure exceeds the covector cap of {}", budget.max_covectors)));
                }
                if seen.len().is_multiple_of(1024) {
                    check_time(start, budget)?;
                }
                queue.push_back(w);
            }
        }
    }
    let mut members: Vec<SignVector> = seen.into_iter().collect();
    members.sort_unstable();
    Ok(SignSystem::from_sorted_unchecked(system.ground().clone(), members))
}

fn check_time(start: Instant, budget: &Budget) -> Result<()> {
    match budget.time_limit {
        Some(limit) if start.elapsed() > limit => {
            Err(Error::Budget(format!("closure exceeds the time limit of {:?}", limit)))
        }
        _ => Ok(()),
    }
}

/// A coatom of the big face lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Tope(SignVector);

impl Tope {
    pub fn vector(&self) -> &SignVector {
        &self.0
    }
}

/// `L(C*) ∪ {1̂}` with its cover relation, heights and grading data.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    base: SignSystem,
    covectors: SignSystem,
    index: HashMap<SignVector, usize>,
    heights: Vec<usize>,
    lower_covers: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    coatoms: Vec<usize>,
    graded: bool,
    top_rank: usize,
}

impl FaceLattice {
    pub fn build(system: &SignSystem, budget: &Budget) -> Result<Self> {
        let covectors = closure(system, budget)?;
        Ok(Self::from_covectors(system.clone(), covectors))
    }

    fn from_covectors(base: SignSystem, covectors: SignSystem) -> Self {
        let vs = covectors.members();
        let n = vs.len();
        let index: HashMap<SignVector, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();

        // Strictly smaller elements have strictly smaller support.
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&i| (vs[i].support_size(), i));

        let mut lower_covers = vec![Vec::new(); n];
        let mut below: Vec<usize> = Vec::new();
        for (pos, &x) in by_size.iter().enumerate() {
            let size = vs[x].support_size();
            below.clear();
            below.extend(
                by_size[..pos].iter().copied().filter(|&y| vs[y].support_size() < size && vs[y].leq_unchecked(&vs[x])),
            );
            // Largest first: anything below a found cover is not itself a cover.
            below.sort_by_key(|&y| (std::cmp::Reverse(vs[y].support_size()), y));
            let mut covers: Vec<usize> = Vec::new();
            for &y in &below {
                if !covers.iter().any(|&c| vs[y].leq_unchecked(&vs[c])) {
                    covers.push(y);
                }
            }
            covers.sort_unstable();
            lower_covers[x] = covers;
        }

        let mut heights = vec![0usize; n];
        let mut shortest = vec![0usize; n];
        for &x in &by_size {
            if let Some(longest) = lower_covers[x].iter().map(|&y| heights[y]).max() {
                heights[x] = longest + 1;
                shortest[x] = lower_covers[x].iter().map(|&y| shortest[y]).min().unwrap() + 1;
            }
        }

        let mut is_covered = vec![false; n];
        for covers in &lower_covers {
            for &y in covers {
                is_covered[y] = true;
            }
        }
        let coatoms: Vec<usize> = (0..n).filter(|&i| !is_covered[i]).collect();
        let atoms: Vec<usize> =
            (0..n).filter(|&i| !vs[i].is_zero() && lower_covers[i].iter().all(|&y| vs[y].is_zero())).collect();

        let top_rank = 1 + coatoms.iter().map(|&i| heights[i]).max().unwrap_or(0);
        let graded = heights == shortest && coatoms.iter().all(|&i| heights[i] + 1 == top_rank);

        FaceLattice { base, covectors, index, heights, lower_covers, atoms, coatoms, graded, top_rank }
    }

    /// The generating system `C*`.
    pub fn base(&self) -> &SignSystem {
        &self.base
    }

    pub fn covectors(&self) -> &SignSystem {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn index_of(&self, v: &SignVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.index.contains_key(v)
    }

    /// Longest-chain length from the zero vector; the rank function `h` when graded.
    pub fn height(&self, v: &SignVector) -> Option<usize> {
        self.index_of(v).map(|i| self.heights[i])
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Height assigned to `1̂`.
    pub fn top_rank(&self) -> usize {
        self.top_rank
    }

    /// `r(M) = h(1̂) - 1`.
    pub fn rank(&self) -> Result<usize> {
        if self.graded {
            Ok(self.top_rank - 1)
        } else {
            Err(Error::NotGraded)
        }
    }

    /// Minimal nonzero covectors.
    pub fn atoms(&self) -> SignSystem {
        let members = self.atoms.iter().map(|&i| self.covectors.members()[i]).collect();
        SignSystem::from_sorted_unchecked(self.covectors.ground().clone(), members)
    }

    /// Covectors covered only by `1̂`.
    pub fn topes(&self) -> Vec<Tope> {
        self.coatoms.iter().map(|&i| Tope(self.covectors.members()[i])).collect()
    }

    pub fn tope(&self, v: &SignVector) -> Result<Tope> {
        match self.index_of(v) {
            Some(i) if self.coatoms.binary_search(&i).is_ok() => Ok(Tope(*v)),
            _ => Err(Error::NotTope(v.to_string())),
        }
    }

    /// Cover relations as `(lower, upper)` index pairs; the index `len()` stands for `1̂`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> =
            self.lower_covers.iter().enumerate().flat_map(|(x, covers)| covers.iter().map(move |&y| (y, x))).collect();
        edges.extend(self.coatoms.iter().map(|&c| (c, self.len())));
        edges.sort_unstable();
        edges
    }

    /// Checks by brute force that every pair of elements has a least upper bound in `L ∪ {1̂}`.
    /// Returns the first pair without one.
    pub fn missing_join(&self) -> Option<(SignVector, SignVector)> {
        let vs = self.covectors.members();
        for (a, va) in vs.iter().enumerate() {
            for (b, vb) in vs.iter().enumerate().skip(a + 1) {
                let uppers: Vec<usize> =
                    (0..vs.len()).filter(|&c| va.leq_unchecked(&vs[c]) && vb.leq_unchecked(&vs[c])).collect();
                if uppers.is_empty() {
                    continue;
                }
                let least = uppers.iter().any(|&u| uppers.iter().all(|&c| vs[u].leq_unchecked(&vs[c])));
                if !least {
                    return Some((vs[a], vs[b]));
                }
            }
        }
        None
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            ground: self.covectors.ground().labels().to_vec(),
            covectors: self.covectors.members().to_vec(),
            heights: self.heights.clone(),
            top_rank: self.top_rank,
            graded: self.graded,
            rank: self.rank().ok(),
            hasse: self.hasse_edges(),
        }
    }
}

/// Serializable view of a face lattice. In `hasse`, the index `covectors.len()` denotes `1̂`.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeExport {
    pub ground: Vec<String>,
    pub covectors: Vec<SignVector>,
    pub heights: Vec<usize>,
    pub top_rank: usize,
    pub graded: bool,
    pub rank: Option<usize>,
    pub hasse: Vec<(usize, usize)>,
}

/// `C*/A` with its ground-set bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub system: SignSystem,
    /// `kept[i]` is the original index of element `i` of the contracted ground set.
    pub kept: Vec<usize>,
}

/// `C*/A = { X \ A : X ∈ C*, A ⊆ X0 }`, re-indexed densely on `E \ A`.
pub fn contract(system: &SignSystem, elements: ElementSet) -> Result<Contraction> {
    let n = system.ground_size();
    if !elements.is_subset(ElementSet::full(n)) {
        return Err(Error::Parameter(format!("contraction set is not a subset of the {n}-element ground set")));
    }
    let keep = ElementSet::full(n).difference(elements);
    let members = system.iter().filter(|x| elements.is_subset(x.zero_support())).map(|x| x.restrict(keep));
    let ground = GroundSet::default_labels(keep.len());
    let system = SignSystem::new(ground, members)?;
    Ok(Contraction { system, kept: keep.iter().collect() })
}

/// Compares `r(M / U0)` with `h(U)` for a covector `U`.
pub fn contraction_rank_identity(lattice: &FaceLattice, covector: &SignVector, budget: &Budget) -> Result<Verdict> {
    let height = lattice.height(covector).ok_or_else(|| Error::NotCovector(covector.to_string()))?;
    let minor = contract(lattice.base(), covector.zero_support())?;
    let contraction_rank = FaceLattice::build(&minor.system, budget)?.rank()?;
    if contraction_rank == height {
        Ok(Verdict::pass())
    } else {
        Ok(Verdict::fail(Violation::ContractionRank { covector: *covector, contraction_rank, height }))
    }
}
