//! Graphs on the atoms and coatoms of the big face lattice, crabbed hulls and crabbed paths.

mod connectivity;
mod export;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{FaceLattice, Tope};
use crate::sign::{low_mask, GroundSet, Sign, SignSystem, SignVector};

pub use connectivity::{local_connectivity, vertex_connectivity_of};
pub use export::GraphExport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Cocircuit,
    Tope,
    Induced,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Cocircuit => "cocircuit",
            GraphKind::Tope => "tope",
            GraphKind::Induced => "induced",
        })
    }
}

/// An undirected simple graph whose vertices are sign vectors, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    ground: GroundSet,
    vertices: Vec<SignVector>,
    adjacency: Vec<Vec<usize>>,
    kind: GraphKind,
}

impl SignedGraph {
    /// Builds a graph from canonically sorted vertices and an edge list. Loops and duplicate edges
    /// are rejected.
    pub fn new(
        vertices: &SignSystem,
        edges: impl IntoIterator<Item = (usize, usize)>,
        kind: GraphKind,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Parameter(format!("invalid edge ({a}, {b}) on {n} vertices")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::Parameter("duplicate edge".into()));
            }
        }
        Ok(SignedGraph { ground: vertices.ground().clone(), vertices: vertices.members().to_vec(), adjacency, kind })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn vertices(&self) -> &[SignVector] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, v: &SignVector) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Subgraph induced by the vertices satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(&SignVector) -> bool) -> SignedGraph {
        let mut map = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep(v) {
                map[i] = vertices.len();
                vertices.push(*v);
            }
        }
        let adjacency = self
            .adjacency
            .iter()
            .enumerate()
            .filter(|(i, _)| map[*i] != usize::MAX)
            .map(|(_, list)| list.iter().filter(|&&j| map[j] != usize::MAX).map(|&j| map[j]).collect())
            .collect();
        SignedGraph { ground: self.ground.clone(), vertices, adjacency, kind: GraphKind::Induced }
    }

    /// `X ↦ -X` applied to every vertex, re-sorted canonically.
    pub fn negated(&self) -> SignedGraph {
        let negated: Vec<SignVector> = self.vertices.iter().map(SignVector::negate).collect();
        let mut order: Vec<usize> = (0..negated.len()).collect();
        order.sort_by_key(|&i| negated[i]);
        let mut position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let vertices = order.iter().map(|&i| negated[i]).collect();
        let mut adjacency = vec![Vec::new(); order.len()];
        for (old, list) in self.adjacency.iter().enumerate() {
            let mut mapped: Vec<usize> = list.iter().map(|&j| position[j]).collect();
            mapped.sort_unstable();
            adjacency[position[old]] = mapped;
        }
        SignedGraph { ground: self.ground.clone(), vertices, adjacency, kind: self.kind }
    }

    /// Vertex connectivity κ: the fewest vertices whose removal disconnects the graph or leaves a
    /// single vertex. `κ(K_m) = m - 1`; disconnected, single-vertex and empty graphs give 0.
    pub fn vertex_connectivity(&self) -> usize {
        if self.vertices.is_empty() {
            log::warn!("vertex connectivity of the empty graph taken as 0");
        }
        vertex_connectivity_of(&self.adjacency)
    }

    pub fn export(&self) -> GraphExport {
        GraphExport::from_graph(self)
    }
}

/// Cocircuit graph `G(C*)`: vertices are the atoms of the face lattice, and `X, Y` are adjacent
/// iff some element of `L ∪ {1̂}` has exactly `X` and `Y` as the atoms below it.
pub fn cocircuit_graph(lattice: &FaceLattice) -> SignedGraph {
    let atoms = lattice.atoms();
    let members = atoms.members();
    let mut edges = Vec::new();
    for z in lattice.covectors() {
        let mut below = members.iter().enumerate().filter(|(_, x)| x.leq_unchecked(z)).map(|(i, _)| i);
        if let (Some(a), Some(b), None) = (below.next(), below.next(), below.next()) {
            edges.push((a, b));
        }
    }
    // 1̂ lies above every atom.
    if members.len() == 2 {
        edges.push((0, 1));
    }
    edges.sort_unstable();
    edges.dedup();
    SignedGraph::new(&atoms, edges, GraphKind::Cocircuit).expect("edges come from valid atom pairs")
}

/// Tope graph `G(T)`: topes `S, T` are adjacent iff some covector has exactly `S` and `T` as the
/// topes above it.
pub fn tope_graph(lattice: &FaceLattice) -> SignedGraph {
    let topes: Vec<SignVector> = lattice.topes().iter().map(|t| *t.vector()).collect();
    let vertices = SignSystem::from_sorted_unchecked(lattice.covectors().ground().clone(), topes);
    let members = vertices.members();
    let mut edges = Vec::new();
    for z in lattice.covectors() {
        let mut above = members.iter().enumerate().filter(|(_, t)| z.leq_unchecked(t)).map(|(i, _)| i);
        if let (Some(a), Some(b), None) = (above.next(), above.next(), above.next()) {
            edges.push((a, b));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    SignedGraph::new(&vertices, edges, GraphKind::Tope).expect("edges come from valid tope pairs")
}

/// Per-element allowed signs of a crabbed hull: `Z` belongs to `[X1, …, Xk]` iff
/// `Z(e) ∈ {0, X1(e), …, Xk(e)}` for every `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HullSignature {
    len: u8,
    plus: u64,
    minus: u64,
}

impl HullSignature {
    pub fn from_vectors<'a, I>(vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SignVector>,
    {
        let mut iter = vectors.into_iter();
        let first = iter.next().ok_or(Error::EmptyTuple)?;
        let mut sig = HullSignature { len: first.len() as u8, plus: first.plus_bits(), minus: first.minus_bits() };
        for v in iter {
            if v.len() != first.len() {
                return Err(Error::GroundMismatch { left: first.len(), right: v.len() });
            }
            sig.plus |= v.plus_bits();
            sig.minus |= v.minus_bits();
        }
        Ok(sig)
    }

    pub(crate) fn extend(&mut self, v: &SignVector) {
        self.plus |= v.plus_bits();
        self.minus |= v.minus_bits();
    }

    pub(crate) fn of(v: &SignVector) -> Self {
        HullSignature { len: v.len() as u8, plus: v.plus_bits(), minus: v.minus_bits() }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Nonzero signs allowed at `e`.
    pub fn allowed(&self, e: usize) -> Vec<Sign> {
        let mut out = Vec::new();
        if self.plus >> e & 1 == 1 {
            out.push(Sign::Plus);
        }
        if self.minus >> e & 1 == 1 {
            out.push(Sign::Minus);
        }
        out
    }

    pub fn admits(&self, z: &SignVector) -> bool {
        z.plus_bits() & !self.plus == 0 && z.minus_bits() & !self.minus == 0
    }

    /// Elements where no generator is nonzero; the zero-support of any composition of the
    /// generators.
    pub fn zero_elements(&self) -> crate::sign::ElementSet {
        crate::sign::ElementSet::from_bits(low_mask(self.len()) & !(self.plus | self.minus))
    }
}

/// One character per element: `0` (only zero allowed), `+`, `-`, or `*` (both signs).
impl fmt::Display for HullSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..self.len() {
            let c = match (self.plus >> e & 1, self.minus >> e & 1) {
                (1, 1) => '*',
                (1, 0) => '+',
                (0, 1) => '-',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Serialize for HullSignature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The crabbed hull: subgraph of `graph` induced by the vertices admitted by `signature`.
pub fn crabbed_hull(graph: &SignedGraph, signature: &HullSignature) -> SignedGraph {
    graph.induced(|z| signature.admits(z))
}

/// Tests whether `x` and `y` are joined by a path inside their crabbed hull `[x, y]`.
pub fn crabbed_path_exists(graph: &SignedGraph, x: &SignVector, y: &SignVector) -> Result<bool> {
    let xi = graph.index_of(x).ok_or_else(|| Error::NotVertex(x.to_string()))?;
    let yi = graph.index_of(y).ok_or_else(|| Error::NotVertex(y.to_string()))?;
    Ok(CrabbedSearch::new(graph).run(xi, yi))
}

/// Reusable breadth-first search restricted to a crabbed hull. The hull is never materialized;
/// vertices are tested for membership as the search reaches them. Work is tallied in
/// [`CrabbedSearch::cost`]: one unit per edge relaxation and one per membership test.
pub struct CrabbedSearch<'g> {
    graph: &'g SignedGraph,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
    pub cost: u64,
}

impl<'g> CrabbedSearch<'g> {
    pub fn new(graph: &'g SignedGraph) -> Self {
        CrabbedSearch { graph, stamp: vec![0; graph.vertex_count()], epoch: 0, queue: Vec::new(), cost: 0 }
    }

    /// Searches for a path from vertex `x` to vertex `y` inside `[x, y]`.
    pub fn run(&mut self, x: usize, y: usize) -> bool {
        let vs = self.graph.vertices();
        let sig = HullSignature::from_vectors([&vs[x], &vs[y]]).expect("vertices share a ground set");
        self.run_with(x, y, &sig)
    }

    /// Searches for a path from `x` to `y` inside the hull given by `sig`.
    pub fn run_with(&mut self, x: usize, y: usize, sig: &HullSignature) -> bool {
        if x == y {
            return true;
        }
        self.epoch += 1;
        // stamp == epoch: seen (in or out of the hull), decided by the membership test once.
        let epoch = self.epoch;
        let vs = self.graph.vertices();
        self.queue.clear();
        self.queue.push(x);
        self.stamp[x] = epoch;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &w in self.graph.neighbors(v) {
                self.cost += 1;
                if self.stamp[w] == epoch {
                    continue;
                }
                self.stamp[w] = epoch;
                self.cost += 1;
                if sig.admits(&vs[w]) {
                    if w == y {
                        return true;
                    }
                    self.queue.push(w);
                }
            }
        }
        false
    }
}

/// Subgraph of the cocircuit graph induced by `{ X : X ∘ U = U }`.
pub fn tope_subgraph(graph: &SignedGraph, tope: &Tope) -> SignedGraph {
    let u = tope.vector();
    graph.induced(|x| x.compose_unchecked(u) == *u)
}
