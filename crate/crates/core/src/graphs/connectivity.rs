//! Exact vertex connectivity via Menger's theorem: unit-capacity max flow on the vertex-split
//! digraph, minimized over the pair set of Esfahanian and Hakimi.

use std::collections::VecDeque;

struct FlowNetwork {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

const NONE: usize = usize::MAX;

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![NONE; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        for (a, b, c) in [(from, to, cap), (to, from, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Augments along shortest paths until `limit` units flow or no path remains.
    fn max_flow(&mut self, source: usize, sink: usize, limit: usize) -> usize {
        let nodes = self.head.len();
        let mut flow = 0;
        let mut via = vec![NONE; nodes];
        let mut queue = VecDeque::new();
        while flow < limit {
            via.iter_mut().for_each(|p| *p = NONE);
            queue.clear();
            queue.push_back(source);
            let mut reached = false;
            'bfs: while let Some(u) = queue.pop_front() {
                let mut arc = self.head[u];
                while arc != NONE {
                    let v = self.to[arc];
                    if self.cap[arc] > 0 && v != source && via[v] == NONE {
                        via[v] = arc;
                        if v == sink {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                    arc = self.next[arc];
                }
            }
            if !reached {
                break;
            }
            let mut v = sink;
            while v != source {
                let arc = via[v];
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                v = self.to[arc ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths for nonadjacent `s ≠ t`, capped at
/// `limit`.
pub fn local_connectivity(adjacency: &[Vec<usize>], s: usize, t: usize, limit: usize) -> usize {
    debug_assert!(s != t && !adjacency[s].contains(&t));
    let m = adjacency.len();
    let big = m as u32 + 1;
    // Vertex v becomes in-node 2v and out-node 2v + 1.
    let mut net = FlowNetwork::new(2 * m);
    for (v, neighbors) in adjacency.iter().enumerate() {
        let cap = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, cap);
        for &w in neighbors {
            net.add_arc(2 * v + 1, 2 * w, big);
        }
    }
    net.max_flow(2 * s + 1, 2 * t, limit)
}

/// Vertex connectivity of a simple undirected graph given by sorted adjacency lists.
///
/// Take a vertex `v` of minimum degree. Some minimum separator either avoids `v`, and then
/// separates `v` from a non-neighbor, or contains `v`, and then separates two non-adjacent
/// neighbors of `v`. Complete graphs have no separator and get `m - 1`.
pub fn vertex_connectivity_of(adjacency: &[Vec<usize>]) -> usize {
    let m = adjacency.len();
    if m <= 1 {
        return 0;
    }
    let v = (0..m).min_by_key(|&i| (adjacency[i].len(), i)).unwrap();
    let mut best = adjacency[v].len();
    if best == m - 1 && (0..m).all(|i| adjacency[i].len() == m - 1) {
        return m - 1;
    }
    let mut is_neighbor = vec![false; m];
    for &w in &adjacency[v] {
        is_neighbor[w] = true;
    }
    for (w, &adjacent) in is_neighbor.iter().enumerate() {
        if best == 0 {
            return 0;
        }
        if w != v && !adjacent {
            best = best.min(local_connectivity(adjacency, v, w, best));
        }
    }
    let neighbors = &adjacency[v];
    for (i, &x) in neighbors.iter().enumerate() {
        for &y in &neighbors[i + 1..] {
            if best == 0 {
                return 0;
            }
            if adjacency[x].binary_search(&y).is_err() {
                best = best.min(local_connectivity(adjacency, x, y, best));
            }
        }
    }
    best
}
