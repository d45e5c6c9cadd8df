use std::fmt::Write;

use serde::Serialize;

use super::{GraphKind, SignedGraph};
use crate::sign::SignVector;

/// Canonical serializable form of a [`SignedGraph`]: vertices in canonical order, each with its
/// sorted neighbor list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphExport {
    pub kind: GraphKind,
    pub ground: Vec<String>,
    pub vertices: Vec<SignVector>,
    pub edge_count: usize,
    pub adjacency: Vec<Vec<usize>>,
}

impl GraphExport {
    pub fn from_graph(graph: &SignedGraph) -> Self {
        GraphExport {
            kind: graph.kind(),
            ground: graph.ground().labels().to_vec(),
            vertices: graph.vertices().to_vec(),
            edge_count: graph.edge_count(),
            adjacency: graph.adjacency().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph export is always serializable")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "graph {} {{", self.kind).unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [label=\"{v}\"];").unwrap();
        }
        for (a, list) in self.adjacency.iter().enumerate() {
            for &b in list.iter().filter(|&&b| b > a) {
                writeln!(out, "  v{a} -- v{b};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    /// One line per vertex: index, sign vector, neighbor indices.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {} graph: {} vertices, {} edges", self.kind, self.vertices.len(), self.edge_count).unwrap();
        for (i, v) in self.vertices.iter().enumerate() {
            let ns: Vec<String> = self.adjacency[i].iter().map(|j| j.to_string()).collect();
            writeln!(out, "{i}\t{v}\t{}", ns.join(",")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::graphs::cocircuit_graph;
    use crate::lattice::{Budget, FaceLattice};
    use crate::sign::SignSystem;

    #[test]
    fn u23_dot_is_canonical() {
        let sys = SignSystem::from_strs(&["0++", "0--", "+0+", "-0-", "+-0", "-+0"]).unwrap();
        let g = cocircuit_graph(&FaceLattice::build(&sys, &Budget::default()).unwrap());
        let dot = g.export().to_dot();
        let expected = "graph cocircuit {
  v0 [label=\"+0+\"];
  v1 [label=\"+-0\"];
  v2 [label=\"0++\"];
  v3 [label=\"0--\"];
  v4 [label=\"-+0\"];
  v5 [label=\"-0-\"];
  v0 -- v1;
  v0 -- v2;
  v1 -- v3;
  v2 -- v4;
  v3 -- v5;
  v4 -- v5;
}
";
        assert_eq!(dot, expected);
        let json: serde_json::Value = serde_json::from_str(&g.export().to_json()).unwrap();
        assert_eq!(json["edge_count"], 6);
        assert_eq!(json["vertices"][0], "+0+");
        assert_eq!(json["adjacency"][0], serde_json::json!([1, 2]));
    }
}
