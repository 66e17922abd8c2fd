//! Deterministic DOT and CSV serializations of materialized commuting
//! graphs. Node identifiers are the canonical vertex codes; labels are the
//! row-major matrix body.

use std::fmt::Write as _;

use crate::error::Error;
use crate::graph::CommutingGraph;
use crate::Result;

/// DOT output is capped at this many vertices.
pub const DOT_VERTEX_CAP: usize = 10_000;

/// Undirected DOT document with one node line per vertex and one edge line
/// per undirected edge (codes ascending within and across lines).
pub fn export_dot(graph: &CommutingGraph) -> Result<String> {
    if graph.vertex_count() > DOT_VERTEX_CAP {
        return Err(Error::Budget(format!(
            "{} vertices exceed the DOT cap {DOT_VERTEX_CAP}; export CSV instead",
            graph.vertex_count()
        )));
    }
    let edges = graph.edges()?;
    let codes = graph.vertex_codes();
    let mut out = String::from("graph commuting {\n");
    for (i, &code) in codes.iter().enumerate() {
        let label = graph.vertex_matrix(i).body_string();
        writeln!(out, "  {code} [label=\"{label}\"];").expect("string write");
    }
    for (i, j) in edges {
        writeln!(out, "  {} -- {};", codes[i], codes[j]).expect("string write");
    }
    out.push_str("}\n");
    Ok(out)
}

/// CSV edge list: header `u,v`, one undirected edge per line with u < v by
/// canonical code, lines ascending.
pub fn export_csv(graph: &CommutingGraph) -> Result<String> {
    let edges = graph.edges()?;
    let codes = graph.vertex_codes();
    let mut out = String::from("u,v\n");
    for (i, j) in edges {
        writeln!(out, "{},{}", codes[i], codes[j]).expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BuildMode, GraphBudget};
    use crate::semiring::boolean;

    fn boolean_graph(n: usize) -> CommutingGraph {
        CommutingGraph::build(boolean(), n, BuildMode::Materialized, &GraphBudget::default())
            .unwrap()
    }

    #[test]
    fn dot_has_one_node_line_per_vertex() {
        let g = boolean_graph(2);
        let dot = export_dot(&g).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 14);
        assert!(dot.starts_with("graph commuting {\n"));
        assert!(dot.ends_with("}\n"));
        // Node ids are matrix codes, so the unit matrix E_{2,2} (code 1)
        // appears with its body.
        assert!(dot.contains("  1 [label=\"0 0; 0 1\"];"));
    }

    #[test]
    fn csv_lists_each_edge_once_ascending() {
        let g = boolean_graph(2);
        let csv = export_csv(&g).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("u,v"));
        let mut prev = (0u64, 0u64);
        let mut count = 0;
        for line in lines {
            let (u, v) = line.split_once(',').unwrap();
            let pair: (u64, u64) = (u.parse().unwrap(), v.parse().unwrap());
            assert!(pair.0 < pair.1);
            assert!(pair > prev);
            prev = pair;
            count += 1;
        }
        assert_eq!(count, g.edges().unwrap().len());
    }

    #[test]
    fn exports_are_deterministic() {
        let a = export_dot(&boolean_graph(2)).unwrap();
        let b = export_dot(&boolean_graph(2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_graph_exports_header_only() {
        let g = boolean_graph(1);
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(export_csv(&g).unwrap(), "u,v\n");
        assert_eq!(export_dot(&g).unwrap(), "graph commuting {\n}\n");
    }
}
