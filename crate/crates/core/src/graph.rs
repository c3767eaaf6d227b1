//! Correlation graphs: parameters as nodes, significant pairwise
//! correlations as weighted edges, with DOT export.

use crate::correlation::CorrelationMatrix;
use crate::error::{Error, Result};

/// One significant correlation between parameters `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphEdge {
    pub i: usize,
    pub j: usize,
    pub r: f64,
}

/// Snapshot graph at one anchor tick. Isolated nodes are kept.
#[derive(Debug, Clone)]
pub struct CorrelationGraph {
    pub anchor_t: i64,
    pub nodes: Vec<String>,
    pub edges: Vec<GraphEdge>,
}

/// Build the graph of pairs with |r_ij| ≥ r_sign, skipping degenerate
/// parameters. Edge order is (i, j) ascending, deterministic.
pub fn correlation_graph(
    matrix: &CorrelationMatrix,
    r_sign: f64,
    labels: &[String],
) -> Result<CorrelationGraph> {
    let n = matrix.n();
    if labels.len() != n {
        return Err(Error::Data(format!(
            "label count {} does not match matrix dimension {n}",
            labels.len()
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        if matrix.degenerate()[i] {
            continue;
        }
        for j in (i + 1)..n {
            if matrix.degenerate()[j] {
                continue;
            }
            let r = matrix.get(i, j);
            if r.abs() >= r_sign {
                edges.push(GraphEdge { i, j, r });
            }
        }
    }
    Ok(CorrelationGraph {
        anchor_t: matrix.anchor_t(),
        nodes: labels.to_vec(),
        edges,
    })
}

impl CorrelationGraph {
    /// Sum of |r| over edges; 2× this equals Σ_i G_i at the same threshold.
    pub fn edge_weight_sum(&self) -> f64 {
        self.edges.iter().map(|e| e.r.abs()).sum()
    }
}

/// Undirected DOT rendering, weights at 2 decimals.
pub fn dot_export(graph: &CorrelationGraph) -> String {
    let mut out = String::from("graph {\n");
    for label in &graph.nodes {
        out.push_str(&format!("  \"{}\";\n", escape(label)));
    }
    for e in &graph.edges {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [weight={:.2}];\n",
            escape(&graph.nodes[e.i]),
            escape(&graph.nodes[e.j]),
            e.r
        ));
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("p{}", i + 1)).collect()
    }

    #[test]
    fn identity_has_no_edges() {
        let m = CorrelationMatrix::from_entries(
            vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            3,
            vec![false; 3],
        )
        .unwrap();
        let g = correlation_graph(&m, 0.5, &labels(3)).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn threshold_enumeration() {
        let m = CorrelationMatrix::from_entries(
            vec![1.0, 0.9, 0.3, 0.9, 1.0, -0.6, 0.3, -0.6, 1.0],
            3,
            vec![false; 3],
        )
        .unwrap();
        let g = correlation_graph(&m, 0.5, &labels(3)).unwrap();
        assert_eq!(
            g.edges,
            vec![GraphEdge { i: 0, j: 1, r: 0.9 }, GraphEdge { i: 1, j: 2, r: -0.6 }]
        );
        // consistency with the indicator: sum Gi = 2 * edge weight sum
        assert!((2.0 * g.edge_weight_sum() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_nodes_never_edge() {
        let m = CorrelationMatrix::from_entries(
            vec![1.0, 0.0, 0.0, 0.0],
            2,
            vec![false, true],
        )
        .unwrap();
        let g = correlation_graph(&m, 0.0, &labels(2)).unwrap();
        assert!(g.edges.is_empty());
    }

    #[test]
    fn dot_format() {
        let m = CorrelationMatrix::from_entries(
            vec![1.0, 0.9, 0.9, 1.0],
            2,
            vec![false, false],
        )
        .unwrap();
        let g = correlation_graph(&m, 0.5, &["a".into(), "b".into()]).unwrap();
        let dot = dot_export(&g);
        assert!(dot.starts_with("graph {\n"));
        assert!(dot.contains("  \"a\";\n"));
        assert!(dot.contains("  \"a\" -- \"b\" [weight=0.90];\n"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn label_mismatch_rejected() {
        let m = CorrelationMatrix::from_entries(vec![1.0, 0.0, 0.0, 1.0], 2, vec![false; 2])
            .unwrap();
        assert!(correlation_graph(&m, 0.5, &labels(3)).is_err());
    }
}
