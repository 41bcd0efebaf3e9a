//! DOT export of the four leaf graphs, one cluster each.

use braidtile_core::graphs::{build_graph, node_token, GraphNode, LeafGraph};
use braidtile_core::tiling::{Sign, Tiling};

fn cluster_name(eps: Sign, delta: Sign) -> String {
    let s = |x: Sign| if x == Sign::Plus { "p" } else { "m" };
    format!("{}{}", s(eps), s(delta))
}

fn dot_node_id(prefix: &str, n: GraphNode) -> String {
    format!("{prefix}_{}", node_token(n))
}

fn emit_cluster(out: &mut String, g: &LeafGraph) {
    use std::fmt::Write;
    let prefix = cluster_name(g.eps, g.delta);
    let _ = writeln!(out, "  subgraph cluster_{prefix} {{");
    let _ = writeln!(out, "    label=\"G({},{})\";", g.eps, g.delta);
    for n in &g.nodes {
        let shape = match n {
            GraphNode::Vertex(_) => "circle",
            GraphNode::Boundary(_) => "box",
        };
        let _ = writeln!(
            out,
            "    \"{}\" [label=\"{}\", shape={shape}];",
            dot_node_id(&prefix, *n),
            node_token(*n)
        );
    }
    for e in &g.edges {
        let _ = writeln!(
            out,
            "    \"{}\" -- \"{}\" [label=\"t{}\"];",
            dot_node_id(&prefix, e.ends.0),
            dot_node_id(&prefix, e.ends.1),
            e.tile
        );
    }
    let _ = writeln!(out, "  }}");
}

/// All four graphs as one DOT document with clusters.
pub fn leaf_graphs_dot(t: &Tiling) -> String {
    let mut out = String::from("graph leaf_graphs {\n");
    for eps in [Sign::Plus, Sign::Minus] {
        for delta in [Sign::Plus, Sign::Minus] {
            emit_cluster(&mut out, &build_graph(t, eps, delta));
        }
    }
    out.push_str("}\n");
    out
}

/// The plain text form: the four graphs' stable line listings.
pub fn leaf_graphs_text(t: &Tiling) -> String {
    let mut out = String::new();
    for eps in [Sign::Plus, Sign::Minus] {
        for delta in [Sign::Plus, Sign::Minus] {
            out.push_str(&build_graph(t, eps, delta).to_text());
        }
    }
    out
}
