//! DOT renderings for the CLI. Output is deterministic: vertices then
//! edges, ascending.

use crate::decompose::FlameDecomposition;
use crate::graph::{EdgeSet, RootedDigraph};
use crate::weight::Weight;

const LEVEL_COLORS: [&str; 8] = [
    "black",
    "blue3",
    "red3",
    "forestgreen",
    "darkorange",
    "purple",
    "deeppink3",
    "teal",
];

fn push_nodes(d: &RootedDigraph, out: &mut String) {
    for v in d.vertices() {
        let shape = if v == d.root() {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  {v} [shape={shape}];\n"));
    }
}

fn edge_label(d: &RootedDigraph, e: usize) -> String {
    if d.weight(e) == Weight::ONE {
        format!("e{e}")
    } else {
        format!("e{e} w={}", d.weight(e))
    }
}

/// Graph with the edges of `f` solid and the remaining edges dashed.
pub fn flame_dot(d: &RootedDigraph, f: &EdgeSet) -> String {
    let mut out = String::from("digraph flame {\n  rankdir=LR;\n");
    push_nodes(d, &mut out);
    for e in 0..d.edge_count() {
        let (t, h) = d.endpoints(e);
        let style = if f.contains(&e) { "" } else { ", style=dashed" };
        out.push_str(&format!(
            "  {t} -> {h} [label=\"{}\"{style}];\n",
            edge_label(d, e)
        ));
    }
    out.push_str("}\n");
    out
}

/// Decomposition rendering: edges colored by branching level, non-flame
/// edges dashed gray.
pub fn decomposition_dot(d: &RootedDigraph, dec: &FlameDecomposition) -> String {
    let mut level_of = vec![None; d.edge_count()];
    for (i, b) in dec.branchings.iter().enumerate() {
        for &e in &b.edges {
            level_of[e] = Some(i + 1);
        }
    }
    let mut out = String::from("digraph decomposition {\n  rankdir=LR;\n");
    push_nodes(d, &mut out);
    for (e, &level) in level_of.iter().enumerate() {
        let (t, h) = d.endpoints(e);
        let attrs = match level {
            Some(level) => format!(
                "label=\"{} B{level}\", color={}",
                edge_label(d, e),
                LEVEL_COLORS[(level - 1) % LEVEL_COLORS.len()]
            ),
            None => format!("label=\"{}\", color=gray, style=dashed", edge_label(d, e)),
        };
        out.push_str(&format!("  {t} -> {h} [{attrs}];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{decompose_digraph, FlameMethod};
    use crate::test_graphs::triangle;

    #[test]
    fn renders_flame_styles() {
        let g = triangle();
        let dot = flame_dot(&g, &EdgeSet::from([0, 2]));
        assert!(dot.contains("0 [shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"e0\"];"));
        assert!(dot.contains("0 -> 2 [label=\"e1\", style=dashed];"));
    }

    #[test]
    fn renders_levels() {
        let g = triangle();
        let (_, dec) = decompose_digraph(&g, FlameMethod::Peel).unwrap();
        let dot = decomposition_dot(&g, &dec);
        assert!(dot.contains("e0 B1"));
        assert!(dot.contains("e1 B2"));
        assert!(dot.contains("color=blue3"));
    }
}
