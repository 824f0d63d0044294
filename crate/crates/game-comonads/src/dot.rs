//! Graphviz rendering of forest orders, path trees, and solved games.

use crate::forest::ForestStructure;
use crate::game::WinningRegion;
use crate::path::{path_tree, PathNode};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

/// The forest order as a digraph, edges from parent to child. Pebble values
/// are shown in the node label when present.
pub fn forest_dot(x: &ForestStructure, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    out.push_str("  rankdir=TB;\n  node [shape=ellipse];\n");
    for e in 0..x.size() {
        let label = match &x.pebble {
            Some(p) => format!("{} [p{}]", x.base.name(e), p[e]),
            None => x.base.name(e).to_string(),
        };
        out.push_str(&format!("  n{} [label={}];\n", e, quote(&label)));
    }
    for e in 0..x.size() {
        if let Some(p) = x.parent[e] {
            out.push_str(&format!("  n{p} -> n{e};\n"));
        }
    }
    out.push_str("}\n");
    out
}

fn path_label(x: &ForestStructure, p: PathNode) -> String {
    match p {
        PathNode::Empty => "()".to_string(),
        PathNode::Top(e) => x
            .chain(e)
            .iter()
            .map(|&v| x.base.name(v))
            .collect::<Vec<_>>()
            .join("."),
    }
}

/// The tree of paths, rooted at the least path.
pub fn path_tree_dot(x: &ForestStructure, name: &str) -> String {
    let t = path_tree(x);
    let mut out = format!("digraph {} {{\n", quote(name));
    out.push_str("  rankdir=TB;\n  node [shape=box];\n");
    for (i, &n) in t.nodes.iter().enumerate() {
        out.push_str(&format!("  p{} [label={}];\n", i, quote(&path_label(x, n))));
    }
    for (i, &p) in t.parent.iter().enumerate() {
        if let Some(p) = p {
            out.push_str(&format!("  p{p} -> p{i};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// The solved game graph: equal-height position pairs, winning positions
/// doubled-circled, edges for Spoiler moves (left side solid, right dashed).
pub fn game_dot(x: &ForestStructure, y: &ForestStructure, region: &WinningRegion, name: &str) -> String {
    let px = path_tree(x);
    let py = path_tree(y);
    let height_x: Vec<usize> = px.nodes.iter().map(|&n| crate::path::path_height(x, n)).collect();
    let height_y: Vec<usize> = py.nodes.iter().map(|&n| crate::path::path_height(y, n)).collect();
    let mut out = format!("digraph {} {{\n", quote(name));
    out.push_str("  node [shape=ellipse];\n");
    let mut id = vec![vec![usize::MAX; py.nodes.len()]; px.nodes.len()];
    let mut next = 0usize;
    for i in 0..px.nodes.len() {
        for j in 0..py.nodes.len() {
            if height_x[i] != height_y[j] {
                continue;
            }
            id[i][j] = next;
            let label = format!("{} | {}", path_label(x, px.nodes[i]), path_label(y, py.nodes[j]));
            let winning = region.positions.contains(&(px.nodes[i], py.nodes[j]));
            let shape = if winning { "doublecircle" } else { "ellipse" };
            out.push_str(&format!("  g{next} [label={}, shape={shape}];\n", quote(&label)));
            next += 1;
        }
    }
    for i in 0..px.nodes.len() {
        for j in 0..py.nodes.len() {
            if id[i][j] == usize::MAX {
                continue;
            }
            for &i2 in &px.children[i] {
                for &j2 in &py.children[j] {
                    if id[i2][j2] != usize::MAX {
                        out.push_str(&format!("  g{} -> g{};\n", id[i][j], id[i2][j2]));
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
