use std::collections::BTreeMap;
use std::fmt::Write;

use super::Tiling;
use crate::order::Arrow;
use crate::srs::{SrsSystem, Word};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of a tiling. Vertices sharing a row are ranked together so
/// that horizontal arrows read left to right and vertical ones top to bottom.
pub fn export_dot(t: &Tiling, n: usize) -> String {
    let mut out = String::from("digraph tiling {\n");
    if t.vertices.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=TB;\n  node [shape=plaintext];\n");
    for (i, v) in t.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(&v.label.render(n)));
    }
    for e in &t.edges {
        let mut attrs = Vec::new();
        match &e.arrow {
            Arrow::Solid(s) => attrs.push(format!("label=\"{}\"", escape(&s.instance.render(n)))),
            Arrow::Dashed(_) => attrs.push("style=dashed".to_string()),
        }
        if e.horizontal {
            attrs.push("constraint=false".to_string());
        }
        let _ = writeln!(out, "  v{} -> v{} [{}];", e.from, e.to, attrs.join(", "));
    }
    let mut rows: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, v) in t.vertices.iter().enumerate() {
        rows.entry(v.y.clone()).or_default().push(i);
    }
    for members in rows.values() {
        let names: Vec<String> = members.iter().map(|i| format!("v{i}")).collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", names.join("; "));
    }
    out.push_str("}\n");
    out
}

/// DOT digraph of the reduction graph reachable from `w`.
pub fn export_reach_dot(sys: &SrsSystem, w: &Word, max_steps: Option<usize>) -> String {
    let reach = sys.reach(w, max_steps);
    let ids: BTreeMap<&Word, usize> = reach.words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut out = String::from("digraph reach {\n  node [shape=plaintext];\n");
    for (w, i) in &ids {
        let _ = writeln!(out, "  w{i} [label=\"{}\"];", escape(&sys.render(w)));
    }
    for (w, i) in &ids {
        for s in sys.steps_from(w) {
            if let Some(j) = ids.get(&s.target) {
                let _ = writeln!(out, "  w{i} -> w{j} [label=\"{}\"];", escape(&s.instance.render(sys.n())));
            }
        }
    }
    out.push_str("}\n");
    out
}
