//! JSON and DOT renderings of presentations.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::quiver::{Presentation, VertexKind};

/// `{vertices: [{id, kind}], arrows: [{name, src, dst}],
///   relations: [{terms: [{coeff, path: [names]}]}]}`.
pub fn presentation_json(p: &Presentation) -> Value {
    let q = &p.quiver;
    let vertices: Vec<Value> = (0..q.vertex_count())
        .map(|v| json!({ "id": q.vertex_name(v), "kind": p.kinds[v] }))
        .collect();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({ "name": a.name, "src": q.vertex_name(a.source), "dst": q.vertex_name(a.target) }))
        .collect();
    let relations: Vec<Value> = p
        .relations
        .iter()
        .map(|r| {
            let terms: Vec<Value> = r
                .terms
                .iter()
                .map(|t| {
                    let path: Vec<&str> = t
                        .path
                        .arrows()
                        .iter()
                        .map(|&a| q.arrow(a).name.as_str())
                        .collect();
                    json!({ "coeff": t.coefficient, "path": path })
                })
                .collect();
            json!({ "terms": terms })
        })
        .collect();
    json!({ "vertices": vertices, "arrows": arrows, "relations": relations })
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz digraph; Gorenstein-projective vertices are drawn as boxes and
/// relations are listed as comments.
pub fn to_dot(p: &Presentation, name: &str) -> String {
    let q = &p.quiver;
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quoted(name)).unwrap();
    for v in 0..q.vertex_count() {
        let style = match p.kinds[v] {
            VertexKind::Original => "shape=circle",
            VertexKind::Gproj => "shape=box, style=filled, fillcolor=orange",
        };
        writeln!(out, "  {} [{}];", quoted(q.vertex_name(v)), style).unwrap();
    }
    for a in q.arrows() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quoted(q.vertex_name(a.source)),
            quoted(q.vertex_name(a.target)),
            quoted(&a.name)
        )
        .unwrap();
    }
    for r in &p.relations {
        writeln!(out, "  // rel {}", r.display(q)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::quiver::parse;

    #[test]
    fn json_schema() {
        let p = parse(fixtures::TRIANGLE_GENTLE).unwrap();
        let j = presentation_json(&p);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 3);
        assert_eq!(j["arrows"][0], json!({"name": "a", "src": "1", "dst": "2"}));
        assert_eq!(
            j["relations"][0]["terms"][0],
            json!({"coeff": 1, "path": ["a", "b"]})
        );
    }

    #[test]
    fn dot_lists_everything() {
        let p = parse(fixtures::TRIANGLE_GENTLE).unwrap();
        let dot = to_dot(&p, "F3");
        assert!(dot.starts_with("digraph \"F3\" {"));
        assert!(dot.contains("\"1\" -> \"2\" [label=\"a\"];"));
        assert!(dot.contains("// rel c.a"));
    }
}
