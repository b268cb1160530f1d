use serde_json::{json, Value};

use super::EnrichedDiagram;
use crate::cubset::CubicalSet;

/// JSON form of a diagram: every nonempty slot with its cell table and every
/// composition map as a table from cell pairs to image cells.
pub fn diagram_json(d: &EnrichedDiagram) -> Value {
    let slots: Vec<Value> = d
        .slots
        .iter()
        .filter(|(_, s)| !s.complex.is_empty())
        .map(|(&(u, v), s)| json!({ "from": d.objects[u], "to": d.objects[v], "complex": s.complex.to_json() }))
        .collect();
    let compositions: Vec<Value> = d
        .compositions
        .iter()
        .map(|(&(u, w, v), c)| {
            let table: Vec<Value> = c
                .tensor
                .complex
                .all_cells()
                .map(|cell| {
                    let (x, y) = c.tensor.pair(cell);
                    let img = c.map.image(cell);
                    json!({ "later": x, "earlier": y, "image": img.cell, "degeneracies": img.degeneracy_word() })
                })
                .collect();
            json!({ "objects": [d.objects[u], d.objects[w], d.objects[v]], "table": table })
        })
        .collect();
    json!({ "objects": d.objects, "slots": slots, "compositions": compositions })
}

/// DOT rendering of the 2-skeleton of a mapping complex. Squares become box
/// nodes joined by dotted edges to their corners.
pub fn slot_dot(k: &CubicalSet, name: &str) -> String {
    let esc = |s: &str| s.replace('"', "\\\"");
    let mut s = format!("graph {name} {{\n");
    for v in k.cells_of_dim(0) {
        let label = k.label(v).map_or_else(|| format!("v{}", v.index), esc);
        let shape = if k.basepoint() == Some(v) { ", shape=doublecircle" } else { "" };
        s.push_str(&format!("  v{} [label=\"{}\"{}];\n", v.index, label, shape));
    }
    for e in k.cells_of_dim(1) {
        let a = k.face(e, 0, false).cell.index;
        let b = k.face(e, 0, true).cell.index;
        let label = k.label(e).map_or_else(String::new, esc);
        s.push_str(&format!("  v{a} -- v{b} [label=\"{label}\"];\n"));
    }
    for q in k.cells_of_dim(2) {
        let label = k.label(q).map_or_else(String::new, esc);
        s.push_str(&format!("  s{} [shape=box, label=\"{}\"];\n", q.index, label));
        let mut corners: Vec<usize> = (0..4u64)
            .map(|m| {
                let r = k.face_of(&k.face(q, 1, m & 2 != 0), 0, m & 1 != 0);
                r.cell.index
            })
            .collect();
        corners.dedup();
        for c in corners {
            s.push_str(&format!("  s{} -- v{c} [style=dotted];\n", q.index));
        }
    }
    s.push_str("}\n");
    s
}
