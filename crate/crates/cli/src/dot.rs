//! Graphviz DOT export of an oriented skeleton: one node per vertex labeled
//! "index:(coords)", one arc per edge in the cost-increasing direction.

use polyskel::exact::rat_string;
use polyskel::OrientedSkeleton;

pub fn export_dot(o: &OrientedSkeleton) -> String {
    let mut out = String::new();
    out.push_str("digraph skeleton {\n");
    out.push_str("  rankdir=BT;\n");
    for (i, v) in o.polytope.vertices.iter().enumerate() {
        let coords: Vec<String> = v.iter().map(rat_string).collect();
        out.push_str(&format!("  v{i} [label=\"{i}:({})\"];\n", coords.join(",")));
    }
    for &(u, v) in &o.arcs {
        out.push_str(&format!("  v{u} -> v{v};\n"));
    }
    out.push_str("}\n");
    out
}
