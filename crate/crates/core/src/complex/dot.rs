use std::collections::BTreeMap;
use std::fmt::Write;

use super::{Origin, TypedComplex};
use crate::coxeter::Exponent;

const PALETTE: [&str; 8] = ["red", "green", "blue", "orange", "purple", "brown", "cyan", "magenta"];

/// Colour per vertex type. For a triangle system with a label-2 vertex the
/// label-2 type is red, the type with label at least 6 blue and the remaining
/// one green; otherwise types are coloured in generator order.
fn type_colors(c: &TypedComplex) -> BTreeMap<String, &'static str> {
    let mut colors = BTreeMap::new();
    if let Some(sys) = &c.metadata.system {
        let labels: Vec<Option<u32>> =
            (0..sys.rank()).map(|i| sys.label(&[i]).and_then(Exponent::finite)).collect();
        if sys.rank() == 3 {
            if let Some(two) = labels.iter().position(|&l| l == Some(2)) {
                let others: Vec<usize> = (0..3).filter(|&i| i != two).collect();
                let m = if labels[others[1]] >= Some(6) { others[1] } else { others[0] };
                let k = if m == others[1] { others[0] } else { others[1] };
                colors.insert(sys.name(two).to_string(), "red");
                colors.insert(sys.name(k).to_string(), "green");
                colors.insert(sys.name(m).to_string(), "blue");
                return colors;
            }
        }
        for (i, name) in sys.names().iter().enumerate() {
            colors.insert(name.clone(), PALETTE[i % PALETTE.len()]);
        }
        return colors;
    }
    for v in c.vertices() {
        let next = PALETTE[colors.len() % PALETTE.len()];
        colors.entry(v.kind.clone()).or_insert(next);
    }
    colors
}

/// Graphviz description of the 1-skeleton. New edges are dashed (friends)
/// or dotted (acquaintances).
pub fn to_dot(c: &TypedComplex) -> String {
    let colors = type_colors(c);
    let mut out = String::from("graph complex {\n  node [style=filled, fontsize=8];\n");
    for v in c.vertices() {
        let color = colors.get(&v.kind).copied().unwrap_or("gray");
        let _ = writeln!(out, "  {} [label=\"{}\", fillcolor={color}];", v.id, v.kind.replace('"', "'"));
    }
    for (u, v, o) in c.edges() {
        let style = match o {
            Origin::Friend => " [style=dashed]",
            Origin::Acquaintance => " [style=dotted]",
            _ => "",
        };
        let _ = writeln!(out, "  {u} -- {v}{style};");
    }
    out.push_str("}\n");
    out
}
