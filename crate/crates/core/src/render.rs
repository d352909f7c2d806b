use std::fmt::Write as _;

use crate::shift::IncidenceMatrix;

/// Graphviz digraph of the incidence matrix, one edge per nonzero entry
/// labelled by its multiplicity.
pub fn incidence_dot(a: &IncidenceMatrix) -> String {
    let mut out = String::from("digraph incidence {\n");
    for i in 1..=a.n() {
        let _ = writeln!(out, "  {i};");
    }
    for i in 1..=a.n() {
        for k in 1..=a.n() {
            let m = a.get(i, k);
            if m > 0 {
                let _ = writeln!(out, "  {i} -> {k} [label=\"{m}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}
