//! Graphviz export of concept lattices.

use std::fmt::Write;

use frelat_core::ConceptLattice;

fn tuple(levels: &[u32]) -> String {
    let parts: Vec<String> = levels.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// One node per concept labelled with its extent numerators (and intent
/// numerators when `intents` is set); one edge per cover, drawn bottom-up.
pub fn to_dot(lattice: &ConceptLattice, intents: bool) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for (i, c) in lattice.concepts().iter().enumerate() {
        let mut label = tuple(c.extent.levels());
        if intents {
            label.push_str("\\n");
            label.push_str(&tuple(c.intent.levels()));
        }
        writeln!(out, "  c{i} [label=\"{label}\"];").unwrap();
    }
    for &(lower, upper) in lattice.covers() {
        writeln!(out, "  c{lower} -> c{upper};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use frelat_core::{build_concept_lattice, BuiltinTriple, Context, Frame, Matrix, Sigma};
    use std::sync::Arc;

    #[test]
    fn chain_lattice_renders_nodes_and_edges() {
        let frame = Arc::new(Frame::with_builtins(2, &[BuiltinTriple::Godel]).unwrap());
        let relation = Matrix::from_rows(2, &[vec![2]]).unwrap();
        let ctx = Context::anonymous(frame, relation, Sigma::PerObject(vec![0])).unwrap();
        let lattice = build_concept_lattice(&ctx);
        let dot = to_dot(&lattice, true);
        assert!(dot.starts_with("digraph lattice {"));
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("[label=").count(), lattice.len());
        assert_eq!(dot.matches(" -> ").count(), lattice.covers().len());
        assert!(dot.contains("\\n"));
        assert!(!to_dot(&lattice, false).contains("\\n"));
    }
}
