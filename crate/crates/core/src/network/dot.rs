//! Graphviz export.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::Network;
use crate::alphabet::{SymbolId, SymbolTable};

fn side(table: &SymbolTable, s: SymbolId) -> String {
    match s {
        SymbolId::EPSILON => "0".to_string(),
        SymbolId::OTHER | SymbolId::OTHER_PAIR => "?".to_string(),
        _ => table.name(s).to_string(),
    }
}

fn label(table: &SymbolTable, upper: SymbolId, lower: SymbolId) -> String {
    if upper == lower && upper != SymbolId::OTHER_PAIR {
        side(table, upper)
    } else {
        format!("{}:{}", side(table, upper), side(table, lower))
    }
}

fn quote(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders `net` as a DOT digraph. Final states are double circles and arcs
/// sharing both endpoints are merged into one arc with a comma-joined label.
pub fn to_dot(net: &Network, table: &SymbolTable) -> String {
    let mut out = String::from("digraph fsc {\n  rankdir=LR;\n");
    let _ = writeln!(out, "  start [shape=point];\n  start -> {};", net.start());
    for s in 0..net.num_states() {
        let shape = if net.is_final(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {s} [shape={shape}];");
    }
    for s in 0..net.num_states() {
        let mut merged: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for a in net.arcs(s) {
            merged.entry(a.target).or_default().push(label(table, a.upper, a.lower));
        }
        for (t, labels) in merged {
            let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", quote(&labels.join(",")));
        }
    }
    out.push_str("}\n");
    out
}
