//! Graphviz export.

use std::fmt::Write as _;

use crate::dfa::Dfa;

/// Renders `d` as a DOT digraph. Final states are double circles and the
/// start state gets an arrow from an invisible point node. State nodes are
/// named `q<i>`; letters are printed `a`, `b`, … for alphabets up to 26.
pub fn to_dot(d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  __start [shape=point, style=invis];\n");
    for s in 0..d.num_states {
        let shape = if d.is_final(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{s} [shape={shape}, label=\"{s}\"];");
    }
    let _ = writeln!(out, "  __start -> q{};", d.start);
    for (s, row) in d.transitions.iter().enumerate() {
        for (c, t) in row.iter().enumerate() {
            let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", letter_name(c, d.alphabet_size));
        }
    }
    out.push_str("}\n");
    out
}

fn letter_name(c: usize, k: usize) -> String {
    if k <= 26 {
        char::from(b'a' + c as u8).to_string()
    } else {
        c.to_string()
    }
}
