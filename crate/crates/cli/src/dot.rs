//! Graphviz DOT export. Round (accepting) tree nodes are ellipses and
//! square (rejecting) ones are boxes; Eve vertices are circles and Adam
//! vertices boxes.

use std::fmt::Write;

use acdkit::acd::Acd;
use acdkit::morphisms::Morphism;
use acdkit::zielonka::ZielonkaTree;
use acdkit::{Automaton, Game, MarkSet, Player, TransitionSystem};

fn esc(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn marks_text(ts: &TransitionSystem, m: &MarkSet) -> String {
    let acc = ts.acceptance();
    let v: Vec<String> = m.iter().map(|x| acc.mark_name(x)).collect();
    format!("{{{}}}", v.join(","))
}

fn edges_into(s: &mut String, ts: &TransitionSystem, prefix: &str, label: impl Fn(usize) -> String) {
    for (e, ed) in ts.edges().iter().enumerate() {
        writeln!(s, "  {prefix}{} -> {prefix}{} [label=\"{}\"];", ed.src, ed.tgt, esc(&label(e))).unwrap();
    }
}

fn start_arrows(s: &mut String, ts: &TransitionSystem, prefix: &str) {
    for &q in ts.initial() {
        writeln!(s, "  {prefix}init{q} [shape=point];").unwrap();
        writeln!(s, "  {prefix}init{q} -> {prefix}{q};").unwrap();
    }
}

pub fn ts_dot(ts: &TransitionSystem) -> String {
    let mut s = String::from("digraph ts {\n  rankdir=LR;\n");
    for v in 0..ts.num_vertices() {
        writeln!(s, "  {v} [shape=circle];").unwrap();
    }
    start_arrows(&mut s, ts, "");
    edges_into(&mut s, ts, "", |e| marks_text(ts, &ts.edge(e).marks));
    s.push_str("}\n");
    s
}

pub fn automaton_dot(a: &Automaton) -> String {
    let ts = &a.ts;
    let letter = |l: usize| a.letter_names().and_then(|n| n.get(l).cloned()).unwrap_or_else(|| l.to_string());
    let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
    for v in 0..ts.num_vertices() {
        writeln!(s, "  {v} [shape=circle];").unwrap();
    }
    start_arrows(&mut s, ts, "");
    edges_into(&mut s, ts, "", |e| format!("{} {}", letter(a.letter(e)), marks_text(ts, &ts.edge(e).marks)));
    s.push_str("}\n");
    s
}

pub fn game_dot(g: &Game) -> String {
    let ts = &g.ts;
    let mut s = String::from("digraph game {\n  rankdir=LR;\n");
    for v in 0..g.num_vertices() {
        let shape = match g.owner(v) {
            Player::Eve => "circle",
            Player::Adam => "box",
        };
        writeln!(s, "  {v} [shape={shape}];").unwrap();
    }
    start_arrows(&mut s, ts, "");
    edges_into(&mut s, ts, "", |e| marks_text(ts, &ts.edge(e).marks));
    s.push_str("}\n");
    s
}

fn shape(round: bool) -> &'static str {
    if round {
        "ellipse"
    } else {
        "box"
    }
}

/// Zielonka tree; `names` gives the colour names, indices are used
/// otherwise.
pub fn zielonka_dot(zt: &ZielonkaTree, names: Option<&[String]>) -> String {
    let t = zt.tree();
    let name = |m: usize| names.and_then(|n| n.get(m).cloned()).unwrap_or_else(|| m.to_string());
    let mut s = String::from("digraph zielonka {\n");
    for n in 0..t.len() {
        let lab: Vec<String> = t.label(n).iter().map(name).collect();
        writeln!(s, "  n{n} [shape={}, label=\"{}\"];", shape(t.is_round(n)), esc(&lab.join(","))).unwrap();
    }
    for n in 0..t.len() {
        for &ch in t.children(n) {
            writeln!(s, "  n{n} -> n{ch};").unwrap();
        }
    }
    s.push_str("}\n");
    s
}

/// Alternating cycle decomposition: one cluster per tree, each node
/// labelled with its edges and its states.
pub fn acd_dot(acd: &Acd) -> String {
    let mut s = String::from("digraph acd {\n");
    for (i, t) in acd.trees().iter().enumerate() {
        writeln!(s, "  subgraph cluster_{i} {{").unwrap();
        for n in 0..t.len() {
            let l = t.label(n);
            let es: Vec<String> = l.edges.iter().map(|e| e.to_string()).collect();
            let vs: Vec<String> = l.states.iter().map(|v| v.to_string()).collect();
            writeln!(
                s,
                "    t{i}n{n} [shape={}, label=\"edges {{{}}}\\nstates {{{}}}\\np={}\"];",
                shape(t.is_round(n)),
                es.join(","),
                vs.join(","),
                acd.p(i, n)
            )
            .unwrap();
        }
        for n in 0..t.len() {
            for &ch in t.children(n) {
                writeln!(s, "    t{i}n{n} -> t{i}n{ch};").unwrap();
            }
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}

/// Source and target side by side with the vertex map drawn dashed.
pub fn morphism_dot(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> String {
    let mut s = String::from("digraph morphism {\n  rankdir=LR;\n");
    for (prefix, ts) in [("s", src), ("t", tgt)] {
        writeln!(s, "  subgraph cluster_{prefix} {{").unwrap();
        for v in 0..ts.num_vertices() {
            writeln!(s, "  {prefix}{v} [shape=circle, label=\"{v}\"];").unwrap();
        }
        edges_into(&mut s, ts, prefix, |e| format!("{e}: {}", marks_text(ts, &ts.edge(e).marks)));
        s.push_str("  }\n");
    }
    for (v, &w) in phi.vmap.iter().enumerate() {
        writeln!(s, "  s{v} -> t{w} [style=dashed, constraint=false];").unwrap();
    }
    s.push_str("}\n");
    s
}
