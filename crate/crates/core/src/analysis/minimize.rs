//! Minimisation of deterministic parity automata recognising Muller
//! languages.

use std::collections::VecDeque;

use crate::analysis::equiv::language_equiv_det;
use crate::cycles::sccs_within;
use crate::error::{Error, Result};
use crate::set::{maximal_sets, EdgeSet, MarkSet};
use crate::tree::OrderedTree;
use crate::ts::Automaton;
use crate::zielonka::{zt_parity_automaton, ZielonkaTree};

/// Least colour on a set of edges of a parity automaton.
fn min_colour(a: &Automaton, edges: &EdgeSet) -> u32 {
    let acc = a.ts.acceptance();
    edges
        .iter()
        .flat_map(|e| a.ts.edge(e).marks.iter())
        .filter_map(|m| acc.parity_colour(m))
        .min()
        .unwrap_or(u32::MAX)
}

/// The maximal letter sets of strongly connected parts of `scc` whose
/// acceptance differs from that of `scc`.
pub fn alternating_sets(a: &Automaton, scc: &EdgeSet) -> Vec<MarkSet> {
    let d = min_colour(a, scc);
    let above: EdgeSet = scc.iter().filter(|&e| min_colour(a, &EdgeSet::singleton(e)) > d).collect();
    let mut alt = Vec::new();
    for s in sccs_within(&a.ts, &above) {
        if (min_colour(a, &s.edges) % 2 == 1) == (d % 2 == 0) {
            alt.push(a.letters_of(&s.edges));
        } else {
            alt.extend(alternating_sets(a, &s.edges));
        }
    }
    maximal_sets(alt)
}

/// A bottom SCC of the restriction of `a` to transitions reading letters
/// of `x`, the one with the least vertex list.
fn final_scc(a: &Automaton, x: &MarkSet) -> EdgeSet {
    let ts = &a.ts;
    let within: EdgeSet = (0..ts.num_edges()).filter(|&e| x.contains(a.letter(e))).collect();
    let sccs = sccs_within(ts, &within);
    let bottom: Vec<_> = sccs
        .iter()
        .filter(|s| {
            s.edges.len() == within.iter().filter(|&e| s.vertices.contains(&ts.edge(e).src)).count()
        })
        .collect();
    bottom
        .into_iter()
        .min_by(|p, q| p.vertices.cmp(&q.vertices))
        .map(|s| s.edges.clone())
        .expect("complete automata have a bottom SCC on every letter set")
}

/// Reconstruct the Zielonka tree of the Muller language recognised by a
/// deterministic complete parity automaton.
pub fn recover_zielonka_tree(a: &Automaton) -> Result<ZielonkaTree> {
    if !a.ts.acceptance().is_parity() {
        return Err(Error::NotParity);
    }
    if !a.is_deterministic() {
        return Err(Error::NotDeterministic);
    }
    a.require_complete()?;
    let a = a.accessible_part()?;
    let sigma = MarkSet::full(a.num_letters());
    let root = final_scc(&a, &sigma);
    let mut tree = OrderedTree::new(sigma, min_colour(&a, &root) % 2 == 0);
    let mut queue = VecDeque::from([(0usize, root)]);
    while let Some((n, scc)) = queue.pop_front() {
        let round = tree.is_round(n);
        for x in alternating_sets(&a, &scc) {
            let sub = final_scc(&a, &x);
            if (min_colour(&a, &sub) % 2 == 0) == round {
                return Err(Error::NotMullerLanguage);
            }
            let c = tree.add_child(n, x, !round);
            queue.push_back((c, sub));
        }
    }
    Ok(ZielonkaTree::from_tree(tree))
}

/// A minimal deterministic parity automaton equivalent to `a`, built as
/// the ZT-parity-automaton of the recovered Zielonka tree.
///
/// The caller asserts that `a` recognises a Muller language; the result is
/// checked for equivalence and [`Error::NotMullerLanguage`] is returned if
/// the check fails.
pub fn minimize_muller_dpa(a: &Automaton) -> Result<Automaton> {
    let zt = recover_zielonka_tree(a)?;
    let mut out = zt_parity_automaton(&zt)?.automaton;
    if let Some(n) = a.letter_names() {
        out = out.with_letter_names(n.to_vec());
    }
    if !language_equiv_det(&out, a)? {
        return Err(Error::NotMullerLanguage);
    }
    Ok(out)
}
