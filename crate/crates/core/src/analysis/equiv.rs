//! Language equivalence of deterministic automata.

use std::collections::HashMap;

use crate::acceptance::{AcceptanceCondition, Formula};
use crate::cycles::find_cycle;
use crate::error::{Budget, Error, Result};
use crate::set::{EdgeSet, MarkSet};
use crate::ts::{Automaton, Edge, TransitionSystem};

/// Synchronised product of two deterministic complete automata, restricted
/// to the pairs reachable from the initial pair. Edge marks are the marks
/// of `a` followed by the marks of `b` shifted past them.
pub fn product(a: &Automaton, b: &Automaton) -> Result<(TransitionSystem, Vec<(usize, usize)>)> {
    if a.num_letters() != b.num_letters() {
        return Err(Error::AlphabetMismatch);
    }
    for x in [a, b] {
        if !x.is_deterministic() || x.ts.initial().len() != 1 {
            return Err(Error::NotDeterministic);
        }
        x.require_complete()?;
    }
    let k = a.ts.acceptance().num_marks();
    let kb = b.ts.acceptance().num_marks();
    let start = (a.ts.initial()[0], b.ts.initial()[0]);
    let mut index = HashMap::from([(start, 0usize)]);
    let mut states = vec![start];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q) = states[i];
        for l in 0..a.num_letters() {
            let ea = a.successor_edge(p, l).unwrap();
            let eb = b.successor_edge(q, l).unwrap();
            let next = (a.ts.edge(ea).tgt, b.ts.edge(eb).tgt);
            let j = *index.entry(next).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            let marks = a.ts.edge(ea).marks.union(&b.ts.edge(eb).marks.shifted(k));
            edges.push(Edge::new(i, j, marks));
        }
        i += 1;
    }
    let cond = AcceptanceCondition::emerson_lei(k + kb, Formula::True)?;
    Ok((TransitionSystem::new(states.len(), edges, vec![0], cond)?, states))
}

/// Whether two deterministic complete automata recognise the same language:
/// no reachable cycle of their product is accepted by exactly one of them.
pub fn language_equiv_det(a: &Automaton, b: &Automaton) -> Result<bool> {
    language_equiv_det_with(a, b, Budget::default())
}

pub fn language_equiv_det_with(a: &Automaton, b: &Automaton, budget: Budget) -> Result<bool> {
    Ok(distinguishing_cycle(a, b, budget)?.is_none())
}

/// A reachable cycle of the product on which the verdicts of `a` and `b`
/// differ, as a set of product edges.
pub fn distinguishing_cycle(a: &Automaton, b: &Automaton, budget: Budget) -> Result<Option<EdgeSet>> {
    let (prod, _) = product(a, b)?;
    let k = a.ts.acceptance().num_marks();
    let kb = b.ts.acceptance().num_marks();
    let labels: Vec<MarkSet> = prod.edges().iter().map(|e| e.marks.clone()).collect();
    find_cycle(
        &prod,
        &prod.all_edges(),
        &labels,
        |c| a.ts.acceptance().accepts(&c.window(0, k)) != b.ts.acceptance().accepts(&c.window(k, k + kb)),
        budget,
    )
}
