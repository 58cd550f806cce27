//! The letter game and history-determinism.

use crate::acceptance::{AcceptanceCondition, Formula};
use crate::analysis::games::solve_muller_game;
use crate::cycles::find_cycle;
use crate::error::{Budget, Result};
use crate::set::{EdgeSet, MarkSet};
use crate::ts::{Automaton, Edge, Game, Player, TransitionSystem};

/// Sets of letters read infinitely often along some reachable accepting
/// cycle of `a`. For an automaton recognising a Muller language over its
/// letters, these are exactly the accepting letter sets.
pub fn accepting_letter_sets(a: &Automaton, budget: Budget) -> Result<Vec<MarkSet>> {
    let ts = &a.ts;
    let s = a.num_letters();
    let k = ts.acceptance().num_marks();
    budget.check(1usize.checked_shl(s as u32).unwrap_or(usize::MAX), "enumerating letter sets")?;
    let reach = ts.reachable();
    let labels: Vec<MarkSet> = (0..ts.num_edges())
        .map(|e| {
            let mut m = ts.edge(e).marks.clone();
            m.insert(k + a.letter(e));
            m
        })
        .collect();
    let mut out = Vec::new();
    for bits in 1u64..(1u64 << s) {
        let c: MarkSet = (0..s).filter(|&i| bits >> i & 1 == 1).collect();
        let within: EdgeSet = (0..ts.num_edges())
            .filter(|&e| reach[ts.edge(e).src] && c.contains(a.letter(e)))
            .collect();
        let found = find_cycle(
            ts,
            &within,
            &labels,
            |lab| lab.window(k, k + s) == c && ts.acceptance().accepts(&lab.window(0, k)),
            budget,
        )?;
        if found.is_some() {
            out.push(c);
        }
    }
    Ok(out)
}

/// The letter game of a complete automaton.
///
/// Adam owns the states and moves from `q` to `(q, a)` producing the
/// letter `a` (marks `0..|Σ|`). Eve owns `(q, a)` and picks a transition
/// `q -a-> q'`, producing its marks shifted by `|Σ|`. Eve wins if the
/// letters seen infinitely often form a rejected set or the run she builds
/// is accepting.
pub fn letter_game(a: &Automaton) -> Result<Game> {
    letter_game_with(a, Budget::default())
}

pub fn letter_game_with(a: &Automaton, budget: Budget) -> Result<Game> {
    a.require_complete()?;
    let ts = &a.ts;
    let n = ts.num_vertices();
    let s = a.num_letters();
    let k = ts.acceptance().num_marks();
    let family = accepting_letter_sets(a, budget)?;
    let mut edges = Vec::new();
    let mut owner = vec![Player::Adam; n];
    owner.extend(std::iter::repeat(Player::Eve).take(n * s));
    for q in 0..n {
        for l in 0..s {
            let mid = n + q * s + l;
            edges.push(Edge::new(q, mid, [l]));
            for e in a.edges_on(q, l) {
                edges.push(Edge::new(mid, ts.edge(e).tgt, ts.edge(e).marks.shifted(s)));
            }
        }
    }
    let letters_accepted = Formula::or(
        family
            .iter()
            .map(|c| {
                let mut parts: Vec<Formula> = c.iter().map(Formula::Inf).collect();
                parts.extend((0..s).filter(|&l| !c.contains(l)).map(Formula::Fin));
                Formula::and(parts)
            })
            .collect(),
    );
    let run_accepted = ts.acceptance().to_emerson_lei().shift(s);
    let cond = AcceptanceCondition::emerson_lei(s + k, Formula::or(vec![letters_accepted.negate(), run_accepted]))?;
    let game_ts = TransitionSystem::new(n + n * s, edges, ts.initial().to_vec(), cond)?;
    Game::new(game_ts, owner)
}

/// Whether `a` is history-deterministic: Eve wins its letter game from
/// some initial state.
pub fn is_history_deterministic(a: &Automaton) -> Result<bool> {
    let g = letter_game(a)?;
    let sol = solve_muller_game(&g)?;
    Ok(a.ts.initial().iter().any(|&q| sol.eve_wins(q)))
}
