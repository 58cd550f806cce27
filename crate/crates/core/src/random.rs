//! Seeded random generators for conditions, systems, automata and games.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::acceptance::AcceptanceCondition;
use crate::error::Result;
use crate::set::MarkSet;
use crate::ts::{Automaton, Edge, Game, Player, TransitionSystem};

/// The generator used throughout; reproducible from a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random family of non-empty subsets of `0..k`, each subset kept with
/// probability `density`.
pub fn random_family(rng: &mut impl Rng, k: usize, density: f64) -> Vec<MarkSet> {
    (1u64..1 << k)
        .filter(|_| rng.gen_bool(density))
        .map(|bits| (0..k).filter(|&i| bits >> i & 1 == 1).collect())
        .collect()
}

fn random_marks(rng: &mut impl Rng, k: usize) -> MarkSet {
    let mut m: MarkSet = (0..k).filter(|_| rng.gen_bool(0.3)).collect();
    if m.is_empty() && k > 0 {
        m.insert(rng.gen_range(0..k));
    }
    m
}

/// Edges of a random graph on `n` vertices in which every vertex has
/// between 1 and `max_out` successors and is reachable from vertex 0.
fn random_graph(rng: &mut impl Rng, n: usize, max_out: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for v in 0..n {
        let have = edges.iter().filter(|e| e.0 == v).count();
        let want = rng.gen_range(1..=max_out.max(1));
        for _ in have..want.max(1) {
            edges.push((v, rng.gen_range(0..n)));
        }
    }
    edges.sort_unstable();
    edges
}

/// A random Muller transition system whose vertices are all accessible
/// from vertex 0. Every edge carries at least one of `k` marks.
pub fn random_muller_ts(rng: &mut impl Rng, n: usize, k: usize, max_out: usize) -> Result<TransitionSystem> {
    let edges = random_graph(rng, n, max_out)
        .into_iter()
        .map(|(s, t)| Edge::new(s, t, random_marks(rng, k)))
        .collect();
    let family = random_family(rng, k, 0.5);
    TransitionSystem::new(n, edges, vec![0], AcceptanceCondition::muller(k, family)?)
}

/// Like [`random_muller_ts`] but every edge carries exactly one mark, so
/// the system can be composed with automata reading its marks.
pub fn random_single_mark_muller_ts(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    max_out: usize,
) -> Result<TransitionSystem> {
    let edges = random_graph(rng, n, max_out)
        .into_iter()
        .map(|(s, t)| Edge::new(s, t, [rng.gen_range(0..k)]))
        .collect();
    let family = random_family(rng, k, 0.5);
    TransitionSystem::new(n, edges, vec![0], AcceptanceCondition::muller(k, family)?)
}

/// A random parity transition system with colours `0..k`, one per edge.
pub fn random_parity_ts(rng: &mut impl Rng, n: usize, k: usize, max_out: usize) -> Result<TransitionSystem> {
    let edges = random_graph(rng, n, max_out)
        .into_iter()
        .map(|(s, t)| Edge::new(s, t, [rng.gen_range(0..k)]))
        .collect();
    TransitionSystem::new(n, edges, vec![0], AcceptanceCondition::parity_identity(k))
}

/// A random complete deterministic automaton over `letters` letters with
/// one mark per transition. With `parity` the marks are parity colours
/// `0..k`, otherwise they are used by a random Muller condition.
pub fn random_det_automaton(
    rng: &mut impl Rng,
    n: usize,
    letters: usize,
    k: usize,
    parity: bool,
) -> Result<Automaton> {
    let mut tr = Vec::new();
    for q in 0..n {
        for a in 0..letters {
            tr.push((q, a, rng.gen_range(0..n), MarkSet::singleton(rng.gen_range(0..k))));
        }
    }
    let cond = if parity {
        AcceptanceCondition::parity_identity(k)
    } else {
        AcceptanceCondition::muller(k, random_family(rng, k, 0.5))?
    };
    Automaton::from_transitions(n, letters, tr, vec![0], cond)
}

/// A random game; owners are drawn uniformly. With `parity` edges carry
/// one colour in `0..k`, otherwise one of `k` marks under a random Muller
/// condition.
pub fn random_game(rng: &mut impl Rng, n: usize, k: usize, max_out: usize, parity: bool) -> Result<Game> {
    let ts = if parity {
        random_parity_ts(rng, n, k, max_out)?
    } else {
        random_single_mark_muller_ts(rng, n, k, max_out)?
    };
    let owner = (0..n)
        .map(|_| *[Player::Eve, Player::Adam].choose(rng).unwrap())
        .collect();
    Game::new(ts, owner)
}
