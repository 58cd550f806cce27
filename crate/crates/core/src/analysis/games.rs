//! Attractors and solvers for games on transition systems.

use crate::error::{Error, Result};
use crate::set::{EdgeSet, VertexSet};
use crate::transforms::acd_parity_transform;
use crate::ts::{Game, Player};

/// Winning regions of both players and a positional Eve strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    pub eve_region: VertexSet,
    pub adam_region: VertexSet,
    /// Edge chosen by Eve at each of her vertices inside her region.
    pub eve_strategy: Vec<Option<usize>>,
}

impl GameSolution {
    pub fn eve_wins(&self, v: usize) -> bool {
        self.eve_region.contains(v)
    }
}

/// Vertices from which `player` can force a visit to `target_vertices` or
/// a traversal of an edge in `target_edges`, with the attracting edge for
/// each attracted vertex of `player`.
pub fn attractor_for(
    g: &Game,
    player: Player,
    target_vertices: &VertexSet,
    target_edges: &EdgeSet,
) -> (VertexSet, Vec<Option<usize>>) {
    let ts = &g.ts;
    let n = ts.num_vertices();
    let mut inside = vec![false; n];
    let mut strategy = vec![None; n];
    let mut missing: Vec<usize> = (0..n).map(|v| ts.out_edges(v).len()).collect();
    let mut queue = Vec::new();
    for v in target_vertices.iter() {
        inside[v] = true;
        queue.push(v);
    }
    // An edge counts as soon as it is a target edge or leads inside.
    let mut fire = |e: usize, inside: &mut Vec<bool>, queue: &mut Vec<usize>, strategy: &mut Vec<Option<usize>>| {
        let u = ts.edge(e).src;
        if inside[u] {
            return;
        }
        if g.owner(u) == player {
            inside[u] = true;
            strategy[u] = Some(e);
            queue.push(u);
        } else {
            missing[u] -= 1;
            if missing[u] == 0 {
                inside[u] = true;
                queue.push(u);
            }
        }
    };
    // Target edges are counted here once and skipped below.
    for e in target_edges.iter() {
        fire(e, &mut inside, &mut queue, &mut strategy);
    }
    while let Some(v) = queue.pop() {
        for &e in ts.in_edges(v) {
            if !target_edges.contains(e) {
                fire(e, &mut inside, &mut queue, &mut strategy);
            }
        }
    }
    ((0..n).filter(|&v| inside[v]).collect(), strategy)
}

/// Eve's attractor to a set of vertices.
pub fn attractor(g: &Game, target: &VertexSet) -> VertexSet {
    attractor_for(g, Player::Eve, target, &EdgeSet::new()).0
}

/// Eve's attractor to a set of edges.
pub fn edge_attractor(g: &Game, target: &EdgeSet) -> VertexSet {
    attractor_for(g, Player::Eve, &VertexSet::new(), target).0
}

/// Vertex-coloured arena obtained by subdividing each edge with a vertex
/// carrying the edge colour. Original vertices and unmarked edges carry a
/// colour that is never the least on a cycle.
struct Arena {
    owner: Vec<Player>,
    prio: Vec<u32>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl Arena {
    fn from_parity_game(g: &Game) -> Result<Arena> {
        let ts = &g.ts;
        let acc = ts.acceptance();
        if !acc.is_parity() {
            return Err(Error::NotParity);
        }
        let colour = |e: usize| ts.edge(e).marks.iter().filter_map(|m| acc.parity_colour(m)).min();
        let top = (0..ts.num_edges()).filter_map(colour).max().unwrap_or(0);
        let n = ts.num_vertices();
        let total = n + ts.num_edges();
        let mut ar = Arena {
            owner: g.owners().to_vec(),
            prio: vec![top; n],
            succ: vec![Vec::new(); total],
            pred: vec![Vec::new(); total],
        };
        for e in 0..ts.num_edges() {
            let m = n + e;
            ar.owner.push(Player::Eve);
            ar.prio.push(colour(e).unwrap_or(top));
            ar.link(ts.edge(e).src, m);
            ar.link(m, ts.edge(e).tgt);
        }
        Ok(ar)
    }

    fn link(&mut self, a: usize, b: usize) {
        self.succ[a].push(b);
        self.pred[b].push(a);
    }

    fn attract(&self, alive: &[bool], target: &[bool], player: Player) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.owner.len();
        let mut inside: Vec<bool> = (0..n).map(|v| alive[v] && target[v]).collect();
        let mut strat = vec![None; n];
        let mut missing: Vec<usize> = (0..n)
            .map(|v| self.succ[v].iter().filter(|&&w| alive[w]).count())
            .collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
        while let Some(v) = queue.pop() {
            for &u in &self.pred[v] {
                if !alive[u] || inside[u] {
                    continue;
                }
                if self.owner[u] == player {
                    inside[u] = true;
                    strat[u] = Some(v);
                    queue.push(u);
                } else {
                    missing[u] -= 1;
                    if missing[u] == 0 {
                        inside[u] = true;
                        queue.push(u);
                    }
                }
            }
        }
        (inside, strat)
    }

    /// Recursive solver for min-parity (Eve wins on even least colour).
    /// Returns Eve's region within `alive` and her strategy there.
    fn solve(&self, alive: &[bool]) -> (Vec<bool>, Vec<Option<usize>>) {
        let n = self.owner.len();
        let mut strat = vec![None; n];
        let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| self.prio[v]).min() else {
            return (vec![false; n], strat);
        };
        let p = if d % 2 == 0 { Player::Eve } else { Player::Adam };
        let top: Vec<bool> = (0..n).map(|v| alive[v] && self.prio[v] == d).collect();
        let (a, astrat) = self.attract(alive, &top, p);
        let sub: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
        let (we1, s1) = self.solve(&sub);
        let opp_won: Vec<bool> = (0..n)
            .map(|v| sub[v] && (we1[v] != (p == Player::Eve)))
            .collect();
        if !opp_won.iter().any(|&x| x) {
            if p == Player::Adam {
                return (vec![false; n], strat);
            }
            for v in (0..n).filter(|&v| alive[v] && self.owner[v] == Player::Eve) {
                strat[v] = if sub[v] {
                    s1[v]
                } else {
                    astrat[v].or_else(|| self.succ[v].iter().copied().find(|&w| alive[w]))
                };
            }
            return (alive.to_vec(), strat);
        }
        let (b, bstrat) = self.attract(alive, &opp_won, p.opponent());
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
        let (we2, s2) = self.solve(&rest);
        let mut eve = we2.clone();
        for v in (0..n).filter(|&v| we2[v]) {
            strat[v] = s2[v];
        }
        if p == Player::Adam {
            for v in (0..n).filter(|&v| b[v]) {
                eve[v] = true;
                strat[v] = if opp_won[v] { s1[v] } else { bstrat[v] };
            }
        }
        (eve, strat)
    }
}

/// Solve a game with a parity condition.
pub fn solve_parity_game(g: &Game) -> Result<GameSolution> {
    let ar = Arena::from_parity_game(g)?;
    let (eve, strat) = ar.solve(&vec![true; ar.owner.len()]);
    let n = g.num_vertices();
    let eve_region: VertexSet = (0..n).filter(|&v| eve[v]).collect();
    let adam_region = (0..n).filter(|&v| !eve[v]).collect();
    let eve_strategy = (0..n)
        .map(|v| {
            (eve[v] && g.owner(v) == Player::Eve)
                .then(|| strat[v].map(|m| m - n))
                .flatten()
        })
        .collect();
    Ok(GameSolution {
        eve_region,
        adam_region,
        eve_strategy,
    })
}

/// Solve a game with any acceptance condition by solving the parity game
/// given by the ACD-parity-transform.
///
/// Eve's strategy is the first move of her strategy in the transformed
/// game, starting at the copy of each vertex with the leftmost leaf. In
/// general she needs the leaf as memory to continue.
pub fn solve_muller_game(g: &Game) -> Result<GameSolution> {
    let out = acd_parity_transform(&g.ts)?;
    let pg = out.lift_game(g)?;
    let sol = solve_parity_game(&pg)?;
    let n = g.num_vertices();
    let mut first_copy = vec![usize::MAX; n];
    for (i, &v) in out.witness.vmap.iter().enumerate().rev() {
        first_copy[v] = i;
    }
    let eve_region: VertexSet = (0..n).filter(|&v| sol.eve_wins(first_copy[v])).collect();
    let adam_region = (0..n).filter(|&v| !eve_region.contains(v)).collect();
    let eve_strategy = (0..n)
        .map(|v| sol.eve_strategy[first_copy[v]].map(|e| out.witness.emap[e]))
        .collect();
    Ok(GameSolution {
        eve_region,
        adam_region,
        eve_strategy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::AcceptanceCondition;
    use crate::ts::{Edge, TransitionSystem};

    fn game(n: usize, edges: Vec<Edge>, owner: Vec<Player>, k: usize) -> Game {
        let ts = TransitionSystem::new(n, edges, vec![0], AcceptanceCondition::parity_identity(k)).unwrap();
        Game::new(ts, owner).unwrap()
    }

    #[test]
    fn single_vertex_games() {
        let g = game(1, vec![Edge::new(0, 0, [0])], vec![Player::Eve], 1);
        assert!(solve_parity_game(&g).unwrap().eve_wins(0));
        let g = game(1, vec![Edge::new(0, 0, [0]), Edge::new(0, 0, [1])], vec![Player::Adam], 2);
        let s = solve_parity_game(&g).unwrap();
        assert!(!s.eve_wins(0));
        assert_eq!(s, solve_muller_game(&g).unwrap());
    }

    #[test]
    fn attractor_respects_ownership() {
        // 0 (Eve) -> 2; 1 (Adam) -> 2 or 1; 2 loops.
        let g = game(
            3,
            vec![
                Edge::new(0, 2, [0]),
                Edge::new(0, 0, [0]),
                Edge::new(1, 2, [0]),
                Edge::new(1, 1, [0]),
                Edge::new(2, 2, [0]),
            ],
            vec![Player::Eve, Player::Adam, Player::Eve],
            1,
        );
        let a = attractor(&g, &VertexSet::from([2]));
        assert_eq!(a, VertexSet::from([0, 2]));
        assert_eq!(attractor(&g, &VertexSet::full(3)), VertexSet::full(3));
        assert_eq!(edge_attractor(&g, &EdgeSet::from([3])), VertexSet::new());
    }

    #[test]
    fn strategy_stays_in_region() {
        let g = game(
            2,
            vec![Edge::new(0, 1, [1]), Edge::new(0, 0, [1]), Edge::new(1, 0, [0]), Edge::new(1, 1, [1])],
            vec![Player::Eve, Player::Eve],
            2,
        );
        let s = solve_parity_game(&g).unwrap();
        assert_eq!(s.eve_region, VertexSet::full(2));
        assert_eq!(s.eve_strategy[1], Some(2));
    }
}
