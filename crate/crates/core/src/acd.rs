//! Alternating cycle decomposition.
//!
//! Each SCC of a transition system gets a tree whose root is the SCC's full
//! edge set; the children of a node are the maximal subcycles of its cycle
//! with the opposite acceptance. Nodes are addressed globally across the
//! forest by [`NodeId`].

use std::collections::HashSet;
use std::fmt;

use crate::cycles::{enumerate_cycles, is_accepting_cycle, scc_decompose, sccs_within, SccDecomposition};
use crate::error::{Budget, Result};
use crate::par::{self, Parallelism};
use crate::set::{maximal_sets, EdgeSet, VertexSet};
use crate::tree::{OrderedTree, Subtree};
use crate::ts::{Automaton, TransitionSystem};

/// Global index of an ACD node across all trees.
pub type NodeId = usize;

/// Label of an ACD node: a cycle and the vertices it visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdLabel {
    pub edges: EdgeSet,
    pub states: VertexSet,
}

/// Polarity of an ACD, read from its trees of maximal height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Every tree of maximal height has an accepting root.
    Positive,
    /// Every tree of maximal height has a rejecting root.
    Negative,
    /// Trees of maximal height of both kinds exist.
    Equidistant,
}

/// Parity levels of the ACD nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdLevels {
    /// Level of each node, indexed by [`NodeId`].
    pub p: Vec<u32>,
    pub polarity: Polarity,
    pub min_p: u32,
    pub max_p: u32,
}

/// The alternating cycle decomposition of a transition system.
#[derive(Debug, Clone)]
pub struct Acd {
    trees: Vec<OrderedTree<AcdLabel>>,
    offsets: Vec<usize>,
    decomposition: SccDecomposition,
    local: Vec<Option<Vec<bool>>>,
    levels: AcdLevels,
}

/// The maximal subcycles of `cycle` whose acceptance differs from that of
/// `cycle`.
///
/// Starting from `cycle`, the search deletes the edges carrying one mark
/// and splits the rest into SCCs. SCCs with the opposite acceptance are
/// collected; the others are searched again. A cycle with the opposite
/// acceptance has a different mark set, so it avoids some mark of every
/// enclosing cycle it is compared against, which makes the search complete.
pub fn alternating_children(ts: &TransitionSystem, cycle: &EdgeSet, budget: Budget) -> Result<Vec<EdgeSet>> {
    let acc = is_accepting_cycle(ts, cycle);
    let mut visited: HashSet<EdgeSet> = HashSet::new();
    let mut found = Vec::new();
    let mut stack = vec![cycle.clone()];
    visited.insert(cycle.clone());
    while let Some(s) = stack.pop() {
        let marks = ts.marks_of(&s);
        for m in marks.iter() {
            let rest: EdgeSet = s.iter().filter(|&e| !ts.edge(e).marks.contains(m)).collect();
            for sub in sccs_within(ts, &rest) {
                if !visited.insert(sub.edges.clone()) {
                    continue;
                }
                budget.check(visited.len(), "computing alternating children")?;
                if is_accepting_cycle(ts, &sub.edges) != acc {
                    found.push(sub.edges);
                } else {
                    stack.push(sub.edges);
                }
            }
        }
    }
    Ok(maximal_sets(found))
}

fn label(ts: &TransitionSystem, edges: EdgeSet) -> AcdLabel {
    let states = ts.states_of(&edges).into_iter().collect();
    AcdLabel { edges, states }
}

fn build_tree(ts: &TransitionSystem, root: &EdgeSet, budget: Budget) -> Result<OrderedTree<AcdLabel>> {
    let mut tree = OrderedTree::new(label(ts, root.clone()), is_accepting_cycle(ts, root));
    let mut next = 0;
    while next < tree.len() {
        let n = next;
        next += 1;
        let cyc = tree.label(n).edges.clone();
        let round = tree.is_round(n);
        for child in alternating_children(ts, &cyc, budget)? {
            tree.add_child(n, label(ts, child), !round);
            budget.check(tree.len(), "building an ACD tree")?;
        }
    }
    Ok(tree)
}

/// Alternating cycle decomposition with the default budget, building the
/// trees of different SCCs in parallel.
pub fn build_acd(ts: &TransitionSystem) -> Result<Acd> {
    build_acd_with(ts, Budget::default(), Parallelism::default())
}

pub fn build_acd_with(ts: &TransitionSystem, budget: Budget, mode: Parallelism) -> Result<Acd> {
    let decomposition = scc_decompose(ts);
    let roots: Vec<&EdgeSet> = decomposition.sccs.iter().map(|s| &s.edges).collect();
    let trees = par::map(&roots, mode, |r| build_tree(ts, r, budget))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(trees.len());
    let mut total = 0;
    for t in &trees {
        offsets.push(total);
        total += t.len();
    }
    let local = (0..ts.num_vertices())
        .map(|v| {
            decomposition.scc_of[v].map(|i| trees[i].nodes().iter().map(|n| n.label.states.contains(v)).collect())
        })
        .collect();
    let levels = compute_levels(&trees, &offsets, total);
    Ok(Acd {
        trees,
        offsets,
        decomposition,
        local,
        levels,
    })
}

fn compute_levels(trees: &[OrderedTree<AcdLabel>], offsets: &[usize], total: usize) -> AcdLevels {
    let hmax = trees.iter().map(|t| t.height()).max().unwrap_or(0);
    let top: Vec<bool> = trees.iter().filter(|t| t.height() == hmax).map(|t| t.is_round(0)).collect();
    let polarity = if top.iter().all(|&r| r) {
        Polarity::Positive
    } else if top.iter().all(|&r| !r) {
        Polarity::Negative
    } else {
        Polarity::Equidistant
    };
    let mut p = vec![0u32; total];
    for (t, &off) in trees.iter().zip(offsets) {
        let shift = match (polarity, t.is_round(0)) {
            (Polarity::Negative, true) => 2,
            (_, false) => 1,
            _ => 0,
        };
        for n in 0..t.len() {
            p[off + n] = (t.depth(n) + shift) as u32;
        }
    }
    let (min_p, max_p) = if total == 0 {
        (0, 0)
    } else {
        (*p.iter().min().unwrap(), *p.iter().max().unwrap())
    };
    AcdLevels {
        p,
        polarity,
        min_p,
        max_p,
    }
}

impl Acd {
    /// One tree per SCC, in SCC order.
    pub fn trees(&self) -> &[OrderedTree<AcdLabel>] {
        &self.trees
    }

    pub fn decomposition(&self) -> &SccDecomposition {
        &self.decomposition
    }

    pub fn transient(&self) -> &[usize] {
        &self.decomposition.transient
    }

    pub fn num_nodes(&self) -> usize {
        self.levels.p.len()
    }

    pub fn global(&self, tree: usize, node: usize) -> NodeId {
        self.offsets[tree] + node
    }

    /// Tree index and local node index of a global node.
    pub fn locate(&self, id: NodeId) -> (usize, usize) {
        let t = self.offsets.partition_point(|&o| o <= id) - 1;
        (t, id - self.offsets[t])
    }

    pub fn label(&self, id: NodeId) -> &AcdLabel {
        let (t, n) = self.locate(id);
        self.trees[t].label(n)
    }

    pub fn is_round(&self, id: NodeId) -> bool {
        let (t, n) = self.locate(id);
        self.trees[t].is_round(n)
    }

    /// Tree of the SCC containing `v`, if `v` is recurrent.
    pub fn tree_of_vertex(&self, v: usize) -> Option<usize> {
        self.decomposition.scc_of[v]
    }

    /// Tree containing edge `e`, if `e` lies inside an SCC.
    pub fn tree_of_edge(&self, ts: &TransitionSystem, e: usize) -> Option<usize> {
        let ed = ts.edge(e);
        match (self.decomposition.scc_of[ed.src], self.decomposition.scc_of[ed.tgt]) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    /// The local subtree `t_v`: nodes of `v`'s tree whose cycle visits `v`.
    /// Transient vertices have no local subtree.
    pub fn local_subtree(&self, v: usize) -> Option<(usize, Subtree<'_, AcdLabel>)> {
        let t = self.decomposition.scc_of[v]?;
        let kept = self.local[v].clone().unwrap();
        Some((t, self.trees[t].subtree(kept).expect("local subtrees are ancestor-closed")))
    }

    pub fn levels(&self) -> &AcdLevels {
        &self.levels
    }

    pub fn polarity(&self) -> Polarity {
        self.levels.polarity
    }

    /// Level of a local node of tree `t`.
    pub fn p(&self, t: usize, n: usize) -> u32 {
        self.levels.p[self.offsets[t] + n]
    }

    /// The deepest ancestor of `leaf` in tree `t` whose cycle contains `e`.
    pub fn supp_edge(&self, t: usize, leaf: usize, e: usize) -> Result<usize> {
        self.trees[t].supp(leaf, |l| l.edges.contains(e))
    }

    /// Largest tree height (0 when there are no SCCs).
    pub fn max_height(&self) -> usize {
        self.trees.iter().map(|t| t.height()).max().unwrap_or(0)
    }
}

/// The local Muller condition at a vertex: the cycles through it, each
/// flagged with its acceptance.
#[derive(Debug, Clone)]
pub struct LocalMuller {
    pub vertex: usize,
    pub cycles: Vec<EdgeSet>,
    pub accepting: Vec<bool>,
}

/// Local Muller condition at `v`, by explicit cycle enumeration.
pub fn local_muller(ts: &TransitionSystem, v: usize) -> Result<LocalMuller> {
    let cycles = enumerate_cycles(ts, Some(v))?;
    let accepting = cycles.iter().map(|c| is_accepting_cycle(ts, c)).collect();
    Ok(LocalMuller {
        vertex: v,
        cycles,
        accepting,
    })
}

impl LocalMuller {
    /// Zielonka tree of the local condition. A set of cycles is identified
    /// with its union, so each node is labelled by one cycle and its
    /// children are the maximal listed cycles inside it with the opposite
    /// acceptance.
    pub fn zielonka_tree(&self) -> Option<OrderedTree<EdgeSet>> {
        let top = self.cycles.iter().enumerate().max_by_key(|(_, c)| c.len())?.0;
        if !self.cycles.iter().all(|c| c.is_subset(&self.cycles[top])) {
            return None;
        }
        let mut tree = OrderedTree::new(self.cycles[top].clone(), self.accepting[top]);
        let mut next = 0;
        while next < tree.len() {
            let n = next;
            next += 1;
            let lab = tree.label(n).clone();
            let round = tree.is_round(n);
            let opp: Vec<EdgeSet> = self
                .cycles
                .iter()
                .zip(&self.accepting)
                .filter(|(c, &a)| a != round && c.is_proper_subset(&lab))
                .map(|(c, _)| c.clone())
                .collect();
            for c in maximal_sets(opp) {
                tree.add_child(n, c, !round);
            }
        }
        Some(tree)
    }
}

/// The optimal parity index of a deterministic Muller automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityIndex {
    /// Colours `[0, d-1]`.
    Positive(usize),
    /// Colours `[1, d]`.
    Negative(usize),
    /// Both `[0, d]` and `[1, d+1]` suffice, neither smaller interval does.
    Weak(usize),
}

impl ParityIndex {
    /// The `(min, max)` colour interval of a minimal-colour parity
    /// condition of this index.
    pub fn interval(&self) -> (usize, usize) {
        match *self {
            ParityIndex::Positive(d) => (0, d.saturating_sub(1)),
            ParityIndex::Negative(d) => (1, d),
            ParityIndex::Weak(d) => (0, d),
        }
    }

    /// Classification from the largest positive and negative flowers.
    pub fn from_flowers(pos: usize, neg: usize) -> ParityIndex {
        match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => ParityIndex::Positive(pos),
            std::cmp::Ordering::Less => ParityIndex::Negative(neg),
            std::cmp::Ordering::Equal => ParityIndex::Weak(pos),
        }
    }
}

impl fmt::Display for ParityIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParityIndex::Weak(d) => write!(f, "Weak({d})"),
            _ => {
                let (a, b) = self.interval();
                write!(f, "[{a},{b}]")
            }
        }
    }
}

/// Parity index of the accessible part of a transition system, from the
/// heights and polarities of its ACD trees.
pub fn parity_index_of_ts(ts: &TransitionSystem) -> Result<ParityIndex> {
    let acc = ts.accessible_part()?.ts;
    let acd = build_acd(&acc)?;
    let d = acd.max_height();
    Ok(match acd.polarity() {
        Polarity::Positive => ParityIndex::Positive(d),
        Polarity::Negative => ParityIndex::Negative(d),
        Polarity::Equidistant => ParityIndex::Weak(d),
    })
}

/// Parity index of the language of a deterministic Muller automaton.
pub fn parity_index_of_dma(a: &Automaton) -> Result<ParityIndex> {
    parity_index_of_ts(&a.ts)
}

/// A chain of strictly nested cycles through one vertex with alternating
/// acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    pub vertex: usize,
    pub cycles: Vec<EdgeSet>,
    /// Whether the outermost cycle is accepting.
    pub positive: bool,
}

/// The flower formed by the cycles on the branch from the root of tree `t`
/// down to local node `n`, centred at a vertex of `n`'s cycle.
pub fn branch_to_flower(acd: &Acd, t: usize, n: usize) -> Flower {
    let tree = &acd.trees()[t];
    let cycles = tree.branch(n).into_iter().map(|m| tree.label(m).edges.clone()).collect();
    Flower {
        vertex: tree.label(n).states.first().unwrap(),
        cycles,
        positive: tree.is_round(0),
    }
}

/// Longest positive and negative flowers of the accessible part, by brute
/// force over enumerated cycles.
pub fn max_flowers(ts: &TransitionSystem) -> Result<(usize, usize)> {
    let r = ts.accessible_part()?;
    let ts = &r.ts;
    let cycles = enumerate_cycles(ts, None)?;
    let acc: Vec<bool> = cycles.iter().map(|c| is_accepting_cycle(ts, c)).collect();
    let mut best = (0, 0);
    for v in 0..ts.num_vertices() {
        let at: Vec<usize> = (0..cycles.len())
            .filter(|&i| ts.states_of(&cycles[i]).binary_search(&v).is_ok())
            .collect();
        let mut order = at.clone();
        order.sort_by_key(|&i| cycles[i].len());
        // chain[i]: longest alternating chain starting at cycle i going inwards.
        let mut chain = vec![1usize; cycles.len()];
        for (k, &i) in order.iter().enumerate() {
            for &j in &order[..k] {
                if acc[j] != acc[i] && cycles[j].is_proper_subset(&cycles[i]) {
                    chain[i] = chain[i].max(chain[j] + 1);
                }
            }
            if acc[i] {
                best.0 = best.0.max(chain[i]);
            } else {
                best.1 = best.1.max(chain[i]);
            }
        }
    }
    Ok(best)
}

/// Whether the accessible part of `ts` has a flower of length `d` with the
/// given polarity (brute force).
pub fn flower_oracle(ts: &TransitionSystem, positive: bool, d: usize) -> Result<bool> {
    let (p, n) = max_flowers(ts)?;
    Ok(if positive { p >= d } else { n >= d })
}

/// Parity index derived from the longest flowers (brute force).
pub fn flower_parity_index(ts: &TransitionSystem) -> Result<ParityIndex> {
    let (p, n) = max_flowers(ts)?;
    Ok(ParityIndex::from_flowers(p, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::AcceptanceCondition;
    use crate::set::MarkSet;
    use crate::ts::Edge;

    #[test]
    fn one_vertex_two_loops() {
        let cond = AcceptanceCondition::muller(2, vec![MarkSet::from([0]), MarkSet::from([1])]).unwrap();
        let ts = TransitionSystem::new(1, vec![Edge::new(0, 0, [0]), Edge::new(0, 0, [1])], vec![0], cond).unwrap();
        let ch = alternating_children(&ts, &EdgeSet::from([0, 1]), Budget::default()).unwrap();
        assert_eq!(ch, vec![EdgeSet::from([0]), EdgeSet::from([1])]);
        let acd = build_acd(&ts).unwrap();
        assert_eq!(acd.trees()[0].len(), 3);
        assert_eq!(acd.polarity(), Polarity::Negative);
    }

    #[test]
    fn accepting_loop_has_no_children() {
        let cond = AcceptanceCondition::muller(1, vec![MarkSet::from([0])]).unwrap();
        let ts = TransitionSystem::new(1, vec![Edge::new(0, 0, [0])], vec![0], cond).unwrap();
        assert!(alternating_children(&ts, &EdgeSet::from([0]), Budget::default()).unwrap().is_empty());
        let acd = build_acd(&ts).unwrap();
        assert_eq!(acd.num_nodes(), 1);
        assert_eq!(acd.polarity(), Polarity::Positive);
        assert_eq!((acd.levels().min_p, acd.levels().max_p), (0, 0));
    }

    #[test]
    fn equidistant_forest() {
        let cond = AcceptanceCondition::muller(2, vec![MarkSet::from([0])]).unwrap();
        let ts = TransitionSystem::new(
            2,
            vec![Edge::new(0, 0, [0]), Edge::new(0, 1, [])],
            vec![0],
            cond.clone(),
        );
        assert!(ts.is_err());
        let ts = TransitionSystem::new(
            2,
            vec![Edge::new(0, 0, [0]), Edge::eps(0, 1), Edge::new(1, 1, [1])],
            vec![0],
            cond,
        )
        .unwrap();
        let acd = build_acd(&ts).unwrap();
        assert_eq!(acd.polarity(), Polarity::Equidistant);
        assert_eq!(acd.levels().min_p, 0);
        assert_eq!(acd.levels().p, vec![0, 1]);
    }

    #[test]
    fn locate_round_trips() {
        let cond = AcceptanceCondition::muller(2, vec![MarkSet::from([0])]).unwrap();
        let ts = TransitionSystem::new(
            2,
            vec![Edge::new(0, 0, [0]), Edge::new(0, 0, [1]), Edge::eps(0, 1), Edge::new(1, 1, [1])],
            vec![0],
            cond,
        )
        .unwrap();
        let acd = build_acd(&ts).unwrap();
        for id in 0..acd.num_nodes() {
            let (t, n) = acd.locate(id);
            assert_eq!(acd.global(t, n), id);
        }
    }
}
