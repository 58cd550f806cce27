//! Zielonka trees and the automata built from them.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::acceptance::{Acceptance, AcceptanceCondition};
use crate::error::{Budget, Error, Result};
use crate::set::{maximal_sets, MarkSet};
use crate::tree::{OrderedTree, Subtree};
use crate::ts::{Automaton, Edge, TransitionSystem};

/// The Zielonka tree of a Muller family: nodes are labelled by colour sets,
/// round iff accepting, and the children of a node are the maximal subsets
/// of its label with the opposite membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZielonkaTree {
    tree: OrderedTree<MarkSet>,
    alphabet: MarkSet,
}

/// Parity levels of the nodes of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityLevels {
    pub p: Vec<u32>,
    pub min_p: u32,
    pub max_p: u32,
}

/// Zielonka tree of the Muller family `family` over `alphabet`.
pub fn build_zielonka_tree(alphabet: &MarkSet, family: &[MarkSet]) -> Result<ZielonkaTree> {
    let n = alphabet.last().map_or(0, |m| m + 1);
    let cond = AcceptanceCondition::muller(n, family.to_vec())?;
    build_zielonka_tree_for(alphabet, &cond, Budget::default())
}

/// Zielonka tree of the sets accepted by `cond`, restricted to subsets of
/// `alphabet`.
pub fn build_zielonka_tree_for(
    alphabet: &MarkSet,
    cond: &AcceptanceCondition,
    budget: Budget,
) -> Result<ZielonkaTree> {
    if alphabet.is_empty() {
        return Err(Error::Invalid("empty alphabet".into()));
    }
    if let Some(m) = alphabet.last() {
        if m >= cond.num_marks() {
            return Err(Error::UnknownMark(m));
        }
    }
    let mut tree = OrderedTree::new(alphabet.clone(), cond.accepts(alphabet));
    let mut queue = VecDeque::from([0usize]);
    let mut explored = 0usize;
    while let Some(n) = queue.pop_front() {
        let label = tree.label(n).clone();
        let round = tree.is_round(n);
        for child in opposite_maximal_subsets(&label, round, |s| cond.accepts(s), &mut explored, budget)? {
            let c = tree.add_child(n, child, !round);
            budget.check(tree.len(), "building a Zielonka tree")?;
            queue.push_back(c);
        }
    }
    Ok(ZielonkaTree {
        tree,
        alphabet: alphabet.clone(),
    })
}

/// Maximal non-empty proper subsets of `x` whose membership differs from
/// `pol`, found by removing one colour at a time and stopping at the first
/// set with the opposite membership on each path.
fn opposite_maximal_subsets(
    x: &MarkSet,
    pol: bool,
    accepts: impl Fn(&MarkSet) -> bool,
    explored: &mut usize,
    budget: Budget,
) -> Result<Vec<MarkSet>> {
    let mut seen: HashSet<MarkSet> = HashSet::new();
    let mut found = Vec::new();
    let mut stack = vec![x.clone()];
    while let Some(s) = stack.pop() {
        for a in s.iter() {
            let mut t = s.clone();
            t.remove(a);
            if t.is_empty() || !seen.insert(t.clone()) {
                continue;
            }
            *explored += 1;
            budget.check(*explored, "exploring colour subsets")?;
            if accepts(&t) != pol {
                found.push(t);
            } else {
                stack.push(t);
            }
        }
    }
    Ok(maximal_sets(found))
}

impl ZielonkaTree {
    /// Wrap a tree whose labels and polarities are already a Zielonka tree.
    pub fn from_tree(tree: OrderedTree<MarkSet>) -> Self {
        let alphabet = tree.label(0).clone();
        ZielonkaTree { tree, alphabet }
    }

    pub fn tree(&self) -> &OrderedTree<MarkSet> {
        &self.tree
    }

    pub fn alphabet(&self) -> &MarkSet {
        &self.alphabet
    }

    pub fn full(&self) -> Subtree<'_, MarkSet> {
        self.tree.full()
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.tree.full().leaves()
    }

    /// Membership of a colour set in the family, read off the tree.
    pub fn membership(&self, x: &MarkSet) -> bool {
        let mut n = 0;
        'down: loop {
            for &c in self.tree.children(n) {
                if x.is_subset(self.tree.label(c)) {
                    n = c;
                    continue 'down;
                }
            }
            return self.tree.is_round(n);
        }
    }

    /// `p(n) = depth(n)` if the alphabet is accepting, `depth(n) + 1`
    /// otherwise.
    pub fn parity_levels(&self) -> ParityLevels {
        let shift = if self.tree.is_round(0) { 0 } else { 1 };
        let p: Vec<u32> = (0..self.tree.len())
            .map(|n| (self.tree.depth(n) + shift) as u32)
            .collect();
        ParityLevels {
            min_p: shift as u32,
            max_p: (self.tree.height() - 1 + shift) as u32,
            p,
        }
    }

    pub fn round_branching_width(&self) -> usize {
        self.tree.full().round_branching_width()
    }

    /// The deepest ancestor of `leaf` whose label contains `a`.
    pub fn supp_letter(&self, leaf: usize, a: usize) -> Result<usize> {
        self.tree.supp(leaf, |l| l.contains(a))
    }
}

/// Result of [`zt_parity_automaton`].
#[derive(Debug, Clone)]
pub struct ZtParity {
    pub automaton: Automaton,
    /// Tree leaf of each state.
    pub leaf: Vec<usize>,
}

/// The deterministic parity automaton whose states are the leaves of the
/// tree. The alphabet of the tree must be `{0, .., k-1}`; reading `a` from
/// leaf `q` outputs `p(supp(q, a))` and moves to `jump(q, supp(q, a))`.
///
/// Mark `c` of the output has colour `c`; the initial state is the
/// leftmost leaf.
pub fn zt_parity_automaton(zt: &ZielonkaTree) -> Result<ZtParity> {
    let k = alphabet_size(zt)?;
    let full = zt.full();
    let leaves = full.leaves();
    let index: HashMap<usize, usize> = leaves.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let lv = zt.parity_levels();
    let mut transitions = Vec::new();
    for (q, &l) in leaves.iter().enumerate() {
        for a in 0..k {
            let n = zt.supp_letter(l, a)?;
            let t = full.jump(l, n)?;
            transitions.push((q, a, index[&t], MarkSet::singleton(lv.p[n] as usize)));
        }
    }
    let cond = AcceptanceCondition::parity_identity(lv.max_p as usize + 1);
    let automaton = Automaton::from_transitions(leaves.len(), k, transitions, vec![0], cond)?;
    Ok(ZtParity { automaton, leaf: leaves })
}

fn alphabet_size(zt: &ZielonkaTree) -> Result<usize> {
    let k = zt.alphabet().len();
    if zt.alphabet().last() != Some(k - 1) {
        return Err(Error::Invalid("the alphabet must be {0, .., k-1}".into()));
    }
    Ok(k)
}

/// Result of [`zt_hd_rabin_automaton`].
#[derive(Debug, Clone)]
pub struct ZtRabin {
    /// States are `0..mw`; mark `n` stands for tree node `n`.
    pub automaton: Automaton,
    /// Value of each leaf under the eta labelling (`None` for inner nodes).
    pub eta: Vec<Option<usize>>,
}

/// Rabin pairs over tree nodes: for each round node `n`, `G = {n}` and `R`
/// holds every other node that `n` is not an ancestor of.
pub fn node_rabin_pairs<L>(tree: &OrderedTree<L>) -> Vec<(MarkSet, MarkSet)> {
    (0..tree.len())
        .filter(|&n| tree.is_round(n))
        .map(|n| {
            let r = (0..tree.len()).filter(|&m| m != n && !tree.is_ancestor(n, m)).collect();
            (MarkSet::singleton(n), r)
        })
        .collect()
}

/// The history-deterministic Rabin automaton with `mw` states whose
/// outputs are tree nodes. All states are initial. Identical transitions
/// produced by different leaves are kept once.
pub fn zt_hd_rabin_automaton(zt: &ZielonkaTree) -> Result<ZtRabin> {
    let k = alphabet_size(zt)?;
    let full = zt.full();
    let eta = full.eta_labelling();
    let mw = full.round_branching_width();
    let mut transitions: Vec<(usize, usize, usize, MarkSet)> = Vec::new();
    let mut seen = HashSet::new();
    for l in full.leaves() {
        let x = eta[l].unwrap();
        for a in 0..k {
            let n = zt.supp_letter(l, a)?;
            let t = eta[full.jump(l, n)?].unwrap();
            if seen.insert((x, a, t, n)) {
                transitions.push((x, a, t, MarkSet::singleton(n)));
            }
        }
    }
    transitions.sort_by(|a, b| (a.0, a.1, a.2, &a.3).cmp(&(b.0, b.1, b.2, &b.3)));
    let cond = AcceptanceCondition::new(zt.tree().len(), Acceptance::Rabin(node_rabin_pairs(zt.tree())))?;
    let automaton = Automaton::from_transitions(mw, k, transitions, (0..mw).collect(), cond)?;
    Ok(ZtRabin { automaton, eta })
}

/// Acceptance of an eventually periodic sequence of tree nodes: accepting
/// iff the nodes seen infinitely often have a unique minimal element for
/// the ancestor order and that node is round.
///
/// The value is also computed with the node Rabin pairs and both answers
/// are asserted to agree.
pub fn rabin_node_word_accepts(zt: &ZielonkaTree, _prefix: &[usize], period: &[usize]) -> bool {
    let tree = zt.tree();
    let inf: MarkSet = period.iter().copied().collect();
    let minimal: Vec<usize> = inf
        .iter()
        .filter(|&n| !inf.iter().any(|m| m != n && tree.is_ancestor(m, n)))
        .collect();
    let direct = minimal.len() == 1 && tree.is_round(minimal[0]);
    let pairs = node_rabin_pairs(tree);
    let by_pairs = pairs.iter().any(|(g, r)| inf.intersects(g) && !inf.intersects(r));
    assert_eq!(direct, by_pairs, "node-word criteria disagree on {inf:?}");
    direct
}

/// Result of [`remove_duplicate_edges`].
#[derive(Debug, Clone)]
pub struct Dedup {
    pub automaton: Automaton,
    /// Each fresh mark together with the marks of the edges it replaces.
    pub merged: Vec<(usize, Vec<MarkSet>)>,
}

/// Merge edges sharing source, letter and target into one edge with a
/// fresh mark.
///
/// For Rabin conditions the fresh mark joins `G_i` if some merged edge
/// meets `G_i` and joins `R_i` if every merged edge meets `R_i`. For Muller
/// conditions a set containing fresh marks is accepting if each fresh mark
/// can be replaced by the marks of a non-empty subset of its merged edges
/// so that the result is accepting.
pub fn remove_duplicate_edges(a: &Automaton) -> Result<Dedup> {
    let ts = &a.ts;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut key_of: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for e in 0..ts.num_edges() {
        let ed = ts.edge(e);
        let key = (ed.src, a.letter(e), ed.tgt);
        let g = *key_of.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(e);
    }
    let n = ts.acceptance().num_marks();
    let mut edges = Vec::new();
    let mut letters = Vec::new();
    let mut merged: Vec<(usize, Vec<MarkSet>)> = Vec::new();
    for g in &groups {
        let ed = ts.edge(g[0]);
        letters.push(a.letter(g[0]));
        if g.len() == 1 {
            edges.push(ed.clone());
        } else {
            let x = n + merged.len();
            merged.push((x, g.iter().map(|&e| ts.edge(e).marks.clone()).collect()));
            edges.push(Edge::new(ed.src, ed.tgt, MarkSet::singleton(x)));
        }
    }
    if merged.is_empty() {
        return Ok(Dedup {
            automaton: a.clone(),
            merged,
        });
    }
    let n2 = n + merged.len();
    let kind = match ts.acceptance().kind() {
        Acceptance::Rabin(pairs) => Acceptance::Rabin(
            pairs
                .iter()
                .map(|(g, r)| {
                    let mut g2 = g.clone();
                    let mut r2 = r.clone();
                    for (x, ms) in &merged {
                        if ms.iter().any(|m| m.intersects(g)) {
                            g2.insert(*x);
                        }
                        if ms.iter().all(|m| m.intersects(r)) {
                            r2.insert(*x);
                        }
                    }
                    (g2, r2)
                })
                .collect(),
        ),
        Acceptance::Muller(_) => {
            if n2 > 16 {
                return Err(Error::BudgetExceeded {
                    what: "expanding a Muller family",
                    limit: 16,
                });
            }
            let cond = ts.acceptance();
            let mut fam = Vec::new();
            for bits in 1u32..(1 << n2) {
                let c: MarkSet = (0..n2).filter(|i| bits >> i & 1 == 1).collect();
                if muller_choice_accepts(cond, &c.window(0, n), &c, &merged) {
                    fam.push(c);
                }
            }
            Acceptance::Muller(fam)
        }
        _ => return Err(Error::Invalid("duplicate removal needs a Rabin or Muller condition".into())),
    };
    let cond = AcceptanceCondition::new(n2, kind)?;
    let new_ts = TransitionSystem::new(ts.num_vertices(), edges, ts.initial().to_vec(), cond)?;
    let mut automaton = Automaton::new(new_ts, letters, a.num_letters())?;
    if let Some(names) = a.letter_names() {
        automaton = automaton.with_letter_names(names.to_vec());
    }
    Ok(Dedup { automaton, merged })
}

fn muller_choice_accepts(
    cond: &AcceptanceCondition,
    base: &MarkSet,
    c: &MarkSet,
    merged: &[(usize, Vec<MarkSet>)],
) -> bool {
    let fresh: Vec<&Vec<MarkSet>> = merged.iter().filter(|(x, _)| c.contains(*x)).map(|(_, m)| m).collect();
    fn go(cond: &AcceptanceCondition, acc: MarkSet, rest: &[&Vec<MarkSet>]) -> bool {
        match rest.split_first() {
            None => !acc.is_empty() && cond.accepts(&acc),
            Some((ms, tail)) => (1u32..(1 << ms.len())).any(|bits| {
                let mut a = acc.clone();
                for (i, m) in ms.iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        a.union_with(m);
                    }
                }
                go(cond, a, tail)
            }),
        }
    }
    go(cond, base.clone(), &fresh)
}
