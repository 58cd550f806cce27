//! Typeness: which acceptance conditions can be put on the graph of a
//! transition system without changing the verdict of any cycle.

use std::fmt;

use crate::acceptance::{Acceptance, AcceptanceCondition};
use crate::acd::{branch_to_flower, build_acd, Acd, Flower};
use crate::cycles::find_cycle;
use crate::error::{Budget, Result};
use crate::set::{EdgeSet, MarkSet};
use crate::transforms::{recolour, single_leaf_colours};
use crate::ts::{Edge, TransitionSystem};

/// Kinds of acceptance conditions a system can be relabelled with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Rabin,
    Streett,
    Parity,
    Buchi,
    CoBuchi,
    GenBuchi,
    GenCoBuchi,
}

impl TypeKind {
    pub const ALL: [TypeKind; 7] = [
        TypeKind::Rabin,
        TypeKind::Streett,
        TypeKind::Parity,
        TypeKind::Buchi,
        TypeKind::CoBuchi,
        TypeKind::GenBuchi,
        TypeKind::GenCoBuchi,
    ];
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeKind::Rabin => "rabin",
            TypeKind::Streett => "streett",
            TypeKind::Parity => "parity",
            TypeKind::Buchi => "buchi",
            TypeKind::CoBuchi => "cobuchi",
            TypeKind::GenBuchi => "gen-buchi",
            TypeKind::GenCoBuchi => "gen-cobuchi",
        };
        f.write_str(s)
    }
}

/// Why a system is not of some type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Two cycles through `vertex` with the same verdict (`accepting`)
    /// whose union has the other verdict.
    UnionFlips {
        vertex: usize,
        first: EdgeSet,
        second: EdgeSet,
        accepting: bool,
    },
    /// A flower that the requested kind cannot colour.
    Flower(Flower),
}

/// Outcome of [`relabel_as`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relabelling {
    Relabelled(TransitionSystem),
    Impossible(Obstruction),
}

/// Flags for every kind, with a relabelling for each true flag and an
/// obstruction for each false one.
#[derive(Debug, Clone)]
pub struct TypenessReport {
    pub rabin_type: bool,
    pub streett_type: bool,
    pub parity_type: bool,
    pub buchi_type: bool,
    pub cobuchi_type: bool,
    pub gen_buchi_type: bool,
    pub gen_cobuchi_type: bool,
    /// Least `d` such that the system is weak of degree `d`, when it is of
    /// parity type.
    pub weak_d: Option<usize>,
    pub outcomes: Vec<(TypeKind, Relabelling)>,
}

impl TypenessReport {
    pub fn flag(&self, kind: TypeKind) -> bool {
        match kind {
            TypeKind::Rabin => self.rabin_type,
            TypeKind::Streett => self.streett_type,
            TypeKind::Parity => self.parity_type,
            TypeKind::Buchi => self.buchi_type,
            TypeKind::CoBuchi => self.cobuchi_type,
            TypeKind::GenBuchi => self.gen_buchi_type,
            TypeKind::GenCoBuchi => self.gen_cobuchi_type,
        }
    }

    pub fn outcome(&self, kind: TypeKind) -> &Relabelling {
        &self.outcomes.iter().find(|(k, _)| *k == kind).unwrap().1
    }
}

/// Typeness of `ts`, computed from the shapes of its local subtrees.
///
/// Vertices that are not accessible are treated like the others.
pub fn typeness(ts: &TransitionSystem) -> Result<TypenessReport> {
    let acd = build_acd(ts)?;
    let outcomes: Vec<(TypeKind, Relabelling)> = TypeKind::ALL
        .iter()
        .map(|&k| Ok((k, relabel_with(ts, &acd, k)?)))
        .collect::<Result<_>>()?;
    let ok = |k: TypeKind| matches!(outcomes.iter().find(|(x, _)| *x == k).unwrap().1, Relabelling::Relabelled(_));
    let parity_type = ok(TypeKind::Parity);
    Ok(TypenessReport {
        rabin_type: ok(TypeKind::Rabin),
        streett_type: ok(TypeKind::Streett),
        parity_type,
        buchi_type: ok(TypeKind::Buchi),
        cobuchi_type: ok(TypeKind::CoBuchi),
        gen_buchi_type: ok(TypeKind::GenBuchi),
        gen_cobuchi_type: ok(TypeKind::GenCoBuchi),
        weak_d: parity_type.then(|| acd.max_height()),
        outcomes,
    })
}

/// Put an acceptance condition of the given kind on the graph of `ts`,
/// keeping the verdict of every cycle, or explain why this is impossible.
pub fn relabel_as(ts: &TransitionSystem, kind: TypeKind) -> Result<Relabelling> {
    relabel_with(ts, &build_acd(ts)?, kind)
}

/// Two children of a node of the given polarity in some local subtree.
fn branching_pair(acd: &Acd, ts: &TransitionSystem, round: bool) -> Option<Obstruction> {
    for v in 0..ts.num_vertices() {
        let Some((t, sub)) = acd.local_subtree(v) else { continue };
        let tree = &acd.trees()[t];
        for n in sub.nodes() {
            let ch: Vec<usize> = sub.children(n).collect();
            if tree.is_round(n) == round && ch.len() >= 2 {
                return Some(Obstruction::UnionFlips {
                    vertex: v,
                    first: tree.label(ch[0]).edges.clone(),
                    second: tree.label(ch[1]).edges.clone(),
                    accepting: !round,
                });
            }
        }
    }
    None
}

/// A node of the given polarity with a child, in some local subtree, as a
/// two-cycle flower.
fn nested_pair(acd: &Acd, ts: &TransitionSystem, outer_round: bool) -> Option<Obstruction> {
    for v in 0..ts.num_vertices() {
        let Some((t, sub)) = acd.local_subtree(v) else { continue };
        let tree = &acd.trees()[t];
        for n in sub.nodes() {
            if tree.is_round(n) != outer_round {
                continue;
            }
            if let Some(c) = sub.children(n).next() {
                return Some(Obstruction::Flower(Flower {
                    vertex: v,
                    cycles: vec![tree.label(n).edges.clone(), tree.label(c).edges.clone()],
                    positive: outer_round,
                }));
            }
        }
    }
    None
}

/// A flower that does not fit in two colours starting at `0` (Büchi) or
/// `1` (coBüchi).
fn two_colour_violation(acd: &Acd, buchi: bool) -> Option<Obstruction> {
    for (t, tree) in acd.trees().iter().enumerate() {
        let h = tree.height();
        if h >= 3 || (h == 2 && tree.is_round(0) != buchi) {
            let deepest = (0..tree.len()).max_by_key(|&n| tree.depth(n)).unwrap();
            return Some(Obstruction::Flower(branch_to_flower(acd, t, deepest)));
        }
    }
    None
}

/// Same graph with each edge carrying its own index as its only mark.
fn edge_marked(ts: &TransitionSystem, kind: Acceptance) -> Result<TransitionSystem> {
    let edges = ts
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| Edge::new(e.src, e.tgt, MarkSet::singleton(i)))
        .collect();
    let cond = AcceptanceCondition::new(ts.num_edges(), kind)?;
    TransitionSystem::new(ts.num_vertices(), edges, ts.initial().to_vec(), cond)
}

fn nodes_of(acd: &Acd, round: bool) -> impl Iterator<Item = (usize, usize)> + '_ {
    acd.trees()
        .iter()
        .enumerate()
        .flat_map(move |(t, tree)| (0..tree.len()).filter(move |&n| tree.is_round(n) == round).map(move |n| (t, n)))
}

/// Pairs `(nu(n) minus the cycles of n's children, E minus nu(n))` for the
/// nodes of the given polarity.
fn node_pairs(ts: &TransitionSystem, acd: &Acd, round: bool) -> Vec<(MarkSet, MarkSet)> {
    let all = ts.all_edges();
    nodes_of(acd, round)
        .map(|(t, n)| {
            let tree = &acd.trees()[t];
            let mut inner = EdgeSet::new();
            for &c in tree.children(n) {
                inner.union_with(&tree.label(c).edges);
            }
            let own = &tree.label(n).edges;
            (own.difference(&inner), all.difference(own))
        })
        .collect()
}

fn complements(ts: &TransitionSystem, acd: &Acd, round: bool) -> Vec<MarkSet> {
    let all = ts.all_edges();
    nodes_of(acd, round)
        .map(|(t, n)| all.difference(&acd.trees()[t].label(n).edges))
        .collect()
}

fn relabel_with(ts: &TransitionSystem, acd: &Acd, kind: TypeKind) -> Result<Relabelling> {
    let rabin_bad = || branching_pair(acd, ts, true);
    let streett_bad = || branching_pair(acd, ts, false);
    let parity_bad = || rabin_bad().or_else(streett_bad);
    let obstruction = match kind {
        TypeKind::Rabin => rabin_bad(),
        TypeKind::Streett => streett_bad(),
        TypeKind::Parity => parity_bad(),
        TypeKind::Buchi => parity_bad().or_else(|| two_colour_violation(acd, true)),
        TypeKind::CoBuchi => parity_bad().or_else(|| two_colour_violation(acd, false)),
        TypeKind::GenBuchi => nested_pair(acd, ts, false),
        TypeKind::GenCoBuchi => nested_pair(acd, ts, true),
    };
    if let Some(o) = obstruction {
        return Ok(Relabelling::Impossible(o));
    }
    let colours = || -> Result<Vec<u32>> { Ok(single_leaf_colours(ts, acd)?.expect("parity ACD")) };
    let by_colour = |odd: bool| -> Result<MarkSet> {
        let c = colours()?;
        Ok((0..ts.num_edges()).filter(|&e| (c[e] % 2 == 1) == odd).collect())
    };
    let out = match kind {
        TypeKind::Parity => recolour(ts, &colours()?)?,
        TypeKind::Rabin => edge_marked(ts, Acceptance::Rabin(node_pairs(ts, acd, true)))?,
        TypeKind::Streett => edge_marked(ts, Acceptance::Streett(node_pairs(ts, acd, false)))?,
        TypeKind::Buchi => edge_marked(ts, Acceptance::Buchi(by_colour(false)?))?,
        TypeKind::CoBuchi => edge_marked(ts, Acceptance::CoBuchi(by_colour(true)?))?,
        TypeKind::GenBuchi => edge_marked(ts, Acceptance::GenBuchi(complements(ts, acd, false)))?,
        TypeKind::GenCoBuchi => edge_marked(ts, Acceptance::GenCoBuchi(complements(ts, acd, true)))?,
    };
    Ok(Relabelling::Relabelled(out))
}

/// Whether two systems over the same graph give every cycle the same
/// verdict.
pub fn same_cycle_verdicts(a: &TransitionSystem, b: &TransitionSystem) -> Result<bool> {
    let k = a.acceptance().num_marks();
    let kb = b.acceptance().num_marks();
    let labels: Vec<MarkSet> = (0..a.num_edges())
        .map(|e| a.edge(e).marks.union(&b.edge(e).marks.shifted(k)))
        .collect();
    let found = find_cycle(
        a,
        &a.all_edges(),
        &labels,
        |c| a.acceptance().accepts(&c.window(0, k)) != b.acceptance().accepts(&c.window(k, k + kb)),
        Budget::default(),
    )?;
    Ok(found.is_none())
}
