//! Transformations driven by the alternating cycle decomposition.
//!
//! Every transform returns its result together with a witness morphism
//! from the result back to the input.

use std::collections::HashMap;

use crate::acceptance::{Acceptance, AcceptanceCondition};
use crate::acd::{build_acd, Acd};
use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::set::MarkSet;
use crate::ts::{Automaton, Edge, Game, Player, TransitionSystem};

/// A transformed system with its witness morphism.
#[derive(Debug, Clone)]
pub struct TransformOutput {
    pub result: TransitionSystem,
    /// Morphism from `result` to the input system.
    pub witness: Morphism,
    /// Second component of each result vertex: the local leaf (tree-local
    /// node id) for the parity transform, the `eta` value for the Rabin
    /// transforms; `None` for transient vertices of the parity transform.
    pub component: Vec<Option<usize>>,
}

impl TransformOutput {
    /// Letters of an input automaton carried over through the witness.
    pub fn lift_automaton(&self, a: &Automaton) -> Result<Automaton> {
        let letters = self.witness.emap.iter().map(|&e| a.letter(e)).collect();
        let mut out = Automaton::new(self.result.clone(), letters, a.num_letters())?;
        if let Some(n) = a.letter_names() {
            out = out.with_letter_names(n.to_vec());
        }
        Ok(out)
    }

    /// Vertex owners of an input game carried over through the witness.
    pub fn lift_game(&self, g: &Game) -> Result<Game> {
        let owner = self.witness.vmap.iter().map(|&v| g.owner(v)).collect();
        Game::new(self.result.clone(), owner)
    }

    /// Result vertices that are copies of input vertex `v`.
    pub fn copies_of(&self, v: usize) -> Vec<usize> {
        (0..self.witness.vmap.len()).filter(|&i| self.witness.vmap[i] == v).collect()
    }
}

/// The ACD-parity-transform.
///
/// Vertices are pairs `(v, l)` with `l` a leaf of the local subtree `t_v`
/// (one vertex for a transient `v`). An edge `e: v -> v'` inside an SCC
/// leaves `(v, l)` with colour `p(n)` towards `(v', jump(l, n))`, where `n`
/// is the deepest ancestor of `l` whose cycle contains `e`. Edges between
/// SCCs go to the leftmost leaf of `t_{v'}` with the least colour.
pub fn acd_parity_transform(ts: &TransitionSystem) -> Result<TransformOutput> {
    acd_parity_transform_from(ts, &build_acd(ts)?)
}

pub fn acd_parity_transform_from(ts: &TransitionSystem, acd: &Acd) -> Result<TransformOutput> {
    let n = ts.num_vertices();
    let mut vmap = Vec::new();
    let mut component = Vec::new();
    let mut index: Vec<HashMap<Option<usize>, usize>> = vec![HashMap::new(); n];
    for v in 0..n {
        let leaves: Vec<Option<usize>> = match acd.local_subtree(v) {
            Some((_, sub)) => sub.leaves().into_iter().map(Some).collect(),
            None => vec![None],
        };
        for l in leaves {
            index[v].insert(l, vmap.len());
            vmap.push(v);
            component.push(l);
        }
    }
    let leftmost = |v: usize| acd.local_subtree(v).map(|(_, s)| s.leftmost_leaf(0));
    let min_p = acd.levels().min_p;
    let mut edges = Vec::new();
    let mut emap = Vec::new();
    for (i, &v) in vmap.iter().enumerate() {
        let l = component[i];
        for &e in ts.out_edges(v) {
            let t = ts.edge(e).tgt;
            let (target, colour) = match (acd.tree_of_edge(ts, e), l) {
                (Some(tr), Some(l)) => {
                    let node = acd.supp_edge(tr, l, e)?;
                    let (_, sub) = acd.local_subtree(t).unwrap();
                    (Some(sub.jump(l, node)?), acd.p(tr, node))
                }
                _ => (leftmost(t), min_p),
            };
            edges.push(Edge::new(i, index[t][&target], MarkSet::singleton(colour as usize)));
            emap.push(e);
        }
    }
    let initial = ts.initial().iter().map(|&v| index[v][&leftmost(v)]).collect();
    let cond = AcceptanceCondition::parity_identity(acd.levels().max_p as usize + 1);
    let result = TransitionSystem::new(vmap.len(), edges, initial, cond)?;
    Ok(TransformOutput {
        result,
        witness: Morphism::new(vmap, emap),
        component,
    })
}

/// Rabin pairs over ACD nodes: for each round node `n`, `G = {n}` and `R`
/// holds every other node that `n` is not an ancestor of.
pub fn acd_rabin_pairs(acd: &Acd) -> Vec<(MarkSet, MarkSet)> {
    let total = acd.num_nodes();
    let anc = |a: usize, b: usize| {
        let (ta, na) = acd.locate(a);
        let (tb, nb) = acd.locate(b);
        ta == tb && acd.trees()[ta].is_ancestor(na, nb)
    };
    (0..total)
        .filter(|&n| acd.is_round(n))
        .map(|n| {
            let r = (0..total).filter(|&m| m != n && !anc(n, m)).collect();
            (MarkSet::singleton(n), r)
        })
        .collect()
}

struct LocalEta {
    eta: Vec<Option<usize>>,
    mw: usize,
}

fn local_etas(ts: &TransitionSystem, acd: &Acd) -> Vec<LocalEta> {
    (0..ts.num_vertices())
        .map(|v| match acd.local_subtree(v) {
            Some((_, sub)) => LocalEta {
                eta: sub.eta_labelling(),
                mw: sub.round_branching_width(),
            },
            None => LocalEta { eta: Vec::new(), mw: 1 },
        })
        .collect()
}

/// Value of a (possibly transient) leaf under the local eta labelling.
fn eta_of(etas: &[LocalEta], v: usize, leaf: Option<usize>) -> usize {
    leaf.map_or(0, |l| etas[v].eta[l].unwrap())
}

/// Leaves of `t_v` (a single `None` for transient `v`).
fn leaves_of(acd: &Acd, v: usize) -> Vec<Option<usize>> {
    match acd.local_subtree(v) {
        Some((_, sub)) => sub.leaves().into_iter().map(Some).collect(),
        None => vec![None],
    }
}

/// One step of the ACD bookkeeping along edge `e` from leaf `l`: the node
/// output (if `e` lies inside an SCC) and the leaf reached at the target.
fn step(ts: &TransitionSystem, acd: &Acd, l: Option<usize>, e: usize) -> Result<(Option<usize>, Option<usize>)> {
    let t = ts.edge(e).tgt;
    match (acd.tree_of_edge(ts, e), l) {
        (Some(tr), Some(l)) => {
            let node = acd.supp_edge(tr, l, e)?;
            let (_, sub) = acd.local_subtree(t).unwrap();
            Ok((Some(acd.global(tr, node)), Some(sub.jump(l, node)?)))
        }
        _ => Ok((None, acd.local_subtree(t).map(|(_, s)| s.leftmost_leaf(0)))),
    }
}

#[derive(Default)]
struct EdgeBuilder {
    edges: Vec<Edge>,
    emap: Vec<usize>,
    seen: HashMap<(usize, usize, Option<usize>, usize), ()>,
}

impl EdgeBuilder {
    fn push(&mut self, src: usize, tgt: usize, node: Option<usize>, orig: usize) {
        if self.seen.insert((src, tgt, node, orig), ()).is_none() {
            let marks = node.map_or_else(MarkSet::new, MarkSet::singleton);
            self.edges.push(Edge::new(src, tgt, marks));
            self.emap.push(orig);
        }
    }
}

/// The ACD-HD-Rabin-transform.
///
/// Vertices are pairs `(v, x)` with `x < mw(t_v)`. For every leaf `l` of
/// `t_v` with `eta(l) = x` and every edge `e: v -> v'`, there is an edge
/// from `(v, x)` outputting the node `n = supp(l, e)` and reaching
/// `(v', eta(jump(l, n)))`. Edges between SCCs output nothing and reach the
/// leftmost leaf. The condition is Rabin over ACD nodes. Every copy of an
/// initial vertex is initial.
pub fn acd_hd_rabin_transform(ts: &TransitionSystem) -> Result<TransformOutput> {
    acd_hd_rabin_transform_from(ts, &build_acd(ts)?)
}

pub fn acd_hd_rabin_transform_from(ts: &TransitionSystem, acd: &Acd) -> Result<TransformOutput> {
    let etas = local_etas(ts, acd);
    let mut base = vec![0usize; ts.num_vertices()];
    let mut vmap = Vec::new();
    let mut component = Vec::new();
    for v in 0..ts.num_vertices() {
        base[v] = vmap.len();
        for x in 0..etas[v].mw {
            vmap.push(v);
            component.push(Some(x));
        }
    }
    let mut b = EdgeBuilder::default();
    for v in 0..ts.num_vertices() {
        for l in leaves_of(acd, v) {
            let x = eta_of(&etas, v, l);
            for &e in ts.out_edges(v) {
                let t = ts.edge(e).tgt;
                let (node, l2) = step(ts, acd, l, e)?;
                b.push(base[v] + x, base[t] + eta_of(&etas, t, l2), node, e);
            }
        }
    }
    let initial = ts
        .initial()
        .iter()
        .flat_map(|&v| { let b0 = base[v]; (0..etas[v].mw).map(move |x| b0 + x) })
        .collect();
    let cond = AcceptanceCondition::new(acd.num_nodes(), Acceptance::Rabin(acd_rabin_pairs(acd)))?;
    let result = TransitionSystem::new(vmap.len(), b.edges, initial, cond)?;
    Ok(TransformOutput {
        result,
        witness: Morphism::new(vmap, b.emap),
        component,
    })
}

/// Check that every Adam edge is unmarked and leads to an Eve vertex whose
/// only incoming edge it is.
pub fn is_suitable(g: &Game) -> std::result::Result<(), usize> {
    let ts = &g.ts;
    for u in 0..ts.num_vertices() {
        if g.owner(u) == Player::Adam {
            for &e in ts.out_edges(u) {
                let ed = ts.edge(e);
                if !ed.marks.is_empty() || g.owner(ed.tgt) != Player::Eve || ts.in_edges(ed.tgt).len() != 1 {
                    return Err(u);
                }
            }
        }
    }
    Ok(())
}

/// The ACD-HD-Rabin-transform for games, returned as a game.
///
/// Adam no longer updates the ACD component: his edges are unmarked and
/// keep `x`. The Eve vertex `w` reached by an Adam edge `u -> w` takes its
/// range from `u`, and its outgoing edges perform the two updates of the
/// path `u -> w -> v'` at once, outputting the node of the first update
/// (or of the second when the first edge crosses SCCs).
pub fn acd_hd_rabin_transform_for_games(g: &Game) -> Result<(Game, TransformOutput)> {
    is_suitable(g).map_err(Error::NotSuitable)?;
    let ts = &g.ts;
    let acd = build_acd(ts)?;
    let etas = local_etas(ts, &acd);
    let n = ts.num_vertices();
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        if g.owner(u) == Player::Adam {
            for &e in ts.out_edges(u) {
                pred[ts.edge(e).tgt] = Some(e);
            }
        }
    }
    let range_of = |v: usize| pred[v].map_or(v, |e| ts.edge(e).src);
    let mut base = vec![0usize; n];
    let mut vmap = Vec::new();
    let mut component = Vec::new();
    for v in 0..n {
        base[v] = vmap.len();
        for x in 0..etas[range_of(v)].mw {
            vmap.push(v);
            component.push(Some(x));
        }
    }
    let mut b = EdgeBuilder::default();
    for v in 0..n {
        if g.owner(v) == Player::Adam {
            for x in 0..etas[v].mw {
                for &e in ts.out_edges(v) {
                    b.push(base[v] + x, base[ts.edge(e).tgt] + x, None, e);
                }
            }
        } else if let Some(e1) = pred[v] {
            let u = ts.edge(e1).src;
            for l in leaves_of(&acd, u) {
                let x = eta_of(&etas, u, l);
                let (n1, l1) = step(ts, &acd, l, e1)?;
                for &e2 in ts.out_edges(v) {
                    let t = ts.edge(e2).tgt;
                    let (n2, l2) = step(ts, &acd, l1, e2)?;
                    b.push(base[v] + x, base[t] + eta_of(&etas, t, l2), n1.or(n2), e2);
                }
            }
        } else {
            for l in leaves_of(&acd, v) {
                let x = eta_of(&etas, v, l);
                for &e in ts.out_edges(v) {
                    let t = ts.edge(e).tgt;
                    let (node, l2) = step(ts, &acd, l, e)?;
                    b.push(base[v] + x, base[t] + eta_of(&etas, t, l2), node, e);
                }
            }
        }
    }
    let initial = ts
        .initial()
        .iter()
        .flat_map(|&v| { let b0 = base[v]; (0..etas[range_of(v)].mw).map(move |x| b0 + x) })
        .collect();
    let cond = AcceptanceCondition::new(acd.num_nodes(), Acceptance::Rabin(acd_rabin_pairs(&acd)))?;
    let result = TransitionSystem::new(vmap.len(), b.edges, initial, cond)?;
    let out = TransformOutput {
        result,
        witness: Morphism::new(vmap, b.emap),
        component,
    };
    let game = out.lift_game(g)?;
    Ok((game, out))
}

/// A game made suitable for transformations.
#[derive(Debug, Clone)]
pub struct Suitable {
    pub game: Game,
    /// Original vertices keep their ids; fresh vertices come after them.
    pub num_original: usize,
    /// For each fresh vertex, the original edge it subdivides.
    pub fresh_origin: Vec<usize>,
}

/// Subdivide every Adam edge that is not already of the required form by
/// a fresh Eve vertex: `u -> v` with marks `M` becomes `u -> w` unmarked
/// followed by `w -> v` with marks `M`.
pub fn make_suitable_for_transformations(g: &Game) -> Result<Suitable> {
    let ts = &g.ts;
    let n = ts.num_vertices();
    let mut edges = Vec::new();
    let mut owner = g.owners().to_vec();
    let mut fresh_origin = Vec::new();
    for (e, ed) in ts.edges().iter().enumerate() {
        let ok = g.owner(ed.src) == Player::Eve
            || (ed.marks.is_empty() && g.owner(ed.tgt) == Player::Eve && ts.in_edges(ed.tgt).len() == 1);
        if ok {
            edges.push(ed.clone());
        } else {
            let w = n + fresh_origin.len();
            fresh_origin.push(e);
            owner.push(Player::Eve);
            edges.push(Edge::eps(ed.src, w));
            edges.push(Edge::new(w, ed.tgt, ed.marks.clone()));
        }
    }
    let total = n + fresh_origin.len();
    let new_ts = TransitionSystem::new(total, edges, ts.initial().to_vec(), ts.acceptance().clone())?;
    Ok(Suitable {
        game: Game::new(new_ts, owner)?,
        num_original: n,
        fresh_origin,
    })
}

/// Colour of each edge of a parity system whose edges carry one mark each.
pub fn parity_colours(ts: &TransitionSystem) -> Result<Vec<u32>> {
    if !ts.acceptance().is_parity() {
        return Err(Error::NotParity);
    }
    (0..ts.num_edges())
        .map(|e| {
            let m = &ts.edge(e).marks;
            if m.len() != 1 {
                return Err(Error::MultiMarkEdge(e));
            }
            Ok(ts.acceptance().parity_colour(m.first().unwrap()).unwrap())
        })
        .collect()
}

/// Same graph with edge `e` coloured `colours[e]`; mark `c` has colour `c`.
pub fn recolour(ts: &TransitionSystem, colours: &[u32]) -> Result<TransitionSystem> {
    let k = colours.iter().copied().max().unwrap_or(0) as usize + 1;
    let edges = ts
        .edges()
        .iter()
        .zip(colours)
        .map(|(ed, &c)| Edge::new(ed.src, ed.tgt, MarkSet::singleton(c as usize)))
        .collect();
    TransitionSystem::new(ts.num_vertices(), edges, ts.initial().to_vec(), AcceptanceCondition::parity_identity(k))
}

/// Colours of the ACD-parity-transform carried back to the edges of `ts`,
/// when every vertex has a single leaf (so the transform does not split
/// vertices). `None` otherwise.
pub fn single_leaf_colours(ts: &TransitionSystem, acd: &Acd) -> Result<Option<Vec<u32>>> {
    let out = acd_parity_transform_from(ts, acd)?;
    if out.result.num_vertices() != ts.num_vertices() {
        return Ok(None);
    }
    let mut colours = vec![0; ts.num_edges()];
    for (i, &e) in out.witness.emap.iter().enumerate() {
        colours[e] = out.result.edge(i).marks.first().unwrap() as u32;
    }
    Ok(Some(colours))
}

/// Colours the ACD assigns to the edges of a parity system (the colouring
/// of its normal form).
pub fn normal_colours(ts: &TransitionSystem) -> Result<Vec<u32>> {
    parity_colours(ts)?;
    let colours = single_leaf_colours(ts, &build_acd(ts)?)?;
    Ok(colours.expect("parity systems have one leaf per vertex"))
}

/// Recolour a parity system by the levels of its ACD.
pub fn normalize_parity(ts: &TransitionSystem) -> Result<TransitionSystem> {
    recolour(ts, &normal_colours(ts)?)
}

/// Whether the colouring of a parity system equals its normal colouring.
pub fn is_normal_form(ts: &TransitionSystem) -> Result<bool> {
    Ok(parity_colours(ts)? == normal_colours(ts)?)
}
