//! Morphisms between transition systems and checks of their properties.
//!
//! A [`Morphism`] is only a pair of index maps. Every property is checked
//! against an explicit source and target.

use crate::acceptance::{AcceptanceCondition, Formula};
use crate::analysis::games::solve_muller_game;
use crate::cycles::find_cycle;
use crate::error::{Budget, Error, Result};
use crate::set::{EdgeSet, MarkSet, VertexSet};
use crate::ts::{Edge, Game, Player, TransitionSystem};

/// A vertex map and an edge map from a source system to a target system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub vmap: Vec<usize>,
    pub emap: Vec<usize>,
}

impl Morphism {
    pub fn new(vmap: Vec<usize>, emap: Vec<usize>) -> Self {
        Morphism { vmap, emap }
    }

    /// The identity on `ts`.
    pub fn identity(ts: &TransitionSystem) -> Self {
        Morphism::new((0..ts.num_vertices()).collect(), (0..ts.num_edges()).collect())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Morphism) -> Morphism {
        Morphism::new(
            self.vmap.iter().map(|&v| next.vmap[v]).collect(),
            self.emap.iter().map(|&e| next.emap[e]).collect(),
        )
    }
}

fn check_total(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> Result<()> {
    if phi.vmap.len() != src.num_vertices() || phi.vmap.iter().any(|&v| v >= tgt.num_vertices()) {
        return Err(Error::MapNotTotal("vertex map"));
    }
    if phi.emap.len() != src.num_edges() || phi.emap.iter().any(|&e| e >= tgt.num_edges()) {
        return Err(Error::MapNotTotal("edge map"));
    }
    Ok(())
}

/// Whether `phi` commutes with sources and targets and sends initial
/// vertices to initial vertices.
pub fn check_weak_morphism(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> Result<bool> {
    check_total(src, tgt, phi)?;
    let edges_ok = src.edges().iter().zip(&phi.emap).all(|(e, &f)| {
        let img = tgt.edge(f);
        img.src == phi.vmap[e.src] && img.tgt == phi.vmap[e.tgt]
    });
    let init_ok = src.initial().iter().all(|&v| tgt.initial().contains(&phi.vmap[v]));
    Ok(edges_ok && init_ok)
}

/// Which implication between acceptance verdicts to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Accepting cycles of the source map to accepting cycles.
    Forward,
    /// The verdicts of a cycle and of its image coincide.
    Both,
}

/// Search a reachable cycle of `src` whose own verdict is `src_verdict`
/// and whose image has verdict `tgt_verdict`.
fn find_mismatch(
    src: &TransitionSystem,
    tgt: &TransitionSystem,
    phi: &Morphism,
    src_verdict: bool,
    tgt_verdict: bool,
    budget: Budget,
) -> Result<Option<EdgeSet>> {
    let k = src.acceptance().num_marks();
    let kt = tgt.acceptance().num_marks();
    let labels: Vec<MarkSet> = (0..src.num_edges())
        .map(|e| src.edge(e).marks.union(&tgt.edge(phi.emap[e]).marks.shifted(k)))
        .collect();
    let reach = src.reachable();
    let within: EdgeSet = (0..src.num_edges()).filter(|&e| reach[src.edge(e).src]).collect();
    find_cycle(
        src,
        &within,
        &labels,
        |lab| {
            src.acceptance().accepts(&lab.window(0, k)) == src_verdict
                && tgt.acceptance().accepts(&lab.window(k, k + kt)) == tgt_verdict
        },
        budget,
    )
}

/// Whether `phi` preserves accepting runs (and, for [`Direction::Both`],
/// rejecting runs). Runs are compared through their sets of edges seen
/// infinitely often, which are exactly the reachable cycles.
pub fn check_acceptance_preservation(
    src: &TransitionSystem,
    tgt: &TransitionSystem,
    phi: &Morphism,
    dir: Direction,
) -> Result<bool> {
    check_acceptance_preservation_with(src, tgt, phi, dir, Budget::default())
}

pub fn check_acceptance_preservation_with(
    src: &TransitionSystem,
    tgt: &TransitionSystem,
    phi: &Morphism,
    dir: Direction,
    budget: Budget,
) -> Result<bool> {
    check_total(src, tgt, phi)?;
    if find_mismatch(src, tgt, phi, true, false, budget)?.is_some() {
        return Ok(false);
    }
    if dir == Direction::Both && find_mismatch(src, tgt, phi, false, true, budget)?.is_some() {
        return Ok(false);
    }
    Ok(true)
}

/// Local and global surjectivity/injectivity of a weak morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LocalProperties {
    pub locally_surjective: bool,
    pub locally_injective: bool,
    pub locally_bijective: bool,
    pub surjective: bool,
    pub injective: bool,
}

pub fn check_local_properties(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> Result<LocalProperties> {
    check_total(src, tgt, phi)?;
    let mut surj = true;
    let mut inj = true;
    let image_of = |set: &mut dyn Iterator<Item = usize>| -> (VertexSet, bool) {
        let mut seen = VertexSet::new();
        let mut injective = true;
        for x in set {
            if seen.contains(x) {
                injective = false;
            }
            seen.insert(x);
        }
        (seen, injective)
    };
    for v in 0..src.num_vertices() {
        let (img, i) = image_of(&mut src.out_edges(v).iter().map(|&e| phi.emap[e]));
        inj &= i;
        let wanted: VertexSet = tgt.out_edges(phi.vmap[v]).iter().copied().collect();
        surj &= img == wanted;
    }
    let (init_img, i) = image_of(&mut src.initial().iter().map(|&v| phi.vmap[v]));
    inj &= i;
    surj &= init_img == tgt.initial().iter().copied().collect::<VertexSet>();
    let (vimg, vinj) = image_of(&mut phi.vmap.iter().copied());
    Ok(LocalProperties {
        locally_surjective: surj,
        locally_injective: inj,
        locally_bijective: surj && inj,
        surjective: vimg.len() == tgt.num_vertices(),
        injective: vinj,
    })
}

/// Whether `phi` is an isomorphism: bijective on vertices, edges and
/// initial vertices, and preserving acceptance in both directions.
pub fn check_isomorphism(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> Result<bool> {
    if src.num_vertices() != tgt.num_vertices() || src.num_edges() != tgt.num_edges() {
        return Ok(false);
    }
    if !check_weak_morphism(src, tgt, phi)? {
        return Ok(false);
    }
    let bij = |m: &[usize], n: usize| m.iter().copied().collect::<VertexSet>().len() == n;
    if !bij(&phi.vmap, tgt.num_vertices()) || !bij(&phi.emap, tgt.num_edges()) {
        return Ok(false);
    }
    let init: VertexSet = src.initial().iter().map(|&v| phi.vmap[v]).collect();
    if init != tgt.initial().iter().copied().collect::<VertexSet>() {
        return Ok(false);
    }
    check_acceptance_preservation(src, tgt, phi, Direction::Both)
}

/// Outcome of the simulation game between Spoiler and Duplicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HdCheck {
    /// Duplicator wins from every initial choice of Spoiler.
    pub is_hd: bool,
    /// Source vertices from which Duplicator wins once the target run is
    /// in the image of the vertex.
    pub resolver_region: VertexSet,
}

/// Whether `phi` is an HD mapping, decided by solving the simulation game.
///
/// Requires `phi` to be a weak morphism preserving accepting runs.
pub fn check_hd_mapping(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism) -> Result<HdCheck> {
    hd_game(src, tgt, phi, None)
}

/// Whether `phi` is an HD-for-games mapping: Spoiler resolves the moves
/// leaving Adam's vertices of the source game.
pub fn check_hd_for_games_mapping(src: &Game, tgt: &Game, phi: &Morphism) -> Result<HdCheck> {
    hd_game(&src.ts, &tgt.ts, phi, Some(src.owners()))
}

/// Arena of the simulation game.
///
/// Vertices: `P(v)` for each source vertex (Spoiler picks a target edge),
/// one pending vertex per pair `(v, e')` with `e'` leaving `phi(v)`
/// (Duplicator picks a preimage), one start vertex per target initial
/// vertex, and a losing sink. Duplicator moves carry the marks of both
/// edges, the target marks shifted past the source marks, plus a step mark
/// that keeps every cycle marked.
pub(crate) fn simulation_game(
    src: &TransitionSystem,
    tgt: &TransitionSystem,
    phi: &Morphism,
    owners: Option<&[Player]>,
) -> Result<(Game, Vec<usize>)> {
    let n = src.num_vertices();
    let k = src.acceptance().num_marks();
    let kt = tgt.acceptance().num_marks();
    let step = k + kt;
    let lose = k + kt + 1;
    let mut owner: Vec<Player> = vec![Player::Adam; n];
    let mut edges = Vec::new();
    let sink = {
        owner.push(Player::Eve);
        n
    };
    edges.push(Edge::new(sink, sink, [step, lose]));
    for v in 0..n {
        for &f in tgt.out_edges(phi.vmap[v]) {
            let pending = owner.len();
            let adam_moves = owners.is_some_and(|o| o[v] == Player::Adam);
            owner.push(if adam_moves { Player::Adam } else { Player::Eve });
            edges.push(Edge::eps(v, pending));
            let mut any = false;
            for &e in src.out_edges(v) {
                if phi.emap[e] == f {
                    any = true;
                    let mut m = src.edge(e).marks.union(&tgt.edge(f).marks.shifted(k));
                    m.insert(step);
                    edges.push(Edge::new(pending, src.edge(e).tgt, m));
                }
            }
            if !any {
                edges.push(Edge::new(pending, sink, [step]));
            }
        }
    }
    let mut starts = Vec::new();
    for &t in tgt.initial() {
        let s = owner.len();
        owner.push(Player::Eve);
        starts.push(s);
        let pre: Vec<usize> = src.initial().iter().copied().filter(|&v| phi.vmap[v] == t).collect();
        if pre.is_empty() {
            edges.push(Edge::new(s, sink, [step]));
        }
        for v in pre {
            edges.push(Edge::new(s, v, [step]));
        }
    }
    let fs = src.acceptance().to_emerson_lei();
    let ft = tgt.acceptance().to_emerson_lei().shift(k);
    let formula = Formula::and(vec![
        Formula::Fin(lose),
        Formula::or(vec![fs, ft.negate()]),
    ]);
    let cond = AcceptanceCondition::emerson_lei(k + kt + 2, formula)?;
    let ts = TransitionSystem::new(owner.len(), edges, starts.clone(), cond)?;
    Ok((Game::new(ts, owner)?, starts))
}

fn hd_game(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism, owners: Option<&[Player]>) -> Result<HdCheck> {
    if !check_weak_morphism(src, tgt, phi)? {
        return Err(Error::PreconditionFailed("not a weak morphism"));
    }
    if !check_acceptance_preservation(src, tgt, phi, Direction::Forward)? {
        return Err(Error::PreconditionFailed("accepting runs are not preserved"));
    }
    let (game, starts) = simulation_game(src, tgt, phi, owners)?;
    let sol = solve_muller_game(&game)?;
    let is_hd = starts.iter().all(|&s| sol.eve_region.contains(s));
    let resolver_region = (0..src.num_vertices()).filter(|&v| sol.eve_region.contains(v)).collect();
    Ok(HdCheck { is_hd, resolver_region })
}
