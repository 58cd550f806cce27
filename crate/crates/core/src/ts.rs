//! Transition systems, automata and games.

use std::collections::VecDeque;

use crate::acceptance::AcceptanceCondition;
use crate::cycles;
use crate::error::{Error, Result};
use crate::morphisms::Morphism;
use crate::set::{EdgeSet, MarkSet};

/// An edge `src -> tgt` carrying a (possibly empty) set of marks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub marks: MarkSet,
}

impl Edge {
    pub fn new(src: usize, tgt: usize, marks: impl Into<MarkSet>) -> Self {
        Edge {
            src,
            tgt,
            marks: marks.into(),
        }
    }

    /// An unmarked edge.
    pub fn eps(src: usize, tgt: usize) -> Self {
        Edge {
            src,
            tgt,
            marks: MarkSet::new(),
        }
    }
}

/// A pointed multigraph whose edges carry mark sets, with an acceptance
/// condition over those marks.
///
/// Construction rejects sinks, cycles made only of unmarked edges, an empty
/// initial set and marks outside the acceptance alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    n: usize,
    edges: Vec<Edge>,
    initial: Vec<usize>,
    acceptance: AcceptanceCondition,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl TransitionSystem {
    pub fn new(
        num_vertices: usize,
        edges: Vec<Edge>,
        initial: Vec<usize>,
        acceptance: AcceptanceCondition,
    ) -> Result<Self> {
        let mut out = vec![Vec::new(); num_vertices];
        let mut inc = vec![Vec::new(); num_vertices];
        for (i, e) in edges.iter().enumerate() {
            if e.src >= num_vertices {
                return Err(Error::VertexOutOfRange(e.src));
            }
            if e.tgt >= num_vertices {
                return Err(Error::VertexOutOfRange(e.tgt));
            }
            if let Some(m) = e.marks.last() {
                if m >= acceptance.num_marks() {
                    return Err(Error::UnknownMark(m));
                }
            }
            out[e.src].push(i);
            inc[e.tgt].push(i);
        }
        if let Some(v) = (0..num_vertices).find(|&v| out[v].is_empty()) {
            return Err(Error::Sink(v));
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        if initial.is_empty() {
            return Err(Error::NoInitial);
        }
        if let Some(&v) = initial.iter().find(|&&v| v >= num_vertices) {
            return Err(Error::VertexOutOfRange(v));
        }
        let ts = TransitionSystem {
            n: num_vertices,
            edges,
            initial,
            acceptance,
            out,
            inc,
        };
        let eps: EdgeSet = (0..ts.edges.len())
            .filter(|&e| ts.edges[e].marks.is_empty())
            .collect();
        if !cycles::sccs_within(&ts, &eps).is_empty() {
            return Err(Error::EpsilonCycle);
        }
        Ok(ts)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn acceptance(&self) -> &AcceptanceCondition {
        &self.acceptance
    }

    /// Outgoing edge ids of `v`.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Incoming edge ids of `v`.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    /// Union of the marks of a set of edges.
    pub fn marks_of(&self, edges: &EdgeSet) -> MarkSet {
        let mut m = MarkSet::with_capacity(self.acceptance.num_marks());
        for e in edges.iter() {
            m.union_with(&self.edges[e].marks);
        }
        m
    }

    /// Vertices touched by a set of edges.
    pub fn states_of(&self, edges: &EdgeSet) -> Vec<usize> {
        let mut s: Vec<usize> = edges
            .iter()
            .flat_map(|e| [self.edges[e].src, self.edges[e].tgt])
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Same graph, different acceptance condition.
    pub fn with_acceptance(&self, acceptance: AcceptanceCondition) -> Result<Self> {
        Self::new(self.n, self.edges.clone(), self.initial.clone(), acceptance)
    }

    /// Replace the initial set.
    pub fn set_initial(&self, initial: Vec<usize>) -> Result<Self> {
        Self::new(self.n, self.edges.clone(), initial, self.acceptance.clone())
    }

    /// Vertices reachable from the initial set.
    pub fn reachable(&self) -> Vec<bool> {
        self.reachable_from(&self.initial)
    }

    pub fn reachable_from(&self, from: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &v in from {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v] {
                let t = self.edges[e].tgt;
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// The sub-system on the vertices reachable from the initial set.
    pub fn accessible_part(&self) -> Result<Restriction> {
        let keep = self.reachable();
        let edges: EdgeSet = (0..self.edges.len())
            .filter(|&e| keep[self.edges[e].src])
            .collect();
        self.restrict_edges(&edges)
    }

    /// Keep the given vertices (and the edges between them), then prune
    /// vertices that became sinks.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Restriction> {
        let mut keep = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange(v));
            }
            keep[v] = true;
        }
        let edges: EdgeSet = (0..self.edges.len())
            .filter(|&e| keep[self.edges[e].src] && keep[self.edges[e].tgt])
            .collect();
        self.restrict_edges(&edges)
    }

    /// Keep the given edges, then prune vertices without outgoing edges.
    ///
    /// Surviving initial vertices stay initial; if none survive every
    /// remaining vertex becomes initial.
    pub fn restrict_edges(&self, edges: &EdgeSet) -> Result<Restriction> {
        let mut alive_e: Vec<bool> = (0..self.edges.len()).map(|e| edges.contains(e)).collect();
        let mut alive_v = vec![false; self.n];
        let mut deg = vec![0usize; self.n];
        for (e, ed) in self.edges.iter().enumerate() {
            if alive_e[e] {
                alive_v[ed.src] = true;
                alive_v[ed.tgt] = true;
                deg[ed.src] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| alive_v[v] && deg[v] == 0).collect();
        while let Some(v) = stack.pop() {
            if !alive_v[v] {
                continue;
            }
            alive_v[v] = false;
            for &e in &self.inc[v] {
                if alive_e[e] {
                    alive_e[e] = false;
                    let s = self.edges[e].src;
                    deg[s] -= 1;
                    if deg[s] == 0 && alive_v[s] {
                        stack.push(s);
                    }
                }
            }
        }
        let vertices: Vec<usize> = (0..self.n).filter(|&v| alive_v[v]).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyResult);
        }
        let mut vertex_map = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            vertex_map[v] = Some(i);
        }
        let edge_ids: Vec<usize> = (0..self.edges.len()).filter(|&e| alive_e[e]).collect();
        let new_edges = edge_ids
            .iter()
            .map(|&e| {
                let ed = &self.edges[e];
                Edge::new(
                    vertex_map[ed.src].unwrap(),
                    vertex_map[ed.tgt].unwrap(),
                    ed.marks.clone(),
                )
            })
            .collect();
        let mut initial: Vec<usize> = self.initial.iter().filter_map(|&v| vertex_map[v]).collect();
        if initial.is_empty() {
            initial = (0..vertices.len()).collect();
        }
        let ts = TransitionSystem::new(vertices.len(), new_edges, initial, self.acceptance.clone())?;
        Ok(Restriction {
            ts,
            vertex_map,
            vertices,
            edges: edge_ids,
        })
    }
}

/// Result of a restriction, with maps between old and new ids.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub ts: TransitionSystem,
    /// Old vertex id to new vertex id.
    pub vertex_map: Vec<Option<usize>>,
    /// New vertex id to old vertex id.
    pub vertices: Vec<usize>,
    /// New edge id to old edge id.
    pub edges: Vec<usize>,
}

impl Restriction {
    /// Embedding of the restricted system into the original one.
    pub fn embedding(&self) -> Morphism {
        Morphism::new(self.vertices.clone(), self.edges.clone())
    }
}

/// A transition system whose edges are labelled by input letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    pub ts: TransitionSystem,
    letters: Vec<usize>,
    num_letters: usize,
    letter_names: Option<Vec<String>>,
}

impl Automaton {
    pub fn new(ts: TransitionSystem, letters: Vec<usize>, num_letters: usize) -> Result<Self> {
        if letters.len() != ts.num_edges() {
            return Err(Error::Invalid("one letter per edge is required".into()));
        }
        if let Some(&a) = letters.iter().find(|&&a| a >= num_letters) {
            return Err(Error::Invalid(format!("letter {a} outside the alphabet")));
        }
        Ok(Automaton {
            ts,
            letters,
            num_letters,
            letter_names: None,
        })
    }

    /// Build from `(src, letter, tgt, marks)` tuples.
    pub fn from_transitions(
        num_states: usize,
        num_letters: usize,
        transitions: Vec<(usize, usize, usize, MarkSet)>,
        initial: Vec<usize>,
        acceptance: AcceptanceCondition,
    ) -> Result<Self> {
        let letters = transitions.iter().map(|t| t.1).collect();
        let edges = transitions.into_iter().map(|(s, _, t, m)| Edge::new(s, t, m)).collect();
        let ts = TransitionSystem::new(num_states, edges, initial, acceptance)?;
        Automaton::new(ts, letters, num_letters)
    }

    pub fn with_letter_names(mut self, names: Vec<String>) -> Self {
        self.letter_names = Some(names);
        self
    }

    pub fn letter_names(&self) -> Option<&[String]> {
        self.letter_names.as_deref()
    }

    pub fn letter(&self, e: usize) -> usize {
        self.letters[e]
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn num_states(&self) -> usize {
        self.ts.num_vertices()
    }

    /// Edges leaving `q` labelled `a`.
    pub fn edges_on(&self, q: usize, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.ts.out_edges(q).iter().copied().filter(move |&e| self.letters[e] == a)
    }

    pub fn is_deterministic(&self) -> bool {
        self.ts.initial().len() == 1
            && (0..self.num_states()).all(|q| (0..self.num_letters).all(|a| self.edges_on(q, a).count() <= 1))
    }

    pub fn is_complete(&self) -> bool {
        self.first_missing().is_none()
    }

    fn first_missing(&self) -> Option<(usize, usize)> {
        (0..self.num_states())
            .flat_map(|q| (0..self.num_letters).map(move |a| (q, a)))
            .find(|&(q, a)| self.edges_on(q, a).next().is_none())
    }

    pub fn require_complete(&self) -> Result<()> {
        match self.first_missing() {
            Some((state, letter)) => Err(Error::IncompleteAutomaton { state, letter }),
            None => Ok(()),
        }
    }

    /// The unique `a`-edge from `q` of a deterministic complete automaton.
    pub fn successor_edge(&self, q: usize, a: usize) -> Option<usize> {
        self.edges_on(q, a).next()
    }

    /// Letters of a set of edges.
    pub fn letters_of(&self, edges: &EdgeSet) -> MarkSet {
        edges.iter().map(|e| self.letters[e]).collect()
    }

    pub fn with_ts(&self, ts: TransitionSystem) -> Result<Self> {
        let mut a = Automaton::new(ts, self.letters.clone(), self.num_letters)?;
        a.letter_names = self.letter_names.clone();
        Ok(a)
    }

    /// Restriction to the accessible part, keeping letters.
    pub fn accessible_part(&self) -> Result<Automaton> {
        let r = self.ts.accessible_part()?;
        self.restricted(&r)
    }

    pub(crate) fn restricted(&self, r: &Restriction) -> Result<Automaton> {
        let letters = r.edges.iter().map(|&e| self.letters[e]).collect();
        let mut a = Automaton::new(r.ts.clone(), letters, self.num_letters)?;
        a.letter_names = self.letter_names.clone();
        Ok(a)
    }
}

/// The two players of a game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Eve,
    Adam,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eve => Player::Adam,
            Player::Adam => Player::Eve,
        }
    }
}

/// A transition system whose vertices are owned by Eve or Adam; Eve wins
/// the runs the acceptance condition accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    pub ts: TransitionSystem,
    owner: Vec<Player>,
}

impl Game {
    pub fn new(ts: TransitionSystem, owner: Vec<Player>) -> Result<Self> {
        if owner.len() != ts.num_vertices() {
            return Err(Error::Invalid("one owner per vertex is required".into()));
        }
        Ok(Game { ts, owner })
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn owners(&self) -> &[Player] {
        &self.owner
    }

    pub fn num_vertices(&self) -> usize {
        self.ts.num_vertices()
    }
}

/// The product of a transition system with an automaton reading its marks.
#[derive(Debug, Clone)]
pub struct Composition {
    pub ts: TransitionSystem,
    /// Projection onto the left factor.
    pub projection: Morphism,
    /// Automaton state of each product vertex.
    pub state: Vec<usize>,
    /// Automaton edge used by each product edge (`None` for unmarked edges).
    pub automaton_edge: Vec<Option<usize>>,
}

/// `ts ⊗ a`: `a` reads the mark of each edge of `ts` and the product uses
/// the marks of `a`. Unmarked edges of `ts` leave the automaton state
/// unchanged.
///
/// Every edge of `ts` must carry at most one mark, and the letters of `a`
/// must be the marks of `ts`.
pub fn compose(ts: &TransitionSystem, a: &Automaton) -> Result<Composition> {
    a.require_complete()?;
    if a.num_letters() != ts.acceptance().num_marks() {
        return Err(Error::AlphabetMismatch);
    }
    let q = a.num_states();
    let id = |v: usize, s: usize| v * q + s;
    let mut edges = Vec::new();
    let mut vmap = Vec::with_capacity(ts.num_vertices() * q);
    let mut emap = Vec::new();
    let mut state = Vec::with_capacity(ts.num_vertices() * q);
    let mut aedge = Vec::new();
    for v in 0..ts.num_vertices() {
        for s in 0..q {
            vmap.push(v);
            state.push(s);
            for &e in ts.out_edges(v) {
                let ed = ts.edge(e);
                match ed.marks.len() {
                    0 => {
                        edges.push(Edge::eps(id(v, s), id(ed.tgt, s)));
                        emap.push(e);
                        aedge.push(None);
                    }
                    1 => {
                        let letter = ed.marks.first().unwrap();
                        for ae in a.edges_on(s, letter) {
                            let t = a.ts.edge(ae);
                            edges.push(Edge::new(id(v, s), id(ed.tgt, t.tgt), t.marks.clone()));
                            emap.push(e);
                            aedge.push(Some(ae));
                        }
                    }
                    _ => return Err(Error::MultiMarkEdge(e)),
                }
            }
        }
    }
    let initial = ts
        .initial()
        .iter()
        .flat_map(|&v| a.ts.initial().iter().map(move |&s| id(v, s)))
        .collect();
    let product = TransitionSystem::new(ts.num_vertices() * q, edges, initial, a.ts.acceptance().clone())?;
    Ok(Composition {
        ts: product,
        projection: Morphism::new(vmap, emap),
        state,
        automaton_edge: aedge,
    })
}

impl Composition {
    /// Carry the letters of a left-factor automaton over to the product.
    pub fn lift_automaton(&self, left: &Automaton) -> Result<Automaton> {
        let letters = self.projection.emap.iter().map(|&e| left.letter(e)).collect();
        let mut out = Automaton::new(self.ts.clone(), letters, left.num_letters())?;
        out.letter_names = left.letter_names.clone();
        Ok(out)
    }

    /// Carry vertex ownership of a left-factor game over to the product.
    pub fn lift_game(&self, left: &Game) -> Result<Game> {
        let owner = self.projection.vmap.iter().map(|&v| left.owner(v)).collect();
        Game::new(self.ts.clone(), owner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acceptance::Acceptance;

    fn parity1() -> AcceptanceCondition {
        AcceptanceCondition::new(2, Acceptance::Parity(vec![0, 1])).unwrap()
    }

    #[test]
    fn rejects_sinks_and_eps_cycles() {
        let e = TransitionSystem::new(2, vec![Edge::new(0, 1, [0])], vec![0], parity1());
        assert_eq!(e, Err(Error::Sink(1)));
        let e = TransitionSystem::new(
            2,
            vec![Edge::eps(0, 1), Edge::eps(1, 0), Edge::new(0, 0, [1])],
            vec![0],
            parity1(),
        );
        assert_eq!(e, Err(Error::EpsilonCycle));
        let e = TransitionSystem::new(1, vec![Edge::new(0, 0, [0])], vec![], parity1());
        assert_eq!(e, Err(Error::NoInitial));
        let e = TransitionSystem::new(1, vec![Edge::new(0, 0, [4])], vec![0], parity1());
        assert_eq!(e, Err(Error::UnknownMark(4)));
    }

    #[test]
    fn restriction_prunes_sinks() {
        let ts = TransitionSystem::new(
            3,
            vec![Edge::new(0, 1, [0]), Edge::new(1, 2, [0]), Edge::new(2, 2, [1]), Edge::new(1, 0, [1])],
            vec![0],
            parity1(),
        )
        .unwrap();
        let r = ts.restrict(&[0, 1]).unwrap();
        assert_eq!(r.ts.num_vertices(), 2);
        assert_eq!(r.ts.num_edges(), 2);
        assert!(matches!(ts.restrict_edges(&EdgeSet::from([0])), Err(Error::EmptyResult)));
        let all = ts.set_initial(vec![0, 1, 2]).unwrap();
        assert_eq!(all.initial().len(), 3);
    }

    #[test]
    fn compose_copies_eps_edges_per_state() {
        let ts = TransitionSystem::new(
            2,
            vec![Edge::eps(0, 1), Edge::new(1, 0, [0]), Edge::new(1, 1, [1])],
            vec![0],
            parity1(),
        )
        .unwrap();
        let a = Automaton::from_transitions(
            2,
            2,
            vec![
                (0, 0, 1, MarkSet::from([0])),
                (0, 1, 0, MarkSet::from([1])),
                (1, 0, 0, MarkSet::from([1])),
                (1, 1, 1, MarkSet::from([0])),
            ],
            vec![0],
            parity1(),
        )
        .unwrap();
        let c = compose(&ts, &a).unwrap();
        assert_eq!(c.ts.num_vertices(), 4);
        let eps = c.ts.edges().iter().filter(|e| e.marks.is_empty()).count();
        assert_eq!(eps, 2);
    }

    #[test]
    fn compose_requires_complete_automaton() {
        let ts = TransitionSystem::new(1, vec![Edge::new(0, 0, [0])], vec![0], parity1()).unwrap();
        let a = Automaton::from_transitions(1, 2, vec![(0, 0, 0, MarkSet::from([0]))], vec![0], parity1()).unwrap();
        assert!(matches!(compose(&ts, &a), Err(Error::IncompleteAutomaton { state: 0, letter: 1 })));
    }
}
