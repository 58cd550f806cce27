//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use acdkit::acceptance::AcceptanceCondition;
use acdkit::cycles::is_cycle;
use acdkit::morphisms::Morphism;
use acdkit::ts::compose;
use acdkit::zielonka::{build_zielonka_tree, zt_parity_automaton};
use acdkit::{Automaton, Edge, EdgeSet, Game, MarkSet, Player, TransitionSystem};

pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;

// ---------------------------------------------------------------- fixtures

/// The running family {{a,b},{a,c},{b}} over {a,b,c}.
pub fn abc_family() -> (MarkSet, Vec<MarkSet>) {
    (
        MarkSet::from([A, B, C]),
        vec![MarkSet::from([A, B]), MarkSet::from([A, C]), MarkSet::from([B])],
    )
}

/// One-state Muller automaton reading `a, b, c` with marks `a, b, c`.
pub fn one_state_muller(k: usize, family: Vec<MarkSet>) -> Automaton {
    let tr = (0..k).map(|a| (0, a, 0, MarkSet::singleton(a))).collect();
    Automaton::from_transitions(1, k, tr, vec![0], AcceptanceCondition::muller(k, family).unwrap()).unwrap()
}

/// Six-vertex Muller system with edges `a..l` (marks 0..11) and two SCCs.
pub fn two_scc() -> TransitionSystem {
    let e = [
        (0, 1), // a
        (0, 3), // b
        (1, 2), // c
        (2, 1), // d
        (1, 1), // e
        (2, 3), // f
        (3, 4), // g
        (4, 3), // h
        (3, 4), // i
        (4, 5), // j
        (5, 4), // k
        (5, 5), // l
    ];
    let edges = e.iter().enumerate().map(|(i, &(s, t))| Edge::new(s, t, [i])).collect();
    let f = |s: &[usize]| s.iter().copied().collect::<MarkSet>();
    let family = vec![f(&[2, 3, 4]), f(&[4]), f(&[6, 7, 8]), f(&[11]), f(&[7, 8, 9, 10]), f(&[9, 10])];
    TransitionSystem::new(6, edges, vec![0], AcceptanceCondition::muller(12, family).unwrap()).unwrap()
}

/// Two-state deterministic Muller automaton over {a,b,c} with outputs
/// alpha, beta, gamma (0, 1, 2) and F = {{alpha,beta},{alpha,beta,gamma}}.
pub fn order_muller() -> Automaton {
    let tr = vec![
        (0, B, 0, MarkSet::from([2])),
        (0, C, 0, MarkSet::from([1])),
        (0, A, 1, MarkSet::from([2])),
        (1, A, 1, MarkSet::from([2])),
        (1, B, 0, MarkSet::from([0])),
        (1, C, 0, MarkSet::from([1])),
    ];
    let fam = vec![MarkSet::from([0, 1]), MarkSet::from([0, 1, 2])];
    Automaton::from_transitions(2, 3, tr, vec![0], AcceptanceCondition::muller(3, fam).unwrap()).unwrap()
}

/// Three-state deterministic parity automaton equivalent to [`order_muller`].
pub fn order_parity() -> Automaton {
    let tr = vec![
        (0, A, 1, MarkSet::from([1])),
        (0, B, 0, MarkSet::from([1])),
        (0, C, 0, MarkSet::from([1])),
        (1, A, 1, MarkSet::from([1])),
        (1, B, 2, MarkSet::from([1])),
        (1, C, 0, MarkSet::from([1])),
        (2, A, 2, MarkSet::from([1])),
        (2, B, 2, MarkSet::from([1])),
        (2, C, 0, MarkSet::from([0])),
    ];
    Automaton::from_transitions(3, 3, tr, vec![0], AcceptanceCondition::parity_identity(2)).unwrap()
}

/// Three-state history-deterministic parity automaton over {a,b,c} with
/// colours 1 and 2, recognising words whose infinitely repeated letters
/// form one of {a},{b},{c},{a,b},{b,c}. The only choice is on `b` from q1.
pub fn hd_parity() -> Automaton {
    let t = |s, a, d, c: usize| (s, a, d, MarkSet::singleton(c));
    let tr = vec![
        t(0, A, 0, 2),
        t(0, B, 0, 2),
        t(0, C, 1, 1),
        t(1, A, 0, 2),
        t(1, B, 0, 2),
        t(1, B, 2, 2),
        t(1, C, 2, 2),
        t(2, B, 2, 2),
        t(2, C, 2, 2),
        t(2, A, 1, 1),
    ];
    Automaton::from_transitions(3, 3, tr, vec![0], AcceptanceCondition::parity_identity(3)).unwrap()
}

/// The accepting letter sets of [`hd_parity`].
pub fn hd_parity_family() -> Vec<MarkSet> {
    vec![
        MarkSet::from([A]),
        MarkSet::from([B]),
        MarkSet::from([C]),
        MarkSet::from([A, B]),
        MarkSet::from([B, C]),
    ]
}

/// A locally bijective morphism from a three-state parity system onto a
/// two-state Muller system with F = {{alpha},{beta}}.
pub fn bijective() -> (TransitionSystem, TransitionSystem, Morphism) {
    let fam = vec![MarkSet::from([0]), MarkSet::from([1])];
    let t = TransitionSystem::new(
        2,
        vec![Edge::new(0, 0, [0]), Edge::new(0, 1, [1]), Edge::new(1, 1, [2]), Edge::new(1, 0, [1])],
        vec![0],
        AcceptanceCondition::muller(3, fam).unwrap(),
    )
    .unwrap();
    let s = TransitionSystem::new(
        3,
        vec![
            Edge::new(0, 0, [2]),
            Edge::new(0, 2, [1]),
            Edge::new(1, 0, [1]),
            Edge::new(1, 2, [2]),
            Edge::new(2, 2, [1]),
            Edge::new(2, 1, [2]),
        ],
        vec![0],
        AcceptanceCondition::parity_identity(3),
    )
    .unwrap();
    (s, t, Morphism::new(vec![0, 0, 1], vec![0, 1, 0, 1, 2, 3]))
}

/// An HD mapping that is locally surjective but neither locally injective
/// nor a morphism: a coBüchi system onto a two-state Muller system with
/// F = {{alpha},{alpha,beta},{alpha,lambda}}.
pub fn hd_only() -> (TransitionSystem, TransitionSystem, Morphism) {
    let fam = vec![MarkSet::from([0]), MarkSet::from([0, 1]), MarkSet::from([0, 2])];
    // v' = 0, u' = 1
    let t = TransitionSystem::new(
        2,
        vec![Edge::new(0, 1, [0]), Edge::new(0, 0, [0]), Edge::new(1, 0, [1]), Edge::new(1, 0, [2])],
        vec![0],
        AcceptanceCondition::muller(3, fam).unwrap(),
    )
    .unwrap();
    // v0 = 0, u1 = 1, v1 = 2, u2 = 3, v2 = 4
    let s_edges = [
        (0, 1, 1, 0),
        (0, 2, 1, 1),
        (0, 3, 1, 0),
        (0, 4, 1, 1),
        (2, 2, 2, 1),
        (2, 1, 2, 0),
        (1, 2, 2, 2),
        (1, 0, 1, 3),
        (4, 4, 2, 1),
        (4, 3, 2, 0),
        (3, 0, 1, 2),
        (3, 4, 2, 3),
    ];
    let s = TransitionSystem::new(
        5,
        s_edges.iter().map(|&(a, b, c, _)| Edge::new(a, b, [c])).collect(),
        vec![0],
        AcceptanceCondition::parity_identity(3),
    )
    .unwrap();
    let phi = Morphism::new(vec![0, 1, 0, 1, 0], s_edges.iter().map(|e| e.3).collect());
    (s, t, phi)
}

/// A locally bijective weak morphism preserving accepting runs that is not
/// an HD mapping: the source alternates between two states on `A B A B ..`
/// and rejects, while the target accepts everything.
pub fn non_hd() -> (TransitionSystem, TransitionSystem, Morphism) {
    let all = vec![MarkSet::from([0]), MarkSet::from([1]), MarkSet::from([0, 1])];
    let t = TransitionSystem::new(
        1,
        vec![Edge::new(0, 0, [0]), Edge::new(0, 0, [1])],
        vec![0],
        AcceptanceCondition::muller(2, all).unwrap(),
    )
    .unwrap();
    let s = TransitionSystem::new(
        2,
        vec![Edge::new(0, 0, [0]), Edge::new(0, 1, [1]), Edge::new(1, 1, [0]), Edge::new(1, 0, [1])],
        vec![0],
        AcceptanceCondition::parity_identity(2),
    )
    .unwrap();
    (s, t, Morphism::new(vec![0, 0], vec![0, 1, 1, 0]))
}

/// Product of `a` with the deterministic counter modulo `m` that adds the
/// letter index plus one at each step; the result has `|Q| * m` states and
/// the same language.
pub fn with_counter(a: &Automaton, m: usize) -> Automaton {
    let q = a.num_states();
    let mut tr = Vec::new();
    for s in 0..q {
        for c in 0..m {
            for l in 0..a.num_letters() {
                let e = a.successor_edge(s, l).unwrap();
                let t = a.ts.edge(e).tgt;
                tr.push((s * m + c, l, t * m + (c + l + 1) % m, a.ts.edge(e).marks.clone()));
            }
        }
    }
    let init = a.ts.initial()[0] * m;
    Automaton::from_transitions(q * m, a.num_letters(), tr, vec![init], a.ts.acceptance().clone()).unwrap()
}

// ----------------------------------------------------------------- oracles

/// All cycles of a small system, by checking every subset of edges.
pub fn brute_cycles(ts: &TransitionSystem) -> Vec<EdgeSet> {
    let m = ts.num_edges();
    assert!(m <= 20, "too many edges for subset enumeration");
    (1u64..1 << m)
        .map(|bits| (0..m).filter(|&i| bits >> i & 1 == 1).collect::<EdgeSet>())
        .filter(|s| is_cycle(ts, s))
        .collect()
}

/// Cycles reachable from the initial vertices.
pub fn reachable_cycles(ts: &TransitionSystem) -> Vec<EdgeSet> {
    let reach = ts.reachable();
    brute_cycles(ts)
        .into_iter()
        .filter(|c| c.iter().all(|e| reach[ts.edge(e).src]))
        .collect()
}

pub fn accepts(ts: &TransitionSystem, cycle: &EdgeSet) -> bool {
    ts.acceptance().accepts(&ts.marks_of(cycle))
}

/// Whether every cycle gets the same verdict in two systems over one graph.
pub fn same_verdicts_brute(a: &TransitionSystem, b: &TransitionSystem) -> bool {
    brute_cycles(a).iter().all(|c| accepts(a, c) == accepts(b, c))
}

/// Acceptance preservation of a weak morphism by enumerating reachable
/// cycles of the source.
pub fn preserves_brute(src: &TransitionSystem, tgt: &TransitionSystem, phi: &Morphism, both: bool) -> bool {
    reachable_cycles(src).iter().all(|c| {
        let img: EdgeSet = c.iter().map(|e| phi.emap[e]).collect();
        let (s, t) = (accepts(src, c), accepts(tgt, &img));
        if both {
            s == t
        } else {
            !s || t
        }
    })
}

fn parity_colour(ts: &TransitionSystem, e: usize) -> Option<u32> {
    let acc = ts.acceptance();
    ts.edge(e).marks.iter().filter_map(|m| acc.parity_colour(m)).min()
}

/// Whether Adam, alone in the graph where Eve's vertices keep only the
/// edge chosen by `eve`, can reach from `v` a cycle with odd least colour.
fn adam_escapes(g: &Game, eve: &[usize], v: usize) -> bool {
    let ts = &g.ts;
    let allowed: Vec<usize> = (0..ts.num_edges())
        .filter(|&e| {
            let s = ts.edge(e).src;
            g.owner(s) == Player::Adam || eve[s] == e
        })
        .collect();
    // reachable vertices from v
    let n = ts.num_vertices();
    let mut seen = vec![false; n];
    let mut stack = vec![v];
    seen[v] = true;
    while let Some(x) = stack.pop() {
        for &e in &allowed {
            let ed = ts.edge(e);
            if ed.src == x && !seen[ed.tgt] {
                seen[ed.tgt] = true;
                stack.push(ed.tgt);
            }
        }
    }
    let colours: Vec<Option<u32>> = (0..ts.num_edges()).map(|e| parity_colour(ts, e)).collect();
    let odd: Vec<u32> = colours.iter().flatten().copied().filter(|c| c % 2 == 1).collect();
    for c in odd {
        // a cycle through an edge of colour c using only colours >= c
        let sub: Vec<usize> = allowed
            .iter()
            .copied()
            .filter(|&e| seen[ts.edge(e).src] && colours[e].map_or(true, |x| x >= c))
            .collect();
        for &e in sub.iter().filter(|&&e| colours[e] == Some(c)) {
            // can we get from tgt(e) back to src(e) inside sub?
            let mut vis = vec![false; n];
            let mut st = vec![ts.edge(e).tgt];
            vis[ts.edge(e).tgt] = true;
            while let Some(x) = st.pop() {
                for &f in &sub {
                    let ed = ts.edge(f);
                    if ed.src == x && !vis[ed.tgt] {
                        vis[ed.tgt] = true;
                        st.push(ed.tgt);
                    }
                }
            }
            if vis[ts.edge(e).src] {
                return true;
            }
        }
    }
    false
}

/// Eve's winning region in a parity game, by enumerating her positional
/// strategies (parity games are positionally determined).
pub fn parity_winners_brute(g: &Game) -> Vec<bool> {
    let ts = &g.ts;
    let n = ts.num_vertices();
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|v| if g.owner(v) == Player::Eve { ts.out_edges(v).to_vec() } else { vec![usize::MAX] })
        .collect();
    let mut win = vec![false; n];
    let mut idx = vec![0usize; n];
    loop {
        let eve: Vec<usize> = (0..n).map(|v| choices[v][idx[v]]).collect();
        for v in 0..n {
            if !win[v] && !adam_escapes(g, &eve, v) {
                win[v] = true;
            }
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == n {
            return win;
        }
    }
}

/// Eve's winning region in a Muller game whose edges carry one mark each:
/// the game is composed with the ZT-parity-automaton of its family, whose
/// leaves serve as memory, and the product parity game is solved by
/// strategy enumeration.
pub fn muller_winners_brute(g: &Game) -> Vec<bool> {
    let ts = &g.ts;
    let k = ts.acceptance().num_marks();
    let family: Vec<MarkSet> = (1u64..1 << k)
        .map(|bits| (0..k).filter(|&i| bits >> i & 1 == 1).collect::<MarkSet>())
        .filter(|s| ts.acceptance().accepts(s))
        .collect();
    let zt = build_zielonka_tree(&MarkSet::full(k), &family).unwrap();
    let aut = zt_parity_automaton(&zt).unwrap().automaton;
    let comp = compose(ts, &aut).unwrap();
    let pg = comp.lift_game(g).unwrap();
    let w = parity_winners_brute(&pg);
    let q = aut.num_states();
    let init = aut.ts.initial()[0];
    (0..ts.num_vertices()).map(|v| w[v * q + init]).collect()
}

/// Every parity colouring of the graph of `ts` with colours in `lo..=hi`
/// that gives each cycle the same verdict as `ts`.
pub fn equivalent_colourings(ts: &TransitionSystem, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let cycles = brute_cycles(ts);
    let verdicts: Vec<bool> = cycles.iter().map(|c| accepts(ts, c)).collect();
    let m = ts.num_edges();
    let base = (hi - lo + 1) as u64;
    let mut out = Vec::new();
    for code in 0..base.pow(m as u32) {
        let mut x = code;
        let col: Vec<u32> = (0..m)
            .map(|_| {
                let c = lo + (x % base) as u32;
                x /= base;
                c
            })
            .collect();
        let ok = cycles
            .iter()
            .zip(&verdicts)
            .all(|(c, &v)| (c.iter().map(|e| col[e]).min().unwrap() % 2 == 0) == v);
        if ok {
            out.push(col);
        }
    }
    out
}
