//! Strongly connected components and cycles.
//!
//! A cycle is a non-empty set of edges whose induced sub-multigraph is
//! strongly connected; it is represented by its [`EdgeSet`].

use std::collections::HashSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Budget, Result};
use crate::set::{EdgeSet, MarkSet, VertexSet};
use crate::ts::TransitionSystem;

/// A non-trivial strongly connected component: its vertices and the edges
/// internal to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    pub vertices: Vec<usize>,
    pub edges: EdgeSet,
}

/// The non-trivial SCCs of the sub-multigraph formed by `edges`, ordered by
/// least vertex.
pub fn sccs_within(ts: &TransitionSystem, edges: &EdgeSet) -> Vec<Scc> {
    let n = ts.num_vertices();
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(n, edges.len());
    for _ in 0..n {
        g.add_node(());
    }
    for e in edges.iter() {
        let ed = ts.edge(e);
        g.add_edge(NodeIndex::new(ed.src), NodeIndex::new(ed.tgt), ());
    }
    let mut comp = vec![usize::MAX; n];
    let comps = tarjan_scc(&g);
    for (i, c) in comps.iter().enumerate() {
        for v in c {
            comp[v.index()] = i;
        }
    }
    let mut internal: Vec<EdgeSet> = vec![EdgeSet::new(); comps.len()];
    for e in edges.iter() {
        let ed = ts.edge(e);
        if comp[ed.src] == comp[ed.tgt] {
            internal[comp[ed.src]].insert(e);
        }
    }
    let mut out: Vec<Scc> = comps
        .into_iter()
        .zip(internal)
        .filter(|(_, es)| !es.is_empty())
        .map(|(vs, es)| {
            let mut vertices: Vec<usize> = vs.into_iter().map(|v| v.index()).collect();
            vertices.sort_unstable();
            Scc { vertices, edges: es }
        })
        .collect();
    out.sort_by_key(|s| s.vertices[0]);
    out
}

/// SCCs of a whole system together with its transient vertices.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    pub sccs: Vec<Scc>,
    /// SCC index of each recurrent vertex.
    pub scc_of: Vec<Option<usize>>,
    /// Vertices lying on no cycle.
    pub transient: Vec<usize>,
}

pub fn scc_decompose(ts: &TransitionSystem) -> SccDecomposition {
    let sccs = sccs_within(ts, &ts.all_edges());
    let mut scc_of = vec![None; ts.num_vertices()];
    for (i, s) in sccs.iter().enumerate() {
        for &v in &s.vertices {
            scc_of[v] = Some(i);
        }
    }
    let transient = (0..ts.num_vertices()).filter(|&v| scc_of[v].is_none()).collect();
    SccDecomposition {
        sccs,
        scc_of,
        transient,
    }
}

/// Whether `edges` is a cycle of `ts`.
pub fn is_cycle(ts: &TransitionSystem, edges: &EdgeSet) -> bool {
    if edges.is_empty() {
        return false;
    }
    let sccs = sccs_within(ts, edges);
    sccs.len() == 1 && sccs[0].edges == *edges
}

/// Whether the marks of the cycle are accepted.
pub fn is_accepting_cycle(ts: &TransitionSystem, cycle: &EdgeSet) -> bool {
    ts.acceptance().accepts(&ts.marks_of(cycle))
}

fn vertex_set(ts: &TransitionSystem, edges: &EdgeSet) -> VertexSet {
    ts.states_of(edges).into_iter().collect()
}

/// Every cycle of `ts`, optionally only those through `at`, sorted.
///
/// Simple cycles are listed first and then closed under union of cycles
/// sharing a vertex; every strongly connected edge set arises this way.
pub fn enumerate_cycles(ts: &TransitionSystem, at: Option<usize>) -> Result<Vec<EdgeSet>> {
    enumerate_cycles_with(ts, at, Budget::default())
}

pub fn enumerate_cycles_with(
    ts: &TransitionSystem,
    at: Option<usize>,
    budget: Budget,
) -> Result<Vec<EdgeSet>> {
    let mut all = Vec::new();
    for scc in sccs_within(ts, &ts.all_edges()) {
        if let Some(v) = at {
            if scc.vertices.binary_search(&v).is_err() {
                continue;
            }
        }
        let simple = simple_cycles(ts, &scc, budget)?;
        let closed = union_closure(ts, simple, budget)?;
        all.extend(closed);
        budget.check(all.len(), "enumerating cycles")?;
    }
    if let Some(v) = at {
        all.retain(|c| c.iter().any(|e| ts.edge(e).src == v));
    }
    all.sort();
    Ok(all)
}

fn simple_cycles(ts: &TransitionSystem, scc: &Scc, budget: Budget) -> Result<Vec<EdgeSet>> {
    let mut found = Vec::new();
    let n = ts.num_vertices();
    let mut on_path = vec![false; n];
    for &s in &scc.vertices {
        let mut path: Vec<usize> = Vec::new();
        // Explicit DFS stack of (vertex, next out-edge index).
        let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
        on_path[s] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let outs = ts.out_edges(v);
            if *i >= outs.len() {
                stack.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            let e = outs[*i];
            *i += 1;
            if !scc.edges.contains(e) {
                continue;
            }
            let t = ts.edge(e).tgt;
            if t == s {
                let mut c: EdgeSet = path.iter().copied().collect();
                c.insert(e);
                found.push(c);
                budget.check(found.len(), "enumerating simple cycles")?;
            } else if t > s && !on_path[t] {
                on_path[t] = true;
                path.push(e);
                stack.push((t, 0));
            }
        }
        on_path[s] = false;
    }
    Ok(found)
}

fn union_closure(ts: &TransitionSystem, seed: Vec<EdgeSet>, budget: Budget) -> Result<Vec<EdgeSet>> {
    let mut seen: HashSet<EdgeSet> = HashSet::new();
    let mut list: Vec<(EdgeSet, VertexSet)> = Vec::new();
    for c in seed {
        if seen.insert(c.clone()) {
            let vs = vertex_set(ts, &c);
            list.push((c, vs));
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            if list[i].1.intersects(&list[j].1) {
                let u = list[i].0.union(&list[j].0);
                if !seen.contains(&u) {
                    seen.insert(u.clone());
                    let vs = list[i].1.union(&list[j].1);
                    list.push((u, vs));
                    budget.check(list.len(), "closing cycles under union")?;
                }
            }
        }
        i += 1;
    }
    Ok(list.into_iter().map(|(c, _)| c).collect())
}

/// Search for a cycle inside `within` whose label set satisfies `pred`,
/// where the label set of a cycle is the union of `labels[e]` over its
/// edges.
///
/// The search checks every SCC and, when the SCC fails, descends into the
/// sub-SCCs obtained by deleting the edges carrying one label. Any cycle
/// satisfying `pred` misses some label of each enclosing failing SCC, so
/// the descent is complete.
pub fn find_cycle(
    ts: &TransitionSystem,
    within: &EdgeSet,
    labels: &[MarkSet],
    pred: impl Fn(&MarkSet) -> bool,
    budget: Budget,
) -> Result<Option<EdgeSet>> {
    let mut visited: HashSet<EdgeSet> = HashSet::new();
    let mut stack: Vec<EdgeSet> = sccs_within(ts, within).into_iter().map(|s| s.edges).collect();
    while let Some(s) = stack.pop() {
        if !visited.insert(s.clone()) {
            continue;
        }
        budget.check(visited.len(), "searching cycles")?;
        let mut lab = MarkSet::new();
        for e in s.iter() {
            lab.union_with(&labels[e]);
        }
        if pred(&lab) {
            return Ok(Some(s));
        }
        for m in lab.iter() {
            let rest: EdgeSet = s.iter().filter(|&e| !labels[e].contains(m)).collect();
            for sub in sccs_within(ts, &rest) {
                if !visited.contains(&sub.edges) {
                    stack.push(sub.edges);
                }
            }
        }
    }
    Ok(None)
}

/// Marks of each edge, as a vector usable with [`find_cycle`].
pub fn edge_marks(ts: &TransitionSystem) -> Vec<MarkSet> {
    ts.edges().iter().map(|e| e.marks.clone()).collect()
}
