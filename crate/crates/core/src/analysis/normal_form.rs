//! Structural properties of parity systems in normal form.

use crate::acd::{build_acd, Polarity};
use crate::cycles::{enumerate_cycles, is_accepting_cycle, scc_decompose};
use crate::error::Result;
use crate::transforms::parity_colours;
use crate::ts::TransitionSystem;

/// Reachability using only edges of colour at least `d`.
fn closure(ts: &TransitionSystem, colours: &[u32], d: u32) -> Vec<Vec<bool>> {
    let n = ts.num_vertices();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for (e, ed) in ts.edges().iter().enumerate() {
        if colours[e] >= d {
            r[ed.src][ed.tgt] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Path property of normal forms: a path from `v` to `v'` in one SCC with
/// least colour `d` can be closed by a path back using no colour below
/// `d`; edges between SCCs have colour 0 or 1.
pub fn check_path_property(ts: &TransitionSystem) -> Result<bool> {
    let colours = parity_colours(ts)?;
    let dec = scc_decompose(ts);
    let same = |a: usize, b: usize| dec.scc_of[a].is_some() && dec.scc_of[a] == dec.scc_of[b];
    for (e, ed) in ts.edges().iter().enumerate() {
        if !same(ed.src, ed.tgt) && colours[e] > 1 {
            return Ok(false);
        }
    }
    let mut ds: Vec<u32> = colours.clone();
    ds.sort_unstable();
    ds.dedup();
    let n = ts.num_vertices();
    for d in ds {
        let r = closure(ts, &colours, d);
        for (e, ed) in ts.edges().iter().enumerate() {
            if colours[e] != d {
                continue;
            }
            for v in (0..n).filter(|&v| r[v][ed.src]) {
                for w in (0..n).filter(|&w| r[ed.tgt][w] && same(v, w)) {
                    if !r[w][v] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Petal property of normal forms: for each cycle through `v` with least
/// colour `d`, every colour between the least colour of `v`'s SCC and `d`
/// is the least colour of some cycle through `v`.
pub fn check_petal_property(ts: &TransitionSystem) -> Result<bool> {
    let colours = parity_colours(ts)?;
    let negative = build_acd(ts)?.polarity() == Polarity::Negative;
    let dec = scc_decompose(ts);
    for v in 0..ts.num_vertices() {
        let Some(s) = dec.scc_of[v] else { continue };
        let lo = if is_accepting_cycle(ts, &dec.sccs[s].edges) {
            if negative { 2 } else { 0 }
        } else {
            1
        };
        let mins: Vec<u32> = enumerate_cycles(ts, Some(v))?
            .iter()
            .map(|c| c.iter().map(|e| colours[e]).min().unwrap())
            .collect();
        for &d in &mins {
            if (lo..=d).any(|x| !mins.contains(&x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
