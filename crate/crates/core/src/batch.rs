//! Batch verification of the transforms over many systems.

use crate::acd::build_acd;
use crate::error::Result;
use crate::morphisms::{check_acceptance_preservation, check_hd_mapping, check_local_properties, Direction};
use crate::par::{map, Parallelism};
use crate::transforms::{acd_hd_rabin_transform_from, acd_parity_transform_from};
use crate::ts::TransitionSystem;

/// Verdicts of the checks run on the two transforms of one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TransformReport {
    pub parity_locally_bijective: bool,
    pub parity_preserves_acceptance: bool,
    /// Result size equals the number of leaves of the local subtrees plus
    /// the number of transient vertices.
    pub parity_size_matches: bool,
    pub rabin_preserves_accepting_runs: bool,
    pub rabin_hd: bool,
    /// Result size equals the sum of round-branching widths plus the
    /// number of transient vertices.
    pub rabin_size_matches: bool,
}

impl TransformReport {
    pub fn all(&self) -> bool {
        self.parity_locally_bijective
            && self.parity_preserves_acceptance
            && self.parity_size_matches
            && self.rabin_preserves_accepting_runs
            && self.rabin_hd
            && self.rabin_size_matches
    }
}

/// Run both transforms on `ts` and check their witnesses.
pub fn verify_transforms(ts: &TransitionSystem) -> Result<TransformReport> {
    let acd = build_acd(ts)?;
    let mut leaves = acd.transient().len();
    let mut widths = acd.transient().len();
    for v in 0..ts.num_vertices() {
        if let Some((_, sub)) = acd.local_subtree(v) {
            leaves += sub.leaves().len();
            widths += sub.round_branching_width();
        }
    }
    let par = acd_parity_transform_from(ts, &acd)?;
    let rab = acd_hd_rabin_transform_from(ts, &acd)?;
    let local = check_local_properties(&par.result, ts, &par.witness)?;
    Ok(TransformReport {
        parity_locally_bijective: local.locally_bijective,
        parity_preserves_acceptance: check_acceptance_preservation(&par.result, ts, &par.witness, Direction::Both)?,
        parity_size_matches: par.result.num_vertices() == leaves,
        rabin_preserves_accepting_runs: check_acceptance_preservation(
            &rab.result,
            ts,
            &rab.witness,
            Direction::Forward,
        )?,
        rabin_hd: check_hd_mapping(&rab.result, ts, &rab.witness)?.is_hd,
        rabin_size_matches: rab.result.num_vertices() == widths,
    })
}

/// [`verify_transforms`] over a batch of systems.
pub fn verify_all(systems: &[TransitionSystem], mode: Parallelism) -> Vec<Result<TransformReport>> {
    map(systems, mode, verify_transforms)
}
