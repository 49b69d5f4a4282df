//! Seeded self-check suites shared by the command-line `verify` and the
//! acceptance harness. Inputs are drawn up front, so results do not depend
//! on how rayon schedules the checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{BellMixture, PauliDiagonalMap};
use crate::qstate::{BlochVector, DensityMatrix};
use crate::rng::SeededRng;
use crate::teleport::bell_protocol_output;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: usize,
    pub mismatches: usize,
    /// Largest deviation seen across all checks.
    pub worst_error: f64,
}

/// `None` marks a check that could not run; `Some((error, ok))` one that did.
fn summarize(suite: &'static str, results: Vec<Option<(f64, bool)>>) -> SuiteReport {
    SuiteReport {
        suite,
        checks: results.len(),
        mismatches: results
            .iter()
            .filter(|r| !matches!(r, Some((_, true))))
            .count(),
        worst_error: results.iter().flatten().map(|r| r.0).fold(0.0, f64::max),
    }
}

fn lemma_check(map: &PauliDiagonalMap) -> Option<(f64, bool)> {
    let w = map.to_channel().ok()?.weights();
    let in_range = w.iter().all(|x| (0.0..=1.0).contains(x));
    let mut weight_err = (w.iter().sum::<f64>() - 1.0).abs();
    for (a, b) in w.iter().zip(map.dilation().ok()?.weights()) {
        weight_err = weight_err.max((a - b).abs());
    }
    let mut sorted = w;
    sorted.sort_by(f64::total_cmp);
    let spectrum_err = map
        .to_affine()
        .choi_eigenvalues()
        .iter()
        .zip(sorted)
        .map(|(e, x)| (e - x).abs())
        .fold(0.0, f64::max);
    let ok = in_range && weight_err <= 1e-12 && spectrum_err <= 1e-10;
    Some((weight_err.max(spectrum_err), ok))
}

/// Map → channel → dilation round trip on `samples` random CP Pauli maps.
pub fn lemma_round_trip(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = SeededRng::new(seed);
    let maps: Vec<PauliDiagonalMap> = (0..samples).map(|_| rng.cp_pauli_map()).collect();
    summarize(
        "lemma round trip",
        maps.par_iter().map(lemma_check).collect(),
    )
}

fn equivalence_check(input: &DensityMatrix, channel: &BellMixture) -> Option<(f64, bool)> {
    let simulated = bell_protocol_output(input, channel).ok()?.output;
    let r = channel
        .to_map()
        .to_affine()
        .apply_bloch(input.bloch().ok()?.components());
    let closed = DensityMatrix::from_bloch(BlochVector::from_array(r).ok()?);
    let d = simulated.trace_distance(&closed);
    Some((d, d <= 1e-12))
}

/// Full teleportation simulation against the closed-form Pauli map on
/// `samples` random (input, Bell mixture) pairs.
pub fn protocol_equivalence(samples: usize, seed: u64) -> SuiteReport {
    let mut rng = SeededRng::new(seed);
    let pairs: Vec<(DensityMatrix, BellMixture)> = (0..samples)
        .map(|_| (rng.mixed_state(1), rng.bell_mixture()))
        .collect();
    let results = pairs
        .par_iter()
        .map(|(rho, ch)| equivalence_check(rho, ch))
        .collect();
    summarize("protocol equivalence", results)
}
