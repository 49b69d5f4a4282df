//! Universal unentanglement by Pauli-diagonal maps: a map with
//! `0 ≤ λⱼ ≤ 1` makes every two-qubit state separable iff `Σλⱼ ≤ 1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::channels::{Party, PauliDiagonalMap};
use crate::qstate::{pauli::BellState, ComplexMatrix, DensityMatrix, Separability};
use crate::rng::SeededRng;
use crate::tol;

/// Random states checked for every triple with `Σλ ≤ 1`.
pub const STATES_PER_TRIPLE: usize = 20;

/// Image of `P[φ⁺]` under the map applied to party 2, in closed form.
pub fn theorem_matrix(lambda: [f64; 3]) -> ComplexMatrix {
    let [l1, l2, l3] = lambda;
    ComplexMatrix::from_real_rows(&[
        [1.0 + l3, 0.0, 0.0, l1 + l2],
        [0.0, 1.0 - l3, l1 - l2, 0.0],
        [0.0, l1 - l2, 1.0 - l3, 0.0],
        [l1 + l2, 0.0, 0.0, 1.0 + l3],
    ])
    .expect("4x4")
    .scale_real(0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremCase {
    pub lambda: [f64; 3],
    pub closed_form_separable: bool,
    pub oracle_separable: bool,
    pub min_pt_eigenvalue: f64,
    /// Random states with `Σλ ≤ 1` whose image was not separable.
    pub random_state_failures: usize,
}

impl TheoremCase {
    pub fn on_boundary(&self) -> bool {
        (self.lambda.iter().sum::<f64>() - 1.0).abs() <= tol::BOUNDARY_BAND
    }

    pub fn is_mismatch(&self) -> bool {
        !self.on_boundary()
            && (self.closed_form_separable != self.oracle_separable
                || self.random_state_failures > 0)
    }
}

/// Checks one λ-triple against `P[φ⁺]` and, when `Σλ ≤ 1`, against `states`.
pub fn check_triple(lambda: [f64; 3], states: &[DensityMatrix]) -> TheoremCase {
    let map = PauliDiagonalMap::from_array(lambda)
        .expect("λ in [0, 1]")
        .to_affine();
    let phi = DensityMatrix::new(BellState::PhiPlus.projector()).expect("Bell state");
    let image = map.apply_one_side(&phi, Party::Second).expect("two qubits");
    let Separability {
        separable,
        min_pt_eigenvalue,
    } = crate::qstate::ppt(&image.matrix).expect("4x4");
    let closed_form_separable = lambda.iter().sum::<f64>() <= 1.0;
    let random_state_failures = if closed_form_separable {
        states
            .iter()
            .filter(|rho| {
                let out = map.apply_one_side(rho, Party::Second).expect("two qubits");
                !crate::qstate::ppt(&out.matrix).expect("4x4").separable
            })
            .count()
    } else {
        0
    };
    TheoremCase {
        lambda,
        closed_form_separable,
        oracle_separable: separable,
        min_pt_eigenvalue,
        random_state_failures,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub samples: usize,
    pub boundary_excluded: usize,
    pub separable_triples: usize,
    pub random_state_checks: usize,
    pub mismatches: Vec<TheoremCase>,
}

/// Draws `samples` triples uniformly from `[0, 1]³` and compares the
/// closed-form verdict with the PPT oracle.
pub fn verify_theorem(samples: usize, seed: u64) -> TheoremReport {
    let mut rng = SeededRng::new(seed);
    let inputs: Vec<([f64; 3], Vec<DensityMatrix>)> = (0..samples)
        .map(|_| {
            let lambda = rng.lambda_triple(0.0, 1.0);
            let states = if lambda.iter().sum::<f64>() <= 1.0 {
                (0..STATES_PER_TRIPLE)
                    .map(|_| rng.entangled_pure_state())
                    .collect()
            } else {
                Vec::new()
            };
            (lambda, states)
        })
        .collect();
    let cases: Vec<TheoremCase> = inputs
        .par_iter()
        .map(|(lambda, states)| check_triple(*lambda, states))
        .collect();
    TheoremReport {
        samples,
        boundary_excluded: cases.iter().filter(|c| c.on_boundary()).count(),
        separable_triples: cases.iter().filter(|c| c.closed_form_separable).count(),
        random_state_checks: inputs.iter().map(|(_, s)| s.len()).sum(),
        mismatches: cases.into_iter().filter(TheoremCase::is_mismatch).collect(),
    }
}

/// One row of the two-sided machine check at `λ = 1/2 + ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BothSidesRow {
    pub epsilon: f64,
    pub physical: bool,
    /// `w₄ = (1 − λ₁ + λ₂ − λ₃)/4` of the would-be channel.
    pub w4: f64,
    pub choi_min_eigenvalue: f64,
}

/// Tests whether `σ₁ ↦ (1/2 + ε)σ₁, σ₂ ↦ 0, σ₃ ↦ (1/2 + ε)σ₃` is physical.
pub fn check_both_sides_claim(epsilons: &[f64]) -> Vec<BothSidesRow> {
    epsilons
        .iter()
        .map(|&epsilon| {
            let lambda = 0.5 + epsilon;
            let map = crate::channels::AffineBlochMap::from_matrix([
                [lambda, 0.0, 0.0],
                [0.0, 0.0, 0.0],
                [0.0, 0.0, lambda],
            ]);
            let choi_min_eigenvalue = map.choi_eigenvalues()[0];
            BothSidesRow {
                epsilon,
                physical: choi_min_eigenvalue >= tol::PSD_FLOOR,
                w4: (1.0 - 2.0 * lambda) / 4.0,
                choi_min_eigenvalue,
            }
        })
        .collect()
}
