//! Closed-form feasibility of the general equatorial map
//! `σ₁ ↦ λσ₁, σ₃ ↦ λσ₃, σ₂ ↦ mσ₁ + lσ₂ + nσ₃` applied to one party of a
//! Schmidt state `a|00⟩ + b|11⟩`.
//!
//! The image is a state for every `a` iff all three [`physical_conditions`]
//! are non-negative, and it is PPT for every `a` iff all three
//! [`disentangling_conditions`] are non-negative.

use serde::Serialize;

use crate::channels::{general_map_lmn, AffineBlochMap};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MachineParams {
    pub lambda: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl MachineParams {
    pub fn new(lambda: f64, l: f64, m: f64, n: f64) -> Self {
        Self { lambda, l, m, n }
    }

    pub fn to_map(&self) -> AffineBlochMap {
        general_map_lmn(self.lambda, self.l, self.m, self.n)
    }
}

/// Positivity of the image for every Schmidt coefficient.
pub fn physical_conditions(p: &MachineParams) -> [f64; 3] {
    let MachineParams { lambda, l, m, n } = *p;
    let q = 1.0 - l * l - m * m - n * n;
    [
        1.0 - lambda * lambda - n * n,
        q - lambda * (1.0 + l * l + m * m - 2.0 * l - n * n) - 2.0 * lambda * lambda * (1.0 - l),
        q * q - 4.0 * lambda * lambda * (1.0 - l) * (1.0 - l),
    ]
}

/// Positivity of the partial transpose of the image for every Schmidt
/// coefficient. Differs from [`physical_conditions`] by `l → −l`.
pub fn disentangling_conditions(p: &MachineParams) -> [f64; 3] {
    let MachineParams { lambda, l, m, n } = *p;
    let q = 1.0 - l * l - m * m - n * n;
    [
        1.0 - lambda * lambda - n * n,
        q - lambda * (1.0 + l * l + m * m + 2.0 * l - n * n) - 2.0 * lambda * lambda * (1.0 + l),
        q * q - 4.0 * lambda * lambda * (1.0 + l) * (1.0 + l),
    ]
}

/// Both sets of left-hand sides at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityConditions {
    pub physical: [f64; 3],
    pub disentangling: [f64; 3],
}

fn min3(v: &[f64; 3]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}

impl FeasibilityConditions {
    pub fn evaluate(p: &MachineParams) -> Self {
        Self {
            physical: physical_conditions(p),
            disentangling: disentangling_conditions(p),
        }
    }

    pub fn physical_margin(&self) -> f64 {
        min3(&self.physical)
    }

    pub fn disentangling_margin(&self) -> f64 {
        min3(&self.disentangling)
    }

    pub fn is_physical(&self) -> bool {
        self.physical_margin() >= tol::PSD_FLOOR
    }

    pub fn is_disentangling(&self) -> bool {
        self.disentangling_margin() >= tol::PSD_FLOOR
    }

    pub fn is_feasible(&self) -> bool {
        self.is_physical() && self.is_disentangling()
    }
}

/// One row of a λ sweep at fixed `(l, m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub params: MachineParams,
    pub conditions: FeasibilityConditions,
}

impl SweepRow {
    pub const CSV_HEADER: [&'static str; 11] = [
        "lambda", "l", "m", "n", "a14_1", "a14_2", "a14_3", "a15_1", "a15_2", "a15_3", "feasible",
    ];

    pub fn feasible(&self) -> bool {
        self.conditions.is_feasible()
    }
}

/// Evaluates both condition sets for `steps + 1` evenly spaced λ in `[lo, hi]`.
pub fn feasibility_sweep(lo: f64, hi: f64, steps: usize, l: f64, m: f64, n: f64) -> Vec<SweepRow> {
    (0..=steps)
        .map(|k| {
            let lambda = if steps == 0 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / steps as f64
            };
            let params = MachineParams::new(lambda, l, m, n);
            SweepRow {
                params,
                conditions: FeasibilityConditions::evaluate(&params),
            }
        })
        .collect()
}
