//! Cross-check of the closed-form conditions against direct eigenvalue and
//! partial-transpose computations on the mapped Schmidt states.

use rayon::prelude::*;
use serde::Serialize;

use super::conditions::{FeasibilityConditions, MachineParams};
use crate::channels::Party;
use crate::qstate::{min_eigenvalue, ppt};
use crate::rng::{schmidt_state, SeededRng};
use crate::tol;

/// Closed-form and oracle verdicts at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleAgreement {
    pub params: MachineParams,
    pub conditions: FeasibilityConditions,
    pub physical_oracle: bool,
    pub disentangling_oracle: bool,
    /// Smallest eigenvalue of the mapped state over all samples.
    pub min_eigenvalue: f64,
    /// Smallest partial-transpose eigenvalue over all samples.
    pub min_pt_eigenvalue: f64,
    /// First sampled Schmidt coefficient whose image is not positive.
    pub offending_physical_a: Option<f64>,
    /// First sampled Schmidt coefficient whose image is not PPT.
    pub offending_disentangling_a: Option<f64>,
}

impl OracleAgreement {
    fn in_band(margin: f64) -> bool {
        margin.abs() <= tol::BOUNDARY_BAND
    }

    pub fn physical_agrees(&self) -> bool {
        Self::in_band(self.conditions.physical_margin())
            || self.conditions.is_physical() == self.physical_oracle
    }

    pub fn disentangling_agrees(&self) -> bool {
        Self::in_band(self.conditions.disentangling_margin())
            || self.conditions.is_disentangling() == self.disentangling_oracle
    }

    pub fn agrees(&self) -> bool {
        self.physical_agrees() && self.disentangling_agrees()
    }
}

/// Evaluates the oracle at the given Schmidt coefficients.
pub fn evaluate_oracle(params: &MachineParams, schmidt: &[f64]) -> OracleAgreement {
    let map = params.to_map();
    let mut out = OracleAgreement {
        params: *params,
        conditions: FeasibilityConditions::evaluate(params),
        physical_oracle: true,
        disentangling_oracle: true,
        min_eigenvalue: f64::INFINITY,
        min_pt_eigenvalue: f64::INFINITY,
        offending_physical_a: None,
        offending_disentangling_a: None,
    };
    for &a in schmidt {
        let image = map
            .apply_one_side(&schmidt_state(a), Party::First)
            .expect("two-qubit input")
            .matrix;
        let eig = min_eigenvalue(&image).expect("image is Hermitian");
        let pt = ppt(&image).expect("4x4").min_pt_eigenvalue;
        out.min_eigenvalue = out.min_eigenvalue.min(eig);
        out.min_pt_eigenvalue = out.min_pt_eigenvalue.min(pt);
        if eig < tol::PSD_FLOOR && out.offending_physical_a.is_none() {
            out.physical_oracle = false;
            out.offending_physical_a = Some(a);
        }
        if pt < tol::PSD_FLOOR && out.offending_disentangling_a.is_none() {
            out.disentangling_oracle = false;
            out.offending_disentangling_a = Some(a);
        }
    }
    out
}

/// Compares closed-form feasibility with the oracle over `samples` Schmidt
/// coefficients drawn uniformly from `[0, 1]`.
pub fn conditions_vs_oracle(
    params: &MachineParams,
    samples: usize,
    rng: &mut SeededRng,
) -> OracleAgreement {
    let schmidt: Vec<f64> = (0..samples.max(1)).map(|_| rng.uniform()).collect();
    evaluate_oracle(params, &schmidt)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSuiteReport {
    pub points: usize,
    pub samples_per_point: usize,
    pub physical_feasible: usize,
    pub disentangling_feasible: usize,
    pub disagreements: Vec<OracleAgreement>,
}

/// `points` random `(λ, l, m, n)` in `[−1, 1]⁴`, each checked against
/// `samples` Schmidt coefficients. All randomness is drawn up front in seed
/// order, so the report does not depend on thread scheduling.
pub fn oracle_suite(points: usize, samples: usize, seed: u64) -> OracleSuiteReport {
    let mut rng = SeededRng::new(seed);
    let inputs: Vec<(MachineParams, Vec<f64>)> = (0..points)
        .map(|_| {
            let [lambda, l, m, n] = std::array::from_fn(|_| rng.uniform_in(-1.0, 1.0));
            let schmidt = (0..samples.max(1)).map(|_| rng.uniform()).collect();
            (MachineParams::new(lambda, l, m, n), schmidt)
        })
        .collect();
    let results: Vec<OracleAgreement> = inputs
        .par_iter()
        .map(|(p, schmidt)| evaluate_oracle(p, schmidt))
        .collect();
    OracleSuiteReport {
        points,
        samples_per_point: samples.max(1),
        physical_feasible: results
            .iter()
            .filter(|r| r.conditions.is_physical())
            .count(),
        disentangling_feasible: results
            .iter()
            .filter(|r| r.conditions.is_disentangling())
            .count(),
        disagreements: results.into_iter().filter(|r| !r.agrees()).collect(),
    }
}
