//! Largest shrinking factor λ for which some `(l, m, n)` makes the general
//! equatorial map both physical and disentangling.
//!
//! Outer loop: bisection on λ ∈ [0, 1]. Inner loop: maximize the worst
//! constraint value over `(l, m, n) ∈ [−1, 1]³`, first on a coarse grid that
//! contains the origin and the box corners, then by a compass search whose
//! step halves down to `refine_tol`.

use serde::Serialize;

use super::conditions::{
    disentangling_conditions, physical_conditions, FeasibilityConditions, MachineParams,
};
use crate::error::{Error, Result};

/// Bisection stops once the bracket is this narrow.
const BISECTION_WIDTH: f64 = 1e-10;
/// Offset above the optimum that must be infeasible.
const ABOVE_PROBE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub grid_step: f64,
    pub refine_tol: f64,
    /// When false only positivity is imposed.
    pub include_disentangling: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_step: 0.05,
            refine_tol: 1e-4,
            include_disentangling: true,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = (1e-6..=0.1).contains(&self.refine_tol)
            && (1e-6..=0.1).contains(&self.grid_step)
            && self.refine_tol <= self.grid_step;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "need 1e-6 <= refine_tol ({}) <= grid_step ({}) <= 0.1",
                self.refine_tol, self.grid_step
            )))
        }
    }

    fn margin(&self, p: &MachineParams) -> f64 {
        let phys = physical_conditions(p);
        let mut worst = phys.iter().copied().fold(f64::INFINITY, f64::min);
        if self.include_disentangling {
            worst = disentangling_conditions(p)
                .iter()
                .copied()
                .fold(worst, f64::min);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub lambda_max: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// Bisection steps taken.
    pub iterations: usize,
    pub certificate: FeasibilityConditions,
    /// Whether `lambda_max + 1e-6` was found infeasible.
    pub above_infeasible: bool,
}

/// Best worst-constraint value over `(l, m, n)` at fixed λ, with its witness.
fn best_margin(lambda: f64, cfg: &OptimizerConfig) -> (f64, [f64; 3]) {
    let cells = (1.0 / cfg.grid_step).ceil() as i64;
    let coord = |k: i64| k as f64 / cells as f64;
    let eval = |x: [f64; 3]| cfg.margin(&MachineParams::new(lambda, x[0], x[1], x[2]));

    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for i in -cells..=cells {
        for j in -cells..=cells {
            for k in -cells..=cells {
                let x = [coord(i), coord(j), coord(k)];
                let g = eval(x);
                if g > best.0 {
                    best = (g, x);
                }
            }
        }
    }

    let (mut g, mut x) = best;
    let mut step = 1.0 / cells as f64;
    while g < 0.0 && step >= cfg.refine_tol {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut y = x;
                y[axis] = (y[axis] + dir * step).clamp(-1.0, 1.0);
                let gy = eval(y);
                if gy > g {
                    (g, x) = (gy, y);
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    (g, x)
}

/// Bisection for the largest feasible λ.
pub fn optimize_equatorial(cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    cfg.validate()?;
    let (g0, mut witness) = best_margin(0.0, cfg);
    if g0 < 0.0 {
        return Err(Error::NoFeasiblePoint);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut iterations = 0;
    let (g1, w1) = best_margin(1.0, cfg);
    if g1 >= 0.0 {
        lo = 1.0;
        witness = w1;
    } else {
        while hi - lo > BISECTION_WIDTH {
            let mid = 0.5 * (lo + hi);
            let (g, w) = best_margin(mid, cfg);
            if g >= 0.0 {
                lo = mid;
                witness = w;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
    }
    let [l, m, n] = witness;
    let above_infeasible = best_margin(lo + ABOVE_PROBE, cfg).0 < 0.0;
    Ok(OptimizationResult {
        lambda_max: lo,
        l,
        m,
        n,
        iterations,
        certificate: FeasibilityConditions::evaluate(&MachineParams::new(lo, l, m, n)),
        above_infeasible,
    })
}
