//! Disentangling machines: closed-form feasibility, its oracle cross-check,
//! the λ optimizer, the universal-unentanglement theorem and scenario runs.

mod conditions;
mod optimize;
mod oracle;
mod scenario;
mod theorem;

pub use conditions::{
    disentangling_conditions, feasibility_sweep, physical_conditions, FeasibilityConditions,
    MachineParams, SweepRow,
};
pub use optimize::{optimize_equatorial, OptimizationResult, OptimizerConfig};
pub use oracle::{
    conditions_vs_oracle, evaluate_oracle, oracle_suite, OracleAgreement, OracleSuiteReport,
};
pub use scenario::{run_scenario, DisentanglementReport, Scenario};
pub use theorem::{
    check_both_sides_claim, check_triple, theorem_matrix, verify_theorem, BothSidesRow,
    TheoremCase, TheoremReport, STATES_PER_TRIPLE,
};
