use std::fmt::Write as _;
use std::path::Path;

use disent_core::channels::{BellMixture, Party};
use disent_core::disentangle::{
    check_both_sides_claim, feasibility_sweep, optimize_equatorial, run_scenario, verify_theorem,
    OptimizationResult, OptimizerConfig, Scenario, SweepRow,
};
use disent_core::qstate::{BlochVector, DensityMatrix};
use disent_core::rng::SeededRng;
use disent_core::suites::{lemma_round_trip, protocol_equivalence};
use disent_core::teleport::{
    bell_protocol_output, run_classical_protocol, teleport_party_of_bipartite, Outcome,
    ProtocolTrace,
};
use disent_core::{json::sig17, Error};
use serde::Serialize;

use crate::render::{csv_rows, csv_table, json, vec3, Format};

/// Why a command stopped short of exit code 0.
#[derive(Debug)]
pub enum Failure {
    /// The computation ran; its verdict is negative. Output is still printed.
    Semantic(String),
    Usage(String),
    Invariant(String),
    Premise(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::Premise(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PremiseViolation(_) | Error::NotCommutingPremise(_) => {
                Failure::Premise(e.to_string())
            }
            Error::Json(_) | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            Error::NoFeasiblePoint => Failure::Semantic(e.to_string()),
            _ => Failure::Invariant(e.to_string()),
        }
    }
}

/// Printed output plus the verdict that decides the exit code.
pub struct Report {
    pub stdout: String,
    pub failure: Option<Failure>,
}

pub type CmdResult = Result<Report, Failure>;

fn ok(stdout: String) -> CmdResult {
    Ok(Report {
        stdout,
        failure: None,
    })
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read state file {}: {e}", path.display())))?;
    Ok(DensityMatrix::from_json(&text)?)
}

// ---------------------------------------------------------------- teleport

pub enum TeleportInput {
    Bloch([f64; 3]),
    State(DensityMatrix),
}

#[derive(Serialize)]
struct ShotCount {
    outcome: Outcome,
    count: usize,
}

#[derive(Serialize)]
struct TeleportReport {
    channel: [f64; 4],
    lambda: [f64; 3],
    /// Teleported party of a two-qubit input.
    party: Option<Party>,
    input_bloch: Option<[f64; 3]>,
    output_bloch: Option<[f64; 3]>,
    input_state: DensityMatrix,
    output_state: DensityMatrix,
    traces: Vec<ProtocolTrace>,
    shots: Option<Vec<ShotCount>>,
}

/// Checks the simplex to 1e-9, then renormalizes exactly.
pub fn bell_mixture_from_flag(w: [f64; 4]) -> Result<BellMixture, Failure> {
    let sum: f64 = w.iter().sum();
    if w.iter().any(|x| *x < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(Failure::Invariant(format!(
            "weights {w:?} are not a probability vector (sum {sum}, tolerance 1e-9)"
        )));
    }
    Ok(BellMixture::new(w.map(|x| x / sum))?)
}

/// Draws `shots` measurement outcomes from the branch probabilities.
fn sample_shots(traces: &[ProtocolTrace], shots: usize, rng: &mut SeededRng) -> Vec<ShotCount> {
    let mut counts: Vec<ShotCount> = traces
        .iter()
        .map(|t| ShotCount {
            outcome: t.outcome,
            count: 0,
        })
        .collect();
    for _ in 0..shots {
        let u = rng.uniform();
        let mut acc = 0.0;
        let mut pick = traces.len() - 1;
        for (i, t) in traces.iter().enumerate() {
            acc += t.probability;
            if u < acc {
                pick = i;
                break;
            }
        }
        counts[pick].count += 1;
    }
    counts
}

pub fn teleport(
    weights: [f64; 4],
    input: TeleportInput,
    party: Party,
    shots: Option<usize>,
    seed: u64,
    format: Format,
) -> CmdResult {
    let channel = bell_mixture_from_flag(weights)?;
    let rho = match input {
        TeleportInput::Bloch(r) => DensityMatrix::from_bloch(BlochVector::from_array(r)?),
        TeleportInput::State(rho) => rho,
    };
    let (run, party) = match rho.n_qubits() {
        1 => (bell_protocol_output(&rho, &channel)?, None),
        2 => (
            teleport_party_of_bipartite(&rho, party, &channel)?,
            Some(party),
        ),
        n => {
            return Err(Failure::Usage(format!(
                "state file holds {n} qubits; expected 1 or 2"
            )))
        }
    };
    let single = party.is_none();
    let report = TeleportReport {
        channel: channel.weights(),
        lambda: channel.to_map().lambdas(),
        party,
        input_bloch: single
            .then(|| rho.bloch().map(|b| b.components()))
            .transpose()?,
        output_bloch: single
            .then(|| run.output.bloch().map(|b| b.components()))
            .transpose()?,
        shots: shots.map(|n| sample_shots(&run.traces, n, &mut SeededRng::new(seed))),
        input_state: rho,
        output_state: run.output,
        traces: run.traces,
    };
    ok(match format {
        Format::Json => json(&report),
        Format::Csv => csv_rows(&[&report]),
        Format::Pretty => {
            let mut s = String::new();
            let w = report.channel;
            writeln!(
                s,
                "channel (psi+, psi-, phi+, phi-): ({:.6}, {:.6}, {:.6}, {:.6})",
                w[0], w[1], w[2], w[3]
            )
            .unwrap();
            writeln!(s, "equivalent lambda: {}", vec3(report.lambda)).unwrap();
            if let (Some(i), Some(o)) = (report.input_bloch, report.output_bloch) {
                writeln!(s, "input Bloch:  {}", vec3(i)).unwrap();
                writeln!(s, "output Bloch: {}", vec3(o)).unwrap();
            } else {
                writeln!(
                    s,
                    "teleported party: {}",
                    party.map_or(0, |p| p.qubit() + 1)
                )
                .unwrap();
                let sep = report.output_state.separability()?;
                writeln!(
                    s,
                    "output separable: {} (min PT eigenvalue {:.6e})",
                    sep.separable, sep.min_pt_eigenvalue
                )
                .unwrap();
            }
            for t in &report.traces {
                writeln!(
                    s,
                    "  outcome {:?}: p = {:.6}, correction {:?}",
                    t.outcome, t.probability, t.correction
                )
                .unwrap();
            }
            if let Some(counts) = &report.shots {
                let line: Vec<String> = counts
                    .iter()
                    .map(|c| format!("{:?}={}", c.outcome, c.count))
                    .collect();
                writeln!(s, "shots: {}", line.join(" ")).unwrap();
            }
            s
        }
    })
}

// ------------------------------------------------------------- disentangle

pub fn disentangle(scenario: Scenario, rho: &DensityMatrix, format: Format) -> CmdResult {
    let report = match run_scenario(scenario, rho) {
        Ok(r) => r,
        Err(e @ (Error::PremiseViolation(_) | Error::NotCommutingPremise(_))) => {
            let marginal = rho.partial_trace(&[1])?;
            return Err(Failure::Premise(format!(
                "{e}\nparty-2 marginal: {}",
                disent_core::json::to_string(&marginal).expect("state serializes")
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let stdout = match format {
        Format::Json => json(&report),
        Format::Csv => csv_rows(&[&report]),
        Format::Pretty => {
            let mut s = String::new();
            writeln!(
                s,
                "scenario: {} (lambda {})",
                report.scenario,
                vec3(report.lambda)
            )
            .unwrap();
            writeln!(
                s,
                "separable: {} (min PT eigenvalue {:.6e})",
                report.separable, report.min_pt_eigenvalue
            )
            .unwrap();
            let eta = |e: Option<f64>| e.map_or("n/a".to_string(), |x| format!("{x:.6}"));
            writeln!(
                s,
                "eta: party 1 {}, party 2 {}",
                eta(report.eta1),
                eta(report.eta2)
            )
            .unwrap();
            writeln!(
                s,
                "marginal fidelity: party 1 {:.6}, party 2 {:.6}",
                report.marginal_fidelity1, report.marginal_fidelity2
            )
            .unwrap();
            s
        }
    };
    let failure = (!report.separable).then(|| Failure::Semantic("output is not separable".into()));
    Ok(Report { stdout, failure })
}

// ---------------------------------------------------------------- optimize

pub fn optimize(cfg: OptimizerConfig, format: Format) -> CmdResult {
    let r: OptimizationResult = optimize_equatorial(&cfg)?;
    ok(match format {
        Format::Json => json(&r),
        Format::Csv => csv_rows(&[r]),
        Format::Pretty => {
            let c = r.certificate;
            format!(
                "lambda_max: {:.6}\nwitness (l, m, n): {}\nphysical conditions: {}\ndisentangling conditions: {}\n\
                 bisection steps: {}, lambda_max + 1e-6 infeasible: {}\n",
                r.lambda_max,
                vec3([r.l, r.m, r.n]),
                vec3(c.physical),
                vec3(c.disentangling),
                r.iterations,
                r.above_infeasible
            )
        }
    })
}

// ------------------------------------------------------------------ verify

#[derive(Serialize)]
struct VerifyRow {
    suite: &'static str,
    checks: usize,
    mismatches: usize,
    /// Largest numerical deviation, for suites that measure one.
    worst_error: Option<f64>,
}

#[derive(Serialize)]
struct VerifyReport {
    seed: u64,
    samples: usize,
    suites: Vec<VerifyRow>,
}

/// `inject_fault` adds one fabricated theorem mismatch so the failure path
/// can be exercised end to end.
pub fn verify(samples: usize, seed: u64, inject_fault: bool, format: Format) -> CmdResult {
    let theorem = verify_theorem(samples, seed);
    let mut rows = vec![VerifyRow {
        suite: "theorem",
        checks: theorem.samples - theorem.boundary_excluded,
        mismatches: theorem.mismatches.len() + usize::from(inject_fault),
        worst_error: None,
    }];
    for s in [
        lemma_round_trip(samples, seed),
        protocol_equivalence(samples, seed),
    ] {
        rows.push(VerifyRow {
            suite: s.suite,
            checks: s.checks,
            mismatches: s.mismatches,
            worst_error: Some(s.worst_error),
        });
    }
    let total: usize = rows.iter().map(|r| r.mismatches).sum();
    let report = VerifyReport {
        seed,
        samples,
        suites: rows,
    };
    let stdout = match format {
        Format::Json => json(&report),
        Format::Csv => csv_rows(&report.suites),
        Format::Pretty => {
            let mut s = String::new();
            for r in &report.suites {
                let worst = r
                    .worst_error
                    .map_or(String::new(), |w| format!(", worst error {w:.3e}"));
                writeln!(
                    s,
                    "{:<22} {:>6} checks, {} mismatches{worst}",
                    r.suite, r.checks, r.mismatches
                )
                .unwrap();
            }
            s
        }
    };
    let failure = (total > 0).then(|| Failure::Semantic(format!("{total} mismatches")));
    Ok(Report { stdout, failure })
}

// --------------------------------------------------------------- reproduce

#[derive(Serialize)]
struct ReproduceRow {
    check: &'static str,
    expected: f64,
    observed: f64,
    tolerance: f64,
    pass: bool,
}

impl ReproduceRow {
    fn new(check: &'static str, expected: f64, observed: f64, tolerance: f64, extra: bool) -> Self {
        let pass = extra && (observed - expected).abs() <= tolerance;
        ReproduceRow {
            check,
            expected,
            observed,
            tolerance,
            pass,
        }
    }
}

/// `inject_fault` shifts the expected Werner value so the failure path can
/// be exercised end to end.
fn werner_row(inject_fault: bool) -> Result<ReproduceRow, Failure> {
    let sixth = 1.0 / 6.0;
    let channel = BellMixture::new([0.5, sixth, sixth, sixth])?;
    let input = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0)?);
    let out = bell_protocol_output(&input, &channel)?
        .output
        .bloch()?
        .components();
    let rest = out[1].abs().max(out[2].abs()) <= 1e-12;
    let expected = 1.0 / 3.0 + if inject_fault { 1e-6 } else { 0.0 };
    Ok(ReproduceRow::new(
        "Werner channel output x",
        expected,
        out[0],
        1e-12,
        rest,
    ))
}

fn optimum_row() -> Result<ReproduceRow, Failure> {
    let r = optimize_equatorial(&OptimizerConfig::default())?;
    let witness = r.l.abs().max(r.m.abs()).max(r.n.abs()) <= 1e-3;
    Ok(ReproduceRow::new(
        "equatorial optimum lambda_max",
        0.5,
        r.lambda_max,
        1e-3,
        witness,
    ))
}

fn exact_protocol_row(seed: u64) -> Result<ReproduceRow, Failure> {
    let mut rng = SeededRng::new(seed);
    let (mut worst, mut all_ppt) = (0.0f64, true);
    for _ in 0..100 {
        let rho = rng.diagonal_marginal_state(1);
        let out = run_classical_protocol(&rho, Party::Second)?.output;
        for q in [0, 1] {
            worst = worst.max(
                rho.partial_trace(&[q])?
                    .trace_distance(&out.partial_trace(&[q])?),
            );
        }
        all_ppt &= out.separability()?.separable;
    }
    Ok(ReproduceRow::new(
        "exact protocol marginal distance",
        0.0,
        worst,
        1e-12,
        all_ppt,
    ))
}

fn theorem_row(seed: u64) -> ReproduceRow {
    let r = verify_theorem(1000, seed);
    ReproduceRow::new(
        "theorem mismatches (1000 triples)",
        0.0,
        r.mismatches.len() as f64,
        0.0,
        true,
    )
}

fn both_sides_row() -> ReproduceRow {
    let rows = check_both_sides_claim(&[0.0, 0.01]);
    ReproduceRow::new(
        "both-sides Choi minimum at 0.51",
        -0.005,
        rows[1].choi_min_eigenvalue,
        1e-12,
        rows[0].physical && !rows[1].physical,
    )
}

pub fn reproduce(seed: u64, inject_fault: bool, format: Format) -> CmdResult {
    let rows = vec![
        werner_row(inject_fault)?,
        optimum_row()?,
        exact_protocol_row(seed)?,
        theorem_row(seed),
        both_sides_row(),
    ];
    let passed = rows.iter().filter(|r| r.pass).count();
    let stdout = match format {
        Format::Json => json(&rows),
        Format::Csv => csv_rows(&rows),
        Format::Pretty => {
            let mut s = String::new();
            writeln!(
                s,
                "   {:<36} {:>14} {:>14} {:>10}  result",
                "check", "expected", "observed", "tolerance"
            )
            .unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "{} {:<36} {:>14.6e} {:>14.6e} {:>10.1e}  {}",
                    if r.pass { "  " } else { ">>" },
                    r.check,
                    r.expected,
                    r.observed,
                    r.tolerance,
                    if r.pass { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            writeln!(s, "{passed}/{} passed", rows.len()).unwrap();
            s
        }
    };
    let failure = (passed < rows.len())
        .then(|| Failure::Semantic(format!("{} checks failed", rows.len() - passed)));
    Ok(Report { stdout, failure })
}

// ------------------------------------------------------------------- sweep

pub fn sweep(lo: f64, hi: f64, steps: usize, lmn: [f64; 3], format: Format) -> CmdResult {
    let rows: Vec<SweepRow> = feasibility_sweep(lo, hi, steps, lmn[0], lmn[1], lmn[2]);
    ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let p = r.params;
                    let c = r.conditions;
                    let mut v: Vec<String> =
                        [p.lambda, p.l, p.m, p.n].into_iter().map(sig17).collect();
                    v.extend(c.physical.iter().chain(&c.disentangling).map(|x| sig17(*x)));
                    v.push(r.feasible().to_string());
                    v
                })
                .collect();
            csv_table(&SweepRow::CSV_HEADER, &cells)
        }
        Format::Pretty => {
            let mut s = String::new();
            for r in &rows {
                let c = r.conditions;
                writeln!(
                    s,
                    "lambda {:.6}: physical {} disentangling {} -> {}",
                    r.params.lambda,
                    c.is_physical(),
                    c.is_disentangling(),
                    if r.feasible() {
                        "feasible"
                    } else {
                        "infeasible"
                    }
                )
                .unwrap();
            }
            s
        }
    })
}
