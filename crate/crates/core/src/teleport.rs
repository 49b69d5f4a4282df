//! Step-by-step teleportation simulators.
//!
//! Two protocols are simulated on explicit density matrices:
//!
//! * the standard Bell-measurement protocol calibrated for a `ψ⁺` channel,
//!   run through an arbitrary Bell mixture; its corrections are
//!   `ψ⁺ → I`, `ψ⁻ → σ₃`, `φ⁺ → σ₁`, `φ⁻ → σ₁σ₃`;
//! * the classical-correlation protocol, which teleports a party whose
//!   reduced state is diagonal through `(P[|00⟩] + P[|11⟩])/2` using the
//!   parity measurement `{P[|00⟩] + P[|11⟩], P[|01⟩] + P[|10⟩]}` and a `σₓ`
//!   correction on the second outcome.
//!
//! For bipartite inputs the simulation runs on four qubits labelled
//! (kept party, teleported party, channel A, channel B) = (0, 1, 2, 3).

use serde::Serialize;

use crate::channels::{BellMixture, Party};
use crate::error::{Error, Result};
use crate::qstate::{pauli, pauli::BellState, ComplexMatrix, DensityMatrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
    /// Even parity, `P[|00⟩] + P[|11⟩]`.
    P1,
    /// Odd parity, `P[|01⟩] + P[|10⟩]`.
    P2,
}

impl Outcome {
    fn from_bell(b: BellState) -> Self {
        match b {
            BellState::PsiPlus => Outcome::PsiPlus,
            BellState::PsiMinus => Outcome::PsiMinus,
            BellState::PhiPlus => Outcome::PhiPlus,
            BellState::PhiMinus => Outcome::PhiMinus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Correction {
    #[serde(rename = "I")]
    Identity,
    #[serde(rename = "sigma3")]
    Sigma3,
    #[serde(rename = "sigma1")]
    Sigma1,
    #[serde(rename = "sigma1sigma3")]
    Sigma1Sigma3,
    #[serde(rename = "sigmax")]
    SigmaX,
}

impl Correction {
    pub fn unitary(self) -> ComplexMatrix {
        match self {
            Correction::Identity => pauli::identity(),
            Correction::Sigma3 => pauli::sigma_z(),
            Correction::Sigma1 | Correction::SigmaX => pauli::sigma_x(),
            Correction::Sigma1Sigma3 => &pauli::sigma_x() * &pauli::sigma_z(),
        }
    }

    /// Correction applied by the `ψ⁺`-calibrated protocol.
    pub fn for_bell_outcome(b: BellState) -> Self {
        match b {
            BellState::PsiPlus => Correction::Identity,
            BellState::PsiMinus => Correction::Sigma3,
            BellState::PhiPlus => Correction::Sigma1,
            BellState::PhiMinus => Correction::Sigma1Sigma3,
        }
    }
}

/// One measurement branch of a protocol run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolTrace {
    pub outcome: Outcome,
    pub probability: f64,
    pub correction: Correction,
    /// Receiver-side state after the correction; absent for negligible
    /// branches.
    pub post_state: Option<DensityMatrix>,
}

/// Outcome-averaged output plus the per-branch traces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProtocolRun {
    pub output: DensityMatrix,
    pub traces: Vec<ProtocolTrace>,
}

struct Step {
    outcome: Outcome,
    projector: ComplexMatrix,
    correction: Correction,
}

fn bell_steps() -> Vec<Step> {
    BellState::ALL
        .iter()
        .map(|&b| Step {
            outcome: Outcome::from_bell(b),
            projector: b.projector(),
            correction: Correction::for_bell_outcome(b),
        })
        .collect()
}

fn parity_steps() -> Vec<Step> {
    vec![
        Step {
            outcome: Outcome::P1,
            projector: ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 1.0]).expect("4x4"),
            correction: Correction::Identity,
        },
        Step {
            outcome: Outcome::P2,
            projector: ComplexMatrix::diagonal(&[0.0, 1.0, 1.0, 0.0]).expect("4x4"),
            correction: Correction::SigmaX,
        },
    ]
}

/// Measures `measured`, corrects `receiver`, keeps `keep` and averages.
fn simulate(
    joint: &DensityMatrix,
    steps: &[Step],
    measured: [usize; 2],
    receiver: usize,
    keep: &[usize],
) -> Result<ProtocolRun> {
    let projectors: Vec<ComplexMatrix> = steps.iter().map(|s| s.projector.clone()).collect();
    let branches = joint.measure(&projectors, &measured)?;
    let out_dim = 1 << keep.len();
    let mut average = ComplexMatrix::zeros(out_dim)?;
    let mut traces = Vec::with_capacity(steps.len());
    for (step, branch) in steps.iter().zip(branches) {
        let post_state = match branch.state {
            Some(state) => {
                let corrected = state
                    .apply_unitary(&step.correction.unitary(), &[receiver])?
                    .partial_trace(keep)?;
                average = &average + &corrected.matrix().scale_real(branch.probability);
                Some(corrected)
            }
            None => None,
        };
        traces.push(ProtocolTrace {
            outcome: step.outcome,
            probability: branch.probability,
            correction: step.correction,
            post_state,
        });
    }
    Ok(ProtocolRun {
        output: DensityMatrix::new(average)?,
        traces,
    })
}

/// Teleports a single qubit through `channel` with the `ψ⁺` protocol.
/// Qubits: (input, channel A, channel B) = (0, 1, 2).
pub fn bell_protocol_output(input: &DensityMatrix, channel: &BellMixture) -> Result<ProtocolRun> {
    input.require_qubits(1)?;
    let joint = input.tensor(&channel.density())?;
    simulate(&joint, &bell_steps(), [0, 1], 2, &[2])
}

/// Reorders a two-qubit state so the teleported party is qubit 1.
fn teleported_last(rho12: &DensityMatrix, party: Party) -> Result<DensityMatrix> {
    rho12.require_qubits(2)?;
    match party {
        Party::Second => Ok(rho12.clone()),
        Party::First => {
            let swap = ComplexMatrix::from_real_rows(&[
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ])?;
            rho12.apply_unitary(&swap, &[0, 1])
        }
    }
}

/// Output qubits in the original party order: the receiver (qubit 3) takes
/// the teleported party's slot.
fn output_order(party: Party) -> [usize; 2] {
    match party {
        Party::First => [3, 0],
        Party::Second => [0, 3],
    }
}

/// Teleports `party` of a two-qubit state through `channel` with the `ψ⁺`
/// protocol. The result is in the original party order.
pub fn teleport_party_of_bipartite(
    rho12: &DensityMatrix,
    party: Party,
    channel: &BellMixture,
) -> Result<ProtocolRun> {
    let joint = teleported_last(rho12, party)?.tensor(&channel.density())?;
    simulate(&joint, &bell_steps(), [1, 2], 3, &output_order(party))
}

/// The classical-correlation protocol for a party whose reduced state is
/// diagonal in the computational basis.
pub fn run_classical_protocol(rho12: &DensityMatrix, party: Party) -> Result<ProtocolRun> {
    let marginal = rho12.partial_trace(&[party.qubit()])?;
    let off_diagonal = marginal.matrix()[(0, 1)].norm();
    if off_diagonal > tol::PREMISE {
        return Err(Error::NotCommutingPremise(off_diagonal));
    }
    let channel = DensityMatrix::new(ComplexMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5])?)?;
    let joint = teleported_last(rho12, party)?.tensor(&channel)?;
    simulate(&joint, &parity_steps(), [1, 2], 3, &output_order(party))
}
