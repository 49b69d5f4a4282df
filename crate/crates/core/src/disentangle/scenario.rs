use serde::Serialize;

use crate::channels::{Party, PauliDiagonalMap};
use crate::error::{Error, Result};
use crate::qstate::{trace_distance, BlochVector, DensityMatrix};
use crate::teleport::{run_classical_protocol, teleport_party_of_bipartite};
use crate::tol;

/// The disentangling machines, each acting on party 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    /// `λ = (1/3, 1/3, 1/3)`, any input.
    Universal,
    /// `λ = (1/2, 0, 1/2)`, party-2 Bloch vector in the x–z plane.
    Equatorial,
    /// `λ = (0, 0, 1)`, party-2 marginal diagonal; uses the classical protocol.
    Commuting,
    Custom(PauliDiagonalMap),
}

impl Scenario {
    pub fn map(&self) -> PauliDiagonalMap {
        let l = match self {
            Scenario::Universal => [1.0 / 3.0; 3],
            Scenario::Equatorial => [0.5, 0.0, 0.5],
            Scenario::Commuting => [0.0, 0.0, 1.0],
            Scenario::Custom(m) => return *m,
        };
        PauliDiagonalMap::from_array(l).expect("fixed machine")
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Universal => "universal",
            Scenario::Equatorial => "equatorial",
            Scenario::Commuting => "commuting",
            Scenario::Custom(_) => "custom",
        }
    }

    fn check_premise(&self, marginal2: &BlochVector) -> Result<()> {
        let [s1, s2, _] = marginal2.components();
        let violation = match self {
            Scenario::Equatorial if s2.abs() > tol::PREMISE => Some("s2 != 0"),
            Scenario::Commuting if s1.abs() > tol::PREMISE || s2.abs() > tol::PREMISE => {
                Some("s1, s2 != 0")
            }
            _ => None,
        };
        match violation {
            Some(what) => Err(Error::PremiseViolation(format!(
                "{} scenario needs {}; party-2 marginal Bloch vector is [{s1}, {s2}, {}]",
                self.name(),
                what.replace("!=", "="),
                marginal2.components()[2]
            ))),
            None => Ok(()),
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "universal" => Ok(Scenario::Universal),
            "equatorial" => Ok(Scenario::Equatorial),
            "commuting" => Ok(Scenario::Commuting),
            other => Err(Error::InvalidConfig(format!("unknown scenario {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisentanglementReport {
    pub scenario: &'static str,
    pub lambda: [f64; 3],
    pub channel: [f64; 4],
    pub input_state: DensityMatrix,
    pub output_state: DensityMatrix,
    pub separable: bool,
    pub min_pt_eigenvalue: f64,
    /// Output/input Bloch-norm ratio of party 1; absent for a zero-norm input.
    pub eta1: Option<f64>,
    pub eta2: Option<f64>,
    /// `1 − D(ρ_in, ρ_out)` of each party's marginal, `D` the trace distance.
    pub marginal_fidelity1: f64,
    pub marginal_fidelity2: f64,
}

fn marginals(rho: &DensityMatrix) -> Result<[DensityMatrix; 2]> {
    Ok([rho.partial_trace(&[0])?, rho.partial_trace(&[1])?])
}

fn eta(before: &BlochVector, after: &BlochVector) -> Option<f64> {
    let n = before.norm();
    (n >= 1e-12).then(|| after.norm() / n)
}

/// Runs a machine on party 2 of `rho12` through its teleportation channel
/// and certifies the result by the partial-transpose test.
pub fn run_scenario(scenario: Scenario, rho12: &DensityMatrix) -> Result<DisentanglementReport> {
    rho12.require_qubits(2)?;
    let before = marginals(rho12)?;
    let bloch_before = [before[0].bloch()?, before[1].bloch()?];
    scenario.check_premise(&bloch_before[1])?;

    let map = scenario.map();
    let channel = map.to_channel()?;
    let output = match scenario {
        Scenario::Commuting => run_classical_protocol(rho12, Party::Second)?.output,
        _ => teleport_party_of_bipartite(rho12, Party::Second, &channel)?.output,
    };
    let sep = output.separability()?;
    let after = marginals(&output)?;
    let bloch_after = [after[0].bloch()?, after[1].bloch()?];
    Ok(DisentanglementReport {
        scenario: scenario.name(),
        lambda: map.lambdas(),
        channel: channel.weights(),
        input_state: rho12.clone(),
        output_state: output,
        separable: sep.separable,
        min_pt_eigenvalue: sep.min_pt_eigenvalue,
        eta1: eta(&bloch_before[0], &bloch_after[0]),
        eta2: eta(&bloch_before[1], &bloch_after[1]),
        marginal_fidelity1: 1.0 - trace_distance(before[0].matrix(), after[0].matrix()),
        marginal_fidelity2: 1.0 - trace_distance(before[1].matrix(), after[1].matrix()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::BellMixture;
    use crate::qstate::{pauli::BellState, CorrelationDecomposition};
    use crate::rng::{schmidt_state, SeededRng};

    fn phi_plus() -> DensityMatrix {
        DensityMatrix::new(BellState::PhiPlus.projector()).unwrap()
    }

    #[test]
    fn universal_on_phi_plus() {
        let r = run_scenario(Scenario::Universal, &phi_plus()).unwrap();
        assert!(r.separable);
        assert_eq!(r.eta1, None);
        assert_eq!(r.eta2, None);
        let t = CorrelationDecomposition::of(&r.output_state).unwrap().t;
        for i in 0..3 {
            let expected = [1.0, -1.0, 1.0][i] / 3.0;
            assert!((t[i][i] - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn universal_shrinks_party_two_by_a_third() {
        let mut rng = SeededRng::new(8);
        let rho = rng.mixed_state(2);
        let r = run_scenario(Scenario::Universal, &rho).unwrap();
        assert!(r.separable);
        assert!((r.eta1.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.eta2.unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn equatorial_on_schmidt_state() {
        let a: f64 = 0.9;
        let r = run_scenario(Scenario::Equatorial, &schmidt_state(a)).unwrap();
        assert!(r.separable);
        let s = r
            .output_state
            .partial_trace(&[1])
            .unwrap()
            .bloch()
            .unwrap()
            .components();
        let z = a * a - (1.0 - a * a);
        assert!(s[0].abs() < 1e-14 && s[1].abs() < 1e-14);
        assert!((s[2] - z / 2.0).abs() < 1e-14);
        assert!((r.eta2.unwrap() - 0.5).abs() < 1e-12);
        assert!((r.eta1.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn commuting_on_phi_plus() {
        let r = run_scenario(Scenario::Commuting, &phi_plus()).unwrap();
        assert!(r.separable);
        assert!((r.marginal_fidelity1 - 1.0).abs() < 1e-12);
        assert!((r.marginal_fidelity2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn premise_violations() {
        let plus = DensityMatrix::from_bloch(BlochVector::new(1.0, 0.0, 0.0).unwrap());
        let y = DensityMatrix::from_bloch(BlochVector::new(0.0, 1.0, 0.0).unwrap());
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        let rho = mixed.tensor(&plus).unwrap();
        assert!(matches!(
            run_scenario(Scenario::Commuting, &rho),
            Err(Error::PremiseViolation(_))
        ));
        assert!(run_scenario(Scenario::Equatorial, &rho).is_ok());
        let rho = mixed.tensor(&y).unwrap();
        assert!(matches!(
            run_scenario(Scenario::Equatorial, &rho),
            Err(Error::PremiseViolation(_))
        ));
        assert!(run_scenario(Scenario::Universal, &rho).is_ok());
    }

    #[test]
    fn custom_identity_keeps_entanglement() {
        let id = BellMixture::pure(BellState::PsiPlus).to_map();
        let r = run_scenario(Scenario::Custom(id), &phi_plus()).unwrap();
        assert!(!r.separable);
        assert!((r.min_pt_eigenvalue + 0.5).abs() < 1e-14);
    }
}
