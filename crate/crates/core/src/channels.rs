//! Unital qubit maps in the Bloch representation, their complete-positivity
//! certificate, and the correspondence between Pauli-diagonal maps and
//! Bell-mixture teleportation channels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{
    hermitian_eigenvalues, pauli, pauli::BellState, ComplexMatrix, CorrelationDecomposition,
    DensityMatrix,
};
use crate::tol;

/// One of the two parties of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Party {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
}

impl Party {
    /// Qubit index of this party in a two-qubit state.
    pub fn qubit(self) -> usize {
        match self {
            Party::First => 0,
            Party::Second => 1,
        }
    }

    pub fn other(self) -> Party {
        match self {
            Party::First => Party::Second,
            Party::Second => Party::First,
        }
    }

    /// Parses `1` or `2`.
    pub fn from_number(n: u8) -> Option<Party> {
        match n {
            1 => Some(Party::First),
            2 => Some(Party::Second),
            _ => None,
        }
    }
}

/// Unital qubit map `Ṽ(I) = I`, `Ṽ(σⱼ) = Σᵢ Mᵢⱼ σᵢ`.
///
/// Column `j` of the matrix is the Bloch image of `σⱼ`, so a state with
/// Bloch vector `r` maps to `M r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineBlochMap {
    #[serde(rename = "bloch_matrix")]
    matrix: [[f64; 3]; 3],
}

/// Result of applying a map to one party of a two-qubit state.
///
/// The matrix is always Hermitian with unit trace; it is a state only when
/// the map is completely positive.
#[derive(Debug, Clone, PartialEq)]
pub struct OneSidedImage {
    pub matrix: ComplexMatrix,
    /// False when the map failed the complete-positivity check.
    pub physical: bool,
}

impl OneSidedImage {
    pub fn into_density(self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix)
    }
}

impl AffineBlochMap {
    pub fn identity() -> Self {
        Self::from_matrix([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn from_matrix(matrix: [[f64; 3]; 3]) -> Self {
        Self { matrix }
    }

    /// Map with `σ₁ ↦ λσ₁`, `σ₃ ↦ λσ₃` and `σ₂ ↦ mσ₁ + lσ₂ + nσ₃`.
    pub fn lmn(lambda: f64, l: f64, m: f64, n: f64) -> Self {
        Self::from_matrix([[lambda, m, 0.0], [0.0, l, 0.0], [0.0, n, lambda]])
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.matrix
    }

    pub fn apply_bloch(&self, r: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| (0..3).map(|j| self.matrix[i][j] * r[j]).sum())
    }

    /// Linear extension to an arbitrary 2x2 operator.
    pub fn apply_operator(&self, op: &ComplexMatrix) -> Result<ComplexMatrix> {
        if op.dim() != 2 {
            return Err(Error::WrongDimension {
                expected: 2,
                actual: op.dim(),
            });
        }
        let sig = pauli::sigmas();
        let c0 = op.trace();
        let c: [Complex64; 3] = std::array::from_fn(|i| (op * &sig[i]).trace());
        let mut out = pauli::identity().scale(c0 * 0.5);
        for (row, s) in self.matrix.iter().zip(&sig) {
            let coeff: Complex64 = c.iter().zip(row).map(|(cj, m)| cj * m).sum();
            out = &out + &s.scale(coeff * 0.5);
        }
        Ok(out)
    }

    /// Choi matrix `(Ṽ ⊗ I)(P[φ⁺])`.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        transform(self, &BellState::PhiPlus.projector(), Party::First)
    }

    pub fn choi_eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.choi_matrix()).expect("Choi matrix is Hermitian")
    }

    /// Complete positivity: every Choi eigenvalue at or above the PSD floor.
    pub fn is_physical(&self) -> bool {
        self.choi_eigenvalues()[0] >= tol::PSD_FLOOR
    }

    /// Applies the map to `side` of a two-qubit state. Proceeds for
    /// unphysical maps, flagging the result.
    pub fn apply_one_side(&self, rho12: &DensityMatrix, side: Party) -> Result<OneSidedImage> {
        if rho12.n_qubits() != 2 {
            return Err(Error::WrongDimension {
                expected: 4,
                actual: rho12.dim(),
            });
        }
        Ok(OneSidedImage {
            matrix: transform(self, rho12.matrix(), side),
            physical: self.is_physical(),
        })
    }
}

fn transform(map: &AffineBlochMap, m: &ComplexMatrix, side: Party) -> ComplexMatrix {
    let d = CorrelationDecomposition::of_matrix(m);
    let mm = map.matrix;
    let out = match side {
        Party::First => CorrelationDecomposition {
            r: map.apply_bloch(d.r),
            s: d.s,
            t: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).map(|k| mm[i][k] * d.t[k][j]).sum())
            }),
        },
        Party::Second => CorrelationDecomposition {
            r: d.r,
            s: map.apply_bloch(d.s),
            t: std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).map(|k| d.t[i][k] * mm[j][k]).sum())
            }),
        },
    };
    out.reconstruct()
}

/// `Ṽ(σⱼ) = λⱼ σⱼ` with every `|λⱼ| ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliDiagonalMap {
    lambda: [f64; 3],
}

impl PauliDiagonalMap {
    pub fn new(lambda1: f64, lambda2: f64, lambda3: f64) -> Result<Self> {
        let lambda = [lambda1, lambda2, lambda3];
        if let Some(&bad) = lambda
            .iter()
            .find(|l| !l.is_finite() || l.abs() > 1.0 + tol::BLOCH_NORM)
        {
            return Err(Error::LambdaOutOfRange(bad));
        }
        Ok(Self { lambda })
    }

    pub fn from_array(lambda: [f64; 3]) -> Result<Self> {
        Self::new(lambda[0], lambda[1], lambda[2])
    }

    pub fn lambdas(&self) -> [f64; 3] {
        self.lambda
    }

    pub fn lambda_sum(&self) -> f64 {
        self.lambda.iter().sum()
    }

    pub fn to_affine(&self) -> AffineBlochMap {
        let [a, b, c] = self.lambda;
        AffineBlochMap::from_matrix([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn is_physical(&self) -> bool {
        self.to_affine().is_physical()
    }

    /// Bell-mixture weights `(w₁..w₄)` before any range check.
    pub fn raw_weights(&self) -> [f64; 4] {
        let [l1, l2, l3] = self.lambda;
        [
            (1.0 + l1 + l2 + l3) / 4.0,
            (1.0 - l1 - l2 + l3) / 4.0,
            (1.0 + l1 - l2 - l3) / 4.0,
            (1.0 - l1 + l2 - l3) / 4.0,
        ]
    }

    /// The teleportation channel that realizes this map.
    pub fn to_channel(&self) -> Result<BellMixture> {
        let w = self.raw_weights();
        if let Some(index) = w.iter().position(|&x| x < -tol::TRACE) {
            return Err(Error::NotCompletelyPositive {
                index: index + 1,
                value: w[index],
            });
        }
        BellMixture::new(w.map(|x| x.clamp(0.0, 1.0)))
    }

    /// Machine parameters of a unitary dilation realizing this map.
    pub fn dilation(&self) -> Result<DilationParams> {
        let [l1, l2, l3] = self.lambda;
        let a0 = ((1.0 + l3) / 2.0).max(0.0).sqrt();
        let b0 = ((1.0 - l3) / 2.0).max(0.0).sqrt();
        let w = self.raw_weights();
        if let Some(index) = w.iter().position(|&x| x < -tol::TRACE) {
            return Err(Error::NotCompletelyPositive {
                index: index + 1,
                value: w[index],
            });
        }
        let cosine = |num: f64, amp: f64| -> Result<f64> {
            if amp <= 1e-9 {
                return Ok(1.0);
            }
            let c = num / (2.0 * amp * amp);
            if c.abs() > 1.0 + tol::TRACE {
                // only possible when some weight is negative
                let index = (0..4)
                    .min_by(|&i, &j| w[i].total_cmp(&w[j]))
                    .expect("four weights");
                return Err(Error::NotCompletelyPositive {
                    index: index + 1,
                    value: w[index],
                });
            }
            Ok(c.clamp(-1.0, 1.0))
        };
        let cos2theta = cosine(l1 + l2, a0)?;
        let cos2phi = cosine(l1 - l2, b0)?;
        Ok(DilationParams {
            a0,
            b0,
            cos2theta,
            cos2phi,
            theta: cos2theta.acos() / 2.0,
            phi: cos2phi.acos() / 2.0,
        })
    }
}

/// `(a₀, b₀)` amplitudes and machine-state overlaps `cos 2θ`, `cos 2φ` of
/// the dilation, with `θ, φ ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilationParams {
    pub a0: f64,
    pub b0: f64,
    pub cos2theta: f64,
    pub cos2phi: f64,
    pub theta: f64,
    pub phi: f64,
}

impl DilationParams {
    /// `(a₀² cos²θ, a₀² sin²θ, b₀² cos²φ, b₀² sin²φ)`.
    pub fn weights(&self) -> [f64; 4] {
        let (a2, b2) = (self.a0 * self.a0, self.b0 * self.b0);
        let (ct, cp) = ((1.0 + self.cos2theta) / 2.0, (1.0 + self.cos2phi) / 2.0);
        [a2 * ct, a2 * (1.0 - ct), b2 * cp, b2 * (1.0 - cp)]
    }
}

/// Teleportation channel `w₁P[ψ⁺] + w₂P[ψ⁻] + w₃P[φ⁺] + w₄P[φ⁻]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellMixture {
    w: [f64; 4],
}

impl BellMixture {
    pub fn new(w: [f64; 4]) -> Result<Self> {
        if let Some(x) = w
            .iter()
            .find(|x| !x.is_finite() || **x < -tol::TRACE || **x > 1.0 + tol::TRACE)
        {
            return Err(Error::InvalidMixture(format!("weight {x} outside [0, 1]")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > tol::TRACE {
            return Err(Error::InvalidMixture(format!("weights sum to {sum}")));
        }
        Ok(Self { w })
    }

    /// The single Bell state `which` as a channel.
    pub fn pure(which: BellState) -> Self {
        let mut w = [0.0; 4];
        w[BellState::ALL
            .iter()
            .position(|&b| b == which)
            .expect("listed")] = 1.0;
        Self { w }
    }

    pub fn weights(&self) -> [f64; 4] {
        self.w
    }

    /// The induced Pauli-diagonal map.
    pub fn to_map(&self) -> PauliDiagonalMap {
        let [w1, w2, w3, w4] = self.w;
        PauliDiagonalMap {
            lambda: [w1 - w2 + w3 - w4, w1 - w2 - w3 + w4, w1 + w2 - w3 - w4],
        }
    }

    /// Two-qubit channel state.
    pub fn density(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4).expect("4x4");
        for (w, bell) in self.w.iter().zip(BellState::ALL) {
            m = &m + &bell.projector().scale_real(*w);
        }
        DensityMatrix::new(m).expect("convex mixture of Bell projectors")
    }

    /// A Bell mixture is separable iff no weight exceeds one half.
    pub fn is_separable(&self) -> bool {
        self.w.iter().all(|&x| x <= 0.5 + tol::TRACE)
    }
}

/// Parameters of the equatorial cloning-type machine: shrinking factor `λ`,
/// the machine-state overlap `⟨M̄₁|M₀⟩` and `Im⟨M₀|M₁⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquatorialMachineParams {
    lambda: f64,
    bar_overlap: [f64; 2],
    overlap_im: f64,
}

impl EquatorialMachineParams {
    /// `bar_overlap = (Re, Im)⟨M̄₁|M₀⟩`; overlaps of unit vectors, so each
    /// modulus is at most one.
    pub fn new(lambda: f64, bar_overlap: [f64; 2], overlap_im: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda.abs() >= 1.0 {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        let modulus = bar_overlap[0].hypot(bar_overlap[1]);
        if modulus > 1.0 + tol::BLOCH_NORM || overlap_im.abs() > 1.0 + tol::BLOCH_NORM {
            return Err(Error::InvalidMixture(format!(
                "machine overlaps ({modulus}, {overlap_im}) exceed one"
            )));
        }
        Ok(Self {
            lambda,
            bar_overlap,
            overlap_im,
        })
    }

    /// Angle form: `⟨M̄₁|M₀⟩ = e^{iθ}` and `Im⟨M₀|M₁⟩ = sin φ`.
    pub fn from_angles(lambda: f64, theta: f64, phi: f64) -> Result<Self> {
        Self::new(lambda, [theta.cos(), theta.sin()], phi.sin())
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Bloch action of the machine.
    pub fn to_map(&self) -> AffineBlochMap {
        let lam = self.lambda;
        let [re, im] = self.bar_overlap;
        AffineBlochMap::lmn(
            lam,
            (1.0 + lam) * re - lam,
            (1.0 + lam) * im,
            -(1.0 - lam * lam).sqrt() * self.overlap_im,
        )
    }
}

pub fn pauli_map(lambda1: f64, lambda2: f64, lambda3: f64) -> Result<AffineBlochMap> {
    Ok(PauliDiagonalMap::new(lambda1, lambda2, lambda3)?.to_affine())
}

pub fn equatorial_map(params: &EquatorialMachineParams) -> AffineBlochMap {
    params.to_map()
}

pub fn general_map_lmn(lambda: f64, l: f64, m: f64, n: f64) -> AffineBlochMap {
    AffineBlochMap::lmn(lambda, l, m, n)
}
