use num_complex::Complex64;

use super::bloch::BlochVector;
use super::eigen::{hermitian_eigenvalues, min_eigenvalue};
use super::matrix::ComplexMatrix;
use super::pauli;
use crate::error::{Error, Result};
use crate::tol;

/// Hermitian, unit-trace, positive semidefinite matrix on 1 to 4 qubits.
///
/// Qubit 0 is the leftmost tensor factor, so `|q0 q1 ...⟩` has index
/// `q0·2^(n-1) + q1·2^(n-2) + ...`.
#[derive(Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

/// One outcome of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBranch {
    pub probability: f64,
    /// Normalized post-measurement state, absent for negligible probability.
    pub state: Option<DensityMatrix>,
}

/// Peres–Horodecki verdict for a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separability {
    pub separable: bool,
    pub min_pt_eigenvalue: f64,
}

impl Separability {
    pub fn from_min_eigenvalue(min_pt_eigenvalue: f64) -> Self {
        Self {
            separable: min_pt_eigenvalue >= tol::PSD_FLOOR,
            min_pt_eigenvalue,
        }
    }
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let herm = mat.hermitian_deviation();
        if herm > tol::HERMITIAN {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = mat.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol::TRACE {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let min = min_eigenvalue(&mat)?;
        if min < tol::PSD_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(Self { mat })
    }

    /// Wraps a matrix known to be a state by construction. Debug builds still
    /// run the full validation.
    pub(crate) fn from_trusted(mat: ComplexMatrix) -> Self {
        debug_assert!(
            Self::new(mat.clone()).is_ok(),
            "invariant violated: {:?}",
            Self::new(mat.clone()).err()
        );
        Self { mat }
    }

    pub fn pure(ket: &[Complex64]) -> Result<Self> {
        let norm: f64 = ket.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let normalized: Vec<Complex64> = ket.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&normalized)?)
    }

    /// Projector onto a computational basis state, e.g. `basis(&[0, 1])` is `P[|01⟩]`.
    pub fn basis(bits: &[u8]) -> Result<Self> {
        let dim = 1usize << bits.len();
        let index = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b & 1));
        let mut ket = vec![Complex64::new(0.0, 0.0); dim];
        ket[index] = Complex64::new(1.0, 0.0);
        Self::pure(&ket)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        let mat = ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64);
        Ok(Self { mat })
    }

    /// `(I + r·σ)/2`.
    pub fn from_bloch(r: BlochVector) -> Self {
        let [x, y, z] = r.components();
        let half = 0.5;
        let mat = ComplexMatrix::from_rows(&[
            [
                Complex64::new(half * (1.0 + z), 0.0),
                Complex64::new(half * x, -half * y),
            ],
            [
                Complex64::new(half * x, half * y),
                Complex64::new(half * (1.0 - z), 0.0),
            ],
        ])
        .expect("2x2");
        Self::from_trusted(mat)
    }

    /// Bloch vector `rᵢ = Re Tr(ρσᵢ)` of a single-qubit state.
    pub fn bloch(&self) -> Result<BlochVector> {
        self.require_qubits(1)?;
        let r = pauli::sigmas().map(|s| (&self.mat * &s).trace().re);
        // the norm of a valid state is at most one up to rounding
        BlochVector::from_array(r)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn n_qubits(&self) -> usize {
        self.mat.n_qubits()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat).expect("density matrices are Hermitian")
    }

    pub(crate) fn require_qubits(&self, n: usize) -> Result<()> {
        if self.n_qubits() == n {
            Ok(())
        } else {
            Err(Error::WrongDimension {
                expected: 1 << n,
                actual: self.dim(),
            })
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits() + other.n_qubits();
        if n > 4 {
            return Err(Error::DimensionOverflow(n));
        }
        Ok(Self::from_trusted(self.mat.kron(&other.mat)?))
    }

    /// Reduced state on `keep`, with the kept qubits in the listed order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        Ok(Self::from_trusted(reduce(&self.mat, keep)?))
    }

    /// `UρU†` with `U` acting on `targets` (first target is the most
    /// significant qubit of `U`).
    pub fn apply_unitary(&self, u: &ComplexMatrix, targets: &[usize]) -> Result<Self> {
        let deviation = u.unitarity_deviation();
        if deviation > tol::OPERATOR {
            return Err(Error::NotUnitary(deviation));
        }
        let full = embed(u, targets, self.n_qubits())?;
        Ok(Self::from_trusted(self.mat.conjugate_by(&full)))
    }

    /// Projective measurement of `targets` with the complete set `projectors`.
    pub fn measure(
        &self,
        projectors: &[ComplexMatrix],
        targets: &[usize],
    ) -> Result<Vec<MeasurementBranch>> {
        check_projector_set(projectors)?;
        let n = self.n_qubits();
        projectors
            .iter()
            .map(|p| {
                let full = embed(p, targets, n)?;
                let unnormalized = &(&full * &self.mat) * &full;
                let probability = unnormalized.trace().re;
                let state = (probability > tol::BRANCH_PROBABILITY)
                    .then(|| Self::from_trusted(unnormalized.scale_real(1.0 / probability)));
                Ok(MeasurementBranch { probability, state })
            })
            .collect()
    }

    /// Partial transpose of a two-qubit state on qubit `party` (0 or 1).
    pub fn partial_transpose(&self, party: usize) -> Result<ComplexMatrix> {
        self.require_qubits(2)?;
        self.mat.partial_transpose(party)
    }

    /// PPT test, exact for two qubits.
    pub fn separability(&self) -> Result<Separability> {
        self.require_qubits(2)?;
        ppt(&self.mat)
    }

    /// Half the trace norm of `self - other`.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        trace_distance(&self.mat, &other.mat)
    }
}

impl std::fmt::Debug for DensityMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DensityMatrix{:?}", self.mat)
    }
}

/// PPT verdict for any Hermitian 4x4 matrix, physical or not.
pub fn ppt(m: &ComplexMatrix) -> Result<Separability> {
    if m.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            actual: m.dim(),
        });
    }
    Ok(Separability::from_min_eigenvalue(min_eigenvalue(
        &m.partial_transpose(1)?,
    )?))
}

pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let diff = a - b;
    0.5 * hermitian_eigenvalues(&diff)
        .expect("difference of Hermitian matrices")
        .iter()
        .map(|x| x.abs())
        .sum::<f64>()
}

fn check_targets(targets: &[usize], n_qubits: usize) -> Result<()> {
    for (k, &t) in targets.iter().enumerate() {
        if t >= n_qubits || targets[..k].contains(&t) {
            return Err(Error::BadSubsystemIndex { index: t, n_qubits });
        }
    }
    if targets.is_empty() {
        return Err(Error::BadSubsystemIndex { index: 0, n_qubits });
    }
    Ok(())
}

/// Extracts the bits of `index` at `qubits`, packed with the first listed
/// qubit most significant.
fn gather(index: usize, qubits: &[usize], n_qubits: usize) -> usize {
    qubits.iter().fold(0, |acc, &q| {
        (acc << 1) | ((index >> (n_qubits - 1 - q)) & 1)
    })
}

fn mask(qubits: &[usize], n_qubits: usize) -> usize {
    qubits.iter().map(|&q| 1 << (n_qubits - 1 - q)).sum()
}

/// Lifts `op` on `targets` to the full `n_qubits` space.
pub(crate) fn embed(
    op: &ComplexMatrix,
    targets: &[usize],
    n_qubits: usize,
) -> Result<ComplexMatrix> {
    check_targets(targets, n_qubits)?;
    if op.dim() != 1 << targets.len() {
        return Err(Error::WrongDimension {
            expected: 1 << targets.len(),
            actual: op.dim(),
        });
    }
    let dim = 1 << n_qubits;
    let rest = !mask(targets, n_qubits);
    let mut full = ComplexMatrix::zeros(dim)?;
    for i in 0..dim {
        for j in 0..dim {
            if i & rest == j & rest {
                full[(i, j)] = op[(gather(i, targets, n_qubits), gather(j, targets, n_qubits))];
            }
        }
    }
    Ok(full)
}

pub(crate) fn reduce(m: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    let n = m.n_qubits();
    check_targets(keep, n)?;
    let traced = !mask(keep, n);
    let mut out = ComplexMatrix::zeros(1 << keep.len())?;
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i & traced == j & traced {
                out[(gather(i, keep, n), gather(j, keep, n))] += m[(i, j)];
            }
        }
    }
    Ok(out)
}

fn check_projector_set(projectors: &[ComplexMatrix]) -> Result<()> {
    let first = projectors
        .first()
        .ok_or_else(|| Error::NotAProjectorSet("empty set".into()))?;
    let dim = first.dim();
    let mut sum = ComplexMatrix::zeros(dim)?;
    for (k, p) in projectors.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::NotAProjectorSet(format!(
                "projector {k} has dimension {}",
                p.dim()
            )));
        }
        if p.hermitian_deviation() > tol::OPERATOR {
            return Err(Error::NotAProjectorSet(format!(
                "projector {k} is not Hermitian"
            )));
        }
        if (p * p).max_abs_diff(p) > tol::OPERATOR {
            return Err(Error::NotAProjectorSet(format!(
                "projector {k} is not idempotent"
            )));
        }
        sum = &sum + p;
    }
    if sum.max_abs_diff(&ComplexMatrix::identity(dim)?) > tol::OPERATOR {
        return Err(Error::NotAProjectorSet(
            "projectors do not sum to identity".into(),
        ));
    }
    Ok(())
}
