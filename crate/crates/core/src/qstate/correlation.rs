use num_complex::Complex64;

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;
use super::pauli;
use crate::error::Result;

/// Pauli expansion of a two-qubit operator,
/// `(1/4)[I⊗I + r·σ⊗I + I⊗s·σ + Σ tᵢⱼ σᵢ⊗σⱼ]`.
///
/// Fields are plain arrays rather than [`BlochVector`](super::BlochVector)s
/// because the expansion is also used for unphysical intermediate operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationDecomposition {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl CorrelationDecomposition {
    pub fn of(rho: &DensityMatrix) -> Result<Self> {
        rho.require_qubits(2)?;
        Ok(Self::of_matrix(rho.matrix()))
    }

    /// Coefficients `Re Tr(m σᵢ⊗σⱼ)` of a Hermitian 4x4 matrix.
    pub(crate) fn of_matrix(m: &ComplexMatrix) -> Self {
        let id = pauli::identity();
        let sig = pauli::sigmas();
        let coeff =
            |a: &ComplexMatrix, b: &ComplexMatrix| (m * &a.kron(b).expect("4x4")).trace().re;
        let mut out = Self {
            r: [0.0; 3],
            s: [0.0; 3],
            t: [[0.0; 3]; 3],
        };
        for i in 0..3 {
            out.r[i] = coeff(&sig[i], &id);
            out.s[i] = coeff(&id, &sig[i]);
            for j in 0..3 {
                out.t[i][j] = coeff(&sig[i], &sig[j]);
            }
        }
        out
    }

    /// Reassembles the operator. Trace one and Hermitian by construction.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let id = pauli::identity();
        let sig = pauli::sigmas();
        let mut m = id.kron(&id).expect("4x4");
        let mut add = |a: &ComplexMatrix, b: &ComplexMatrix, w: f64| {
            if w != 0.0 {
                m = &m + &a.kron(b).expect("4x4").scale_real(w);
            }
        };
        for i in 0..3 {
            add(&sig[i], &id, self.r[i]);
            add(&id, &sig[i], self.s[i]);
            for j in 0..3 {
                add(&sig[i], &sig[j], self.t[i][j]);
            }
        }
        m.scale(Complex64::new(0.25, 0.0))
    }
}
