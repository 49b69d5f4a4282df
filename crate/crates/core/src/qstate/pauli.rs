//! Pauli matrices and the Bell basis.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::matrix::ComplexMatrix;

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 1.0]]).expect("2x2")
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
        .expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[1.0, 0.0], [0.0, -1.0]]).expect("2x2")
}

/// `[σ₁, σ₂, σ₃]`.
pub fn sigmas() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// The four Bell states in the order used for Bell mixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BellState {
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [
        BellState::PsiPlus,
        BellState::PsiMinus,
        BellState::PhiPlus,
        BellState::PhiMinus,
    ];

    /// Amplitudes in the basis |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn ket(self) -> [Complex64; 4] {
        let h = FRAC_1_SQRT_2;
        match self {
            BellState::PsiPlus => [c(0.0, 0.0), c(h, 0.0), c(h, 0.0), c(0.0, 0.0)],
            BellState::PsiMinus => [c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)],
            BellState::PhiPlus => [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)],
            BellState::PhiMinus => [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-h, 0.0)],
        }
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.ket()).expect("4x4")
    }

    pub fn label(self) -> &'static str {
        match self {
            BellState::PsiPlus => "psi+",
            BellState::PsiMinus => "psi-",
            BellState::PhiPlus => "phi+",
            BellState::PhiMinus => "phi-",
        }
    }
}
