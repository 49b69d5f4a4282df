//! Seeded sampling of states, channels and maps.
//!
//! The generator is xoshiro256++ seeded through SplitMix64 from a single
//! `u64`. Gaussians use the Box–Muller transform so that streams are
//! reproducible on every platform.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::channels::{BellMixture, PauliDiagonalMap};
use crate::qstate::{BlochVector, ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: Xoshiro256PlusPlus,
    spare_gaussian: Option<f64>,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
            spare_gaussian: None,
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal deviate (Box–Muller, caching the second value).
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        // 1 - u lies in (0, 1], keeping the logarithm finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        self.spare_gaussian = Some(radius * (TAU * u2).sin());
        radius * (TAU * u2).cos()
    }

    pub fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian())
    }

    /// Haar-random pure state vector on `dim` levels.
    pub fn pure_ket(&mut self, dim: usize) -> Vec<Complex64> {
        let v: Vec<Complex64> = (0..dim).map(|_| self.complex_gaussian()).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.into_iter().map(|z| z / norm).collect()
    }

    pub fn pure_state(&mut self, n_qubits: usize) -> DensityMatrix {
        DensityMatrix::pure(&self.pure_ket(1 << n_qubits)).expect("normalized ket")
    }

    /// Mixed state `G G† / Tr(G G†)` from a complex Ginibre matrix.
    pub fn mixed_state(&mut self, n_qubits: usize) -> DensityMatrix {
        let dim = 1 << n_qubits;
        let g = ComplexMatrix::new(
            dim,
            (0..dim * dim).map(|_| self.complex_gaussian()).collect(),
        )
        .expect("valid dim");
        let gg = &g * &g.adjoint();
        let tr = gg.trace().re;
        let mut m = gg.scale_real(1.0 / tr);
        for i in 0..dim {
            for j in 0..i {
                m[(i, j)] = m[(j, i)].conj();
            }
            m[(i, i)].im = 0.0;
        }
        DensityMatrix::new(m).expect("Ginibre states are valid")
    }

    /// Point drawn uniformly from the Bloch ball.
    pub fn bloch_in_ball(&mut self) -> BlochVector {
        let dir = [self.gaussian(), self.gaussian(), self.gaussian()];
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        let radius = self.uniform().cbrt();
        BlochVector::from_array(dir.map(|x| x * radius / norm)).expect("inside the ball")
    }

    /// Haar-random 2x2 unitary.
    pub fn unitary_2x2(&mut self) -> ComplexMatrix {
        let a = self.pure_ket(2);
        let phase = Complex64::from_polar(1.0, TAU * self.uniform());
        // second column orthogonal to the first
        let b = [-a[1].conj() * phase, a[0].conj() * phase];
        ComplexMatrix::from_rows(&[[a[0], b[0]], [a[1], b[1]]]).expect("2x2")
    }

    /// Random product state `ρ_A ⊗ ρ_B` of two qubits.
    pub fn product_state(&mut self) -> DensityMatrix {
        let a = DensityMatrix::from_bloch(self.bloch_in_ball());
        let b = DensityMatrix::from_bloch(self.bloch_in_ball());
        a.tensor(&b).expect("two qubits")
    }

    /// `(U_A ⊗ U_B)(a|00⟩ + b|11⟩)` with `a` uniform in `(0, 1)`, so the state
    /// is entangled with probability one.
    pub fn entangled_pure_state(&mut self) -> DensityMatrix {
        let a = loop {
            let a = self.uniform();
            if a > 1e-6 && a < 1.0 - 1e-6 {
                break a;
            }
        };
        self.schmidt_state_rotated(a)
    }

    fn schmidt_state_rotated(&mut self, a: f64) -> DensityMatrix {
        let rho = schmidt_state(a);
        let ua = self.unitary_2x2();
        let ub = self.unitary_2x2();
        rho.apply_unitary(&ua, &[0])
            .and_then(|r| r.apply_unitary(&ub, &[1]))
            .expect("local unitaries")
    }

    /// Two-qubit state whose `party` marginal (0 or 1) is diagonal in the
    /// computational basis: a mixture of an entangled state
    /// `a|u₀,0⟩ + b e^{iχ}|u₁,1⟩` and a product with a diagonal factor.
    pub fn diagonal_marginal_state(&mut self, party: usize) -> DensityMatrix {
        let a = self.uniform_in(0.05, 0.95).sqrt();
        let b = (1.0 - a * a).sqrt();
        let chi = Complex64::from_polar(1.0, TAU * self.uniform());
        let u = self.unitary_2x2();
        // amplitudes indexed as (other party, diagonal party)
        let mut ket = [Complex64::new(0.0, 0.0); 4];
        for k in 0..2 {
            ket[2 * k] = u[(k, 0)] * a;
            ket[2 * k + 1] = u[(k, 1)] * b * chi;
        }
        let entangled = DensityMatrix::pure(&ket).expect("normalized");
        let p = self.uniform();
        let other = DensityMatrix::from_bloch(self.bloch_in_ball());
        let z = self.uniform_in(-1.0, 1.0);
        let diag = DensityMatrix::from_bloch(BlochVector::new(0.0, 0.0, z).expect("|z| < 1"));
        let product = other.tensor(&diag).expect("two qubits");
        let mix = &entangled.matrix().scale_real(p) + &product.matrix().scale_real(1.0 - p);
        let rho = DensityMatrix::new(mix).expect("convex mixture");
        if party == 1 {
            rho
        } else {
            let swap = ComplexMatrix::from_real_rows(&[
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ])
            .expect("4x4");
            rho.apply_unitary(&swap, &[0, 1]).expect("swap")
        }
    }

    /// Uniform point on the probability simplex over the four Bell states.
    pub fn bell_mixture(&mut self) -> BellMixture {
        let e: [f64; 4] = std::array::from_fn(|_| -(1.0 - self.uniform()).ln());
        let total: f64 = e.iter().sum();
        let mut w = e.map(|x| x / total);
        // absorb rounding in the largest weight
        let sum: f64 = w.iter().sum();
        let largest = (0..4)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]))
            .expect("nonempty");
        w[largest] += 1.0 - sum;
        BellMixture::new(w).expect("simplex point")
    }

    /// Completely positive Pauli-diagonal map, via a random Bell mixture.
    pub fn cp_pauli_map(&mut self) -> PauliDiagonalMap {
        self.bell_mixture().to_map()
    }

    /// λ-triple uniform in `[lo, hi]³`.
    pub fn lambda_triple(&mut self, lo: f64, hi: f64) -> [f64; 3] {
        std::array::from_fn(|_| self.uniform_in(lo, hi))
    }
}

/// `P[a|00⟩ + b|11⟩]` with `b = √(1 − a²)`.
pub fn schmidt_state(a: f64) -> DensityMatrix {
    let b = (1.0 - a * a).max(0.0).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    DensityMatrix::pure(&[Complex64::new(a, 0.0), zero, zero, Complex64::new(b, 0.0)])
        .expect("normalized")
}
