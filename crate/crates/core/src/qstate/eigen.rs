//! Eigenvalues of small Hermitian matrices by cyclic complex Jacobi rotations.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tol;

const MAX_SWEEPS: usize = 64;

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Real eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let deviation = m.hermitian_deviation();
    if deviation > tol::EIGEN_INPUT_HERMITIAN {
        return Err(Error::NotHermitian(deviation));
    }
    let n = m.dim();
    // symmetrize so rounding noise in the input does not leak into the rotations
    let mut a: Vec<Complex64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            (m[(i, j)] + m[(j, i)].conj()) * 0.5
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= tol::JACOBI_OFF_DIAGONAL {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Applies `a <- U† a U` with `U` chosen to annihilate `a[p][q]`.
fn rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = a[p * n + q];
    let r = g.norm();
    if r == 0.0 {
        return;
    }
    let phase = g / r;
    let (app, aqq) = (a[p * n + p].re, a[q * n + q].re);
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // U restricted to (p, q) is diag(1, conj(phase)) · [[c, s], [-s, c]]
    let u00 = Complex64::new(c, 0.0);
    let u01 = Complex64::new(s, 0.0);
    let u10 = -phase.conj() * s;
    let u11 = phase.conj() * c;

    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = akp * u00 + akq * u10;
        a[k * n + q] = akp * u01 + akq * u11;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = u00.conj() * apk + u10.conj() * aqk;
        a[q * n + k] = u01.conj() * apk + u11.conj() * aqk;
    }
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}
