//! Eigenvalues of Hermitian matrices in non-increasing order.
//!
//! The general path is a cyclic complex Jacobi iteration. Each pivot `(p, q)`
//! first rotates the phase of `h_pq` away with a diagonal unitary and then
//! applies a real plane rotation, so only rows and columns `p`, `q` change.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix, JordanScalarModel};

/// Maximum accepted `|h_ij - conj(h_ji)|`, relative to `max(1, max |h_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `||H||_F`.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Real eigenvalues sorted non-increasing, multiplicities kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values into non-increasing order.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The k-th largest value, 1-based.
    pub fn kth(&self, k: usize) -> Result<f64> {
        kth_eigenvalue(self, k)
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// `lambda_k`: the k-th largest eigenvalue counting multiplicity (1-based).
pub fn kth_eigenvalue(spectrum: &Spectrum, k: usize) -> Result<f64> {
    if k == 0 || k > spectrum.len() {
        return Err(Error::IndexOutOfRange { index: k, max: spectrum.len() });
    }
    Ok(spectrum.values[k - 1])
}

/// All eigenvalues of a Hermitian matrix, sorted non-increasing.
pub fn eigenvalues_hermitian(h: &ComplexMatrix) -> Result<Spectrum> {
    let n = h.dim()?;
    let (defect, row, col) = h.hermitian_defect();
    if defect > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { row, col, magnitude: defect });
    }
    let mut a: Vec<Complex> = h.entries().to_vec();
    // symmetrize what tolerance let through
    for i in 0..n {
        a[i * n + i] = Complex::new(a[i * n + i].re, 0.0);
        for j in i + 1..n {
            let avg = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }
    jacobi_in_place(&mut a, n)?;
    Ok(Spectrum::from_unsorted((0..n).map(|i| a[i * n + i].re).collect()))
}

fn off_diagonal_sq(a: &[Complex], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += a[i * n + j].norm_sqr();
        }
    }
    2.0 * s
}

fn jacobi_in_place(a: &mut [Complex], n: usize) -> Result<()> {
    let total_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let target_sq = (OFF_DIAGONAL_TOL * OFF_DIAGONAL_TOL) * total_sq;
    let mut off_sq = off_diagonal_sq(a, n);
    let mut sweeps = 0;
    while off_sq > target_sq {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off_sq.sqrt() });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(a, n, p, q);
            }
        }
        off_sq = off_diagonal_sq(a, n);
    }
    Ok(())
}

/// Annihilate `a[p][q]` with `V = diag(1, e^{-i phi}) * [[c, s], [-s, c]]` acting on `(p, q)`.
#[inline]
fn rotate(a: &mut [Complex], n: usize, p: usize, q: usize) {
    let h_pq = a[p * n + q];
    let b = h_pq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let zeta = (app - aqq) / (2.0 * b);
    let t = if zeta >= 0.0 { -1.0 / (zeta + zeta.hypot(1.0)) } else { 1.0 / (-zeta + zeta.hypot(1.0)) };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let phase = h_pq / b; // e^{i phi}
    let v_pp = Complex::new(c, 0.0);
    let v_pq = Complex::new(s, 0.0);
    let v_qp = phase.conj() * (-s);
    let v_qq = phase.conj() * c;

    // H <- H V
    for i in 0..n {
        let hp = a[i * n + p];
        let hq = a[i * n + q];
        a[i * n + p] = hp * v_pp + hq * v_qp;
        a[i * n + q] = hp * v_pq + hq * v_qq;
    }
    // H <- V^* H
    let (cpp, cqp, cpq, cqq) = (v_pp.conj(), v_qp.conj(), v_pq.conj(), v_qq.conj());
    for j in 0..n {
        let hp = a[p * n + j];
        let hq = a[q * n + j];
        a[p * n + j] = cpp * hp + cqp * hq;
        a[q * n + j] = cpq * hp + cqq * hq;
    }
    a[p * n + q] = Complex::new(0.0, 0.0);
    a[q * n + p] = Complex::new(0.0, 0.0);
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
}

/// Eigenvalues of `Re(e^{i(theta - psi)} J_n(0))`.
///
/// A diagonal unitary conjugation removes the phase, so the answer is
/// `{cos(j pi / (n + 1)) : j = 1..n}` for every `theta` and `psi`.
pub fn jordan_spectrum_fast(n: usize, _theta: f64, _psi: f64) -> Spectrum {
    // j ascending gives the cosines already in non-increasing order
    Spectrum { values: (1..=n).map(|j| (j as f64 * PI / (n as f64 + 1.0)).cos()).collect() }
}

/// Eigenvalues of `Re(e^{i theta} T0)` for the normalized model matrix:
/// the Jordan cosines together with `|beta - alpha| cos(theta)` repeated `m` times.
pub fn normalized_model_spectrum(model: &JordanScalarModel, theta: f64) -> Spectrum {
    let mut values = jordan_spectrum_fast(model.n(), theta, model.psi()).values;
    values.extend(std::iter::repeat_n(model.gap() * theta.cos(), model.m()));
    Spectrum::from_unsorted(values)
}
