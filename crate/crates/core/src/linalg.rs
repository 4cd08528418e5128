//! Dense complex matrices and the constructions used throughout the crate:
//! Jordan blocks, direct sums, rotated Hermitian parts and the
//! `J_n(alpha) + beta I_m` model family.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Principal argument mapped into `[0, 2pi)`. The argument of zero is 0.
pub fn arg_2pi(z: Complex) -> f64 {
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        let shifted = a + TAU;
        if shifted >= TAU {
            0.0
        } else {
            shifted
        }
    } else {
        a
    }
}

/// Reduce an angle into `[0, 2pi)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

fn check_finite(z: Complex, row: usize, col: usize) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { row, col })
    }
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    /// Build from row-major entries. Rejects a wrong entry count and non-finite values.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch { rows, cols, len: data.len() });
        }
        for (idx, z) in data.iter().enumerate() {
            check_finite(*z, idx / cols.max(1), idx % cols.max(1))?;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch { rows: r, cols: c, len: row.len() * r });
            }
            data.extend_from_slice(row);
        }
        Self::new(r, c, data)
    }

    /// Real matrix from row-major values.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Complex::new(1.0, 0.0))
    }

    /// `c I_n`.
    pub fn scalar(n: usize, c: Complex) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Complex]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * n + i] = z;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.data[row * self.cols + col] = value;
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * c).collect() }
    }

    /// `self + c I`.
    pub fn shift(&self, c: Complex) -> Result<Self> {
        let n = self.dim()?;
        let mut out = self.clone();
        for i in 0..n {
            out.data[i * n + i] += c;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { left: self.rows * self.cols, right: other.rows * other.cols });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(l, j);
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|h_ij - conj(h_ji)|` and where it occurs.
    pub fn hermitian_defect(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (row, col): (usize, usize)) -> &Complex {
        &self.data[row * self.cols + col]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `J_n(alpha)`: alpha on the diagonal, ones on the first superdiagonal.
pub fn jordan_block(n: usize, alpha: Complex) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("Jordan block size must be at least 1".into()));
    }
    check_finite(alpha, 0, 0)?;
    let mut m = ComplexMatrix::scalar(n, alpha);
    for i in 0..n - 1 {
        m.set(i, i + 1, Complex::new(1.0, 0.0));
    }
    Ok(m)
}

/// Block-diagonal `a ⊕ b`.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let na = a.dim()?;
    let nb = b.dim()?;
    let n = na + nb;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..na {
        for j in 0..na {
            out.set(i, j, a.get(i, j));
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            out.set(na + i, na + j, b.get(i, j));
        }
    }
    Ok(out)
}

/// `Re(e^{i theta} T) = (e^{i theta} T + e^{-i theta} T^*) / 2`.
///
/// Built entrywise as `(a_ij + conj(a_ji)) / 2` so the result is exactly Hermitian.
pub fn hermitian_part(t: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let n = t.dim()?;
    let rot = Complex::from_polar(1.0, theta);
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let a_ij = rot * t.get(i, j);
            let a_ji = rot * t.get(j, i);
            let h = (a_ij + a_ji.conj()) * 0.5;
            if i == j {
                out.set(i, i, Complex::new(h.re, 0.0));
            } else {
                out.set(i, j, h);
                out.set(j, i, h.conj());
            }
        }
    }
    Ok(out)
}

/// Which of the two equivalent matrices to build from a [`JordanScalarModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixForm {
    /// `T = J_n(alpha) ⊕ beta I_m`.
    Original,
    /// `T0 = e^{-i psi} J_n(0) ⊕ |beta - alpha| I_m`, with `T = alpha I + e^{i psi} T0`.
    Normalized,
}

/// The structured input `J_n(alpha) ⊕ beta I_m`.
///
/// `m = 0` is the pure Jordan block; beta then plays no role and is stored equal to alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JordanScalarModel {
    n: usize,
    m: usize,
    alpha: Complex,
    beta: Complex,
    psi: f64,
}

impl JordanScalarModel {
    pub fn new(n: usize, m: usize, alpha: Complex, beta: Complex) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("Jordan block size n must be >= 2, got {n}")));
        }
        check_finite(alpha, 0, 0)?;
        check_finite(beta, 0, 1)?;
        let beta = if m == 0 { alpha } else { beta };
        let psi = if beta == alpha { 0.0 } else { arg_2pi(beta - alpha) };
        Ok(Self { n, m, alpha, beta, psi })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Total dimension `n + m`.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    pub fn beta(&self) -> Complex {
        self.beta
    }

    /// `arg(beta - alpha)` in `[0, 2pi)`, 0 when beta = alpha.
    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// `|beta - alpha|`.
    pub fn gap(&self) -> f64 {
        (self.beta - self.alpha).norm()
    }

    /// Map a point of the normalized frame to the world frame: `mu -> alpha + e^{i psi} mu`.
    pub fn to_world(&self, mu: Complex) -> Complex {
        self.alpha + Complex::from_polar(1.0, self.psi) * mu
    }

    /// Inverse of [`Self::to_world`].
    pub fn to_normalized(&self, mu: Complex) -> Complex {
        Complex::from_polar(1.0, -self.psi) * (mu - self.alpha)
    }

    pub fn materialize(&self, form: MatrixForm) -> ComplexMatrix {
        let (jordan, scalar) = match form {
            MatrixForm::Original => {
                (jordan_block(self.n, self.alpha).expect("n >= 2"), ComplexMatrix::scalar(self.m, self.beta))
            }
            MatrixForm::Normalized => (
                jordan_block(self.n, Complex::new(0.0, 0.0))
                    .expect("n >= 2")
                    .scale(Complex::from_polar(1.0, -self.psi)),
                ComplexMatrix::scalar(self.m, Complex::new(self.gap(), 0.0)),
            ),
        };
        direct_sum(&jordan, &scalar).expect("square blocks")
    }
}
