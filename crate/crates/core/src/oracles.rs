//! Independent checks: brute-force ranges of normal matrices and explicit
//! rank-k projection witnesses `P T P = mu P`.

use serde::{Serialize, Serializer};

use crate::eigen::eigenvalues_hermitian;
use crate::error::{Error, Result};
use crate::geometry::{contains, ConvexRegion, Point, RegionKind};
use crate::linalg::{hermitian_part, Complex, ComplexMatrix};

/// Largest eigenvalue list accepted by [`normal_range_oracle`].
pub const MAX_NORMAL_EIGS: usize = 12;
pub const ORACLE_TOL: f64 = 1e-9;
pub const WITNESS_TOL: f64 = 1e-9;

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..size).rev().find(|&i| idx[i] < n - size + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Hulls of every `(n - k + 1)`-subset of the eigenvalues.
fn subset_hulls(eigs: &[Complex], k: usize) -> Result<Vec<ConvexRegion>> {
    let n = eigs.len();
    if n > MAX_NORMAL_EIGS {
        return Err(Error::InvalidParameter(format!(
            "normal oracle takes at most {MAX_NORMAL_EIGS} eigenvalues, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    if let Some(i) = eigs.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite { row: i, col: i });
    }
    Ok(subsets(n, n - k + 1)
        .into_iter()
        .map(|s| {
            let pts: Vec<Point> = s.iter().map(|&i| Point::from(eigs[i])).collect();
            ConvexRegion::hull(&pts, ORACLE_TOL)
        })
        .collect())
}

/// Membership in the rank-k range of a normal matrix with the given eigenvalues:
/// the probe must lie in the closed hull of every `(n - k + 1)`-subset.
pub fn normal_range_oracle(eigs: &[Complex], k: usize, probe: Complex) -> Result<bool> {
    Ok(subset_hulls(eigs, k)?.iter().all(|h| contains(h, probe, ORACLE_TOL)))
}

/// Distance from the probe to the nearest subset-hull boundary.
///
/// Used to skip probes whose oracle verdict sits within rounding of a boundary.
pub fn normal_boundary_distance(eigs: &[Complex], k: usize, probe: Complex) -> Result<f64> {
    let p = Point::from(probe);
    Ok(subset_hulls(eigs, k)?
        .iter()
        .map(|h| match h.kind() {
            RegionKind::Polygon => {
                let outside = h.distance_to(p);
                if outside > 0.0 {
                    outside
                } else {
                    let v = h.vertices();
                    (0..v.len())
                        .map(|i| ConvexRegion::segment(v[i], v[(i + 1) % v.len()]).distance_to(p))
                        .fold(f64::INFINITY, f64::min)
                }
            }
            _ => h.distance_to(p),
        })
        .fold(f64::INFINITY, f64::min))
}

/// Outcome of checking a claimed rank-k projection witness.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionWitness {
    pub matrix: ComplexMatrix,
    /// Number of eigenvalues of `P` above 1/2.
    pub rank: usize,
    pub mu: Complex,
    /// `max |P T P - mu P|` entrywise.
    pub residual: f64,
    pub hermitian_defect: f64,
    pub idempotent_defect: f64,
    pub accepted: bool,
}

impl Serialize for ProjectionWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rank: usize,
            mu: [f64; 2],
            residual: f64,
            accepted: bool,
        }
        Wire { rank: self.rank, mu: [self.mu.re, self.mu.im], residual: self.residual, accepted: self.accepted }
            .serialize(s)
    }
}

/// Checks `P* = P`, `P^2 = P`, `rank P = k` and `P T P = mu P`, all within `1e-9`.
pub fn verify_witness(t: &ComplexMatrix, p: &ComplexMatrix, mu: Complex, k: usize) -> Result<ProjectionWitness> {
    let n = t.dim()?;
    let np = p.dim()?;
    if n != np {
        return Err(Error::DimensionMismatch { left: n, right: np });
    }
    let hermitian_defect = p.sub(&p.conj_transpose())?.max_abs();
    let idempotent_defect = p.matmul(p)?.sub(p)?.max_abs();
    let spectrum = eigenvalues_hermitian(&hermitian_part(p, 0.0)?)?;
    let rank = spectrum.values().iter().filter(|&&v| v > 0.5).count();
    let residual = p.matmul(t)?.matmul(p)?.sub(&p.scale(mu))?.max_abs();
    let accepted =
        hermitian_defect <= WITNESS_TOL && idempotent_defect <= WITNESS_TOL && rank == k && residual <= WITNESS_TOL;
    Ok(ProjectionWitness { matrix: p.clone(), rank, mu, residual, hermitian_defect, idempotent_defect, accepted })
}

/// `sum_{j=1}^{ell+1} E_{2j-1,2j-1} ⊕ I_m`: a rank `ell + 1 + m` projection that
/// compresses `J_{2 ell + 1}(0) ⊕ 0_m` to zero.
pub fn odd_jordan_witness(ell: usize, m: usize) -> ComplexMatrix {
    let n = 2 * ell + 1;
    let diag: Vec<Complex> = (0..n + m)
        .map(|i| if i >= n || i % 2 == 0 { Complex::new(1.0, 0.0) } else { Complex::new(0.0, 0.0) })
        .collect();
    ComplexMatrix::diagonal(&diag)
}
