//! Generic engine for arbitrary square matrices: sample the support data
//! `theta -> lambda_k(Re(e^{i theta} T))` and intersect the half-planes
//! `Re(e^{i theta} mu) <= lambda_k`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::eigen::{eigenvalues_hermitian, Spectrum};
use crate::error::{Error, Result};
use crate::geometry::{intersect_halfplanes, ConvexRegion, HalfPlane, IntersectOptions};
use crate::linalg::{hermitian_part, Complex, ComplexMatrix};

pub const DEFAULT_RESOLUTION: usize = 3600;
pub const MIN_RESOLUTION: usize = 8;

/// Sampled support data for one rank `k`, sorted by angle in `[0, 2pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportProfile {
    k: usize,
    thetas: Vec<f64>,
    lambdas: Vec<f64>,
}

impl SupportProfile {
    pub fn new(k: usize, thetas: Vec<f64>, lambdas: Vec<f64>) -> Result<Self> {
        if thetas.len() != lambdas.len() {
            return Err(Error::InvalidParameter(format!("{} angles but {} values", thetas.len(), lambdas.len())));
        }
        if thetas.windows(2).any(|w| w[1] <= w[0]) || thetas.iter().any(|t| !(0.0..TAU).contains(t)) {
            return Err(Error::InvalidParameter("angles must be strictly increasing in [0, 2pi)".into()));
        }
        Ok(Self { k, thetas, lambdas })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.thetas.iter().copied().zip(self.lambdas.iter().copied())
    }

    /// Largest cyclic gap between consecutive angles.
    pub fn max_gap(&self) -> f64 {
        if self.thetas.is_empty() {
            return TAU;
        }
        let wrap = self.thetas[0] + TAU - self.thetas[self.thetas.len() - 1];
        self.thetas.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::max)
    }

    /// `max(1, max |lambda|)`.
    pub fn scale(&self) -> f64 {
        self.lambdas.iter().fold(1.0f64, |s, l| s.max(l.abs()))
    }

    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.samples().map(|(t, l)| HalfPlane::new(t, l)).collect()
    }
}

impl Serialize for SupportProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            k: usize,
            samples: Vec<[f64; 2]>,
            #[serde(skip)]
            _p: std::marker::PhantomData<&'a ()>,
        }
        Wire { k: self.k, samples: self.samples().map(|(t, l)| [t, l]).collect(), _p: Default::default() }.serialize(s)
    }
}

fn uniform_grid(resolution: usize) -> Vec<f64> {
    (0..resolution).map(|i| TAU * i as f64 / resolution as f64).collect()
}

fn spectrum_at(t: &ComplexMatrix, theta: f64) -> Result<Spectrum> {
    hermitian_part(t, theta)
        .and_then(|h| eigenvalues_hermitian(&h))
        .map_err(|e| Error::SampleFailed { theta, source: Box::new(e) })
}

fn check_k(t: &ComplexMatrix, k: usize) -> Result<()> {
    let dim = t.dim()?;
    if k == 0 || k > dim {
        return Err(Error::IndexOutOfRange { index: k, max: dim });
    }
    Ok(())
}

/// Full spectra of `Re(e^{i theta} T)` on a uniform grid, shared by all ranks.
#[derive(Debug, Clone)]
pub struct SpectralSweep {
    matrix: ComplexMatrix,
    thetas: Vec<f64>,
    spectra: Vec<Spectrum>,
}

impl SpectralSweep {
    pub fn new(t: &ComplexMatrix, resolution: usize) -> Result<Self> {
        t.dim()?;
        if resolution < MIN_RESOLUTION {
            return Err(Error::InvalidParameter(format!("resolution must be >= {MIN_RESOLUTION}, got {resolution}")));
        }
        let thetas = uniform_grid(resolution);
        let spectra = thetas.par_iter().map(|&th| spectrum_at(t, th)).collect::<Result<Vec<_>>>()?;
        Ok(Self { matrix: t.clone(), thetas, spectra })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn profile(&self, k: usize) -> Result<SupportProfile> {
        check_k(&self.matrix, k)?;
        let lambdas = self.spectra.iter().map(|s| s.values()[k - 1]).collect();
        Ok(SupportProfile { k, thetas: self.thetas.clone(), lambdas })
    }

    /// `lambda_k` at an arbitrary angle.
    pub fn lambda_at(&self, k: usize, theta: f64) -> Result<f64> {
        check_k(&self.matrix, k)?;
        Ok(spectrum_at(&self.matrix, theta)?.values()[k - 1])
    }

    /// Grid profile with extra angles inserted where the support data bends sharply.
    ///
    /// Intervals whose neighbouring secant slopes differ by more than
    /// `8 * scale * spacing` are bisected while the two bounding lines meet at a
    /// point violating the constraint at the midpoint angle by more than `tol`.
    pub fn refined_profile(&self, k: usize, opts: &RefineOptions) -> Result<SupportProfile> {
        let base = self.profile(k)?;
        let n = base.len();
        let spacing = TAU / n as f64;
        let scale = base.scale();
        let lam = &base.lambdas;
        let slope = |i: usize| (lam[(i + 1) % n] - lam[i % n]) / spacing;
        let flagged: Vec<usize> =
            (0..n).filter(|&i| (slope(i + 1) - slope(i + n - 1)).abs() > 8.0 * scale * spacing).collect();
        let tol = opts.tol_rel * scale;
        let extra = flagged
            .par_iter()
            .map(|&i| {
                let (ta, tb) = (base.thetas[i], base.thetas[i] + spacing);
                let mut out = Vec::new();
                self.bisect(k, (ta, lam[i]), (tb, lam[(i + 1) % n]), tol, opts, 0, &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<Vec<(f64, f64)>>>>()?;
        let mut samples: Vec<(f64, f64)> = base.samples().collect();
        samples.extend(extra.into_iter().flatten().map(|(t, l)| (crate::linalg::normalize_angle(t), l)));
        samples.sort_by(|a, b| a.0.total_cmp(&b.0));
        samples.dedup_by(|a, b| a.0 == b.0);
        let (thetas, lambdas) = samples.into_iter().unzip();
        Ok(SupportProfile { k, thetas, lambdas })
    }

    #[allow(clippy::too_many_arguments)]
    fn bisect(
        &self,
        k: usize,
        a: (f64, f64),
        b: (f64, f64),
        tol: f64,
        opts: &RefineOptions,
        depth: usize,
        out: &mut Vec<(f64, f64)>,
    ) -> Result<()> {
        if depth >= opts.max_depth || b.0 - a.0 <= opts.min_width {
            return Ok(());
        }
        let tm = 0.5 * (a.0 + b.0);
        let lm = self.lambda_at(k, tm)?;
        // corner of the two bounding lines
        let (ca, sa) = (a.0.cos(), -a.0.sin());
        let (cb, sb) = (b.0.cos(), -b.0.sin());
        let det = ca * sb - sa * cb;
        let violation = if det.abs() < 1e-300 {
            0.0
        } else {
            let x = (a.1 * sb - b.1 * sa) / det;
            let y = (ca * b.1 - cb * a.1) / det;
            x * tm.cos() - y * tm.sin() - lm
        };
        out.push((tm, lm));
        if violation > tol {
            self.bisect(k, a, (tm, lm), tol, opts, depth + 1, out)?;
            self.bisect(k, (tm, lm), b, tol, opts, depth + 1, out)?;
        }
        Ok(())
    }
}

/// Controls for [`SpectralSweep::refined_profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOptions {
    /// Stop bisecting once the corner violation is below `tol_rel * scale`.
    pub tol_rel: f64,
    /// Smallest interval width that is still split.
    pub min_width: f64,
    pub max_depth: usize,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self { tol_rel: 1e-10, min_width: 1e-11, max_depth: 48 }
    }
}

/// `lambda_k(Re(e^{i theta} T))` on the uniform grid of `resolution` angles.
pub fn sample_support(t: &ComplexMatrix, k: usize, resolution: usize) -> Result<SupportProfile> {
    check_k(t, k)?;
    SpectralSweep::new(t, resolution)?.profile(k)
}

/// Intersection of the sampled half-planes: an outer approximation of the range.
///
/// A sliver thinner than the angular sampling can resolve
/// (`2 tan(max gap) * diameter`) is reported as a segment.
pub fn outer_region(profile: &SupportProfile) -> Result<ConvexRegion> {
    let region = intersect_halfplanes(&profile.halfplanes()).map_err(|e| match e {
        Error::Unbounded => Error::InvalidParameter("sampled angles do not cover the circle".into()),
        other => other,
    })?;
    let scale = profile.scale();
    let defaults = IntersectOptions::default();
    let grid_width = 2.0 * profile.max_gap().min(1.0).tan() * region.diameter();
    Ok(region.reclassify(defaults.point_tol * scale, (defaults.width_tol * scale).max(grid_width)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    Outside,
    BoundaryUncertain,
}

/// Default membership tolerance for a profile: `1e-7 * max(1, max |lambda|)`.
pub fn default_member_tol(profile: &SupportProfile) -> f64 {
    1e-7 * profile.scale()
}

/// Repeated membership queries against one matrix and rank.
///
/// The verdict is certified over all angles, not only the grid: `lambda_k` is
/// Lipschitz in theta with constant at most `||T||_F`, so intervals whose bound
/// is inconclusive are bisected until they are decided or narrower than `1e-13`.
#[derive(Debug, Clone)]
pub struct MembershipOracle {
    sweep: SpectralSweep,
    profile: SupportProfile,
    lipschitz: f64,
    tol: f64,
}

/// Cap on extra eigenvalue evaluations per query before giving up as uncertain.
const MEMBER_EVAL_BUDGET: usize = 100_000;

impl MembershipOracle {
    pub fn new(t: &ComplexMatrix, k: usize, resolution: usize, tol: Option<f64>) -> Result<Self> {
        check_k(t, k)?;
        Self::from_sweep(SpectralSweep::new(t, resolution)?, k, tol)
    }

    pub fn from_sweep(sweep: SpectralSweep, k: usize, tol: Option<f64>) -> Result<Self> {
        let profile = sweep.profile(k)?;
        Self::from_profile(sweep, profile, tol)
    }

    /// Uses a precomputed (for instance refined) profile of the sweep's matrix.
    pub fn from_profile(sweep: SpectralSweep, profile: SupportProfile, tol: Option<f64>) -> Result<Self> {
        check_k(sweep.matrix(), profile.k())?;
        let tol = tol.unwrap_or_else(|| default_member_tol(&profile));
        let lipschitz = sweep.matrix().frobenius_norm();
        Ok(Self { sweep, profile, lipschitz, tol })
    }

    pub fn profile(&self) -> &SupportProfile {
        &self.profile
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn member(&self, mu: Complex) -> Result<Membership> {
        let g = |theta: f64, lambda: f64| mu.re * theta.cos() - mu.im * theta.sin() - lambda;
        let values: Vec<f64> = self.profile.samples().map(|(t, l)| g(t, l)).collect();
        if values.iter().any(|&v| v > self.tol) {
            return Ok(Membership::Outside);
        }
        let lip = self.lipschitz + mu.norm();
        let n = values.len();
        let thetas = self.profile.thetas();
        let mut stack: Vec<(f64, f64, f64, f64)> = (0..n)
            .map(|i| {
                let tb = if i + 1 < n { thetas[i + 1] } else { thetas[0] + TAU };
                (thetas[i], values[i], tb, values[(i + 1) % n])
            })
            .collect();
        let mut evals = 0;
        let mut uncertain = false;
        while let Some((ta, ga, tb, gb)) = stack.pop() {
            let bound = 0.5 * (ga + gb) + 0.5 * lip * (tb - ta);
            if bound <= -self.tol {
                continue;
            }
            if tb - ta < 1e-13 || evals >= MEMBER_EVAL_BUDGET {
                uncertain = true;
                continue;
            }
            let tm = 0.5 * (ta + tb);
            let gm = g(tm, self.sweep.lambda_at(self.profile.k(), tm)?);
            evals += 1;
            if gm > self.tol {
                return Ok(Membership::Outside);
            }
            stack.push((ta, ga, tm, gm));
            stack.push((tm, gm, tb, gb));
        }
        Ok(if uncertain { Membership::BoundaryUncertain } else { Membership::Inside })
    }
}

/// One-shot membership test; see [`MembershipOracle`].
pub fn member(t: &ComplexMatrix, k: usize, mu: Complex, resolution: usize) -> Result<Membership> {
    MembershipOracle::new(t, k, resolution, None)?.member(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{contains, hausdorff_distance, support_value, Point, RegionKind};
    use crate::linalg::{direct_sum, jordan_block};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn jordan_plus(n: usize, m: usize, beta: Complex) -> ComplexMatrix {
        direct_sum(&jordan_block(n, c(0.0, 0.0)).unwrap(), &ComplexMatrix::scalar(m, beta)).unwrap()
    }

    #[test]
    fn scalar_matrix_profile() {
        let beta = c(0.6, -0.8);
        let p = sample_support(&ComplexMatrix::scalar(3, beta), 2, 64).unwrap();
        for (t, l) in p.samples() {
            assert!((l - (Complex::from_polar(1.0, t) * beta).re).abs() < 1e-14);
        }
    }

    #[test]
    fn jordan_profile_is_flat() {
        let p = sample_support(&jordan_block(4, c(0.0, 0.0)).unwrap(), 1, 360).unwrap();
        for (_, l) in p.samples() {
            assert!((l - (PI / 5.0).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn jordan_plus_one_at_zero() {
        let p = sample_support(&jordan_plus(5, 1, c(1.0, 0.0)), 2, 360).unwrap();
        assert_eq!(p.thetas()[0], 0.0);
        assert!((p.lambdas()[0] - (PI / 6.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn bad_arguments() {
        let t = jordan_block(3, c(0.0, 0.0)).unwrap();
        assert!(matches!(sample_support(&t, 0, 64), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sample_support(&t, 4, 64), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(sample_support(&t, 1, 4), Err(Error::InvalidParameter(_))));
        assert!(matches!(sample_support(&ComplexMatrix::zeros(2, 3), 1, 64), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn jordan_two_disk() {
        let p = sample_support(&jordan_block(2, c(0.0, 0.0)).unwrap(), 1, DEFAULT_RESOLUTION).unwrap();
        let r = outer_region(&p).unwrap();
        assert_eq!(r.kind(), RegionKind::Polygon);
        for i in 0..100 {
            let s = support_value(&r, i as f64 * 0.0628).unwrap();
            assert!((0.5 - 1e-3..=0.5 + 1e-4).contains(&s), "{s}");
        }
    }

    #[test]
    fn remark_instances() {
        let p = sample_support(&jordan_plus(4, 2, c(1.0, 0.0)), 3, DEFAULT_RESOLUTION).unwrap();
        assert!(outer_region(&p).unwrap().is_empty());

        let p = sample_support(&jordan_plus(3, 2, c(0.0, 0.0)), 4, DEFAULT_RESOLUTION).unwrap();
        let r = outer_region(&p).unwrap();
        assert_eq!(r.kind(), RegionKind::Point);
        assert!(r.vertices()[0].distance(Point::new(0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn member_examples() {
        let j2 = jordan_block(2, c(0.0, 0.0)).unwrap();
        assert_eq!(member(&j2, 1, c(0.0, 0.0), 360).unwrap(), Membership::Inside);
        assert_eq!(member(&j2, 1, c(1.0, 0.0), 360).unwrap(), Membership::Outside);
        assert_eq!(member(&j2, 1, c(0.5, 0.0), 360).unwrap(), Membership::BoundaryUncertain);
        // just inside, but between grid lines the margin is below the sampled slack
        assert_eq!(member(&j2, 1, Complex::from_polar(0.5 - 1e-5, 0.3e-3), 360).unwrap(), Membership::Inside);
        assert_eq!(member(&j2, 1, Complex::from_polar(0.5 + 1e-5, 0.3e-3), 360).unwrap(), Membership::Outside);

        let t = jordan_plus(4, 2, c(1.0, 0.0));
        let oracle = MembershipOracle::new(&t, 3, 360, None).unwrap();
        for mu in [c(0.0, 0.0), c(0.9, 0.0), c(1.0, 0.0), c(0.8, 0.1), c(-3.0, 2.0)] {
            assert_eq!(oracle.member(mu).unwrap(), Membership::Outside, "{mu}");
        }
    }

    #[test]
    fn refinement_pins_rotated_segment() {
        let beta = c(1.0, -2.0) / 5f64.sqrt();
        let model = crate::linalg::JordanScalarModel::new(3, 1, c(0.0, 0.0), beta).unwrap();
        let desc = crate::closed_form::classify(&model, 2).unwrap();
        let truth = crate::closed_form::discretize(&desc, 64).unwrap();
        assert_eq!(truth.kind(), RegionKind::Segment);
        let sweep = SpectralSweep::new(&jordan_plus(3, 1, beta), DEFAULT_RESOLUTION).unwrap();
        let plain = outer_region(&sweep.profile(2).unwrap()).unwrap();
        let refined = outer_region(&sweep.refined_profile(2, &RefineOptions::default()).unwrap()).unwrap();
        assert_eq!(refined.kind(), RegionKind::Segment);
        let d_refined = hausdorff_distance(&refined, &truth).unwrap();
        assert!(d_refined < 1e-6, "{d_refined}");
        assert!(hausdorff_distance(&plain, &truth).unwrap() >= d_refined);
    }

    #[test]
    fn profile_json() {
        let p = SupportProfile::new(2, vec![0.0, 1.0], vec![0.5, -0.25]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"k":2,"samples":[[0.0,0.5],[1.0,-0.25]]}"#);
        assert!(SupportProfile::new(1, vec![1.0, 0.5], vec![0.0, 0.0]).is_err());
    }

    fn random_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| ComplexMatrix::new(n, n, v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn nesting_and_resolution_monotone(t in random_matrix(4)) {
            let coarse = SpectralSweep::new(&t, 360).unwrap();
            let fine = SpectralSweep::new(&t, 720).unwrap();
            let mut prev: Option<ConvexRegion> = None;
            for k in 1..=2 {
                let rc = outer_region(&coarse.profile(k).unwrap()).unwrap();
                let rf = outer_region(&fine.profile(k).unwrap()).unwrap();
                for v in rf.vertices() {
                    prop_assert!(rc.distance_to(*v) <= 1e-9);
                }
                if let Some(p) = &prev {
                    for v in rc.vertices() {
                        prop_assert!(p.distance_to(*v) <= 1e-9);
                    }
                }
                prev = Some(rc);
            }
        }

        #[test]
        fn rotation_translation_equivariance(t in random_matrix(3), j in 0usize..360, sr in -2.0f64..2.0, si in -2.0f64..2.0) {
            let phi = TAU * j as f64 / 360.0;
            let rot = Complex::from_polar(1.0, phi);
            let shift = c(sr, si);
            let moved = t.scale(rot).shift(shift).unwrap();
            let a = outer_region(&sample_support(&t, 1, 360).unwrap()).unwrap();
            let b = outer_region(&sample_support(&moved, 1, 360).unwrap()).unwrap();
            let a_moved = a.rotate_translate(rot, shift);
            prop_assert!(hausdorff_distance(&a_moved, &b).unwrap() <= 1e-9);
        }

        #[test]
        fn direct_sum_inclusion(t in random_matrix(3), s in random_matrix(2)) {
            let sum = direct_sum(&t, &s).unwrap();
            let oracle = MembershipOracle::new(&sum, 1, 360, None).unwrap();
            for part in [&t, &s] {
                let r = outer_region(&sample_support(part, 1, 360).unwrap()).unwrap();
                let centroid = r.centroid().unwrap();
                // pull the outer vertices in far enough to land inside the true range
                let shrink = 0.05;
                for v in r.vertices() {
                    let p = Point::new(v.x + shrink * (centroid.x - v.x), v.y + shrink * (centroid.y - v.y));
                    prop_assert_ne!(oracle.member(p.to_complex()).unwrap(), Membership::Outside);
                    prop_assert!(contains(&r, p.to_complex(), 1e-9));
                }
            }
        }
    }
}
