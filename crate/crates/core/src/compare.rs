//! Cross-validation of the closed-form classifier against the sampler.

use serde::Serialize;

use crate::closed_form::{classify, discretize, lambda_k_closed, RegionDescriptor};
use crate::error::Result;
use crate::geometry::{hausdorff_distance, ConvexRegion, RegionKind};
use crate::linalg::{JordanScalarModel, MatrixForm};
use crate::sampler::{outer_region, RefineOptions, SpectralSweep, SupportProfile};

/// Arc discretization used when comparing against sampled regions; the chord
/// error is below `3e-7 * radius`.
pub const COMPARE_ARC_STEPS: usize = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub k: usize,
    pub case: u8,
    pub closed_kind: RegionKind,
    pub sampled_kind: RegionKind,
    pub kinds_agree: bool,
    /// `None` when either side is empty.
    #[serde(rename = "distance")]
    pub hausdorff: Option<f64>,
    /// `max |lambda_closed - lambda_sampled|` over the profile angles.
    pub support_discrepancy: f64,
}

impl Comparison {
    /// Agreement in kind and, when both are non-empty, Hausdorff distance within
    /// `area_tol` for 2-D regions or `point_tol` for segments and points.
    pub fn agrees(&self, area_tol: f64, point_tol: f64) -> bool {
        if !self.kinds_agree {
            return false;
        }
        match (self.closed_kind, self.hausdorff) {
            (RegionKind::Empty, _) => true,
            (RegionKind::Polygon, Some(d)) => d <= area_tol,
            (_, Some(d)) => d <= point_tol,
            (_, None) => false,
        }
    }
}

/// Both engines' regions for one rank, with their comparison.
#[derive(Debug, Clone)]
pub struct EnginePair {
    pub descriptor: RegionDescriptor,
    pub closed: ConvexRegion,
    pub profile: SupportProfile,
    pub sampled: ConvexRegion,
    pub comparison: Comparison,
}

pub fn closed_region(desc: &RegionDescriptor) -> Result<ConvexRegion> {
    if desc.is_empty() {
        Ok(ConvexRegion::empty())
    } else {
        discretize(desc, COMPARE_ARC_STEPS)
    }
}

/// Runs both engines on the model at rank `k` using an existing sweep of the
/// materialized matrix (original form).
pub fn compare_with_sweep(
    model: &JordanScalarModel,
    sweep: &SpectralSweep,
    k: usize,
    refine: Option<&RefineOptions>,
) -> Result<EnginePair> {
    let descriptor = classify(model, k)?;
    let closed = closed_region(&descriptor)?;
    let profile = match refine {
        Some(opts) => sweep.refined_profile(k, opts)?,
        None => sweep.profile(k)?,
    };
    let sampled = outer_region(&profile)?;
    let hausdorff =
        if closed.is_empty() || sampled.is_empty() { None } else { Some(hausdorff_distance(&closed, &sampled)?) };
    // the sweep is in the world frame: lambda_k(Re e^{i theta} T) for T = alpha + e^{i psi} T0
    let mut support_discrepancy = 0.0f64;
    for (theta, lambda) in profile.samples() {
        let rot = crate::linalg::Complex::from_polar(1.0, theta);
        let world = (rot * model.alpha()).re + lambda_k_closed(model, k, theta + model.psi())?;
        support_discrepancy = support_discrepancy.max((world - lambda).abs());
    }
    let comparison = Comparison {
        k,
        case: descriptor.case,
        closed_kind: closed.kind(),
        sampled_kind: sampled.kind(),
        kinds_agree: closed.kind() == sampled.kind(),
        hausdorff,
        support_discrepancy,
    };
    Ok(EnginePair { descriptor, closed, profile, sampled, comparison })
}

pub fn compare_engines(
    model: &JordanScalarModel,
    k: usize,
    resolution: usize,
    refine: Option<&RefineOptions>,
) -> Result<EnginePair> {
    let sweep = SpectralSweep::new(&model.materialize(MatrixForm::Original), resolution)?;
    compare_with_sweep(model, &sweep, k, refine)
}
