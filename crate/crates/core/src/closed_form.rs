//! Exact description of `Lambda_k(J_n(alpha) ⊕ beta I_m)`.
//!
//! Everything is computed for the normalized matrix
//! `T0 = e^{-i psi} J_n(0) ⊕ |beta - alpha| I_m` and mapped back with
//! `mu -> alpha + e^{i psi} mu`. In the normalized frame the range is one of
//! seven shapes: a disk, a disk joined to a cone with apex on the positive real
//! axis (optionally cut by a larger concentric cap), a segment `[0, L]`, a point,
//! or the empty set.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, ConvexRegion, Point};
use crate::linalg::{normalize_angle, Complex, JordanScalarModel};

/// Relative tolerance for the threshold comparisons `|beta - alpha|` vs a cosine.
/// Ties are resolved towards the larger region.
pub const TIE_TOL: f64 = 1e-12;
/// Slack used by [`region_contains`] for the closed boundary.
pub const CONTAINS_TOL: f64 = 1e-12;

/// `arccos` with arguments up to `1e-12` outside `[-1, 1]` clamped.
pub fn clamped_acos(x: f64) -> Result<f64> {
    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::ArccosDomain(x));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// Derived angles of a model at rank `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleData {
    pub phi_k: f64,
    pub psi_km: f64,
    pub delta_k: f64,
    pub eta_km: f64,
    pub cos_phi_k: f64,
    pub cos_psi_km: f64,
}

/// A subset of the circle `R / 2pi Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AngleSet {
    Full,
    Empty,
    /// Counterclockwise arc from `from` to `to`, both in `[0, 2pi)`, possibly
    /// wrapping through 0. `closed` says whether the endpoints belong to the set.
    Arc {
        from: f64,
        to: f64,
        closed: bool,
    },
}

impl AngleSet {
    pub fn contains(&self, theta: f64) -> bool {
        match *self {
            AngleSet::Full => true,
            AngleSet::Empty => false,
            AngleSet::Arc { from, to, closed } => {
                let span = normalize_angle(to - from);
                let offset = normalize_angle(theta - from);
                if closed {
                    offset <= span || (span == 0.0 && offset == 0.0)
                } else {
                    offset > 0.0 && offset < span
                }
            }
        }
    }
}

fn check_rank(model: &JordanScalarModel, k: usize) -> Result<()> {
    if k == 0 || k > model.dim() {
        return Err(Error::IndexOutOfRange { index: k, max: model.dim() });
    }
    Ok(())
}

pub fn angle_data(model: &JordanScalarModel, k: usize) -> Result<AngleData> {
    check_rank(model, k)?;
    let n1 = (model.n() + 1) as f64;
    let phi_k = k as f64 * PI / n1;
    let psi_km = (k as f64 - model.m() as f64) * PI / n1;
    let cos_phi_k = phi_k.cos();
    let cos_psi_km = psi_km.cos();
    let gap = model.gap();
    let delta_k = if gap > 0.0 && gap >= cos_phi_k.abs() { clamped_acos(cos_phi_k / gap)? } else { 0.0 };
    let eta_km =
        if k > model.m() && gap > 0.0 && gap >= cos_psi_km.abs() { clamped_acos(cos_psi_km / gap)? } else { 0.0 };
    Ok(AngleData { phi_k, psi_km, delta_k, eta_km, cos_phi_k, cos_psi_km })
}

/// `D_k = {theta : |beta - alpha| cos(theta) <= cos(phi_k)}`.
pub fn set_dk(model: &JordanScalarModel, k: usize) -> Result<AngleSet> {
    let a = angle_data(model, k)?;
    Ok(if a.delta_k > 0.0 {
        AngleSet::Arc { from: a.delta_k, to: TAU - a.delta_k, closed: true }
    } else if 2 * k <= model.n() + 1 {
        AngleSet::Full
    } else {
        AngleSet::Empty
    })
}

/// `C_{k,m} = {theta : |beta - alpha| cos(theta) > cos(psi_{k,m})}` for `k > m`, empty otherwise.
pub fn set_ckm(model: &JordanScalarModel, k: usize) -> Result<AngleSet> {
    let a = angle_data(model, k)?;
    Ok(if a.eta_km > 0.0 {
        AngleSet::Arc { from: normalize_angle(TAU - a.eta_km), to: a.eta_km, closed: false }
    } else if k <= model.m() || a.cos_psi_km >= 0.0 {
        // cos(psi) = 0 only reaches here with beta = alpha, where the strict inequality never holds
        AngleSet::Empty
    } else {
        AngleSet::Full
    })
}

/// Membership in the cone `R_{r,k}` via the tangent-line inequalities
/// `x cos(delta) ± y sin(delta) <= r cos(delta)` together with `x <= r`.
///
/// For `delta < pi/2` the inequalities already force `x <= r`; for larger
/// half-angles they alone describe a cone opening the other way.
pub fn in_cone(x: f64, y: f64, r: f64, delta_k: f64) -> bool {
    let (s, c) = delta_k.sin_cos();
    x <= r && x * c + y * s <= r * c && x * c - y * s <= r * c
}

/// Membership in `R_{r,k}` by its definition `(x - r) cot(delta) <= y <= (r - x) cot(delta)`, `x <= r`.
pub fn in_cone_cot(x: f64, y: f64, r: f64, delta_k: f64) -> bool {
    let cot = delta_k.cos() / delta_k.sin();
    x <= r && (x - r) * cot <= y && y <= (r - x) * cot
}

/// Shape of the range in the normalized frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    /// Closed disk of the given radius about 0.
    Disk {
        radius: f64,
    },
    /// Disk joined to the cone with apex `apex` on the real axis whose sides
    /// touch the disk at `radius e^{±i half_angle}`.
    DiskCone {
        radius: f64,
        apex: f64,
        half_angle: f64,
    },
    /// As `DiskCone`, intersected with the disk of radius `cap`.
    DiskConeCap {
        radius: f64,
        apex: f64,
        half_angle: f64,
        cap: f64,
    },
    /// Segment `[0, length]` on the real axis.
    Segment {
        length: f64,
    },
    /// The single point `at` on the real axis.
    Point {
        at: f64,
    },
    Empty,
}

/// Classification result: table case `1..=7`, the frame `(alpha, psi)` and the
/// normalized-frame shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionDescriptor {
    pub case: u8,
    #[serde(serialize_with = "serialize_complex")]
    pub alpha: Complex,
    pub psi: f64,
    pub k: usize,
    pub angles: AngleData,
    #[serde(rename = "params")]
    pub shape: Shape,
}

fn serialize_complex<S: serde::Serializer>(z: &Complex, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl RegionDescriptor {
    pub fn is_empty(&self) -> bool {
        matches!(self.shape, Shape::Empty)
    }

    pub fn to_world(&self, mu: Complex) -> Complex {
        self.alpha + Complex::from_polar(1.0, self.psi) * mu
    }

    pub fn to_normalized(&self, mu: Complex) -> Complex {
        Complex::from_polar(1.0, -self.psi) * (mu - self.alpha)
    }

    /// Distance from the origin to the cone's side lines
    /// `x cos(delta) ± y sin(delta) = apex cos(delta)`; `None` without a cone.
    pub fn cone_line_distance(&self) -> Option<f64> {
        match self.shape {
            Shape::DiskCone { apex, half_angle, .. } | Shape::DiskConeCap { apex, half_angle, .. } => {
                Some((apex * half_angle.cos()).abs())
            }
            _ => None,
        }
    }
}

fn le_tol(a: f64, b: f64) -> bool {
    a <= b + TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

/// The table classification of `Lambda_k(J_n(alpha) ⊕ beta I_m)`.
pub fn classify(model: &JordanScalarModel, k: usize) -> Result<RegionDescriptor> {
    let angles = angle_data(model, k)?;
    let (n, m) = (model.n(), model.m());
    let gap = model.gap();
    let r = angles.cos_phi_k;
    let cap = angles.cos_psi_km;
    let (case, shape) = if 2 * k <= n {
        if le_tol(gap, r) {
            (1, Shape::Disk { radius: r })
        } else if k <= m {
            (2, Shape::DiskCone { radius: r, apex: gap, half_angle: angles.delta_k })
        } else {
            (3, Shape::DiskConeCap { radius: r, apex: gap, half_angle: angles.delta_k, cap })
        }
    } else if 2 * k == n + 1 {
        if k <= m || le_tol(gap, cap) {
            (4, Shape::Segment { length: gap })
        } else {
            (5, Shape::Segment { length: cap })
        }
    } else if k <= m || le_tol(gap, cap) {
        (6, Shape::Point { at: gap })
    } else {
        (7, Shape::Empty)
    };
    Ok(RegionDescriptor { case, alpha: model.alpha(), psi: model.psi(), k, angles, shape })
}

/// Closed-set membership of `mu` (world frame) in the described region.
pub fn region_contains(desc: &RegionDescriptor, mu: Complex) -> bool {
    let z = desc.to_normalized(mu);
    let (x, y) = (z.re, z.im);
    let t = CONTAINS_TOL;
    let within = |radius: f64| z.norm() <= radius + t * radius.max(1.0);
    let cone = |apex: f64, delta: f64| {
        let (s, c) = delta.sin_cos();
        let tol = t * apex.max(1.0);
        let in_sector = z.norm() <= tol || z.arg().abs() <= delta;
        in_sector && x <= apex + tol && x * c + y * s <= apex * c + tol && x * c - y * s <= apex * c + tol
    };
    match desc.shape {
        Shape::Disk { radius } => within(radius),
        Shape::DiskCone { radius, apex, half_angle } => within(radius) || cone(apex, half_angle),
        Shape::DiskConeCap { radius, apex, half_angle, cap } => {
            within(radius) || (cone(apex, half_angle) && within(cap))
        }
        Shape::Segment { length } => {
            let tol = t * length.max(1.0);
            y.abs() <= tol && x >= -tol && x <= length + tol
        }
        Shape::Point { at } => (z - Complex::new(at, 0.0)).norm() <= t * at.max(1.0),
        Shape::Empty => false,
    }
}

/// Points `radius e^{i t}` for `t` from `from` to `to` (counterclockwise), inclusive,
/// with angular step at most `2 pi / arc_steps`.
fn arc_points(radius: f64, from: f64, to: f64, arc_steps: usize) -> Vec<Point> {
    let span = to - from;
    let pieces = ((span / TAU) * arc_steps as f64).ceil().max(1.0) as usize;
    (0..=pieces)
        .map(|j| {
            let t = from + span * j as f64 / pieces as f64;
            Point::new(radius * t.cos(), radius * t.sin())
        })
        .collect()
}

/// Where the segment from `from` to `(apex, 0)` leaves the disk of radius `cap`.
/// Assumes `|from| < cap < apex`.
fn exit_point(from: Point, apex: f64, cap: f64) -> Point {
    let d = Point::new(apex - from.x, -from.y);
    let a = d.x * d.x + d.y * d.y;
    let b = from.x * d.x + from.y * d.y;
    let c = from.x * from.x + from.y * from.y - cap * cap;
    let s = (b * b - a * c).max(0.0).sqrt();
    // positive root of a t^2 + 2 b t + c = 0 without cancellation
    let t = if b <= 0.0 { (s - b) / a } else { -c / (b + s) };
    Point::new(from.x + t * d.x, from.y + t * d.y)
}

/// Inscribed polygonal approximation of the region, in the world frame.
///
/// Circular arcs are replaced by chords of angular step at most `2 pi / arc_steps`,
/// so the Hausdorff error is at most `radius (1 - cos(pi / arc_steps))`.
pub fn discretize(desc: &RegionDescriptor, arc_steps: usize) -> Result<ConvexRegion> {
    if arc_steps < 3 {
        return Err(Error::InvalidParameter(format!("arc_steps must be >= 3, got {arc_steps}")));
    }
    let normalized = match desc.shape {
        Shape::Empty => return Err(Error::EmptyRegion),
        Shape::Point { at } => ConvexRegion::point(Point::new(at, 0.0)),
        Shape::Segment { length } => {
            if length <= TIE_TOL {
                ConvexRegion::point(Point::new(0.0, 0.0))
            } else {
                ConvexRegion::segment(Point::new(0.0, 0.0), Point::new(length, 0.0))
            }
        }
        Shape::Disk { radius } => disk_polygon(radius, arc_steps),
        Shape::DiskCone { radius, apex, half_angle } => cone_polygon(radius, apex, half_angle, None, arc_steps),
        Shape::DiskConeCap { radius, apex, half_angle, cap } => {
            cone_polygon(radius, apex, half_angle, Some(cap), arc_steps)
        }
    };
    Ok(normalized.rotate_translate(Complex::from_polar(1.0, desc.psi), desc.alpha))
}

fn disk_polygon(radius: f64, arc_steps: usize) -> ConvexRegion {
    if radius <= 0.0 {
        return ConvexRegion::point(Point::new(0.0, 0.0));
    }
    let mut pts = arc_points(radius, 0.0, TAU, arc_steps);
    pts.pop();
    ConvexRegion::hull(&pts, 1e-12 * radius)
}

fn cone_polygon(radius: f64, apex: f64, delta: f64, cap: Option<f64>, arc_steps: usize) -> ConvexRegion {
    let mut pts = arc_points(radius, delta, TAU - delta, arc_steps);
    match cap {
        Some(cap) if apex > cap => {
            let upper = Point::new(radius * delta.cos(), radius * delta.sin());
            let lower = Point::new(upper.x, -upper.y);
            let q_lower = exit_point(lower, apex, cap);
            let gamma = q_lower.y.atan2(q_lower.x).abs();
            pts.extend(arc_points(cap, -gamma, gamma, arc_steps));
        }
        _ => pts.push(Point::new(apex, 0.0)),
    }
    ConvexRegion::hull(&pts, 1e-12 * apex.max(1.0))
}

/// One piece of a region boundary, in the world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPiece {
    Line {
        from: Point,
        to: Point,
    },
    /// Counterclockwise arc `center + radius e^{i t}` for `t` in `[start, start + sweep]`.
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl BoundaryPiece {
    /// Point at parameter `s` in `[0, 1]` along the piece.
    pub fn point_at(&self, s: f64) -> Point {
        match *self {
            BoundaryPiece::Line { from, to } => Point::new(from.x + s * (to.x - from.x), from.y + s * (to.y - from.y)),
            BoundaryPiece::Arc { center, radius, start, sweep } => {
                let t = start + s * sweep;
                Point::new(center.x + radius * t.cos(), center.y + radius * t.sin())
            }
        }
    }

    pub fn start_point(&self) -> Point {
        self.point_at(0.0)
    }

    pub fn end_point(&self) -> Point {
        self.point_at(1.0)
    }

    pub fn length(&self) -> f64 {
        match *self {
            BoundaryPiece::Line { from, to } => from.distance(to),
            BoundaryPiece::Arc { radius, sweep, .. } => radius * sweep,
        }
    }
}

/// Exact boundary of the described region as a counterclockwise chain of lines
/// and circular arcs in the world frame. A point is a single zero-length line;
/// the empty region has no pieces.
pub fn boundary(desc: &RegionDescriptor) -> Vec<BoundaryPiece> {
    let line = |a: Point, b: Point| BoundaryPiece::Line { from: a, to: b };
    let arc =
        |radius: f64, start: f64, sweep: f64| BoundaryPiece::Arc { center: Point::new(0.0, 0.0), radius, start, sweep };
    let origin = Point::new(0.0, 0.0);
    let normalized = match desc.shape {
        Shape::Empty => Vec::new(),
        Shape::Point { at } => vec![line(Point::new(at, 0.0), Point::new(at, 0.0))],
        Shape::Segment { length } if length <= TIE_TOL => vec![line(origin, origin)],
        Shape::Segment { length } => vec![line(origin, Point::new(length, 0.0))],
        Shape::Disk { radius } if radius <= 0.0 => vec![line(origin, origin)],
        Shape::Disk { radius } => vec![arc(radius, 0.0, TAU)],
        Shape::DiskCone { radius, apex, half_angle } => cone_boundary(radius, apex, half_angle, None),
        Shape::DiskConeCap { radius, apex, half_angle, cap } => cone_boundary(radius, apex, half_angle, Some(cap)),
    };
    let world = |p: Point| Point::from(desc.to_world(p.to_complex()));
    normalized
        .into_iter()
        .map(|piece| match piece {
            BoundaryPiece::Line { from, to } => line(world(from), world(to)),
            BoundaryPiece::Arc { center, radius, start, sweep } => {
                BoundaryPiece::Arc { center: world(center), radius, start: start + desc.psi, sweep }
            }
        })
        .collect()
}

fn cone_boundary(radius: f64, apex: f64, delta: f64, cap: Option<f64>) -> Vec<BoundaryPiece> {
    let upper = Point::new(radius * delta.cos(), radius * delta.sin());
    let lower = Point::new(upper.x, -upper.y);
    let disk = BoundaryPiece::Arc { center: Point::new(0.0, 0.0), radius, start: delta, sweep: TAU - 2.0 * delta };
    match cap {
        Some(cap) if apex > cap => {
            let q_lower = exit_point(lower, apex, cap);
            let q_upper = Point::new(q_lower.x, -q_lower.y);
            let gamma = q_lower.y.atan2(q_lower.x).abs();
            vec![
                disk,
                BoundaryPiece::Line { from: lower, to: q_lower },
                BoundaryPiece::Arc { center: Point::new(0.0, 0.0), radius: cap, start: -gamma, sweep: 2.0 * gamma },
                BoundaryPiece::Line { from: q_upper, to: upper },
            ]
        }
        _ => {
            let tip = Point::new(apex, 0.0);
            vec![disk, BoundaryPiece::Line { from: lower, to: tip }, BoundaryPiece::Line { from: tip, to: upper }]
        }
    }
}

/// `lambda_k(Re(e^{i theta} T0))` from the piecewise closed form.
pub fn lambda_k_closed(model: &JordanScalarModel, k: usize, theta: f64) -> Result<f64> {
    let a = angle_data(model, k)?;
    let gap = model.gap();
    if set_ckm(model, k)?.contains(theta) {
        return Ok(a.cos_psi_km);
    }
    if k <= model.n() && set_dk(model, k)?.contains(theta) {
        return Ok(a.cos_phi_k);
    }
    Ok(gap * theta.cos())
}

/// Smallest rank at which the two models' ranges differ in emptiness or by a
/// Hausdorff distance above `threshold`. `None` when no rank separates them.
pub fn distinguishing_rank(
    a: &JordanScalarModel,
    b: &JordanScalarModel,
    arc_steps: usize,
    threshold: f64,
) -> Result<Option<usize>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    for k in 1..=a.dim() {
        let (da, db) = (classify(a, k)?, classify(b, k)?);
        if da.is_empty() != db.is_empty() {
            return Ok(Some(k));
        }
        if da.is_empty() {
            continue;
        }
        let d = hausdorff_distance(&discretize(&da, arc_steps)?, &discretize(&db, arc_steps)?)?;
        if d > threshold {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
