//! Half-planes, their intersection as a possibly degenerate convex region,
//! support values, containment and Hausdorff distance.
//!
//! A half-plane with direction `theta` and offset `c` is the set
//! `{x + iy : x cos(theta) - y sin(theta) <= c}`, i.e. `Re(e^{i theta} mu) <= c`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{normalize_angle, Complex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.x, self.y)
    }

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }

    fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point) -> f64 {
        self.sub(o).norm()
    }
}

impl From<Complex> for Point {
    fn from(z: Complex) -> Self {
        Point::new(z.re, z.im)
    }
}

impl From<[f64; 2]> for Point {
    fn from(p: [f64; 2]) -> Self {
        Point::new(p[0], p[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// `Re(e^{i theta} mu)` for `mu = p`.
#[inline]
pub fn directional_value(p: Point, theta: f64) -> f64 {
    p.x * theta.cos() - p.y * theta.sin()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    theta: f64,
    offset: f64,
    // cached (cos theta, -sin theta): the outward normal
    normal: Point,
}

impl HalfPlane {
    pub fn new(theta: f64, offset: f64) -> Self {
        let theta = normalize_angle(theta);
        Self { theta, offset, normal: Point::new(theta.cos(), -theta.sin()) }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `offset - Re(e^{i theta} p)`; non-negative inside.
    #[inline]
    pub fn slack(&self, p: Point) -> f64 {
        self.offset - self.normal.dot(p)
    }

    fn relaxed(&self, t: f64) -> Self {
        Self { offset: self.offset + t, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    Polygon,
    Segment,
    Point,
    Empty,
}

/// A closed convex region: a strictly convex counterclockwise polygon, a segment
/// with distinct endpoints, a single point, or the empty set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    kind: RegionKind,
    vertices: Vec<Point>,
}

impl ConvexRegion {
    pub fn empty() -> Self {
        Self { kind: RegionKind::Empty, vertices: Vec::new() }
    }

    pub fn point(p: Point) -> Self {
        Self { kind: RegionKind::Point, vertices: vec![p] }
    }

    /// A segment; collapses to a point when the endpoints coincide.
    pub fn segment(a: Point, b: Point) -> Self {
        if a == b {
            return Self::point(a);
        }
        Self { kind: RegionKind::Segment, vertices: vec![a, b] }
    }

    /// Convex hull of arbitrary points, classified by kind.
    ///
    /// `tol` is the absolute distance below which points merge and thin hulls
    /// count as segments.
    pub fn hull(points: &[Point], tol: f64) -> Self {
        let hull = monotone_chain(points);
        classify_vertices(hull, tol, tol)
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.kind == RegionKind::Empty
    }

    /// Apply `p -> rotation * p + shift`, with `|rotation| = 1`.
    pub fn rotate_translate(&self, rotation: Complex, shift: Complex) -> Self {
        let vertices = self.vertices.iter().map(|p| Point::from(rotation * p.to_complex() + shift)).collect();
        Self { kind: self.kind, vertices }
    }

    /// Largest distance between two points of the region.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].distance(v[j]));
            }
        }
        d
    }

    /// Vertex average; `None` for the empty region.
    pub fn centroid(&self) -> Option<Point> {
        if self.vertices.is_empty() {
            return None;
        }
        let s = self.vertices.iter().fold(Point::new(0.0, 0.0), |acc, &p| acc.add(p));
        Some(s.mul(1.0 / self.vertices.len() as f64))
    }

    /// Signed area (positive for counterclockwise polygons, zero otherwise).
    pub fn area(&self) -> f64 {
        if self.kind != RegionKind::Polygon {
            return 0.0;
        }
        polygon_area(&self.vertices)
    }

    /// Re-run the kind classification with explicit absolute tolerances, e.g. to
    /// collapse a sliver whose width is below a known approximation error.
    pub fn reclassify(&self, point_tol: f64, width_tol: f64) -> Self {
        match self.kind {
            RegionKind::Polygon => classify_vertices(self.vertices.clone(), point_tol, width_tol),
            RegionKind::Segment if self.diameter() <= point_tol => {
                ConvexRegion::point(self.centroid().expect("segment has vertices"))
            }
            _ => self.clone(),
        }
    }

    /// Smallest distance between two parallel support lines; 0 unless a polygon.
    pub fn width(&self) -> f64 {
        if self.kind == RegionKind::Polygon {
            min_width(&self.vertices).0
        } else {
            0.0
        }
    }

    /// Euclidean distance from `p` to the region; infinite when empty.
    pub fn distance_to(&self, p: Point) -> f64 {
        match self.kind {
            RegionKind::Empty => f64::INFINITY,
            RegionKind::Point => p.distance(self.vertices[0]),
            RegionKind::Segment => segment_distance(p, self.vertices[0], self.vertices[1]),
            RegionKind::Polygon => {
                let v = &self.vertices;
                let n = v.len();
                let inside = (0..n).all(|i| v[(i + 1) % n].sub(v[i]).cross(p.sub(v[i])) >= 0.0);
                if inside {
                    0.0
                } else {
                    (0..n).map(|i| segment_distance(p, v[i], v[(i + 1) % n])).fold(f64::INFINITY, f64::min)
                }
            }
        }
    }
}

fn polygon_area(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>()
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a.add(ab.mul(t)))
}

/// True iff `mu` lies within distance `tol` of the closed region.
pub fn contains(region: &ConvexRegion, mu: Complex, tol: f64) -> bool {
    region.distance_to(Point::from(mu)) <= tol
}

/// Maximum of `x cos(theta) - y sin(theta)` over the region.
pub fn support_value(region: &ConvexRegion, theta: f64) -> Result<f64> {
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(region.vertices.iter().map(|&p| directional_value(p, theta)).fold(f64::NEG_INFINITY, f64::max))
}

/// Tolerances for [`intersect_halfplanes_with`]. Distances are relative to
/// `scale = max(1, max |offset|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectOptions {
    /// Directions closer than this (radians) are treated as parallel.
    pub parallel_tol: f64,
    /// Regions with diameter below this collapse to a point.
    pub point_tol: f64,
    /// Regions thinner than this collapse to a segment.
    pub width_tol: f64,
    /// Largest offset relaxation under which an empty intersection still counts as touching.
    pub feasibility_tol: f64,
}

impl Default for IntersectOptions {
    fn default() -> Self {
        Self { parallel_tol: 1e-12, point_tol: 1e-9, width_tol: 1e-9, feasibility_tol: 1e-9 }
    }
}

/// Intersection of half-planes with the default tolerances.
pub fn intersect_halfplanes(planes: &[HalfPlane]) -> Result<ConvexRegion> {
    intersect_halfplanes_with(planes, &IntersectOptions::default())
}

pub fn intersect_halfplanes_with(planes: &[HalfPlane], opts: &IntersectOptions) -> Result<ConvexRegion> {
    if planes.len() < 3 {
        return Err(Error::TooFewHalfPlanes(planes.len()));
    }
    if let Some(p) = planes.iter().find(|p| !p.theta.is_finite() || !p.offset.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "half-plane with non-finite data: theta = {}, offset = {}",
            p.theta, p.offset
        )));
    }
    let scale = planes.iter().fold(1.0f64, |s, p| s.max(p.offset.abs()));
    let planes = dedupe_parallel(planes, opts.parallel_tol);
    let bounded = max_direction_gap(&planes) < PI - opts.parallel_tol;

    let mut half_side = 10.0 * scale;
    loop {
        let clipped = clip_box(&planes, half_side, 0.0, scale);
        let verts = if clipped.is_empty() {
            let slack = opts.feasibility_tol * scale;
            if clip_box(&planes, half_side, slack, scale).is_empty() {
                return Ok(ConvexRegion::empty());
            }
            // bisect for the smallest relaxation that makes the intersection non-empty
            let (mut lo, mut hi) = (0.0, slack);
            while hi - lo > 1e-16 * scale {
                let mid = 0.5 * (lo + hi);
                if clip_box(&planes, half_side, mid, scale).is_empty() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            // the minimal relaxation leaves only a single vertex; back off a little so a
            // zero-width segment keeps its length
            clip_box(&planes, half_side, (2.0 * hi).max(1e-12 * scale).min(slack), scale)
        } else {
            clipped
        };
        let limit = half_side * (1.0 - 1e-9);
        let touches_box = verts.iter().any(|p| p.x.abs() >= limit || p.y.abs() >= limit);
        if !touches_box {
            if !bounded {
                return Err(Error::Unbounded);
            }
            return Ok(classify_vertices(verts, opts.point_tol * scale, opts.width_tol * scale));
        }
        if !bounded || half_side > 1e15 * scale {
            return Err(Error::Unbounded);
        }
        half_side *= 1e3;
    }
}

/// Sort by direction and merge near-parallel planes, keeping the tighter offset.
fn dedupe_parallel(planes: &[HalfPlane], tol: f64) -> Vec<HalfPlane> {
    let mut sorted = planes.to_vec();
    sorted.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    let mut out: Vec<HalfPlane> = Vec::with_capacity(sorted.len());
    for p in sorted {
        match out.last_mut() {
            Some(last) if p.theta - last.theta <= tol => {
                if p.offset < last.offset {
                    *last = p;
                }
            }
            _ => out.push(p),
        }
    }
    if out.len() > 1 {
        let (first, last) = (out[0], out[out.len() - 1]);
        if first.theta + TAU - last.theta <= tol {
            if last.offset < first.offset {
                out.remove(0);
            } else {
                out.pop();
            }
        }
    }
    out
}

/// Largest cyclic gap between consecutive (sorted) directions.
fn max_direction_gap(sorted: &[HalfPlane]) -> f64 {
    if sorted.is_empty() {
        return TAU;
    }
    let mut gap = sorted[0].theta + TAU - sorted[sorted.len() - 1].theta;
    for w in sorted.windows(2) {
        gap = gap.max(w[1].theta - w[0].theta);
    }
    gap
}

/// Sutherland-Hodgman clip of the square `[-h, h]^2` by every plane relaxed by `relax`.
/// Returns the cleaned vertex list (possibly empty).
fn clip_box(planes: &[HalfPlane], h: f64, relax: f64, scale: f64) -> Vec<Point> {
    let keep_tol = 1e-13 * scale;
    let mut poly = vec![Point::new(-h, -h), Point::new(h, -h), Point::new(h, h), Point::new(-h, h)];
    let mut next = Vec::with_capacity(poly.len() + 1);
    for plane in planes {
        let plane = plane.relaxed(relax);
        if poly.iter().all(|&p| plane.slack(p) >= -keep_tol) {
            continue;
        }
        next.clear();
        let n = poly.len();
        for i in 0..n {
            let a = poly[i];
            let b = poly[(i + 1) % n];
            let sa = plane.slack(a);
            let sb = plane.slack(b);
            let a_in = sa >= -keep_tol;
            let b_in = sb >= -keep_tol;
            if a_in {
                next.push(a);
            }
            if a_in != b_in {
                let t = (sa / (sa - sb)).clamp(0.0, 1.0);
                next.push(a.add(b.sub(a).mul(t)));
            }
        }
        std::mem::swap(&mut poly, &mut next);
        if poly.is_empty() {
            return poly;
        }
    }
    poly
}

/// Remove duplicates and collinear vertices of a convex counterclockwise chain.
fn clean_polygon(v: Vec<Point>, merge_tol: f64) -> Vec<Point> {
    let mut v: Vec<Point> = v;
    let mut merged: Vec<Point> = Vec::with_capacity(v.len());
    for &p in &v {
        if merged.last().is_none_or(|q: &Point| q.distance(p) > merge_tol) {
            merged.push(p);
        }
    }
    while merged.len() > 1 && merged[0].distance(merged[merged.len() - 1]) <= merge_tol {
        merged.pop();
    }
    v = merged;
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let keep: Vec<bool> = (0..n)
            .map(|i| {
                let e1 = v[i].sub(v[(i + n - 1) % n]);
                let e2 = v[(i + 1) % n].sub(v[i]);
                // a reversal is the tip of a zero-width sliver and must survive
                e1.cross(e2) > 1e-12 * e1.norm() * e2.norm() || e1.dot(e2) < 0.0
            })
            .collect();
        if keep.iter().all(|&k| k) {
            return v;
        }
        if keep.iter().all(|&k| !k) {
            // fully degenerate: keep the two farthest points
            return farthest_pair(&v).map(|(a, b)| vec![a, b]).unwrap_or_default();
        }
        v = v.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p).collect();
    }
}

fn farthest_pair(v: &[Point]) -> Option<(Point, Point)> {
    let mut best: Option<(f64, Point, Point)> = None;
    for i in 0..v.len() {
        for j in i..v.len() {
            let d = v[i].distance(v[j]);
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, v[i], v[j]));
            }
        }
    }
    best.map(|(_, a, b)| (a, b))
}

/// Minimal width over edge directions and the edge achieving it (rotating calipers).
fn min_width(v: &[Point]) -> (f64, usize) {
    let n = v.len();
    let mut best = (f64::INFINITY, 0);
    let mut j = 1;
    for i in 0..n {
        let a = v[i];
        let e = v[(i + 1) % n].sub(a);
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        let height = |k: usize| e.cross(v[k % n].sub(a)) / len;
        if j <= i {
            j = i + 1;
        }
        while height(j + 1) >= height(j) && j < i + n {
            j += 1;
        }
        let h = height(j);
        if h < best.0 {
            best = (h, i);
        }
    }
    best
}

/// Classify a convex chain (counterclockwise if it has three or more vertices).
fn classify_vertices(v: Vec<Point>, point_tol: f64, width_tol: f64) -> ConvexRegion {
    let v = clean_polygon(v, 1e-3 * point_tol.min(width_tol));
    if v.is_empty() {
        return ConvexRegion::empty();
    }
    let (xmin, xmax, ymin, ymax) =
        v.iter().fold((f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY), |(a, b, c, d), p| {
            (a.min(p.x), b.max(p.x), c.min(p.y), d.max(p.y))
        });
    if (xmax - xmin).hypot(ymax - ymin) <= point_tol {
        let c = v.iter().fold(Point::new(0.0, 0.0), |acc, &p| acc.add(p)).mul(1.0 / v.len() as f64);
        return ConvexRegion::point(c);
    }
    if v.len() == 2 {
        return ConvexRegion::segment(v[0], v[1]);
    }
    let (width, edge) = min_width(&v);
    if width <= width_tol {
        let a = v[edge];
        let d = v[(edge + 1) % v.len()].sub(a);
        let d = d.mul(1.0 / d.norm());
        let normal = Point::new(-d.y, d.x);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut plo, mut phi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in &v {
            let r = p.sub(a);
            lo = lo.min(r.dot(d));
            hi = hi.max(r.dot(d));
            plo = plo.min(r.dot(normal));
            phi = phi.max(r.dot(normal));
        }
        let mid = 0.5 * (plo + phi);
        let base = a.add(normal.mul(mid));
        return ConvexRegion::segment(base.add(d.mul(lo)), base.add(d.mul(hi)));
    }
    ConvexRegion { kind: RegionKind::Polygon, vertices: v }
}

/// Andrew's monotone chain; counterclockwise, without collinear points.
fn monotone_chain(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if b.sub(a).cross(p.sub(b)) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// One piece of a support function: `vertex` maximizes `<p, (cos t, sin t)>`
/// for `t` from `start` up to the next piece's start.
#[derive(Debug, Clone, Copy)]
struct SupportPiece {
    start: f64,
    vertex: Point,
}

fn support_pieces(region: &ConvexRegion) -> Vec<SupportPiece> {
    let v = &region.vertices;
    if v.len() == 1 {
        return vec![SupportPiece { start: 0.0, vertex: v[0] }];
    }
    let n = v.len();
    let mut pieces: Vec<SupportPiece> = (0..n)
        .map(|i| {
            // outward normal of the edge arriving at v[i]
            let e = v[i].sub(v[(i + n - 1) % n]);
            SupportPiece { start: normalize_angle((-e.x).atan2(e.y)), vertex: v[i] }
        })
        .collect();
    pieces.sort_by(|a, b| a.start.total_cmp(&b.start));
    pieces
}

fn active_vertex(pieces: &[SupportPiece], t: f64) -> Point {
    let idx = pieces.partition_point(|p| p.start <= t);
    if idx == 0 {
        pieces[pieces.len() - 1].vertex
    } else {
        pieces[idx - 1].vertex
    }
}

/// Maximum of `|<w, (cos t, sin t)>|` over `t in [t0, t1]`.
fn max_abs_projection(w: Point, t0: f64, t1: f64) -> f64 {
    let r = w.norm();
    if r == 0.0 {
        return 0.0;
    }
    let phase = w.y.atan2(w.x);
    let mut best = (t0 - phase).cos().abs().max((t1 - phase).cos().abs());
    // interior critical points at phase + j pi
    let j0 = ((t0 - phase) / PI).ceil() as i64;
    let j1 = ((t1 - phase) / PI).floor() as i64;
    if j0 <= j1 {
        best = 1.0;
    }
    r * best
}

/// Symmetric Hausdorff distance between two non-empty convex regions,
/// computed exactly as the sup-norm difference of their support functions.
pub fn hausdorff_distance(a: &ConvexRegion, b: &ConvexRegion) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let pa = support_pieces(a);
    let pb = support_pieces(b);
    let mut breaks: Vec<f64> = pa.iter().chain(&pb).map(|p| p.start).collect();
    breaks.push(0.0);
    breaks.push(TAU);
    breaks.sort_by(|x, y| x.total_cmp(y));
    breaks.dedup();
    let mut d: f64 = 0.0;
    for w in breaks.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 <= t0 {
            continue;
        }
        let mid = 0.5 * (t0 + t1);
        let diff = active_vertex(&pa, mid).sub(active_vertex(&pb, mid));
        d = d.max(max_abs_projection(diff, t0, t1));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn planes(spec: &[(f64, f64)]) -> Vec<HalfPlane> {
        spec.iter().map(|&(t, c)| HalfPlane::new(t, c)).collect()
    }

    fn square() -> ConvexRegion {
        intersect_halfplanes(&planes(&[(0.0, 1.0), (FRAC_PI_2, 1.0), (PI, 1.0), (3.0 * FRAC_PI_2, 1.0)])).unwrap()
    }

    fn has_vertex(r: &ConvexRegion, x: f64, y: f64) -> bool {
        r.vertices().iter().any(|p| (p.x - x).abs() < 1e-9 && (p.y - y).abs() < 1e-9)
    }

    /// Brute-force oracle: all pairwise line intersections satisfying every constraint.
    fn feasible_vertices(ps: &[HalfPlane], tol: f64) -> Vec<Point> {
        let mut out = Vec::new();
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let (a, b) = (ps[i], ps[j]);
                let det = a.normal.cross(b.normal);
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = (a.offset * b.normal.y - b.offset * a.normal.y) / det;
                let y = (a.normal.x * b.offset - b.normal.x * a.offset) / det;
                let p = Point::new(x, y);
                if ps.iter().all(|h| h.slack(p) >= -tol) {
                    out.push(p);
                }
            }
        }
        out
    }

    #[test]
    fn axis_square() {
        let r = square();
        assert_eq!(r.kind(), RegionKind::Polygon);
        assert_eq!(r.vertices().len(), 4);
        for (x, y) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            assert!(has_vertex(&r, x, y));
        }
        assert!((r.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_and_infeasible_triple() {
        let dirs = [0.0, TAU / 3.0, 2.0 * TAU / 3.0];
        // x <= -1 with the other two at offset 1 leaves a triangle
        let ps = planes(&[(dirs[0], -1.0), (dirs[1], 1.0), (dirs[2], 1.0)]);
        let r = intersect_halfplanes(&ps).unwrap();
        assert_eq!(r.kind(), RegionKind::Polygon);
        let oracle = feasible_vertices(&ps, 1e-12);
        assert_eq!(oracle.len(), 3);
        for p in oracle {
            assert!(has_vertex(&r, p.x, p.y));
        }
        assert!(has_vertex(&r, -2.0, 0.0));
        assert!(has_vertex(&r, -1.0, 1.0 / 3f64.sqrt()));

        let ps = planes(&[(dirs[0], -1.0), (dirs[1], -1.0), (dirs[2], -1.0)]);
        assert!(feasible_vertices(&ps, 1e-12).is_empty());
        assert!(intersect_halfplanes(&ps).unwrap().is_empty());
    }

    #[test]
    fn forced_point() {
        let c = 0.7;
        let r = intersect_halfplanes(&planes(&[(0.0, c), (PI, -c), (FRAC_PI_2, 0.0), (3.0 * FRAC_PI_2, 0.0)])).unwrap();
        assert_eq!(r.kind(), RegionKind::Point);
        assert!(r.vertices()[0].distance(Point::new(c, 0.0)) < 1e-12);
    }

    #[test]
    fn zero_width_chain_keeps_its_ends() {
        // a clipped sliver walks out along the segment and back with rounding noise
        let chain = vec![
            Point::new(0.0, 0.0),
            Point::new(0.3, 1e-17),
            Point::new(0.31, 2e-17),
            Point::new(1.0, 0.0),
            Point::new(0.6, 1e-17),
        ];
        let mut cleaned = clean_polygon(chain.clone(), 1e-12);
        cleaned.sort_by(|a, b| a.x.total_cmp(&b.x));
        assert_eq!(cleaned, vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]);
        let r = classify_vertices(chain, 1e-9, 1e-9);
        assert_eq!(r.kind(), RegionKind::Segment);
        assert!((r.diameter() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn forced_segment() {
        // 0 <= x <= 2, y = 0
        let r =
            intersect_halfplanes(&planes(&[(0.0, 2.0), (PI, 0.0), (FRAC_PI_2, 0.0), (3.0 * FRAC_PI_2, 0.0)])).unwrap();
        assert_eq!(r.kind(), RegionKind::Segment);
        assert!((r.diameter() - 2.0).abs() < 1e-12);
        assert!(has_vertex(&r, 0.0, 0.0) && has_vertex(&r, 2.0, 0.0));
    }

    #[test]
    fn unbounded_and_too_few() {
        assert!(matches!(
            intersect_halfplanes(&planes(&[(0.0, 1.0), (FRAC_PI_2, 1.0), (PI, 1.0)])),
            Err(Error::Unbounded)
        ));
        assert!(matches!(intersect_halfplanes(&planes(&[(0.0, 1.0), (PI, 1.0)])), Err(Error::TooFewHalfPlanes(2))));
        // parallel slabs that cannot meet are empty even though the family is unbounded
        let r = intersect_halfplanes(&planes(&[(0.0, -1.0), (PI, -1.0), (FRAC_PI_2, 1.0)])).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn tight_slivers_need_relaxation() {
        // three lines through the same point: the intersection is exactly that point
        let p = Point::new(0.3, -0.2);
        let ps: Vec<HalfPlane> = [0.1, 2.2, 4.1].iter().map(|&t| HalfPlane::new(t, directional_value(p, t))).collect();
        let r = intersect_halfplanes(&ps).unwrap();
        assert_eq!(r.kind(), RegionKind::Point);
        assert!(r.vertices()[0].distance(p) < 1e-9);
    }

    #[test]
    fn near_parallel_planes_keep_tighter() {
        let ps = planes(&[(0.0, 1.0), (1e-14, 0.5), (FRAC_PI_2, 1.0), (PI, 1.0), (3.0 * FRAC_PI_2, 1.0)]);
        let r = intersect_halfplanes(&ps).unwrap();
        assert!((support_value(&r, 0.0).unwrap() - 0.5).abs() < 1e-12);
        let ps = planes(&[(TAU - 1e-14, 0.5), (0.0, 1.0), (FRAC_PI_2, 1.0), (PI, 1.0), (3.0 * FRAC_PI_2, 1.0)]);
        let r = intersect_halfplanes(&ps).unwrap();
        assert!((support_value(&r, 0.0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn far_vertices_trigger_box_growth() {
        // two nearly opposite planes meet far away
        let eps = 1e-6;
        let ps = planes(&[(FRAC_PI_2 - eps, 1.0), (3.0 * FRAC_PI_2 + eps, 1.0), (PI, 1.0)]);
        let r = intersect_halfplanes(&ps).unwrap();
        assert_eq!(r.kind(), RegionKind::Polygon);
        assert!(r.diameter() > 1e5);
    }

    #[test]
    fn contains_examples() {
        let sq = square();
        assert!(contains(&sq, Complex::new(0.0, 0.0), 0.0));
        assert!(contains(&sq, Complex::new(1.0, 1.0), 0.0));
        assert!(!contains(&sq, Complex::new(1.1, 0.0), 0.05));
        assert!(!contains(&ConvexRegion::empty(), Complex::new(0.0, 0.0), 1.0));
        let seg = ConvexRegion::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        assert!(contains(&seg, Complex::new(0.5, 1e-9), 1e-6));
        assert!(!contains(&seg, Complex::new(0.5, 1e-3), 1e-6));
    }

    #[test]
    fn hausdorff_examples() {
        let sq = square();
        assert_eq!(hausdorff_distance(&sq, &sq).unwrap(), 0.0);
        let shifted = sq.rotate_translate(Complex::new(1.0, 0.0), Complex::new(1.0, 0.0));
        assert!((hausdorff_distance(&sq, &shifted).unwrap() - 1.0).abs() < 1e-12);
        let seg = ConvexRegion::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        let pt = ConvexRegion::point(Point::new(0.0, 0.0));
        assert!((hausdorff_distance(&seg, &pt).unwrap() - 1.0).abs() < 1e-15);
        assert!((hausdorff_distance(&pt, &seg).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(hausdorff_distance(&pt, &ConvexRegion::empty()), Err(Error::EmptyRegion)));
        // square vs its inscribed point at the center: distance to a corner
        let center = ConvexRegion::point(Point::new(0.0, 0.0));
        assert!((hausdorff_distance(&sq, &center).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn support_examples() {
        let sq = square();
        assert!((support_value(&sq, 0.0).unwrap() - 1.0).abs() < 1e-15);
        let p = ConvexRegion::point(Point::new(0.4, -1.5));
        let t = 0.77;
        assert!((support_value(&p, t).unwrap() - (0.4 * t.cos() + 1.5 * t.sin())).abs() < 1e-15);
        let r = 0.8;
        let disk: Vec<Point> = (0..720).map(|i| Point::from(Complex::from_polar(r, i as f64 * TAU / 720.0))).collect();
        let disk = ConvexRegion::hull(&disk, 1e-12);
        for t in [0.0, 0.3, 2.0, 5.5] {
            let s = support_value(&disk, t).unwrap();
            assert!(s <= r + 1e-15 && s >= r * (PI / 720.0).cos() - 1e-15);
        }
        assert!(support_value(&ConvexRegion::empty(), 0.0).is_err());
    }

    #[test]
    fn hull_kinds() {
        let pts = [Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)];
        let h = ConvexRegion::hull(&pts, 1e-12);
        assert_eq!(h.kind(), RegionKind::Segment);
        assert!((h.diameter() - 8f64.sqrt()).abs() < 1e-12);
        assert_eq!(ConvexRegion::hull(&[Point::new(1.0, 2.0); 3], 1e-12).kind(), RegionKind::Point);
        let tri = ConvexRegion::hull(
            &[Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(0.2, 0.2)],
            1e-12,
        );
        assert_eq!(tri.kind(), RegionKind::Polygon);
        assert_eq!(tri.vertices().len(), 3);
        assert!(tri.area() > 0.0);
    }

    #[test]
    fn json_shape() {
        let r = ConvexRegion::segment(Point::new(0.0, 0.0), Point::new(1.0, 0.5));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"kind":"segment","vertices":[[0.0,0.0],[1.0,0.5]]}"#);
        let back: ConvexRegion = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&ConvexRegion::empty()).unwrap(), r#"{"kind":"empty","vertices":[]}"#);
    }

    fn random_planes() -> impl Strategy<Value = Vec<HalfPlane>> {
        prop::collection::vec((0.0..TAU, -2.0f64..3.0), 3..40).prop_map(|mut raw| {
            // guarantee boundedness with four axis planes
            raw.extend([(0.0, 3.0), (FRAC_PI_2, 3.0), (PI, 3.0), (3.0 * FRAC_PI_2, 3.0)]);
            raw.into_iter().map(|(t, c)| HalfPlane::new(t, c)).collect()
        })
    }

    fn polygon_strategy() -> impl Strategy<Value = ConvexRegion> {
        prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 3..30).prop_filter_map("non-degenerate", |raw| {
            let pts: Vec<Point> = raw.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            let h = ConvexRegion::hull(&pts, 1e-9);
            (h.kind() == RegionKind::Polygon && min_width(h.vertices()).0 > 1e-3).then_some(h)
        })
    }

    proptest! {
        #[test]
        fn output_satisfies_constraints(ps in random_planes()) {
            let r = intersect_halfplanes(&ps).unwrap();
            for v in r.vertices() {
                for p in &ps {
                    prop_assert!(p.slack(*v) >= -1e-9, "slack {}", p.slack(*v));
                }
            }
            for p in &ps {
                if !r.is_empty() {
                    prop_assert!(support_value(&r, p.theta()).unwrap() <= p.offset() + 1e-9);
                }
            }
            // emptiness agrees with brute force
            let oracle = feasible_vertices(&ps, 1e-9);
            prop_assert_eq!(r.is_empty(), oracle.is_empty());
        }

        #[test]
        fn adding_a_plane_never_enlarges(ps in random_planes(), t in 0.0..TAU, c in -1.0f64..2.0) {
            let before = intersect_halfplanes(&ps).unwrap();
            let mut more = ps.clone();
            more.push(HalfPlane::new(t, c));
            let after = intersect_halfplanes(&more).unwrap();
            for v in after.vertices() {
                prop_assert!(before.distance_to(*v) <= 1e-9);
            }
        }

        #[test]
        fn polygon_round_trip(poly in polygon_strategy()) {
            let v = poly.vertices();
            let n = v.len();
            let ps: Vec<HalfPlane> = (0..n)
                .map(|i| {
                    let e = v[(i + 1) % n].sub(v[i]);
                    // outward normal (e.y, -e.x) = (cos t, -sin t)
                    let t = e.x.atan2(e.y);
                    let hp = HalfPlane::new(t, 0.0);
                    HalfPlane::new(t, hp.normal.dot(v[i]))
                })
                .collect();
            let r = intersect_halfplanes(&ps).unwrap();
            prop_assert!(hausdorff_distance(&r, &poly).unwrap() <= 1e-9);
        }

        #[test]
        fn hausdorff_matches_vertex_distances(a in polygon_strategy(), b in polygon_strategy()) {
            // for polygons the Hausdorff distance is attained at a vertex
            let directed = |x: &ConvexRegion, y: &ConvexRegion| {
                x.vertices().iter().map(|p| y.distance_to(*p)).fold(0.0, f64::max)
            };
            let expected = directed(&a, &b).max(directed(&b, &a));
            let d = hausdorff_distance(&a, &b).unwrap();
            prop_assert!((d - expected).abs() <= 1e-9 * (1.0 + expected), "{} vs {}", d, expected);
        }
    }
}
