//! SVG 1.1 figures. Geometry is written in mathematical coordinates inside a
//! group flipped with `scale(1,-1)`, so arcs keep their counterclockwise sense.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rankrange::closed_form::{AngleSet, BoundaryPiece};
use rankrange::geometry::{ConvexRegion, Point, RegionKind};

use crate::json::round12;

const GRID_STEP: f64 = 0.2;
const PIXEL_WIDTH: f64 = 800.0;

/// Angle sets of the closed form, drawn as arcs of a circle around `center`.
/// A set angle `theta` sits at `center + radius e^{i (psi - theta)}`, the
/// outward normal of the support line it governs.
#[derive(Debug, Clone)]
pub struct SetOverlay {
    pub center: Point,
    pub psi: f64,
    pub d_k: AngleSet,
    pub c_km: AngleSet,
}

#[derive(Debug, Clone, Default)]
pub struct Figure {
    pub title: String,
    /// Exact boundary; empty when the closed form was not used or the range is empty.
    pub boundary: Vec<BoundaryPiece>,
    pub sampled: Option<ConvexRegion>,
    /// `(theta, lambda)`: the line `x cos theta - y sin theta = lambda`.
    pub support_lines: Vec<(f64, f64)>,
    pub sets: Option<SetOverlay>,
    pub empty: bool,
    /// Points that must be in view even when there is no region to show.
    pub anchors: Vec<Point>,
}

fn num(x: f64) -> String {
    format!("{}", round12(x))
}

fn pt(p: Point) -> String {
    format!("{} {}", num(p.x), num(p.y))
}

#[derive(Debug, Clone, Copy)]
struct Bounds {
    min: Point,
    max: Point,
}

impl Bounds {
    fn new() -> Self {
        Bounds { min: Point::new(f64::INFINITY, f64::INFINITY), max: Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY) }
    }

    fn add(&mut self, p: Point) {
        self.min = Point::new(self.min.x.min(p.x), self.min.y.min(p.y));
        self.max = Point::new(self.max.x.max(p.x), self.max.y.max(p.y));
    }

    fn is_set(&self) -> bool {
        self.min.x <= self.max.x
    }

    /// Widen each side to at least `min_extent`, around the current center.
    fn ensure_extent(&mut self, min_extent: f64) {
        for (lo, hi) in [(&mut self.min.x, &mut self.max.x), (&mut self.min.y, &mut self.max.y)] {
            let extent = *hi - *lo;
            if extent < min_extent {
                let mid = 0.5 * (*lo + *hi);
                *lo = mid - 0.5 * min_extent;
                *hi = mid + 0.5 * min_extent;
            }
        }
    }

    fn with_margin(&self, fraction: f64) -> Self {
        let dx = fraction * (self.max.x - self.min.x);
        let dy = fraction * (self.max.y - self.min.y);
        Bounds { min: Point::new(self.min.x - dx, self.min.y - dy), max: Point::new(self.max.x + dx, self.max.y + dy) }
    }

    fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

/// Element id, stroke color and set: D_k in blue, C_{k,m} in red.
fn set_arcs(sets: &SetOverlay) -> [(&'static str, &'static str, AngleSet); 2] {
    [("set-d-k", "#1f4fd1", sets.d_k), ("set-c-km", "#d11f1f", sets.c_km)]
}

/// Arc path for a closed-form angle set; angles run clockwise in the figure.
fn angle_set_path(sets: &SetOverlay, set: AngleSet, radius: f64) -> Option<String> {
    let at = |theta: f64| {
        let w = sets.psi - theta;
        Point::new(sets.center.x + radius * w.cos(), sets.center.y + radius * w.sin())
    };
    let r = num(radius);
    match set {
        AngleSet::Empty => None,
        AngleSet::Full => {
            Some(format!("M {} A {r} {r} 0 1 0 {} A {r} {r} 0 1 0 {}", pt(at(0.0)), pt(at(PI)), pt(at(0.0))))
        }
        AngleSet::Arc { from, to, .. } => {
            let span = (to - from).rem_euclid(TAU);
            if span == 0.0 {
                let p = at(from);
                return Some(format!("M {} L {}", pt(p), pt(p)));
            }
            let large = u8::from(span > PI);
            Some(format!("M {} A {r} {r} 0 {large} 0 {}", pt(at(from)), pt(at(to))))
        }
    }
}

fn boundary_path(pieces: &[BoundaryPiece]) -> String {
    let mut d = String::new();
    let closed = pieces.len() > 1 || matches!(pieces.first(), Some(BoundaryPiece::Arc { .. }));
    for (i, piece) in pieces.iter().enumerate() {
        if i == 0 {
            let _ = write!(d, "M {}", pt(piece.start_point()));
        }
        match *piece {
            BoundaryPiece::Line { to, .. } => {
                let _ = write!(d, " L {}", pt(to));
            }
            BoundaryPiece::Arc { radius, sweep, .. } => {
                let r = num(radius);
                // split long arcs so no single command is ambiguous
                let parts = if sweep > PI - 1e-9 { 2 } else { 1 };
                for j in 1..=parts {
                    let end = piece.point_at(j as f64 / parts as f64);
                    let large = u8::from(sweep / parts as f64 > PI);
                    let _ = write!(d, " A {r} {r} 0 {large} 1 {}", pt(end));
                }
            }
        }
    }
    if closed {
        d.push_str(" Z");
    }
    d
}

/// The part of the line `x cos theta - y sin theta = lambda` inside the box.
fn clip_line(theta: f64, lambda: f64, b: &Bounds) -> Option<(Point, Point)> {
    let base = Point::new(lambda * theta.cos(), -lambda * theta.sin());
    let dir = Point::new(theta.sin(), theta.cos());
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, d, lo, hi) in [(base.x, dir.x, b.min.x, b.max.x), (base.y, dir.y, b.min.y, b.max.y)] {
        if d.abs() < 1e-15 {
            if p < lo || p > hi {
                return None;
            }
            continue;
        }
        let (a, c) = ((lo - p) / d, (hi - p) / d);
        t0 = t0.max(a.min(c));
        t1 = t1.min(a.max(c));
    }
    if t0 >= t1 {
        return None;
    }
    let at = |t: f64| Point::new(base.x + t * dir.x, base.y + t * dir.y);
    Some((at(t0), at(t1)))
}

fn sample_pieces(pieces: &[BoundaryPiece]) -> Vec<Point> {
    pieces.iter().flat_map(|p| (0..=64).map(move |j| p.point_at(j as f64 / 64.0))).collect()
}

pub fn render(fig: &Figure) -> String {
    let mut content = Bounds::new();
    for p in sample_pieces(&fig.boundary) {
        content.add(p);
    }
    if let Some(region) = &fig.sampled {
        region.vertices().iter().for_each(|&p| content.add(p));
    }
    let set_radius = fig.sets.as_ref().map(|sets| {
        let reach = sample_pieces(&fig.boundary)
            .iter()
            .chain(fig.sampled.iter().flat_map(|r| r.vertices().iter()))
            .map(|p| p.distance(sets.center))
            .fold(0.0f64, f64::max);
        if reach > 0.0 {
            1.15 * reach
        } else {
            1.0
        }
    });
    if let (Some(sets), Some(radius)) = (&fig.sets, set_radius) {
        for dx in [-1.0, 1.0] {
            content.add(Point::new(sets.center.x + dx * radius, sets.center.y + dx * radius));
        }
    }
    if !content.is_set() {
        fig.anchors.iter().for_each(|&p| content.add(p));
    }
    if !content.is_set() {
        content.add(Point::new(0.0, 0.0));
    }
    content.ensure_extent(1.0);
    let view = content.with_margin(0.1);
    let unit = view.width().max(view.height()) / PIXEL_WIDTH;
    let pixel_height = (PIXEL_WIDTH * view.height() / view.width()).round();

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num(PIXEL_WIDTH),
        num(pixel_height),
        num(view.min.x),
        num(-view.max.y),
        num(view.width()),
        num(view.height())
    );
    let _ = writeln!(s, "<title>{}</title>", escape(&fig.title));
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        num(view.min.x),
        num(-view.max.y),
        num(view.width()),
        num(view.height())
    );
    s.push_str("<g transform=\"scale(1,-1)\">\n");

    // grid on multiples of the step, axes slightly darker
    let _ = writeln!(s, "<g id=\"grid\" stroke=\"#dddddd\" stroke-width=\"{}\">", num(unit));
    let (i0, i1) = ((view.min.x / GRID_STEP).ceil() as i64, (view.max.x / GRID_STEP).floor() as i64);
    for i in i0..=i1 {
        let x = i as f64 * GRID_STEP;
        let extra = if i == 0 { " stroke=\"#999999\"" } else { "" };
        let _ = writeln!(
            s,
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"{extra}/>",
            num(x),
            num(view.min.y),
            num(view.max.y)
        );
    }
    let (j0, j1) = ((view.min.y / GRID_STEP).ceil() as i64, (view.max.y / GRID_STEP).floor() as i64);
    for j in j0..=j1 {
        let y = j as f64 * GRID_STEP;
        let extra = if j == 0 { " stroke=\"#999999\"" } else { "" };
        let _ = writeln!(
            s,
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\"{extra}/>",
            num(y),
            num(view.min.x),
            num(view.max.x)
        );
    }
    s.push_str("</g>\n");

    if !fig.support_lines.is_empty() {
        let _ = writeln!(
            s,
            "<g id=\"support-lines\" stroke=\"#6a8caf\" stroke-opacity=\"0.5\" stroke-width=\"{}\">",
            num(0.5 * unit)
        );
        for &(theta, lambda) in &fig.support_lines {
            if let Some((a, b)) = clip_line(theta, lambda, &view) {
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    num(a.x),
                    num(a.y),
                    num(b.x),
                    num(b.y)
                );
            }
        }
        s.push_str("</g>\n");
    }

    if let Some(region) = &fig.sampled {
        if !region.is_empty() {
            let v = region.vertices();
            let mut d = format!("M {}", pt(v[0]));
            v[1..].iter().for_each(|&p| {
                let _ = write!(d, " L {}", pt(p));
            });
            if v.len() == 1 {
                let _ = write!(d, " L {}", pt(v[0]));
            }
            if region.kind() == RegionKind::Polygon {
                d.push_str(" Z");
            }
            let _ = writeln!(
                s,
                "<path id=\"sampled-outer-region\" d=\"{d}\" fill=\"#f2a900\" fill-opacity=\"0.15\" stroke=\"#b07a00\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>",
                num(1.5 * unit),
                num(6.0 * unit),
                num(4.0 * unit)
            );
        }
    }

    if !fig.boundary.is_empty() {
        let closed = fig.boundary.len() > 1 || matches!(fig.boundary[0], BoundaryPiece::Arc { .. });
        let fill = if closed { "fill=\"#3a7d44\" fill-opacity=\"0.3\"" } else { "fill=\"none\"" };
        let _ = writeln!(
            s,
            "<path id=\"closed-form-boundary\" d=\"{}\" {fill} stroke=\"#1b4d24\" stroke-width=\"{}\"/>",
            boundary_path(&fig.boundary),
            num(2.0 * unit)
        );
        if !closed && fig.boundary[0].length() == 0.0 {
            let p = fig.boundary[0].start_point();
            let _ = writeln!(
                s,
                "<circle class=\"closed-form-point\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#1b4d24\"/>",
                num(p.x),
                num(p.y),
                num(4.0 * unit)
            );
        }
    }

    if let (Some(sets), Some(radius)) = (&fig.sets, set_radius) {
        for (id, color, set) in set_arcs(sets) {
            if let Some(d) = angle_set_path(sets, set, radius) {
                let _ = writeln!(
                    s,
                    "<path id=\"{id}\" d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>",
                    num(3.0 * unit)
                );
            }
        }
    }
    s.push_str("</g>\n");

    if fig.empty {
        let _ = writeln!(
            s,
            "<text id=\"empty-annotation\" x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\">empty</text>",
            num(0.5 * (view.min.x + view.max.x)),
            num(-0.5 * (view.min.y + view.max.y)),
            num(24.0 * unit)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
