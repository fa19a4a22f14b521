//! Geometric kernel: overlap predicates, mass center, imbalance, enveloping
//! radii and circle tangency candidates.
//!
//! All comparisons take an absolute tolerance `eps`. Contact (tangent circles,
//! rectangles sharing an edge) is never an overlap.

use core::ops::{Add, Mul, Sub};

use libm::sqrt;

use crate::error::{Error, Result};

/// Relative part of the geometric tolerance, see [`tolerance`].
pub const RELATIVE_EPS: f64 = 1e-9;

/// Absolute tolerance for an instance whose largest item dimension is
/// `length_scale`.
pub fn tolerance(length_scale: f64) -> f64 {
    RELATIVE_EPS * length_scale.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        sqrt(self.x * self.x + self.y * self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

fn check_positive(value: f64, index: usize, reason: &'static str) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidItem { index, reason })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleItem {
    pub radius: f64,
    pub mass: f64,
}

impl CircleItem {
    pub fn new(radius: f64, mass: f64) -> Result<Self> {
        let item = CircleItem { radius, mass };
        item.validate(0)?;
        Ok(item)
    }

    /// `index` only labels the error.
    pub fn validate(&self, index: usize) -> Result<()> {
        check_positive(self.radius, index, "radius must be positive")?;
        check_positive(self.mass, index, "mass must be positive")
    }
}

/// Rotation of a rectangle. Only the two axis-aligned orientations exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// `edge_a` runs horizontally.
    Deg0,
    /// `edge_a` runs vertically.
    Deg90,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Deg0, Orientation::Deg90];

    pub fn degrees(self) -> u32 {
        match self {
            Orientation::Deg0 => 0,
            Orientation::Deg90 => 90,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectItem {
    pub edge_a: f64,
    pub edge_b: f64,
    pub mass: f64,
}

impl RectItem {
    pub fn new(edge_a: f64, edge_b: f64, mass: f64) -> Result<Self> {
        let item = RectItem { edge_a, edge_b, mass };
        item.validate(0)?;
        Ok(item)
    }

    pub fn validate(&self, index: usize) -> Result<()> {
        check_positive(self.edge_a, index, "edge a must be positive")?;
        check_positive(self.edge_b, index, "edge b must be positive")?;
        check_positive(self.mass, index, "mass must be positive")
    }

    /// Radius of the circle circumscribing the rectangle, half its diagonal.
    pub fn envelope_radius(&self) -> f64 {
        0.5 * sqrt(self.edge_a * self.edge_a + self.edge_b * self.edge_b)
    }

    /// (width, height) once rotated to `orientation`.
    pub fn extent(&self, orientation: Orientation) -> (f64, f64) {
        match orientation {
            Orientation::Deg0 => (self.edge_a, self.edge_b),
            Orientation::Deg90 => (self.edge_b, self.edge_a),
        }
    }

    pub fn bounds(&self, placement: &RectPlacement) -> Bounds {
        let (w, h) = self.extent(placement.orientation);
        Bounds::centered(placement.center, w, h)
    }
}

/// A circle is placed by its center.
pub type CirclePlacement = Point;

/// A rectangle is placed by its center and orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectPlacement {
    pub center: Point,
    pub orientation: Orientation,
}

impl RectPlacement {
    pub const fn new(center: Point, orientation: Orientation) -> Self {
        RectPlacement { center, orientation }
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Bounds {
    pub fn centered(center: Point, width: f64, height: f64) -> Self {
        let (hw, hh) = (0.5 * width, 0.5 * height);
        Bounds {
            xmin: center.x - hw,
            ymin: center.y - hh,
            xmax: center.x + hw,
            ymax: center.y + hh,
        }
    }

    /// Counter-clockwise from the bottom-left corner.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin, self.ymin),
            Point::new(self.xmax, self.ymin),
            Point::new(self.xmax, self.ymax),
            Point::new(self.xmin, self.ymax),
        ]
    }

    /// Distance from `p` to the corner farthest from it.
    pub fn farthest_corner_distance(&self, p: Point) -> f64 {
        let dx = (p.x - self.xmin).abs().max((p.x - self.xmax).abs());
        let dy = (p.y - self.ymin).abs().max((p.y - self.ymax).abs());
        sqrt(dx * dx + dy * dy)
    }

    /// Grown by `margin` on every side.
    pub fn expanded(&self, margin: f64) -> Bounds {
        Bounds {
            xmin: self.xmin - margin,
            ymin: self.ymin - margin,
            xmax: self.xmax + margin,
            ymax: self.ymax + margin,
        }
    }

    /// Euclidean distance from `p` to the box; zero inside.
    pub fn distance_to(&self, p: Point) -> f64 {
        let dx = (self.xmin - p.x).max(p.x - self.xmax).max(0.0);
        let dy = (self.ymin - p.y).max(p.y - self.ymax).max(0.0);
        sqrt(dx * dx + dy * dy)
    }

    pub fn union(&self, other: &Bounds) -> Bounds {
        Bounds {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    /// True when the interiors intersect by more than `eps` on both axes.
    pub fn overlaps(&self, other: &Bounds, eps: f64) -> bool {
        !(self.xmin >= other.xmax - eps
            || self.xmax <= other.xmin + eps
            || self.ymin >= other.ymax - eps
            || self.ymax <= other.ymin + eps)
    }
}

/// Two circles overlap when their centers are closer than the sum of the
/// radii by more than `eps`. Tangent circles do not overlap.
pub fn circles_overlap(p1: Point, r1: f64, p2: Point, r2: f64, eps: f64) -> bool {
    p1.distance(p2) < r1 + r2 - eps
}

/// Overlap test for rectangles at 0 or 90 degrees. Shared edges do not count.
pub fn rects_overlap(item1: &RectItem, pl1: &RectPlacement, item2: &RectItem, pl2: &RectPlacement, eps: f64) -> bool {
    item1.bounds(pl1).overlaps(&item2.bounds(pl2), eps)
}

/// Running first-moment sums, giving the mass center in O(1) per update.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MassSums {
    pub mass: f64,
    pub moment_x: f64,
    pub moment_y: f64,
}

impl MassSums {
    pub fn add(&mut self, mass: f64, p: Point) {
        self.mass += mass;
        self.moment_x += mass * p.x;
        self.moment_y += mass * p.y;
    }

    /// Mass center; `None` before anything was added.
    pub fn center(&self) -> Option<Point> {
        (self.mass > 0.0).then(|| Point::new(self.moment_x / self.mass, self.moment_y / self.mass))
    }

    /// Mass center if one more item of `mass` were added at `p`.
    ///
    /// Evaluates exactly the same expression as `add` followed by `center`,
    /// so trial and committed centers agree bit for bit.
    pub fn center_with(&self, mass: f64, p: Point) -> Point {
        let total = self.mass + mass;
        Point::new(
            (self.moment_x + mass * p.x) / total,
            (self.moment_y + mass * p.y) / total,
        )
    }

    /// Magnitude of the first mass moment about the origin.
    pub fn imbalance(&self) -> f64 {
        sqrt(self.moment_x * self.moment_x + self.moment_y * self.moment_y)
    }
}

fn sums_of(items: &[(f64, Point)]) -> Result<MassSums> {
    if items.is_empty() {
        return Err(Error::EmptyLayout);
    }
    let mut sums = MassSums::default();
    for &(m, p) in items {
        sums.add(m, p);
    }
    Ok(sums)
}

/// Mass-weighted mean of the positions.
pub fn mass_center(items: &[(f64, Point)]) -> Result<Point> {
    sums_of(items)?.center().ok_or(Error::EmptyLayout)
}

/// Static imbalance about the origin: `|Σ m_i p_i|`.
pub fn imbalance(items: &[(f64, Point)]) -> Result<f64> {
    Ok(sums_of(items)?.imbalance())
}

/// Radius of the smallest circle about `center` containing every circle.
pub fn envelope_radius_circles(layout: &[(CircleItem, Point)], center: Point) -> Result<f64> {
    if layout.is_empty() {
        return Err(Error::EmptyLayout);
    }
    Ok(layout
        .iter()
        .map(|(item, p)| item.radius + p.distance(center))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Largest distance from `center` to any rectangle vertex.
pub fn envelope_radius_rects(layout: &[(RectItem, RectPlacement)], center: Point) -> Result<f64> {
    if layout.is_empty() {
        return Err(Error::EmptyLayout);
    }
    Ok(layout
        .iter()
        .flat_map(|(item, pl)| item.bounds(pl).corners())
        .map(|v| v.distance(center))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Up to two tangency positions, sorted by `(y, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangents {
    points: [Point; 2],
    len: usize,
}

impl Tangents {
    const NONE: Tangents = Tangents {
        points: [Point::ORIGIN; 2],
        len: 0,
    };

    pub fn as_slice(&self) -> &[Point] {
        &self.points[..self.len]
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// Centers at which a circle of radius `r_i` touches both the circle
/// `(p, r_p)` and the circle `(q, r_q)` from outside.
///
/// These are the intersections of the circles of radius `r_p + r_i` about `p`
/// and `r_q + r_i` about `q`. Circles more than `eps` apart (or nested more
/// than `eps` deep) give nothing. When the squared half-chord is below
/// `eps * max(r_p + r_i, r_q + r_i)` the circles are taken to touch and the
/// single contact point is returned.
pub fn tangent_positions(p: Point, r_p: f64, q: Point, r_q: f64, r_i: f64, eps: f64) -> Result<Tangents> {
    let d = p.distance(q);
    if d <= eps {
        return Err(Error::DegeneratePair);
    }
    let (reach_p, reach_q) = (r_p + r_i, r_q + r_i);
    if d > reach_p + reach_q + eps || d < (reach_p - reach_q).abs() - eps {
        return Ok(Tangents::NONE);
    }
    // Signed distance from p, along p->q, to the chord through both points.
    let along = (d * d + reach_p * reach_p - reach_q * reach_q) / (2.0 * d);
    let half_chord_sq = reach_p * reach_p - along * along;
    let clamp = eps * reach_p.max(reach_q);
    let u = (q - p) * (1.0 / d);
    let foot = p + u * along;
    if half_chord_sq <= clamp {
        return Ok(Tangents {
            points: [foot, Point::ORIGIN],
            len: 1,
        });
    }
    let h = sqrt(half_chord_sq);
    let normal = Point::new(-u.y, u.x);
    let (a, b) = (foot + normal * h, foot - normal * h);
    let points = if (a.y, a.x) <= (b.y, b.x) { [a, b] } else { [b, a] };
    Ok(Tangents { points, len: 2 })
}
