//! Order-based placement of weighted rectangles.
//!
//! The first rectangle is centered at the origin with orientation 0. Each
//! later rectangle is put against one side of an already placed rectangle
//! (the anchor) so that the two touching edges share an end vertex. With four
//! sides, two orientations and two shared vertices there are 16 candidates
//! per anchor; the overlap-free candidate giving the smallest enveloping
//! circle about the updated mass center wins.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{tolerance, Bounds, MassSums, Orientation, Point, RectItem, RectPlacement};
use crate::layout::{Layout, Placed};
pub use crate::opt_circle::OptStats;

/// Side of the anchor rectangle a candidate touches, in tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Top,
    Left,
    Bottom,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Right, Side::Top, Side::Left, Side::Bottom];
}

/// Which end vertex the touching edges share. The anchor's side is walked
/// from its lexicographically smaller endpoint: with `Start` the new edge
/// begins at that endpoint, with `End` it finishes at the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alignment {
    Start,
    End,
}

impl Alignment {
    pub const ALL: [Alignment; 2] = [Alignment::Start, Alignment::End];
}

/// Number of candidate placements around a single anchor.
pub const CANDIDATES_PER_ANCHOR: usize = 16;

/// `(side, orientation, alignment)` of each slot returned by
/// [`candidates_around`].
pub fn candidate_slot(index: usize) -> (Side, Orientation, Alignment) {
    (
        Side::ALL[index / 4],
        Orientation::BOTH[(index / 2) % 2],
        Alignment::ALL[index % 2],
    )
}

/// The 16 contact placements of `item` around a rectangle with bounds
/// `anchor`, ordered by side, then orientation, then alignment.
pub fn candidates_around(anchor: &Bounds, item: &RectItem) -> [RectPlacement; CANDIDATES_PER_ANCHOR] {
    let mut out = [RectPlacement::new(Point::ORIGIN, Orientation::Deg0); CANDIDATES_PER_ANCHOR];
    for (slot, out) in out.iter_mut().enumerate() {
        let (side, orientation, alignment) = candidate_slot(slot);
        let (w, h) = item.extent(orientation);
        let along_y = |al| match al {
            Alignment::Start => anchor.ymin + 0.5 * h,
            Alignment::End => anchor.ymax - 0.5 * h,
        };
        let along_x = |al| match al {
            Alignment::Start => anchor.xmin + 0.5 * w,
            Alignment::End => anchor.xmax - 0.5 * w,
        };
        let center = match side {
            Side::Right => Point::new(anchor.xmax + 0.5 * w, along_y(alignment)),
            Side::Left => Point::new(anchor.xmin - 0.5 * w, along_y(alignment)),
            Side::Top => Point::new(along_x(alignment), anchor.ymax + 0.5 * h),
            Side::Bottom => Point::new(along_x(alignment), anchor.ymin - 0.5 * h),
        };
        *out = RectPlacement::new(center, orientation);
    }
    out
}

#[derive(Debug, Clone)]
pub struct PartialRectLayout<'a> {
    items: &'a [RectItem],
    placed: Vec<Placed<RectPlacement>>,
    bounds: Vec<Bounds>,
    used: Vec<bool>,
    sums: MassSums,
    eps: f64,
    stats: OptStats,
    max_edge: f64,
    // For each placed rectangle, the placed rectangles whose boxes come
    // within `max_edge` of it: the only ones a rectangle touching it can hit.
    neighbors: Vec<Vec<usize>>,
    scan: Vec<Bounds>,
    near: Vec<(f64, RectPlacement)>,
}

impl<'a> PartialRectLayout<'a> {
    pub fn new(items: &'a [RectItem]) -> Result<Self> {
        for (i, item) in items.iter().enumerate() {
            item.validate(i)?;
        }
        let scale = items.iter().map(|r| r.edge_a.max(r.edge_b)).fold(0.0, f64::max);
        Ok(PartialRectLayout {
            items,
            placed: Vec::with_capacity(items.len()),
            bounds: Vec::with_capacity(items.len()),
            used: vec![false; items.len()],
            sums: MassSums::default(),
            eps: tolerance(scale),
            stats: OptStats::default(),
            max_edge: scale,
            neighbors: Vec::with_capacity(items.len()),
            scan: Vec::with_capacity(items.len()),
            near: Vec::new(),
        })
    }

    pub fn items(&self) -> &'a [RectItem] {
        self.items
    }

    pub fn placed(&self) -> &[Placed<RectPlacement>] {
        &self.placed
    }

    /// Bounds of the placed rectangles, indexed like [`Self::placed`].
    pub fn bounds(&self) -> &[Bounds] {
        &self.bounds
    }

    pub fn sums(&self) -> &MassSums {
        &self.sums
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn stats(&self) -> OptStats {
        self.stats
    }

    pub fn overlaps_any(&self, b: &Bounds) -> bool {
        self.bounds.iter().any(|other| other.overlaps(b, self.eps))
    }

    pub fn envelope_with(&self, item: usize, placement: &RectPlacement) -> f64 {
        let r = self.items[item];
        let mc = self.sums.center_with(r.mass, placement.center);
        self.bounds
            .iter()
            .map(|b| b.farthest_corner_distance(mc))
            .fold(r.bounds(placement).farthest_corner_distance(mc), f64::max)
    }

    pub fn place_next(&mut self, item: usize) -> Result<RectPlacement> {
        if item >= self.items.len() || self.used[item] {
            return Err(Error::InvalidOrder);
        }
        let placement = if self.placed.is_empty() {
            RectPlacement::new(Point::ORIGIN, Orientation::Deg0)
        } else {
            match self.best_candidate(item) {
                Some(pl) => pl,
                None => {
                    self.stats.fallbacks += 1;
                    self.fallback_placement(item)
                }
            }
        };
        let r = self.items[item];
        self.used[item] = true;
        self.sums.add(r.mass, placement.center);
        let own = r.bounds(&placement);
        let k = self.bounds.len();
        let reach = own.expanded(self.max_edge + 4.0 * self.eps);
        let mut near_k = Vec::new();
        for (j, b) in self.bounds.iter().enumerate() {
            if reach.overlaps(b, 0.0) {
                near_k.push(j);
                self.neighbors[j].push(k);
            }
        }
        self.neighbors.push(near_k);
        self.bounds.push(own);
        self.placed.push(Placed { item, placement });
        Ok(placement)
    }

    pub fn finish(self) -> Result<Layout<RectPlacement>> {
        let mass_center = self.sums.center().ok_or(Error::EmptyLayout)?;
        let envelope_radius = self
            .bounds
            .iter()
            .flat_map(|b| b.corners())
            .map(|v| v.distance(mass_center))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Layout {
            placements: self.placed,
            mass_center,
            envelope_radius,
            imbalance: self.sums.imbalance(),
            fallbacks: self.stats.fallbacks,
        })
    }

    /// Greedy choice; ties go to the first candidate in anchor, side,
    /// orientation, alignment order.
    fn best_candidate(&mut self, item: usize) -> Option<RectPlacement> {
        let r = self.items[item];
        let eps = self.eps;
        let current = self.sums.center()?;

        self.scan.clear();
        self.scan.extend_from_slice(&self.bounds);
        self.scan.sort_by(|a, b| {
            b.farthest_corner_distance(current)
                .total_cmp(&a.farthest_corner_distance(current))
        });

        let mut near = core::mem::take(&mut self.near);
        near.clear();
        let mut best = f64::INFINITY;
        let shrink = self.sums.mass / (self.sums.mass + r.mass);
        let half_diagonal = r.envelope_radius();
        let (w0, h0) = r.extent(Orientation::Deg0);
        let half_long = 0.5 * w0.max(h0);
        for anchor in 0..self.bounds.len() {
            self.stats.candidate_evaluations += CANDIDATES_PER_ANCHOR as u64;
            // Every candidate center lies within half the long edge of the
            // anchor, which bounds the candidate's own extent.
            let gap = self.bounds[anchor].expanded(half_long).distance_to(current);
            if (shrink * gap).max(half_diagonal) > best + eps {
                continue;
            }
            let candidates = candidates_around(&self.bounds[anchor], &r);
            for pl in candidates {
                let bound = best + eps;
                let own = r.bounds(&pl);
                let mc = self.sums.center_with(r.mass, pl.center);
                let mut env = own.farthest_corner_distance(mc);
                if env > bound || self.overlaps_neighbor_of(anchor, &own) {
                    continue;
                }
                for b in &self.scan {
                    let e = b.farthest_corner_distance(mc);
                    if e > env {
                        env = e;
                        if env > bound {
                            break;
                        }
                    }
                }
                if env > bound {
                    continue;
                }
                best = best.min(env);
                near.push((env, pl));
            }
        }
        let chosen = near.iter().find(|(env, _)| *env <= best + eps).map(|&(_, pl)| pl);
        self.near = near;
        chosen
    }

    fn overlaps_neighbor_of(&self, anchor: usize, b: &Bounds) -> bool {
        core::iter::once(&anchor)
            .chain(&self.neighbors[anchor])
            .any(|&j| self.bounds[j].overlaps(b, self.eps))
    }

    /// Right of the bounding box of everything placed, bottom-aligned, at
    /// orientation 0.
    fn fallback_placement(&self, item: usize) -> RectPlacement {
        let r = self.items[item];
        let hull = self.bounds.iter().skip(1).fold(self.bounds[0], |acc, b| acc.union(b));
        RectPlacement::new(
            Point::new(hull.xmax + 0.5 * r.edge_a, hull.ymin + 0.5 * r.edge_b),
            Orientation::Deg0,
        )
    }
}

/// The 16 raw candidates of `item` around the placed rectangle at placement
/// index `anchor`. Overlap filtering is left to the caller.
pub fn candidate_positions_rect(
    partial: &PartialRectLayout<'_>,
    item: &RectItem,
    anchor: usize,
) -> [RectPlacement; CANDIDATES_PER_ANCHOR] {
    candidates_around(&partial.bounds()[anchor], item)
}

pub fn place_rects(order: &[usize], items: &[RectItem]) -> Result<Layout<RectPlacement>> {
    place_rects_with_stats(order, items).map(|(layout, _)| layout)
}

pub fn place_rects_with_stats(order: &[usize], items: &[RectItem]) -> Result<(Layout<RectPlacement>, OptStats)> {
    if order.len() != items.len() {
        return Err(Error::InvalidOrder);
    }
    let mut partial = PartialRectLayout::new(items)?;
    for &item in order {
        partial.place_next(item)?;
    }
    let stats = partial.stats();
    Ok((partial.finish()?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_bounds() -> Bounds {
        Bounds::centered(Point::ORIGIN, 1.0, 1.0)
    }

    #[test]
    fn equal_squares_give_four_distinct_centers() {
        let sq = RectItem::new(1.0, 1.0, 1.0).unwrap();
        let c = candidates_around(&unit_bounds(), &sq);
        let mut distinct: Vec<Point> = Vec::new();
        for pl in &c {
            if !distinct.contains(&pl.center) {
                distinct.push(pl.center);
            }
        }
        distinct.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
        assert_eq!(
            distinct,
            vec![
                Point::new(-1.0, 0.0),
                Point::new(0.0, -1.0),
                Point::new(0.0, 1.0),
                Point::new(1.0, 0.0)
            ]
        );
    }

    #[test]
    fn bar_against_unit_square() {
        let bar = RectItem::new(2.0, 1.0, 1.0).unwrap();
        let c = candidates_around(&unit_bounds(), &bar);
        let at = |side, orientation, alignment| {
            let idx = (0..16)
                .find(|&i| candidate_slot(i) == (side, orientation, alignment))
                .unwrap();
            c[idx].center
        };
        use Alignment::*;
        use Orientation::*;
        assert_eq!(at(Side::Right, Deg0, Start), Point::new(1.5, 0.0));
        assert_eq!(at(Side::Right, Deg90, Start), Point::new(1.0, 0.5));
        assert_eq!(at(Side::Right, Deg90, End), Point::new(1.0, -0.5));
        assert_eq!(at(Side::Top, Deg0, Start), Point::new(0.5, 1.0));
        assert_eq!(at(Side::Top, Deg0, End), Point::new(-0.5, 1.0));
        assert_eq!(at(Side::Bottom, Deg90, Start), Point::new(0.0, -1.5));
        assert_eq!(at(Side::Left, Deg0, End), Point::new(-1.5, 0.0));
    }

    #[test]
    fn slots_enumerate_every_combination_once() {
        let mut seen = Vec::new();
        for i in 0..16 {
            let s = candidate_slot(i);
            assert!(!seen.contains(&s));
            seen.push(s);
        }
        assert_eq!(candidate_slot(0), (Side::Right, Orientation::Deg0, Alignment::Start));
        assert_eq!(candidate_slot(15), (Side::Bottom, Orientation::Deg90, Alignment::End));
    }

    #[test]
    fn single_square() {
        let items = [RectItem::new(1.0, 1.0, 1.0).unwrap()];
        let layout = place_rects(&[0], &items).unwrap();
        assert_eq!(
            layout.placements[0].placement,
            RectPlacement::new(Point::ORIGIN, Orientation::Deg0)
        );
        assert!((layout.envelope_radius - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn two_squares_go_right_first() {
        let items = [RectItem::new(1.0, 1.0, 1.0).unwrap(); 2];
        let layout = place_rects(&[0, 1], &items).unwrap();
        assert_eq!(layout.placements[1].placement.center, Point::new(1.0, 0.0));
        assert!((layout.envelope_radius - 1.118_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn fallback_sits_right_of_hull() {
        let items = [
            RectItem::new(2.0, 1.0, 1.0).unwrap(),
            RectItem::new(1.0, 3.0, 1.0).unwrap(),
        ];
        let mut partial = PartialRectLayout::new(&items).unwrap();
        partial.place_next(0).unwrap();
        let pl = partial.fallback_placement(1);
        assert_eq!(pl.center, Point::new(1.5, 1.0));
        assert!(!partial.overlaps_any(&items[1].bounds(&pl)));
    }

    #[test]
    fn counter_is_sixteen_per_anchor() {
        let items = [RectItem::new(1.0, 2.0, 1.0).unwrap(); 5];
        let (_, stats) = place_rects_with_stats(&[0, 1, 2, 3, 4], &items).unwrap();
        assert_eq!(stats.candidate_evaluations, 16 * (1 + 2 + 3 + 4));
    }
}
