//! Order-based placement of weighted circles.
//!
//! The first circle of the order goes to `(-r, 0)`, the second touches it at
//! the origin from the right. Every later circle must touch two circles that
//! are already placed; among all such overlap-free positions the one giving
//! the smallest enveloping circle about the updated mass center wins.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{circles_overlap, tangent_positions, tolerance, CircleItem, MassSums, Point};
use crate::layout::{Layout, Placed};

/// Instrumentation gathered during one construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OptStats {
    /// Candidate positions examined. Each pair of placed circles accounts for
    /// its two tangency slots, whether or not both exist geometrically.
    pub candidate_evaluations: u64,
    /// Items placed by the fallback rule because no candidate was valid.
    pub fallbacks: usize,
}

/// A tangency position together with the placement indices of the two
/// circles it touches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleCandidate {
    pub position: Point,
    pub pair: (usize, usize),
}

/// Circles placed so far, with running mass sums.
#[derive(Debug, Clone)]
pub struct PartialCircleLayout<'a> {
    items: &'a [CircleItem],
    placed: Vec<Placed<Point>>,
    used: Vec<bool>,
    sums: MassSums,
    eps: f64,
    stats: OptStats,
    max_radius: f64,
    // For each placed circle, the placed circles close enough that a new
    // circle touching one could overlap or touch the other. Ascending.
    neighbors: Vec<Vec<usize>>,
    // Scratch buffers reused across steps.
    scan: Vec<(f64, Point)>,
    near: Vec<(f64, Point)>,
    gaps: Vec<f64>,
}

impl<'a> PartialCircleLayout<'a> {
    pub fn new(items: &'a [CircleItem]) -> Result<Self> {
        for (i, item) in items.iter().enumerate() {
            item.validate(i)?;
        }
        let scale = items.iter().map(|c| c.radius).fold(0.0, f64::max);
        Ok(PartialCircleLayout {
            items,
            placed: Vec::with_capacity(items.len()),
            used: vec![false; items.len()],
            sums: MassSums::default(),
            eps: tolerance(scale),
            stats: OptStats::default(),
            max_radius: scale,
            neighbors: Vec::with_capacity(items.len()),
            scan: Vec::with_capacity(items.len()),
            near: Vec::new(),
            gaps: Vec::with_capacity(items.len()),
        })
    }

    pub fn items(&self) -> &'a [CircleItem] {
        self.items
    }

    pub fn placed(&self) -> &[Placed<Point>] {
        &self.placed
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

    pub fn mass_center(&self) -> Option<Point> {
        self.sums.center()
    }

    /// True if a circle of radius `r` at `p` overlaps any placed circle.
    pub fn overlaps_any(&self, p: Point, r: f64) -> bool {
        self.placed
            .iter()
            .any(|pl| circles_overlap(p, r, pl.placement, self.items[pl.item].radius, self.eps))
    }

    /// Enveloping radius about the new mass center if `item` were added at `p`.
    pub fn envelope_with(&self, item: usize, p: Point) -> f64 {
        let c = self.items[item];
        let mc = self.sums.center_with(c.mass, p);
        self.placed
            .iter()
            .map(|pl| self.items[pl.item].radius + pl.placement.distance(mc))
            .fold(c.radius + p.distance(mc), f64::max)
    }

    /// Places `item` according to the placement rules and returns its center.
    pub fn place_next(&mut self, item: usize) -> Result<Point> {
        if item >= self.items.len() || self.used[item] {
            return Err(Error::InvalidOrder);
        }
        let r = self.items[item].radius;
        let position = match self.placed.len() {
            0 => Point::new(-r, 0.0),
            1 => Point::new(r, 0.0),
            _ => match self.best_candidate(item) {
                Some(p) => p,
                None => {
                    self.stats.fallbacks += 1;
                    self.fallback_position(r)
                }
            },
        };
        self.used[item] = true;
        self.sums.add(self.items[item].mass, position);
        let k = self.placed.len();
        let mut own = Vec::new();
        for (j, pl) in self.placed.iter().enumerate() {
            let reach = r + self.items[pl.item].radius + 2.0 * self.max_radius + 4.0 * self.eps;
            if pl.placement.distance(position) < reach {
                own.push(j);
                self.neighbors[j].push(k);
            }
        }
        self.neighbors.push(own);
        self.placed.push(Placed {
            item,
            placement: position,
        });
        Ok(position)
    }

    /// Completes the layout. Call once every item has been placed.
    pub fn finish(self) -> Result<Layout<Point>> {
        let mass_center = self.sums.center().ok_or(Error::EmptyLayout)?;
        let envelope_radius = self
            .placed
            .iter()
            .map(|pl| self.items[pl.item].radius + pl.placement.distance(mass_center))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Layout {
            placements: self.placed,
            mass_center,
            envelope_radius,
            imbalance: self.sums.imbalance(),
            fallbacks: self.stats.fallbacks,
        })
    }

    /// Greedy choice among tangency candidates.
    ///
    /// Candidates are visited by pair (lexicographic in placement index) and,
    /// within a pair, by `(y, x)`. The first candidate whose envelope is
    /// within `eps` of the minimum is selected.
    fn best_candidate(&mut self, item: usize) -> Option<Point> {
        let c = self.items[item];
        let eps = self.eps;
        let current = self.sums.center()?;

        // Placed circles ordered by how far they reach from the current mass
        // center; the new center stays close, so the maximum shows up early.
        self.scan.clear();
        self.scan
            .extend(self.placed.iter().map(|pl| (self.items[pl.item].radius, pl.placement)));
        self.scan.sort_by(|a, b| {
            let ea = a.0 + a.1.distance(current);
            let eb = b.0 + b.1.distance(current);
            eb.total_cmp(&ea)
        });

        let mut near = core::mem::take(&mut self.near);
        near.clear();
        let mut best = f64::INFINITY;
        let k = self.placed.len();
        // Every pair is accounted for; pairs that are not neighbors cannot
        // both touch a new circle and are skipped without further work.
        self.stats.candidate_evaluations += (k * (k - 1)) as u64;
        // Shrink factor from the offset of a candidate to the current mass
        // center, to its offset from the updated one.
        let shrink = self.sums.mass / (self.sums.mass + c.mass);
        // How far beyond reach of a new circle touching it each placed
        // circle sits from the current mass center.
        let mut gaps = core::mem::take(&mut self.gaps);
        gaps.clear();
        gaps.extend(
            self.placed
                .iter()
                .map(|pl| (pl.placement.distance(current) - self.items[pl.item].radius - c.radius).max(0.0)),
        );
        for a in 0..k {
            let pa = self.placed[a];
            let ra = self.items[pa.item].radius;
            for &b in self.neighbors[a].iter().filter(|&&b| b > a) {
                let pb = self.placed[b];
                let rb = self.items[pb.item].radius;
                // A candidate touching both a and b is at least this far from
                // the current mass center, which bounds its own extent.
                if c.radius + shrink * gaps[a].max(gaps[b]) > best + eps {
                    continue;
                }
                let Ok(tangents) = tangent_positions(pa.placement, ra, pb.placement, rb, c.radius, eps) else {
                    continue;
                };
                for &p in tangents.as_slice() {
                    let bound = best + eps;
                    let mc = self.sums.center_with(c.mass, p);
                    let mut env = c.radius + p.distance(mc);
                    if env > bound || self.overlaps_neighbor_of(a, p, c.radius) {
                        continue;
                    }
                    for &(r, q) in &self.scan {
                        let e = r + q.distance(mc);
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
                    near.push((env, p));
                }
            }
        }
        let chosen = near.iter().find(|(env, _)| *env <= best + eps).map(|&(_, p)| p);
        self.near = near;
        self.gaps = gaps;
        chosen
    }

    /// Overlap test for a circle touching placed circle `anchor`; only the
    /// anchor's neighbors can be hit.
    fn overlaps_neighbor_of(&self, anchor: usize, p: Point, r: f64) -> bool {
        core::iter::once(&anchor).chain(&self.neighbors[anchor]).any(|&j| {
            let pl = self.placed[j];
            circles_overlap(p, r, pl.placement, self.items[pl.item].radius, self.eps)
        })
    }

    /// Outside the circle reaching farthest from the mass center, on the ray
    /// from the mass center through its center. Always overlap-free.
    fn fallback_position(&self, r: f64) -> Point {
        let mc = self.sums.center().unwrap_or(Point::ORIGIN);
        let (far_r, far_p) = self
            .placed
            .iter()
            .map(|pl| (self.items[pl.item].radius, pl.placement))
            .max_by(|a, b| (a.0 + a.1.distance(mc)).total_cmp(&(b.0 + b.1.distance(mc))))
            .unwrap_or((0.0, mc));
        let offset = far_p - mc;
        let len = offset.norm();
        let dir = if len > self.eps {
            offset * (1.0 / len)
        } else {
            Point::new(1.0, 0.0)
        };
        far_p + dir * (far_r + r)
    }
}

/// All overlap-free tangency positions for a circle of radius `r_i`, one
/// group per unordered pair of placed circles.
pub fn candidate_positions_circle(partial: &PartialCircleLayout<'_>, r_i: f64) -> Vec<CircleCandidate> {
    let placed = partial.placed();
    let items = partial.items();
    let mut out = Vec::new();
    for a in 0..placed.len() {
        for b in a + 1..placed.len() {
            let (pa, pb) = (placed[a], placed[b]);
            let Ok(t) = tangent_positions(
                pa.placement,
                items[pa.item].radius,
                pb.placement,
                items[pb.item].radius,
                r_i,
                partial.eps(),
            ) else {
                continue;
            };
            out.extend(
                t.as_slice()
                    .iter()
                    .filter(|&&p| !partial.overlaps_any(p, r_i))
                    .map(|&position| CircleCandidate { position, pair: (a, b) }),
            );
        }
    }
    out
}

/// Builds the layout for `order`, a permutation of `0..items.len()`.
pub fn place_circles(order: &[usize], items: &[CircleItem]) -> Result<Layout<Point>> {
    place_circles_with_stats(order, items).map(|(layout, _)| layout)
}

pub fn place_circles_with_stats(order: &[usize], items: &[CircleItem]) -> Result<(Layout<Point>, OptStats)> {
    if order.len() != items.len() {
        return Err(Error::InvalidOrder);
    }
    let mut partial = PartialCircleLayout::new(items)?;
    for &item in order {
        partial.place_next(item)?;
    }
    let stats = partial.stats();
    Ok((partial.finish()?, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    fn units(n: usize) -> Vec<CircleItem> {
        vec![CircleItem::new(1.0, 1.0).unwrap(); n]
    }

    #[test]
    fn single_circle() {
        let layout = place_circles(&[0], &units(1)).unwrap();
        assert_eq!(layout.placements[0].placement, Point::new(-1.0, 0.0));
        assert_eq!(layout.envelope_radius, 1.0);
    }

    #[test]
    fn first_two_follow_order_not_numbering() {
        let items = [CircleItem::new(1.0, 1.0).unwrap(), CircleItem::new(3.0, 1.0).unwrap()];
        let layout = place_circles(&[1, 0], &items).unwrap();
        assert_eq!(
            layout.placements[0],
            Placed {
                item: 1,
                placement: Point::new(-3.0, 0.0)
            }
        );
        assert_eq!(
            layout.placements[1],
            Placed {
                item: 0,
                placement: Point::new(1.0, 0.0)
            }
        );
    }

    #[test]
    fn three_units_tie_breaks_to_lower_candidate() {
        let layout = place_circles(&[0, 1, 2], &units(3)).unwrap();
        let third = layout.placements[2].placement;
        assert!(third.x.abs() < 1e-12);
        assert!((third.y + SQRT3).abs() < 1e-12);
        assert!((layout.envelope_radius - (1.0 + 2.0 / SQRT3)).abs() < 1e-12);
    }

    #[test]
    fn candidates_for_two_placed() {
        let items = units(2);
        let mut partial = PartialCircleLayout::new(&items).unwrap();
        partial.place_next(0).unwrap();
        partial.place_next(1).unwrap();
        let c = candidate_positions_circle(&partial, 1.0);
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.pair == (0, 1)));
        assert!((c[0].position.y + SQRT3).abs() < 1e-12 && (c[1].position.y - SQRT3).abs() < 1e-12);

        let big = candidate_positions_circle(&partial, 5.0);
        let root35 = libm::sqrt(35.0);
        assert_eq!(big.len(), 2);
        assert!((big[0].position.y + root35).abs() < 1e-12 && (big[1].position.y - root35).abs() < 1e-12);
        assert!(big.iter().all(|c| c.position.x.abs() < 1e-12));
    }

    #[test]
    fn candidates_for_three_placed_drop_occupied() {
        let items = units(4);
        let mut partial = PartialCircleLayout::new(&items).unwrap();
        for i in 0..3 {
            partial.place_next(i).unwrap();
        }
        // Raw: 3 pairs x 2 = 6. The survivors are the rhombus tip above the
        // first pair and the two outward points of the other pairs.
        let c = candidate_positions_circle(&partial, 1.0);
        assert_eq!(c.len(), 3);
        let mut pairs: Vec<_> = c.iter().map(|c| c.pair).collect();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn rejects_bad_orders() {
        let items = units(3);
        assert_eq!(place_circles(&[0, 1], &items), Err(Error::InvalidOrder));
        assert_eq!(place_circles(&[0, 1, 1], &items), Err(Error::InvalidOrder));
        assert_eq!(place_circles(&[0, 1, 3], &items), Err(Error::InvalidOrder));
    }

    #[test]
    fn fallback_position_is_clear_of_everything() {
        let items = [
            CircleItem::new(1.0, 1.0).unwrap(),
            CircleItem::new(3.0, 1.0).unwrap(),
            CircleItem::new(2.0, 1.0).unwrap(),
        ];
        let mut partial = PartialCircleLayout::new(&items).unwrap();
        partial.place_next(0).unwrap();
        partial.place_next(1).unwrap();
        let p = partial.fallback_position(2.0);
        assert!(!partial.overlaps_any(p, 2.0));
        // Touches the circle reaching farthest from the mass center.
        assert!((p.distance(Point::new(3.0, 0.0)) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn counter_matches_pair_count() {
        let items = units(6);
        let (_, stats) = place_circles_with_stats(&[0, 1, 2, 3, 4, 5], &items).unwrap();
        let expected: u64 = (3..=6u64).map(|i| (i - 1) * (i - 2)).sum();
        assert_eq!(stats.candidate_evaluations, expected);
    }
}
