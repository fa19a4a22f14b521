//! Completed layouts and their consistency checks.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{
    circles_overlap, envelope_radius_circles, envelope_radius_rects, tolerance, CircleItem, MassSums, Point, RectItem,
    RectPlacement,
};

/// One item of a layout: its index in the instance and where it went.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placed<P> {
    pub item: usize,
    pub placement: P,
}

/// A full assignment of placements, in placement order.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout<P> {
    pub placements: Vec<Placed<P>>,
    pub mass_center: Point,
    /// Radius of the enveloping circle centered at `mass_center`.
    pub envelope_radius: f64,
    /// First mass moment about the origin of the construction frame.
    pub imbalance: f64,
    /// Number of items that were placed by the no-candidate fallback rule.
    pub fallbacks: usize,
}

impl<P> Layout<P> {
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Item indices in placement order.
    pub fn order(&self) -> Vec<usize> {
        self.placements.iter().map(|p| p.item).collect()
    }
}

/// Reason a layout fails [`verify_circle_layout`] or [`verify_rect_layout`].
#[derive(Debug, Clone, PartialEq)]
pub enum LayoutDefect {
    UnknownItem(usize),
    DuplicateItem(usize),
    MissingItem(usize),
    NonFinite(usize),
    Overlap(usize, usize),
    MassCenterMismatch { stored: Point, recomputed: Point },
    EnvelopeMismatch { stored: f64, recomputed: f64 },
}

impl fmt::Display for LayoutDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayoutDefect::UnknownItem(i) => write!(f, "placement refers to unknown item {}", i + 1),
            LayoutDefect::DuplicateItem(i) => write!(f, "item {} placed twice", i + 1),
            LayoutDefect::MissingItem(i) => write!(f, "item {} not placed", i + 1),
            LayoutDefect::NonFinite(i) => write!(f, "item {} has a non-finite position", i + 1),
            LayoutDefect::Overlap(a, b) => write!(f, "items {} and {} overlap", a + 1, b + 1),
            LayoutDefect::MassCenterMismatch { stored, recomputed } => write!(
                f,
                "stored mass center ({}, {}) differs from recomputed ({}, {})",
                stored.x, stored.y, recomputed.x, recomputed.y
            ),
            LayoutDefect::EnvelopeMismatch { stored, recomputed } => write!(
                f,
                "stored envelope radius {stored} differs from recomputed {recomputed}"
            ),
        }
    }
}

impl core::error::Error for LayoutDefect {}

const RELATIVE_CHECK: f64 = 1e-9;

fn relatively_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATIVE_CHECK * a.abs().max(b.abs()).max(1.0)
}

fn check_membership<P>(n: usize, layout: &Layout<P>) -> Result<(), LayoutDefect> {
    let mut seen = vec![false; n];
    for placed in &layout.placements {
        let slot = seen
            .get_mut(placed.item)
            .ok_or(LayoutDefect::UnknownItem(placed.item))?;
        if *slot {
            return Err(LayoutDefect::DuplicateItem(placed.item));
        }
        *slot = true;
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(LayoutDefect::MissingItem(i)),
        None => Ok(()),
    }
}

fn check_mass_center(sums: &MassSums, stored: Point, scale: f64) -> Result<(), LayoutDefect> {
    let recomputed = sums.center().unwrap_or(Point::ORIGIN);
    let tol = RELATIVE_CHECK * scale.max(1.0);
    if (recomputed.x - stored.x).abs() > tol || (recomputed.y - stored.y).abs() > tol {
        return Err(LayoutDefect::MassCenterMismatch { stored, recomputed });
    }
    Ok(())
}

/// Checks that every item appears exactly once, no two circles overlap, and
/// the stored mass center and envelope radius match a recomputation.
pub fn verify_circle_layout(items: &[CircleItem], layout: &Layout<Point>) -> Result<(), LayoutDefect> {
    check_membership(items.len(), layout)?;
    let scale = items.iter().map(|c| c.radius).fold(0.0, f64::max);
    let eps = tolerance(scale);
    let pairs: Vec<(CircleItem, Point)> = layout.placements.iter().map(|p| (items[p.item], p.placement)).collect();
    for (k, (_, p)) in pairs.iter().enumerate() {
        if !p.is_finite() {
            return Err(LayoutDefect::NonFinite(layout.placements[k].item));
        }
    }
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            if circles_overlap(pairs[a].1, pairs[a].0.radius, pairs[b].1, pairs[b].0.radius, eps) {
                return Err(LayoutDefect::Overlap(
                    layout.placements[a].item,
                    layout.placements[b].item,
                ));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(());
    }
    let mut sums = MassSums::default();
    for (c, p) in &pairs {
        sums.add(c.mass, *p);
    }
    let extent = envelope_radius_circles(&pairs, Point::ORIGIN).unwrap_or(0.0);
    check_mass_center(&sums, layout.mass_center, extent)?;
    let recomputed = envelope_radius_circles(&pairs, layout.mass_center).unwrap_or(0.0);
    if !relatively_close(recomputed, layout.envelope_radius) {
        return Err(LayoutDefect::EnvelopeMismatch {
            stored: layout.envelope_radius,
            recomputed,
        });
    }
    Ok(())
}

/// Rectangle counterpart of [`verify_circle_layout`].
pub fn verify_rect_layout(items: &[RectItem], layout: &Layout<RectPlacement>) -> Result<(), LayoutDefect> {
    check_membership(items.len(), layout)?;
    let scale = items.iter().map(|r| r.edge_a.max(r.edge_b)).fold(0.0, f64::max);
    let eps = tolerance(scale);
    let pairs: Vec<(RectItem, RectPlacement)> =
        layout.placements.iter().map(|p| (items[p.item], p.placement)).collect();
    for (k, (_, pl)) in pairs.iter().enumerate() {
        if !pl.center.is_finite() {
            return Err(LayoutDefect::NonFinite(layout.placements[k].item));
        }
    }
    let bounds: Vec<_> = pairs.iter().map(|(r, pl)| r.bounds(pl)).collect();
    for a in 0..bounds.len() {
        for b in a + 1..bounds.len() {
            if bounds[a].overlaps(&bounds[b], eps) {
                return Err(LayoutDefect::Overlap(
                    layout.placements[a].item,
                    layout.placements[b].item,
                ));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(());
    }
    let mut sums = MassSums::default();
    for (r, pl) in &pairs {
        sums.add(r.mass, pl.center);
    }
    let extent = envelope_radius_rects(&pairs, Point::ORIGIN).unwrap_or(0.0);
    check_mass_center(&sums, layout.mass_center, extent)?;
    let recomputed = envelope_radius_rects(&pairs, layout.mass_center).unwrap_or(0.0);
    if !relatively_close(recomputed, layout.envelope_radius) {
        return Err(LayoutDefect::EnvelopeMismatch {
            stored: layout.envelope_radius,
            recomputed,
        });
    }
    Ok(())
}
