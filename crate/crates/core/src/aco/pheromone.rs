use alloc::vec;
use alloc::vec::Vec;

use libm::pow;

use crate::error::{Error, Result};

/// A node an ant can stand on: the virtual start, or an item already placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Start,
    Item(usize),
}

impl Node {
    fn row(self) -> usize {
        match self {
            Node::Start => 0,
            Node::Item(i) => i + 1,
        }
    }
}

/// An ant's placement order and the enveloping radius it decoded to.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    pub order: Vec<usize>,
    pub length: f64,
}

impl Tour {
    /// `(from, to)` edges walked, starting with the edge out of the virtual
    /// start node.
    pub fn edges(&self) -> impl Iterator<Item = (Node, usize)> + '_ {
        let first = self.order.first().map(|&j| (Node::Start, j));
        first
            .into_iter()
            .chain(self.order.windows(2).map(|w| (Node::Item(w[0]), w[1])))
    }
}

/// Trail matrix of `(n + 1) x n` entries; row 0 belongs to the virtual start.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneModel {
    n: usize,
    trails: Vec<f64>,
    bounds: Option<(f64, f64)>,
}

impl PheromoneModel {
    /// Every entry set to `initial`, no clamping.
    pub fn uniform(n: usize, initial: f64) -> Self {
        PheromoneModel {
            n,
            trails: vec![initial; (n + 1) * n],
            bounds: None,
        }
    }

    /// Enables clamping into `[tau_min, tau_max]` after bounded updates.
    pub fn with_bounds(mut self, tau_min: f64, tau_max: f64) -> Self {
        self.bounds = Some((tau_min, tau_max));
        self
    }

    pub fn item_count(&self) -> usize {
        self.n
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        self.bounds
    }

    pub fn get(&self, from: Node, to: usize) -> f64 {
        self.trails[from.row() * self.n + to]
    }

    pub fn set(&mut self, from: Node, to: usize, value: f64) {
        self.trails[from.row() * self.n + to] = value;
    }

    /// All entries, row-major, start row first.
    pub fn entries(&self) -> &[f64] {
        &self.trails
    }

    fn check_lengths<'t>(tours: impl IntoIterator<Item = &'t Tour>) -> Result<()> {
        for t in tours {
            if !(t.length > 0.0 && t.length.is_finite()) {
                return Err(Error::NonPositiveTourLength(t.length));
            }
        }
        Ok(())
    }

    fn evaporate(&mut self, rho: f64) {
        self.trails.iter_mut().for_each(|t| *t *= rho);
    }

    fn deposit(&mut self, tour: &Tour, q: f64) -> usize {
        let amount = q / tour.length;
        let mut count = 0;
        for (from, to) in tour.edges() {
            self.trails[from.row() * self.n + to] += amount;
            count += 1;
        }
        count
    }

    /// Ant System update: scale every trail by `rho`, then every ant adds
    /// `q / L_k` to each edge of its tour. Returns the number of edge deposits.
    pub fn as_update(&mut self, tours: &[Tour], rho: f64, q: f64) -> Result<usize> {
        Self::check_lengths(tours)?;
        self.evaporate(rho);
        Ok(tours.iter().map(|t| self.deposit(t, q)).sum())
    }

    /// Max-Min update: scale by `rho`, deposit `q / L_best` along the best
    /// tour only, then clamp every entry into the trail bounds.
    pub fn mmas_update(&mut self, best: &Tour, rho: f64, q: f64) -> Result<usize> {
        let (lo, hi) = self.bounds.ok_or(Error::ClampingDisabled)?;
        Self::check_lengths([best])?;
        self.evaporate(rho);
        let count = self.deposit(best, q);
        self.trails.iter_mut().for_each(|t| *t = t.clamp(lo, hi));
        Ok(count)
    }
}

/// Probability of moving from `current` to each item of `allowed`
/// (same order): `tau^alpha * eta^beta`, normalized over `allowed`.
pub fn transition_probabilities(
    pheromone: &PheromoneModel,
    eta: &[f64],
    current: Node,
    allowed: &[usize],
    alpha: f64,
    beta: f64,
) -> Result<Vec<f64>> {
    if allowed.is_empty() {
        return Err(Error::EmptyAllowedSet);
    }
    let mut weights: Vec<f64> = allowed
        .iter()
        .map(|&j| pow(pheromone.get(current, j), alpha) * pow(eta[j], beta))
        .collect();
    let total: f64 = weights.iter().sum();
    if !total.is_finite() || total <= 0.0 || weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::NonFiniteWeight);
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(weights)
}
