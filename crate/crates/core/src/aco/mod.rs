//! Ant colony search over placement orders.
//!
//! Each ant walks from a virtual start node through all items; the sequence
//! of items it visits is a placement order, decoded into a layout by the
//! order-based constructors. The enveloping radius of that layout plays the
//! role of tour length. Two pheromone policies are available: the plain Ant
//! System (every ant deposits) and the Max-Min Ant System (only the best ant
//! deposits, and trails are clamped).

mod pheromone;

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use pheromone::{transition_probabilities, Node, PheromoneModel, Tour};

use crate::error::{Error, Result};
use crate::geometry::{CircleItem, Point, RectItem, RectPlacement};
use crate::layout::Layout;
use crate::opt_circle::place_circles;
use crate::opt_rect::place_rects;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Ant System: all ants deposit, no trail bounds.
    As,
    /// Max-Min Ant System: one ant deposits, trails clamped.
    Mmas,
}

/// Which ant deposits under [`Variant::Mmas`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MmasDeposit {
    /// Best layout found so far in the run.
    #[default]
    GlobalBest,
    /// Best layout of the current iteration.
    IterationBest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoParams {
    pub variant: Variant,
    pub ants: usize,
    pub iterations: usize,
    /// Exponent on the pheromone trail.
    pub alpha: f64,
    /// Exponent on the heuristic desirability.
    pub beta: f64,
    /// Fraction of every trail kept at each update.
    pub rho: f64,
    pub seed: u64,
    pub mmas_deposit: MmasDeposit,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            variant: Variant::Mmas,
            ants: 20,
            iterations: 100,
            alpha: 1.0,
            beta: 1.0,
            rho: 0.9,
            seed: 0,
            mmas_deposit: MmasDeposit::GlobalBest,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<()> {
        if self.ants == 0 {
            return Err(Error::InvalidParams("ants must be at least 1"));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParams("iterations must be at least 1"));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidParams("rho must lie strictly between 0 and 1"));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) || !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParams("alpha and beta must be finite and non-negative"));
        }
        Ok(())
    }
}

/// Trail bounds used by the Max-Min variant for `n` items.
pub fn mmas_bounds(n: usize) -> (f64, f64) {
    (0.1 / n as f64, 10.0 / n as f64)
}

/// Turns placement orders into layouts.
pub trait Decoder: Sync {
    type Placement: Clone + Send;

    fn item_count(&self) -> usize;

    /// Static desirability of each item: mass times (enveloping) radius.
    fn eta(&self) -> Vec<f64>;

    fn decode(&self, order: &[usize]) -> Result<Layout<Self::Placement>>;
}

#[derive(Debug, Clone, Copy)]
pub struct CircleDecoder<'a>(pub &'a [CircleItem]);

impl Decoder for CircleDecoder<'_> {
    type Placement = Point;

    fn item_count(&self) -> usize {
        self.0.len()
    }

    fn eta(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.mass * c.radius).collect()
    }

    fn decode(&self, order: &[usize]) -> Result<Layout<Point>> {
        place_circles(order, self.0)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RectDecoder<'a>(pub &'a [RectItem]);

impl Decoder for RectDecoder<'_> {
    type Placement = RectPlacement;

    fn item_count(&self) -> usize {
        self.0.len()
    }

    fn eta(&self) -> Vec<f64> {
        self.0.iter().map(|r| r.mass * r.envelope_radius()).collect()
    }

    fn decode(&self, order: &[usize]) -> Result<Layout<RectPlacement>> {
        place_rects(order, self.0)
    }
}

/// Heuristic desirability `m_j * r_j` of every circle.
pub fn heuristic_eta_circles(items: &[CircleItem]) -> Vec<f64> {
    CircleDecoder(items).eta()
}

/// Heuristic desirability `m_j * r_j` of every rectangle, `r_j` being half
/// its diagonal.
pub fn heuristic_eta_rects(items: &[RectItem]) -> Vec<f64> {
    RectDecoder(items).eta()
}

/// Random stream of ant `ant` in iteration `iteration`.
///
/// Streams depend only on `(seed, iteration, ant)`, so a run gives the same
/// result however the ants are scheduled.
pub fn ant_rng(seed: u64, iteration: usize, ant: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((iteration as u64) << 32) | (ant as u64 & 0xffff_ffff));
    rng
}

/// Samples a full placement order, one transition at a time, starting from
/// the virtual start node.
pub fn construct_order<R: Rng + ?Sized>(
    pheromone: &PheromoneModel,
    eta: &[f64],
    alpha: f64,
    beta: f64,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let n = pheromone.item_count();
    let mut allowed: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut current = Node::Start;
    while !allowed.is_empty() {
        let probs = transition_probabilities(pheromone, eta, current, &allowed, alpha, beta)?;
        let u: f64 = rng.random();
        let mut acc = 0.0;
        // Rounding can leave the cumulative sum a hair below `u`; the last
        // item absorbs that remainder.
        let mut pick = allowed.len() - 1;
        for (k, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                pick = k;
                break;
            }
        }
        let next = allowed.remove(pick);
        order.push(next);
        current = Node::Item(next);
    }
    Ok(order)
}

/// Runs the per-ant work of one iteration. Implementations may run ants in
/// parallel but must return results in ant order.
pub trait Executor {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs everything on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(f).collect()
    }
}

/// Hook into every iteration of [`solve_with`].
pub trait SolveObserver {
    /// `before` is the trail snapshot the ants sampled from, `after` the
    /// state once the iteration's update was applied.
    fn on_iteration(&mut self, iteration: usize, before: &PheromoneModel, tours: &[Tour], after: &PheromoneModel);
}

impl SolveObserver for () {
    fn on_iteration(&mut self, _: usize, _: &PheromoneModel, _: &[Tour], _: &PheromoneModel) {}
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<P> {
    pub best_layout: Layout<P>,
    pub best_order: Vec<usize>,
    pub best_envelope: f64,
    /// Best envelope found so far, after each iteration.
    pub per_iteration_best: Vec<f64>,
    pub construction_count: usize,
    /// Edge deposits performed by all pheromone updates.
    pub deposit_operations: usize,
}

pub fn solve<D: Decoder>(decoder: &D, params: &AcoParams) -> Result<SolveResult<D::Placement>> {
    solve_with(decoder, params, &Sequential, &mut ())
}

/// Full colony run with a custom executor and observer.
///
/// Trails start at `1/n` once per run. In every iteration each ant samples
/// an order against the current trails and decodes it; then the trails are
/// updated with `Q` equal to the best envelope found so far.
pub fn solve_with<D, E, O>(
    decoder: &D,
    params: &AcoParams,
    executor: &E,
    observer: &mut O,
) -> Result<SolveResult<D::Placement>>
where
    D: Decoder,
    E: Executor,
    O: SolveObserver + ?Sized,
{
    params.validate()?;
    let n = decoder.item_count();
    if n == 0 {
        return Err(Error::EmptyLayout);
    }
    let eta = decoder.eta();
    let mut pheromone = PheromoneModel::uniform(n, 1.0 / n as f64);
    if params.variant == Variant::Mmas {
        let (lo, hi) = mmas_bounds(n);
        pheromone = pheromone.with_bounds(lo, hi);
    }

    let mut best: Option<(Tour, Layout<D::Placement>)> = None;
    let mut per_iteration_best = Vec::with_capacity(params.iterations);
    let mut deposit_operations = 0;

    for iteration in 0..params.iterations {
        let snapshot = &pheromone;
        let outcomes = executor.map(params.ants, |ant| -> Result<(Tour, Layout<D::Placement>)> {
            let mut rng = ant_rng(params.seed, iteration, ant);
            let order = construct_order(snapshot, &eta, params.alpha, params.beta, &mut rng)?;
            let layout = decoder.decode(&order)?;
            Ok((
                Tour {
                    order,
                    length: layout.envelope_radius,
                },
                layout,
            ))
        });

        let mut tours: Vec<Tour> = Vec::with_capacity(params.ants);
        let mut iteration_best: Option<usize> = None;
        for (k, outcome) in outcomes.into_iter().enumerate() {
            let (tour, layout) = outcome?;
            if iteration_best.is_none_or(|b: usize| tour.length < tours[b].length) {
                iteration_best = Some(k);
            }
            if best.as_ref().is_none_or(|(b, _)| tour.length < b.length) {
                best = Some((tour.clone(), layout));
            }
            tours.push(tour);
        }
        let (global, _) = best.as_ref().ok_or(Error::EmptyLayout)?;
        let q = global.length;

        let before = pheromone.clone();
        deposit_operations += match params.variant {
            Variant::As => pheromone.as_update(&tours, params.rho, q)?,
            Variant::Mmas => {
                let depositor = match params.mmas_deposit {
                    MmasDeposit::GlobalBest => global,
                    MmasDeposit::IterationBest => &tours[iteration_best.unwrap_or(0)],
                };
                pheromone.mmas_update(depositor, params.rho, q)?
            }
        };
        per_iteration_best.push(q);
        observer.on_iteration(iteration, &before, &tours, &pheromone);
    }

    let (tour, best_layout) = best.ok_or(Error::EmptyLayout)?;
    Ok(SolveResult {
        best_envelope: best_layout.envelope_radius,
        best_layout,
        best_order: tour.order,
        per_iteration_best,
        construction_count: params.ants * params.iterations,
        deposit_operations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn eta_values() {
        assert_eq!(heuristic_eta_circles(&[CircleItem::new(2.0, 3.0).unwrap()]), vec![6.0]);
        assert_eq!(heuristic_eta_rects(&[RectItem::new(3.0, 4.0, 2.0).unwrap()]), vec![5.0]);
        assert_eq!(heuristic_eta_circles(&[CircleItem::new(1.0, 1.0).unwrap()]), vec![1.0]);
    }

    #[test]
    fn construct_single_item() {
        let tau = PheromoneModel::uniform(1, 1.0);
        let order = construct_order(&tau, &[1.0], 1.0, 1.0, &mut ant_rng(3, 0, 0)).unwrap();
        assert_eq!(order, vec![0]);
    }

    #[test]
    fn construct_follows_dominant_eta() {
        let tau = PheromoneModel::uniform(2, 0.5);
        let eta = [1.0, 1e9];
        let hits = (0..1000)
            .filter(|&k| construct_order(&tau, &eta, 1.0, 1.0, &mut ant_rng(11, 0, k)).unwrap() == vec![1, 0])
            .count();
        assert!(hits >= 999, "{hits}");
    }

    #[test]
    fn construct_is_reproducible() {
        let tau = PheromoneModel::uniform(8, 0.125);
        let eta: Vec<f64> = (1..=8).map(f64::from).collect();
        let a = construct_order(&tau, &eta, 1.0, 1.0, &mut ant_rng(42, 3, 7)).unwrap();
        let b = construct_order(&tau, &eta, 1.0, 1.0, &mut ant_rng(42, 3, 7)).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(sorted, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn ant_streams_differ() {
        let mut a = ant_rng(1, 0, 0);
        let mut b = ant_rng(1, 0, 1);
        let mut c = ant_rng(1, 1, 0);
        let (x, y, z): (u64, u64, u64) = (a.random(), b.random(), c.random());
        assert!(x != y && y != z && x != z);
    }

    #[test]
    fn params_validation() {
        assert!(AcoParams::default().validate().is_ok());
        for bad in [
            AcoParams {
                ants: 0,
                ..Default::default()
            },
            AcoParams {
                iterations: 0,
                ..Default::default()
            },
            AcoParams {
                rho: 1.0,
                ..Default::default()
            },
            AcoParams {
                rho: 0.0,
                ..Default::default()
            },
            AcoParams {
                alpha: -1.0,
                ..Default::default()
            },
            AcoParams {
                beta: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(Error::InvalidParams(_))));
        }
    }

    #[test]
    fn single_item_solve() {
        let items = [CircleItem::new(2.5, 1.0).unwrap()];
        let res = solve(
            &CircleDecoder(&items),
            &AcoParams {
                iterations: 3,
                ants: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(res.best_envelope, 2.5);
        assert_eq!(res.best_order, vec![0]);
        assert_eq!(res.construction_count, 6);
    }

    #[test]
    fn deposit_counts_per_variant() {
        let items = [
            CircleItem::new(1.0, 1.0).unwrap(),
            CircleItem::new(2.0, 1.0).unwrap(),
            CircleItem::new(1.5, 2.0).unwrap(),
        ];
        let base = AcoParams {
            ants: 5,
            iterations: 4,
            ..Default::default()
        };
        let mmas = solve(&CircleDecoder(&items), &base).unwrap();
        let as_ = solve(
            &CircleDecoder(&items),
            &AcoParams {
                variant: Variant::As,
                ..base
            },
        )
        .unwrap();
        assert_eq!(mmas.deposit_operations, 4 * 3);
        assert_eq!(as_.deposit_operations, 4 * 5 * 3);
    }
}
