use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wil_core::{CircleItem, RectItem};

use crate::instance::{Instance, Items, Kind};

/// Closed interval `[lo, hi]` with `0 < lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn new(lo: f64, hi: f64) -> Result<Range> {
        if !(lo > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi) {
            bail!("invalid range {lo},{hi}: need 0 < min <= max");
        }
        Ok(Range { lo, hi })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            rng.random_range(self.lo..=self.hi)
        }
    }
}

impl std::str::FromStr for Range {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Range> {
        let (a, b) = s.split_once(',').unwrap_or((s, s));
        Range::new(a.trim().parse()?, b.trim().parse()?)
    }
}

/// Draws `n` items with sizes (radius, or both edges) from `size` and masses
/// from `mass`, uniformly.
pub fn generate_instance(kind: Kind, n: usize, size: Range, mass: Range, seed: u64) -> Result<Instance> {
    if n == 0 {
        bail!("item count must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items = match kind {
        Kind::Circles => Items::Circles(
            (0..n)
                .map(|_| {
                    let r = size.sample(&mut rng);
                    CircleItem {
                        radius: r,
                        mass: mass.sample(&mut rng),
                    }
                })
                .collect(),
        ),
        Kind::Rects => Items::Rects(
            (0..n)
                .map(|_| {
                    let a = size.sample(&mut rng);
                    let b = size.sample(&mut rng);
                    RectItem {
                        edge_a: a,
                        edge_b: b,
                        mass: mass.sample(&mut rng),
                    }
                })
                .collect(),
        ),
    };
    Ok(Instance {
        name: Some(format!("{kind}-{n}-s{seed}")),
        seed: Some(seed),
        items,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let s = Range::new(5.0, 15.0).unwrap();
        let m = Range::new(1.0, 10.0).unwrap();
        let a = generate_instance(Kind::Circles, 10, s, m, 42).unwrap();
        let b = generate_instance(Kind::Circles, 10, s, m, 42).unwrap();
        assert_eq!(a.to_string_pretty(), b.to_string_pretty());
        assert_ne!(a, generate_instance(Kind::Circles, 10, s, m, 43).unwrap());
    }

    #[test]
    fn in_range() {
        let r = Range::new(1.0, 10.0).unwrap();
        let inst = generate_instance(Kind::Rects, 40, r, r, 7).unwrap();
        let Items::Rects(items) = inst.items else { panic!() };
        assert_eq!(items.len(), 40);
        for it in items {
            for v in [it.edge_a, it.edge_b, it.mass] {
                assert!((1.0..=10.0).contains(&v));
            }
        }
    }

    #[test]
    fn rejects() {
        let r = Range::new(1.0, 2.0).unwrap();
        assert!(generate_instance(Kind::Circles, 0, r, r, 1).is_err());
        assert!(Range::new(3.0, 2.0).is_err());
        assert!(Range::new(0.0, 2.0).is_err());
        assert!("2,1".parse::<Range>().is_err());
        assert_eq!("4".parse::<Range>().unwrap(), Range { lo: 4.0, hi: 4.0 });
    }
}
