//! Exhaustive search over placement orders for small instances.

use alloc::vec::Vec;

use crate::aco::{Decoder, Executor, Sequential};
use crate::error::{Error, Result};
use crate::layout::Layout;

/// Largest instance the oracle accepts unless told otherwise (8! orders).
pub const DEFAULT_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<P> {
    pub best_order: Vec<usize>,
    pub best_envelope: f64,
    pub best_layout: Layout<P>,
    pub orders_evaluated: usize,
    /// Every order with its envelope, in lexicographic order, when requested.
    pub full_distribution: Option<Vec<(Vec<usize>, f64)>>,
}

/// Advances `perm` to the next permutation in lexicographic order; returns
/// false (leaving `perm` sorted descending) once the last one was reached.
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(pivot) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let successor = perm.iter().rposition(|&x| x > perm[pivot]).unwrap_or(pivot);
    perm.swap(pivot, successor);
    perm[pivot + 1..].reverse();
    true
}

struct Chunk<P> {
    best: Option<(Vec<usize>, Layout<P>)>,
    evaluated: usize,
    distribution: Option<Vec<(Vec<usize>, f64)>>,
}

/// Decodes every permutation of the items and returns the one with the
/// smallest enveloping radius. Exact ties go to the lexicographically
/// smallest order.
pub fn exhaustive_best_order<D: Decoder>(
    decoder: &D,
    limit: usize,
    keep_distribution: bool,
) -> Result<OracleResult<D::Placement>> {
    exhaustive_best_order_with(decoder, limit, keep_distribution, &Sequential)
}

/// As [`exhaustive_best_order`], fanning out over the first item of the
/// order. The result does not depend on the executor.
pub fn exhaustive_best_order_with<D: Decoder, E: Executor>(
    decoder: &D,
    limit: usize,
    keep_distribution: bool,
    executor: &E,
) -> Result<OracleResult<D::Placement>> {
    let n = decoder.item_count();
    if n > limit {
        return Err(Error::InstanceTooLarge { n, limit });
    }
    if n == 0 {
        return Err(Error::EmptyLayout);
    }

    let chunks = executor.map(n, |first| -> Result<Chunk<D::Placement>> {
        let mut order: Vec<usize> = core::iter::once(first).chain((0..n).filter(|&i| i != first)).collect();
        let mut chunk = Chunk {
            best: None,
            evaluated: 0,
            distribution: keep_distribution.then(Vec::new),
        };
        loop {
            let layout = decoder.decode(&order)?;
            chunk.evaluated += 1;
            if let Some(dist) = chunk.distribution.as_mut() {
                dist.push((order.clone(), layout.envelope_radius));
            }
            if chunk
                .best
                .as_ref()
                .is_none_or(|(_, b)| layout.envelope_radius < b.envelope_radius)
            {
                chunk.best = Some((order.clone(), layout));
            }
            if !next_permutation(&mut order[1..]) {
                break;
            }
        }
        Ok(chunk)
    });

    let mut best: Option<(Vec<usize>, Layout<D::Placement>)> = None;
    let mut evaluated = 0;
    let mut distribution = keep_distribution.then(Vec::new);
    for chunk in chunks {
        let chunk = chunk?;
        evaluated += chunk.evaluated;
        if let (Some(all), Some(part)) = (distribution.as_mut(), chunk.distribution) {
            all.extend(part);
        }
        if let Some((order, layout)) = chunk.best {
            if best
                .as_ref()
                .is_none_or(|(_, b)| layout.envelope_radius < b.envelope_radius)
            {
                best = Some((order, layout));
            }
        }
    }
    let (best_order, best_layout) = best.ok_or(Error::EmptyLayout)?;
    Ok(OracleResult {
        best_envelope: best_layout.envelope_radius,
        best_order,
        best_layout,
        orders_evaluated: evaluated,
        full_distribution: distribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aco::CircleDecoder;
    use crate::geometry::CircleItem;
    use alloc::vec;

    #[test]
    fn permutations_are_lexicographic() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert!(!next_permutation(&mut []));
    }

    #[test]
    fn single_item() {
        let items = [CircleItem::new(3.0, 2.0).unwrap()];
        let res = exhaustive_best_order(&CircleDecoder(&items), DEFAULT_LIMIT, false).unwrap();
        assert_eq!(res.best_envelope, 3.0);
        assert_eq!(res.orders_evaluated, 1);
    }

    #[test]
    fn too_large() {
        let items = vec![CircleItem::new(1.0, 1.0).unwrap(); 9];
        assert_eq!(
            exhaustive_best_order(&CircleDecoder(&items), DEFAULT_LIMIT, false).unwrap_err(),
            Error::InstanceTooLarge { n: 9, limit: 8 }
        );
    }

    #[test]
    fn distribution_is_complete_and_ordered() {
        let items = [
            CircleItem::new(1.0, 1.0).unwrap(),
            CircleItem::new(2.0, 3.0).unwrap(),
            CircleItem::new(1.5, 1.0).unwrap(),
            CircleItem::new(0.5, 4.0).unwrap(),
        ];
        let res = exhaustive_best_order(&CircleDecoder(&items), DEFAULT_LIMIT, true).unwrap();
        let dist = res.full_distribution.unwrap();
        assert_eq!(res.orders_evaluated, 24);
        assert_eq!(dist.len(), 24);
        assert!(dist.windows(2).all(|w| w[0].0 < w[1].0));
        let min = dist.iter().map(|d| d.1).fold(f64::INFINITY, f64::min);
        assert_eq!(res.best_envelope, min);
        let first_min = dist.iter().find(|d| d.1 == min).unwrap();
        assert_eq!(res.best_order, first_min.0);
    }
}
