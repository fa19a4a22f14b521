use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An operation that needs at least one placed item got none.
    EmptyLayout,
    /// Two circles with coincident centers were used to build tangent positions.
    DegeneratePair,
    /// An item had a non-positive or non-finite size or mass.
    InvalidItem {
        index: usize,
        reason: &'static str,
    },
    /// The placement order is not a permutation of the item indices.
    InvalidOrder,
    /// Transition sampling was asked to choose from an empty set.
    EmptyAllowedSet,
    /// A transition weight was non-finite, or all weights vanished.
    NonFiniteWeight,
    /// A tour length handed to a pheromone update was not strictly positive.
    NonPositiveTourLength(f64),
    /// A bounded pheromone update was requested on an unbounded model.
    ClampingDisabled,
    InvalidParams(&'static str),
    InstanceTooLarge {
        n: usize,
        limit: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyLayout => f.write_str("empty layout"),
            Error::DegeneratePair => f.write_str("degenerate pair: coincident centers"),
            Error::InvalidItem { index, reason } => write!(f, "item {}: {}", index + 1, reason),
            Error::InvalidOrder => f.write_str("order is not a permutation of the items"),
            Error::EmptyAllowedSet => f.write_str("no unplaced items left to choose from"),
            Error::NonFiniteWeight => f.write_str("transition weights are not finite and positive"),
            Error::NonPositiveTourLength(l) => write!(f, "tour length must be positive, got {l}"),
            Error::ClampingDisabled => f.write_str("pheromone model has no trail bounds"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::InstanceTooLarge { n, limit } => {
                write!(f, "instance too large for oracle: {n} items, limit {limit}")
            }
        }
    }
}

impl core::error::Error for Error {}
