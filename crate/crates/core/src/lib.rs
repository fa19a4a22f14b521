//! Constructive placement and order search for weighted item layouts.
//!
//! Items (circles or axis-aligned rectangles, each carrying a mass) are placed
//! one at a time in a given order. Every new item goes to the position that
//! keeps the enveloping circle, centered on the system's mass center, as small
//! as possible. Because the final layout depends on the placement order, the
//! [`aco`] module searches over orders with an ant colony (plain Ant System or
//! Max-Min Ant System), and [`oracle`] enumerates every order for small
//! instances.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aco;
mod error;
pub mod geometry;
pub mod layout;
pub mod opt_circle;
pub mod opt_rect;
pub mod oracle;

pub use error::{Error, Result};
pub use geometry::{CircleItem, Orientation, Point, RectItem, RectPlacement};
pub use layout::{Layout, Placed};
