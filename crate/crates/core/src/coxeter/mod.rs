//! Coxeter matrices, systems and the word problem.

mod frame;
pub mod genset;
pub mod matrix;
pub mod system;
pub mod tits;
pub mod triangle;

/// Index of a generator in declaration order.
pub type Gen = u8;

pub(crate) use frame::Frame;
pub use genset::GenSet;
pub use matrix::{Bond, CoxeterMatrix, MAX_RANK};
pub use system::{CoxeterSystem, GroupElement, RootVector};
pub use tits::{tits_is_reduced, DEFAULT_TITS_BOUND};
pub use triangle::{triangle_scan, TriangleReport};
