//! Non-extreme-value copula families: equidistant shuffles of M, checkerboards,
//! the truncated rotation-kernel copula and finite mixtures.

mod checkerboard;
mod mixture;
mod rotation;
mod shuffle;

pub use checkerboard::Checkerboard;
pub use mixture::Mixture;
pub use rotation::{overlap, rational_offsets, RotationCopula};
pub use shuffle::Shuffle;
