//! Cayley-ball geometry of G(Γ): spheres, geodesics, cosets, the coned-off
//! overlay and the path builder for one-endedness.

mod ball;
mod coned;
mod distform;
mod geodesic;
mod morse;
mod one_ended;
mod stable;

pub use ball::{BallElement, BallExport, BallIndex, BallOptions};
pub use coned::{ConeExport, ConedOverlay};
pub use distform::{distance_formula_pairs, distance_formula_report, sample_pairs, DistformOptions, DistformPair, DistformReport};
pub use geodesic::UNREACHED;
pub use morse::{morse_probe, MorseReport};
pub use one_ended::{erase_loops, one_ended_path, OneEndedOptions, OneEndedPath, OneEndedStats};
pub use stable::{relative_stable_points, RelStableParams, StableReport};

#[cfg(test)]
pub(crate) mod tests;
