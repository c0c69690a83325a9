//! Labelled graphs, their cycles and pieces, bounded completions and the
//! C'*(λ) checker.

mod completion;
mod cstar;
mod cycles;
mod graph;
mod pieces;
pub mod suffix;

pub use completion::{bounded_completion, Collapse, CompletionSlice, VertexKey};
pub use cstar::{check_cstar, check_cstar_with, default_radius, CstarOptions, CstarReport, CstarStatus, WitnessOut};
pub use cycles::{canonical_cycle_label, factor_subpath_bound, girth, simple_cycles, simple_cycles_capped, Cycle, FactorSubpath};
pub use graph::{Dart, Edge, LabelledGraph};
pub use pieces::{cycle_longest_piece, longest_piece, PieceSearch, PieceWitness, SearchOutcome};
