//! Small cancellation over free products: normal forms, labelled graphs
//! and pieces, relator generation, Dehn reduction, van Kampen diagrams
//! and Cayley ball geometry.

pub mod cayley;
pub mod dehn;
pub mod error;
pub mod frac;
pub mod freeprod;
pub mod gensc;
pub mod io;
pub mod lgraph;
pub mod vkdiag;

pub use dehn::{DehnTrace, Presentation, WordProblem};
pub use error::{Error, Result};
pub use frac::{parse_frac, Frac};
pub use freeprod::{FactorOracle, FactorSpec, FreeProduct, Letter, NormalForm, Word};
pub use lgraph::{Edge, LabelledGraph};
