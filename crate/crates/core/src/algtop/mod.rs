//! Linear algebra over Euclidean rings, chain complexes and homology of
//! cubical and simplicial sets, and edge-path presentations of `π_1`.

mod cells;
mod chain;
mod matrix;
mod pi1;

pub use cells::{cubical_chains, simplicial_chains};
pub use chain::{ChainComplex, ChainError, Homology, HomologyGroup, HomologyPresentation};
pub use matrix::{smith_normal_form, Matrix, SmithForm};
pub use pi1::{pi1_presentation, raw_presentation, GroupPresentation, Letter, Pi1Error, Recognized};
