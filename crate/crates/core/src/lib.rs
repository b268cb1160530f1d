//! Finite cubical homotopy theory: cubical and simplicial sets, homology,
//! the W-construction on lattices and the combinatorics of higher homotopy
//! operations.

pub mod algtop;
pub mod cubset;
pub mod latt;
pub mod monoidal;
pub mod scalar;
pub mod simpl;
pub mod toda;
pub mod wcat;

use num_bigint::BigInt;

pub use scalar::{Gf2, Scalar};

pub type IntMatrix = algtop::Matrix<BigInt>;
pub type Mod2Matrix = algtop::Matrix<Gf2>;
pub type IntChainComplex = algtop::ChainComplex<BigInt>;
pub type Mod2ChainComplex = algtop::ChainComplex<Gf2>;
pub type IntHomology = algtop::Homology<BigInt>;
