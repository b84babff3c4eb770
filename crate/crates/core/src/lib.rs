//! Exact combinatorial engine for two permutahedral models of the E2 operad:
//! the Milgram-style complex glued from permutahedra along faces, and the
//! normalized cactus complex glued from the same permutahedra through their
//! cactus cell decompositions.

pub mod complex;
pub mod error;
pub mod geometry;
pub mod gf2;
pub mod homology;
pub mod lp;
pub mod operad;
pub mod poset;
pub mod seq;
pub mod snf;
pub mod tree;

pub use complex::CellComplex;
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use homology::HomologySummary;
pub use operad::{CactSequence, FormalSum};
pub use poset::FinitePoset;
pub use seq::{NrSequence, Unshuffle};
pub use snf::IntMatrix;
pub use tree::BWTree;
