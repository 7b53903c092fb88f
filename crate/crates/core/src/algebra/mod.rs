//! Exact linear algebra over F_p and chain-complex homology.

mod complex;
mod echelon;
mod module;
mod scalar;
mod sparse;

pub use complex::{Cell, ChainComplex, Homology, Piece};
pub use echelon::{echelonize, echelonize_f2, echelonize_generic, rank, reduce_against, rref, Echelon};
pub use module::{BasisElt, WGModule, Window};
pub use scalar::{binom2, Prime, Scalar};
pub use sparse::SparseVec;
