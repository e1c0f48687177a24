//! Exact-rational toolkit for a pair of sequence-space norms and their
//! extremal structure: a difference-sup norm with permissible index sets,
//! its dual-ball extreme points with an LP oracle, Lorentz rearrangement
//! norms, and signed-permutation isometry scans.

pub mod dualspace;
pub mod error;
pub mod lorentz;
pub mod polytope;
pub mod rational;
pub mod sampling;
pub mod schreier;
pub mod sparse;
pub mod vnorm;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sparse::{IndexSet, SparseVec};
