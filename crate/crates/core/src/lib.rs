//! Exact computations with Fox pairings and generalized Dehn twists in truncated completed
//! group algebras of free groups.

pub mod automorphism;
pub mod derived;
pub mod error;
pub mod figure_eight;
pub mod group_algebra;
pub mod hopf;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod pairing;
pub mod random;
pub mod report;
pub mod scalar;
pub mod series;
pub mod surfaces;
pub mod symplectic;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use group_algebra::{GroupAlgebraElement, Side};
pub use scalar::Rational;
pub use series::{Monomial, Series};
pub use word::{Alphabet, GroupWord};
