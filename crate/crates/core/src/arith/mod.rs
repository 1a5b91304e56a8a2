//! Exact scalar and linear-algebra substrate.

pub mod fp;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rat;
pub mod ratfun;

pub use fp::{Fp, ScalarField};
pub use laurent::Laurent;
pub use matrix::FieldMatrix;
pub use poly::QPoly;
pub use rat::Rat;
pub use ratfun::RatFunc;
