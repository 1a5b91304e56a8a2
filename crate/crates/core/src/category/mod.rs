//! The object layer: isomorphism classes, the homology functor `F` into
//! graded `k[t]`-modules, and closed-form hom/ext/automorphism counts.

pub mod graded;
pub mod homs;
pub mod object;

pub use graded::{decompose, f_image, GradedTModule};
pub use homs::{aut_count, hom_dim_t, neg_hom_bound};
pub use object::{census, IndecLabel, ObjClass, SphereDim};
