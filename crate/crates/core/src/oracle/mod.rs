//! Brute-force ground truth over `F_q`: explicit semifree dg modules,
//! enumeration of derived morphisms, mapping cones, and cone-class counts.

pub mod count;
pub mod homology;
pub mod homspace;
pub mod model;

pub use count::{brute_aut_count, cone_class_distribution, count_cone_class, DEFAULT_CEILING};
pub use homology::homology_class;
pub use homspace::{hom_basis, HomSpace};
pub use model::{cone_of, semifree_model, DgMorphism, SemifreeDgModule, TPoly};
