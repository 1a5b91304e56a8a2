//! Exact computation in the Hall algebra of the algebraic triangulated
//! category generated by a spherical object of dimension `d`.
//!
//! The crate is organised in layers:
//!
//! * [`arith`] — exact scalars: big rationals, rational functions in `v`
//!   (with `v^2 = q`), prime fields, dense matrices, Laurent polynomials.
//! * [`category`] — the object layer: isomorphism classes, the homology
//!   functor into graded `k[t]`-modules, closed-form hom/ext dimensions
//!   and automorphism counts.
//! * [`oracle`] — a brute-force ground truth over `F_q`: semifree dg
//!   modules, enumeration of derived morphisms, mapping cones and cone
//!   class counting.
//! * [`hall`] — Hall numbers, the Hall product, associativity checks and
//!   the expression of arbitrary classes in sphere generators.
//! * [`present`] — generator/relation tables for every `d`, the evaluation
//!   map into the Hall algebra, basis rank checks and the torus character.
//! * [`io`] — wire formats, the result cache and machine-readable reports
//!   backing the `spherahall` command line tool.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod arith;
pub mod category;
pub mod error;
pub mod hall;
pub mod io;
pub mod oracle;
pub mod present;

pub use error::{HallError, Result};
