//! Hom-space dimensions in the triangulated category, automorphism counts
//! and vanishing bounds, all computed from labels through the homology
//! functor.
//!
//! The dimension formula splits a triangulated hom space into a graded part
//! and an ext part:
//!
//! `dim Hom(X, Σ^k Y) = hom_gr(FX, F(Σ^k Y)) + ext^1(F(ΣX), F(Σ^k Y))`.
//!
//! These dimensions only depend on the string combinatorics, not on the
//! ground field, so they are evaluated over `F_2` internally.

use super::graded::{ext1_dim_graded, f_image, hom_dim_graded};
use super::object::ObjClass;
use crate::arith::fp::Fp;
use num::bigint::BigInt;
use num::One;
use std::collections::HashMap;

/// `dim_k Hom(X, Σ^k Y)`.
pub fn hom_dim_t(x: &ObjClass, y: &ObjClass, k: i32) -> usize {
    assert_eq!(x.dim_param(), y.dim_param(), "dim mismatch");
    if x.is_zero() || y.is_zero() {
        return 0;
    }
    let proto = Fp::zero(2);
    let yk = y.shifted(k);
    let fx = f_image(x, &proto);
    let fy = f_image(&yk, &proto);
    let fx1 = f_image(&x.shifted(1), &proto);
    hom_dim_graded(&fx, &fy) + ext1_dim_graded(&fx1, &fy)
}

/// `|Aut(X)|` over `F_q`.
///
/// The endomorphism ring modulo its radical is a product of matrix algebras
/// over `k`, one factor per distinct indecomposable label, so the unit count
/// is `q^(e - Σ m_c^2) · Π |GL_{m_c}(F_q)|` with `e = dim End(X)`.
pub fn aut_count(x: &ObjClass, q: u64) -> BigInt {
    if x.is_zero() {
        return BigInt::one();
    }
    let e = hom_dim_t(x, x, 0);
    let mut mult: HashMap<_, u64> = HashMap::new();
    for l in x.labels() {
        *mult.entry(*l).or_insert(0) += 1;
    }
    let qb = BigInt::from(q);
    let mut sq_sum = 0u64;
    let mut gl = BigInt::one();
    for &m in mult.values() {
        sq_sum += m * m;
        // |GL_m(F_q)| = Π_{i<m} (q^m - q^i)
        let qm = qb.pow(m as u32);
        for i in 0..m {
            gl *= &qm - qb.pow(i as u32);
        }
    }
    assert!(e as u64 >= sq_sum, "End dimension below semisimple rank");
    qb.pow((e as u64 - sq_sum) as u32) * gl
}

/// A bound `i0` with `Hom(X, Σ^{-i} Y) = 0` for every `i >= i0`, derived
/// from the homology degree supports: homs and ext shifts vanish once the
/// supports are out of reach of one `t`-string. The returned bound is
/// conservative; the trailing sweep turns a wrong derivation into a panic
/// instead of a silent miscount.
pub fn neg_hom_bound(x: &ObjClass, y: &ObjClass) -> u32 {
    assert_eq!(x.dim_param(), y.dim_param(), "dim mismatch");
    let (Some((xlo, xhi)), Some((ylo, yhi))) = (x.support(), y.support()) else {
        return 0;
    };
    let delta = x.dim_param().t_degree().unsigned_abs();
    let reach = delta * x.max_len().max(y.max_len());
    let spread = (xhi - ylo).max(yhi - xlo).max(0) as u32;
    let bound = spread + reach + 2;
    for i in bound..=bound + delta + 2 {
        assert_eq!(
            hom_dim_t(x, y, -(i as i32)),
            0,
            "nonzero hom survived past the vanishing bound"
        );
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::object::{census, SphereDim};

    #[test]
    fn sphere_self_homs_d3() {
        let d = SphereDim(3);
        let s = ObjClass::simple(d);
        for k in -6..=6 {
            let expect = usize::from(k == 0 || k == 3);
            assert_eq!(hom_dim_t(&s, &s, k), expect, "k = {k}");
        }
    }

    #[test]
    fn sphere_self_homs_other_d() {
        for d in [4, 2, 1, 0, -1, -2] {
            let dim = SphereDim(d);
            let s = ObjClass::simple(dim);
            for k in -7..=7 {
                let expect = if d == 0 {
                    usize::from(k == 0)
                } else {
                    usize::from(k == 0 || k == d)
                };
                assert_eq!(hom_dim_t(&s, &s, k), expect, "d = {d}, k = {k}");
            }
        }
    }

    #[test]
    fn string_end_is_one_dimensional() {
        let d = SphereDim(3);
        let g2 = ObjClass::indec(d, 0, 2);
        assert_eq!(hom_dim_t(&g2, &g2, 0), 1);
    }

    #[test]
    fn suspension_invariance() {
        let d = SphereDim(3);
        let x = ObjClass::indec(d, 0, 2).plus(&ObjClass::sphere(d, -1));
        let y = ObjClass::indec(d, 1, 3);
        for a in [-3, 2, 5] {
            for k in -4..=4 {
                assert_eq!(
                    hom_dim_t(&x, &y, k),
                    hom_dim_t(&x.shifted(a), &y.shifted(a), k)
                );
            }
        }
    }

    #[test]
    fn aut_examples() {
        let d = SphereDim(3);
        let s = ObjClass::simple(d);
        assert_eq!(aut_count(&s, 5), BigInt::from(4));
        let ss = s.plus(&s);
        // |GL_2(F_2)| = 6
        assert_eq!(aut_count(&ss, 2), BigInt::from(6));
        assert_eq!(aut_count(&ObjClass::zero(d), 2), BigInt::one());
        // S ⊕ Σ^{-3}S: End is 3-dimensional with radical of dim 1
        let m = s.plus(&ObjClass::sphere(d, -3));
        assert_eq!(aut_count(&m, 2), BigInt::from(2));
        assert_eq!(aut_count(&m, 3), BigInt::from(3 * 2 * 2));
    }

    #[test]
    fn neg_bound_postcondition() {
        let d = SphereDim(3);
        let s = ObjClass::simple(d);
        let y = ObjClass::sphere(d, -5);
        let b = neg_hom_bound(&s, &y);
        assert!(b >= 6);
        for i in b..b + 4 {
            assert_eq!(hom_dim_t(&s, &y, -(i as i32)), 0);
        }
        assert_eq!(neg_hom_bound(&ObjClass::zero(d), &s), 0);
        // bound is valid across a small census
        for x in census(d, (-2, 2), 2) {
            for y in census(d, (-2, 2), 2) {
                let b = neg_hom_bound(&x, &y);
                for i in b..b + 3 {
                    assert_eq!(hom_dim_t(&x, &y, -(i as i32)), 0);
                }
            }
        }
    }
}
