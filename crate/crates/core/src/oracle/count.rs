//! Exhaustive enumeration of morphism spaces: cone-class counting and
//! brute-force automorphism counts.

use super::homology::homology_class;
use super::homspace::{hom_space, HomSpace};
use super::model::cone_parts;
use crate::category::object::ObjClass;
use crate::error::{HallError, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Default cap on the number of morphisms enumerated in one call.
pub const DEFAULT_CEILING: u64 = 1_000_000;

fn enumeration_size(q: u64, dim: usize, ceiling: u64) -> Result<u64> {
    let mut total: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_mul(q as u128);
        if total > ceiling as u128 {
            return Err(HallError::EnumerationTooLarge {
                size: total,
                ceiling,
            });
        }
    }
    Ok(total as u64)
}

fn coords_of(mut index: u64, q: u64, dim: usize) -> Vec<u64> {
    let mut coords = vec![0u64; dim];
    for c in coords.iter_mut() {
        *c = index % q;
        index /= q;
    }
    coords
}

fn cone_class_of(hs: &HomSpace, coords: &[u64]) -> ObjClass {
    let mat = hs.element(coords);
    let cone = cone_parts(&hs.src, &hs.tgt, &mat, &hs.src_class, &hs.tgt_class);
    homology_class(&cone).expect("cone of finite objects has finite homology")
}

/// The full distribution of cone classes over `Hom(Y, Z)`: for every
/// isomorphism class `X` the exact number of morphisms whose cone is `X`.
/// The counts sum to `q^dim Hom(Y, Z)`.
pub fn cone_class_distribution(
    y: &ObjClass,
    z: &ObjClass,
    q: u64,
    ceiling: u64,
) -> Result<BTreeMap<ObjClass, u64>> {
    let hs = hom_space(y, z, 0, q)?;
    let total = enumeration_size(q, hs.dim(), ceiling)?;
    const PAR_THRESHOLD: u64 = 4096;
    let map = if total < PAR_THRESHOLD {
        let mut map = BTreeMap::new();
        for idx in 0..total {
            let class = cone_class_of(&hs, &coords_of(idx, q, hs.dim()));
            *map.entry(class).or_insert(0u64) += 1;
        }
        map
    } else {
        (0..total)
            .into_par_iter()
            .fold(BTreeMap::new, |mut map: BTreeMap<ObjClass, u64>, idx| {
                let class = cone_class_of(&hs, &coords_of(idx, q, hs.dim()));
                *map.entry(class).or_insert(0) += 1;
                map
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    };
    Ok(map)
}

/// `|[Y, Z]_X|`: the number of morphisms from `Y` to `Z` with cone
/// isomorphic to `X`.
pub fn count_cone_class(
    y: &ObjClass,
    z: &ObjClass,
    x: &ObjClass,
    q: u64,
    ceiling: u64,
) -> Result<u64> {
    Ok(cone_class_distribution(y, z, q, ceiling)?
        .get(x)
        .copied()
        .unwrap_or(0))
}

/// `|Aut(X)|` by full enumeration of the endomorphism space; a morphism is
/// invertible exactly when its cone has vanishing homology.
pub fn brute_aut_count(x: &ObjClass, q: u64, ceiling: u64) -> Result<u64> {
    let hs = hom_space(x, x, 0, q)?;
    let total = enumeration_size(q, hs.dim(), ceiling)?;
    let zero = ObjClass::zero(x.dim_param());
    let mut count = 0u64;
    for idx in 0..total {
        if cone_class_of(&hs, &coords_of(idx, q, hs.dim())) == zero {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::homs::hom_dim_t;
    use crate::category::object::SphereDim;

    fn d3() -> SphereDim {
        SphereDim(3)
    }

    #[test]
    fn split_and_zero_cones() {
        let d = d3();
        let s = ObjClass::simple(d);
        // only morphism S^{-1} -> 0 is zero, with cone S
        let y = s.shifted(-1);
        let z = ObjClass::zero(d);
        assert_eq!(count_cone_class(&y, &z, &s, 2, 100).unwrap(), 1);
        // f = 0 : S -> S has split cone ΣS ⊕ S
        let split = s.shifted(1).plus(&s);
        let dist = cone_class_distribution(&s, &s, 2, 100).unwrap();
        assert_eq!(dist.get(&split), Some(&1));
        // the q-1 isos have zero cone
        assert_eq!(dist.get(&ObjClass::zero(d)), Some(&1));
    }

    #[test]
    fn distribution_partitions_hom_space() {
        let d = d3();
        let s = ObjClass::simple(d);
        let z = s.plus(&s.shifted(-1));
        let dist = cone_class_distribution(&s, &z, 2, 1000).unwrap();
        let total: u64 = dist.values().sum();
        assert_eq!(total, 2u64.pow(hom_dim_t(&s, &z, 0) as u32));
        // maps (a, 0) with a invertible land on the complementary summand
        assert_eq!(dist.get(&s.shifted(-1)), Some(&1));
    }

    #[test]
    fn enumeration_ceiling() {
        let d = d3();
        let s4 = ObjClass::new(
            d,
            vec![crate::category::object::IndecLabel::new(0, 1); 4],
        )
        .unwrap();
        let err = cone_class_distribution(&s4, &s4, 2, 100).unwrap_err();
        assert!(matches!(err, HallError::EnumerationTooLarge { .. }));
    }

    #[test]
    fn brute_aut_matches_formula_small() {
        use crate::category::homs::aut_count;
        use num::bigint::BigInt;
        for d in [3, 1, -1] {
            let dim = SphereDim(d);
            for x in crate::category::object::census(dim, (-1, 1), 2) {
                let brute = brute_aut_count(&x, 2, 100_000).unwrap();
                assert_eq!(
                    BigInt::from(brute),
                    aut_count(&x, 2),
                    "d = {d}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn cone_euler_characteristic() {
        // χ(cone f) = χ(ΣY) + χ(Z) for every f in a small sweep
        let d = d3();
        let y = ObjClass::indec(d, 0, 2);
        let z = ObjClass::simple(d).plus(&ObjClass::sphere(d, 2));
        let dist = cone_class_distribution(&y, &z, 3, 10_000).unwrap();
        let expect = y.shifted(1).euler_char() + z.euler_char();
        for cls in dist.keys() {
            assert_eq!(cls.euler_char(), expect, "class {cls}");
        }
    }
}
