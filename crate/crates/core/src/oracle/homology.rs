//! Exact homology of semifree dg modules, as a graded `t`-module, and the
//! classification of the result.
//!
//! For `d != 1` the graded pieces of a semifree module are finite
//! dimensional (each generator contributes at most one basis element per
//! degree), so homology is plain linear algebra inside a degree window; the
//! window is trusted when the module records one (models and cones do) and
//! self-checked through margins otherwise.
//!
//! For `d = 1` the variable `t` has degree zero and graded pieces are
//! infinite. Homology is computed on the quotient by `t^L`: by universal
//! coefficients that mixes `H^i` with the torsion of `H^{i+1}`, and the mix
//! is unwound degree by degree from the top. Free summands show up as
//! Jordan blocks of the maximal size `L` that keep growing with `L`, which
//! is how infinite total homology is detected.

use super::model::SemifreeDgModule;
use crate::arith::fp::{Fp, ScalarField};
use crate::arith::matrix::{FieldMatrix, Quotient};
use crate::category::graded::{decompose, GradedTModule};
use crate::category::object::{IndecLabel, ObjClass};
use crate::error::{HallError, Result};
use std::collections::BTreeMap;

type Layout = BTreeMap<(i32, u8), Vec<(usize, u32)>>;

/// Basis elements `t^m g_j` per (degree, branch). For `d != 1` the powers
/// are forced by degrees; for `d = 1` they run below `cap`.
fn layout(m: &SemifreeDgModule, lo: i32, hi: i32, cap: Option<u32>) -> Layout {
    let delta = m.dim.t_degree();
    let mut out: Layout = BTreeMap::new();
    for (j, g) in m.gens.iter().enumerate() {
        match cap {
            Some(l) => {
                // d = 1: every power sits in the generator's own degree
                if g.deg >= lo && g.deg <= hi {
                    for pow in 0..l {
                        out.entry((g.deg, g.branch)).or_default().push((j, pow));
                    }
                }
            }
            None => {
                let max_pow = if m.dim.d() == 0 { 0 } else { i32::MAX };
                let mut pow = 0i32;
                loop {
                    let deg = g.deg + pow * delta;
                    if (delta > 0 && deg > hi) || (delta < 0 && deg < lo) || pow > max_pow {
                        break;
                    }
                    if deg >= lo && deg <= hi {
                        out.entry((deg, g.branch)).or_default().push((j, pow as u32));
                    }
                    pow += 1;
                }
            }
        }
    }
    out
}

fn position(layout: &Layout, key: (i32, u8), elem: (usize, u32)) -> Option<usize> {
    layout.get(&key)?.iter().position(|&e| e == elem)
}

/// The differential out of `(deg, branch)` on the expanded basis. Entries
/// with target power at or above `cap` are dropped (the `d = 1` quotient by
/// `t^cap`); for `d != 1` no truncation ever applies.
fn d_matrix(
    m: &SemifreeDgModule,
    lay: &Layout,
    deg: i32,
    branch: u8,
    cap: Option<u32>,
) -> FieldMatrix<Fp> {
    let q = m.q;
    let proto = Fp::zero(q);
    let delta = m.dim.t_degree();
    let odd_t = delta.rem_euclid(2) == 1;
    let src = lay.get(&(deg, branch)).map_or(&[][..], Vec::as_slice);
    let tgt = lay.get(&(deg + 1, branch)).map_or(&[][..], Vec::as_slice);
    let mut out = FieldMatrix::zeros(tgt.len(), src.len(), &proto);
    for (col, &(j, pow)) in src.iter().enumerate() {
        for i in 0..m.gens.len() {
            let p = m.diff.at(i, j);
            for (mp, c) in p.iter_terms() {
                let tp = pow + mp;
                if cap.is_some_and(|l| tp >= l) {
                    continue;
                }
                let Some(row) = position(lay, (deg + 1, branch), (i, tp)) else {
                    continue;
                };
                let mut coeff = c % q;
                if odd_t && pow % 2 == 1 {
                    coeff = (q - coeff) % q;
                }
                let cur = *out.at(row, col);
                *out.at_mut(row, col) = cur.add(&Fp::new(coeff as i64, q));
            }
        }
    }
    out
}

struct DegPiece {
    quot: Quotient<Fp>,
}

/// Homology with its `t`-action over a degree window, for any `d`; the
/// caller chooses the window and the `d = 1` power cap.
fn homology_over_window(
    m: &SemifreeDgModule,
    lo: i32,
    hi: i32,
    cap: Option<u32>,
) -> GradedTModule<Fp> {
    let q = m.q;
    let proto = Fp::zero(q);
    let delta = m.dim.t_degree();
    let lay = layout(m, lo - 1, hi + 1, cap);
    let mut pieces: BTreeMap<(i32, u8), DegPiece> = BTreeMap::new();
    let mut dims: BTreeMap<(i32, u8), usize> = BTreeMap::new();
    let keys: Vec<(i32, u8)> = lay
        .keys()
        .copied()
        .filter(|&(deg, _)| deg >= lo && deg <= hi)
        .collect();
    for &(deg, branch) in &keys {
        let amb = lay[&(deg, branch)].len();
        let d_out = d_matrix(m, &lay, deg, branch, cap);
        let d_in = d_matrix(m, &lay, deg - 1, branch, cap);
        let cycles = d_out.nullspace();
        let boundaries: Vec<Vec<Fp>> = (0..d_in.cols()).map(|j| d_in.col(j)).collect();
        let quot = Quotient::new(&cycles, &boundaries, amb, &proto);
        if quot.dim() > 0 {
            dims.insert((deg, branch), quot.dim());
        }
        pieces.insert((deg, branch), DegPiece { quot });
    }
    let mut t = BTreeMap::new();
    if m.dim.d() != 0 {
        for &(deg, branch) in &keys {
            debug_assert_eq!(branch, 1);
            let here = dims.get(&(deg, branch)).copied().unwrap_or(0);
            let there = dims.get(&(deg + delta, branch)).copied().unwrap_or(0);
            if here == 0 || there == 0 {
                continue;
            }
            let src_basis = &lay[&(deg, branch)];
            let tgt_key = (deg + delta, branch);
            let tgt_len = lay[&tgt_key].len();
            let piece = &pieces[&(deg, branch)];
            let mut mat = FieldMatrix::zeros(there, here, &proto);
            for (col, rep) in piece.quot.reps().iter().enumerate() {
                // multiply the representative by t on the basis level
                let mut tv = vec![proto; tgt_len];
                for (k, coeff) in rep.iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    let (j, pow) = src_basis[k];
                    if cap.is_some_and(|l| pow + 1 >= l) {
                        continue;
                    }
                    if let Some(idx) = position(&lay, tgt_key, (j, pow + 1)) {
                        tv[idx] = tv[idx].add(coeff);
                    }
                }
                let coords = pieces[&tgt_key].quot.coords(&tv);
                for (row, c) in coords.into_iter().enumerate() {
                    *mat.at_mut(row, col) = c;
                }
            }
            t.insert(deg, mat);
        }
    }
    GradedTModule::from_parts(m.dim, dims, t, &proto)
}

/// Window plus a conservative fallback for hand-built modules.
fn effective_window(m: &SemifreeDgModule) -> (i32, i32, bool) {
    if let Some((lo, hi)) = m.window {
        return (lo, hi, true);
    }
    let degs: Vec<i32> = m.gens.iter().map(|g| g.deg).collect();
    let (Some(&lo0), Some(&hi0)) = (degs.iter().min(), degs.iter().max()) else {
        return (0, 0, true);
    };
    let delta = m.dim.t_degree().unsigned_abs() as i32;
    let pow_sum: i32 = (0..m.gens.len())
        .flat_map(|i| (0..m.gens.len()).map(move |j| (i, j)))
        .map(|(i, j)| m.diff.at(i, j).max_pow().unwrap_or(0) as i32)
        .sum();
    let w = delta * (pow_sum + m.gens.len() as i32 + 2);
    (lo0 - w, hi0 + w, false)
}

/// Total homology as a graded `t`-module; only valid for `d != 1`.
pub fn homology_module(m: &SemifreeDgModule) -> Result<GradedTModule<Fp>> {
    assert_ne!(m.dim.d(), 1, "d = 1 homology goes through the telescope");
    let (lo, hi, trusted) = effective_window(m);
    let h = homology_over_window(m, lo, hi, None);
    if !trusted {
        let delta = m.dim.t_degree().unsigned_abs() as i32;
        let margin = delta.max(1);
        for band in [(lo - margin, lo - 1), (hi + 1, hi + margin)] {
            let edge = homology_over_window(m, band.0, band.1, None);
            if !edge.is_zero() {
                return Err(HallError::InfiniteHomology);
            }
        }
    }
    Ok(h)
}

/// `d = 1` path: homology of the quotient by `t^L`, then the universal
/// coefficient mix is unwound from the top degree. Returns the label
/// multiset.
fn telescope_class(m: &SemifreeDgModule) -> Result<ObjClass> {
    let gens_degs: Vec<i32> = m.gens.iter().map(|g| g.deg).collect();
    let Some(&lo) = gens_degs.iter().min() else {
        return Ok(ObjClass::zero(m.dim));
    };
    let hi = *gens_degs.iter().max().unwrap() + 1;
    let pow_sum: u32 = (0..m.gens.len())
        .flat_map(|i| (0..m.gens.len()).map(move |j| (i, j)))
        .map(|(i, j)| m.diff.at(i, j).max_pow().unwrap_or(0))
        .sum();
    let hard_cap = pow_sum + m.gens.len() as u32 + 2;
    let mut cap = m.torsion_hint.unwrap_or(3).max(2);
    loop {
        let h = homology_over_window(m, lo, hi, Some(cap));
        let mixed = decompose(&h);
        let max_len = mixed.max_len();
        if max_len < cap {
            // every torsion string was captured exactly
            let mut by_deg: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
            for l in mixed.labels() {
                by_deg.entry(-l.shift).or_default().push(l.len);
            }
            let unwind_err =
                || HallError::Unsupported("universal-coefficient mix failed to unwind".into());
            let mut labels = Vec::new();
            let mut carry: Vec<u32> = Vec::new(); // the true strings one degree up
            let mut prev_deg: Option<i32> = None;
            for (&deg, lens) in by_deg.iter().rev() {
                if prev_deg.is_some_and(|p| p > deg + 1) && !carry.is_empty() {
                    // a gap in the support contradicts a nonzero Tor term
                    return Err(unwind_err());
                }
                if prev_deg.is_some_and(|p| p > deg + 1) {
                    carry.clear();
                }
                let mut pool = lens.clone();
                // remove the Tor contribution of the degree above
                for c in &carry {
                    let pos = pool
                        .iter()
                        .position(|x| x == c)
                        .ok_or_else(unwind_err)?;
                    pool.swap_remove(pos);
                }
                for n in &pool {
                    labels.push(IndecLabel::new(-deg, *n));
                }
                carry = pool;
                prev_deg = Some(deg);
            }
            if !carry.is_empty() {
                return Err(unwind_err());
            }
            return ObjClass::new(m.dim, labels);
        }
        if cap > hard_cap {
            return Err(HallError::InfiniteHomology);
        }
        cap += 1;
    }
}

/// The isomorphism class of a semifree module in the triangulated category.
pub fn homology_class(m: &SemifreeDgModule) -> Result<ObjClass> {
    if m.dim.d() == 1 {
        telescope_class(m)
    } else {
        Ok(decompose(&homology_module(m)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::object::SphereDim;
    use crate::oracle::model::{semifree_model, Gen, PolyMat, TPoly};

    #[test]
    fn model_round_trip() {
        for d in [3, 2, 0, -1] {
            let dim = SphereDim(d);
            for x in crate::category::object::census(dim, (-2, 2), 3) {
                let m = semifree_model(&x, 2);
                assert_eq!(homology_class(&m).unwrap(), x, "d = {d}, x = {x}");
            }
        }
    }

    #[test]
    fn model_round_trip_d1() {
        let dim = SphereDim(1);
        for x in crate::category::object::census(dim, (-2, 2), 3) {
            let m = semifree_model(&x, 2);
            assert_eq!(homology_class(&m).unwrap(), x, "x = {x}");
        }
    }

    #[test]
    fn free_module_detected() {
        // the free module Γ itself: one generator, zero differential
        for d in [3, 1, -1] {
            let dim = SphereDim(d);
            let m = SemifreeDgModule {
                dim,
                q: 2,
                gens: vec![Gen { deg: 0, branch: 1 }],
                diff: PolyMat::zeros(1, 1),
                window: None,
                torsion_hint: None,
            };
            assert_eq!(homology_class(&m), Err(HallError::InfiniteHomology));
        }
    }

    #[test]
    fn cone_of_power_of_t_on_free_modules() {
        // cone(t^n : Γ -> Γ) has homology Γ/t^n
        for (d, q, n) in [(3, 2u64, 2u32), (2, 3, 3), (-1, 2, 2), (1, 5, 2)] {
            let dim = SphereDim(d);
            let delta = dim.t_degree();
            let gens = vec![
                Gen {
                    deg: n as i32 * delta - 1,
                    branch: 1,
                },
                Gen { deg: 0, branch: 1 },
            ];
            let mut diff = PolyMat::zeros(2, 2);
            *diff.at_mut(1, 0) = TPoly::monomial(1, n, q);
            let m = SemifreeDgModule {
                dim,
                q,
                gens,
                diff,
                window: None,
                torsion_hint: None,
            };
            m.validate().unwrap();
            assert_eq!(
                homology_class(&m).unwrap(),
                ObjClass::indec(dim, 0, n),
                "d = {d}"
            );
        }
    }
}
