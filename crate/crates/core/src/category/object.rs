//! Isomorphism classes of objects.
//!
//! By the classification theorem, every object is a finite direct sum of
//! shifted cyclic modules `Σ^s (Γ / t^n Γ)`; for `d = 0` the indecomposables
//! are shifted copies of the two simples, tagged by a branch. An `ObjClass`
//! is the canonical sorted multiset of these labels.

use crate::error::{HallError, Result};
use std::fmt;

/// The sphere dimension `d`, with the derived quantities `d' = d - 1` and
/// `deg t = 1 - d` used throughout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SphereDim(pub i32);

impl SphereDim {
    pub fn d(self) -> i32 {
        self.0
    }

    pub fn d_prime(self) -> i32 {
        self.0 - 1
    }

    /// Degree of the polynomial generator `t`.
    pub fn t_degree(self) -> i32 {
        1 - self.0
    }
}

/// Label of an indecomposable: suspension exponent, length of the cyclic
/// module, and (for `d = 0` only) which of the two simples.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IndecLabel {
    pub shift: i32,
    pub len: u32,
    pub branch: u8,
}

impl IndecLabel {
    pub fn new(shift: i32, len: u32) -> Self {
        IndecLabel {
            shift,
            len,
            branch: 1,
        }
    }

    pub fn branched(shift: i32, branch: u8) -> Self {
        IndecLabel {
            shift,
            len: 1,
            branch,
        }
    }
}

/// Canonical isomorphism class: sorted multiset of indecomposable labels.
/// The empty multiset is the zero object.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjClass {
    dim: SphereDim,
    summands: Vec<IndecLabel>,
}

impl ObjClass {
    /// Canonicalize a list of labels; rejects labels invalid for `d`.
    pub fn new(dim: SphereDim, mut labels: Vec<IndecLabel>) -> Result<Self> {
        for l in &labels {
            if l.len == 0 {
                return Err(HallError::InvalidLabel("length must be positive".into()));
            }
            if dim.d() == 0 {
                if l.len != 1 {
                    return Err(HallError::InvalidLabel(
                        "for d = 0 every summand is simple".into(),
                    ));
                }
                if l.branch != 1 && l.branch != 2 {
                    return Err(HallError::InvalidLabel("branch must be 1 or 2".into()));
                }
            } else if l.branch != 1 {
                return Err(HallError::InvalidLabel(
                    "branch tag only applies when d = 0".into(),
                ));
            }
        }
        labels.sort();
        Ok(ObjClass {
            dim,
            summands: labels,
        })
    }

    pub fn zero(dim: SphereDim) -> Self {
        ObjClass {
            dim,
            summands: vec![],
        }
    }

    /// The simple object `S` (branch 1 when `d = 0`).
    pub fn simple(dim: SphereDim) -> Self {
        Self::sphere(dim, 0)
    }

    /// `Σ^p S`.
    pub fn sphere(dim: SphereDim, p: i32) -> Self {
        ObjClass {
            dim,
            summands: vec![IndecLabel::new(p, 1)],
        }
    }

    /// `Σ^s (Γ / t^n Γ)` for `d != 0`.
    pub fn indec(dim: SphereDim, shift: i32, len: u32) -> Self {
        assert!(len >= 1);
        assert!(dim.d() != 0 || len == 1);
        ObjClass {
            dim,
            summands: vec![IndecLabel::new(shift, len)],
        }
    }

    pub fn dim_param(&self) -> SphereDim {
        self.dim
    }

    pub fn labels(&self) -> &[IndecLabel] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Total dimension of the homology.
    pub fn total_dim(&self) -> u32 {
        self.summands.iter().map(|l| l.len).sum()
    }

    pub fn max_len(&self) -> u32 {
        self.summands.iter().map(|l| l.len).max().unwrap_or(0)
    }

    /// Direct sum.
    pub fn plus(&self, other: &ObjClass) -> ObjClass {
        assert_eq!(self.dim, other.dim);
        let mut labels = self.summands.clone();
        labels.extend_from_slice(&other.summands);
        labels.sort();
        ObjClass {
            dim: self.dim,
            summands: labels,
        }
    }

    /// Apply `Σ^k`; every label's shift increases by `k`.
    pub fn shifted(&self, k: i32) -> ObjClass {
        ObjClass {
            dim: self.dim,
            summands: self
                .summands
                .iter()
                .map(|l| IndecLabel {
                    shift: l.shift + k,
                    ..*l
                })
                .collect(),
        }
    }

    /// Homology degrees (with multiplicity) of each label: the generator of
    /// `Σ^s (Γ/t^n)` sits in degree `-s` and the string descends in steps of
    /// `deg t = 1 - d`.
    pub fn homology_degrees(&self) -> Vec<i32> {
        let delta = self.dim.t_degree();
        let mut degs = Vec::new();
        for l in &self.summands {
            for j in 0..l.len as i32 {
                degs.push(-l.shift + j * delta);
            }
        }
        degs
    }

    /// Min and max homology degree; `None` for the zero object.
    pub fn support(&self) -> Option<(i32, i32)> {
        let degs = self.homology_degrees();
        Some((*degs.iter().min()?, *degs.iter().max()?))
    }

    /// Alternating sum of homology dimensions.
    pub fn euler_char(&self) -> i64 {
        self.homology_degrees()
            .iter()
            .map(|deg| if deg.rem_euclid(2) == 0 { 1 } else { -1 })
            .sum()
    }

    /// Translate so that the smallest label shift is zero; returns the
    /// applied shift. Used to normalize cache keys, since every counting
    /// invariant is suspension-invariant.
    pub fn normalize_translation(objs: &[&ObjClass]) -> i32 {
        objs.iter()
            .flat_map(|o| o.labels())
            .map(|l| l.shift)
            .min()
            .map_or(0, |m| -m)
    }
}

impl fmt::Display for ObjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for l in &self.summands {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "s{}l{}", l.shift, l.len)?;
            if self.dim.d() == 0 {
                write!(f, "b{}", l.branch)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ObjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]@d={}", self.dim.d())
    }
}

/// All labels available for `d` within a shift range and length bound.
pub fn all_labels(dim: SphereDim, shifts: (i32, i32), max_len: u32) -> Vec<IndecLabel> {
    let mut out = Vec::new();
    for s in shifts.0..=shifts.1 {
        if dim.d() == 0 {
            out.push(IndecLabel::branched(s, 1));
            out.push(IndecLabel::branched(s, 2));
        } else {
            for n in 1..=max_len {
                out.push(IndecLabel::new(s, n));
            }
        }
    }
    out.sort();
    out
}

/// Every nonzero object with shifts in the given range and total homology
/// dimension at most `max_total`, in canonical order.
pub fn census(dim: SphereDim, shifts: (i32, i32), max_total: u32) -> Vec<ObjClass> {
    let labels = all_labels(dim, shifts, max_total);
    let mut out = Vec::new();
    let mut stack: Vec<IndecLabel> = Vec::new();
    fn rec(
        dim: SphereDim,
        labels: &[IndecLabel],
        from: usize,
        budget: u32,
        stack: &mut Vec<IndecLabel>,
        out: &mut Vec<ObjClass>,
    ) {
        if !stack.is_empty() {
            out.push(ObjClass::new(dim, stack.clone()).unwrap());
        }
        for (k, l) in labels.iter().enumerate().skip(from) {
            if l.len <= budget {
                stack.push(*l);
                rec(dim, labels, k, budget - l.len, stack, out);
                stack.pop();
            }
        }
    }
    rec(dim, &labels, 0, max_total, &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sorting() {
        let d = SphereDim(3);
        let a = ObjClass::new(d, vec![IndecLabel::new(0, 1), IndecLabel::new(-1, 1)]).unwrap();
        let b = ObjClass::new(d, vec![IndecLabel::new(-1, 1), IndecLabel::new(0, 1)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn label_validation() {
        let d3 = SphereDim(3);
        assert!(ObjClass::new(d3, vec![IndecLabel::new(0, 0)]).is_err());
        assert!(ObjClass::new(d3, vec![IndecLabel::branched(0, 2)]).is_err());
        let d0 = SphereDim(0);
        assert!(ObjClass::new(d0, vec![IndecLabel::new(0, 2)]).is_err());
        assert!(ObjClass::new(d0, vec![IndecLabel::branched(0, 2)]).is_ok());
    }

    #[test]
    fn shift_round_trip() {
        let d = SphereDim(3);
        let x = ObjClass::new(d, vec![IndecLabel::new(0, 2), IndecLabel::new(2, 1)]).unwrap();
        assert_eq!(x.shifted(5).shifted(-5), x);
        assert_eq!(x.shifted(0), x);
    }

    #[test]
    fn homology_degrees_d3() {
        let d = SphereDim(3);
        // Γ/t^2: degrees 0 and -2
        let x = ObjClass::indec(d, 0, 2);
        assert_eq!(x.homology_degrees(), vec![0, -2]);
        // Σ^{-2} S sits in degree 2
        let y = ObjClass::sphere(d, -2);
        assert_eq!(y.homology_degrees(), vec![2]);
    }

    #[test]
    fn census_small() {
        let d = SphereDim(3);
        let c = census(d, (0, 0), 2);
        // s0l1, s0l2, s0l1+s0l1
        assert_eq!(c.len(), 3);
        for x in &c {
            assert!(x.total_dim() <= 2 && !x.is_zero());
        }
        let d0 = census(SphereDim(0), (0, 1), 1);
        assert_eq!(d0.len(), 4);
    }

    #[test]
    fn euler_char_shift_sign() {
        let d = SphereDim(3);
        let x = ObjClass::simple(d);
        assert_eq!(x.euler_char(), 1);
        assert_eq!(x.shifted(1).euler_char(), -1);
        assert_eq!(ObjClass::indec(d, 0, 2).euler_char(), 2);
    }
}
