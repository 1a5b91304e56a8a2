//! Semifree dg modules over `k[t]` with explicit polynomial differentials.
//!
//! Every object class is modelled by two generators per summand: for
//! `Σ^s (Γ/t^n Γ)` a generator `e` in degree `-s` and a generator `f` with
//! `d(f) = t^n e`. Mapping cones of chain maps between such models stay in
//! this class, which is all the enumeration kernels ever need.
//!
//! Sign bookkeeping: for a homogeneous map `φ` of degree `w` and the
//! generator `t` of degree `Δ = 1 - d`, Koszul's rule gives
//! `φ(t^m x) = (-1)^{w m Δ} t^m φ(x)`. Signs therefore only appear when
//! both `w` and `Δ` are odd.

use crate::category::object::{ObjClass, SphereDim};
use crate::error::{HallError, Result};
use std::fmt;

/// Polynomial in `t` over `F_q`, low degree first, no trailing zeros.
/// The modulus is carried by the enclosing module.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TPoly {
    coeffs: Vec<u64>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: vec![] }
    }

    pub fn monomial(c: u64, pow: u32, q: u64) -> Self {
        let c = c % q;
        if c == 0 {
            return TPoly::zero();
        }
        let mut coeffs = vec![0; pow as usize + 1];
        coeffs[pow as usize] = c;
        TPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, pow: u32) -> u64 {
        self.coeffs.get(pow as usize).copied().unwrap_or(0)
    }

    pub fn max_pow(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|k| k as u32)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k as u32, c))
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn add_term(&mut self, c: u64, pow: u32, q: u64) {
        if c % q == 0 {
            return;
        }
        if self.coeffs.len() <= pow as usize {
            self.coeffs.resize(pow as usize + 1, 0);
        }
        self.coeffs[pow as usize] = (self.coeffs[pow as usize] + c) % q;
        self.trim();
    }

    pub fn add_assign(&mut self, rhs: &TPoly, q: u64) {
        for (pow, c) in rhs.iter_terms() {
            self.add_term(c, pow, q);
        }
    }

    pub fn neg(&self, q: u64) -> TPoly {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = (q - *c) % q;
        }
        out.trim();
        out
    }

    pub fn scale(&self, s: u64, q: u64) -> TPoly {
        let s = s % q;
        if s == 0 {
            return TPoly::zero();
        }
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = (*c * s) % q;
        }
        out.trim();
        out
    }

    /// Product, optionally twisting the right factor's coefficient at `t^m`
    /// by `(-1)^m` (the Koszul sign for an odd map passing odd-degree `t`).
    pub fn mul_signed(&self, rhs: &TPoly, sign_on_rhs_powers: bool, q: u64) -> TPoly {
        let mut out = TPoly::zero();
        for (ma, ca) in self.iter_terms() {
            for (mb, cb) in rhs.iter_terms() {
                let mut c = (ca * cb) % q;
                if sign_on_rhs_powers && mb % 2 == 1 {
                    c = (q - c) % q;
                }
                out.add_term(c, ma + mb, q);
            }
        }
        out
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .iter_terms()
            .map(|(m, c)| match m {
                0 => format!("{c}"),
                1 => format!("{c}t"),
                _ => format!("{c}t^{m}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Matrix of polynomials: column `j` lists the components of the image of
/// generator `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<TPoly>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat {
            rows,
            cols,
            entries: vec![TPoly::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &TPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut TPoly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TPoly::is_zero)
    }

    pub fn neg(&self, q: u64) -> PolyMat {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.neg(q);
        }
        out
    }

    pub fn add_scaled(&mut self, rhs: &PolyMat, s: u64, q: u64) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            a.add_assign(&b.scale(s, q), q);
        }
    }

    /// `outer ∘ self` at the generator level. `outer_odd_sign` is true when
    /// the outer map has odd degree and `t` has odd degree; the Koszul sign
    /// then lands on the powers of this (inner) matrix.
    pub fn composed_with(&self, outer: &PolyMat, outer_odd_sign: bool, q: u64) -> PolyMat {
        assert_eq!(outer.cols, self.rows, "composition shape mismatch");
        let mut out = PolyMat::zeros(outer.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                let inner = self.at(i, j);
                if inner.is_zero() {
                    continue;
                }
                for k in 0..outer.rows {
                    let o = outer.at(k, i);
                    if o.is_zero() {
                        continue;
                    }
                    let prod = o.mul_signed(inner, outer_odd_sign, q);
                    out.at_mut(k, j).add_assign(&prod, q);
                }
            }
        }
        out
    }

    pub fn max_pow(&self) -> u32 {
        self.entries
            .iter()
            .filter_map(TPoly::max_pow)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMat[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:?} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A semifree generator: a degree and (for `d = 0`) a branch tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Gen {
    pub deg: i32,
    pub branch: u8,
}

/// A finitely generated semifree dg module over `k[t]` with an explicit
/// differential, strictly lower triangular in the generator order.
#[derive(Clone)]
pub struct SemifreeDgModule {
    pub dim: SphereDim,
    pub q: u64,
    pub gens: Vec<Gen>,
    pub diff: PolyMat,
    /// Degree interval known to contain all homology; `None` for hand-built
    /// modules, in which case homology computations must self-check.
    pub window: Option<(i32, i32)>,
    /// Strict upper bound on torsion string lengths in the homology, when
    /// one is known from the construction.
    pub torsion_hint: Option<u32>,
}

impl SemifreeDgModule {
    /// Checks the degree rule on every monomial, branch preservation,
    /// lower-triangularity and `d^2 = 0`.
    pub fn validate(&self) -> Result<()> {
        let delta = self.dim.t_degree();
        let n = self.gens.len();
        assert_eq!(self.diff.rows(), n);
        assert_eq!(self.diff.cols(), n);
        for j in 0..n {
            for i in 0..n {
                let p = self.diff.at(i, j);
                if p.is_zero() {
                    continue;
                }
                if i <= j {
                    return Err(HallError::InvalidLabel(
                        "differential is not strictly lower triangular".into(),
                    ));
                }
                if self.gens[i].branch != self.gens[j].branch {
                    return Err(HallError::InvalidLabel(
                        "differential mixes branches".into(),
                    ));
                }
                for (m, _) in p.iter_terms() {
                    if self.dim.d() == 0 && m > 0 {
                        return Err(HallError::InvalidLabel(
                            "no t-action exists when d = 0".into(),
                        ));
                    }
                    if self.gens[i].deg + m as i32 * delta != self.gens[j].deg + 1 {
                        return Err(HallError::InvalidLabel(format!(
                            "monomial t^{m} in entry ({i},{j}) violates the degree rule"
                        )));
                    }
                }
            }
        }
        let sq = self
            .diff
            .composed_with(&self.diff, delta.rem_euclid(2) == 1, self.q);
        if !sq.is_zero() {
            return Err(HallError::InvalidLabel(
                "differential does not square to zero".into(),
            ));
        }
        Ok(())
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }
}

/// A degree-zero chain map between semifree models, stored at the generator
/// level. `src_class` and `tgt_class` remember the modelled objects so that
/// cones can carry a trusted homology window.
#[derive(Clone)]
pub struct DgMorphism {
    pub src: SemifreeDgModule,
    pub tgt: SemifreeDgModule,
    pub src_class: ObjClass,
    pub tgt_class: ObjClass,
    pub mat: PolyMat,
}

impl DgMorphism {
    /// `d ∘ f - f ∘ d`, which must vanish for a chain map.
    pub fn chain_defect(&self) -> PolyMat {
        let q = self.src.q;
        let odd = self.src.dim.t_degree().rem_euclid(2) == 1;
        let mut lhs = self.mat.composed_with(&self.tgt.diff, odd, q);
        let rhs = self.src.diff.composed_with(&self.mat, false, q);
        lhs.add_scaled(&rhs, q - 1, q);
        lhs
    }

    pub fn is_chain_map(&self) -> bool {
        self.chain_defect().is_zero()
    }
}

/// The canonical model of an object class: two generators per summand
/// (`e` in the shift's degree and `f` with `d f = t^n e`); for `d = 0`,
/// one generator per summand and zero differential.
pub fn semifree_model(x: &ObjClass, q: u64) -> SemifreeDgModule {
    let dim = x.dim_param();
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    for l in x.labels() {
        if dim.d() == 0 {
            gens.push(Gen {
                deg: -l.shift,
                branch: l.branch,
            });
            continue;
        }
        let e_deg = -l.shift;
        let f_deg = e_deg + l.len as i32 * dim.t_degree() - 1;
        let e_idx = gens.len();
        gens.push(Gen {
            deg: e_deg,
            branch: 1,
        });
        gens.push(Gen {
            deg: f_deg,
            branch: 1,
        });
        pairs.push((e_idx, e_idx + 1, l.len));
    }
    let mut diff = PolyMat::zeros(gens.len(), gens.len());
    for (e, f, n) in pairs {
        // d(f) = t^n e; e precedes f so the matrix stays lower triangular
        *diff.at_mut(e, f) = TPoly::monomial(1, n, q);
    }
    let m = SemifreeDgModule {
        dim,
        q,
        gens,
        diff,
        window: x.support(),
        torsion_hint: Some(x.total_dim() + 1),
    };
    debug_assert!(m.validate().is_ok());
    m
}

/// Mapping cone of a chain map `f: Y -> Z`: shifted source generators
/// followed by target generators, with differential `[[-d_Y, 0], [f, d_Z]]`.
/// The trusted homology window comes from the long exact sequence.
pub fn cone_of(f: &DgMorphism) -> SemifreeDgModule {
    debug_assert!(f.is_chain_map(), "cone of a non-chain map");
    cone_parts(&f.src, &f.tgt, &f.mat, &f.src_class, &f.tgt_class)
}

/// Cone assembly from borrowed pieces; avoids cloning whole morphisms in
/// enumeration loops.
pub(crate) fn cone_parts(
    src: &SemifreeDgModule,
    tgt: &SemifreeDgModule,
    mat: &PolyMat,
    src_class: &ObjClass,
    tgt_class: &ObjClass,
) -> SemifreeDgModule {
    let q = src.q;
    let dim = src.dim;
    let ns = src.gen_count();
    let nt = tgt.gen_count();
    let mut gens = Vec::with_capacity(ns + nt);
    for g in &src.gens {
        gens.push(Gen {
            deg: g.deg - 1,
            branch: g.branch,
        });
    }
    gens.extend_from_slice(&tgt.gens);
    let mut diff = PolyMat::zeros(ns + nt, ns + nt);
    let neg_src = src.diff.neg(q);
    for j in 0..ns {
        for i in 0..ns {
            *diff.at_mut(i, j) = neg_src.at(i, j).clone();
        }
        for i in 0..nt {
            *diff.at_mut(ns + i, j) = mat.at(i, j).clone();
        }
    }
    for j in 0..nt {
        for i in 0..nt {
            *diff.at_mut(ns + i, ns + j) = tgt.diff.at(i, j).clone();
        }
    }
    let window = {
        let t = tgt_class.support();
        let s = src_class.support().map(|(lo, hi)| (lo - 1, hi - 1));
        match (t, s) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            (w, None) | (None, w) => w,
        }
    };
    let cone = SemifreeDgModule {
        dim,
        q,
        gens,
        diff,
        window,
        torsion_hint: Some(src_class.total_dim() + tgt_class.total_dim() + 1),
    };
    debug_assert!(cone.validate().is_ok());
    cone
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::object::ObjClass;

    #[test]
    fn model_shapes_d3() {
        let d = SphereDim(3);
        let s = semifree_model(&ObjClass::simple(d), 2);
        assert_eq!(s.gens.len(), 2);
        assert_eq!(s.gens[0].deg, 0);
        assert_eq!(s.gens[1].deg, -3);
        assert!(s.validate().is_ok());

        let g2 = semifree_model(&ObjClass::indec(d, 0, 2), 3);
        assert_eq!(g2.gens[1].deg, -5);
        assert_eq!(g2.diff.at(0, 1).coeff(2), 1);
    }

    #[test]
    fn zero_object_model_is_empty() {
        let d = SphereDim(3);
        let z = semifree_model(&ObjClass::zero(d), 2);
        assert_eq!(z.gen_count(), 0);
        assert!(z.validate().is_ok());
    }

    #[test]
    fn cone_of_zero_map_validates() {
        let d = SphereDim(3);
        let s = ObjClass::simple(d);
        let y = semifree_model(&s, 2);
        let z = semifree_model(&s, 2);
        let f = DgMorphism {
            mat: PolyMat::zeros(z.gen_count(), y.gen_count()),
            src: y,
            tgt: z,
            src_class: s.clone(),
            tgt_class: s.clone(),
        };
        let c = cone_of(&f);
        assert!(c.validate().is_ok());
        assert_eq!(c.gen_count(), 4);
        assert_eq!(c.window, Some((-1, 0)));
    }

    #[test]
    fn signed_composition_d2() {
        // d even makes deg t odd; check d^2 = 0 still holds for a model
        let d = SphereDim(2);
        for q in [2u64, 3, 5] {
            let m = semifree_model(&ObjClass::indec(d, 1, 3), q);
            assert!(m.validate().is_ok());
        }
    }
}
