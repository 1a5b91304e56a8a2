//! Dense matrices over an exact field, with Gaussian elimination.

use super::fp::ScalarField;
use std::fmt;

/// Dense row-major matrix. A prototype element is kept so that empty
/// matrices still know their field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    proto: F,
}

impl<F: ScalarField> FieldMatrix<F> {
    pub fn zeros(rows: usize, cols: usize, proto: &F) -> Self {
        let zero = proto.zero_like();
        FieldMatrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            proto: zero,
        }
    }

    pub fn identity(n: usize, proto: &F) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            *m.at_mut(i, i) = proto.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, proto: &F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        FieldMatrix {
            rows: r,
            cols: c,
            data,
            proto: proto.zero_like(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn proto(&self) -> &F {
        &self.proto
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ScalarField::is_zero)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matmul");
        let mut out = Self::zeros(self.rows, rhs.cols, &self.proto);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j).add(&a.mul(b));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, &self.proto);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Horizontal concatenation; both operands must have the same row count.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols, &self.proto);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..rhs.cols {
                *out.at_mut(i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        out
    }

    pub fn from_cols(cols: &[Vec<F>], rows: usize, proto: &F) -> Self {
        let mut out = Self::zeros(rows, cols.len(), proto);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                *out.at_mut(i, j) = v.clone();
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// column indices in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    let a = self.at(p, j).clone();
                    let b = self.at(row, j).clone();
                    *self.at_mut(p, j) = b;
                    *self.at_mut(row, j) = a;
                }
            }
            let inv = self.at(row, col).inv();
            for j in col..self.cols {
                let v = self.at(row, j).mul(&inv);
                *self.at_mut(row, j) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = self.at(r, j).sub(&factor.mul(self.at(row, j)));
                        *self.at_mut(r, j) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank over the entry field, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace; its length is `cols - rank`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let zero = self.proto.zero_like();
        let one = self.proto.one_like();
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![zero.clone(); self.cols];
            vec[free] = one.clone();
            for (col, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[col] = m.at(*r, free).neg();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve `self * x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let bm = Self::from_cols(&[b.to_vec()], self.rows, &self.proto);
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref();
        if pivots.last().is_some_and(|&c| c == self.cols) {
            return None;
        }
        let zero = self.proto.zero_like();
        let mut x = vec![zero; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }
}

impl<F: ScalarField> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:?} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A subquotient presentation: cycles modulo boundaries inside an ambient
/// coordinate space. Used for homology coordinates.
pub struct Quotient<F> {
    /// columns: chosen homology representatives (ambient coordinates)
    reps: Vec<Vec<F>>,
    /// matrix [boundaries | reps], kept for coordinate solves
    solver: FieldMatrix<F>,
    boundary_cols: usize,
}

impl<F: ScalarField> Quotient<F> {
    /// `cycles` and `boundaries` are column lists in a common ambient space
    /// of dimension `amb`. The span of `boundaries` must lie inside the span
    /// of `cycles`.
    pub fn new(cycles: &[Vec<F>], boundaries: &[Vec<F>], amb: usize, proto: &F) -> Self {
        let bmat = FieldMatrix::from_cols(boundaries, amb, proto);
        let base_rank = bmat.rank();
        let mut reps = Vec::new();
        let mut cur = bmat.clone();
        let mut rank = base_rank;
        for cyc in cycles {
            let cand = cur.hstack(&FieldMatrix::from_cols(
                std::slice::from_ref(cyc),
                amb,
                proto,
            ));
            let r = cand.rank();
            if r > rank {
                reps.push(cyc.clone());
                cur = cand;
                rank = r;
            }
        }
        let solver = bmat.hstack(&FieldMatrix::from_cols(&reps, amb, proto));
        Quotient {
            reps,
            solver,
            boundary_cols: boundaries.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<F>] {
        &self.reps
    }

    /// Coordinates of an ambient vector (must lie in boundaries + reps span)
    /// with respect to the chosen representatives.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        let x = self
            .solver
            .solve(v)
            .expect("vector not in the cycle space");
        x[self.boundary_cols..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::Fp;
    use crate::arith::rat::Rat;

    fn f2(v: i64) -> Fp {
        Fp::new(v, 2)
    }

    #[test]
    fn rank_empty_identity_repeat() {
        let m: FieldMatrix<Fp> = FieldMatrix::zeros(0, 0, &f2(0));
        assert_eq!(m.rank(), 0);
        let id = FieldMatrix::identity(3, &f2(0));
        assert_eq!(id.rank(), 3);
        let rep = FieldMatrix::from_rows(vec![vec![f2(1), f2(1)], vec![f2(1), f2(1)]], &f2(0));
        assert_eq!(rep.rank(), 1);
    }

    #[test]
    fn nullspace_dims() {
        let id = FieldMatrix::identity(2, &f2(0));
        assert_eq!(id.nullspace().len(), 0);
        let z: FieldMatrix<Fp> = FieldMatrix::zeros(2, 3, &f2(0));
        assert_eq!(z.nullspace().len(), 3);
        let m = FieldMatrix::from_rows(vec![vec![f2(1), f2(1)]], &f2(0));
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![f2(1), f2(1)]);
    }

    #[test]
    fn rank_transpose_rational() {
        let m = FieldMatrix::from_rows(
            vec![
                vec![Rat::from_int(1), Rat::from_frac(1, 2), Rat::zero()],
                vec![Rat::from_int(2), Rat::from_int(1), Rat::zero()],
            ],
            &Rat::zero(),
        );
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_and_quotient() {
        let m = FieldMatrix::from_rows(vec![vec![f2(1), f2(0)], vec![f2(1), f2(1)]], &f2(0));
        let x = m.solve(&[f2(1), f2(0)]).unwrap();
        assert_eq!(x, vec![f2(1), f2(1)]);

        let cycles = vec![vec![f2(1), f2(0)], vec![f2(0), f2(1)]];
        let boundaries = vec![vec![f2(1), f2(1)]];
        let q = Quotient::new(&cycles, &boundaries, 2, &f2(0));
        assert_eq!(q.dim(), 1);
        let c = q.coords(&[f2(0), f2(1)]);
        assert_eq!(c.len(), 1);
    }
}
