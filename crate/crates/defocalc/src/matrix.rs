//! Dense matrices over the rationals with deterministic elimination.
//!
//! Pivots are always chosen left to right, first usable row wins; no
//! magnitude-based pivoting. Reduced row echelon form is unique for a given
//! row space, so every kernel basis, column-space basis, and complement
//! derived here is reproducible across runs and platforms.

use num::traits::{One, Zero};

use crate::rational::Rat;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("matrix * vector length".into()));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon span of the rows.
    pub fn row_span(&self) -> Span {
        let mut span = Span::new(self.cols);
        for r in 0..self.rows {
            span.insert(self.row(r));
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.row_span().rank()
    }

    /// Basis of the null space, one vector per free column in ascending
    /// order. Each vector has a 1 in its free column, so the basis is itself
    /// in reduced echelon form with the earliest possible pivots.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let span = self.row_span();
        let pivots = span.pivots().to_vec();
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (row_idx, &p) in pivots.iter().enumerate() {
                let coeff = &span.rows()[row_idx][f];
                if !coeff.is_zero() {
                    v[p] = -coeff.clone();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, as reduced echelon rows of the transpose.
    pub fn column_space_basis(&self) -> Vec<Vec<Rat>> {
        self.transpose().row_span().rows().to_vec()
    }

    /// Inverse of a square matrix, or None when singular. Reduces [A | I]
    /// and reads the inverse off the right block.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut span = Span::new(2 * n);
        for r in 0..n {
            let mut row: Vec<Rat> = self.row(r).to_vec();
            row.extend(std::iter::repeat_with(Rat::zero).take(n));
            row[n + r] = Rat::one();
            span.insert(&row);
        }
        if span.pivots() != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, span.rows()[r][n + c].clone());
            }
        }
        Some(inv)
    }

    /// Unique solution-or-nothing for `self * x = rhs` restricted to the
    /// column span: returns a solution when the system is consistent (the
    /// reduced system picks free variables = 0, deterministically).
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows, "rhs length");
        // Row-reduce the augmented matrix [A | rhs].
        let mut span = Span::new(self.cols + 1);
        for r in 0..self.rows {
            let mut row: Vec<Rat> = self.row(r).to_vec();
            row.push(rhs[r].clone());
            span.insert(&row);
        }
        if span.pivots().contains(&self.cols) {
            return None; // inconsistent: pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row_idx, &p) in span.pivots().iter().enumerate() {
            x[p] = span.rows()[row_idx][self.cols].clone();
        }
        Some(x)
    }
}

/// Rank and null-space basis in one call.
pub fn rank_and_kernel(m: &Matrix) -> (usize, Vec<Vec<Rat>>) {
    (m.rank(), m.kernel_basis())
}

/// Incrementally maintained reduced-echelon row span: the workhorse behind
/// rank, membership, complements, and span equality.
#[derive(Clone, Debug)]
pub struct Span {
    cols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>, // ascending, parallel to rows
}

impl Span {
    pub fn new(cols: usize) -> Self {
        Span {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after subtracting its projection onto the span.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for j in 0..self.cols {
                    if !row[j].is_zero() {
                        out[j] = &out[j] - &c * &row[j];
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span. Returns true iff the rank grew. The stored rows
    /// stay in reduced echelon form with monic pivots sorted ascending.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut red = self.reduce(v);
        let Some(lead) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = red[lead].clone();
        for x in red.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &inv;
            }
        }
        // Eliminate the new pivot column from existing rows.
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let c = row[lead].clone();
                for j in 0..self.cols {
                    if !red[j].is_zero() {
                        row[j] = &row[j] - &c * &red[j];
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, red);
        true
    }

    /// Same row space as another span. RREF is unique, so this is row-wise
    /// equality.
    pub fn same_span(&self, other: &Span) -> bool {
        self.cols == other.cols && self.pivots == other.pivots && self.rows == other.rows
    }
}

/// Vectors from `candidates` (in order) that extend `base` to a larger
/// independent family; the returned vectors are the original candidates, not
/// their reductions. This is the deterministic complement rule used for
/// cohomology representatives and splittings.
pub fn extend_basis(base: &Span, candidates: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut span = base.clone();
    let mut chosen = Vec::new();
    for v in candidates {
        if span.insert(v) {
            chosen.push(v.clone());
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(2));
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
        assert!(m(vec![vec![1, 2]]).inverse().is_none());
    }

    #[test]
    fn identity_has_full_rank_empty_kernel() {
        let (rank, kernel) = rank_and_kernel(&Matrix::identity(2));
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let (rank, kernel) = rank_and_kernel(&Matrix::zeros(3, 4));
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 4);
        for (i, v) in kernel.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x == rat(1), i == j);
            }
        }
    }

    #[test]
    fn proportional_rows() {
        let (rank, kernel) = rank_and_kernel(&m(vec![vec![1, 2], vec![2, 4]]));
        assert_eq!(rank, 1);
        assert_eq!(kernel, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn rank_kernel_dimensions_add_up() {
        let a = m(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        let (rank, kernel) = rank_and_kernel(&a);
        assert_eq!(rank, 2);
        assert_eq!(rank + kernel.len(), 3);
        for v in &kernel {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        let x = a.solve(&[rat(5), rat(11)]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![rat(5), rat(11)]);
        let b = m(vec![vec![1, 2], vec![2, 4]]);
        assert!(b.solve(&[rat(1), rat(3)]).is_none());
        assert!(b.solve(&[rat(1), rat(2)]).is_some());
    }

    #[test]
    fn extend_basis_picks_earliest_candidates() {
        let mut base = Span::new(3);
        base.insert(&[rat(1), rat(0), rat(0)]);
        let candidates = vec![
            vec![rat(2), rat(0), rat(0)], // dependent, skipped
            vec![rat(1), rat(1), rat(0)],
            vec![rat(0), rat(1), rat(0)], // dependent on the previous two
            vec![rat(0), rat(0), rat(5)],
        ];
        let ext = extend_basis(&base, &candidates);
        assert_eq!(ext, vec![candidates[1].clone(), candidates[3].clone()]);
    }

    #[test]
    fn same_span_is_representation_independent() {
        let a = m(vec![vec![1, 1, 0], vec![0, 1, 1]]).row_span();
        let b = m(vec![vec![1, 2, 1], vec![2, 3, 1]]).row_span();
        assert!(a.same_span(&b));
        let c = m(vec![vec![1, 0, 0]]).row_span();
        assert!(!a.same_span(&c));
    }
}
