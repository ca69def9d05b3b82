//! Dense exact matrices over the rationals.
//!
//! Every linear map of a representation is a [`Matrix`]. Zero-row and
//! zero-column matrices are legal and stand for maps into or out of the zero
//! space, so block constructions never need special cases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{display_rational, q, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(display_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds from rows; `cols` is needed so that `0 x cols` matrices can be expressed.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Integer literal helper, mostly for tests and catalogs.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, data: entries.iter().map(|&x| q(x)).collect() }
    }

    pub fn column(entries: Vec<Rational>) -> Self {
        Matrix { rows: entries.len(), cols: 1, data: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::Shape(format!("cannot add {:?} and {:?}", self.shape(), rhs.shape())));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::Shape("hstack needs equal row counts".into()));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(0, self.cols, rhs);
        Ok(out)
    }

    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.cols {
            return Err(Error::Shape("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix { rows: self.rows + rhs.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, sel);
            let inv = m.get(prow, col).recip();
            for c in col..m.cols {
                let v = m.get(prow, c) * &inv;
                m.set(prow, c, v);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = m.get(prow, c) * &factor;
                    if !sub.is_zero() {
                        m.data[r * m.cols + c] -= sub;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the null space.
    pub fn kernel(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, Rational::one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, j, -r.get(i, f).clone());
            }
        }
        k
    }

    /// Columns form a basis of the column space (pivot columns of `self`).
    pub fn image(&self) -> Matrix {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Rows span `{p : p * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().kernel().transpose()
    }

    /// One solution `X` of `self * X = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if rhs.rows != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side has {} rows, system has {}",
                rhs.rows, self.rows
            )));
        }
        let aug = self.hstack(rhs)?;
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let x = self.solve(&Matrix::identity(self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `L` with `L * self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        if self.rank() != self.cols {
            return None;
        }
        let x = self.transpose().solve(&Matrix::identity(self.cols)).ok()??;
        Some(x.transpose())
    }

    /// `R` with `self * R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Matrix::identity(self.rows)).ok()?
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Request type for [`linear_solve_suite`].
#[derive(Clone, Debug)]
pub enum SolveMode {
    Rref,
    Kernel,
    Image,
    Solve(Matrix),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutput {
    Matrix(Matrix),
    NoSolution,
}

/// Single entry point over the exact solvers, used by the CLI.
pub fn linear_solve_suite(a: &Matrix, mode: &SolveMode) -> Result<SolveOutput> {
    Ok(match mode {
        SolveMode::Rref => SolveOutput::Matrix(a.rref().matrix),
        SolveMode::Kernel => SolveOutput::Matrix(a.kernel()),
        SolveMode::Image => SolveOutput::Matrix(a.image()),
        SolveMode::Solve(b) => match a.solve(b)? {
            Some(x) => SolveOutput::Matrix(x),
            None => SolveOutput::NoSolution,
        },
    })
}

/// Coordinates with respect to a fixed list of independent vectors.
///
/// Built once from the basis; each lookup then costs a single small product.
#[derive(Clone, Debug)]
pub struct SpanCoordinates {
    basis: Matrix,
    pivots: Vec<usize>,
    transform: Matrix,
}

impl SpanCoordinates {
    /// `basis` holds one vector per row; rows must be linearly independent.
    pub fn new(basis: Matrix) -> Result<Self> {
        let d = basis.rows();
        let aug = basis.hstack(&Matrix::identity(d))?;
        let Rref { matrix, pivots } = aug.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < basis.cols()).collect();
        if pivots.len() != d {
            return Err(Error::Domain("basis vectors are linearly dependent".into()));
        }
        let transform = matrix.submatrix(0, basis.cols(), d, d);
        Ok(SpanCoordinates { basis, pivots, transform })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates of `x`, assuming `x` lies in the span.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut c = vec![Rational::zero(); d];
        for (i, &p) in self.pivots.iter().enumerate() {
            let y = &x[p];
            if y.is_zero() {
                continue;
            }
            for (j, cj) in c.iter_mut().enumerate() {
                let t = self.transform.get(i, j);
                if !t.is_zero() {
                    *cj += y * t;
                }
            }
        }
        c
    }

    /// Coordinates of `x`, or `None` when `x` is outside the span.
    pub fn try_coordinates(&self, x: &[Rational]) -> Option<Vec<Rational>> {
        let c = self.coordinates(x);
        let mut back = vec![Rational::zero(); self.basis.cols()];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (k, b) in back.iter_mut().enumerate() {
                *b += ci * self.basis.get(i, k);
            }
        }
        (back.as_slice() == x).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    #[test]
    fn kernel_of_row_of_ones() {
        let a = Matrix::from_i64(1, 2, &[1, 1]);
        let k = a.kernel();
        assert_eq!(k, Matrix::from_i64(2, 1, &[-1, 1]));
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let i = Matrix::identity(3);
        assert_eq!(i.rref().matrix, i);
    }

    #[test]
    fn solve_scalar_exactly() {
        let a = Matrix::from_i64(1, 1, &[2]);
        let b = Matrix::from_i64(1, 1, &[3]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x.get(0, 0), &q_frac(3, 2));
    }

    #[test]
    fn inconsistent_system_reports_none() {
        let a = Matrix::from_i64(2, 1, &[1, 1]);
        let b = Matrix::from_i64(2, 1, &[1, 2]);
        assert_eq!(a.solve(&b).unwrap(), None);
        assert_eq!(linear_solve_suite(&a, &SolveMode::Solve(b)).unwrap(), SolveOutput::NoSolution);
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 3);
        assert!(a.checked_mul(&Matrix::zeros(2, 2)).is_err());
        assert!(a.solve(&Matrix::zeros(3, 1)).is_err());
        assert!(Matrix::from_vec(2, 2, vec![]).is_err());
    }

    #[test]
    fn empty_matrices_behave() {
        let a = Matrix::zeros(0, 3);
        assert_eq!(a.kernel().shape(), (3, 3));
        assert_eq!(a.image().shape(), (0, 0));
        let b = Matrix::zeros(2, 0);
        assert_eq!((&b * &Matrix::zeros(0, 4)).shape(), (2, 4));
        assert_eq!(Matrix::zeros(0, 0).inverse(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn one_sided_inverses() {
        let a = Matrix::from_i64(3, 2, &[1, 0, 2, 1, 0, 3]);
        let l = a.left_inverse().unwrap();
        assert_eq!(&l * &a, Matrix::identity(2));
        let t = a.transpose();
        let r = t.right_inverse().unwrap();
        assert_eq!(&t * &r, Matrix::identity(2));
        assert!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = Matrix::from_i64(3, 1, &[1, 2, 3]);
        let lk = a.left_kernel();
        assert_eq!(lk.rows(), 2);
        assert!((&lk * &a).is_zero());
    }

    #[test]
    fn span_coordinates_roundtrip() {
        let basis = Matrix::from_i64(2, 3, &[1, 1, 0, 0, 1, 1]);
        let sc = SpanCoordinates::new(basis).unwrap();
        let x = vec![q(2), q(5), q(3)];
        assert_eq!(sc.try_coordinates(&x), Some(vec![q(2), q(3)]));
        assert_eq!(sc.try_coordinates(&[q(1), q(0), q(1)]), None);
        assert!(SpanCoordinates::new(Matrix::from_i64(2, 2, &[1, 1, 2, 2])).is_err());
    }

    #[test]
    fn power_by_squaring() {
        let n = Matrix::from_i64(2, 2, &[0, 1, 0, 0]);
        assert!(n.pow(2).is_zero());
        let a = Matrix::from_i64(2, 2, &[1, 1, 0, 1]);
        assert_eq!(a.pow(5), Matrix::from_i64(2, 2, &[1, 5, 0, 1]));
        assert_eq!(a.pow(0), Matrix::identity(2));
    }
}
