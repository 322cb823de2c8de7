//! Exact dense linear algebra over any [`Scalar`] field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square ({0}x{1})")]
    NonSquareMatrix(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense row-major matrix. `zero` fixes the field for empty or fresh matrices.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    zero: S,
}

pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    None,
    Affine(Vec<S>, Subspace<S>),
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize, zero: &S) -> Self {
        let zero = zero.zero_like();
        Self {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero,
        }
    }

    pub fn identity(n: usize, zero: &S) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>, zero: &S) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
            zero: zero.zero_like(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &S, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        }
    }

    pub fn diag(d: &[S], zero: &S) -> Self {
        let mut m = Self::zeros(d.len(), d.len(), zero);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &S {
        &self.zero
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, zero: &T, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: zero.zero_like(),
        }
    }

    pub fn try_map<T: Scalar, E>(&self, zero: &T, f: impl Fn(&S) -> Result<T, E>) -> Result<Matrix<T>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
            zero: zero.zero_like(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> Result<S, LinalgError> {
        self.require_square()?;
        let mut t = self.zero.clone();
        for i in 0..self.rows {
            t = t.checked_add(self.get(i, i))?;
        }
        Ok(t)
    }

    pub fn add(&self, o: &Self) -> Result<Self, LinalgError> {
        self.zip(o, S::checked_add)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LinalgError> {
        self.zip(o, S::checked_sub)
    }

    fn zip(&self, o: &Self, f: impl Fn(&S, &S) -> Result<S, FieldError>) -> Result<Self, LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::DimensionMismatch("operand shapes differ"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_, _>>()?,
            zero: self.zero.clone(),
        })
    }

    pub fn scale(&self, c: &S) -> Result<Self, LinalgError> {
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.checked_mul(c)).collect::<Result<_, _>>()?,
            zero: self.zero.clone(),
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::DimensionMismatch("inner dimensions differ"));
        }
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).checked_add(&a.checked_mul(b)?)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch("vector length"));
        }
        (0..self.rows)
            .map(|i| dot(self.row(i), v, &self.zero))
            .collect()
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NonSquareMatrix(self.rows, self.cols))
        }
    }

    /// `self - λI`.
    pub fn shift(&self, lambda: &S) -> Result<Self, LinalgError> {
        self.require_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i).checked_sub(lambda)?;
            m.set(i, i, v);
        }
        Ok(m)
    }

    /// Reduced row echelon form, pivoting on the first nonzero entry of each column.
    pub fn rref(&self) -> Rref<S> {
        self.try_rref().expect("entries share one field")
    }

    pub fn try_rref(&self) -> Result<Rref<S>, LinalgError> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv()?;
            for j in c..m.cols {
                let v = m.get(r, j).checked_mul(&inv)?;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).checked_sub(&f.checked_mul(m.get(r, j))?)?;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Rref {
            matrix: m,
            rank: r,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Subspace<S> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vecs = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.zero.clone(); self.cols];
                v[f] = self.zero.one_like();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = matrix.get(r, f).neg();
                }
                v
            })
            .collect();
        Subspace::span(self.cols, vecs, &self.zero)
    }

    pub fn eigenspace(&self, lambda: &S) -> Result<Subspace<S>, LinalgError> {
        Ok(self.shift(lambda)?.kernel())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<S, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(self.zero.one_like());
        }
        let mut m = self.clone();
        let mut prev = self.zero.one_like();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(self.zero.clone());
            };
            if p != k {
                m.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                let lead = m.get(i, k).clone();
                for j in k + 1..n {
                    let mut v = m.get(i, j).checked_mul(&pivot)?;
                    if !lead.is_zero() && !m.get(k, j).is_zero() {
                        v = v.checked_sub(&lead.checked_mul(m.get(k, j))?)?;
                    }
                    if !prev.is_one() {
                        v = v.checked_div(&prev)?;
                    }
                    m.set(i, j, v);
                }
                m.set(i, k, self.zero.clone());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, &self.zero, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.zero.one_like()
            } else {
                self.zero.clone()
            }
        });
        let Rref { matrix, rank, pivots } = aug.try_rref()?;
        if rank < n || pivots.get(n.wrapping_sub(1)).is_some_and(|&p| p >= n) {
            return Ok(None);
        }
        Ok(Some(Self::from_fn(n, n, &self.zero, |i, j| matrix.get(i, n + j).clone())))
    }

    /// Classifies the solutions of `self * x = rhs`.
    pub fn solve(&self, rhs: &[S]) -> Result<Solution<S>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch("right-hand side length"));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, &self.zero, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let Rref { matrix, pivots, .. } = aug.try_rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::None);
        }
        let mut x = vec![self.zero.clone(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Affine(x, self.kernel()))
        }
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S], zero: &S) -> Result<S, LinalgError> {
    let mut acc = zero.zero_like();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Ok(acc)
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// A subspace of `S^n`, stored as its reduced echelon basis so equal subspaces
/// compare equal.
#[derive(Clone, PartialEq)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    zero: S,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize, zero: &S) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            zero: zero.zero_like(),
        }
    }

    pub fn full(ambient: usize, zero: &S) -> Self {
        Matrix::identity(ambient, zero).row_space()
    }

    pub fn span(ambient: usize, vecs: Vec<Vec<S>>, zero: &S) -> Self {
        if vecs.is_empty() {
            return Self::zero(ambient, zero);
        }
        Matrix::from_rows(vecs, zero)
            .expect("vectors share the ambient dimension")
            .row_space()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero"))
            .collect()
    }

    /// `v` minus its echelon reduction against the basis; zero exactly when `v` lies in the span.
    /// The residual vanishes on every pivot column.
    pub fn reduce(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch("vector length"));
        }
        let mut r = v.to_vec();
        for (row, p) in self.basis.iter().zip(self.pivots()) {
            let f = v[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.checked_sub(&f.checked_mul(y)?)?;
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v)
            .map(|r| r.iter().all(Scalar::is_zero))
            .unwrap_or(false)
    }

    pub fn is_subspace_of(&self, o: &Self) -> bool {
        self.basis.iter().all(|v| o.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Self::span(self.ambient, rows, &self.zero)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        // x = Σ a_i u_i = Σ b_j v_j: kernel of [U^T | -V^T]
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ambient, &self.zero);
        }
        let (p, q) = (self.dim(), o.dim());
        let m = Matrix::from_fn(self.ambient, p + q, &self.zero, |i, j| {
            if j < p {
                self.basis[j][i].clone()
            } else {
                o.basis[j - p][i].neg()
            }
        });
        let vecs = m
            .kernel()
            .basis
            .iter()
            .map(|k| {
                let mut v = vec![self.zero.clone(); self.ambient];
                for (a, u) in k[..p].iter().zip(&self.basis) {
                    for (x, y) in v.iter_mut().zip(u) {
                        *x = x.add(&a.mul(y));
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, vecs, &self.zero)
    }
}

impl<S: Scalar> Matrix<S> {
    /// Row space as an echelon-based subspace.
    pub fn row_space(&self) -> Subspace<S> {
        let Rref { matrix, rank, .. } = self.rref();
        Subspace {
            ambient: self.cols,
            basis: (0..rank).map(|i| matrix.row(i).to_vec()).collect(),
            zero: self.zero.clone(),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace<{}>{:?}", self.ambient, self.basis)
    }
}
