//! Small dense linear algebra over any [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{Rational, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<S>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![S::zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o = o.clone() + a.clone() * vj.clone();
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, other.rows);
        let mut out: Mat<S> = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        let o = &mut out.data[i * other.cols + j];
                        *o = o.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Mat<S>) -> Mat<S> {
        self.matmul(other) - other.matmul(self)
    }

    pub fn inverse(&self) -> Option<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Reduces to reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else { continue };
            self.swap_rows(p, r);
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let x = self[(r, j)].clone() * inv.clone();
                self[(r, j)] = x;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pj = self[(r, j)].clone();
                    if !pj.is_zero() {
                        let x = self[(i, j)].clone() - f.clone() * pj;
                        self[(i, j)] = x;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: Scalar> Add for Mat<S> {
    type Output = Mat<S>;
    fn add(self, o: Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: add_vec(&self.data, &o.data) }
    }
}

impl<S: Scalar> Sub for Mat<S> {
    type Output = Mat<S>;
    fn sub(self, o: Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: sub_vec(&self.data, &o.data) }
    }
}

impl<S: Scalar> Neg for Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.into_iter().map(|x| -x).collect() }
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, o: &Mat<S>) -> Mat<S> {
        self.matmul(o)
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

pub fn add_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale_vec<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    if s.is_zero() {
        return vec![S::zero(); a.len()];
    }
    a.iter().map(|x| if x.is_zero() { S::zero() } else { x.clone() * s.clone() }).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

/// Returns the first index `k` at which the leading `k+1` principal minor
/// fails to be positive, or `None` if the symmetric matrix is positive definite.
///
/// Runs symmetric Gaussian elimination without pivoting: the `k`-th pivot is
/// the ratio of consecutive leading principal minors.
pub fn first_nonpositive_minor(gram: &Mat<Rational>) -> Option<usize> {
    assert_eq!(gram.rows, gram.cols);
    let n = gram.rows;
    let mut a = gram.clone();
    for k in 0..n {
        let p = a[(k, k)].clone();
        if !p.is_positive() {
            return Some(k);
        }
        let pinv = p.recip().unwrap();
        for i in k + 1..n {
            let f = a[(i, k)].clone();
            if f.is_zero() {
                continue;
            }
            let f = f * pinv.clone();
            for j in k + 1..n {
                let akj = a[(k, j)].clone();
                if !akj.is_zero() {
                    let x = a[(i, j)].clone() - f.clone() * akj;
                    a[(i, j)] = x;
                }
            }
        }
    }
    None
}

pub fn is_positive_definite(gram: &Mat<Rational>) -> bool {
    first_nonpositive_minor(gram).is_none()
}

/// Coordinates with respect to a linearly independent family of vectors,
/// read off from a fixed set of pivot entries.
#[derive(Clone, Debug)]
pub struct Chart<S> {
    pub pivots: Vec<usize>,
    /// `coords = solve · v[pivots]`
    pub solve: Mat<S>,
}

impl<S: Scalar> Chart<S> {
    /// Builds a chart for `basis` (each vector of equal length). Returns `None`
    /// if the family is dependent.
    pub fn new(basis: &[Vec<S>]) -> Option<Self> {
        let k = basis.len();
        if k == 0 {
            return Some(Chart { pivots: vec![], solve: Mat::zeros(0, 0) });
        }
        let mut m = Mat::from_rows(basis);
        let pivots = m.rref_in_place();
        if pivots.len() < k {
            return None;
        }
        // B[pivots] as a k×k matrix with column j = basis j restricted.
        let sub = Mat::from_fn(k, k, |i, j| basis[j][pivots[i]].clone());
        Some(Chart { pivots, solve: sub.inverse()? })
    }

    pub fn coords(&self, v: &[S]) -> Vec<S> {
        let restricted: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.solve.apply(&restricted)
    }
}

impl Chart<Rational> {
    /// Coordinates of a vector over any scalar type extending `Q`.
    pub fn coords_in<T: Scalar>(&self, v: &[T]) -> Vec<T> {
        let restricted: Vec<&T> = self.pivots.iter().map(|&p| &v[p]).collect();
        (0..self.solve.rows)
            .map(|i| {
                self.solve.row(i).iter().zip(&restricted).fold(T::zero(), |acc, (a, x)| {
                    if a.is_zero() || x.is_zero() {
                        acc
                    } else {
                        acc + T::from_rational(a) * (*x).clone()
                    }
                })
            })
            .collect()
    }
}

/// Indices of a maximal linearly independent subfamily, chosen greedily in order.
pub fn independent_subset<S: Scalar>(vectors: &[Vec<S>]) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut echelon: Vec<(usize, Vec<S>)> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for (p, row) in &echelon {
            let f = w[*p].clone();
            if !f.is_zero() {
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = x.clone() - f.clone() * r.clone();
                    }
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[p].inv().unwrap();
            let w: Vec<S> = w.iter().map(|x| x.clone() * inv.clone()).collect();
            for (_, row) in echelon.iter_mut() {
                let f = row[p].clone();
                if !f.is_zero() {
                    for (x, r) in row.iter_mut().zip(&w) {
                        if !r.is_zero() {
                            *x = x.clone() - f.clone() * r.clone();
                        }
                    }
                }
            }
            echelon.push((p, w));
            chosen.push(idx);
        }
    }
    chosen
}
