//! Definite composition algebras of dimension 1, 2, 4, 8 over Q.
//!
//! Built by Cayley–Dickson doubling with
//! `(a, b)(c, d) = (ac − conj(d) b, d a + b conj(c))`. The basis `e_0 = 1, e_1, …`
//! is orthonormal for the norm, and every product of basis units is a signed
//! basis unit, so multiplication is stored as a signed permutation table.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompositionKind {
    Reals,
    Complex,
    Quaternions,
    Octonions,
}

impl CompositionKind {
    pub fn dim(self) -> usize {
        match self {
            CompositionKind::Reals => 1,
            CompositionKind::Complex => 2,
            CompositionKind::Quaternions => 4,
            CompositionKind::Octonions => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            1 => Ok(CompositionKind::Reals),
            2 => Ok(CompositionKind::Complex),
            4 => Ok(CompositionKind::Quaternions),
            8 => Ok(CompositionKind::Octonions),
            d => Err(Error::Unsupported(format!("composition algebra of dimension {d}"))),
        }
    }

    pub const ALL: [CompositionKind; 4] =
        [CompositionKind::Reals, CompositionKind::Complex, CompositionKind::Quaternions, CompositionKind::Octonions];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    kind: CompositionKind,
    /// `table[i * dim + j] = (k, s)` means `e_i e_j = s e_k`.
    table: Vec<(usize, i8)>,
}

/// Cayley–Dickson product on coordinate vectors of length 2^k.
pub fn cayley_dickson_mul<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    let n = x.len();
    if n == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cayley_dickson_mul(a, c);
    let dbar_b = cayley_dickson_mul(&cayley_dickson_conj(d), b);
    let da = cayley_dickson_mul(d, a);
    let b_cbar = cayley_dickson_mul(b, &cayley_dickson_conj(c));
    let mut out: Vec<S> = ac.into_iter().zip(dbar_b).map(|(p, q)| p - q).collect();
    out.extend(da.into_iter().zip(b_cbar).map(|(p, q)| p + q));
    out
}

pub fn cayley_dickson_conj<S: Scalar>(x: &[S]) -> Vec<S> {
    x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() }).collect()
}

impl CompositionAlgebra {
    pub fn new(kind: CompositionKind) -> Self {
        let n = kind.dim();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let unit = |k: usize| -> Vec<i64> { (0..n).map(|t| i64::from(t == k)).collect() };
                let prod = cayley_dickson_mul_i64(&unit(i), &unit(j));
                let (k, s) = prod
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v != 0)
                    .map(|(k, v)| (k, *v as i8))
                    .expect("basis products are nonzero");
                table.push((k, s));
            }
        }
        CompositionAlgebra { kind, table }
    }

    pub fn kind(&self) -> CompositionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    /// `e_i e_j` as `(k, sign)`.
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        self.table[i * self.dim() + j]
    }

    pub fn mul<S: Scalar>(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let (k, s) = self.table[i * n + j];
                let p = xi.clone() * yj.clone();
                out[k] = if s > 0 { out[k].clone() + p } else { out[k].clone() - p };
            }
        }
        out
    }

    pub fn conj<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        cayley_dickson_conj(x)
    }

    /// `n(x) = x·conj(x)`, a sum of squares in the orthonormal basis.
    pub fn norm<S: Scalar>(&self, x: &[S]) -> S {
        x.iter().fold(S::zero(), |acc, v| if v.is_zero() { acc } else { acc + v.clone() * v.clone() })
    }

    /// `t(x) = x + conj(x)`.
    pub fn trace<S: Scalar>(&self, x: &[S]) -> S {
        x[0].clone() + x[0].clone()
    }

    /// Polar form `(x, y) = ½ t(x conj(y))`, so `(x, x) = n(x)`.
    pub fn pair<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        crate::linalg::dot(x, y)
    }

    pub fn one<S: Scalar>(&self) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[0] = S::one();
        v
    }

    /// Wraps coordinates as an element of this algebra.
    pub fn element<S: Scalar>(&self, coords: Vec<S>) -> Result<CompositionElement<S>> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: coords.len() });
        }
        Ok(CompositionElement { kind: self.kind, coords })
    }
}

fn cayley_dickson_mul_i64(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let conj = |v: &[i64]| -> Vec<i64> { v.iter().enumerate().map(|(i, t)| if i == 0 { *t } else { -*t }).collect() };
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cayley_dickson_mul_i64(a, c);
    let dbar_b = cayley_dickson_mul_i64(&conj(d), b);
    let da = cayley_dickson_mul_i64(d, a);
    let b_cbar = cayley_dickson_mul_i64(b, &conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&dbar_b).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

/// An element tagged with its parent algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct CompositionElement<S> {
    pub kind: CompositionKind,
    pub coords: Vec<S>,
}

/// Conjugate, norm and trace of an element.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjNormTrace<S> {
    pub conj: CompositionElement<S>,
    pub norm: S,
    pub trace: S,
}

pub fn c_mul<S: Scalar>(
    alg: &CompositionAlgebra,
    x: &CompositionElement<S>,
    y: &CompositionElement<S>,
) -> Result<CompositionElement<S>> {
    if x.kind != alg.kind || y.kind != alg.kind {
        return Err(Error::Mismatch(format!("{:?} · {:?} in {:?}", x.kind, y.kind, alg.kind)));
    }
    Ok(CompositionElement { kind: alg.kind, coords: alg.mul(&x.coords, &y.coords) })
}

pub fn c_conj_norm_trace<S: Scalar>(alg: &CompositionAlgebra, x: &CompositionElement<S>) -> ConjNormTrace<S> {
    ConjNormTrace {
        conj: CompositionElement { kind: x.kind, coords: alg.conj(&x.coords) },
        norm: alg.norm(&x.coords),
        trace: alg.trace(&x.coords),
    }
}
