//! Cubic norm structures: norm `N`, adjoint `#`, cross product `×`, trace
//! pairing, `U`-operator, Jordan product and rank.
//!
//! A [`CubicDescriptor`] is the algebra object; [`JordanElement`] is a bare
//! coordinate vector interpreted through a descriptor. Three kinds exist:
//!
//! * `Unit`: `J = F`, with `N(x) = x³`, `x# = x²`, `(x, y) = 3xy`.
//! * `QuadraticPair`: `J = F × S` for a quadratic space `S` of signature
//!   `(1, r)`, with `N(β, t) = β q_S(t)` and `(β, t)# = (q_S(t), β ι_S(t))`.
//! * `Hermitian3`: `J = H₃(C)`, coordinates `(c₁, c₂, c₃, a₁, a₂, a₃)` with `aᵢ`
//!   in the `(i+1, i+2)` entry.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::composition::{CompositionAlgebra, CompositionKind};
use crate::error::{Error, Result};
use crate::linalg::{dot, Mat};
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CubicKind {
    Unit,
    /// Diagonal of `q_S` in an orthogonal basis whose first vector is `1_S`:
    /// `q_S(t) = Σ sᵢ tᵢ²` with `s₀ = 1` and `sᵢ < 0` for `i ≥ 1`.
    QuadraticPair { s_diag: Vec<Rational> },
    Hermitian3(CompositionKind),
}

#[derive(Clone, Debug)]
pub struct CubicDescriptor {
    kind: CubicKind,
    dim: usize,
    comp: Option<CompositionAlgebra>,
    /// Diagonal of the trace-pairing Gram matrix.
    gram: Vec<Rational>,
    name: String,
}

impl PartialEq for CubicDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

/// Coordinates of an element of `J` (or of `J∨`, identified with `J` by the
/// trace pairing).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanElement<S>(pub Vec<S>);

impl<S: Scalar> JordanElement<S> {
    pub fn zero(dim: usize) -> Self {
        JordanElement(vec![S::zero(); dim])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        JordanElement(crate::linalg::scale_vec(&self.0, s))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> JordanElement<T> {
        JordanElement(self.0.iter().map(f).collect())
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }
}

impl JordanElement<Rational> {
    pub fn lift<S: Scalar>(&self) -> JordanElement<S> {
        self.map(S::from_rational)
    }
}

impl<S: Scalar> Add for JordanElement<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        JordanElement(crate::linalg::add_vec(&self.0, &o.0))
    }
}

impl<S: Scalar> Sub for JordanElement<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        JordanElement(crate::linalg::sub_vec(&self.0, &o.0))
    }
}

impl<S: Scalar> Neg for JordanElement<S> {
    type Output = Self;
    fn neg(self) -> Self {
        JordanElement(self.0.into_iter().map(|x| -x).collect())
    }
}

impl<'a, S: Scalar> Add for &'a JordanElement<S> {
    type Output = JordanElement<S>;
    fn add(self, o: Self) -> JordanElement<S> {
        JordanElement(crate::linalg::add_vec(&self.0, &o.0))
    }
}

impl<'a, S: Scalar> Sub for &'a JordanElement<S> {
    type Output = JordanElement<S>;
    fn sub(self, o: Self) -> JordanElement<S> {
        JordanElement(crate::linalg::sub_vec(&self.0, &o.0))
    }
}

impl<S: fmt::Debug> fmt::Debug for JordanElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J{:?}", self.0)
    }
}

fn sq<S: Scalar>(x: &S) -> S {
    x.clone() * x.clone()
}

impl CubicDescriptor {
    pub fn unit() -> Self {
        CubicDescriptor { kind: CubicKind::Unit, dim: 1, comp: None, gram: vec![Rational::from(3)], name: "g2".into() }
    }

    pub fn hermitian(kind: CompositionKind) -> Self {
        let m = kind.dim();
        let mut gram = vec![Rational::from(1); 3];
        gram.extend(std::iter::repeat(Rational::from(2)).take(3 * m));
        let name = match kind {
            CompositionKind::Reals => "f4",
            CompositionKind::Complex => "e6",
            CompositionKind::Quaternions => "e7",
            CompositionKind::Octonions => "e8",
        };
        CubicDescriptor {
            kind: CubicKind::Hermitian3(kind),
            dim: 3 + 3 * m,
            comp: Some(CompositionAlgebra::new(kind)),
            gram,
            name: name.into(),
        }
    }

    /// `J = F × S` with `S` of signature `(1, r)`, `q_S = diag(1, −1, …, −1)`.
    pub fn quadratic_pair(r: usize) -> Self {
        let mut s = vec![Rational::from(1)];
        s.extend(std::iter::repeat(Rational::from(-1)).take(r));
        Self::quadratic_pair_diag(s).expect("standard form is valid")
    }

    /// `J = F × S` for `q_S(t) = Σ sᵢ tᵢ²`; requires `s₀ = 1` and `sᵢ < 0` otherwise.
    pub fn quadratic_pair_diag(s_diag: Vec<Rational>) -> Result<Self> {
        if s_diag.first() != Some(&Rational::from(1)) {
            return Err(Error::Unsupported("q_S(1_S) must equal 1".into()));
        }
        if s_diag[1..].iter().any(|s| !s.is_negative()) {
            return Err(Error::NotPositiveDefinite("S must have signature (1, r)".into()));
        }
        let r = s_diag.len() - 1;
        let mut gram = vec![Rational::from(1)];
        gram.extend(s_diag.iter().map(|s| Rational::from(2) * s.abs()));
        Ok(CubicDescriptor {
            kind: CubicKind::QuadraticPair { s_diag },
            dim: r + 2,
            comp: None,
            gram,
            name: format!("so:{r}"),
        })
    }

    /// Accepts a symmetric Gram matrix `G` of `q_S` (so `q_S(t) = tᵀGt`) whose
    /// first basis vector is `1_S`, diagonalizes it by an exact congruence
    /// fixing `1_S`, and returns the descriptor with the change of basis `P`
    /// (columns are the new basis vectors in old coordinates).
    pub fn quadratic_pair_from_gram(g: &Mat<Rational>) -> Result<(Self, Mat<Rational>)> {
        let n = g.rows;
        if n == 0 || g.cols != n || *g != g.transpose() {
            return Err(Error::Unsupported("Gram matrix must be square and symmetric".into()));
        }
        let bilinear = |u: &[Rational], v: &[Rational]| dot(u, &g.apply(v));
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut diag: Vec<Rational> = Vec::new();
        for k in 0..n {
            let mut v: Vec<Rational> = (0..n).map(|i| Rational::from(i64::from(i == k))).collect();
            for (b, d) in basis.iter().zip(&diag) {
                let coeff = bilinear(&v, b) / d.clone();
                v = crate::linalg::sub_vec(&v, &crate::linalg::scale_vec(b, &coeff));
            }
            let d = bilinear(&v, &v);
            if d.is_zero() {
                return Err(Error::Unsupported("degenerate quadratic form on S".into()));
            }
            basis.push(v);
            diag.push(d);
        }
        let desc = Self::quadratic_pair_diag(diag)?;
        Ok((desc, Mat::from_columns(n, &basis)))
    }

    /// Looks up `g2`, `f4`, `e6`, `e7`, `e8` or `so:r`.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "g2" => Ok(Self::unit()),
            "f4" => Ok(Self::hermitian(CompositionKind::Reals)),
            "e6" => Ok(Self::hermitian(CompositionKind::Complex)),
            "e7" => Ok(Self::hermitian(CompositionKind::Quaternions)),
            "e8" => Ok(Self::hermitian(CompositionKind::Octonions)),
            _ => name
                .strip_prefix("so:")
                .and_then(|r| r.parse::<usize>().ok())
                .map(Self::quadratic_pair)
                .ok_or_else(|| Error::UnknownAlgebra(name.into())),
        }
    }

    pub fn kind(&self) -> &CubicKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn composition(&self) -> Option<&CompositionAlgebra> {
        self.comp.as_ref()
    }

    /// Diagonal of the trace-pairing Gram matrix in the coordinate basis.
    pub fn gram_diag(&self) -> &[Rational] {
        &self.gram
    }

    pub fn gram_matrix(&self) -> Mat<Rational> {
        Mat::from_fn(self.dim, self.dim, |i, j| if i == j { self.gram[i].clone() } else { Rational::from(0) })
    }

    pub fn one<S: Scalar>(&self) -> JordanElement<S> {
        let mut v = vec![S::zero(); self.dim];
        match &self.kind {
            CubicKind::Unit => v[0] = S::one(),
            CubicKind::QuadraticPair { .. } => {
                v[0] = S::one();
                v[1] = S::one();
            }
            CubicKind::Hermitian3(_) => {
                for c in v.iter_mut().take(3) {
                    *c = S::one();
                }
            }
        }
        JordanElement(v)
    }

    pub fn zero<S: Scalar>(&self) -> JordanElement<S> {
        JordanElement::zero(self.dim)
    }

    pub fn basis<S: Scalar>(&self, i: usize) -> JordanElement<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        JordanElement(v)
    }

    pub fn scalar<S: Scalar>(&self, s: S) -> JordanElement<S> {
        self.one::<S>().scale(&s)
    }

    /// Diagonal element `diag(c₁, c₂, c₃)` of the Hermitian kind.
    pub fn diag<S: Scalar>(&self, c: [S; 3]) -> JordanElement<S> {
        assert!(matches!(self.kind, CubicKind::Hermitian3(_)));
        let mut v = vec![S::zero(); self.dim];
        for (k, ck) in c.into_iter().enumerate() {
            v[k] = ck;
        }
        JordanElement(v)
    }

    fn m(&self) -> usize {
        self.comp.as_ref().map_or(0, |c| c.dim())
    }

    fn off<'a, S>(&self, x: &'a JordanElement<S>, i: usize) -> &'a [S] {
        let m = self.m();
        &x.0[3 + i * m..3 + (i + 1) * m]
    }

    pub fn check_dim<S>(&self, x: &JordanElement<S>) -> Result<()> {
        if x.0.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: x.0.len() });
        }
        Ok(())
    }

    pub fn norm<S: Scalar>(&self, x: &JordanElement<S>) -> S {
        match &self.kind {
            CubicKind::Unit => sq(&x.0[0]) * x.0[0].clone(),
            CubicKind::QuadraticPair { s_diag } => x.0[0].clone() * self.q_s(s_diag, &x.0[1..]),
            CubicKind::Hermitian3(_) => {
                let comp = self.comp.as_ref().unwrap();
                let c = &x.0[..3];
                let (a1, a2, a3) = (self.off(x, 0), self.off(x, 1), self.off(x, 2));
                let mut n = c[0].clone() * c[1].clone() * c[2].clone();
                n = n - c[0].clone() * comp.norm(a1) - c[1].clone() * comp.norm(a2) - c[2].clone() * comp.norm(a3);
                let a12 = comp.mul(a1, a2);
                let tr = dot(&a12, &comp.conj(a3));
                n + tr.clone() + tr
            }
        }
    }

    fn q_s<S: Scalar>(&self, s_diag: &[Rational], t: &[S]) -> S {
        t.iter().zip(s_diag).fold(S::zero(), |acc, (ti, si)| {
            if ti.is_zero() {
                acc
            } else {
                acc + S::from_rational(si) * sq(ti)
            }
        })
    }

    /// `(t, t')_S`, the polar form with `(t, t)_S = 2 q_S(t)`.
    fn s_pair<S: Scalar>(&self, s_diag: &[Rational], t: &[S], u: &[S]) -> S {
        let p = t.iter().zip(u).zip(s_diag).fold(S::zero(), |acc, ((a, b), si)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                acc + S::from_rational(si) * a.clone() * b.clone()
            }
        });
        p.clone() + p
    }

    fn iota_s<S: Scalar>(t: &[S]) -> Vec<S> {
        t.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() }).collect()
    }

    pub fn adjoint<S: Scalar>(&self, x: &JordanElement<S>) -> JordanElement<S> {
        match &self.kind {
            CubicKind::Unit => JordanElement(vec![sq(&x.0[0])]),
            CubicKind::QuadraticPair { s_diag } => {
                let mut v = vec![self.q_s(s_diag, &x.0[1..])];
                v.extend(crate::linalg::scale_vec(&Self::iota_s(&x.0[1..]), &x.0[0]));
                JordanElement(v)
            }
            CubicKind::Hermitian3(_) => {
                let half = S::frac(1, 2);
                self.cross(x, x).scale(&half)
            }
        }
    }

    /// `x × y = (x + y)# − x# − y#`, evaluated by its bilinear expansion.
    pub fn cross<S: Scalar>(&self, x: &JordanElement<S>, y: &JordanElement<S>) -> JordanElement<S> {
        match &self.kind {
            CubicKind::Unit => JordanElement(vec![(x.0[0].clone() * y.0[0].clone()).scale_int(2)]),
            CubicKind::QuadraticPair { s_diag } => {
                let (b, t) = (&x.0[0], &x.0[1..]);
                let (b2, u) = (&y.0[0], &y.0[1..]);
                let mut v = vec![self.s_pair(s_diag, t, u)];
                let left = crate::linalg::scale_vec(&Self::iota_s(u), b);
                let right = crate::linalg::scale_vec(&Self::iota_s(t), b2);
                v.extend(crate::linalg::add_vec(&left, &right));
                JordanElement(v)
            }
            CubicKind::Hermitian3(_) => {
                let comp = self.comp.as_ref().unwrap();
                let m = self.m();
                let (c, d) = (&x.0[..3], &y.0[..3]);
                let mut out = Vec::with_capacity(self.dim);
                for i in 0..3 {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    let cc = c[j].clone() * d[k].clone() + c[k].clone() * d[j].clone();
                    let p = dot(self.off(x, i), self.off(y, i));
                    out.push(cc - p.clone() - p);
                }
                for i in 0..3 {
                    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                    let p1 = comp.mul(self.off(x, j), self.off(y, k));
                    let p2 = comp.mul(self.off(y, j), self.off(x, k));
                    let s = comp.conj(&crate::linalg::add_vec(&p1, &p2));
                    let t1 = crate::linalg::scale_vec(self.off(y, i), &c[i]);
                    let t2 = crate::linalg::scale_vec(self.off(x, i), &d[i]);
                    for r in 0..m {
                        out.push(s[r].clone() - t1[r].clone() - t2[r].clone());
                    }
                }
                JordanElement(out)
            }
        }
    }

    /// Trace pairing `(x, y)`.
    pub fn pair<S: Scalar>(&self, x: &JordanElement<S>, y: &JordanElement<S>) -> S {
        x.0.iter().zip(&y.0).zip(&self.gram).fold(S::zero(), |acc, ((a, b), g)| {
            if a.is_zero() || b.is_zero() {
                acc
            } else {
                acc + S::from_rational(g) * a.clone() * b.clone()
            }
        })
    }

    /// `tr(x) = (1_J, x)`.
    pub fn trace<S: Scalar>(&self, x: &JordanElement<S>) -> S {
        self.pair(&self.one(), x)
    }

    /// Symmetric trilinear form with `(x, x, x) = 6N(x)`; equals `(x × y, z)`.
    pub fn trilinear<S: Scalar>(&self, x: &JordanElement<S>, y: &JordanElement<S>, z: &JordanElement<S>) -> S {
        self.pair(&self.cross(x, y), z)
    }

    /// `U_x(y) = −x# × y + (x, y)x`.
    pub fn u_op<S: Scalar>(&self, x: &JordanElement<S>, y: &JordanElement<S>) -> JordanElement<S> {
        let xs = self.adjoint(x);
        x.scale(&self.pair(x, y)) - self.cross(&xs, y)
    }

    /// `{X, Y} = Φ_{ι(1),X}(Y) = −1 × (X × Y) + tr(Y)X + tr(X)Y`.
    pub fn jordan_product<S: Scalar>(&self, x: &JordanElement<S>, y: &JordanElement<S>) -> JordanElement<S> {
        let one = self.one::<S>();
        let xy = self.cross(x, y);
        x.scale(&self.trace(y)) + y.scale(&self.trace(x)) - self.cross(&one, &xy)
    }

    /// Jordan square `x² = x# + tr(x)x − tr(x#)1`.
    pub fn square<S: Scalar>(&self, x: &JordanElement<S>) -> JordanElement<S> {
        let xs = self.adjoint(x);
        let t = self.trace(x);
        let ts = self.trace(&xs);
        xs + x.scale(&t) - self.one::<S>().scale(&ts)
    }

    /// `x⁻¹ = x#/N(x)`.
    pub fn inverse<S: Scalar>(&self, x: &JordanElement<S>) -> Option<JordanElement<S>> {
        let n = self.norm(x).inv()?;
        Some(self.adjoint(x).scale(&n))
    }

    /// 0 iff `x = 0`; ≤ 1 iff `x# = 0`; ≤ 2 iff `N(x) = 0`; else 3.
    pub fn rank<S: Scalar>(&self, x: &JordanElement<S>) -> u8 {
        if x.is_zero() {
            0
        } else if self.adjoint(x).is_zero() {
            1
        } else if self.norm(x).is_zero() {
            2
        } else {
            3
        }
    }

    /// The identification `J∨ → J` is implicit; `ι` on `J` for the Cartan
    /// involution is the identity in these coordinates.
    pub fn iota<S: Scalar>(&self, x: &JordanElement<S>) -> JordanElement<S> {
        x.clone()
    }

    /// Dual action `φ̃ = −G⁻¹ φᵀ G` of an endomorphism `φ` of `J` on `J∨ ≅ J`,
    /// characterized by `(φz, μ) + (z, φ̃μ) = 0`.
    pub fn dual_endo<S: Scalar>(&self, phi: &Mat<S>) -> Mat<S> {
        let n = self.dim;
        Mat::from_fn(n, n, |a, b| {
            let v = &phi[(b, a)];
            if v.is_zero() {
                S::zero()
            } else {
                -(v.clone() * S::from_rational(&(self.gram[b].clone() / self.gram[a].clone())))
            }
        })
    }

    pub fn random(&self, rng: &mut impl Rng, num: i64, den: i64) -> JordanElement<Rational> {
        JordanElement((0..self.dim).map(|_| Rational::random(rng, num, den)).collect())
    }

    pub fn random_f64(&self, rng: &mut impl Rng, lo: f64, hi: f64) -> JordanElement<f64> {
        JordanElement((0..self.dim).map(|_| rng.gen_range(lo..=hi)).collect())
    }

    /// Elements of `J` with zero trace form the complement `J⁰` of `F·1_J`;
    /// returns a basis of it built from the coordinate basis.
    pub fn traceless_basis(&self) -> Vec<JordanElement<Rational>> {
        let traces: Vec<Rational> = (0..self.dim).map(|i| self.trace(&self.basis::<Rational>(i))).collect();
        let anchor = traces.iter().position(|t| !t.is_zero()).expect("1_J has nonzero trace");
        let mut out = Vec::new();
        for i in 0..self.dim {
            if i == anchor {
                continue;
            }
            let ratio = traces[i].clone() / traces[anchor].clone();
            out.push(self.basis::<Rational>(i) - self.basis::<Rational>(anchor).scale(&ratio));
        }
        out
    }
}

/// Positive definiteness of a real element: `tr(Y)`, `tr(Y#)`, `N(Y)` all positive.
pub fn is_positive_definite_f64(desc: &CubicDescriptor, y: &JordanElement<f64>) -> bool {
    desc.trace(y) > 0.0 && desc.trace(&desc.adjoint(y)) > 0.0 && desc.norm(y) > 0.0
}

pub fn is_positive_definite_exact(desc: &CubicDescriptor, y: &JordanElement<Rational>) -> bool {
    desc.trace(y).is_positive() && desc.trace(&desc.adjoint(y)).is_positive() && desc.norm(y).is_positive()
}

/// `X + iY` over the complex numbers.
pub fn complexify(x: &JordanElement<f64>, y: &JordanElement<f64>) -> JordanElement<num_complex::Complex64> {
    JordanElement(x.0.iter().zip(&y.0).map(|(a, b)| num_complex::Complex64::new(*a, *b)).collect())
}

/// Every descriptor kind used by the axiom suite.
pub fn all_descriptor_kinds() -> Vec<CubicDescriptor> {
    let mut v = vec![CubicDescriptor::unit()];
    for r in 0..=3 {
        v.push(CubicDescriptor::quadratic_pair(r));
    }
    for k in CompositionKind::ALL {
        v.push(CubicDescriptor::hermitian(k));
    }
    v
}

/// Residuals of the cubic norm structure axioms at `x`, `y`.
/// Each entry is `(label, holds)`.
pub fn axiom_checks(desc: &CubicDescriptor, x: &JordanElement<Rational>, y: &JordanElement<Rational>) -> Vec<(&'static str, bool)> {
    let one = desc.one::<Rational>();
    let nx = desc.norm(x);
    let xs = desc.adjoint(x);
    let ys = desc.adjoint(y);
    let t111 = |a: &JordanElement<Rational>| polarized_trilinear(desc, &one, &one, a) / Rational::from(2);
    let pair_from_trilinear = t111(x) * t111(y) - polarized_trilinear(desc, &one, x, y);
    vec![
        ("N(1)=1", desc.norm(&one) == Rational::from(1)),
        ("1#=1", desc.adjoint(&one) == one),
        ("1×x=(1,x)1−x", desc.cross(&one, x) == one.scale(&desc.pair(&one, x)) - x.clone()),
        ("(x#)#=N(x)x", desc.adjoint(&xs) == x.scale(&nx)),
        ("(x,y) from trilinear", desc.pair(x, y) == pair_from_trilinear),
        ("(x,x,x)=6N(x)", polarized_trilinear(desc, x, x, x) == nx.clone() * Rational::from(6)),
        (
            "N(x+y) expansion",
            desc.norm(&(x + y)) == nx.clone() + desc.pair(&xs, y) + desc.pair(x, &ys) + desc.norm(y),
        ),
        ("N(U_x y)=N(x)²N(y)", desc.norm(&desc.u_op(x, y)) == nx.clone() * nx * desc.norm(y)),
    ]
}

/// Full polarization of `N`: the symmetric trilinear form `T` with
/// `T(x, x, x) = 6N(x)`, computed from norm values only.
pub fn polarized_trilinear<S: Scalar>(
    desc: &CubicDescriptor,
    x: &JordanElement<S>,
    y: &JordanElement<S>,
    z: &JordanElement<S>,
) -> S {
    let n = |v: &JordanElement<S>| desc.norm(v);
    let xy = x + y;
    let xz = x + z;
    let yz = y + z;
    let xyz = &xy + z;
    n(&xyz) - n(&xy) - n(&xz) - n(&yz) + n(x) + n(y) + n(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_positive_definite;
    use crate::scalars::CayleyScalar;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn norm_examples() {
        for d in all_descriptor_kinds() {
            assert_eq!(d.norm(&d.one::<Rational>()), q(1), "{}", d.name());
        }
        let h = CubicDescriptor::hermitian(CompositionKind::Octonions);
        assert_eq!(h.norm(&h.diag([q(1), q(2), q(3)])), q(6));
        let u = CubicDescriptor::unit();
        assert_eq!(u.norm(&JordanElement(vec![q(2)])), q(8));
    }

    #[test]
    fn hermitian_complex_norm_matches_determinant() {
        // Oracle: 3×3 determinant of the Hermitian matrix over Q(i).
        let d = CubicDescriptor::hermitian(CompositionKind::Complex);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let x = d.random(&mut rng, 5, 3);
            let c = |k: usize| CayleyScalar::real(x.0[k].clone());
            let a = |k: usize| {
                CayleyScalar::new(x.0[3 + 2 * k].clone(), x.0[4 + 2 * k].clone(), q(0), q(0))
            };
            let m = [[c(0), a(2), a(1).conj()], [a(2).conj(), c(1), a(0)], [a(1), a(0).conj(), c(2)]];
            let det = m[0][0].clone() * (m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone())
                - m[0][1].clone() * (m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone())
                + m[0][2].clone() * (m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone());
            assert_eq!(det, CayleyScalar::real(d.norm(&x)));
        }
    }

    #[test]
    fn adjoint_and_cross_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in all_descriptor_kinds() {
            let one = d.one::<Rational>();
            assert_eq!(d.adjoint(&one), one);
            for _ in 0..20 {
                let x = d.random(&mut rng, 4, 3);
                let y = d.random(&mut rng, 4, 3);
                let direct = d.adjoint(&(&x + &y)) - d.adjoint(&x) - d.adjoint(&y);
                assert_eq!(d.cross(&x, &y), direct);
                assert_eq!(d.cross(&x, &y), d.cross(&y, &x));
                assert_eq!(d.cross(&x, &x), d.adjoint(&x).scale(&q(2)));
            }
        }
    }

    #[test]
    fn pair_of_unit_is_three() {
        for d in all_descriptor_kinds() {
            let one = d.one::<Rational>();
            let t = |a: &JordanElement<Rational>| polarized_trilinear(&d, &one, &one, a) / q(2);
            let oracle = t(&one) * t(&one) - polarized_trilinear(&d, &one, &one, &one);
            assert_eq!(oracle, q(3));
            assert_eq!(d.pair(&one, &one), q(3));
        }
    }

    #[test]
    fn axioms_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in all_descriptor_kinds() {
            for _ in 0..100 {
                let x = d.random(&mut rng, 5, 3);
                let y = d.random(&mut rng, 5, 3);
                for (label, ok) in axiom_checks(&d, &x, &y) {
                    assert!(ok, "{label} fails for {}", d.name());
                }
                assert_eq!(d.trilinear(&x, &y, &x), polarized_trilinear(&d, &x, &y, &x));
            }
        }
    }

    #[test]
    fn trace_pairing_positive_definite() {
        for d in all_descriptor_kinds() {
            let gram = Mat::from_fn(d.dim(), d.dim(), |i, j| d.pair(&d.basis::<Rational>(i), &d.basis(j)));
            assert_eq!(gram, d.gram_matrix());
            assert!(is_positive_definite(&gram), "{}", d.name());
        }
    }

    #[test]
    fn u_operator_and_jordan_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in all_descriptor_kinds() {
            let one = d.one::<Rational>();
            for _ in 0..30 {
                let x = d.random(&mut rng, 4, 3);
                let y = d.random(&mut rng, 4, 3);
                assert_eq!(d.u_op(&one, &y), y);
                assert_eq!(d.jordan_product(&one, &x), x.scale(&q(2)));
                assert_eq!(d.jordan_product(&x, &y), d.jordan_product(&y, &x));
                assert_eq!(d.trace(&d.jordan_product(&x, &y)), d.pair(&x, &y) * q(2));
                let tx = d.trace(&x);
                let ty = d.trace(&y);
                let tcross = d.trace(&d.cross(&x, &y));
                let expanded = d.cross(&x, &y) + y.scale(&tx) + x.scale(&ty) - one.scale(&tcross);
                assert_eq!(d.jordan_product(&x, &y), expanded);
                assert_eq!(d.jordan_product(&x, &x).scale(&Rational::new(1, 2)), d.square(&x));
                let t = d.trace(&x);
                assert_eq!(t.clone() * t, d.trace(&d.square(&x)) + q(2) * d.trace(&d.adjoint(&x)));
            }
        }
        let u = CubicDescriptor::unit();
        assert_eq!(u.u_op(&JordanElement(vec![q(3)]), &JordanElement(vec![q(5)])), JordanElement(vec![q(45)]));
    }

    #[test]
    fn rank_examples() {
        let h = CubicDescriptor::hermitian(CompositionKind::Quaternions);
        assert_eq!(h.rank(&h.one::<Rational>()), 3);
        assert_eq!(h.rank(&h.diag([q(1), q(0), q(0)])), 1);
        assert_eq!(h.rank(&h.diag([q(1), q(1), q(0)])), 2);
        assert_eq!(h.rank(&h.zero::<Rational>()), 0);
    }

    #[test]
    fn dual_endo_characterization() {
        let d = CubicDescriptor::hermitian(CompositionKind::Complex);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let phi = Mat::from_fn(d.dim(), d.dim(), |_, _| Rational::random(&mut rng, 3, 2));
        let dual = d.dual_endo(&phi);
        for _ in 0..10 {
            let z = d.random(&mut rng, 3, 2);
            let mu = d.random(&mut rng, 3, 2);
            let lhs = d.pair(&JordanElement(phi.apply(&z.0)), &mu) + d.pair(&z, &JordanElement(dual.apply(&mu.0)));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn general_gram_is_diagonalized() {
        let g = Mat::from_rows(&[vec![q(1), q(1)], vec![q(1), q(-1)]]);
        let (d, p) = CubicDescriptor::quadratic_pair_from_gram(&g).unwrap();
        assert_eq!(d.dim(), 3);
        let congruent = p.transpose().matmul(&g).matmul(&p);
        assert_eq!(congruent, Mat::from_rows(&[vec![q(1), q(0)], vec![q(0), q(-2)]]));
        let bad = Mat::from_rows(&[vec![q(1), q(0)], vec![q(0), q(1)]]);
        assert!(CubicDescriptor::quadratic_pair_from_gram(&bad).is_err());
    }
}
