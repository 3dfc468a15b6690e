//! The `Z/3`-graded model `g(J) = sl₃ ⊕ m(J)⁰ ⊕ V₃⊗J ⊕ V₃∨⊗J∨` and its
//! isomorphism onto the `Z/2` model.
//!
//! `v₁, v₂, v₃` is the standard basis of `V₃`, `δ₁, δ₂, δ₃` the dual basis,
//! `vᵢ ∧ vⱼ = δₖ` and `δᵢ ∧ δⱼ = vₖ` for `(i, j, k)` cyclic. `V₃` carries the
//! form making `vᵢ` orthonormal, so `ι: V₃ → V₃∨` is the identity on coordinates.

use crate::freudenthal::FreudenthalVector;
use crate::jordan::{CubicDescriptor, JordanElement};
use crate::lie_g::{GElement, Sl2Element};
use crate::lie_h::HElement;
use crate::lie_m::{phi, MAlgebra, MElement, PhiVariant};
use crate::linalg::Mat;
use crate::scalars::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct G3Element<S> {
    /// Traceless `3×3` matrix, `E_{ij} = vᵢ ⊗ δⱼ`.
    pub sl3: Mat<S>,
    /// Element of `m(J)⁰` (multiplier zero).
    pub m0: MElement<S>,
    /// Coefficients of `v₁, v₂, v₃`.
    pub vj: [JordanElement<S>; 3],
    /// Coefficients of `δ₁, δ₂, δ₃`.
    pub dj: [JordanElement<S>; 3],
}

/// `(k, sign)` with `vᵢ ∧ vⱼ = sign·δₖ`.
fn levi_civita(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let k = 3 - i - j;
    Some((k, if (i + 1) % 3 == j { 1 } else { -1 }))
}

impl<S: Scalar> G3Element<S> {
    pub fn zero(n: usize) -> Self {
        G3Element {
            sl3: Mat::zeros(3, 3),
            m0: MElement::zero(n),
            vj: std::array::from_fn(|_| JordanElement::zero(n)),
            dj: std::array::from_fn(|_| JordanElement::zero(n)),
        }
    }

    pub fn jdim(&self) -> usize {
        self.m0.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.sl3.is_zero() && self.m0.is_zero() && self.vj.iter().chain(&self.dj).all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        G3Element {
            sl3: self.sl3.clone() + o.sl3.clone(),
            m0: self.m0.add(&o.m0),
            vj: std::array::from_fn(|i| &self.vj[i] + &o.vj[i]),
            dj: std::array::from_fn(|i| &self.dj[i] + &o.dj[i]),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        G3Element {
            sl3: self.sl3.scale(s),
            m0: self.m0.scale(s),
            vj: std::array::from_fn(|i| self.vj[i].scale(s)),
            dj: std::array::from_fn(|i| self.dj[i].scale(s)),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn conj(&self) -> Self {
        G3Element {
            sl3: self.sl3.map(|x| x.conj()),
            m0: self.m0.conj(),
            vj: std::array::from_fn(|i| self.vj[i].conj()),
            dj: std::array::from_fn(|i| self.dj[i].conj()),
        }
    }

    /// `vᵢ ⊗ X`.
    pub fn v_tensor(i: usize, x: JordanElement<S>) -> Self {
        let mut out = Self::zero(x.dim());
        out.vj[i] = x;
        out
    }

    /// `δᵢ ⊗ γ`.
    pub fn d_tensor(i: usize, g: JordanElement<S>) -> Self {
        let mut out = Self::zero(g.dim());
        out.dj[i] = g;
        out
    }

    pub fn from_sl3(n: usize, m: Mat<S>) -> Self {
        G3Element { sl3: m, ..Self::zero(n) }
    }

    pub fn from_m0(m: MElement<S>) -> Self {
        let n = m.dim();
        G3Element { m0: m, ..Self::zero(n) }
    }
}

impl G3Element<Rational> {
    pub fn lift<S: Scalar>(&self) -> G3Element<S> {
        G3Element {
            sl3: self.sl3.map(S::from_rational),
            m0: self.m0.lift(),
            vj: std::array::from_fn(|i| self.vj[i].lift()),
            dj: std::array::from_fn(|i| self.dj[i].lift()),
        }
    }
}

fn unit_matrix<S: Scalar>(i: usize, j: usize) -> Mat<S> {
    let mut m = Mat::zeros(3, 3);
    m[(i, j)] = S::one();
    m
}

/// `[δⱼ⊗γ, vᵢ⊗X] = (X,γ)(E_{ij} − ⅓δᵢⱼ) + δᵢⱼ Φ′_{γ,X}`.
fn delta_v<S: Scalar>(desc: &CubicDescriptor, j: usize, g: &JordanElement<S>, i: usize, x: &JordanElement<S>) -> (Mat<S>, MElement<S>) {
    let n = desc.dim();
    let pair = desc.pair(x, g);
    let mut m = unit_matrix::<S>(i, j).scale(&pair);
    let mut m0 = MElement::zero(n);
    if i == j {
        m = m - Mat::identity(3).scale(&(pair * S::frac(1, 3)));
        m0 = phi(desc, g, x, PhiVariant::Primed);
    }
    (m, m0)
}

pub fn g3_bracket<S: Scalar>(desc: &CubicDescriptor, x: &G3Element<S>, y: &G3Element<S>) -> G3Element<S> {
    let n = desc.dim();
    let mut out = G3Element::<S>::zero(n);
    out.sl3 = x.sl3.commutator(&y.sl3);
    out.m0 = x.m0.bracket(&y.m0);
    let act_v = |a: &G3Element<S>, b: &G3Element<S>, i: usize| -> JordanElement<S> {
        let mut acc = a.m0.apply(&b.vj[i]);
        for j in 0..3 {
            if !a.sl3[(i, j)].is_zero() {
                acc = acc + b.vj[j].scale(&a.sl3[(i, j)]);
            }
        }
        acc
    };
    let act_d = |a: &G3Element<S>, b: &G3Element<S>, i: usize| -> JordanElement<S> {
        let mut acc = a.m0.apply_dual(desc, &b.dj[i]);
        for j in 0..3 {
            if !a.sl3[(j, i)].is_zero() {
                acc = acc - b.dj[j].scale(&a.sl3[(j, i)]);
            }
        }
        acc
    };
    for i in 0..3 {
        out.vj[i] = act_v(x, y, i) - act_v(y, x, i);
        out.dj[i] = act_d(x, y, i) - act_d(y, x, i);
    }
    for i in 0..3 {
        for j in 0..3 {
            if let Some((k, s)) = levi_civita(i, j) {
                let s = S::from_i64(s);
                if !x.vj[i].is_zero() && !y.vj[j].is_zero() {
                    out.dj[k] = &out.dj[k] + &desc.cross(&x.vj[i], &y.vj[j]).scale(&s);
                }
                if !x.dj[i].is_zero() && !y.dj[j].is_zero() {
                    out.vj[k] = &out.vj[k] + &desc.cross(&x.dj[i], &y.dj[j]).scale(&s);
                }
            }
            if !x.dj[j].is_zero() && !y.vj[i].is_zero() {
                let (m, m0) = delta_v(desc, j, &x.dj[j], i, &y.vj[i]);
                out.sl3 = out.sl3 + m;
                out.m0 = out.m0.add(&m0);
            }
            if !y.dj[j].is_zero() && !x.vj[i].is_zero() {
                let (m, m0) = delta_v(desc, j, &y.dj[j], i, &x.vj[i]);
                out.sl3 = out.sl3 - m;
                out.m0 = out.m0.sub(&m0);
            }
        }
    }
    out
}

/// `tr(m m′) + B_m(φ, φ′) − Σᵢ (Xᵢ, γ′ᵢ) − Σᵢ (X′ᵢ, γᵢ)`.
pub fn g3_killing<S: Scalar>(m: &MAlgebra, x: &G3Element<S>, y: &G3Element<S>) -> S {
    let desc = &m.desc;
    let mut acc = x.sl3.matmul(&y.sl3).trace() + m.killing(&x.m0, &y.m0);
    for i in 0..3 {
        acc = acc - desc.pair(&x.vj[i], &y.dj[i]) - desc.pair(&y.vj[i], &x.dj[i]);
    }
    acc
}

/// `−Xᵗ` on `sl₃`, `Θ_m` on `m(J)⁰`, `vᵢ⊗X ↔ δᵢ⊗ι(X)`.
pub fn g3_cartan<S: Scalar>(desc: &CubicDescriptor, x: &G3Element<S>) -> G3Element<S> {
    G3Element { sl3: -x.sl3.transpose(), m0: x.m0.cartan(desc), vj: x.dj.clone(), dj: x.vj.clone() }
}

/// The explicit isomorphism onto the `Z/2` model at `α = ½`:
/// `E₁₃ ↦ e₀`, `E₃₁ ↦ f₀`, `E₁₁ − E₃₃ ↦ h₀`, `φ_s = E₁₁ − 2E₂₂ + E₃₃ ↦ −2·Id_J`,
/// `aE₁₂ + v₁⊗b + δ₃⊗c + dE₂₃ ↦ e⊗(a,b,c,d)`,
/// `a′E₃₂ + v₃⊗b′ − δ₁⊗c′ − d′E₂₁ ↦ f⊗(a′,b′,c′,d′)`,
/// `δ₂⊗γ + φ + v₂⊗X ↦ γ + φ + X`.
pub fn iso_32<S: Scalar>(x: &G3Element<S>) -> GElement<S> {
    let n = x.jdim();
    let m = &x.sl3;
    let half = S::frac(1, 2);
    let (p, q, r) = (m[(0, 0)].clone(), m[(1, 1)].clone(), m[(2, 2)].clone());
    let sl2 = Sl2Element([m[(0, 2)].clone(), half * (p - r), m[(2, 0)].clone()]);
    let phi = x.m0.add(&MElement::identity(n).scale(&q));
    GElement {
        sl2,
        h: HElement { gamma: x.dj[1].clone(), phi, x: x.vj[1].clone() },
        we: FreudenthalVector::new(m[(0, 1)].clone(), x.vj[0].clone(), x.dj[2].clone(), m[(1, 2)].clone()),
        wf: FreudenthalVector::new(m[(2, 1)].clone(), x.vj[2].clone(), -x.dj[0].clone(), -m[(1, 0)].clone()),
    }
}

/// Inverse of [`iso_32`]. The `E₂₂` coefficient is read off the multiplier,
/// `μ(Id) = 3`.
pub fn iso_23<S: Scalar>(x: &GElement<S>) -> G3Element<S> {
    let n = x.jdim();
    let [e, h, f] = x.sl2.0.clone();
    let q = x.h.phi.mu.clone() * S::frac(1, 3);
    let half_q = q.clone() * S::frac(1, 2);
    let mut m: Mat<S> = Mat::zeros(3, 3);
    m[(0, 0)] = h.clone() - half_q.clone();
    m[(1, 1)] = q.clone();
    m[(2, 2)] = -h - half_q;
    m[(0, 2)] = e;
    m[(2, 0)] = f;
    m[(0, 1)] = x.we.a.clone();
    m[(1, 2)] = x.we.d.clone();
    m[(2, 1)] = x.wf.a.clone();
    m[(1, 0)] = -x.wf.d.clone();
    G3Element {
        sl3: m,
        m0: x.h.phi.sub(&MElement::identity(n).scale(&q)),
        vj: [x.we.b.clone(), x.h.x.clone(), x.wf.b.clone()],
        dj: [-x.wf.c.clone(), x.h.gamma.clone(), x.we.c.clone()],
    }
}

/// `u(vⱼ) = E_{j−1,j+1} − E_{j+1,j−1}` (indices mod 3).
pub fn u_map<S: Scalar>(v: &[S; 3]) -> Mat<S> {
    let mut m: Mat<S> = Mat::zeros(3, 3);
    for (j, c) in v.iter().enumerate() {
        let (a, b) = ((j + 2) % 3, (j + 1) % 3);
        m[(a, b)] = m[(a, b)].clone() + c.clone();
        m[(b, a)] = m[(b, a)].clone() - c.clone();
    }
    m
}

/// `so₃^ℓ(v) = ¼(u(v) + v⊗1 + ι(v)⊗1)`.
pub fn so3l<S: Scalar>(desc: &CubicDescriptor, v: &[S; 3]) -> G3Element<S> {
    let n = desc.dim();
    let one = desc.one::<S>();
    let quarter = S::frac(1, 4);
    G3Element {
        sl3: u_map(v).scale(&quarter),
        m0: MElement::zero(n),
        vj: std::array::from_fn(|i| one.scale(&(v[i].clone() * quarter.clone()))),
        dj: std::array::from_fn(|i| one.scale(&(v[i].clone() * quarter.clone()))),
    }
}

/// `n_v(X) = (tr X/4)u(v) + ½v⊗(X − tr X/2) + ½ι(v)⊗(X − tr X/2)`.
pub fn n_v<S: Scalar>(desc: &CubicDescriptor, v: &[S; 3], x: &JordanElement<S>) -> G3Element<S> {
    let n = desc.dim();
    let tr = desc.trace(x);
    let half = S::frac(1, 2);
    let shifted = x - &desc.one::<S>().scale(&(tr.clone() * half.clone()));
    G3Element {
        sl3: u_map(v).scale(&(tr * S::frac(1, 4))),
        m0: MElement::zero(n),
        vj: std::array::from_fn(|i| shifted.scale(&(v[i].clone() * half.clone()))),
        dj: std::array::from_fn(|i| shifted.scale(&(v[i].clone() * half.clone()))),
    }
}

/// `v ∧ w` read back in `V₃` through `ι`.
pub fn wedge3<S: Scalar>(v: &[S; 3], w: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|k| {
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        v[i].clone() * w[j].clone() - v[j].clone() * w[i].clone()
    })
}

/// A fixed basis of the `Z/3` model: `E₁₁ − E₂₂`, `E₂₂ − E₃₃`, the six `E_{ij}`,
/// an `m(J)⁰` basis, then `vᵢ ⊗ E_α` and `δᵢ ⊗ E_α`.
pub struct G3Algebra {
    pub m: MAlgebra,
    pub m0_basis: Vec<MElement<Rational>>,
}

impl G3Algebra {
    pub fn new(desc: &CubicDescriptor) -> Self {
        let m = MAlgebra::new(desc);
        let m0_basis = m.m0_basis();
        G3Algebra { m, m0_basis }
    }

    pub fn desc(&self) -> &CubicDescriptor {
        &self.m.desc
    }

    pub fn dim(&self) -> usize {
        8 + self.m0_basis.len() + 6 * self.desc().dim()
    }

    pub fn basis(&self, k: usize) -> G3Element<Rational> {
        let desc = self.desc();
        let n = desc.dim();
        let d0 = self.m0_basis.len();
        let one = Rational::from(1);
        match k {
            0 => G3Element::from_sl3(n, unit_matrix(0, 0) - unit_matrix(1, 1)),
            1 => G3Element::from_sl3(n, unit_matrix(1, 1) - unit_matrix(2, 2)),
            2..=7 => {
                let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)][k - 2];
                G3Element::from_sl3(n, unit_matrix(off.0, off.1))
            }
            _ if k < 8 + d0 => G3Element::from_m0(self.m0_basis[k - 8].clone()),
            _ => {
                let r = k - 8 - d0;
                let (slot, a) = (r / n, r % n);
                let e = desc.basis::<Rational>(a).scale(&one);
                if slot < 3 {
                    G3Element::v_tensor(slot, e)
                } else {
                    G3Element::d_tensor(slot - 3, e)
                }
            }
        }
    }
}
