//! The `Z/2`-graded model `g(J) = (sl₂ ⊕ h(J)⁰) ⊕ (V₂ ⊗ W_J)` at `α = ½`.
//!
//! `V₂` has basis `e, f` with `⟨e, f⟩ = 1`; an odd element is `e⊗a + f⊗b`.
//! The `sl₂` part is stored through the coefficients of `E = (0 1; 0 0)`,
//! `H = (1 0; 0 −1)` and `F = (0 0; 1 0)`, so that `e·e = 2E`, `f·f = −2F`,
//! `e·f = −H`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::freudenthal::{j2, quartic, symplectic, w_dim, FreudenthalVector, HSimilitude};
use crate::jordan::{CubicDescriptor, JordanElement};
use crate::lie_h::{endo_to_h, h_apply, h_bracket, h_cartan, h_to_endo, phi_ww, HAlgebra, HElement};
use crate::lie_m::{MElement, PhiVariant};
use crate::linalg::Mat;
use crate::scalars::{Rational, Scalar};

/// `[E, H, F]` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Element<S>(pub [S; 3]);

impl<S: Scalar> Sl2Element<S> {
    pub fn zero() -> Self {
        Sl2Element([S::zero(), S::zero(), S::zero()])
    }

    pub fn e() -> Self {
        Sl2Element([S::one(), S::zero(), S::zero()])
    }

    pub fn h() -> Self {
        Sl2Element([S::zero(), S::one(), S::zero()])
    }

    pub fn f() -> Self {
        Sl2Element([S::zero(), S::zero(), S::one()])
    }

    /// `(p q; r −p)` with `p = H`-coefficient, `q = E`-coefficient, `r = F`-coefficient.
    pub fn matrix(&self) -> [[S; 2]; 2] {
        let [q, p, r] = self.0.clone();
        [[p.clone(), q], [r, -p]]
    }

    pub fn bracket(&self, o: &Self) -> Self {
        let [q, p, r] = &self.0;
        let [q2, p2, r2] = &o.0;
        let two = S::from_i64(2);
        Sl2Element([
            two.clone() * (p.clone() * q2.clone() - q.clone() * p2.clone()),
            q.clone() * r2.clone() - q2.clone() * r.clone(),
            two * (r.clone() * p2.clone() - p.clone() * r2.clone()),
        ])
    }

    /// `B_sp(s, s′) = tr(s s′)`, so `B(E, F) = 1`.
    pub fn killing(&self, o: &Self) -> S {
        let [q, p, r] = &self.0;
        let [q2, p2, r2] = &o.0;
        S::from_i64(2) * p.clone() * p2.clone() + q.clone() * r2.clone() + r.clone() * q2.clone()
    }

    /// Action on `e⊗a + f⊗b`: `e⊗(pa + qb) + f⊗(ra − pb)`.
    pub fn act(
        &self,
        a: &FreudenthalVector<S>,
        b: &FreudenthalVector<S>,
    ) -> (FreudenthalVector<S>, FreudenthalVector<S>) {
        let [q, p, r] = &self.0;
        (a.scale(p).add(&b.scale(q)), a.scale(r).sub(&b.scale(p)))
    }

    fn add(&self, o: &Self) -> Self {
        Sl2Element([0, 1, 2].map(|k| self.0[k].clone() + o.0[k].clone()))
    }

    fn scale(&self, s: &S) -> Self {
        Sl2Element([0, 1, 2].map(|k| self.0[k].clone() * s.clone()))
    }
}

/// `s + φ + e⊗we + f⊗wf`.
#[derive(Clone, Debug, PartialEq)]
pub struct GElement<S> {
    pub sl2: Sl2Element<S>,
    pub h: HElement<S>,
    pub we: FreudenthalVector<S>,
    pub wf: FreudenthalVector<S>,
}

impl<S: Scalar> GElement<S> {
    pub fn zero(n: usize) -> Self {
        GElement {
            sl2: Sl2Element::zero(),
            h: HElement::zero(n),
            we: FreudenthalVector::zero(n),
            wf: FreudenthalVector::zero(n),
        }
    }

    pub fn from_sl2(n: usize, s: Sl2Element<S>) -> Self {
        GElement { sl2: s, ..Self::zero(n) }
    }

    pub fn from_h(h: HElement<S>) -> Self {
        let n = h.gamma.dim();
        GElement { h, ..Self::zero(n) }
    }

    pub fn from_e(v: FreudenthalVector<S>) -> Self {
        let n = v.b.dim();
        GElement { we: v, ..Self::zero(n) }
    }

    pub fn from_f(v: FreudenthalVector<S>) -> Self {
        let n = v.b.dim();
        GElement { wf: v, ..Self::zero(n) }
    }

    pub fn jdim(&self) -> usize {
        self.we.b.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.sl2.0.iter().all(|x| x.is_zero()) && self.h.is_zero() && self.we.is_zero() && self.wf.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GElement { sl2: self.sl2.add(&o.sl2), h: self.h.add(&o.h), we: self.we.add(&o.we), wf: self.wf.add(&o.wf) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        GElement { sl2: self.sl2.scale(s), h: self.h.scale(s), we: self.we.scale(s), wf: self.wf.scale(s) }
    }

    /// Coefficientwise complex conjugation.
    pub fn conj_real(&self) -> Self {
        GElement {
            sl2: Sl2Element(self.sl2.0.clone().map(|x| x.conj())),
            h: self.h.conj(),
            we: self.we.conj(),
            wf: self.wf.conj(),
        }
    }

    /// Components in degrees `−2, −1, 0, 1, 2` for the grading by `ad(H)`.
    pub fn grade5(&self) -> [GElement<S>; 5] {
        let n = self.jdim();
        let [e, h, f] = self.sl2.0.clone();
        [
            GElement::from_sl2(n, Sl2Element([S::zero(), S::zero(), f])),
            GElement::from_f(self.wf.clone()),
            GElement { sl2: Sl2Element([S::zero(), h, S::zero()]), h: self.h.clone(), ..GElement::zero(n) },
            GElement::from_e(self.we.clone()),
            GElement::from_sl2(n, Sl2Element([e, S::zero(), S::zero()])),
        ]
    }

    /// Largest degree with a nonzero component; `None` for `0`.
    pub fn filtration_degree(&self) -> Option<i8> {
        let parts = self.grade5();
        (0..5).rev().find(|&k| !parts[k].is_zero()).map(|k| k as i8 - 2)
    }
}

impl GElement<Rational> {
    pub fn lift<S: Scalar>(&self) -> GElement<S> {
        GElement {
            sl2: Sl2Element(self.sl2.0.clone().map(|x| S::from_rational(&x))),
            h: self.h.lift(),
            we: self.we.lift(),
            wf: self.wf.lift(),
        }
    }
}

/// Action of the even part on the odd part.
fn even_on_odd<S: Scalar>(
    desc: &CubicDescriptor,
    s: &Sl2Element<S>,
    h: &HElement<S>,
    a: &FreudenthalVector<S>,
    b: &FreudenthalVector<S>,
) -> (FreudenthalVector<S>, FreudenthalVector<S>) {
    let (sa, sb) = s.act(a, b);
    let ha = if h.is_zero() || a.is_zero() { FreudenthalVector::zero(desc.dim()) } else { h_apply(desc, h, a) };
    let hb = if h.is_zero() || b.is_zero() { FreudenthalVector::zero(desc.dim()) } else { h_apply(desc, h, b) };
    (sa.add(&ha), sb.add(&hb))
}

/// The bracket at `α = ½`.
pub fn g_bracket<S: Scalar>(desc: &CubicDescriptor, x: &GElement<S>, y: &GElement<S>) -> GElement<S> {
    let half = S::frac(1, 2);
    let mut sl2 = x.sl2.bracket(&y.sl2);
    let mut h = h_bracket(desc, &x.h, &y.h);
    let (a, b, a2, b2) = (&x.we, &x.wf, &y.we, &y.wf);
    let aa = symplectic(desc, a, a2);
    let ab = symplectic(desc, a, b2);
    let ba = symplectic(desc, b, a2);
    let bb = symplectic(desc, b, b2);
    sl2.0[0] = sl2.0[0].clone() + aa;
    sl2.0[1] = sl2.0[1].clone() - half.clone() * (ab + ba);
    sl2.0[2] = sl2.0[2].clone() - bb;
    if !a.is_zero() && !b2.is_zero() {
        h = h.add(&phi_ww(desc, a, b2).scale(&half));
    }
    if !b.is_zero() && !a2.is_zero() {
        h = h.sub(&phi_ww(desc, b, a2).scale(&half));
    }
    let (ye, yf) = even_on_odd(desc, &x.sl2, &x.h, a2, b2);
    let (xe, xf) = even_on_odd(desc, &y.sl2, &y.h, a, b);
    GElement { sl2, h, we: ye.sub(&xe), wf: yf.sub(&xf) }
}

/// `Θ_g`: conjugation by `J₂` on `V₂` and on `W_J`.
pub fn g_cartan<S: Scalar>(desc: &CubicDescriptor, x: &GElement<S>) -> GElement<S> {
    let [e, h, f] = x.sl2.0.clone();
    GElement {
        sl2: Sl2Element([-f, -h, -e]),
        h: h_cartan(desc, &x.h),
        we: j2(&x.wf),
        wf: j2(&x.we).neg(),
    }
}

/// `g·x` for `g ∈ H_J`: `E ↦ νE`, `F ↦ ν⁻¹F`, `φ ↦ gφg⁻¹`, `e⊗v ↦ e⊗gv`, `f⊗v ↦ ν⁻¹f⊗gv`.
pub fn h_adjoint<S: Scalar>(desc: &CubicDescriptor, g: &HSimilitude<S>, x: &GElement<S>) -> Result<GElement<S>> {
    let ginv = g.map.inverse().ok_or_else(|| Error::Similitude("g is not invertible".into()))?;
    let nuinv = g.nu.inv().ok_or(Error::DivisionByZero)?;
    let [e, h, f] = x.sl2.0.clone();
    let conj = g.map.matmul(&h_to_endo(desc, &x.h)).matmul(&ginv);
    Ok(GElement {
        sl2: Sl2Element([e * g.nu.clone(), h, f * nuinv.clone()]),
        h: endo_to_h(desc, &conj),
        we: g.apply(&x.we),
        wf: g.apply(&x.wf).scale(&nuinv),
    })
}

/// `3 + dim h(J)⁰ + 2 dim W_J`.
pub fn g_dim(desc: &CubicDescriptor) -> usize {
    GAlgebra::new(desc).dim()
}

/// Sparse coordinate vector.
pub type Sparse = Vec<(u32, Rational)>;

/// `g(J)` with a fixed basis: `E, H, F`; the `h(J)⁰` basis (`J∨`, `m(J)`, `J`);
/// `e ⊗` the standard basis of `W_J`; `f ⊗` the same.
pub struct GAlgebra {
    pub h: HAlgebra,
    table: OnceLock<Vec<Sparse>>,
    gram: OnceLock<Mat<Rational>>,
    cartan: OnceLock<Vec<Sparse>>,
}

impl GAlgebra {
    pub fn new(desc: &CubicDescriptor) -> Self {
        GAlgebra { h: HAlgebra::new(desc), table: OnceLock::new(), gram: OnceLock::new(), cartan: OnceLock::new() }
    }

    pub fn desc(&self) -> &CubicDescriptor {
        self.h.desc()
    }

    pub fn dim(&self) -> usize {
        3 + self.h.dim() + 2 * w_dim(self.desc())
    }

    pub fn offset_h(&self) -> usize {
        3
    }

    pub fn offset_e(&self) -> usize {
        3 + self.h.dim()
    }

    pub fn offset_f(&self) -> usize {
        3 + self.h.dim() + w_dim(self.desc())
    }

    pub fn basis(&self, k: usize) -> GElement<Rational> {
        let n = self.desc().dim();
        let (oh, oe, of) = (self.offset_h(), self.offset_e(), self.offset_f());
        if k < oh {
            let mut s = Sl2Element::zero();
            s.0[k] = Rational::from(1);
            GElement::from_sl2(n, s)
        } else if k < oe {
            GElement::from_h(self.h.basis(k - oh))
        } else if k < of {
            GElement::from_e(FreudenthalVector::basis(n, k - oe))
        } else {
            GElement::from_f(FreudenthalVector::basis(n, k - of))
        }
    }

    pub fn coords<S: Scalar>(&self, x: &GElement<S>) -> Vec<S> {
        let mut out: Vec<S> = x.sl2.0.to_vec();
        out.extend(self.h.coords(&x.h));
        out.extend(x.we.to_vec());
        out.extend(x.wf.to_vec());
        out
    }

    pub fn from_coords<S: Scalar>(&self, c: &[S]) -> GElement<S> {
        let (oh, oe, of) = (self.offset_h(), self.offset_e(), self.offset_f());
        GElement {
            sl2: Sl2Element([c[0].clone(), c[1].clone(), c[2].clone()]),
            h: self.h.from_coords(&c[oh..oe]),
            we: FreudenthalVector::from_vec(&c[oe..of]),
            wf: FreudenthalVector::from_vec(&c[of..]),
        }
    }

    /// Structure constants `[b_i, b_j]` as sparse coordinate vectors, indexed by `i·dim + j`.
    pub fn table(&self) -> &[Sparse] {
        self.table.get_or_init(|| self.build_table())
    }

    fn build_table(&self) -> Vec<Sparse> {
        let desc = self.desc();
        let dim = self.dim();
        let basis: Vec<GElement<Rational>> = (0..dim).map(|k| self.basis(k)).collect();
        let odd = self.odd_brackets();
        let mut table = vec![Vec::new(); dim * dim];
        let oe = self.offset_e();
        for i in 0..dim {
            for j in i + 1..dim {
                let c = if i >= oe {
                    odd(i - oe, j - oe)
                } else {
                    self.coords(&g_bracket(desc, &basis[i], &basis[j]))
                };
                let s = sparsify(&c);
                table[j * dim + i] = s.iter().map(|(k, v)| (*k, -v.clone())).collect();
                table[i * dim + j] = s;
            }
        }
        table
    }

    /// Brackets of two odd basis vectors, using cached `Φ_{Eα,Eβ}` coordinates.
    fn odd_brackets(&self) -> impl Fn(usize, usize) -> Vec<Rational> + '_ {
        let desc = self.desc();
        let n = desc.dim();
        let wd = w_dim(desc);
        let m = &self.h.m;
        let phi_cache: Vec<Vec<Rational>> = (0..n * n)
            .map(|k| {
                let (al, be) = (k / n, k % n);
                m.coords(&crate::lie_m::phi(desc, &desc.basis(al), &desc.basis(be), PhiVariant::Plain))
            })
            .collect();
        let id = m.coords(&MElement::<Rational>::identity(n));
        let dim = self.dim();
        let (oh, om, ox) = (self.offset_h(), self.offset_h() + n, self.offset_h() + n + m.dim());
        move |i: usize, j: usize| {
            let mut out = vec![Rational::from(0); dim];
            let (si, ki) = (i / wd, i % wd);
            let (sj, kj) = (j / wd, j % wd);
            let (u, v) = (FreudenthalVector::<Rational>::basis(n, ki), FreudenthalVector::<Rational>::basis(n, kj));
            let pair = symplectic(desc, &u, &v);
            // `sl₂` part.
            match (si, sj) {
                (0, 0) => out[0] = pair.clone(),
                (1, 1) => out[2] = -pair.clone(),
                _ => out[1] = -pair.clone() * Rational::new(1, 2),
            }
            // `h` part: ½Φ_{a,b′} for (e⊗a, f⊗b′), −½Φ_{b,a′} for (f⊗b, e⊗a′).
            if si != sj {
                let sign = Rational::from(if si == 0 { 1 } else { -1 });
                add_phi_ww(&mut out, desc, &u, &v, &sign, &phi_cache, &id, (oh, om, ox));
            }
            out
        }
    }

    /// Gram matrix of `B_g`.
    pub fn gram(&self) -> &Mat<Rational> {
        self.gram.get_or_init(|| {
            let desc = self.desc();
            let dim = self.dim();
            let (oh, oe, of) = (self.offset_h(), self.offset_e(), self.offset_f());
            let n = desc.dim();
            let hg = self.h.gram();
            Mat::from_fn(dim, dim, |i, j| match (i, j) {
                (0, 2) | (2, 0) => Rational::from(1),
                (1, 1) => Rational::from(2),
                _ if (oh..oe).contains(&i) && (oh..oe).contains(&j) => hg[(i - oh, j - oh)].clone(),
                _ if (oe..of).contains(&i) && j >= of => {
                    -symplectic::<Rational>(desc, &FreudenthalVector::basis(n, i - oe), &FreudenthalVector::basis(n, j - of))
                }
                _ if i >= of && (oe..of).contains(&j) => {
                    -symplectic::<Rational>(desc, &FreudenthalVector::basis(n, j - oe), &FreudenthalVector::basis(n, i - of))
                }
                _ => Rational::from(0),
            })
        })
    }

    /// `B_g(x, y) = B_sp + B_h − ⟨a,b′⟩ + ⟨b,a′⟩`.
    pub fn killing<S: Scalar>(&self, x: &GElement<S>, y: &GElement<S>) -> S {
        let d = self.desc();
        x.sl2.killing(&y.sl2) + self.h.killing(&x.h, &y.h) - symplectic(d, &x.we, &y.wf) + symplectic(d, &x.wf, &y.we)
    }

    /// `Θ_g` of each basis vector.
    pub fn cartan_table(&self) -> &[Sparse] {
        self.cartan.get_or_init(|| {
            (0..self.dim()).map(|k| sparsify(&self.coords(&g_cartan(self.desc(), &self.basis(k))))).collect()
        })
    }

    /// `[x, y]` in coordinates through the structure table.
    pub fn bracket_sparse(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let dim = self.dim();
        let table = self.table();
        let mut acc = vec![Rational::from(0); dim];
        for (i, xi) in x {
            for (j, yj) in y {
                let entry = &table[*i as usize * dim + *j as usize];
                if entry.is_empty() {
                    continue;
                }
                let f = xi.clone() * yj.clone();
                for (k, c) in entry {
                    acc[*k as usize] = acc[*k as usize].clone() + f.clone() * c.clone();
                }
            }
        }
        sparsify(&acc)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Sparse {
        &self.table()[i * self.dim() + j]
    }

    /// `B_Θ(x, y) = −B_g(x, Θ_g y)` on the basis.
    pub fn cartan_gram(&self) -> Mat<Rational> {
        let dim = self.dim();
        let g = self.gram();
        let th = self.cartan_table();
        Mat::from_fn(dim, dim, |i, j| {
            th[j].iter().fold(Rational::from(0), |acc, (k, c)| acc - g[(i, *k as usize)].clone() * c.clone())
        })
    }
}

fn add_phi_ww(
    out: &mut [Rational],
    desc: &CubicDescriptor,
    w: &FreudenthalVector<Rational>,
    w2: &FreudenthalVector<Rational>,
    sign: &Rational,
    phi_cache: &[Vec<Rational>],
    id: &[Rational],
    (oh, om, ox): (usize, usize, usize),
) {
    let n = desc.dim();
    let h = ww_half(desc, w, w2, phi_cache, id);
    for k in 0..n {
        out[oh + k] = out[oh + k].clone() + sign.clone() * h.0[k].clone();
        out[ox + k] = out[ox + k].clone() + sign.clone() * h.2[k].clone();
    }
    for (k, c) in h.1.iter().enumerate() {
        if !c.is_zero() {
            out[om + k] = out[om + k].clone() + sign.clone() * c.clone();
        }
    }
}

/// `½Φ_{w,w′}` as (`γ`, `m`-coordinates, `X`) for standard basis vectors `w, w′`:
/// `γ = ac′ + a′c − b×b′`, `φ = Φ_{c,b′} + Φ_{c′,b} + (ad′ + a′d − (b,c′) − (b′,c))·Id`,
/// `X = bd′ + b′d − c×c′`.
fn ww_half(
    desc: &CubicDescriptor,
    w: &FreudenthalVector<Rational>,
    w2: &FreudenthalVector<Rational>,
    phi_cache: &[Vec<Rational>],
    id: &[Rational],
) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let n = desc.dim();
    let gamma = (&(&w2.c.scale(&w.a) + &w.c.scale(&w2.a)) - &desc.cross(&w.b, &w2.b)).0;
    let x = (&(&w.b.scale(&w2.d) + &w2.b.scale(&w.d)) - &desc.cross(&w.c, &w2.c)).0;
    let s = w.a.clone() * w2.d.clone() + w2.a.clone() * w.d.clone() - desc.pair(&w.b, &w2.c) - desc.pair(&w2.b, &w.c);
    let mut m: Vec<Rational> = id.iter().map(|c| c.clone() * s.clone()).collect();
    let support = |j: &JordanElement<Rational>| j.0.iter().position(|c| !c.is_zero());
    if let (Some(p), Some(q)) = (support(&w.c), support(&w2.b)) {
        let f = w.c.0[p].clone() * w2.b.0[q].clone();
        for (k, c) in phi_cache[p * n + q].iter().enumerate() {
            m[k] = m[k].clone() + f.clone() * c.clone();
        }
    }
    if let (Some(p), Some(q)) = (support(&w2.c), support(&w.b)) {
        let f = w2.c.0[p].clone() * w.b.0[q].clone();
        for (k, c) in phi_cache[p * n + q].iter().enumerate() {
            m[k] = m[k].clone() + f.clone() * c.clone();
        }
    }
    (gamma, m, x)
}

pub fn sparsify(c: &[Rational]) -> Sparse {
    c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k as u32, v.clone())).collect()
}

pub fn densify(s: &Sparse, dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from(0); dim];
    for (k, v) in s {
        out[*k as usize] = v.clone();
    }
    out
}

/// The constant with `B(exp(e⊗v)f₀, f₀) = C₀ q(v)`, evaluated at `v = (1, 0, 0, 1)`
/// where `q(v) = 1`.
pub fn c0(desc: &CubicDescriptor) -> Rational {
    let v = FreudenthalVector::new(Rational::from(1), desc.zero(), desc.zero(), Rational::from(1));
    exp_ad_f0_pairing(desc, &v) * quartic(desc, &v).recip().expect("q(v) = 1")
}

/// `B(exp(ad(e⊗v)) f₀, f₀)`.
pub fn exp_ad_f0_pairing(desc: &CubicDescriptor, v: &FreudenthalVector<Rational>) -> Rational {
    let n = desc.dim();
    let x = GElement::from_e(v.clone());
    let mut term = GElement::from_sl2(n, Sl2Element::f());
    let mut total = term.clone();
    let mut fact = Rational::from(1);
    for k in 1..=4 {
        term = g_bracket(desc, &x, &term);
        fact = fact * Rational::from(k);
        total = total.add(&term.scale(&fact.recip().unwrap()));
    }
    total.sl2.killing(&Sl2Element::f())
}
