//! The Cayley transform `𝒞 = (C₂ ⊠ C_h)·w₂₃` of `g(J) ⊗ Q(i, √2)`, the bases
//! of `k` and `p` it relates to the grading, and the Iwasawa re-expressions.
//!
//! Group elements act through their adjoint action only. Unipotent elements
//! of `H_J` act as `exp(ad)` of the matching element of `h(J)⁰`, `η(λ)` by
//! rescaling, `C₂ ∈ SL₂` by conjugation on `sl₂` and on `V₂`, and `w₂₃`
//! through the `Z/3` model.

use crate::error::{Error, Result};
use crate::freudenthal::{eta_apply, j2, n_apply, ndual_apply, r0, FreudenthalVector};
use crate::jordan::{CubicDescriptor, JordanElement};
use crate::lie_g::{g_bracket, g_cartan, GAlgebra, GElement, Sl2Element};
use crate::lie_g3::{iso_23, iso_32, G3Element};
use crate::lie_h::{n_l, n_l_dual, HElement};
use crate::lie_m::{jordan_op, phi, PhiVariant};
use crate::linalg::Mat;
use crate::scalars::{CayleyScalar, Scalar};

type Cx = CayleyScalar;

fn k(n: i64) -> Cx {
    Cx::from_i64(n)
}

fn fr(n: i64, d: i64) -> Cx {
    Cx::frac(n, d)
}

fn im() -> Cx {
    Cx::i()
}

/// `n_L(x)` as an element of `h(J)⁰`.
pub fn n_lie<S: Scalar>(x: &JordanElement<S>) -> HElement<S> {
    HElement::from_x(-x.clone())
}

/// `n_L∨(γ)` as an element of `h(J)⁰`.
pub fn n_lie_dual<S: Scalar>(g: &JordanElement<S>) -> HElement<S> {
    HElement::from_gamma(g.clone())
}

/// `exp(ad y)·x`; fails when the series does not terminate within a few terms.
pub fn exp_ad<S: Scalar>(desc: &CubicDescriptor, y: &GElement<S>, x: &GElement<S>) -> Result<GElement<S>> {
    let mut term = x.clone();
    let mut total = x.clone();
    for j in 1..=10 {
        term = g_bracket(desc, y, &term).scale(&S::frac(1, j));
        if term.is_zero() {
            return Ok(total);
        }
        total = total.add(&term);
    }
    Err(Error::Unsupported("ad(y) is not nilpotent".into()))
}

/// `Ad(n_G(x))`.
pub fn ad_n<S: Scalar>(desc: &CubicDescriptor, x: &JordanElement<S>, y: &GElement<S>) -> GElement<S> {
    exp_ad(desc, &GElement::from_h(n_lie(x)), y).expect("n_L(x) is nilpotent")
}

/// `Ad(n_G∨(γ))`.
pub fn ad_ndual<S: Scalar>(desc: &CubicDescriptor, g: &JordanElement<S>, y: &GElement<S>) -> GElement<S> {
    exp_ad(desc, &GElement::from_h(n_lie_dual(g)), y).expect("n_L∨(γ) is nilpotent")
}

/// `Ad(η(λ))`: `γ ↦ λ²γ`, `X ↦ λ⁻²X`, `η(λ)` on both copies of `W_J`.
pub fn ad_eta<S: Scalar>(lambda: &S, y: &GElement<S>) -> Result<GElement<S>> {
    let l2 = lambda.clone() * lambda.clone();
    let l2i = l2.inv().ok_or(Error::DivisionByZero)?;
    Ok(GElement {
        sl2: y.sl2.clone(),
        h: HElement { gamma: y.h.gamma.scale(&l2), phi: y.h.phi.clone(), x: y.h.x.scale(&l2i) },
        we: eta_apply(lambda, &y.we)?,
        wf: eta_apply(lambda, &y.wf)?,
    })
}

/// Adjoint action of `g ∈ SL₂`: conjugation on `sl₂`, the standard action on `V₂`.
pub fn ad_sl2<S: Scalar>(g: &[[S; 2]; 2], y: &GElement<S>) -> GElement<S> {
    let [[a, b], [c, d]] = g.clone();
    let ginv = [[d.clone(), -b.clone()], [-c.clone(), a.clone()]];
    let m = y.sl2.matrix();
    let mul = |x: &[[S; 2]; 2], z: &[[S; 2]; 2]| -> [[S; 2]; 2] {
        std::array::from_fn(|i| std::array::from_fn(|j| x[i][0].clone() * z[0][j].clone() + x[i][1].clone() * z[1][j].clone()))
    };
    let c2 = mul(&mul(g, &m), &ginv);
    GElement {
        sl2: Sl2Element([c2[0][1].clone(), c2[0][0].clone(), c2[1][0].clone()]),
        h: y.h.clone(),
        we: y.we.scale(&a).add(&y.wf.scale(&b)),
        wf: y.we.scale(&c).add(&y.wf.scale(&d)),
    }
}

/// Adjoint action of `w₂₃ = (−1 0 0; 0 0 −1; 0 −1 0)` through the `Z/3` model.
/// `w₂₃` is an involution.
pub fn ad_w23<S: Scalar>(y: &GElement<S>) -> GElement<S> {
    let x = iso_23(y);
    let w: Mat<S> = Mat::from_fn(3, 3, |i, j| match (i, j) {
        (0, 0) | (1, 2) | (2, 1) => -S::one(),
        _ => S::zero(),
    });
    let z = G3Element {
        sl3: w.matmul(&x.sl3).matmul(&w),
        m0: x.m0.clone(),
        vj: [-x.vj[0].clone(), -x.vj[2].clone(), -x.vj[1].clone()],
        dj: [-x.dj[0].clone(), -x.dj[2].clone(), -x.dj[1].clone()],
    };
    iso_32(&z)
}

/// `C₂ = 2^{−1/2}(i −1; 1 −i)`.
pub fn c2() -> [[Cx; 2]; 2] {
    let s = Cx::sqrt2() * fr(1, 2);
    [[im() * s.clone(), -s.clone()], [s.clone(), -(im() * s)]]
}

/// `C₂⁻¹ = 2^{−1/2}(−i 1; −1 i)`.
pub fn c2_inverse() -> [[Cx; 2]; 2] {
    let s = Cx::sqrt2() * fr(1, 2);
    [[-(im() * s.clone()), s.clone()], [-s.clone(), im() * s]]
}

/// The explicit Cayley transform of `g(J) ⊗ Q(i, √2)`.
#[derive(Clone, Debug)]
pub struct CayleyOperator {
    desc: CubicDescriptor,
}

impl CayleyOperator {
    pub fn new(desc: &CubicDescriptor) -> Self {
        CayleyOperator { desc: desc.clone() }
    }

    pub fn desc(&self) -> &CubicDescriptor {
        &self.desc
    }

    /// `Ad(C_h)` with `C_h = n_G(−i) n_G∨(−i/2) η(2^{−1/2})`.
    pub fn c_h(&self, y: &GElement<Cx>) -> GElement<Cx> {
        let d = &self.desc;
        let one = d.one::<Cx>();
        let y = ad_eta(&(Cx::sqrt2() * fr(1, 2)), y).expect("λ ≠ 0");
        let y = ad_ndual(d, &one.scale(&(-im() * fr(1, 2))), &y);
        ad_n(d, &one.scale(&-im()), &y)
    }

    /// `Ad(C_h⁻¹)` with `C_h⁻¹ = η(√2) n_G∨(i/2) n_G(i)`.
    pub fn c_h_inverse(&self, y: &GElement<Cx>) -> GElement<Cx> {
        let d = &self.desc;
        let one = d.one::<Cx>();
        let y = ad_n(d, &one.scale(&im()), y);
        let y = ad_ndual(d, &one.scale(&(im() * fr(1, 2))), &y);
        ad_eta(&Cx::sqrt2(), &y).expect("λ ≠ 0")
    }

    /// `𝒞(y) = C₂ C_h w₂₃ y`.
    pub fn apply(&self, y: &GElement<Cx>) -> GElement<Cx> {
        self.c_h(&ad_sl2(&c2(), &ad_w23(y)))
    }

    /// `𝒞⁻¹(y) = w₂₃ C₂⁻¹ C_h⁻¹ y`.
    pub fn apply_inverse(&self, y: &GElement<Cx>) -> GElement<Cx> {
        ad_w23(&ad_sl2(&c2_inverse(), &self.c_h_inverse(y)))
    }

    /// Dense matrix of `𝒞` in the basis of `g`, images of basis vectors as columns.
    pub fn matrix(&self, g: &GAlgebra) -> Mat<Cx> {
        self.dense(g, |y| self.apply(y))
    }

    pub fn inverse_matrix(&self, g: &GAlgebra) -> Mat<Cx> {
        self.dense(g, |y| self.apply_inverse(y))
    }

    fn dense(&self, g: &GAlgebra, f: impl Fn(&GElement<Cx>) -> GElement<Cx>) -> Mat<Cx> {
        let cols: Vec<Vec<Cx>> = (0..g.dim()).map(|j| g.coords(&f(&g.basis(j).lift()))).collect();
        Mat::from_columns(g.dim(), &cols)
    }
}

/// Builders for the distinguished bases of `k` and `p`.
#[derive(Clone, Debug)]
pub struct KpBasis {
    desc: CubicDescriptor,
}

pub fn k_basis(desc: &CubicDescriptor) -> KpBasis {
    KpBasis { desc: desc.clone() }
}

pub fn p_basis(desc: &CubicDescriptor) -> KpBasis {
    KpBasis { desc: desc.clone() }
}

/// `(αe + βf) ⊗ v`.
fn odd(alpha: Cx, beta: Cx, v: &FreudenthalVector<Cx>) -> GElement<Cx> {
    GElement { we: v.scale(&alpha), wf: v.scale(&beta), ..GElement::zero(v.b.dim()) }
}

impl KpBasis {
    pub fn desc(&self) -> &CubicDescriptor {
        &self.desc
    }

    fn n(&self) -> usize {
        self.desc.dim()
    }

    /// `r₀(±i·1_J)`.
    pub fn r0_i(&self, sign: i64) -> FreudenthalVector<Cx> {
        r0(&self.desc, &self.desc.one::<Cx>().scale(&(im() * k(sign))))
    }

    /// `V(X) = ½(tr X, −i tr X + 2iX, tr X − 2X, −i tr X)`.
    pub fn v(&self, x: &JordanElement<Cx>) -> FreudenthalVector<Cx> {
        let d = &self.desc;
        let tr = d.trace(x);
        let one = d.one::<Cx>();
        let h = fr(1, 2);
        FreudenthalVector::new(
            tr.clone() * h.clone(),
            (&x.scale(&(im() * k(2))) - &one.scale(&(im() * tr.clone()))).scale(&h),
            (&one.scale(&tr) - &x.scale(&k(2))).scale(&h),
            -(im() * tr * h),
        )
    }

    /// `V(X)* = ½(tr X, i tr X − 2iX, tr X − 2X, i tr X)`.
    pub fn v_star(&self, x: &JordanElement<Cx>) -> FreudenthalVector<Cx> {
        self.v(&x.conj()).conj()
    }

    /// `e_ℓ = ¼(ie + f) ⊗ r₀(i)`.
    pub fn e_l(&self) -> GElement<Cx> {
        odd(im() * fr(1, 4), fr(1, 4), &self.r0_i(1))
    }

    /// `f_ℓ = ¼(ie − f) ⊗ r₀(−i)`.
    pub fn f_l(&self) -> GElement<Cx> {
        odd(im() * fr(1, 4), fr(-1, 4), &self.r0_i(-1))
    }

    /// `h_ℓ = (i/2)((0 1; −1 0) + n_L(−1) + n_L∨(ι(1)))`.
    pub fn h_l(&self) -> GElement<Cx> {
        let d = &self.desc;
        let one = d.one::<Cx>();
        let h = n_lie(&-one.clone()).add(&n_lie_dual(&d.iota(&one)));
        GElement { sl2: Sl2Element([k(1), k(0), k(-1)]), ..GElement::from_h(h) }.scale(&(im() * fr(1, 2)))
    }

    /// `n_E(X) = ½(ie + f) ⊗ V(X)*`.
    pub fn n_e(&self, x: &JordanElement<Cx>) -> GElement<Cx> {
        odd(im() * fr(1, 2), fr(1, 2), &self.v_star(x))
    }

    /// `n_H(X) = (i/2)(tr X·(0 1; −1 0) + n_L(tr X − 2X) + n_L∨(ι(2X − tr X)))`.
    pub fn n_h(&self, x: &JordanElement<Cx>) -> GElement<Cx> {
        let d = &self.desc;
        let tr = d.trace(x);
        let shifted = &d.one::<Cx>().scale(&tr) - &x.scale(&k(2));
        let h = n_lie(&shifted).add(&n_lie_dual(&d.iota(&-shifted.clone())));
        GElement { sl2: Sl2Element([tr.clone(), k(0), -tr]), ..GElement::from_h(h) }.scale(&(im() * fr(1, 2)))
    }

    /// `n_F(X) = ½(ie − f) ⊗ V(X)`.
    pub fn n_f(&self, x: &JordanElement<Cx>) -> GElement<Cx> {
        odd(im() * fr(1, 2), fr(-1, 2), &self.v(x))
    }

    /// `h₃ = ½(−1 i; i 1)`.
    pub fn h3(&self) -> GElement<Cx> {
        GElement::from_sl2(self.n(), Sl2Element([im() * fr(1, 2), fr(-1, 2), im() * fr(1, 2)]))
    }

    /// `h₁(X) = ½(ie + f) ⊗ V(X)`.
    pub fn h1(&self, x: &JordanElement<Cx>) -> GElement<Cx> {
        odd(im() * fr(1, 2), fr(1, 2), &self.v(x))
    }

    /// `h₋₁(Z) = (i/2)(n_L(Z) + n_L∨(ι(Z))) + ½M(Φ_{1,Z})`.
    pub fn hm1(&self, z: &JordanElement<Cx>) -> GElement<Cx> {
        let d = &self.desc;
        let nn = n_lie(z).add(&n_lie_dual(&d.iota(z))).scale(&(im() * fr(1, 2)));
        let m = phi(d, &d.one(), z, PhiVariant::Plain).scale(&fr(1, 2));
        GElement::from_h(nn.add(&HElement::from_m(m)))
    }

    /// `h₋₃ = ¼(ie − f) ⊗ r₀(i)`.
    pub fn hm3(&self) -> GElement<Cx> {
        odd(im() * fr(1, 4), fr(-1, 4), &self.r0_i(1))
    }

    /// `(a, b, c, d)_p = a h₃ + h₁(b) + h₋₁(c) + d h₋₃`.
    pub fn pack(&self, p: &PVector) -> GElement<Cx> {
        self.h3()
            .scale(&p.a)
            .add(&self.h1(&p.b))
            .add(&self.hm1(&p.c))
            .add(&self.hm3().scale(&p.d))
    }

    /// Inverse of [`KpBasis::pack`] on the span of the `p`-basis.
    pub fn unpack(&self, y: &GElement<Cx>) -> Result<PVector> {
        let d = &self.desc;
        let a = y.sl2.0[1].scale_int(-2);
        let c = y.h.x.scale(&(im() * k(2)));
        // wf = ½V(b) − ¼d·r₀(i): wf.a = (tr b − d)/4, wf.d = −i(tr b + d)/4, wf.c = ¼(tr b − 2b) + ¼d.
        let dd = im() * y.wf.d.clone() * k(2) - y.wf.a.clone() * k(2);
        let rhs = &y.wf.c.scale(&k(-2)) + &d.one::<Cx>().scale(&(dd.clone() * fr(1, 2)));
        let trb = d.trace(&rhs) * k(-2);
        let b = &rhs + &d.one::<Cx>().scale(&(trb * fr(1, 2)));
        let p = PVector { a, b, c, d: dd };
        if &self.pack(&p) == y {
            Ok(p)
        } else {
            Err(Error::NotInSpan("element is not in the span of the p-basis".into()))
        }
    }
}

/// Coordinates `(a, b, c, d)` of `a h₃ + h₁(b) + h₋₁(c) + d h₋₃`.
#[derive(Clone, Debug, PartialEq)]
pub struct PVector {
    pub a: Cx,
    pub b: JordanElement<Cx>,
    pub c: JordanElement<Cx>,
    pub d: Cx,
}

impl PVector {
    pub fn zero(n: usize) -> Self {
        PVector { a: k(0), b: JordanElement::zero(n), c: JordanElement::zero(n), d: k(0) }
    }

    pub fn add(&self, o: &Self) -> Self {
        PVector { a: self.a.clone() + o.a.clone(), b: &self.b + &o.b, c: &self.c + &o.c, d: self.d.clone() + o.d.clone() }
    }
}

/// One of the elements `n_E(X)`, `n_F(X)`, `n_H(X)` of `l₀(J)`.
#[derive(Clone, Debug, PartialEq)]
pub enum KAction {
    NE(JordanElement<Cx>),
    NF(JordanElement<Cx>),
    NH(JordanElement<Cx>),
}

impl KAction {
    pub fn element(&self, basis: &KpBasis) -> GElement<Cx> {
        match self {
            KAction::NE(x) => basis.n_e(x),
            KAction::NF(x) => basis.n_f(x),
            KAction::NH(x) => basis.n_h(x),
        }
    }
}

/// `[k, (a, b, c, d)_p]` in `p`-coordinates:
/// `n_F(X) ↦ (0, aX, b×X, (X,c))`, `n_E(X) ↦ ((b,X), c×X, dX, 0)`,
/// `n_H(X) ↦ (tr X a, tr X b − {X,b}, {X,c} − tr X c, −tr X d)`.
pub fn np_action(desc: &CubicDescriptor, act: &KAction, v: &PVector) -> PVector {
    match act {
        KAction::NF(x) => PVector { a: k(0), b: x.scale(&v.a), c: desc.cross(&v.b, x), d: desc.pair(x, &v.c) },
        KAction::NE(x) => PVector { a: desc.pair(&v.b, x), b: desc.cross(&v.c, x), c: x.scale(&v.d), d: k(0) },
        KAction::NH(x) => {
            let t = desc.trace(x);
            let jx = jordan_op(desc, x);
            PVector {
                a: t.clone() * v.a.clone(),
                b: &v.b.scale(&t) - &jx.apply(&v.b),
                c: &jx.apply(&v.c) - &v.c.scale(&t),
                d: -(t * v.d.clone()),
            }
        }
    }
}

/// A `p`-element written as nilpotent + Levi + compact parts.
#[derive(Clone, Debug, PartialEq)]
pub struct IwasawaParts {
    pub nilpotent: GElement<Cx>,
    pub levi: GElement<Cx>,
    pub compact: GElement<Cx>,
}

impl IwasawaParts {
    pub fn total(&self) -> GElement<Cx> {
        self.nilpotent.add(&self.levi).add(&self.compact)
    }

    fn add(&self, o: &Self) -> Self {
        IwasawaParts {
            nilpotent: self.nilpotent.add(&o.nilpotent),
            levi: self.levi.add(&o.levi),
            compact: self.compact.add(&o.compact),
        }
    }

    fn scale(&self, s: &Cx) -> Self {
        IwasawaParts { nilpotent: self.nilpotent.scale(s), levi: self.levi.scale(s), compact: self.compact.scale(s) }
    }
}

/// Iwasawa decomposition of an element of the span of `h₃, h₁(X), h₋₁(Z), h₋₃`:
/// - `h₃ = iE − ½ε − ¼h_ℓ − ¼n_H(1)` with `ε = (1 0; 0 −1)`,
/// - `h₁(X) = ie⊗V(X) − n_F(X)`,
/// - `h₋₁(Z) = i n_L(Z) + ½M(Φ_{1,Z}) + (tr Z/4)h_ℓ + ½n_H(Z − tr Z/2)`,
/// - `h₋₃ = (i/2)e⊗r₀(i) − e_ℓ`.
pub fn iwasawa_express(basis: &KpBasis, y: &GElement<Cx>) -> Result<IwasawaParts> {
    let p = basis.unpack(y)?;
    let d = basis.desc();
    let n = d.dim();
    let zero = GElement::<Cx>::zero(n);
    let one = d.one::<Cx>();
    let h3 = IwasawaParts {
        nilpotent: GElement::from_sl2(n, Sl2Element([im(), k(0), k(0)])),
        levi: GElement::from_sl2(n, Sl2Element([k(0), fr(-1, 2), k(0)])),
        compact: basis.h_l().add(&basis.n_h(&one)).scale(&fr(-1, 4)),
    };
    let h1 = IwasawaParts {
        nilpotent: GElement::from_e(basis.v(&p.b).scale(&im())),
        levi: zero.clone(),
        compact: basis.n_f(&p.b).scale(&k(-1)),
    };
    let tr = d.trace(&p.c);
    let hm1 = IwasawaParts {
        nilpotent: GElement::from_h(n_lie(&p.c).scale(&im())),
        levi: GElement::from_h(HElement::from_m(phi(d, &one, &p.c, PhiVariant::Plain).scale(&fr(1, 2)))),
        compact: basis
            .h_l()
            .scale(&(tr.clone() * fr(1, 4)))
            .add(&basis.n_h(&(&p.c - &one.scale(&(tr * fr(1, 2))))).scale(&fr(1, 2))),
    };
    let hm3 = IwasawaParts {
        nilpotent: GElement::from_e(basis.r0_i(1).scale(&(im() * fr(1, 2)))),
        levi: zero,
        compact: basis.e_l().scale(&k(-1)),
    };
    Ok(h3.scale(&p.a).add(&h1).add(&hm1).add(&hm3.scale(&p.d)))
}

/// Membership in the nilradical spanned by the positive root spaces of
/// `diag(3, 1, −4)` in the `Z/3` model: strictly upper `sl₃`, `v₁⊗J`, `v₂⊗J`, `δ₃⊗J`.
pub fn in_nilradical<S: Scalar>(y: &GElement<S>) -> bool {
    let x = iso_23(y);
    let lower_or_diag = (0..3).all(|i| (0..=i).all(|j| x.sl3[(i, j)].is_zero()));
    lower_or_diag && x.m0.is_zero() && x.vj[2].is_zero() && x.dj[0].is_zero() && x.dj[1].is_zero()
}

/// Membership in the `−1` eigenspace of `Θ` inside the centralizer of the
/// diagonal of `sl₃`.
pub fn in_levi_p<S: Scalar>(desc: &CubicDescriptor, y: &GElement<S>) -> bool {
    let x = iso_23(y);
    let diag = (0..3).all(|i| (0..3).all(|j| i == j || x.sl3[(i, j)].is_zero()));
    let no_odd = x.vj.iter().chain(&x.dj).all(|v| v.is_zero());
    diag && no_odd && g_cartan(desc, y) == y.scale(&-S::one())
}

pub fn in_k<S: Scalar>(desc: &CubicDescriptor, y: &GElement<S>) -> bool {
    &g_cartan(desc, y) == y
}

pub fn in_p<S: Scalar>(desc: &CubicDescriptor, y: &GElement<S>) -> bool {
    g_cartan(desc, y) == y.scale(&-S::one())
}

/// Named pass/fail results.
pub type Checks = Vec<(String, bool)>;

fn real_basis(desc: &CubicDescriptor) -> Vec<JordanElement<Cx>> {
    (0..desc.dim()).map(|a| desc.basis::<Cx>(a)).collect()
}

/// The twelve identities for `𝒞⁻¹` on the `p`-basis, the `k`-basis and the
/// conjugates of the `p`-basis, each over every basis vector of `J`.
pub fn theorem_checks(desc: &CubicDescriptor) -> Checks {
    let n = desc.dim();
    let op = CayleyOperator::new(desc);
    let b = k_basis(desc);
    let z = || JordanElement::<Cx>::zero(n);
    let unit = |a: i64, d: i64| FreudenthalVector::new(k(a), z(), z(), k(d));
    let e_of = |s: Cx, v: FreudenthalVector<Cx>| GElement::from_e(v.scale(&s));
    let f_of = |s: Cx, v: FreudenthalVector<Cx>| GElement::from_f(v.scale(&s));
    let mi = -im();
    let mut out = Checks::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));
    let ci = |y: &GElement<Cx>| op.apply_inverse(y);
    push("C^-1(h3) = -i e(1,0,0,0)", ci(&b.h3()) == e_of(mi.clone(), unit(1, 0)));
    push("C^-1(h-3) = -i e(0,0,0,1)", ci(&b.hm3()) == e_of(mi.clone(), unit(0, 1)));
    push("C^-1(e_l) = E", ci(&b.e_l()) == GElement::from_sl2(n, Sl2Element::e()));
    push("C^-1(f_l) = F", ci(&b.f_l()) == GElement::from_sl2(n, Sl2Element::f()));
    push("C^-1(conj h3) = -i f(0,0,0,1)", ci(&b.h3().conj_real()) == f_of(mi.clone(), unit(0, 1)));
    push("C^-1(conj h-3) = i f(1,0,0,0)", ci(&b.hm3().conj_real()) == f_of(im(), unit(1, 0)));
    let js = real_basis(desc);
    let all = |f: &dyn Fn(&JordanElement<Cx>) -> bool| js.iter().all(f);
    push("C^-1(h1(X)) = -i e(0,X,0,0)", all(&|x| ci(&b.h1(x)) == e_of(mi.clone(), FreudenthalVector::new(k(0), x.clone(), z(), k(0)))));
    push("C^-1(h-1(Z)) = -i e(0,0,Z,0)", all(&|x| ci(&b.hm1(x)) == e_of(mi.clone(), FreudenthalVector::new(k(0), z(), x.clone(), k(0)))));
    push("C^-1(n_E(X)) = n_L^v(iota X)", all(&|x| ci(&b.n_e(x)) == GElement::from_h(n_lie_dual(&desc.iota(x)))));
    push("C^-1(n_F(Y)) = n_L(Y)", all(&|x| ci(&b.n_f(x)) == GElement::from_h(n_lie(x))));
    push(
        "C^-1(conj h1(X)) = i f(0,0,X,0)",
        all(&|x| ci(&b.h1(x).conj_real()) == f_of(im(), FreudenthalVector::new(k(0), z(), x.clone(), k(0)))),
    );
    push(
        "C^-1(conj h-1(Z)) = -i f(0,Z,0,0)",
        all(&|x| ci(&b.hm1(x).conj_real()) == f_of(mi.clone(), FreudenthalVector::new(k(0), x.clone(), z(), k(0)))),
    );
    out
}

/// The thirteen auxiliary relations used to verify the identities.
pub fn helper_checks(desc: &CubicDescriptor) -> Checks {
    let n = desc.dim();
    let b = k_basis(desc);
    let one = desc.one::<Cx>();
    let z = || JordanElement::<Cx>::zero(n);
    let js = real_basis(desc);
    let all = |f: &dyn Fn(&JordanElement<Cx>) -> bool| js.iter().all(f);
    // u = n_G∨(i/2) n_G(i) on W_J.
    let u = |v: &FreudenthalVector<Cx>| ndual_apply(desc, &one.scale(&(im() * fr(1, 2))), &n_apply(desc, &one.scale(&im()), v));
    let mut out = Checks::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));
    push("u V(X) = (0,iX,0,0)", all(&|x| u(&b.v(x)) == FreudenthalVector::new(k(0), x.scale(&im()), z(), k(0))));
    push("u V(X)* = (0,0,-2X,0)", all(&|x| u(&b.v_star(x)) == FreudenthalVector::new(k(0), z(), x.scale(&k(-2)), k(0))));
    push("u r0(i) = (1,0,0,0)", u(&b.r0_i(1)) == FreudenthalVector::new(k(1), z(), z(), k(0)));
    push("u r0(-i) = -8i(0,0,0,1)", u(&b.r0_i(-1)) == FreudenthalVector::new(k(0), z(), z(), im() * k(-8)));
    let ci = c2_inverse();
    let vec2 = |m: &[[Cx; 2]; 2], x: [Cx; 2]| -> [Cx; 2] {
        std::array::from_fn(|r| m[r][0].clone() * x[0].clone() + m[r][1].clone() * x[1].clone())
    };
    push("C2^-1(ie+f) = sqrt2 e", vec2(&ci, [im(), k(1)]) == [Cx::sqrt2(), k(0)]);
    push("C2^-1(ie-f) = -sqrt2 i f", vec2(&ci, [im(), k(-1)]) == [k(0), -(Cx::sqrt2() * im())]);
    let conj_sl2 = |s: Sl2Element<Cx>| ad_sl2(&ci, &GElement::from_sl2(n, s)).sl2;
    push(
        "C2^-1 h3 C2 = -i E",
        conj_sl2(Sl2Element([im() * fr(1, 2), fr(-1, 2), im() * fr(1, 2)])) == Sl2Element([-im(), k(0), k(0)]),
    );
    push(
        "C2^-1 conj(h3) C2 = i F",
        conj_sl2(Sl2Element([-im() * fr(1, 2), fr(-1, 2), -im() * fr(1, 2)])) == Sl2Element([k(0), k(0), im()]),
    );
    let basis_w: Vec<FreudenthalVector<Cx>> = (0..2 * n + 2).map(|j| FreudenthalVector::basis(n, j)).collect();
    let j2inv = |v: &FreudenthalVector<Cx>| j2(v).neg();
    push(
        "J2 n_L(x) J2^-1 = n_L^v(-iota x)",
        all(&|x| basis_w.iter().all(|v| j2(&n_l(desc, x, &j2inv(v))) == n_l_dual(desc, &-desc.iota(x), v))),
    );
    push(
        "J2 n_L^v(g) J2^-1 = n_L(-iota g)",
        all(&|x| basis_w.iter().all(|v| j2(&n_l_dual(desc, x, &j2inv(v))) == n_l(desc, &-desc.iota(x), v))),
    );
    push(
        "h-1(Z) = (i/2) n_G^v(i) n_L(Z) n_G^v(-i)",
        all(&|x| {
            let c = ad_ndual(desc, &one.scale(&im()), &GElement::from_h(n_lie(x)));
            b.hm1(x) == c.scale(&(im() * fr(1, 2)))
        }),
    );
    push(
        "u conj(h-1(Z)) u^-1 = -2i n_L(Z)",
        all(&|x| {
            let y = ad_n(desc, &one.scale(&im()), &b.hm1(x).conj_real());
            let y = ad_ndual(desc, &one.scale(&(im() * fr(1, 2))), &y);
            y == GElement::from_h(n_lie(x)).scale(&(im() * k(-2)))
        }),
    );
    let lam = Cx::sqrt2();
    let lam_inv = lam.inv().expect("√2 ≠ 0");
    push(
        "eta(l) n_L(Z) eta(l)^-1 = n_L(l^-2 Z)",
        all(&|x| {
            basis_w.iter().all(|v| {
                let lhs = eta_apply(&lam, &n_l(desc, x, &eta_apply(&lam_inv, v).expect("λ ≠ 0"))).expect("λ ≠ 0");
                lhs == n_l(desc, &x.scale(&fr(1, 2)), v)
            })
        }),
    );
    out
}

/// Relations among the `k`- and `p`-bases: the long-root triple, `Θ`-eigenspaces,
/// `B_g` pairings, brackets with `f_ℓ`, `h_ℓ` and the `n_?` actions on `p`.
pub fn basis_checks(g: &GAlgebra) -> Checks {
    let desc = g.desc();
    let b = k_basis(desc);
    let br = |x: &GElement<Cx>, y: &GElement<Cx>| g_bracket(desc, x, y);
    let one = desc.one::<Cx>();
    let js = real_basis(desc);
    let (e, h, f) = (b.e_l(), b.h_l(), b.f_l());
    let mut out = Checks::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));
    push("[e_l, f_l] = h_l", br(&e, &f) == h);
    push("[h_l, e_l] = 2e_l", br(&h, &e) == e.scale(&k(2)));
    push("[h_l, f_l] = -2f_l", br(&h, &f) == f.scale(&k(-2)));
    let rr = desc.iota(&one);
    let r0p = b.r0_i(1);
    let lhs = crate::lie_h::h_apply(desc, &n_lie(&-one.clone()).add(&n_lie_dual(&rr)), &r0p);
    push("(n_L(-1) + n_L^v(1)) r0(i) = -3i r0(i)", lhs == r0p.scale(&(im() * k(-3))));
    let phi_r = crate::lie_h::phi_ww(desc, &b.r0_i(1), &b.r0_i(-1));
    push("Phi_{r0(i),r0(-i)} = 8n_L(1) + 8n_L^v(-1)", phi_r == n_lie(&one).add(&n_lie_dual(&-one.clone())).scale(&k(8)));

    let mut ks = vec![e.clone(), h.clone(), f.clone()];
    let mut ps = vec![b.h3(), b.hm3()];
    for x in &js {
        ks.extend([b.n_e(x), b.n_h(x), b.n_f(x)]);
        ps.extend([b.h1(x), b.hm1(x)]);
    }
    push("k-basis fixed by Theta", ks.iter().all(|y| in_k(desc, y)));
    push("p-basis in the -1 eigenspace of Theta", ps.iter().all(|y| in_p(desc, y)));
    push("triple commutes with n_E, n_H, n_F", ks[3..].iter().all(|y| [&e, &h, &f].iter().all(|t| br(t, y).is_zero())));
    push("n_H(X) = [n_E(X), n_F(1)] = [n_E(1), n_F(X)]", js.iter().all(|x| {
        let nh = b.n_h(x);
        br(&b.n_e(x), &b.n_f(&one)) == nh && br(&b.n_e(&one), &b.n_f(x)) == nh
    }));

    let h3m3 = br(&b.h3(), &b.hm3());
    push("[h3, h-3] = -e_l", h3m3 == e.scale(&k(-1)));
    push("[h1(X), h-1(Y)] = -(X,Y)[h3, h-3] = (X,Y) e_l", js.iter().all(|x| {
        js.iter().all(|y| {
            let l = br(&b.h1(x), &b.hm1(y));
            l == h3m3.scale(&-desc.pair(x, y)) && l == e.scale(&desc.pair(x, y))
        })
    }));
    push("[h_l, h] = h and [h_l, conj h] = -conj h", ps.iter().all(|p| br(&h, p) == *p && br(&h, &p.conj_real()) == p.conj_real().scale(&k(-1))));
    push("[f_l, h3] = -conj h-3", br(&f, &b.h3()) == b.hm3().conj_real().scale(&k(-1)));
    push("[f_l, h-3] = conj h3", br(&f, &b.hm3()) == b.h3().conj_real());
    push("[f_l, h1(X)] = conj h-1(X)", js.iter().all(|x| br(&f, &b.h1(x)) == b.hm1(x).conj_real()));
    push("[f_l, h-1(X)] = -conj h1(X)", js.iter().all(|x| br(&f, &b.hm1(x)) == b.h1(x).conj_real().scale(&k(-1))));

    // Pairings between p-basis elements and their conjugates.
    let mut labelled: Vec<(usize, Option<usize>, GElement<Cx>)> = vec![(0, None, b.h3()), (3, None, b.hm3())];
    for (a, x) in js.iter().enumerate() {
        labelled.push((1, Some(a), b.h1(x)));
        labelled.push((2, Some(a), b.hm1(x)));
    }
    let mut pairs_ok = true;
    let mut zero_ok = true;
    for (ti, ai, x) in &labelled {
        for (tj, aj, y) in &labelled {
            let bar = g.killing(x, &y.conj_real());
            let expected = if ti != tj {
                k(0)
            } else {
                match (ai, aj) {
                    (Some(a), Some(c)) => desc.pair(&js[*a], &js[*c]),
                    _ => k(1),
                }
            };
            pairs_ok &= bar == expected;
            zero_ok &= g.killing(x, y).is_zero();
        }
    }
    push("B(h_j, conj h_k) = delta (X,Y)", pairs_ok);
    push("B(h_j, h_k) = 0", zero_ok);
    out
}

/// Images of the two graded pieces: `𝒞(g₀ ⊗ C) ⊆ k`, `𝒞(g₁ ⊗ C) ⊆ p`, checked on a basis.
pub fn eigenspace_check(g: &GAlgebra) -> bool {
    let desc = g.desc();
    let op = CayleyOperator::new(desc);
    (0..g.dim()).all(|j| {
        let x: GElement<Cx> = g.basis(j).lift();
        let y = op.apply(&x);
        if j < g.offset_e() {
            in_k(desc, &y)
        } else {
            in_p(desc, &y)
        }
    })
}
