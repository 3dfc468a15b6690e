//! `h(J)⁰ = J∨ ⊕ m(J) ⊕ J` and its action on `W_J`.

use crate::freudenthal::{w_dim, FreudenthalVector};
use crate::jordan::{CubicDescriptor, JordanElement};
use crate::lie_m::{bilinear, phi, MAlgebra, MElement, PhiVariant};
use crate::linalg::Mat;
use crate::scalars::{Rational, Scalar};

/// `γ + φ + X` with `γ ∈ J∨` (identified with `J` through the trace pairing),
/// `φ ∈ m(J)` and `X ∈ J`; degrees `−1, 0, +1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HElement<S> {
    pub gamma: JordanElement<S>,
    pub phi: MElement<S>,
    pub x: JordanElement<S>,
}

impl<S: Scalar> HElement<S> {
    pub fn zero(n: usize) -> Self {
        HElement { gamma: JordanElement::zero(n), phi: MElement::zero(n), x: JordanElement::zero(n) }
    }

    pub fn from_gamma(g: JordanElement<S>) -> Self {
        let n = g.dim();
        HElement { gamma: g, ..Self::zero(n) }
    }

    pub fn from_m(m: MElement<S>) -> Self {
        let n = m.dim();
        HElement { phi: m, ..Self::zero(n) }
    }

    pub fn from_x(x: JordanElement<S>) -> Self {
        let n = x.dim();
        HElement { x, ..Self::zero(n) }
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.is_zero() && self.phi.is_zero() && self.x.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        HElement { gamma: &self.gamma + &o.gamma, phi: self.phi.add(&o.phi), x: &self.x + &o.x }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HElement { gamma: &self.gamma - &o.gamma, phi: self.phi.sub(&o.phi), x: &self.x - &o.x }
    }

    pub fn scale(&self, s: &S) -> Self {
        HElement { gamma: self.gamma.scale(s), phi: self.phi.scale(s), x: self.x.scale(s) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn conj(&self) -> Self {
        HElement { gamma: self.gamma.conj(), phi: self.phi.conj(), x: self.x.conj() }
    }

    /// Components in degrees `−1, 0, +1`.
    pub fn grade3(&self) -> [HElement<S>; 3] {
        let n = self.gamma.dim();
        [
            HElement::from_gamma(self.gamma.clone()),
            HElement::from_m(self.phi.clone()),
            HElement::from_x(self.x.clone()),
        ]
        .map(|h| if h.is_zero() { Self::zero(n) } else { h })
    }
}

impl HElement<Rational> {
    pub fn lift<S: Scalar>(&self) -> HElement<S> {
        HElement { gamma: self.gamma.lift(), phi: self.phi.lift(), x: self.x.lift() }
    }
}

/// `n_L(x)(a,b,c,d) = (0, ax, b×x, (c,x))`.
pub fn n_l<S: Scalar>(desc: &CubicDescriptor, x: &JordanElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    FreudenthalVector::new(S::zero(), x.scale(&v.a), desc.cross(&v.b, x), desc.pair(&v.c, x))
}

/// `n_L∨(γ)(a,b,c,d) = ((b,γ), γ×c, dγ, 0)`.
pub fn n_l_dual<S: Scalar>(desc: &CubicDescriptor, g: &JordanElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    FreudenthalVector::new(desc.pair(&v.b, g), desc.cross(g, &v.c), g.scale(&v.d), S::zero())
}

/// `M(φ)(a,b,c,d) = (−μa/2, φb − μb/2, φ̃c + μc/2, μd/2)`.
pub fn m_action<S: Scalar>(desc: &CubicDescriptor, m: &MElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    let half = m.mu.clone() * S::frac(1, 2);
    FreudenthalVector::new(
        -(half.clone() * v.a.clone()),
        m.apply(&v.b) - v.b.scale(&half),
        m.apply_dual(desc, &v.c) + v.c.scale(&half),
        half * v.d.clone(),
    )
}

/// `(γ + φ + X)·v = n_L∨(γ)v + M(φ)v − n_L(X)v`.
pub fn h_apply<S: Scalar>(desc: &CubicDescriptor, h: &HElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    n_l_dual(desc, &h.gamma, v).add(&m_action(desc, &h.phi, v)).sub(&n_l(desc, &h.x, v))
}

pub fn h_to_endo<S: Scalar>(desc: &CubicDescriptor, h: &HElement<S>) -> Mat<S> {
    let n = w_dim(desc);
    let cols: Vec<Vec<S>> = (0..n).map(|k| h_apply(desc, h, &FreudenthalVector::basis(desc.dim(), k)).to_vec()).collect();
    Mat::from_columns(n, &cols)
}

/// Reads an `HElement` back off an endomorphism in the image of [`h_to_endo`].
pub fn endo_to_h<S: Scalar>(desc: &CubicDescriptor, e: &Mat<S>) -> HElement<S> {
    let n = desc.dim();
    let col = |k: usize| FreudenthalVector::from_vec(&e.column(k));
    let ed = col(2 * n + 1);
    let gamma = ed.c;
    let mu = ed.d.clone() + ed.d;
    let x = -col(0).b;
    let half = mu.clone() * S::frac(1, 2);
    let cols: Vec<Vec<S>> = (0..n).map(|k| (col(1 + k).b + desc.basis::<S>(k).scale(&half)).0).collect();
    HElement { gamma, phi: MElement { phi: Mat::from_columns(n, &cols), mu }, x }
}

/// `[γ, X] = Φ_{γ,X}`, `[J, J] = [J∨, J∨] = 0`, `m(J)` acting on `J` and `J∨`.
pub fn h_bracket<S: Scalar>(desc: &CubicDescriptor, h1: &HElement<S>, h2: &HElement<S>) -> HElement<S> {
    let gamma = h1.phi.apply_dual(desc, &h2.gamma) - h2.phi.apply_dual(desc, &h1.gamma);
    let mut m = h1.phi.bracket(&h2.phi);
    if !h1.gamma.is_zero() && !h2.x.is_zero() {
        m = m.add(&phi(desc, &h1.gamma, &h2.x, PhiVariant::Plain));
    }
    if !h2.gamma.is_zero() && !h1.x.is_zero() {
        m = m.sub(&phi(desc, &h2.gamma, &h1.x, PhiVariant::Plain));
    }
    let x = h1.phi.apply(&h2.x) - h2.phi.apply(&h1.x);
    HElement { gamma, phi: m, x }
}

/// `¼Φ_{v,v} = n_L(c# − db) + n_L∨(ac − b#) + M(Φ_{c,b} + (ad − (b,c))Id)`.
fn phi_vv_h<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>) -> HElement<S> {
    let (a, b, c, d) = (&v.a, &v.b, &v.c, &v.d);
    let four = S::from_i64(4);
    let s = a.clone() * d.clone() - desc.pair(b, c);
    let m = phi(desc, c, b, PhiVariant::Plain).add(&MElement::identity(desc.dim()).scale(&s));
    HElement {
        gamma: (c.scale(a) - desc.adjoint(b)).scale(&four),
        phi: m.scale(&four),
        x: (b.scale(d) - desc.adjoint(c)).scale(&four),
    }
}

/// `Φ_{w,w′}` as an element of `h(J)⁰`, by polarizing the closed formula for `Φ_{v,v}`.
pub fn phi_ww<S: Scalar>(desc: &CubicDescriptor, w: &FreudenthalVector<S>, w2: &FreudenthalVector<S>) -> HElement<S> {
    phi_vv_h(desc, &w.add(w2))
        .sub(&phi_vv_h(desc, w))
        .sub(&phi_vv_h(desc, w2))
        .scale(&S::frac(1, 2))
}

/// `Θ_h(γ + φ + X) = ι(X) + Θ_m(φ) + ι(γ)`.
pub fn h_cartan<S: Scalar>(desc: &CubicDescriptor, h: &HElement<S>) -> HElement<S> {
    HElement { gamma: h.x.clone(), phi: h.phi.cartan(desc), x: h.gamma.clone() }
}

/// `h(J)⁰` for a fixed descriptor, with basis `J∨`-basis, `m(J)`-basis, `J`-basis.
#[derive(Clone, Debug)]
pub struct HAlgebra {
    pub m: MAlgebra,
    gram: Mat<Rational>,
}

impl HAlgebra {
    pub fn new(desc: &CubicDescriptor) -> Self {
        let m = MAlgebra::new(desc);
        let n = desc.dim();
        let dm = m.dim();
        let dim = 2 * n + dm;
        let gd = desc.gram_diag();
        let gram = Mat::from_fn(dim, dim, |i, j| {
            if i < n && j >= n + dm && i == j - n - dm {
                -gd[i].clone()
            } else if j < n && i >= n + dm && j == i - n - dm {
                -gd[j].clone()
            } else if (n..n + dm).contains(&i) && (n..n + dm).contains(&j) {
                m.gram()[(i - n, j - n)].clone()
            } else {
                Rational::from(0)
            }
        });
        HAlgebra { m, gram }
    }

    pub fn desc(&self) -> &CubicDescriptor {
        &self.m.desc
    }

    pub fn dim(&self) -> usize {
        2 * self.desc().dim() + self.m.dim()
    }

    pub fn gram(&self) -> &Mat<Rational> {
        &self.gram
    }

    pub fn basis(&self, k: usize) -> HElement<Rational> {
        let n = self.desc().dim();
        let dm = self.m.dim();
        if k < n {
            HElement::from_gamma(self.desc().basis(k))
        } else if k < n + dm {
            HElement::from_m(self.m.basis[k - n].clone())
        } else {
            HElement::from_x(self.desc().basis(k - n - dm))
        }
    }

    pub fn coords<S: Scalar>(&self, h: &HElement<S>) -> Vec<S> {
        let mut out = h.gamma.0.clone();
        out.extend(self.m.coords(&h.phi));
        out.extend(h.x.0.iter().cloned());
        out
    }

    pub fn from_coords<S: Scalar>(&self, c: &[S]) -> HElement<S> {
        let n = self.desc().dim();
        let dm = self.m.dim();
        HElement {
            gamma: JordanElement(c[..n].to_vec()),
            phi: self.m.from_coords(&c[n..n + dm]),
            x: JordanElement(c[n + dm..].to_vec()),
        }
    }

    /// `B_h = B_m(φ,φ′) − (X,γ′) − (X′,γ)`.
    pub fn killing<S: Scalar>(&self, h1: &HElement<S>, h2: &HElement<S>) -> S {
        let d = self.desc();
        self.m.killing(&h1.phi, &h2.phi) - d.pair(&h1.x, &h2.gamma) - d.pair(&h2.x, &h1.gamma)
    }

    /// `−B_h(p, Θ_h q)` on the basis.
    pub fn cartan_gram(&self) -> Mat<Rational> {
        let dim = self.dim();
        let thetas: Vec<Vec<Rational>> = (0..dim).map(|k| self.coords(&h_cartan(self.desc(), &self.basis(k)))).collect();
        Mat::from_fn(dim, dim, |i, j| {
            let ei: Vec<Rational> = (0..dim).map(|k| Rational::from(i64::from(k == i))).collect();
            -bilinear(&self.gram, &ei, &thetas[j])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionKind;
    use crate::freudenthal::{j2, phi_ww_matrix, four_linear, symplectic, HSimilitude};
    use crate::linalg::is_positive_definite;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn descs() -> Vec<CubicDescriptor> {
        vec![
            CubicDescriptor::unit(),
            CubicDescriptor::quadratic_pair(1),
            CubicDescriptor::hermitian(CompositionKind::Reals),
            CubicDescriptor::hermitian(CompositionKind::Complex),
        ]
    }

    fn random_h(h: &HAlgebra, rng: &mut ChaCha8Rng) -> HElement<Rational> {
        let c: Vec<Rational> = (0..h.dim()).map(|_| Rational::random(rng, 3, 2)).collect();
        h.from_coords(&c)
    }

    /// The symplectic form is annihilated and `q` is preserved to first order.
    fn preserves_structure(desc: &CubicDescriptor, e: &Mat<Rational>, rng: &mut ChaCha8Rng) -> bool {
        let n = w_dim(desc);
        let jd = desc.dim();
        for k in 0..n {
            for l in 0..n {
                let (bk, bl) = (FreudenthalVector::basis(jd, k), FreudenthalVector::basis(jd, l));
                let ek = FreudenthalVector::from_vec(&e.column(k));
                let el = FreudenthalVector::from_vec(&e.column(l));
                if symplectic(desc, &ek, &bl) + symplectic(desc, &bk, &el) != q(0) {
                    return false;
                }
            }
        }
        let v = FreudenthalVector::random(desc, rng, 3, 2);
        let ev = FreudenthalVector::from_vec(&e.apply(&v.to_vec()));
        four_linear(desc, &ev, &v, &v, &v).is_zero()
    }

    #[test]
    fn endo_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in descs() {
            let n = d.dim();
            let id = h_to_endo(&d, &HElement::from_m(MElement::<Rational>::identity(n)));
            let phis = Mat::from_fn(2 * n + 2, 2 * n + 2, |i, j| {
                if i != j {
                    q(0)
                } else if i == 0 {
                    q(3)
                } else if i <= n {
                    q(1)
                } else if i <= 2 * n {
                    q(-1)
                } else {
                    q(-3)
                }
            });
            assert_eq!(id, phis.scale(&Rational::new(-1, 2)));
            assert!(h_to_endo(&d, &HElement::<Rational>::zero(n)).is_zero());
            let g = d.random(&mut rng, 3, 2);
            let v = FreudenthalVector::random(&d, &mut rng, 3, 2);
            let got = h_apply(&d, &HElement::from_gamma(g.clone()), &v);
            assert_eq!(got, FreudenthalVector::new(d.pair(&v.b, &g), d.cross(&g, &v.c), g.scale(&v.d), q(0)));
            let h = random_h(&HAlgebra::new(&d), &mut rng);
            let e = h_to_endo(&d, &h);
            assert!(preserves_structure(&d, &e, &mut rng));
            assert_eq!(endo_to_h(&d, &e), h);
        }
    }

    #[test]
    fn bracket_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for d in descs() {
            let ha = HAlgebra::new(&d);
            let endos: Vec<Mat<Rational>> = (0..ha.dim()).map(|k| h_to_endo(&d, &ha.basis(k))).collect();
            for i in 0..ha.dim() {
                for j in 0..ha.dim() {
                    let br = h_bracket(&d, &ha.basis(i), &ha.basis(j));
                    assert_eq!(h_to_endo(&d, &br), endos[i].commutator(&endos[j]), "{} {i} {j}", d.name());
                }
            }
            let g = d.random(&mut rng, 3, 2);
            let x = d.random(&mut rng, 3, 2);
            let br = h_bracket(&d, &HElement::from_gamma(g.clone()), &HElement::from_x(x.clone()));
            assert_eq!(br, HElement::from_m(phi(&d, &g, &x, PhiVariant::Plain)));
            assert!(h_bracket(&d, &HElement::from_x(x.clone()), &HElement::from_x(g.clone())).is_zero());
        }
    }

    #[test]
    fn nconjs_lemma() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for d in descs() {
            let x = d.random(&mut rng, 3, 2);
            let g = d.random(&mut rng, 3, 2);
            let nx = HSimilitude::n(&d, &x).map;
            let nmx = HSimilitude::n(&d, &-x.clone()).map;
            let lhs = nx.matmul(&h_to_endo(&d, &HElement::from_gamma(g.clone()))).matmul(&nmx);
            let rhs = HElement { gamma: g.clone(), phi: phi(&d, &g, &x, PhiVariant::Plain), x: d.u_op(&x, &g) };
            assert_eq!(lhs, h_to_endo(&d, &rhs));
        }
    }

    #[test]
    fn phi_ww_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for d in descs() {
            let n = d.dim();
            for _ in 0..3 {
                let w = FreudenthalVector::random(&d, &mut rng, 3, 2);
                let w2 = FreudenthalVector::random(&d, &mut rng, 3, 2);
                assert_eq!(h_to_endo(&d, &phi_ww(&d, &w, &w2)), phi_ww_matrix(&d, &w, &w2), "{}", d.name());
                let x = d.random(&mut rng, 3, 2);
                let e = FreudenthalVector::new(q(0), x.clone(), d.zero(), q(0));
                let one_d = FreudenthalVector::new(q(0), d.zero(), d.zero(), q(1));
                let lhs = phi_ww(&d, &e, &one_d).scale(&Rational::new(-1, 2));
                assert_eq!(h_to_endo(&d, &lhs), h_to_endo(&d, &HElement::from_x(-x.clone())));
                let p = FreudenthalVector::new(w.a.clone(), w.b.clone(), d.zero(), q(0));
                let p2 = FreudenthalVector::new(w2.a.clone(), w2.b.clone(), d.zero(), q(0));
                let lhs = phi_ww(&d, &p, &p2).scale(&Rational::new(1, 2));
                assert_eq!(lhs, HElement::from_gamma(-d.cross(&w.b, &w2.b)));
                let h = random_h(&HAlgebra::new(&d), &mut rng);
                let he = h_to_endo(&d, &h);
                let hw = FreudenthalVector::from_vec(&he.apply(&w.to_vec()));
                let hw2 = FreudenthalVector::from_vec(&he.apply(&w2.to_vec()));
                let lhs = h_bracket(&d, &h, &phi_ww(&d, &w, &w2));
                assert_eq!(lhs, phi_ww(&d, &hw, &w2).add(&phi_ww(&d, &w, &hw2)));
            }
            let rank_one = FreudenthalVector::new(q(1), d.zero(), d.zero(), q(0));
            let y = d.random(&mut rng, 3, 2);
            let r1 = FreudenthalVector::from_vec(&HSimilitude::n(&d, &y).map.apply(&rank_one.to_vec()));
            assert!(phi_ww(&d, &r1, &r1).is_zero());
            assert_eq!(n, d.dim());
        }
    }

    #[test]
    fn killing_and_cartan() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for d in descs() {
            let ha = HAlgebra::new(&d);
            let j2m = HSimilitude::<Rational>::j2(&d).map;
            let j2inv = j2m.inverse().unwrap();
            for _ in 0..3 {
                let (x, y, z) = (random_h(&ha, &mut rng), random_h(&ha, &mut rng), random_h(&ha, &mut rng));
                assert_eq!(ha.killing(&h_bracket(&d, &x, &z), &y), -ha.killing(&h_bracket(&d, &y, &z), &x));
                let tx = h_cartan(&d, &x);
                assert_eq!(h_cartan(&d, &tx), x);
                assert_eq!(h_cartan(&d, &h_bracket(&d, &x, &y)), h_bracket(&d, &tx, &h_cartan(&d, &y)));
                assert_eq!(h_to_endo(&d, &tx), j2m.matmul(&h_to_endo(&d, &x)).matmul(&j2inv));
                let w: Vec<FreudenthalVector<Rational>> = (0..4).map(|_| FreudenthalVector::random(&d, &mut rng, 3, 2)).collect();
                let pw = phi_ww(&d, &w[0], &w[1]);
                let xw1 = FreudenthalVector::from_vec(&h_to_endo(&d, &x).apply(&w[1].to_vec()));
                assert_eq!(ha.killing(&pw, &x), symplectic(&d, &w[0], &xw1) * q(2));
                let pw2 = phi_ww(&d, &w[2], &w[3]);
                let closed = -(symplectic(&d, &w[0], &w[3]) * symplectic(&d, &w[1], &w[2])
                    + symplectic(&d, &w[0], &w[2]) * symplectic(&d, &w[1], &w[3]))
                    * q(2)
                    + four_linear(&d, &w[0], &w[1], &w[2], &w[3]) * q(12);
                assert_eq!(ha.killing(&pw, &pw2), closed);
                assert_eq!(h_cartan(&d, &pw), phi_ww(&d, &j2(&w[0]), &j2(&w[1])));
            }
            let x = d.random(&mut rng, 3, 2);
            let lhs = j2m.matmul(&h_to_endo(&d, &HElement::from_x(-x.clone()))).matmul(&j2inv);
            assert_eq!(lhs, h_to_endo(&d, &HElement::from_gamma(-x)));
            assert!(is_positive_definite(&ha.cartan_gram()), "{}", d.name());
        }
    }
}
