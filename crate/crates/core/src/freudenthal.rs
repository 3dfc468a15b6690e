//! Freudenthal's space `W_J = F ⊕ J ⊕ J∨ ⊕ F`: symplectic and quartic forms,
//! the trilinear map `t`, `v♭`, rank, the generators of `H_J`, and the action
//! of `H_J(R)⁰` on the upper half-space through `g·r₀(Z) = j(g,Z)·r₀(gZ)`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{is_positive_definite_f64, CubicDescriptor, JordanElement};
use crate::linalg::Mat;
use crate::scalars::{Rational, Scalar};

/// `(a, b, c, d)` with `b ∈ J` and `c ∈ J∨ ≅ J`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct FreudenthalVector<S> {
    pub a: S,
    pub b: JordanElement<S>,
    pub c: JordanElement<S>,
    pub d: S,
}

impl<S: std::fmt::Debug> std::fmt::Debug for FreudenthalVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?}, {:?}, {:?})", self.a, self.b, self.c, self.d)
    }
}

impl<S: Scalar> FreudenthalVector<S> {
    pub fn new(a: S, b: JordanElement<S>, c: JordanElement<S>, d: S) -> Self {
        FreudenthalVector { a, b, c, d }
    }

    pub fn zero(jdim: usize) -> Self {
        Self::new(S::zero(), JordanElement::zero(jdim), JordanElement::zero(jdim), S::zero())
    }

    /// Coordinates in the order `a, b₁…bₙ, c₁…cₙ, d`.
    pub fn to_vec(&self) -> Vec<S> {
        let mut v = Vec::with_capacity(2 * self.b.dim() + 2);
        v.push(self.a.clone());
        v.extend(self.b.0.iter().cloned());
        v.extend(self.c.0.iter().cloned());
        v.push(self.d.clone());
        v
    }

    pub fn from_vec(v: &[S]) -> Self {
        let n = (v.len() - 2) / 2;
        Self::new(
            v[0].clone(),
            JordanElement(v[1..1 + n].to_vec()),
            JordanElement(v[1 + n..1 + 2 * n].to_vec()),
            v[1 + 2 * n].clone(),
        )
    }

    pub fn basis(jdim: usize, k: usize) -> Self {
        let mut v = vec![S::zero(); 2 * jdim + 2];
        v[k] = S::one();
        Self::from_vec(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.a.clone() * s.clone(), self.b.scale(s), self.c.scale(s), self.d.clone() * s.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a.clone() + o.a.clone(), &self.b + &o.b, &self.c + &o.c, self.d.clone() + o.d.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.a.clone() - o.a.clone(), &self.b - &o.b, &self.c - &o.c, self.d.clone() - o.d.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> FreudenthalVector<T> {
        FreudenthalVector { a: f(&self.a), b: self.b.map(&f), c: self.c.map(&f), d: f(&self.d) }
    }
}

impl FreudenthalVector<Rational> {
    pub fn lift<S: Scalar>(&self) -> FreudenthalVector<S> {
        self.map(S::from_rational)
    }

    pub fn random(desc: &CubicDescriptor, rng: &mut impl Rng, num: i64, den: i64) -> Self {
        Self::new(
            Rational::random(rng, num, den),
            desc.random(rng, num, den),
            desc.random(rng, num, den),
            Rational::random(rng, num, den),
        )
    }
}

/// `dim W_J = 2 dim J + 2`.
pub fn w_dim(desc: &CubicDescriptor) -> usize {
    2 * desc.dim() + 2
}

/// `⟨v, w⟩ = ad′ − (b, c′) + (c, b′) − da′`.
pub fn symplectic<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>, w: &FreudenthalVector<S>) -> S {
    v.a.clone() * w.d.clone() - desc.pair(&v.b, &w.c) + desc.pair(&v.c, &w.b) - v.d.clone() * w.a.clone()
}

/// `J₂(a, b, c, d) = (d, −c, b, −a)`.
pub fn j2<S: Scalar>(v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    FreudenthalVector::new(v.d.clone(), -v.c.clone(), v.b.clone(), -v.a.clone())
}

/// `(v, w) = ⟨J₂v, w⟩`.
pub fn sym_pair<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>, w: &FreudenthalVector<S>) -> S {
    symplectic(desc, &j2(v), w)
}

/// `q(v) = (ad − (b,c))² + 4aN(c) + 4dN(b) − 4(b#, c#)`.
pub fn quartic<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>) -> S {
    let s = v.a.clone() * v.d.clone() - desc.pair(&v.b, &v.c);
    let four = S::from_i64(4);
    s.clone() * s + four.clone() * v.a.clone() * desc.norm(&v.c) + four.clone() * v.d.clone() * desc.norm(&v.b)
        - four * desc.pair(&desc.adjoint(&v.b), &desc.adjoint(&v.c))
}

/// The symmetric four-linear form with `(v, v, v, v) = 2q(v)`, obtained by
/// inclusion–exclusion polarization of `q`.
pub fn four_linear<S: Scalar>(
    desc: &CubicDescriptor,
    w: &FreudenthalVector<S>,
    x: &FreudenthalVector<S>,
    y: &FreudenthalVector<S>,
    z: &FreudenthalVector<S>,
) -> S {
    let vs = [w, x, y, z];
    let mut total = S::zero();
    for mask in 1u32..16 {
        let mut s = FreudenthalVector::zero(desc.dim());
        for (k, v) in vs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                s = s.add(v);
            }
        }
        let q = quartic(desc, &s);
        total = if (4 - mask.count_ones()) % 2 == 0 { total + q } else { total - q };
    }
    total * S::frac(1, 12)
}

/// Closed formula for `3t(v, v, x)`. The `c`-component carries the term
/// `−(β, c)c`, which is what makes `3t(v,v,x) + ⟨v,x⟩v` free of it.
pub fn three_t_vvx<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>, x: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    let (a, b, c, d) = (&v.a, &v.b, &v.c, &v.d);
    let (al, be, ga, de) = (&x.a, &x.b, &x.c, &x.d);
    let two = S::from_i64(2);
    let bc = desc.pair(b, c);
    let bs = desc.adjoint(b);
    let cs = desc.adjoint(c);
    let ad = a.clone() * d.clone();
    let ac_2bs = c.scale(a) - bs.scale(&two);
    let ac_bs = c.scale(a) - bs.clone();
    let a1 = al.clone() * (bc.clone() - ad.clone() * two.clone()) + desc.pair(be, &ac_2bs) + desc.pair(ga, &b.scale(a))
        - de.clone() * a.clone() * a.clone();
    let b1 = (cs.scale(&two) - b.scale(d)).scale(al) + be.scale(&(bc.clone() - ad.clone()))
        - desc.cross(c, &desc.cross(b, be)).scale(&two)
        + b.scale(&desc.pair(be, c))
        + desc.cross(&ac_bs, ga).scale(&two)
        + b.scale(&desc.pair(b, ga))
        - b.scale(&(de.clone() * a.clone()));
    let c1 = c.scale(&(al.clone() * d.clone()))
        + desc.cross(&(cs.clone() - b.scale(d)), be).scale(&two)
        + ga.scale(&(ad.clone() - bc.clone()))
        + desc.cross(b, &desc.cross(c, ga)).scale(&two)
        - c.scale(&desc.pair(b, ga))
        - c.scale(&desc.pair(be, c))
        + ac_2bs.scale(de);
    let d1 = al.clone() * d.clone() * d.clone() - desc.pair(be, &c.scale(d))
        + desc.pair(&(cs.scale(&two) - b.scale(d)), ga)
        + (ad * two - bc) * de.clone();
    FreudenthalVector::new(a1, b1, c1, d1)
}

/// The trilinear map with `⟨w, t(x, y, z)⟩ = (w, x, y, z)`.
pub fn trilinear<S: Scalar>(
    desc: &CubicDescriptor,
    x: &FreudenthalVector<S>,
    y: &FreudenthalVector<S>,
    z: &FreudenthalVector<S>,
) -> FreudenthalVector<S> {
    let sum = x.add(y);
    let t = three_t_vvx(desc, &sum, z).sub(&three_t_vvx(desc, x, z)).sub(&three_t_vvx(desc, y, z));
    t.scale(&S::frac(1, 6))
}

/// `v♭` by its closed formula.
pub fn flat<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    let (a, b, c, d) = (&v.a, &v.b, &v.c, &v.d);
    let two = S::from_i64(2);
    let bc = desc.pair(b, c);
    let s = a.clone() * d.clone() - bc.clone();
    let bs = desc.adjoint(b);
    let cs = desc.adjoint(c);
    FreudenthalVector::new(
        -(a.clone() * a.clone() * d.clone()) + a.clone() * bc.clone() - two.clone() * desc.norm(b),
        desc.cross(c, &bs).scale(&-two.clone()) + cs.scale(&(two.clone() * a.clone())) - b.scale(&s),
        desc.cross(b, &cs).scale(&two) - bs.scale(&(two.clone() * d.clone())) + c.scale(&s),
        a.clone() * d.clone() * d.clone() - d.clone() * bc + two * desc.norm(c),
    )
}

/// `Φ_{w,w′}(x) = 6t(w, w′, x) + ⟨w′, x⟩w + ⟨w, x⟩w′`.
pub fn phi_ww_apply<S: Scalar>(
    desc: &CubicDescriptor,
    w: &FreudenthalVector<S>,
    w2: &FreudenthalVector<S>,
    x: &FreudenthalVector<S>,
) -> FreudenthalVector<S> {
    trilinear(desc, w, w2, x)
        .scale(&S::from_i64(6))
        .add(&w.scale(&symplectic(desc, w2, x)))
        .add(&w2.scale(&symplectic(desc, w, x)))
}

/// Dense matrix of `Φ_{w,w′}` on `W_J`.
pub fn phi_ww_matrix<S: Scalar>(desc: &CubicDescriptor, w: &FreudenthalVector<S>, w2: &FreudenthalVector<S>) -> Mat<S> {
    let n = w_dim(desc);
    let cols: Vec<Vec<S>> =
        (0..n).map(|k| phi_ww_apply(desc, w, w2, &FreudenthalVector::basis(desc.dim(), k)).to_vec()).collect();
    Mat::from_columns(n, &cols)
}

/// 0 iff `v = 0`; ≤ 1 iff `Φ_{v,v} = 0`; ≤ 2 iff `v♭ = 0`; ≤ 3 iff `q(v) = 0`; else 4.
pub fn w_rank<S: Scalar>(desc: &CubicDescriptor, v: &FreudenthalVector<S>) -> u8 {
    if v.is_zero() {
        0
    } else if phi_ww_matrix(desc, v, v).is_zero() {
        1
    } else if flat(desc, v).is_zero() {
        2
    } else if quartic(desc, v).is_zero() {
        3
    } else {
        4
    }
}

/// `r₀(Z) = (1, −Z, Z#, −N(Z)) = n(−Z)(1, 0, 0, 0)`.
pub fn r0<S: Scalar>(desc: &CubicDescriptor, z: &JordanElement<S>) -> FreudenthalVector<S> {
    FreudenthalVector::new(S::one(), -z.clone(), desc.adjoint(z), -desc.norm(z))
}

// ---------------------------------------------------------------------------
// Group generators
// ---------------------------------------------------------------------------

/// `n(x)(a,b,c,d) = (a, b + ax, c + b×x + ax#, d + (c,x) + (b,x#) + aN(x))`.
pub fn n_apply<S: Scalar>(desc: &CubicDescriptor, x: &JordanElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    let xs = desc.adjoint(x);
    FreudenthalVector::new(
        v.a.clone(),
        &v.b + &x.scale(&v.a),
        &(&v.c + &desc.cross(&v.b, x)) + &xs.scale(&v.a),
        v.d.clone() + desc.pair(&v.c, x) + desc.pair(&v.b, &xs) + v.a.clone() * desc.norm(x),
    )
}

/// `n∨(y)(a,b,c,d) = (a + (b,y) + (c,y#) + dN(y), b + c×y + dy#, c + dy, d)`,
/// so that `J₂ n(x) J₂⁻¹ = n∨(−x)`.
pub fn ndual_apply<S: Scalar>(desc: &CubicDescriptor, y: &JordanElement<S>, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    let ys = desc.adjoint(y);
    FreudenthalVector::new(
        v.a.clone() + desc.pair(&v.b, y) + desc.pair(&v.c, &ys) + v.d.clone() * desc.norm(y),
        &(&v.b + &desc.cross(&v.c, y)) + &ys.scale(&v.d),
        &v.c + &y.scale(&v.d),
        v.d.clone(),
    )
}

/// `η(z)(a,b,c,d) = (z³a, zb, z⁻¹c, z⁻³d)`.
pub fn eta_apply<S: Scalar>(z: &S, v: &FreudenthalVector<S>) -> Result<FreudenthalVector<S>> {
    let zi = z.inv().ok_or(Error::DivisionByZero)?;
    let z3 = z.clone() * z.clone() * z.clone();
    let zi3 = zi.clone() * zi.clone() * zi.clone();
    Ok(FreudenthalVector::new(z3 * v.a.clone(), v.b.scale(z), v.c.scale(&zi), zi3 * v.d.clone()))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator<S> {
    N(JordanElement<S>),
    NDual(JordanElement<S>),
    M { delta: S, m: Mat<S> },
    Eta(S),
    J2,
}

/// An element of `H_J` stored as a dense map on `W_J` together with its
/// similitude factor and the word of generators that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct HSimilitude<S> {
    pub map: Mat<S>,
    pub nu: S,
    pub word: Vec<Generator<S>>,
}

fn dense<S: Scalar>(desc: &CubicDescriptor, f: impl Fn(&FreudenthalVector<S>) -> FreudenthalVector<S>) -> Mat<S> {
    let n = w_dim(desc);
    let cols: Vec<Vec<S>> = (0..n).map(|k| f(&FreudenthalVector::basis(desc.dim(), k)).to_vec()).collect();
    Mat::from_columns(n, &cols)
}

impl<S: Scalar> HSimilitude<S> {
    pub fn identity(desc: &CubicDescriptor) -> Self {
        HSimilitude { map: Mat::identity(w_dim(desc)), nu: S::one(), word: vec![] }
    }

    pub fn n(desc: &CubicDescriptor, x: &JordanElement<S>) -> Self {
        HSimilitude { map: dense(desc, |v| n_apply(desc, x, v)), nu: S::one(), word: vec![Generator::N(x.clone())] }
    }

    pub fn ndual(desc: &CubicDescriptor, y: &JordanElement<S>) -> Self {
        HSimilitude {
            map: dense(desc, |v| ndual_apply(desc, y, v)),
            nu: S::one(),
            word: vec![Generator::NDual(y.clone())],
        }
    }

    /// `M(δ, m)(a,b,c,d) = (δ⁻¹a, δ⁻¹m(b), δ m̃(c), δd)` where `m̃` is the inverse
    /// transpose of `m` for the trace pairing. Requires `δ² = λ(m) = N(m·1_J)`
    /// and that `m` be a norm similitude.
    pub fn m(desc: &CubicDescriptor, delta: &S, m: &Mat<S>) -> Result<Self> {
        let lambda = desc.norm(&JordanElement(m.apply(&desc.one::<S>().0)));
        if !(delta.clone() * delta.clone()).approx_eq(&lambda) {
            return Err(Error::Similitude("δ² ≠ λ(m)".into()));
        }
        let minv = m.inverse().ok_or_else(|| Error::Similitude("m is not invertible".into()))?;
        for k in 0..desc.dim() {
            for l in k..desc.dim() {
                let x = &desc.basis::<S>(k) + &desc.basis::<S>(l);
                let mx = JordanElement(m.apply(&x.0));
                if !desc.norm(&mx).approx_eq(&(lambda.clone() * desc.norm(&x))) {
                    return Err(Error::Similitude("m does not scale the norm".into()));
                }
            }
        }
        let mtilde = desc.dual_endo(&minv.map(|v| -v.clone()));
        let dinv = delta.inv().ok_or(Error::DivisionByZero)?;
        let map = dense(desc, |v: &FreudenthalVector<S>| {
            FreudenthalVector::new(
                dinv.clone() * v.a.clone(),
                JordanElement(m.apply(&v.b.0)).scale(&dinv),
                JordanElement(mtilde.apply(&v.c.0)).scale(delta),
                delta.clone() * v.d.clone(),
            )
        });
        Ok(HSimilitude { map, nu: S::one(), word: vec![Generator::M { delta: delta.clone(), m: m.clone() }] })
    }

    /// `M(N(y), U_y)`.
    pub fn m_u(desc: &CubicDescriptor, y: &JordanElement<S>) -> Result<Self> {
        let n = desc.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|k| desc.u_op(y, &desc.basis(k)).0).collect();
        Self::m(desc, &desc.norm(y), &Mat::from_columns(n, &cols))
    }

    pub fn eta(desc: &CubicDescriptor, z: &S) -> Result<Self> {
        z.inv().ok_or(Error::DivisionByZero)?;
        Ok(HSimilitude {
            map: dense(desc, |v| eta_apply(z, v).expect("invertible")),
            nu: S::one(),
            word: vec![Generator::Eta(z.clone())],
        })
    }

    pub fn j2(desc: &CubicDescriptor) -> Self {
        HSimilitude { map: dense(desc, j2), nu: S::one(), word: vec![Generator::J2] }
    }

    /// Multiplication by a scalar `s`, a similitude with `ν = s²`.
    pub fn scalar(desc: &CubicDescriptor, s: &S) -> Self {
        HSimilitude { map: Mat::identity(w_dim(desc)).scale(s), nu: s.clone() * s.clone(), word: vec![] }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        HSimilitude { map: self.map.matmul(&other.map), nu: self.nu.clone() * other.nu.clone(), word }
    }

    pub fn apply(&self, v: &FreudenthalVector<S>) -> FreudenthalVector<S> {
        FreudenthalVector::from_vec(&self.map.apply(&v.to_vec()))
    }

    pub fn inverse(&self) -> Option<Self> {
        Some(HSimilitude { map: self.map.inverse()?, nu: self.nu.inv()?, word: vec![] })
    }

    /// Checks `⟨gv, gw⟩ = ν⟨v, w⟩` on basis pairs and `q(gv) = ν²q(v)` on basis
    /// vectors and sums of basis pairs.
    pub fn check(&self, desc: &CubicDescriptor) -> bool {
        let n = w_dim(desc);
        let jd = desc.dim();
        let images: Vec<FreudenthalVector<S>> = (0..n).map(|k| FreudenthalVector::from_vec(&self.map.column(k))).collect();
        let nu2 = self.nu.clone() * self.nu.clone();
        for k in 0..n {
            for l in 0..n {
                let lhs = symplectic(desc, &images[k], &images[l]);
                let rhs = symplectic(desc, &FreudenthalVector::basis(jd, k), &FreudenthalVector::basis(jd, l));
                if lhs != self.nu.clone() * rhs {
                    return false;
                }
            }
        }
        for k in 0..n {
            for l in k..n {
                let v = FreudenthalVector::<S>::basis(jd, k).add(&FreudenthalVector::basis(jd, l));
                let gv = images[k].add(&images[l]);
                if quartic(desc, &gv) != nu2.clone() * quartic(desc, &v) {
                    return false;
                }
            }
        }
        true
    }
}

impl HSimilitude<Rational> {
    pub fn to_f64(&self) -> HSimilitude<f64> {
        HSimilitude { map: self.map.map(|x| x.to_f64()), nu: self.nu.to_f64(), word: vec![] }
    }
}

/// Applies a real similitude to a complex vector.
pub fn apply_real_to_complex(g: &Mat<f64>, v: &[Complex64]) -> Vec<Complex64> {
    (0..g.rows)
        .map(|i| g.row(i).iter().zip(v).fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + b * *a))
        .collect()
}

/// Returns `(j(g, Z), gZ)` with `g·r₀(Z) = j(g, Z)·r₀(gZ)`.
pub fn r0_and_action(
    desc: &CubicDescriptor,
    g: &HSimilitude<f64>,
    z: &JordanElement<Complex64>,
) -> Result<(Complex64, JordanElement<Complex64>)> {
    if g.nu <= 0.0 {
        return Err(Error::Similitude("ν(g) must be positive".into()));
    }
    let y = z.map(|c| c.im);
    if !is_positive_definite_f64(desc, &y) {
        return Err(Error::NotPositiveDefinite("Im Z".into()));
    }
    let image = FreudenthalVector::from_vec(&apply_real_to_complex(&g.map, &r0(desc, z).to_vec()));
    let j = image.a;
    if j.norm() < 1e-300 {
        return Err(Error::DegenerateAutomorphy);
    }
    let gz = image.b.scale(&(-1.0 / j));
    Ok((j, gz))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionKind;
    use crate::jordan::all_descriptor_kinds;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn h3q() -> CubicDescriptor {
        CubicDescriptor::hermitian(CompositionKind::Reals)
    }

    #[test]
    fn symplectic_examples() {
        let d = h3q();
        let e = |k| FreudenthalVector::<Rational>::basis(d.dim(), k);
        assert_eq!(symplectic(&d, &e(0), &e(w_dim(&d) - 1)), q(1));
        let v = FreudenthalVector::new(q(1), d.one(), d.zero(), q(0));
        assert_eq!(sym_pair(&d, &v, &v), q(4));
    }

    #[test]
    fn sym_pair_is_symmetric_and_diagonal_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in all_descriptor_kinds() {
            for _ in 0..20 {
                let v = FreudenthalVector::random(&d, &mut rng, 5, 3);
                let w = FreudenthalVector::random(&d, &mut rng, 5, 3);
                assert_eq!(sym_pair(&d, &v, &w), sym_pair(&d, &w, &v));
                let expect = v.a.clone() * v.a.clone() + d.pair(&v.b, &v.b) + d.pair(&v.c, &v.c) + v.d.clone() * v.d.clone();
                assert_eq!(sym_pair(&d, &v, &v), expect);
                assert_eq!(symplectic(&d, &v, &w), -symplectic(&d, &w, &v));
            }
        }
    }

    #[test]
    fn quartic_examples() {
        let d = h3q();
        let v = FreudenthalVector::new(q(1), d.zero(), d.zero(), q(1));
        assert_eq!(quartic(&d, &v), q(1));
        let v = FreudenthalVector::new(q(0), -d.one::<Rational>(), d.zero(), q(1));
        assert_eq!(quartic(&d, &v), q(-4));
        let e = FreudenthalVector::<Rational>::basis(d.dim(), 0);
        assert!(flat(&d, &e).is_zero());
    }

    #[test]
    fn trilinear_matches_polarized_quartic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in all_descriptor_kinds() {
            for _ in 0..8 {
                let vs: Vec<_> = (0..4).map(|_| FreudenthalVector::random(&d, &mut rng, 4, 3)).collect();
                let lhs = symplectic(&d, &vs[0], &trilinear(&d, &vs[1], &vs[2], &vs[3]));
                assert_eq!(lhs, four_linear(&d, &vs[0], &vs[1], &vs[2], &vs[3]), "{}", d.name());
                let v = &vs[0];
                assert_eq!(four_linear(&d, v, v, v, v), quartic(&d, v) * q(2));
                assert_eq!(flat(&d, v), trilinear(&d, v, v, v));
            }
        }
    }

    #[test]
    fn freudenthal_triple_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in all_descriptor_kinds() {
            for _ in 0..6 {
                let v = FreudenthalVector::random(&d, &mut rng, 4, 3);
                let x = FreudenthalVector::random(&d, &mut rng, 4, 3);
                let vf = flat(&d, &v);
                let qv = quartic(&d, &v);
                let lhs = trilinear(&d, &vf, &vf, &x).scale(&q(3)).add(&trilinear(&d, &v, &v, &x).scale(&(qv.clone() * q(3))));
                let rhs = vf.scale(&symplectic(&d, &x, &vf)).add(&v.scale(&(qv * symplectic(&d, &x, &v))));
                assert_eq!(lhs, rhs);
                let lhs2 = trilinear(&d, &v, &vf, &x).scale(&q(6));
                let rhs2 = vf.scale(&symplectic(&d, &x, &v)).add(&v.scale(&symplectic(&d, &x, &vf)));
                assert_eq!(lhs2, rhs2);
            }
        }
    }

    #[test]
    fn rank_examples() {
        let d = h3q();
        let e = FreudenthalVector::<Rational>::basis(d.dim(), 0);
        assert_eq!(w_rank(&d, &e), 1);
        let v = FreudenthalVector::new(q(0), -d.one::<Rational>(), d.zero(), q(1));
        assert_eq!(w_rank(&d, &v), 4);
        let v = FreudenthalVector::new(q(1), d.zero(), d.zero(), q(1));
        assert_eq!(w_rank(&d, &v), 4);
        let b = d.diag([q(1), q(0), q(0)]);
        assert_eq!(w_rank(&d, &FreudenthalVector::new(q(0), b, d.zero(), q(0))), 1);
        let b2 = d.diag([q(1), q(1), q(0)]);
        assert_eq!(w_rank(&d, &FreudenthalVector::new(q(0), b2, d.zero(), q(0))), 2);
        assert_eq!(w_rank(&d, &FreudenthalVector::new(q(0), d.one(), d.zero(), q(0))), 3);
        assert_eq!(w_rank(&d, &FreudenthalVector::<Rational>::zero(d.dim())), 0);
    }

    #[test]
    fn generators_are_similitudes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in all_descriptor_kinds() {
            let x = d.random(&mut rng, 3, 2);
            let y = d.random(&mut rng, 3, 2);
            let gens = vec![
                HSimilitude::n(&d, &x),
                HSimilitude::ndual(&d, &y),
                HSimilitude::eta(&d, &Rational::new(2, 3)).unwrap(),
                HSimilitude::j2(&d),
                HSimilitude::m_u(&d, &(&d.one::<Rational>() + &x.scale(&Rational::new(1, 5)))).unwrap(),
                HSimilitude::scalar(&d, &q(3)),
            ];
            for g in &gens {
                assert!(g.check(&d), "{} {:?}", d.name(), g.word);
            }
            let prod = gens[0].compose(&gens[1]).compose(&gens[4]);
            assert!(prod.check(&d));
            let v = FreudenthalVector::random(&d, &mut rng, 3, 2);
            for g in &gens[..5] {
                assert_eq!(w_rank(&d, &g.apply(&v)), w_rank(&d, &v));
            }
        }
    }

    #[test]
    fn generator_examples() {
        let d = h3q();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let z = d.random(&mut rng, 3, 2);
        let e0 = FreudenthalVector::<Rational>::basis(d.dim(), 0);
        let expect = FreudenthalVector::new(q(1), -z.clone(), d.adjoint(&z), -d.norm(&z));
        assert_eq!(n_apply(&d, &(-z.clone()), &e0), expect);
        assert_eq!(r0(&d, &z), expect);
        let j = HSimilitude::<Rational>::j2(&d);
        assert_eq!(j.map.matmul(&j.map), -Mat::identity(w_dim(&d)));
        let t = Rational::new(2, 1);
        let v = FreudenthalVector::new(q(1), d.one(), d.one(), q(1));
        let expect = FreudenthalVector::new(q(8), d.one::<Rational>().scale(&t), d.one::<Rational>().scale(&Rational::new(1, 2)), Rational::new(1, 8));
        assert_eq!(eta_apply(&t, &v).unwrap(), expect);
        let bad = HSimilitude::m(&d, &q(2), &Mat::identity(d.dim()));
        assert!(matches!(bad, Err(Error::Similitude(_))));
    }

    #[test]
    fn r0_pairing_is_norm_of_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in all_descriptor_kinds() {
            for _ in 0..5 {
                let z = d.random(&mut rng, 3, 2);
                let w = d.random(&mut rng, 3, 2);
                assert_eq!(symplectic(&d, &r0(&d, &z), &r0(&d, &w)), d.norm(&(&z - &w)));
            }
        }
    }

    #[test]
    fn action_and_cocycle() {
        let d = h3q();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = d.random_f64(&mut rng, -1.0, 1.0);
        let y = d.one::<f64>();
        let z = crate::jordan::complexify(&x, &y);
        let id = HSimilitude::<f64>::identity(&d);
        let (j, gz) = r0_and_action(&d, &id, &z).unwrap();
        assert!((j - 1.0).norm() < 1e-14);
        assert_eq!(gz, z);
        let x0 = d.random_f64(&mut rng, -1.0, 1.0);
        let (j, gz) = r0_and_action(&d, &HSimilitude::n(&d, &x0.scale(&-1.0)), &z).unwrap();
        assert!((j - 1.0).norm() < 1e-12);
        for k in 0..d.dim() {
            let expect = z.0[k] + x0.0[k];
            assert!((gz.0[k] - expect).norm() < 1e-12);
        }
        let a = d.random_f64(&mut rng, -0.4, 0.4);
        let g = HSimilitude::n(&d, &a)
            .compose(&HSimilitude::m_u(&d, &(&d.one::<f64>() + &a.scale(&0.5))).unwrap())
            .compose(&HSimilitude::eta(&d, &1.3).unwrap());
        let h = HSimilitude::ndual(&d, &a.scale(&0.2)).compose(&HSimilitude::n(&d, &x0));
        let gh = g.compose(&h);
        let (jgh, zgh) = r0_and_action(&d, &gh, &z).unwrap();
        let (jh, hz) = r0_and_action(&d, &h, &z).unwrap();
        let (jg, ghz) = r0_and_action(&d, &g, &hz).unwrap();
        assert!((jgh - jg * jh).norm() < 1e-10 * jgh.norm());
        for k in 0..d.dim() {
            assert!((zgh.0[k] - ghz.0[k]).norm() < 1e-10);
        }
        assert!(is_positive_definite_f64(&d, &zgh.map(|c| c.im)));
    }

    #[test]
    fn rank_one_pairing_lemma() {
        let d = CubicDescriptor::hermitian(CompositionKind::Complex);
        let i = crate::scalars::CayleyScalar::i();
        let r0i = r0(&d, &d.one::<crate::scalars::CayleyScalar>().scale(&i));
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let x = d.random(&mut rng, 3, 2);
            let v = HSimilitude::n(&d, &x).apply(&FreudenthalVector::basis(d.dim(), 0)).lift::<crate::scalars::CayleyScalar>();
            let p = symplectic(&d, &r0i, &v);
            let modsq = p.clone() * p.conj();
            assert_eq!(modsq, sym_pair(&d, &v, &v));
        }
    }
}
