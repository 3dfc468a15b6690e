//! The Lie algebras `a(J) ⊂ m(J)⁰ ⊂ m(J)`: Φ-operators, bracket, the invariant
//! pairing `B_m`, and the Cartan involution `Θ_m`.

use crate::jordan::{CubicDescriptor, JordanElement};
use crate::linalg::{independent_subset, Chart, Mat};
use crate::scalars::{Rational, Scalar};

/// An endomorphism `φ` of `J` together with its multiplier `μ`:
/// `(φz₁,z₂,z₃) + (z₁,φz₂,z₃) + (z₁,z₂,φz₃) = μ(z₁,z₂,z₃)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MElement<S> {
    pub phi: Mat<S>,
    pub mu: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiVariant {
    /// `Φ_{γ,x}(z) = −γ × (x × z) + (γ,z)x + (γ,x)z`
    Plain,
    /// `Φ′_{γ,x} = Φ_{γ,x} − (2/3)(γ,x)`
    Primed,
    /// `Φ_{γ∧x} = Φ_{γ,x} − Φ_{x,γ}`
    Wedge,
}

impl<S: Scalar> MElement<S> {
    pub fn zero(n: usize) -> Self {
        MElement { phi: Mat::zeros(n, n), mu: S::zero() }
    }

    /// `Id_J`, with multiplier 3.
    pub fn identity(n: usize) -> Self {
        MElement { phi: Mat::identity(n), mu: S::from_i64(3) }
    }

    pub fn is_zero(&self) -> bool {
        self.phi.is_zero() && self.mu.is_zero()
    }

    pub fn dim(&self) -> usize {
        self.phi.rows
    }

    pub fn add(&self, o: &Self) -> Self {
        MElement { phi: self.phi.clone() + o.phi.clone(), mu: self.mu.clone() + o.mu.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        MElement { phi: self.phi.clone() - o.phi.clone(), mu: self.mu.clone() - o.mu.clone() }
    }

    pub fn scale(&self, s: &S) -> Self {
        MElement { phi: self.phi.scale(s), mu: self.mu.clone() * s.clone() }
    }

    pub fn apply(&self, z: &JordanElement<S>) -> JordanElement<S> {
        JordanElement(self.phi.apply(&z.0))
    }

    /// Action `φ̃` on `J∨ ≅ J`, characterized by `(φz, γ) + (z, φ̃γ) = 0`.
    pub fn apply_dual(&self, desc: &CubicDescriptor, g: &JordanElement<S>) -> JordanElement<S> {
        JordanElement(desc.dual_endo(&self.phi).apply(&g.0))
    }

    /// Commutator of maps; the multiplier of a commutator vanishes.
    pub fn bracket(&self, o: &Self) -> Self {
        MElement { phi: self.phi.commutator(&o.phi), mu: S::zero() }
    }

    /// `Θ_m(φ) = ι⁻¹ ∘ φ̃ ∘ ι`, which negates the multiplier.
    pub fn cartan(&self, desc: &CubicDescriptor) -> Self {
        MElement { phi: desc.dual_endo(&self.phi), mu: -self.mu.clone() }
    }

    pub fn conj(&self) -> Self {
        MElement { phi: self.phi.map(|x| x.conj()), mu: self.mu.conj() }
    }

    pub fn flatten(&self) -> Vec<S> {
        let n = self.dim();
        (0..n * n).map(|k| self.phi[(k / n, k % n)].clone()).collect()
    }
}

impl MElement<Rational> {
    pub fn lift<S: Scalar>(&self) -> MElement<S> {
        MElement { phi: self.phi.map(S::from_rational), mu: S::from_rational(&self.mu) }
    }
}

/// The Φ-operator of the requested variant.
pub fn phi<S: Scalar>(desc: &CubicDescriptor, gamma: &JordanElement<S>, x: &JordanElement<S>, variant: PhiVariant) -> MElement<S> {
    match variant {
        PhiVariant::Plain => phi_plain(desc, gamma, x),
        PhiVariant::Primed => {
            let p = phi_plain(desc, gamma, x);
            let shift = desc.pair(gamma, x) * S::frac(2, 3);
            MElement { phi: p.phi - Mat::identity(desc.dim()).scale(&shift), mu: S::zero() }
        }
        PhiVariant::Wedge => phi_plain(desc, gamma, x).sub(&phi_plain(desc, x, gamma)),
    }
}

fn phi_plain<S: Scalar>(desc: &CubicDescriptor, gamma: &JordanElement<S>, x: &JordanElement<S>) -> MElement<S> {
    let n = desc.dim();
    let gx = desc.pair(gamma, x);
    let cols: Vec<Vec<S>> = (0..n)
        .map(|k| {
            let z = desc.basis::<S>(k);
            let v = x.scale(&desc.pair(gamma, &z)) + z.scale(&gx) - desc.cross(gamma, &desc.cross(x, &z));
            v.0
        })
        .collect();
    MElement { phi: Mat::from_columns(n, &cols), mu: gx.clone() + gx }
}

/// `{Z, •} = Φ_{ι(1),Z}`.
pub fn jordan_op<S: Scalar>(desc: &CubicDescriptor, z: &JordanElement<S>) -> MElement<S> {
    phi_plain(desc, &desc.one(), z)
}

/// Multiplier recovered from `φ` alone: `μ = tr(φ(1_J))`.
pub fn multiplier_of<S: Scalar>(desc: &CubicDescriptor, phi: &Mat<S>) -> S {
    desc.trace(&JordanElement(phi.apply(&desc.one::<S>().0)))
}

/// Checks the multiplier identity on every basis triple `i ≤ j ≤ k`.
pub fn satisfies_multiplier_identity(desc: &CubicDescriptor, m: &MElement<Rational>) -> bool {
    let n = desc.dim();
    let e: Vec<JordanElement<Rational>> = (0..n).map(|k| desc.basis(k)).collect();
    let images: Vec<JordanElement<Rational>> = e.iter().map(|z| m.apply(z)).collect();
    for i in 0..n {
        for j in i..n {
            let cij = desc.cross(&e[i], &e[j]);
            let cpij = desc.cross(&images[i], &e[j]) + desc.cross(&e[i], &images[j]);
            for k in j..n {
                let lhs = desc.pair(&cpij, &e[k]) + desc.pair(&cij, &images[k]);
                if lhs != m.mu.clone() * desc.pair(&cij, &e[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Closed formula `B_m(Φ_{γ,x}, Φ_{γ′,x′}) = (γ,x)(γ′,x′) + (γ,x′)(γ′,x) − (γ×γ′, x×x′)`.
pub fn killing_closed<S: Scalar>(
    desc: &CubicDescriptor,
    g: &JordanElement<S>,
    x: &JordanElement<S>,
    g2: &JordanElement<S>,
    x2: &JordanElement<S>,
) -> S {
    desc.pair(g, x) * desc.pair(g2, x2) + desc.pair(g, x2) * desc.pair(g2, x)
        - desc.pair(&desc.cross(g, g2), &desc.cross(x, x2))
}

/// `m(J)` for a fixed descriptor: a basis (an `a(J)`-basis of wedge operators
/// `Φ_{Eα∧Eβ}` followed by `{Eα,•}`), exact coordinates, and the Gram matrix of `B_m`.
#[derive(Clone, Debug)]
pub struct MAlgebra {
    pub desc: CubicDescriptor,
    pub wedge_pairs: Vec<(usize, usize)>,
    pub basis: Vec<MElement<Rational>>,
    chart: Chart<Rational>,
    gram: Mat<Rational>,
}

impl MAlgebra {
    pub fn new(desc: &CubicDescriptor) -> Self {
        let n = desc.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let wedges: Vec<MElement<Rational>> = pairs
            .iter()
            .map(|&(a, b)| phi(desc, &desc.basis(a), &desc.basis(b), PhiVariant::Wedge))
            .collect();
        let flat: Vec<Vec<Rational>> = wedges.iter().map(|w| w.flatten()).collect();
        let keep = independent_subset(&flat);
        let wedge_pairs: Vec<(usize, usize)> = keep.iter().map(|&k| pairs[k]).collect();
        let mut basis: Vec<MElement<Rational>> = keep.iter().map(|&k| wedges[k].clone()).collect();
        for a in 0..n {
            basis.push(jordan_op(desc, &desc.basis(a)));
        }
        let chart = Chart::new(&basis.iter().map(|b| b.flatten()).collect::<Vec<_>>()).expect("m(J) basis is independent");
        let dim_a = wedge_pairs.len();
        let gram = Mat::from_fn(basis.len(), basis.len(), |i, j| {
            let p = &basis[i];
            if j < dim_a {
                let (a, b) = wedge_pairs[j];
                desc.pair(&p.apply(&desc.basis(b)), &desc.basis(a)) - desc.pair(&p.apply(&desc.basis(a)), &desc.basis(b))
            } else {
                let a = j - dim_a;
                desc.pair(&p.apply(&desc.basis(a)), &desc.one())
            }
        });
        MAlgebra { desc: desc.clone(), wedge_pairs, basis, chart, gram }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_a(&self) -> usize {
        self.wedge_pairs.len()
    }

    /// Gram matrix of `B_m` on the basis.
    pub fn gram(&self) -> &Mat<Rational> {
        &self.gram
    }

    /// Coordinates of an element known to lie in `m(J)`.
    pub fn coords<S: Scalar>(&self, m: &MElement<S>) -> Vec<S> {
        self.chart.coords_in(&m.flatten())
    }

    /// Coordinates, or `None` if `m` is not in the span.
    pub fn try_coords(&self, m: &MElement<Rational>) -> Option<Vec<Rational>> {
        let c = self.coords(m);
        (self.from_coords(&c) == *m).then_some(c)
    }

    pub fn from_coords<S: Scalar>(&self, c: &[S]) -> MElement<S> {
        let n = self.desc.dim();
        let mut out = MElement::<S>::zero(n);
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let v = &b.phi[(i, j)];
                    if !v.is_zero() {
                        out.phi[(i, j)] = out.phi[(i, j)].clone() + ck.clone() * S::from_rational(v);
                    }
                }
            }
            out.mu = out.mu + ck.clone() * S::from_rational(&b.mu);
        }
        out
    }

    /// `B_m(p, q)`.
    pub fn killing<S: Scalar>(&self, p: &MElement<S>, q: &MElement<S>) -> S {
        let cp = self.coords(p);
        let cq = self.coords(q);
        bilinear(&self.gram, &cp, &cq)
    }

    /// Basis of `m(J)⁰ = a(J) ⊕ J⁰`, with `J⁰` spanned by traceless combinations.
    pub fn m0_basis(&self) -> Vec<MElement<Rational>> {
        let mut out: Vec<MElement<Rational>> = self.basis[..self.dim_a()].to_vec();
        for x in self.desc.traceless_basis() {
            out.push(jordan_op(&self.desc, &x));
        }
        out
    }

    /// `B_{Θ}(p, q) = −B_m(p, Θ_m q)` on the basis.
    pub fn cartan_gram(&self) -> Mat<Rational> {
        let thetas: Vec<Vec<Rational>> = self.basis.iter().map(|b| self.coords(&b.cartan(&self.desc))).collect();
        Mat::from_fn(self.dim(), self.dim(), |i, j| {
            let ei: Vec<Rational> = (0..self.dim()).map(|k| Rational::from(i64::from(k == i))).collect();
            -bilinear(&self.gram, &ei, &thetas[j])
        })
    }
}

/// `xᵀ G y` with `G` rational.
pub fn bilinear<S: Scalar>(g: &Mat<Rational>, x: &[S], y: &[S]) -> S {
    let mut acc = S::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let mut row = S::zero();
        for (j, yj) in y.iter().enumerate() {
            let gij = &g[(i, j)];
            if !gij.is_zero() && !yj.is_zero() {
                row = row + S::from_rational(gij) * yj.clone();
            }
        }
        acc = acc + xi.clone() * row;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionKind;
    use crate::jordan::all_descriptor_kinds;
    use crate::linalg::is_positive_definite;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn small_descriptors() -> Vec<CubicDescriptor> {
        vec![
            CubicDescriptor::unit(),
            CubicDescriptor::quadratic_pair(0),
            CubicDescriptor::quadratic_pair(2),
            CubicDescriptor::hermitian(CompositionKind::Reals),
            CubicDescriptor::hermitian(CompositionKind::Complex),
        ]
    }

    #[test]
    fn phi_examples_and_multipliers() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in small_descriptors() {
            for _ in 0..4 {
                let g = d.random(&mut rng, 3, 2);
                let x = d.random(&mut rng, 3, 2);
                let y = d.random(&mut rng, 3, 2);
                let z = d.random(&mut rng, 3, 2);
                let p = phi(&d, &g, &x, PhiVariant::Plain);
                assert_eq!(p.mu, d.pair(&g, &x) * q(2));
                assert_eq!(multiplier_of(&d, &p.phi), p.mu);
                assert!(satisfies_multiplier_identity(&d, &p));
                assert_eq!(p.apply(&z), phi(&d, &g, &z, PhiVariant::Plain).apply(&x));
                let pr = phi(&d, &g, &x, PhiVariant::Primed);
                assert!(pr.mu.is_zero() && satisfies_multiplier_identity(&d, &pr));
                let w = phi(&d, &g, &x, PhiVariant::Wedge);
                assert!(satisfies_multiplier_identity(&d, &w));
                assert!(w.apply(&d.one()).is_zero());
                assert_eq!(jordan_op(&d, &x).apply(&y), d.jordan_product(&x, &y));
                assert!(phi(&d, &d.one(), &y, PhiVariant::Wedge).is_zero());
                let dual = p.apply_dual(&d, &y);
                let expect = d.cross(&x, &d.cross(&g, &y)) - g.scale(&d.pair(&x, &y)) - y.scale(&d.pair(&x, &g));
                assert_eq!(dual, expect);
            }
        }
    }

    #[test]
    fn dimensions() {
        let expect = [(CubicDescriptor::unit(), 1), (CubicDescriptor::hermitian(CompositionKind::Reals), 9)];
        for (d, dim) in expect {
            assert_eq!(MAlgebra::new(&d).dim(), dim);
        }
        assert_eq!(MAlgebra::new(&CubicDescriptor::hermitian(CompositionKind::Complex)).dim(), 17);
    }

    #[test]
    fn bracket_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for d in small_descriptors() {
            let x = d.random(&mut rng, 3, 2);
            let y = d.random(&mut rng, 3, 2);
            let z = d.random(&mut rng, 3, 2);
            let w = phi(&d, &x, &y, PhiVariant::Wedge);
            let lhs = w.bracket(&jordan_op(&d, &z));
            assert_eq!(lhs.phi, jordan_op(&d, &w.apply(&z)).phi);
            let lhs = jordan_op(&d, &x).bracket(&jordan_op(&d, &y));
            assert_eq!(lhs, phi(&d, &y, &x, PhiVariant::Wedge));
            assert!(w.bracket(&w).is_zero());
            let sum = phi(&d, &x, &y, PhiVariant::Plain).apply(&z) + phi(&d, &y, &x, PhiVariant::Plain).apply(&z);
            assert_eq!(sum, d.jordan_product(&d.jordan_product(&x, &y), &z));
        }
    }

    #[test]
    fn killing_formulas() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in small_descriptors() {
            let m = MAlgebra::new(&d);
            for i in 0..m.dim() {
                for j in 0..m.dim() {
                    assert_eq!(m.gram()[(i, j)], m.gram()[(j, i)], "{}", d.name());
                }
            }
            for _ in 0..3 {
                let v: Vec<_> = (0..4).map(|_| d.random(&mut rng, 3, 2)).collect();
                let p = phi(&d, &v[0], &v[1], PhiVariant::Plain);
                let p2 = phi(&d, &v[2], &v[3], PhiVariant::Plain);
                assert_eq!(m.killing(&p, &p2), killing_closed(&d, &v[0], &v[1], &v[2], &v[3]));
                let w = phi(&d, &v[0], &v[1], PhiVariant::Wedge);
                assert_eq!(m.killing(&w, &p2), d.pair(&w.apply(&v[3]), &v[2]));
                let pr = phi(&d, &v[0], &v[1], PhiVariant::Primed);
                let pr2 = phi(&d, &v[2], &v[3], PhiVariant::Primed);
                let closed = d.pair(&v[0], &v[1]) * d.pair(&v[2], &v[3]) * Rational::new(1, 3)
                    + d.pair(&v[0], &v[3]) * d.pair(&v[2], &v[1])
                    - d.pair(&d.cross(&v[0], &v[2]), &d.cross(&v[1], &v[3]));
                assert_eq!(m.killing(&pr, &pr2), closed);
                let (z1, z2) = (&v[0], &v[1]);
                let b = m.killing(&jordan_op(&d, z1), &jordan_op(&d, z2));
                assert_eq!(b, d.pair(z1, z2) * q(2));
                let (w_, x_, y_, z_) = (&v[0], &v[1], &v[2], &v[3]);
                let half = m.killing(&phi(&d, w_, x_, PhiVariant::Wedge), &phi(&d, y_, z_, PhiVariant::Wedge)) * Rational::new(1, 2);
                let closed = d.pair(w_, z_) * d.pair(x_, y_) - d.pair(x_, z_) * d.pair(w_, y_)
                    + d.pair(&d.cross(x_, y_), &d.cross(w_, z_))
                    - d.pair(&d.cross(w_, y_), &d.cross(x_, z_));
                assert_eq!(half, closed);
                let ww = phi(&d, w_, x_, PhiVariant::Wedge);
                let pos = -m.killing(&ww, &ww.cartan(&d)) * Rational::new(1, 2);
                let closed = d.pair(w_, w_) * d.pair(x_, x_) - d.pair(w_, x_) * d.pair(w_, x_)
                    - d.pair(&d.cross(w_, x_), &d.cross(w_, x_))
                    + d.pair(&d.cross(w_, w_), &d.cross(x_, x_));
                assert_eq!(pos, closed);
            }
        }
    }

    #[test]
    fn killing_invariance_and_cartan() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in small_descriptors() {
            let m = MAlgebra::new(&d);
            for _ in 0..3 {
                let r = |rng: &mut ChaCha8Rng| {
                    let c: Vec<Rational> = (0..m.dim()).map(|_| Rational::random(rng, 3, 2)).collect();
                    m.from_coords(&c)
                };
                let (x, y, z) = (r(&mut rng), r(&mut rng), r(&mut rng));
                assert_eq!(m.killing(&x.bracket(&z), &y), -m.killing(&y.bracket(&z), &x));
                let tx = x.cartan(&d);
                assert_eq!(tx.cartan(&d), x);
                assert_eq!(x.bracket(&y).cartan(&d), tx.bracket(&y.cartan(&d)));
                assert_eq!(m.killing(&tx, &y.cartan(&d)), m.killing(&x, &y));
                assert!(m.try_coords(&x.bracket(&y)).is_some());
            }
            for (k, b) in m.basis.iter().enumerate() {
                let sign = if k < m.dim_a() { q(1) } else { q(-1) };
                assert_eq!(b.cartan(&d), b.scale(&sign));
            }
            assert!(is_positive_definite(&m.cartan_gram()), "{}", d.name());
        }
    }

    #[test]
    fn multiplier_identity_on_large_basis() {
        for d in all_descriptor_kinds().into_iter().filter(|d| d.dim() <= 15) {
            let m = MAlgebra::new(&d);
            for b in &m.basis {
                assert!(satisfies_multiplier_identity(&d, b));
            }
        }
    }
}
