//! Orthogonal Lie algebras `so(r+3, 4)` as `g(J)` for `J = F × S`.
//!
//! `S` has signature `(1, r)` with `q_S = diag(s₀ = 1, s₁, …, s_r)`;
//! `V = F ⊕ S ⊕ F` with `q_V(α, s, β) = αβ − q_S(s)`; `𝕍 = M₂ ⊕ V` with
//! `q_𝕍(m, v) = det m + q_V(v)`. Coordinates on `𝕍` are the matrix entries
//! `a, b, c, d` of `m`, then `α, s₀, …, s_r, β`.

use crate::error::{Error, Result};
use crate::freudenthal::{w_dim, FreudenthalVector};
use crate::jordan::{CubicDescriptor, CubicKind, JordanElement};
use crate::lie_g::{GElement, Sl2Element};
use crate::lie_h::endo_to_h;
use crate::linalg::Mat;
use crate::scalars::{Rational, Scalar};

/// `Σ_{i<j} A_ij eᵢ∧eⱼ` stored as the antisymmetric matrix `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wedge2Element<S> {
    pub coeffs: Mat<S>,
}

impl<S: Scalar> Wedge2Element<S> {
    pub fn zero(n: usize) -> Self {
        Wedge2Element { coeffs: Mat::zeros(n, n) }
    }

    /// `eᵢ ∧ eⱼ`.
    pub fn basic(n: usize, i: usize, j: usize) -> Self {
        let mut a: Mat<S> = Mat::zeros(n, n);
        a[(i, j)] = a[(i, j)].clone() + S::one();
        a[(j, i)] = a[(j, i)].clone() - S::one();
        Wedge2Element { coeffs: a }
    }

    /// `v ∧ w`.
    pub fn wedge(v: &[S], w: &[S]) -> Self {
        let n = v.len();
        Wedge2Element { coeffs: Mat::from_fn(n, n, |i, j| v[i].clone() * w[j].clone() - v[j].clone() * w[i].clone()) }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.rows
    }

    pub fn add(&self, o: &Self) -> Self {
        Wedge2Element { coeffs: self.coeffs.clone() + o.coeffs.clone() }
    }

    pub fn scale(&self, s: &S) -> Self {
        Wedge2Element { coeffs: self.coeffs.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

/// A nondegenerate quadratic space with a Cartan-type involution, carrying
/// `so(V) ≅ ∧²V` with `(w∧x)(v) = (x,v)w − (w,v)x`.
#[derive(Clone, Debug)]
pub struct SoAlgebra {
    /// Gram matrix of the bilinear form `(x, y) = q(x+y) − q(x) − q(y)`.
    pub gram: Mat<Rational>,
    /// Involution with `(x, ι y)` symmetric positive definite.
    pub iota: Mat<Rational>,
}

impl SoAlgebra {
    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn pair<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        let g = self.gram.map(S::from_rational);
        crate::linalg::dot(x, &g.apply(y))
    }

    /// The endomorphism `A·G` of `p`.
    pub fn endo<S: Scalar>(&self, p: &Wedge2Element<S>) -> Mat<S> {
        p.coeffs.matmul(&self.gram.map(S::from_rational))
    }

    pub fn act<S: Scalar>(&self, p: &Wedge2Element<S>, v: &[S]) -> Vec<S> {
        self.endo(p).apply(v)
    }

    /// Commutator of endomorphisms, `AGB − BGA`.
    pub fn bracket<S: Scalar>(&self, p: &Wedge2Element<S>, q: &Wedge2Element<S>) -> Wedge2Element<S> {
        let g = self.gram.map(S::from_rational);
        let agb = p.coeffs.matmul(&g).matmul(&q.coeffs);
        let bga = q.coeffs.matmul(&g).matmul(&p.coeffs);
        Wedge2Element { coeffs: agb - bga }
    }

    /// `B(w∧x, y∧z) = (x,y)(w,z) − (w,y)(x,z)`, i.e. `½ tr(P Q)`.
    pub fn killing<S: Scalar>(&self, p: &Wedge2Element<S>, q: &Wedge2Element<S>) -> S {
        self.endo(p).matmul(&self.endo(q)).trace() * S::frac(1, 2)
    }

    /// `Θ_ι(v∧w) = ι(v)∧ι(w)`.
    pub fn cartan<S: Scalar>(&self, p: &Wedge2Element<S>) -> Wedge2Element<S> {
        let i = self.iota.map(S::from_rational);
        Wedge2Element { coeffs: i.matmul(&p.coeffs).matmul(&i.transpose()) }
    }

    /// `eᵢ∧eⱼ` for `i < j` in lexicographic order.
    pub fn basis(&self) -> Vec<Wedge2Element<Rational>> {
        let n = self.dim();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| Wedge2Element::basic(n, i, j))).collect()
    }
}

/// Which `V₂` basis vector (`e = 0`, `f = 1`) sits in each factor of the
/// `M₂ ≅ V₂ ⊗ V₂` basis `a, b, c, d`.
const M2_TENSORS: [(usize, usize); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// `⟨·,·⟩` on `V₂` with `⟨e, f⟩ = 1`.
fn sp2(u: usize, v: usize) -> i64 {
    match (u, v) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

/// `Sym²(V₂) ≅ sl₂` via `(u·v)(x) = ⟨u,x⟩v + ⟨v,x⟩u`: `e·e = 2E`, `f·f = −2F`, `e·f = −H`.
fn sym_product<S: Scalar>(u: usize, v: usize) -> Sl2Element<S> {
    match (u, v) {
        (0, 0) => Sl2Element([S::from_i64(2), S::zero(), S::zero()]),
        (1, 1) => Sl2Element([S::zero(), S::zero(), S::from_i64(-2)]),
        _ => Sl2Element([S::zero(), -S::one(), S::zero()]),
    }
}

fn sl2_add<S: Scalar>(x: &Sl2Element<S>, y: &Sl2Element<S>, c: &S) -> Sl2Element<S> {
    Sl2Element(std::array::from_fn(|k| x.0[k].clone() + y.0[k].clone() * c.clone()))
}

/// `so(M₂) ≅ sl₂ ⊕ sl₂`: `(v₁⊗v₂)∧(v₁′⊗v₂′) ↦ −½(⟨v₂,v₂′⟩v₁·v₁′ , ⟨v₁,v₁′⟩v₂·v₂′)`.
/// `p` is indexed by the `M₂` coordinates `a, b, c, d`.
pub fn so4_split<S: Scalar>(p: &Wedge2Element<S>) -> (Sl2Element<S>, Sl2Element<S>) {
    let mut s1 = Sl2Element::zero();
    let mut s2 = Sl2Element::zero();
    let mh = S::frac(-1, 2);
    for i in 0..4 {
        for j in i + 1..4 {
            let c = &p.coeffs[(i, j)];
            if c.is_zero() {
                continue;
            }
            let ((u1, u2), (w1, w2)) = (M2_TENSORS[i], M2_TENSORS[j]);
            let k2 = S::from_i64(sp2(u2, w2));
            let k1 = S::from_i64(sp2(u1, w1));
            s1 = sl2_add(&s1, &sym_product(u1, w1), &(mh.clone() * k2 * c.clone()));
            s2 = sl2_add(&s2, &sym_product(u2, w2), &(mh.clone() * k1 * c.clone()));
        }
    }
    (s1, s2)
}

/// The realization of `so(𝕍)` inside `g(J)` for a `QuadraticPair` descriptor.
#[derive(Clone, Debug)]
pub struct OrthogonalModel {
    desc: CubicDescriptor,
    s_diag: Vec<Rational>,
    /// `so(V)`.
    pub v_space: SoAlgebra,
    /// `so(𝕍)`.
    pub total: SoAlgebra,
}

impl OrthogonalModel {
    pub fn new(desc: &CubicDescriptor) -> Result<Self> {
        let s_diag = match desc.kind() {
            CubicKind::QuadraticPair { s_diag } => s_diag.clone(),
            _ => return Err(Error::Mismatch(format!("{} is not built from a quadratic space", desc.name()))),
        };
        let ns = s_diag.len();
        let nv = ns + 2;
        let q = Rational::from;
        // (x,y)_V = αβ′ + α′β − (s,s′)_S; ι_V(α,s,β) = (β, −ι_S(s), α).
        let v_gram = Mat::from_fn(nv, nv, |i, j| match (i, j) {
            (0, j) if j == nv - 1 => q(1),
            (i, 0) if i == nv - 1 => q(1),
            (i, j) if i == j && i > 0 && i < nv - 1 => -(q(2) * s_diag[i - 1].clone()),
            _ => q(0),
        });
        let v_iota = Mat::from_fn(nv, nv, |i, j| match (i, j) {
            (0, j) if j == nv - 1 => q(1),
            (i, 0) if i == nv - 1 => q(1),
            (1, 1) => q(-1),
            (i, j) if i == j && i > 1 && i < nv - 1 => q(1),
            _ => q(0),
        });
        // (m, m′) = tr(m̃ m′) = ad′ + da′ − bc′ − cb′; ι(m) = J₂ m J₂⁻¹ = (d −c; −b a).
        let m_gram = Mat::from_fn(4, 4, |i, j| match (i, j) {
            (0, 3) | (3, 0) => q(1),
            (1, 2) | (2, 1) => q(-1),
            _ => q(0),
        });
        let m_iota = Mat::from_fn(4, 4, |i, j| match (i, j) {
            (0, 3) | (3, 0) => q(1),
            (1, 2) | (2, 1) => q(-1),
            _ => q(0),
        });
        let block = |a: &Mat<Rational>, b: &Mat<Rational>| {
            let n = 4 + nv;
            Mat::from_fn(n, n, |i, j| match (i < 4, j < 4) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - 4, j - 4)].clone(),
                _ => q(0),
            })
        };
        Ok(OrthogonalModel {
            desc: desc.clone(),
            s_diag,
            total: SoAlgebra { gram: block(&m_gram, &v_gram), iota: block(&m_iota, &v_iota) },
            v_space: SoAlgebra { gram: v_gram, iota: v_iota },
        })
    }

    pub fn desc(&self) -> &CubicDescriptor {
        &self.desc
    }

    /// `dim V = r + 3`.
    pub fn v_dim(&self) -> usize {
        self.s_diag.len() + 2
    }

    /// `ι_S` on `S`-coordinates.
    fn iota_s<S: Scalar>(t: &[S]) -> Vec<S> {
        t.iter().enumerate().map(|(i, x)| if i == 0 { x.clone() } else { -x.clone() }).collect()
    }

    /// `e⊗(α, s, β) + f⊗(γ, t, δ) ↦ (α, (γ, s), (β, ι_S t), δ)`.
    pub fn w_embed<S: Scalar>(&self, e_part: &[S], f_part: &[S]) -> Result<FreudenthalVector<S>> {
        let nv = self.v_dim();
        for part in [e_part, f_part] {
            if part.len() != nv {
                return Err(Error::Dimension { expected: nv, got: part.len() });
            }
        }
        let mut b = vec![f_part[0].clone()];
        b.extend_from_slice(&e_part[1..nv - 1]);
        let mut c = vec![e_part[nv - 1].clone()];
        c.extend(Self::iota_s(&f_part[1..nv - 1]));
        Ok(FreudenthalVector::new(e_part[0].clone(), JordanElement(b), JordanElement(c), f_part[nv - 1].clone()))
    }

    /// Inverse of [`OrthogonalModel::w_embed`].
    pub fn w_split<S: Scalar>(&self, w: &FreudenthalVector<S>) -> (Vec<S>, Vec<S>) {
        let mut e = vec![w.a.clone()];
        e.extend_from_slice(&w.b.0[1..]);
        e.push(w.c.0[0].clone());
        let mut f = vec![w.b.0[0].clone()];
        f.extend(Self::iota_s(&w.c.0[1..]));
        f.push(w.d.clone());
        (e, f)
    }

    /// Element of `sl₂⁽²⁾ ⊕ so(V)` acting on `W_J = V₂ ⊗ V`, read back in `h(J)⁰`.
    fn levi_to_h<S: Scalar>(&self, s2: &Sl2Element<S>, pv: &Wedge2Element<S>) -> crate::lie_h::HElement<S> {
        let n = self.desc.dim();
        let pe = self.v_space.endo(pv);
        let [q, p, r] = s2.0.clone();
        let cols: Vec<Vec<S>> = (0..w_dim(&self.desc))
            .map(|k| {
                let (x, y) = self.w_split(&FreudenthalVector::<S>::basis(n, k));
                let (px, py) = (pe.apply(&x), pe.apply(&y));
                let e: Vec<S> = (0..x.len()).map(|i| p.clone() * x[i].clone() + q.clone() * y[i].clone() + px[i].clone()).collect();
                let f: Vec<S> = (0..x.len()).map(|i| r.clone() * x[i].clone() - p.clone() * y[i].clone() + py[i].clone()).collect();
                self.w_embed(&e, &f).expect("dimensions agree").to_vec()
            })
            .collect();
        endo_to_h(&self.desc, &Mat::from_columns(w_dim(&self.desc), &cols))
    }

    /// The isomorphism `so(𝕍) → g(J)`.
    pub fn so_to_g<S: Scalar>(&self, p: &Wedge2Element<S>) -> GElement<S> {
        let nv = self.v_dim();
        let a = &p.coeffs;
        let m_block = Wedge2Element { coeffs: Mat::from_fn(4, 4, |i, j| a[(i, j)].clone()) };
        let v_block = Wedge2Element { coeffs: Mat::from_fn(nv, nv, |i, j| a[(4 + i, 4 + j)].clone()) };
        let (s1, s2) = so4_split(&m_block);
        let h = self.levi_to_h(&s2, &v_block);
        // m∧v with m = v₁⊗v₂ goes to v₁ ⊗ (v₂ ⊗ v).
        let mut parts = [[vec![S::zero(); nv], vec![S::zero(); nv]], [vec![S::zero(); nv], vec![S::zero(); nv]]];
        for (i, &(v1, v2)) in M2_TENSORS.iter().enumerate() {
            for j in 0..nv {
                let c = &a[(i, 4 + j)];
                if !c.is_zero() {
                    parts[v1][v2][j] = parts[v1][v2][j].clone() + c.clone();
                }
            }
        }
        let [[ee, ef], [fe, ff]] = parts;
        GElement {
            sl2: s1,
            h,
            we: self.w_embed(&ee, &ef).expect("dimensions agree"),
            wf: self.w_embed(&fe, &ff).expect("dimensions agree"),
        }
    }

    /// `B_g(so_to_g p, so_to_g q) / B_so(p, q)`, read off a fixed pair.
    pub fn killing_ratio(&self, g: &crate::lie_g::GAlgebra) -> Rational {
        let n = self.total.dim();
        let p = Wedge2Element::<Rational>::basic(n, 0, 4);
        let q = Wedge2Element::<Rational>::basic(n, 3, n - 1);
        let b_so = self.total.killing(&p, &q);
        g.killing(&self.so_to_g(&p), &self.so_to_g(&q)) / b_so
    }

    /// Gram matrix of the symplectic form on `W_J` pulled back to `V₂ ⊗ V`:
    /// `⟨v⊗x, v′⊗x′⟩ = ⟨v, v′⟩(x, x′)_V`.
    pub fn v_pair<S: Scalar>(&self, x: &[S], y: &[S]) -> S {
        self.v_space.pair(x, y)
    }
}
