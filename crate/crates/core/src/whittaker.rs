//! Generalized Whittaker functions, Fourier terms and the constant term,
//! evaluated on the Levi `H_J(ℝ)` of the Heisenberg parabolic.
//!
//! A point is `g = w·n(−X)·M_Y` with `M_Y = M(N(Y)^{1/2}, U_{Y^{1/2}})`, so that
//! `g·r₀(i) = w N(Y)^{−1/2} r₀(Z)` with `Z = X + iY`. A character is stored by
//! the coefficients `(a, b, c, d)` of `p(Z) = aN(Z) + (b, Z#) + (c, Z) + d`;
//! the corresponding element of `W_J` is `−(a, b, c, d)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_k;
use crate::error::{Error, Result};
use crate::freudenthal::{quartic, symplectic, w_rank, FreudenthalVector, HSimilitude};
use crate::jordan::{is_positive_definite_f64, CubicDescriptor, JordanElement};
use crate::scalars::{Rational, Scalar};

/// `H_J(ℝ)⁰` or `H_J(ℝ)⁰·w₀` with `w₀ = η(−1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    Identity,
    W0,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeviPoint {
    pub w: f64,
    pub x: JordanElement<f64>,
    pub y: JordanElement<f64>,
    pub component: Component,
}

impl LeviPoint {
    pub fn new(desc: &CubicDescriptor, w: f64, x: JordanElement<f64>, y: JordanElement<f64>) -> Result<Self> {
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::Unsupported(format!("w must be positive, got {w}")));
        }
        desc.check_dim(&x)?;
        desc.check_dim(&y)?;
        if !is_positive_definite_f64(desc, &y) {
            return Err(Error::NotPositiveDefinite(format!("{:?}", y.0)));
        }
        Ok(LeviPoint { w, x, y, component: Component::Identity })
    }

    pub fn with_component(mut self, c: Component) -> Self {
        self.component = c;
        self
    }

    /// `Z = X + iY`.
    pub fn z(&self) -> JordanElement<Complex64> {
        crate::jordan::complexify(&self.x, &self.y)
    }

    pub fn norm_y(&self, desc: &CubicDescriptor) -> f64 {
        desc.norm(&self.y)
    }

    /// `j(g, i) = w N(Y)^{−1/2}`.
    pub fn j_factor(&self, desc: &CubicDescriptor) -> f64 {
        self.w / self.norm_y(desc).sqrt()
    }

    /// `ν(g)ⁿ|ν(g)| = w^{2n+2}`.
    pub fn nu_weight(&self, n: usize) -> f64 {
        self.w.powi(2 * n as i32 + 2)
    }

    /// A seeded sample: `Y = U_a(1) + ⅒·1` with `a` uniform in `[−1, 1]`,
    /// `X` uniform in `[−2, 2]`, `w` uniform in `[½, 2]`.
    pub fn sample(desc: &CubicDescriptor, rng: &mut impl Rng) -> Self {
        loop {
            let a = desc.random_f64(rng, -1.0, 1.0);
            let y = &desc.u_op(&a, &desc.one()) + &desc.one::<f64>().scale(&0.1);
            let x = desc.random_f64(rng, -2.0, 2.0);
            let w = rng.gen_range(0.5..=2.0);
            if let Ok(p) = LeviPoint::new(desc, w, x, y) {
                return p;
            }
        }
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn lift_c(x: &JordanElement<f64>) -> JordanElement<Complex64> {
    x.map(|v| c(*v))
}

/// Square root in the Jordan algebra of a positive definite `Y`, by
/// interpolating `√λ` on the roots of `λ³ − tr(Y)λ² + tr(Y#)λ − N(Y)`.
pub fn jordan_sqrt(desc: &CubicDescriptor, y: &JordanElement<f64>) -> Result<JordanElement<f64>> {
    desc.check_dim(y)?;
    if !is_positive_definite_f64(desc, y) {
        return Err(Error::NotPositiveDefinite(format!("{:?}", y.0)));
    }
    let t = desc.trace(y);
    let s = desc.trace(&desc.adjoint(y));
    let n = desc.norm(y);
    let [l1, l2, l3] = cubic_roots(t, s, n);
    let (r1, r2, r3) = (l1.sqrt(), l2.sqrt(), l3.sqrt());
    // Newton divided differences of √: f[a,b] = 1/(√a+√b), f[a,b,c] = −1/((√a+√b)(√b+√c)(√a+√c)).
    let d1 = 1.0 / (r1 + r2);
    let d2 = -1.0 / ((r1 + r2) * (r2 + r3) * (r1 + r3));
    let one = desc.one::<f64>();
    let y2 = desc.square(y);
    let lin = y - &one.scale(&l1);
    let quad = &(&y2 - &y.scale(&(l1 + l2))) + &one.scale(&(l1 * l2));
    Ok(&(&one.scale(&r1) + &lin.scale(&d1)) + &quad.scale(&d2))
}

/// Real roots of `λ³ − tλ² + sλ − n`, which are positive for positive definite input.
fn cubic_roots(t: f64, s: f64, n: f64) -> [f64; 3] {
    let shift = t / 3.0;
    let p = s - t * t / 3.0;
    let q = -2.0 * t * t * t / 27.0 + s * t / 3.0 - n;
    let mut roots = if p >= -1e-300 {
        [shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let th = arg.acos() / 3.0;
        std::array::from_fn(|k| shift + m * (th - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos())
    };
    for r in roots.iter_mut() {
        let f = ((*r - t) * *r + s) * *r - n;
        let df = (3.0 * *r - 2.0 * t) * *r + s;
        if df.abs() > 1e-8 * (1.0 + t * t) {
            *r -= f / df;
        }
        *r = r.max(0.0);
    }
    roots
}

/// `E_Y = U_{Y^{1/2}}(E)`.
pub fn e_y(desc: &CubicDescriptor, y: &JordanElement<f64>, e: &JordanElement<f64>) -> Result<JordanElement<f64>> {
    Ok(desc.u_op(&jordan_sqrt(desc, y)?, e))
}

/// `p(Z) = aN(Z) + (b, Z#) + (c, Z) + d`.
pub fn p_chi(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, z: &JordanElement<Complex64>) -> Complex64 {
    c(omega.a) * desc.norm(z) + desc.pair(&lift_c(&omega.b), &desc.adjoint(z)) + desc.pair(&lift_c(&omega.c), z) + c(omega.d)
}

/// `aZ# + b×Z + c`, the gradient of `p` for the trace pairing.
pub fn p_chi_gradient(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, z: &JordanElement<Complex64>) -> JordanElement<Complex64> {
    &(&desc.adjoint(z).scale(&c(omega.a)) + &desc.cross(&lift_c(&omega.b), z)) + &lift_c(&omega.c)
}

/// The element `−(a, b, c, d)` of `W_J` attached to stored coefficients.
pub fn character_vector<S: Scalar>(omega: &FreudenthalVector<S>) -> FreudenthalVector<S> {
    omega.neg()
}

/// `⟨ω, Z̃⟩ = w N(Y)^{−1/2} p(Z)` with `Z̃ = g·r₀(i)`.
pub fn pairing_tilde(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, p: &LeviPoint) -> Complex64 {
    p_chi(desc, omega, &p.z()) * p.j_factor(desc)
}

/// `⟨ω, M·V(E)⟩ = w N(Y)^{−1/2}(½tr(E)p(Z) − i(aZ# + b×Z + c, E_Y))`.
pub fn pairing_mv(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, p: &LeviPoint, e: &JordanElement<f64>) -> Result<Complex64> {
    let z = p.z();
    let ey = lift_c(&e_y(desc, &p.y, e)?);
    let grad = desc.pair(&p_chi_gradient(desc, omega, &z), &ey);
    Ok((p_chi(desc, omega, &z) * (desc.trace(e) / 2.0) - Complex64::i() * grad) * p.j_factor(desc))
}

/// `w·n(−X)·M(N(R), U_R)` for a square root `R` of `Y`.
pub fn levi_similitude<S: Scalar>(
    desc: &CubicDescriptor,
    w: &S,
    x: &JordanElement<S>,
    root: &JordanElement<S>,
) -> Result<HSimilitude<S>> {
    let my = HSimilitude::m_u(desc, root)?;
    Ok(HSimilitude::scalar(desc, w).compose(&HSimilitude::n(desc, &-x.clone())).compose(&my))
}

fn index_check(n: usize, v: i64) -> Result<()> {
    if v.unsigned_abs() as usize > n {
        return Err(Error::Dimension { expected: n, got: v.unsigned_abs() as usize });
    }
    Ok(())
}

fn identity_point(p: &LeviPoint) -> LeviPoint {
    LeviPoint { component: Component::Identity, ..p.clone() }
}

fn sign_n(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `W_v = w^{2n+2}(|u|/u)^v K_v(|u|)` with `u = ⟨ω, Z̃⟩`. On the `w₀` component
/// the value is `(−1)ⁿ W_{−v}` at the same `(w, X, Y)`.
pub fn whittaker_value(desc: &CubicDescriptor, n: usize, omega: &FreudenthalVector<f64>, v: i64, p: &LeviPoint) -> Result<Complex64> {
    index_check(n, v)?;
    if p.component == Component::W0 {
        return Ok(whittaker_value(desc, n, omega, -v, &identity_point(p))? * sign_n(n));
    }
    let u = pairing_tilde(desc, omega, p);
    let r = u.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::PhasePole);
    }
    let phase = (u.conj() / r).powi(v as i32);
    Ok(phase * (p.nu_weight(n) * bessel_k(v, r)?))
}

/// `W_v` for `v = −n, …, n`.
pub fn whittaker_vector(desc: &CubicDescriptor, n: usize, omega: &FreudenthalVector<f64>, p: &LeviPoint) -> Result<Vec<Complex64>> {
    (-(n as i64)..=n as i64).map(|v| whittaker_value(desc, n, omega, v, p)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Admissibility {
    /// Rank four with `q < 0`: `|p|` is bounded away from zero.
    Positive,
    /// Rank four with `q > 0`: `p` has a zero on the symmetric space.
    Vanishing,
    /// Rank one, two or three.
    DegenerateRank(u8),
    /// `ω = 0`.
    Trivial,
}

impl Admissibility {
    pub fn label(&self) -> &'static str {
        match self {
            Admissibility::Positive => "positive",
            Admissibility::Vanishing => "vanishing",
            Admissibility::DegenerateRank(_) => "degenerate-rank",
            Admissibility::Trivial => "trivial",
        }
    }
}

pub fn admissible(desc: &CubicDescriptor, omega: &FreudenthalVector<Rational>) -> Admissibility {
    match w_rank(desc, omega) {
        0 => Admissibility::Trivial,
        4 => {
            if quartic(desc, omega).is_positive() {
                Admissibility::Vanishing
            } else {
                Admissibility::Positive
            }
        }
        r => Admissibility::DegenerateRank(r),
    }
}

/// Exact classification of a machine-real character (every finite `f64` is a dyadic rational).
pub fn admissible_f64(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>) -> Result<Admissibility> {
    let v = omega.to_vec().iter().map(|x| Rational::from_f64(*x)).collect::<Result<Vec<_>>>()?;
    Ok(admissible(desc, &FreudenthalVector::from_vec(&v)))
}

/// Searches for `Z` in the symmetric space with `p(Z) = 0`: first on the line
/// `τ·1_J`, then by damped Newton steps from seeded starting points.
pub fn vanishing_witness(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, seed: u64) -> Option<JordanElement<Complex64>> {
    let one = desc.one::<f64>();
    let ok = |z: &JordanElement<Complex64>| {
        let y = z.map(|v| v.im);
        is_positive_definite_f64(desc, &y) && p_chi(desc, omega, z).norm() <= 1e-10 * (1.0 + omega.to_vec().iter().map(|v| v.abs()).fold(0.0, f64::max))
    };
    let coeffs = [c(omega.a), c(desc.trace(&omega.b)), c(desc.trace(&omega.c)), c(omega.d)];
    for tau in poly_roots(&coeffs) {
        let z = lift_c(&one).scale(&tau);
        if ok(&z) {
            return Some(z);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let p0 = LeviPoint::sample(desc, &mut rng);
        let mut z = p0.z();
        for _ in 0..100 {
            let f = p_chi(desc, omega, &z);
            let g = p_chi_gradient(desc, omega, &z);
            let gg: f64 = desc.pair(&g.map(|v| v.conj()), &g).re;
            if gg == 0.0 {
                break;
            }
            // Z ← Z − f·ḡ/(ḡ,g), halving until Y stays positive definite.
            let step = g.map(|v| v.conj()).scale(&(f / gg));
            let mut t = 1.0;
            let mut next = None;
            for _ in 0..30 {
                let cand = &z - &step.scale(&c(t));
                if is_positive_definite_f64(desc, &cand.map(|v| v.im)) {
                    next = Some(cand);
                    break;
                }
                t /= 2.0;
            }
            match next {
                Some(n) => z = n,
                None => break,
            }
            if ok(&z) {
                return Some(z);
            }
        }
    }
    None
}

/// Roots of `a τ³ + b τ² + c τ + d` (lower degree when leading terms vanish).
fn poly_roots(co: &[Complex64; 4]) -> Vec<Complex64> {
    let first = co.iter().position(|x| x.norm() > 0.0);
    let Some(first) = first else { return vec![] };
    let p: Vec<Complex64> = co[first..].iter().map(|x| x / co[first]).collect();
    let deg = p.len() - 1;
    if deg == 0 {
        return vec![];
    }
    // Durand–Kerner iteration.
    let mut r: Vec<Complex64> = (0..deg).map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1)).collect();
    let eval = |x: Complex64| p.iter().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a);
    for _ in 0..500 {
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            if den.norm() > 0.0 {
                let step = eval(r[i]) / den;
                r[i] -= step;
            }
        }
    }
    r
}

/// Summary of a positivity scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    /// `min |p(Z)| / N(Y)^{1/2}` over the samples.
    pub min_statistic: f64,
    pub witness_x: JordanElement<f64>,
    pub witness_y: JordanElement<f64>,
    /// `min (|N(Z+i)| − |N(Z−i)|)/N(Y)^{1/2}`, for characters of the `(0, −1, 0, 1)` class.
    pub difference_min: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScanMode {
    Random,
    /// Samples `e^{−t}Z` for `t` spread over `[0, t_max]`, following the `η(t)` orbit.
    EtaDirected { t_max: f64 },
}

fn unit_class(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>) -> bool {
    omega.a == 0.0 && omega.c.is_zero() && omega.d > 0.0 && omega.b == desc.one::<f64>().scale(&-omega.d)
}

pub fn positivity_scan(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, samples: usize, seed: u64, mode: ScanMode) -> PositivityReport {
    let one = lift_c(&desc.one());
    let i1 = one.scale(&Complex64::i());
    let diff_class = unit_class(desc, omega);
    let cells: Vec<(f64, f64, LeviPoint)> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let mut p = LeviPoint::sample(desc, &mut rng);
            if let ScanMode::EtaDirected { t_max } = mode {
                let t = t_max * (k as f64 + 1.0) / samples.max(1) as f64;
                let s = (-t).exp();
                p.x = p.x.scale(&s);
                p.y = p.y.scale(&s);
            }
            let z = p.z();
            let ny = p.norm_y(desc).sqrt();
            let stat = p_chi(desc, omega, &z).norm() / ny;
            let diff = if diff_class {
                (desc.norm(&(&z + &i1)).norm() - desc.norm(&(&z - &i1)).norm()) / ny
            } else {
                f64::INFINITY
            };
            (stat, diff, p)
        })
        .collect();
    let mut best = 0;
    for (k, cell) in cells.iter().enumerate() {
        if cell.0 < cells[best].0 {
            best = k;
        }
    }
    let (min_statistic, witness_x, witness_y) = match cells.get(best) {
        Some((s, _, p)) => (*s, p.x.clone(), p.y.clone()),
        None => (f64::INFINITY, desc.zero(), desc.one()),
    };
    PositivityReport {
        min_statistic,
        witness_x,
        witness_y,
        difference_min: diff_class.then(|| cells.iter().map(|c| c.1).fold(f64::INFINITY, f64::min)),
    }
}

/// Holomorphic seed functions for the constant term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HolomorphicSeed {
    #[serde(rename = "one")]
    One,
    #[serde(rename = "zero")]
    Zero,
}

impl HolomorphicSeed {
    pub fn eval(&self, _z: &JordanElement<Complex64>) -> Complex64 {
        match self {
            HolomorphicSeed::One => c(1.0),
            HolomorphicSeed::Zero => c(0.0),
        }
    }
}

/// `w^{2n+2}(Φ_H [x^{2n}] + β[xⁿ][yⁿ] + Φ′_H [y^{2n}])`, listed for `v = −n, …, n`,
/// where `Φ_H = j(g,i)^{−n} H(Z)` and `Φ′_H = j(g,i)^{−n} conj(H(Z))`.
pub fn constant_term_eval(
    desc: &CubicDescriptor,
    n: usize,
    h: &dyn Fn(&JordanElement<Complex64>) -> Complex64,
    beta: Complex64,
    p: &LeviPoint,
) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::Unsupported("the weight n must be positive".into()));
    }
    let mut out = vec![c(0.0); 2 * n + 1];
    let nu = p.nu_weight(n);
    let hz = h(&p.z());
    let jn = p.j_factor(desc).powi(-(n as i32));
    out[2 * n] = hz * (nu * jn);
    out[n] = beta * nu;
    out[0] = hz.conj() * (nu * jn);
    if p.component == Component::W0 {
        out.reverse();
        for v in out.iter_mut() {
            *v *= sign_n(n);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierTerm {
    pub omega: FreudenthalVector<f64>,
    pub coeff: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantTerm {
    pub beta: Complex64,
    pub h: HolomorphicSeed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierDatum {
    pub n: usize,
    pub terms: Vec<FourierTerm>,
    pub constant: Option<ConstantTerm>,
    /// Evaluate terms whose character is not of positive class.
    pub allow_inadmissible: bool,
}

#[derive(Serialize, Deserialize)]
struct TermFile {
    omega: Vec<f64>,
    coeff: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct DatumFile {
    n: usize,
    descriptor: String,
    terms: Vec<TermFile>,
    #[serde(default)]
    beta: Option<[f64; 2]>,
    #[serde(rename = "H", default)]
    h: Option<HolomorphicSeed>,
}

impl FourierDatum {
    /// Parses `{"n", "descriptor", "terms": [{"omega": [a, b…, c…, d], "coeff": [re, im]}], "beta", "H"}`.
    pub fn from_json(text: &str) -> Result<(CubicDescriptor, FourierDatum)> {
        let f: DatumFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let desc = CubicDescriptor::from_name(&f.descriptor)?;
        let wd = crate::freudenthal::w_dim(&desc);
        let terms = f
            .terms
            .iter()
            .map(|t| {
                if t.omega.len() != wd {
                    return Err(Error::Dimension { expected: wd, got: t.omega.len() });
                }
                Ok(FourierTerm { omega: FreudenthalVector::from_vec(&t.omega), coeff: Complex64::new(t.coeff[0], t.coeff[1]) })
            })
            .collect::<Result<Vec<_>>>()?;
        let constant = match (f.beta, f.h) {
            (None, None) => None,
            (b, h) => Some(ConstantTerm {
                beta: b.map_or(c(0.0), |b| Complex64::new(b[0], b[1])),
                h: h.unwrap_or(HolomorphicSeed::Zero),
            }),
        };
        Ok((desc, FourierDatum { n: f.n, terms, constant, allow_inadmissible: false }))
    }
}

/// `Σᵢ aᵢ e^{−i⟨ωᵢ, x⟩} W^{ωᵢ}(g)` plus the constant term, for `v = −n, …, n`.
pub fn fourier_eval(desc: &CubicDescriptor, fd: &FourierDatum, x: &FreudenthalVector<f64>, p: &LeviPoint) -> Result<Vec<Complex64>> {
    let n = fd.n;
    if !fd.allow_inadmissible {
        for t in &fd.terms {
            let a = admissible_f64(desc, &t.omega)?;
            if a != Admissibility::Positive {
                return Err(Error::Inadmissible(a.label().into()));
            }
        }
    }
    let parts: Vec<Vec<Complex64>> = fd
        .terms
        .par_iter()
        .map(|t| {
            let phase = Complex64::from_polar(1.0, -symplectic(desc, &t.omega, x));
            let wv = whittaker_vector(desc, n, &t.omega, p)?;
            Ok(wv.into_iter().map(|v| v * phase * t.coeff).collect())
        })
        .collect::<Result<_>>()?;
    let mut out = match &fd.constant {
        Some(ct) => {
            let h = ct.h;
            constant_term_eval(desc, n, &move |z| h.eval(z), ct.beta, p)?
        }
        None => vec![c(0.0); 2 * n + 1],
    };
    for part in parts {
        for (o, v) in out.iter_mut().zip(part) {
            *o += v;
        }
    }
    Ok(out)
}
