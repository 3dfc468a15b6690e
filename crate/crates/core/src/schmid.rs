//! The Schmid operator `𝒟_n` for `Sym^{2n}(V₂) ⊠ 1`: its coefficient families,
//! their reduction under a character of `N`, and numerical residuals in the
//! coordinates `(w, X, Y)` of the Levi.
//!
//! Components are indexed by `v ∈ [−n, n]`, the coefficient of `[x^{n+v}][y^{n−v}]`
//! with `[xʲ] = xʲ/j!`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freudenthal::FreudenthalVector;
use crate::jordan::{CubicDescriptor, JordanElement};
use crate::scalars::{CayleyScalar, Scalar};
use crate::whittaker::{e_y, pairing_mv, pairing_tilde, whittaker_vector, LeviPoint};

pub type Evaluator = Box<dyn Fn(&LeviPoint) -> Result<Vec<Complex64>> + Send + Sync>;

/// A `Sym^{2n}(V₂)^∨`-valued function on the Levi, as its `2n+1` components.
pub struct ComponentBundle {
    pub n: usize,
    eval: Evaluator,
}

impl ComponentBundle {
    pub fn new(n: usize, eval: Evaluator) -> Self {
        ComponentBundle { n, eval }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Box::new(move |_| Ok(vec![Complex64::new(0.0, 0.0); 2 * n + 1])))
    }

    /// The Whittaker vector of the character `ω`.
    pub fn whittaker(desc: &CubicDescriptor, n: usize, omega: &FreudenthalVector<f64>) -> Self {
        let (desc, omega) = (desc.clone(), omega.clone());
        Self::new(n, Box::new(move |p| whittaker_vector(&desc, n, &omega, p)))
    }

    /// Components `v ↦ f(v, p)`.
    pub fn from_components(n: usize, f: impl Fn(i64, &LeviPoint) -> Result<Complex64> + Send + Sync + 'static) -> Self {
        Self::new(n, Box::new(move |p| (-(n as i64)..=n as i64).map(|v| f(v, p)).collect()))
    }

    /// Multiplies every component by `w^e`.
    pub fn times_w_power(self, e: f64) -> Self {
        let inner = self.eval;
        Self::new(
            self.n,
            Box::new(move |p| Ok(inner(p)?.into_iter().map(|x| x * p.w.powf(e)).collect())),
        )
    }

    pub fn eval(&self, p: &LeviPoint) -> Result<Vec<Complex64>> {
        let out = (self.eval)(p)?;
        if out.len() != 2 * self.n + 1 {
            return Err(Error::Dimension { expected: 2 * self.n + 1, got: out.len() });
        }
        Ok(out)
    }

    pub fn component(&self, v: i64, p: &LeviPoint) -> Result<Complex64> {
        if v.unsigned_abs() as usize > self.n {
            return Err(Error::Dimension { expected: self.n, got: v.unsigned_abs() as usize });
        }
        Ok(self.eval(p)?[(v + self.n as i64) as usize])
    }
}

const STEP: f64 = 1e-4;

/// `d/dt g(t)` at 0 from 5-point central stencils at `h` and `h/2`, combined by one
/// Richardson step.
fn derivative(g: &dyn Fn(f64) -> Result<Vec<Complex64>>, h: f64) -> Result<Vec<Complex64>> {
    let stencil = |h: f64| -> Result<Vec<Complex64>> {
        let (m2, m1, p1, p2) = (g(-2.0 * h)?, g(-h)?, g(h)?, g(2.0 * h)?);
        Ok((0..m1.len()).map(|k| (m2[k] - m1[k] * 8.0 + p1[k] * 8.0 - p2[k]) / (12.0 * h)).collect())
    };
    let (a, b) = (stencil(h)?, stencil(h / 2.0)?);
    Ok(a.iter().zip(&b).map(|(a, b)| (b * 16.0 - a) / 15.0).collect())
}

fn max_abs(x: &JordanElement<f64>) -> f64 {
    x.0.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `w∂_w` applied to every component.
pub fn w_derivative(f: &dyn Fn(&LeviPoint) -> Result<Vec<Complex64>>, p: &LeviPoint) -> Result<Vec<Complex64>> {
    let g = |s: f64| f(&LeviPoint { w: p.w * s.exp(), ..p.clone() });
    derivative(&g, STEP)
}

/// `D_{Z(E)}` (or `D_{Z*(E)}` when `starred`) applied to every component:
/// `∂_t f(w, X, Y + tE_Y) ± i ∂_t f(w, X + tE_Y, Y)` with `E_Y = U_{Y^{1/2}}(E)`.
pub fn dz_derivative_vec(
    desc: &CubicDescriptor,
    e: &JordanElement<f64>,
    f: &dyn Fn(&LeviPoint) -> Result<Vec<Complex64>>,
    p: &LeviPoint,
    starred: bool,
) -> Result<Vec<Complex64>> {
    let ey = e_y(desc, &p.y, e)?;
    let scale = max_abs(&ey);
    if scale == 0.0 {
        let len = f(p)?.len();
        return Ok(vec![Complex64::new(0.0, 0.0); len]);
    }
    let h = STEP * (1.0 + max_abs(&p.y)) / scale;
    let along_y = |t: f64| f(&LeviPoint { y: &p.y + &ey.scale(&t), ..p.clone() });
    let along_x = |t: f64| f(&LeviPoint { x: &p.x + &ey.scale(&t), ..p.clone() });
    let dy = derivative(&along_y, h)?;
    let dx = derivative(&along_x, h)?;
    let i = if starred { -Complex64::i() } else { Complex64::i() };
    Ok(dy.iter().zip(&dx).map(|(a, b)| a + i * b).collect())
}

/// Scalar form of [`dz_derivative_vec`].
pub fn dz_derivative(
    desc: &CubicDescriptor,
    e: &JordanElement<f64>,
    f: &dyn Fn(&LeviPoint) -> Result<Complex64>,
    p: &LeviPoint,
    starred: bool,
) -> Result<Complex64> {
    let g = |q: &LeviPoint| Ok(vec![f(q)?]);
    Ok(dz_derivative_vec(desc, e, &g, p, starred)?[0])
}

/// `(αW# + β×W + γ, V)`, the derivative of `αN(W) + (β, W#) + (γ, W) + δ` along `V`.
pub fn cubic_directional_derivative<S: Scalar>(
    desc: &CubicDescriptor,
    alpha: &S,
    beta: &JordanElement<S>,
    gamma: &JordanElement<S>,
    w: &JordanElement<S>,
    v: &JordanElement<S>,
) -> S {
    let g = &(&desc.adjoint(w).scale(alpha) + &desc.cross(beta, w)) + gamma;
    desc.pair(&g, v)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    /// 1, 2: the `w∂_w` equations; 3, 4: the `D_{Z(E)}`, `D_{Z*(E)}` equations;
    /// 5: vanishing of `φ_k` for `0 < |k| < n` in the constant term.
    pub family: u8,
    pub k: i64,
    pub basis: Option<usize>,
    pub abs: f64,
    /// Largest modulus among the terms of the equation and the components at the point.
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.abs == 0.0 {
            0.0
        } else {
            self.abs / self.scale.max(f64::MIN_POSITIVE)
        }
    }
}

fn residual(family: u8, k: i64, basis: Option<usize>, terms: &[Complex64], floor: f64) -> Residual {
    let sum: Complex64 = terms.iter().sum();
    let scale = terms.iter().fold(floor, |m, t| m.max(t.norm()));
    Residual { family, k, basis, abs: sum.norm(), scale }
}

/// Residuals of the four character equation families at `p`, for every `E` in `e_basis`:
///
/// 1. `(w∂_w − 2(n+1) + k)φ_k + ⟨ω, Z̃*⟩φ_{k−1}`, `k > −n`;
/// 2. `(w∂_w − 2(n+1) − k)φ_k + ⟨ω, Z̃⟩φ_{k+1}`, `k < n`;
/// 3. `(D_{Z(E)} + ½k tr E)φ_k − ⟨ω, M V(E)⟩φ_{k+1}`, `k < n`;
/// 4. `(D_{Z*(E)} − ½k tr E)φ_k − ⟨ω, M V(E)*⟩φ_{k−1}`, `k > −n`.
pub fn char_residuals(
    desc: &CubicDescriptor,
    n: usize,
    omega: &FreudenthalVector<f64>,
    bundle: &ComponentBundle,
    p: &LeviPoint,
    e_basis: &[JordanElement<f64>],
) -> Result<Vec<Residual>> {
    if bundle.n != n {
        return Err(Error::Mismatch(format!("bundle has weight {}, expected {n}", bundle.n)));
    }
    let ni = n as i64;
    let f = |q: &LeviPoint| bundle.eval(q);
    let phi = f(p)?;
    let floor = phi.iter().fold(0.0_f64, |m, x| m.max(x.norm()));
    let at = |k: i64| phi[(k + ni) as usize];
    let wd = w_derivative(&f, p)?;
    let u = pairing_tilde(desc, omega, p);
    let top = -2.0 * (ni as f64 + 1.0);
    let mut out = Vec::new();
    for k in -ni..=ni {
        let i = (k + ni) as usize;
        if k > -ni {
            out.push(residual(1, k, None, &[wd[i], at(k) * (top + k as f64), u.conj() * at(k - 1)], floor));
        }
        if k < ni {
            out.push(residual(2, k, None, &[wd[i], at(k) * (top - k as f64), u * at(k + 1)], floor));
        }
    }
    let per_e: Vec<Vec<Residual>> = e_basis
        .par_iter()
        .enumerate()
        .map(|(a, e)| {
            let dz = dz_derivative_vec(desc, e, &f, p, false)?;
            let dzs = dz_derivative_vec(desc, e, &f, p, true)?;
            let mv = pairing_mv(desc, omega, p, e)?;
            let tr = desc.trace(e);
            let mut rs = Vec::new();
            for k in -ni..=ni {
                let i = (k + ni) as usize;
                let kh = k as f64 / 2.0 * tr;
                if k < ni {
                    rs.push(residual(3, k, Some(a), &[dz[i], at(k) * kh, -mv * at(k + 1)], floor));
                }
                if k > -ni {
                    rs.push(residual(4, k, Some(a), &[dzs[i], -at(k) * kh, -mv.conj() * at(k - 1)], floor));
                }
            }
            Ok(rs)
        })
        .collect::<Result<_>>()?;
    out.extend(per_e.into_iter().flatten());
    Ok(out)
}

/// Residuals of the `ω = 0` system, plus `|φ_k|` for `0 < |k| < n` (family 5).
pub fn const_term_residuals(
    desc: &CubicDescriptor,
    n: usize,
    bundle: &ComponentBundle,
    p: &LeviPoint,
    e_basis: &[JordanElement<f64>],
) -> Result<Vec<Residual>> {
    let zero = FreudenthalVector::zero(desc.dim());
    let mut out = char_residuals(desc, n, &zero, bundle, p, e_basis)?;
    let phi = bundle.eval(p)?;
    let ni = n as i64;
    let scale = [0, n, 2 * n].iter().fold(0.0_f64, |m, &i| m.max(phi[i].norm()));
    for k in -ni..=ni {
        if k != 0 && k.abs() < ni {
            out.push(Residual { family: 5, k, basis: None, abs: phi[(k + ni) as usize].norm(), scale });
        }
    }
    Ok(out)
}

pub fn max_relative(rs: &[Residual]) -> f64 {
    rs.iter().map(Residual::relative).fold(0.0, f64::max)
}

/// Direction `v` in `∂^W_v`, the action of `e ⊗ v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `r₀(i)` (`+1`) or `r₀(−i)` (`−1`).
    R0(i8),
    V(usize),
    VStar(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    Identity,
    /// Multiplication by `tr(E_α)`.
    Trace(usize),
    /// `ε = diag(1, −1)`, acting as `w∂_w`.
    Epsilon,
    /// `∂_Heis = w²∂_μ`.
    Heis,
    /// `∂^W_v = ½⟨x, M·v⟩∂_μ + D^x_{M·v}`.
    W(Direction),
    DZ(usize),
    DZStar(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "ser_cx")]
    pub coeff: CayleyScalar,
    pub op: Operator,
    /// The term acts on `F_{v + shift}`.
    pub shift: i8,
}

fn ser_cx<S: serde::Serializer>(c: &CayleyScalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{c:?}"))
}

/// Which `W_J` slot of `V₋ = Sym^{2n−1}(V₂) ⊠ W_J` a row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WSlot {
    /// `(1, 0, 0, 0)`.
    A,
    /// `(0, E_α^∨, 0, 0)`.
    B(usize),
    /// `(0, 0, E_α^∨, 0)`.
    C(usize),
    /// `(0, 0, 0, 1)`.
    D,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidRow {
    pub family: u8,
    pub v: i64,
    /// Exponents of `[x^·][y^·]` in the output.
    pub x_power: i64,
    pub y_power: i64,
    pub slot: WSlot,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidTable {
    pub n: usize,
    pub jdim: usize,
    pub rows: Vec<SchmidRow>,
}

fn cx(num: i64, den: i64, imag: bool) -> CayleyScalar {
    let r = CayleyScalar::frac(num, den);
    if imag {
        r * CayleyScalar::i()
    } else {
        r
    }
}

/// The coefficient families of `𝒟_n F` (up to one overall constant), with `F_v`
/// the coefficient of `[x^{n+v}][y^{n−v}]`.
pub fn schmid_coefficient_table(n: usize, jdim: usize) -> Result<SchmidTable> {
    if n == 0 {
        return Err(Error::Unsupported("the weight n must be positive".into()));
    }
    let ni = n as i64;
    let top = 2 * (ni + 1);
    let t = |coeff, op, shift| Term { coeff, op, shift };
    let mut rows = Vec::new();
    for v in -ni..=ni {
        if v > -ni {
            rows.push(SchmidRow {
                family: 1,
                v,
                x_power: ni + v - 1,
                y_power: ni - v,
                slot: WSlot::D,
                terms: vec![
                    t(cx(-1, 2, false), Operator::Epsilon, 0),
                    t(cx(-(v - top), 2, false), Operator::Identity, 0),
                    t(cx(1, 2, true), Operator::W(Direction::R0(-1)), -1),
                    t(cx(1, 1, true), Operator::Heis, 0),
                ],
            });
        }
        if v < ni {
            rows.push(SchmidRow {
                family: 2,
                v,
                x_power: ni + v,
                y_power: ni - v - 1,
                slot: WSlot::A,
                terms: vec![
                    t(cx(1, 2, false), Operator::Epsilon, 0),
                    t(cx(-top - v, 2, false), Operator::Identity, 0),
                    t(cx(-1, 2, true), Operator::W(Direction::R0(1)), 1),
                    t(cx(1, 1, true), Operator::Heis, 0),
                ],
            });
        }
    }
    for a in 0..jdim {
        for v in -ni..=ni {
            if v < ni {
                rows.push(SchmidRow {
                    family: 3,
                    v,
                    x_power: ni + v,
                    y_power: ni - v - 1,
                    slot: WSlot::C(a),
                    terms: vec![
                        t(cx(-1, 1, false), Operator::DZ(a), 0),
                        t(cx(-v, 2, false), Operator::Trace(a), 0),
                        t(cx(-1, 1, true), Operator::W(Direction::V(a)), 1),
                    ],
                });
            }
            if v > -ni {
                rows.push(SchmidRow {
                    family: 4,
                    v,
                    x_power: ni + v - 1,
                    y_power: ni - v,
                    slot: WSlot::B(a),
                    terms: vec![
                        t(cx(1, 1, false), Operator::DZStar(a), 0),
                        t(cx(-v, 2, false), Operator::Trace(a), 0),
                        t(cx(1, 1, true), Operator::W(Direction::VStar(a)), -1),
                    ],
                });
            }
        }
    }
    Ok(SchmidTable { n, jdim, rows })
}

/// A row after imposing `∂_μ = 0` and `D^x_v = i⟨ω, v⟩`:
/// `eps·w∂_w φ_v + constant·φ_v + trace·tr(E)φ_v + dz·D φ_v + pairing·⟨ω, M·direction⟩φ_{v+shift}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedRow {
    pub family: u8,
    pub v: i64,
    pub eps: CayleyScalar,
    pub constant: CayleyScalar,
    pub trace: CayleyScalar,
    pub dz: CayleyScalar,
    pub dz_star: CayleyScalar,
    pub pairing: CayleyScalar,
    pub direction: Option<Direction>,
    pub basis: Option<usize>,
    pub shift: i8,
}

impl ReducedRow {
    /// Divides by the coefficient of the leading differential operator.
    pub fn normalized(&self) -> Option<ReducedRow> {
        let lead = [&self.eps, &self.dz, &self.dz_star].into_iter().find(|c| !c.is_zero())?.clone();
        let inv = lead.inv()?;
        let s = |c: &CayleyScalar| c.clone() * inv.clone();
        Some(ReducedRow {
            eps: s(&self.eps),
            constant: s(&self.constant),
            trace: s(&self.trace),
            dz: s(&self.dz),
            dz_star: s(&self.dz_star),
            pairing: s(&self.pairing),
            ..self.clone()
        })
    }
}

pub fn reduce_to_character(row: &SchmidRow) -> ReducedRow {
    let z = CayleyScalar::zero;
    let mut r = ReducedRow {
        family: row.family,
        v: row.v,
        eps: z(),
        constant: z(),
        trace: z(),
        dz: z(),
        dz_star: z(),
        pairing: z(),
        direction: None,
        basis: None,
        shift: 0,
    };
    for t in &row.terms {
        let c = t.coeff.clone();
        match t.op {
            Operator::Identity => r.constant = r.constant.clone() + c,
            Operator::Trace(a) => {
                r.trace = r.trace.clone() + c;
                r.basis = Some(a);
            }
            Operator::Epsilon => r.eps = r.eps.clone() + c,
            Operator::Heis => {}
            Operator::W(d) => {
                r.pairing = r.pairing.clone() + c * CayleyScalar::i();
                r.direction = Some(d);
                r.shift = t.shift;
            }
            Operator::DZ(a) => {
                r.dz = r.dz.clone() + c;
                r.basis = Some(a);
            }
            Operator::DZStar(a) => {
                r.dz_star = r.dz_star.clone() + c;
                r.basis = Some(a);
            }
        }
    }
    r
}

/// Whether every row of the table, reduced under a character and normalized, is the
/// corresponding equation of [`char_residuals`] with exactly the same coefficients.
pub fn table_matches_character_system(n: usize, jdim: usize) -> Result<bool> {
    let t = schmid_coefficient_table(n, jdim)?;
    let q = |a: i64, b: i64| CayleyScalar::frac(a, b);
    let top = 2 * (n as i64 + 1);
    let expected_rows = 4 * n + 4 * n * jdim;
    Ok(t.rows.len() == expected_rows
        && t.rows.iter().all(|row| {
            let Some(r) = reduce_to_character(row).normalized() else {
                return false;
            };
            let v = row.v;
            let zero = CayleyScalar::zero();
            match row.family {
                1 => {
                    (r.eps, r.constant, r.pairing, r.dz, r.dz_star) == (q(1, 1), q(v - top, 1), q(1, 1), zero.clone(), zero)
                        && (r.direction, r.shift) == (Some(Direction::R0(-1)), -1)
                }
                2 => {
                    (r.eps, r.constant, r.pairing, r.dz, r.dz_star) == (q(1, 1), q(-v - top, 1), q(1, 1), zero.clone(), zero)
                        && (r.direction, r.shift) == (Some(Direction::R0(1)), 1)
                }
                3 => {
                    (r.dz, r.trace, r.pairing, r.eps, r.constant) == (q(1, 1), q(v, 2), q(-1, 1), zero.clone(), zero)
                        && matches!(r.direction, Some(Direction::V(a)) if Some(a) == r.basis)
                        && r.shift == 1
                }
                4 => {
                    (r.dz_star, r.trace, r.pairing, r.eps, r.constant) == (q(1, 1), q(-v, 2), q(-1, 1), zero.clone(), zero)
                        && matches!(r.direction, Some(Direction::VStar(a)) if Some(a) == r.basis)
                        && r.shift == -1
                }
                _ => false,
            }
        }))
}

fn to_c(x: &CayleyScalar) -> Complex64 {
    let [a, b, c, d] = x.c.clone().map(|r| r.to_f64());
    let s = std::f64::consts::SQRT_2;
    Complex64::new(a + c * s, b + d * s)
}

/// Evaluates every reduced row of the table at `p` for the given character and bundle.
pub fn table_residuals(
    desc: &CubicDescriptor,
    table: &SchmidTable,
    omega: &FreudenthalVector<f64>,
    bundle: &ComponentBundle,
    p: &LeviPoint,
) -> Result<Vec<Residual>> {
    let ni = table.n as i64;
    let f = |q: &LeviPoint| bundle.eval(q);
    let phi = f(p)?;
    let floor = phi.iter().fold(0.0_f64, |m, x| m.max(x.norm()));
    let wd = w_derivative(&f, p)?;
    let u = pairing_tilde(desc, omega, p);
    let mut dz_cache: Vec<Option<(Vec<Complex64>, Vec<Complex64>, Complex64)>> = vec![None; table.jdim];
    let mut out = Vec::new();
    for row in &table.rows {
        let r = reduce_to_character(row);
        let i = (r.v + ni) as usize;
        let mut terms = vec![to_c(&r.eps) * wd[i], to_c(&r.constant) * phi[i]];
        let mv = if let Some(a) = r.basis {
            if dz_cache[a].is_none() {
                let e = desc.basis::<f64>(a);
                dz_cache[a] = Some((
                    dz_derivative_vec(desc, &e, &f, p, false)?,
                    dz_derivative_vec(desc, &e, &f, p, true)?,
                    pairing_mv(desc, omega, p, &e)?,
                ));
            }
            let (dz, dzs, mv) = dz_cache[a].as_ref().unwrap();
            terms.push(to_c(&r.trace) * desc.trace(&desc.basis::<f64>(a)) * phi[i]);
            terms.push(to_c(&r.dz) * dz[i] + to_c(&r.dz_star) * dzs[i]);
            *mv
        } else {
            Complex64::new(0.0, 0.0)
        };
        if let Some(d) = r.direction {
            let pair = match d {
                Direction::R0(1) => u,
                Direction::R0(_) => u.conj(),
                Direction::V(_) => mv,
                Direction::VStar(_) => mv.conj(),
            };
            terms.push(to_c(&r.pairing) * pair * phi[(r.v + r.shift as i64 + ni) as usize]);
        }
        out.push(residual(r.family, r.v, r.basis, &terms, floor));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::CompositionKind;
    use crate::scalars::Rational;
    use crate::whittaker::{constant_term_eval, p_chi, p_chi_gradient};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h3q() -> CubicDescriptor {
        CubicDescriptor::hermitian(CompositionKind::Quaternions)
    }

    fn basis(desc: &CubicDescriptor) -> Vec<JordanElement<f64>> {
        (0..desc.dim()).map(|a| desc.basis(a)).collect()
    }

    fn omega_pos(desc: &CubicDescriptor) -> FreudenthalVector<f64> {
        FreudenthalVector::new(0.0, desc.one::<f64>().scale(&-1.0), desc.zero(), 1.0)
    }

    /// A point with `u = |⟨ω, Z̃⟩|` in `[½, 20]`.
    fn point(desc: &CubicDescriptor, omega: &FreudenthalVector<f64>, rng: &mut ChaCha8Rng) -> LeviPoint {
        loop {
            let p = LeviPoint::sample(desc, rng);
            let u = pairing_tilde(desc, omega, &p).norm();
            if (0.5..=20.0).contains(&u) {
                return p;
            }
        }
    }

    #[test]
    fn dz_on_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in [CubicDescriptor::unit(), h3q(), CubicDescriptor::quadratic_pair(2)] {
            for _ in 0..4 {
                let p = LeviPoint::sample(&d, &mut rng);
                let e = d.random_f64(&mut rng, -1.0, 1.0);
                let dc = d.clone();
                let ny = dz_derivative(&d, &e, &move |q: &LeviPoint| Ok(Complex64::new(dc.norm(&q.y), 0.0)), &p, false).unwrap();
                let want = d.norm(&p.y) * d.trace(&e);
                assert!((ny - Complex64::new(want, 0.0)).norm() <= 1e-8 * want.abs().max(1e-3), "{} {ny} {want}", d.name());
                let om = FreudenthalVector::random(&d, &mut rng, 3, 2).map(|v| v.to_f64());
                let (dc, oc) = (d.clone(), om.clone());
                let dp = dz_derivative(&d, &e, &move |q: &LeviPoint| Ok(p_chi(&dc, &oc, &q.z())), &p, false).unwrap();
                let ey = e_y(&d, &p.y, &e).unwrap().map(|v| Complex64::new(*v, 0.0));
                let want = Complex64::new(0.0, 2.0) * d.pair(&p_chi_gradient(&d, &om, &p.z()), &ey);
                assert!((dp - want).norm() <= 1e-8 * want.norm().max(1.0), "{dp} {want}");
                let (dc, oc) = (d.clone(), om.clone());
                let ds = dz_derivative(&d, &e, &move |q: &LeviPoint| Ok(p_chi(&dc, &oc, &q.z())), &p, true).unwrap();
                assert!(ds.norm() <= 1e-8 * want.norm().max(1.0));
                let k = dz_derivative(&d, &e, &|_: &LeviPoint| Ok(Complex64::new(3.0, 1.0)), &p, false).unwrap();
                assert_eq!(k, Complex64::new(0.0, 0.0));
            }
        }
        let d = h3q();
        let bad = LeviPoint { w: 1.0, x: d.zero(), y: d.diag([1.0, -1.0, 1.0]), component: crate::whittaker::Component::Identity };
        assert!(dz_derivative(&d, &d.one(), &|_: &LeviPoint| Ok(Complex64::new(1.0, 0.0)), &bad, false).is_err());
    }

    #[test]
    fn cubic_derivative_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for d in crate::jordan::all_descriptor_kinds() {
            let r = |rng: &mut ChaCha8Rng| d.random(rng, 5, 3);
            let (beta, gamma, w, v) = (r(&mut rng), r(&mut rng), r(&mut rng), r(&mut rng));
            let alpha = Rational::random(&mut rng, 5, 3);
            let delta = Rational::random(&mut rng, 5, 3);
            let f = |t: i64| {
                let x = &w + &v.scale(&Rational::from(t));
                alpha.clone() * d.norm(&x) + d.pair(&beta, &d.adjoint(&x)) + d.pair(&gamma, &x) + delta.clone()
            };
            // Exact for polynomials of degree ≤ 4.
            let fd = (Rational::from(8) * (f(1) - f(-1)) - (f(2) - f(-2))) / Rational::from(12);
            assert_eq!(fd, cubic_directional_derivative(&d, &alpha, &beta, &gamma, &w, &v), "{}", d.name());
        }
    }

    #[test]
    fn whittaker_vector_solves_character_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for d in [CubicDescriptor::unit(), h3q()] {
            let om = omega_pos(&d);
            let eb = basis(&d);
            for n in [1usize, 2] {
                let b = ComponentBundle::whittaker(&d, n, &om);
                for _ in 0..4 {
                    let p = point(&d, &om, &mut rng);
                    let rs = char_residuals(&d, n, &om, &b, &p, &eb).unwrap();
                    assert_eq!(rs.len(), 4 * n + 4 * n * d.dim());
                    assert!(max_relative(&rs) <= 1e-6, "{} n={n} {:?}", d.name(), rs.iter().max_by(|a, b| a.relative().total_cmp(&b.relative())));
                    let perturbed = ComponentBundle::whittaker(&d, n, &om).times_w_power(0.1);
                    assert!(max_relative(&char_residuals(&d, n, &om, &perturbed, &p, &eb).unwrap()) > 1e-3);
                }
            }
        }
    }

    #[test]
    fn zero_bundle_has_zero_residuals() {
        let d = h3q();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let p = LeviPoint::sample(&d, &mut rng);
        let rs = char_residuals(&d, 2, &omega_pos(&d), &ComponentBundle::zero(2), &p, &basis(&d)).unwrap();
        assert!(rs.iter().all(|r| r.abs == 0.0 && r.relative() == 0.0));
        assert!(char_residuals(&d, 1, &omega_pos(&d), &ComponentBundle::zero(2), &p, &basis(&d)).is_err());
    }

    #[test]
    fn second_order_bessel_equation() {
        let d = h3q();
        let om = omega_pos(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let n = 2;
        for _ in 0..5 {
            let p = point(&d, &om, &mut rng);
            // G_v = W_v / w^{2n+2}
            let (dc, oc) = (d.clone(), om.clone());
            let g = move |q: &LeviPoint| -> Result<Vec<Complex64>> {
                Ok(whittaker_vector(&dc, n, &oc, q)?.into_iter().map(|x| x / q.nu_weight(n)).collect())
            };
            let wd = |q: &LeviPoint| w_derivative(&g, q);
            let wwd = w_derivative(&wd, &p).unwrap();
            let gv = g(&p).unwrap();
            let u2 = pairing_tilde(&d, &om, &p).norm_sqr();
            for v in -(n as i64)..=n as i64 {
                let i = (v + n as i64) as usize;
                let lhs = wwd[i] - gv[i] * (v * v) as f64;
                assert!((lhs - gv[i] * u2).norm() <= 1e-6 * (gv[i] * u2).norm());
            }
        }
    }

    #[test]
    fn table_reduces_to_character_equations() {
        for n in 1..=3 {
            for jdim in [1, 6, 27] {
                assert!(table_matches_character_system(n, jdim).unwrap(), "n={n} jdim={jdim}");
            }
        }
        let q = |a: i64, b: i64| CayleyScalar::frac(a, b);
        // n = 1, v = 0, family 1: −½(ε − 4)F₀ + (i/2)∂^W_{r₀(−i)}F₋₁ + i∂_Heis F₀.
        let t1 = schmid_coefficient_table(1, 1).unwrap();
        let row = t1.rows.iter().find(|r| r.family == 1 && r.v == 0).unwrap();
        let coeffs: Vec<CayleyScalar> = row.terms.iter().map(|t| t.coeff.clone()).collect();
        assert_eq!(coeffs, vec![q(-1, 2), q(2, 1), q(1, 2) * CayleyScalar::i(), CayleyScalar::i()]);
        assert!(schmid_coefficient_table(0, 1).is_err());
    }

    #[test]
    fn table_and_direct_residuals_agree() {
        let d = h3q();
        let om = omega_pos(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let n = 1;
        let t = schmid_coefficient_table(n, d.dim()).unwrap();
        let b = ComponentBundle::whittaker(&d, n, &om);
        let p = point(&d, &om, &mut rng);
        assert!(max_relative(&table_residuals(&d, &t, &om, &b, &p).unwrap()) <= 1e-6);
        let bad = ComponentBundle::whittaker(&d, n, &om).times_w_power(0.1);
        assert!(max_relative(&table_residuals(&d, &t, &om, &bad, &p).unwrap()) > 1e-3);
    }

    #[test]
    fn constant_term_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for d in [CubicDescriptor::unit(), h3q()] {
            let eb = basis(&d);
            for n in [1usize, 2, 3] {
                let p = LeviPoint::sample(&d, &mut rng);
                let mid = ComponentBundle::from_components(n, move |v, q| {
                    Ok(Complex64::new(if v == 0 { 1.7 * q.w.powi(2 * n as i32 + 2) } else { 0.0 }, 0.0))
                });
                let m = max_relative(&const_term_residuals(&d, n, &mid, &p, &eb).unwrap());
                assert!(m <= 1e-8, "{} n={n} {m}", d.name());
                let dc = d.clone();
                let one = ComponentBundle::new(n, Box::new(move |q| constant_term_eval(&dc, n, &|_| Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0), q)));
                assert!(max_relative(&const_term_residuals(&d, n, &one, &p, &eb).unwrap()) <= 1e-6);
                // A holomorphic seed other than a constant.
                let dc = d.clone();
                let hol = ComponentBundle::new(
                    n,
                    Box::new(move |q| {
                        let dd = dc.clone();
                        constant_term_eval(&dc, n, &move |z| dd.trace(z) * dd.norm(z) + 2.0, Complex64::new(0.0, 0.0), q)
                    }),
                );
                assert!(max_relative(&const_term_residuals(&d, n, &hol, &p, &eb).unwrap()) <= 1e-6);
                let rs = const_term_residuals(&d, n, &ComponentBundle::zero(n), &p, &eb).unwrap();
                assert!(rs.iter().all(|r| r.abs == 0.0));
                if n >= 2 {
                    let leak = ComponentBundle::from_components(n, move |v, q| Ok(Complex64::new(if v == 1 { q.w.powi(6) } else { 0.0 }, 0.0)));
                    let rs = const_term_residuals(&d, n, &leak, &p, &eb).unwrap();
                    assert!(rs.iter().any(|r| r.family == 5 && r.abs > 0.0));
                }
            }
        }
    }
}
