//! Modified Bessel functions `K_v(z)` of integer order for real `z > 0`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const GL_POINTS: usize = 20;

fn check_domain(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::BesselDomain(format!("K_v needs a finite z > 0, got {z}")));
    }
    Ok(())
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() && x != 0.0 {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}

/// `(K₀(z), K₁(z))` from the power series, accurate for `z ≤ 2`.
fn k01_series(z: f64) -> (f64, f64) {
    let t = z * z / 4.0;
    let l = (z / 2.0).ln();
    let (mut i0, mut s0) = (0.0, 0.0);
    let (mut i1, mut s1) = (0.0, 0.0);
    let mut term0 = 1.0; // t^k/(k!)²
    let mut term1 = 1.0; // t^k/(k!(k+1)!)
    let mut h = 0.0; // H_k
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term0 *= t / (kf * kf);
            term1 *= t / (kf * (kf + 1.0));
            h += 1.0 / kf;
        }
        let h1 = h + 1.0 / (kf + 1.0);
        i0 += term0;
        s0 += term0 * h;
        i1 += term1;
        s1 += term1 * (h + h1 - 2.0 * EULER_GAMMA);
        if term0 < 1e-18 * i0 && term1 < 1e-18 * i1 {
            break;
        }
    }
    let k0 = -(l + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / z + l * (z / 2.0) * i1 - z / 4.0 * s1;
    (k0, k1)
}

/// `(eᶻK₀(z), eᶻK₁(z))` from Steed's continued fraction, for `z > 2`.
fn k01_scaled_cf(z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let (mut q1, mut q2) = (0.0, 1.0);
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (std::f64::consts::PI / (2.0 * z)).sqrt() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// `(eᶻK₀(z), eᶻK₁(z))`.
fn k01_scaled(z: f64) -> (f64, f64) {
    if z <= 2.0 {
        let (k0, k1) = k01_series(z);
        (k0 * z.exp(), k1 * z.exp())
    } else {
        k01_scaled_cf(z)
    }
}

/// Upward recurrence `K_{k+1} = K_{k−1} + (2k/z)K_k` from `K₀, K₁` to `K_|v|`.
pub fn recurrence(v: i64, k0: f64, k1: f64, z: f64) -> f64 {
    let v = v.unsigned_abs();
    if v == 0 {
        return k0;
    }
    let (mut prev, mut cur) = (k0, k1);
    for k in 1..v {
        let next = prev + 2.0 * k as f64 / z * cur;
        prev = cur;
        cur = next;
    }
    cur
}

/// `eᶻK_v(z)`.
pub fn bessel_k_scaled(v: i64, z: f64) -> Result<f64> {
    check_domain(z)?;
    let (k0, k1) = k01_scaled(z);
    let r = recurrence(v, k0, k1, z);
    if r.is_finite() {
        Ok(r)
    } else {
        Err(Error::NonFinite(r))
    }
}

/// `K_v(z)`; `K_{−v} = K_v`. Overflow and underflow are reported as
/// [`Error::NonFinite`] carrying the offending value.
pub fn bessel_k(v: i64, z: f64) -> Result<f64> {
    check_domain(z)?;
    if z <= 2.0 {
        let (k0, k1) = k01_series(z);
        return finite(recurrence(v, k0, k1, z));
    }
    finite(bessel_k_scaled(v, z)? * (-z).exp())
}

fn gauss_legendre() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_POINTS;
        (0..n)
            .map(|i| {
                let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let kf = k as f64;
                        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

/// `eᶻK_v(z) = ∫₀^∞ e^{−z(cosh t − 1)} cosh(vt) dt` by composite Gauss–Legendre.
pub fn bessel_k_quad_scaled(v: i64, z: f64) -> Result<f64> {
    check_domain(z)?;
    let v = v.unsigned_abs() as f64;
    let f = |t: f64| (-z * (t.cosh() - 1.0) + v * t).exp() * 0.5 * (1.0 + (-2.0 * v * t).exp());
    let width = (0.5 / z.sqrt()).min(0.25);
    // The integrand decreases once z sinh t > v.
    let t_turn = (v / z).asinh();
    let nodes = gauss_legendre();
    let mut sum = 0.0;
    let mut lo = 0.0;
    for _ in 0..100_000 {
        let hi = lo + width;
        let (mid, half) = ((lo + hi) / 2.0, width / 2.0);
        sum += half * nodes.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>();
        lo = hi;
        if lo > t_turn && f(lo) < 1e-19 * sum {
            break;
        }
    }
    finite(sum)
}

/// Quadrature oracle for `K_v(z)`.
pub fn bessel_k_quad(v: i64, z: f64) -> Result<f64> {
    finite(bessel_k_quad_scaled(v, z)? * (-z).exp())
}

/// Hankel asymptotic expansion `√(π/2z) e^{−z} Σ a_k(v) z^{−k}`, for large `z`.
pub fn bessel_k_asymptotic(v: i64, z: f64) -> Result<f64> {
    check_domain(z)?;
    let mu = 4.0 * (v as f64) * (v as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = term * (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * z);
        if next.abs() >= term.abs() && k > 1 {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    finite((std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp() * sum)
}
