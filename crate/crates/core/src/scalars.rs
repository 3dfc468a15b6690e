//! Exact scalars: arbitrary-precision rationals and the field Q(i, √2), plus
//! the machine-precision types used by the numeric layer.
//!
//! Every algebraic structure in the crate is generic over [`Scalar`], so the same
//! code runs over `Rational` (exact real form), `CayleyScalar` (exact
//! complexification), `f64` and `Complex64` (numeric layer).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Common interface of every coefficient type.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// Complex conjugation; the identity on real types.
    fn conj(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(n, d))
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_i64(n)
    }

    /// Equality for exact types; relative closeness (1e−9) for machine types.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// A reduced fraction with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` use an inline fast
/// path; everything else falls back to `BigRational`. The representation is
/// canonical: `Big` is used only when the value does not fit `Small`.
#[derive(Clone)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u128(a.unsigned_abs() as u128, b.unsigned_abs() as u128) as i64
}

impl Rational {
    pub fn new(n: i64, d: i64) -> Rational {
        assert!(d != 0, "zero denominator");
        Rational::from_i128(n as i128, d as i128)
    }

    pub fn from_bigints(n: BigInt, d: BigInt) -> Rational {
        Rational::from_big(BigRational::new(n, d))
    }

    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) if n != i64::MIN => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Rational {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Rational> {
        match self {
            Rational::Small(0, _) => None,
            Rational::Small(n, d) => Some(Rational::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Some(Rational::from_big(b.recip())),
        }
    }

    /// Nearest `f64` to the exact value.
    pub fn to_f64(&self) -> f64 {
        const EXACT: i64 = 1 << 53;
        match self {
            Rational::Small(n, d) if n.abs() <= EXACT && *d <= EXACT => *n as f64 / *d as f64,
            _ => self.to_big().to_f64().unwrap_or(f64::NAN),
        }
    }

    /// The exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Result<Rational> {
        if !x.is_finite() {
            return Err(Error::NonFinite(x));
        }
        BigRational::from_float(x).map(Rational::from_big).ok_or(Error::NonFinite(x))
    }

    pub fn pow(&self, e: u32) -> Rational {
        let mut acc = Rational::from(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Uniform random fraction `p/q` with `|p| ≤ num_bound`, `1 ≤ q ≤ den_bound`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
        let p = rng.gen_range(-num_bound..=num_bound);
        let q = rng.gen_range(1..=den_bound);
        Rational::new(p, q)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::new(n, 1)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Rational {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Rational) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rational::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(0, _), _) => o,
            (_, Rational::Small(0, _)) => self,
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    return Rational::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let g = gcd_i64(*b, *d) as i128;
                let (b, d) = (*b as i128, *d as i128);
                let n = *a as i128 * (d / g) + *c as i128 * (b / g);
                Rational::from_i128(n, (b / g) * d)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) if n != i64::MIN => Rational::Small(-n, d),
            other => Rational::from_big(-other.to_big()),
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::Small(0, 1),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let g1 = gcd_i64(*a, *d);
                let g2 = gcd_i64(*c, *b);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let den = (*b / g2) as i128 * (*d / g1) as i128;
                match (i64::try_from(n), i64::try_from(den)) {
                    (Ok(n), Ok(den)) if n != i64::MIN => Rational::Small(n, den),
                    _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(den)))),
                }
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, o: Rational) -> Rational {
        self * o.recip().expect("division by zero rational")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(s.to_string()));
                }
                Ok(Rational::from_bigints(parse(n)?, d))
            }
            None => Ok(Rational::from(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
}

// ---------------------------------------------------------------------------
// Q(i, √2)
// ---------------------------------------------------------------------------

/// `c[0] + c[1]·i + c[2]·√2 + c[3]·i√2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleyScalar {
    pub c: [Rational; 4],
}

impl CayleyScalar {
    pub fn new(c0: Rational, c1: Rational, c2: Rational, c3: Rational) -> Self {
        CayleyScalar { c: [c0, c1, c2, c3] }
    }

    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn real(r: Rational) -> Self {
        Self::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// Splits as `u + i·v` with `u, v ∈ Q(√2)` given as (rational, √2-coefficient) pairs.
    fn halves(&self) -> ((Rational, Rational), (Rational, Rational)) {
        let [a, b, c, d] = self.c.clone();
        ((a, c), (b, d))
    }

    /// Nearest machine complex number. The √2 part is evaluated against a
    /// rational approximation accurate to 2^-200 before a single rounding.
    pub fn to_machine(&self) -> Complex64 {
        let part = |r: &Rational, s: &Rational| -> f64 {
            if s.is_zero() {
                return r.to_f64();
            }
            let exact = r.to_big() + s.to_big() * sqrt2_approx();
            exact.to_f64().unwrap_or(f64::NAN)
        };
        Complex64::new(part(&self.c[0], &self.c[2]), part(&self.c[1], &self.c[3]))
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Self {
        CayleyScalar {
            c: std::array::from_fn(|_| Rational::random(rng, num_bound, den_bound)),
        }
    }
}

fn sqrt2_approx() -> BigRational {
    use std::sync::OnceLock;
    static CELL: OnceLock<BigRational> = OnceLock::new();
    CELL.get_or_init(|| {
        let scale = BigInt::one() << 400u32;
        let root = (BigInt::from(2) * &scale * &scale).sqrt();
        BigRational::new(root, scale)
    })
    .clone()
}

impl Add for CayleyScalar {
    type Output = CayleyScalar;
    fn add(self, o: CayleyScalar) -> CayleyScalar {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        CayleyScalar::new(a0 + b0, a1 + b1, a2 + b2, a3 + b3)
    }
}

impl Sub for CayleyScalar {
    type Output = CayleyScalar;
    fn sub(self, o: CayleyScalar) -> CayleyScalar {
        self + (-o)
    }
}

impl Neg for CayleyScalar {
    type Output = CayleyScalar;
    fn neg(self) -> CayleyScalar {
        let [a0, a1, a2, a3] = self.c;
        CayleyScalar::new(-a0, -a1, -a2, -a3)
    }
}

impl Mul for CayleyScalar {
    type Output = CayleyScalar;
    fn mul(self, o: CayleyScalar) -> CayleyScalar {
        if self.is_rational() {
            let r = self.c[0].clone();
            let [b0, b1, b2, b3] = o.c;
            return CayleyScalar::new(r.clone() * b0, r.clone() * b1, r.clone() * b2, r * b3);
        }
        if o.is_rational() {
            return o * self;
        }
        let [a, b, c, d] = self.c;
        let [e, f, g, h] = o.c;
        let two = Rational::from(2);
        // i² = −1, s² = 2 with s = √2.
        let re = a.clone() * e.clone() - b.clone() * f.clone() + two.clone() * (c.clone() * g.clone())
            - two.clone() * (d.clone() * h.clone());
        let im = a.clone() * f.clone() + b.clone() * e.clone() + two.clone() * (c.clone() * h.clone())
            + two * (d.clone() * g.clone());
        let s = a.clone() * g.clone() + c.clone() * e.clone() - b.clone() * h.clone() - d.clone() * f.clone();
        let is = a * h + d * e + b * g + c * f;
        CayleyScalar::new(re, im, s, is)
    }
}

impl fmt::Display for CayleyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units = ["", "i", "√2", "i√2"];
        let mut wrote = false;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c}){}", units[k])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for CayleyScalar {
    fn zero() -> Self {
        CayleyScalar::real(Rational::zero())
    }
    fn one() -> Self {
        CayleyScalar::real(Rational::one())
    }
    fn from_rational(r: &Rational) -> Self {
        CayleyScalar::real(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // x = u + iv with u, v ∈ Q(√2); x·(u − iv) = u² + v² ∈ Q(√2).
        let ((u0, u1), (v0, v1)) = self.halves();
        let two = Rational::from(2);
        let n0 = u0.clone() * u0.clone() + two.clone() * u1.clone() * u1.clone() + v0.clone() * v0.clone()
            + two.clone() * v1.clone() * v1.clone();
        let n1 = two.clone() * (u0.clone() * u1.clone() + v0.clone() * v1.clone());
        // (n0 + n1√2)⁻¹ = (n0 − n1√2)/(n0² − 2n1²)
        let den = n0.clone() * n0.clone() - two * n1.clone() * n1.clone();
        let k = den.recip()?;
        let m0 = n0 * k.clone();
        let m1 = -(n1 * k);
        let conj = CayleyScalar::new(u0, -v0, u1, -v1);
        Some(conj * CayleyScalar::new(m0, Rational::zero(), m1, Rational::zero()))
    }
    fn conj(&self) -> Self {
        let [a, b, c, d] = self.c.clone();
        CayleyScalar::new(a, -b, c, -d)
    }
}

// ---------------------------------------------------------------------------
// Machine types
// ---------------------------------------------------------------------------

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64()
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-9 * (1.0 + self.abs().max(other.abs()))
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        (!Scalar::is_zero(self)).then(|| 1.0 / self)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn approx_eq(&self, other: &Self) -> bool {
        (self - other).norm() <= 1e-9 * (1.0 + self.norm().max(other.norm()))
    }
}

/// Scalars containing a square root of −1.
pub trait ComplexScalar: Scalar {
    fn imag_unit() -> Self;
}

impl ComplexScalar for CayleyScalar {
    fn imag_unit() -> Self {
        CayleyScalar::i()
    }
}

impl ComplexScalar for Complex64 {
    fn imag_unit() -> Self {
        Complex64::new(0.0, 1.0)
    }
}

/// Exact integer square root by digit-pair long division (used as an oracle).
pub fn isqrt_long_division(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    let digits = n.to_str_radix(10);
    let padded = if digits.len() % 2 == 1 { format!("0{digits}") } else { digits };
    let (mut rem, mut root) = (BigInt::zero(), BigInt::zero());
    for pair in padded.as_bytes().chunks(2) {
        let pair: u32 = std::str::from_utf8(pair).unwrap().parse().unwrap();
        rem = rem * 100 + pair;
        let mut x = 0u32;
        while (&root * 20 + x + 1) * (x + 1) <= rem {
            x += 1;
        }
        rem -= (&root * 20 + x) * x;
        root = root * 10 + x;
    }
    root
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn cs(a: i64, b: i64, c: i64, d: i64) -> CayleyScalar {
        CayleyScalar::new(q(a, 1), q(b, 1), q(c, 1), q(d, 1))
    }

    #[test]
    fn rational_normalizes() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, -5), Rational::zero());
    }

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let big = Rational::from(i64::MAX);
        let sq = big.clone() * big.clone();
        assert!(matches!(sq, Rational::Big(_)));
        let back = sq / big.clone();
        assert!(matches!(back, Rational::Small(_, _)));
        assert_eq!(back, big);
    }

    #[test]
    fn gaussian_norm() {
        assert_eq!(cs(1, 1, 0, 0) * cs(1, -1, 0, 0), cs(2, 0, 0, 0));
    }

    #[test]
    fn sqrt2_squared() {
        assert_eq!(CayleyScalar::sqrt2() * CayleyScalar::sqrt2(), cs(2, 0, 0, 0));
    }

    #[test]
    fn conj_fixes_sqrt2() {
        assert_eq!(cs(0, 0, 0, 1).conj(), cs(0, 0, 0, -1));
        assert_eq!(CayleyScalar::sqrt2().conj(), CayleyScalar::sqrt2());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(CayleyScalar::zero().inv().is_none());
        assert!(Rational::zero().inv().is_none());
    }

    #[test]
    fn to_machine_examples() {
        assert_eq!(CayleyScalar::real(q(1, 2)).to_machine(), Complex64::new(0.5, 0.0));
        assert_eq!(CayleyScalar::i().to_machine(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn to_machine_sqrt2_against_long_division() {
        let digits = 40u32;
        let n = BigInt::from(2) * BigInt::from(10).pow(2 * digits);
        let root = isqrt_long_division(&n);
        let oracle = Rational::from_bigints(root, BigInt::from(10).pow(digits)).to_f64();
        let got = CayleyScalar::sqrt2().to_machine().re;
        assert!((got - oracle).abs() <= 1e-15);
        assert_eq!(got, std::f64::consts::SQRT_2);
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let x = CayleyScalar::random(&mut rng, 5, 4);
            let y = CayleyScalar::random(&mut rng, 5, 4);
            let z = CayleyScalar::random(&mut rng, 5, 4);
            assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z));
            assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        }
        for _ in 0..1_000 {
            let x = CayleyScalar::random(&mut rng, 7, 5);
            if x.is_zero() {
                continue;
            }
            assert_eq!(x.clone() * x.inv().unwrap(), CayleyScalar::one());
        }
    }

    #[test]
    fn from_f64_is_exact() {
        let r = Rational::from_f64(0.1).unwrap();
        assert_eq!(r.to_f64(), 0.1);
        assert_ne!(r, q(1, 10));
        assert_eq!(Rational::from_f64(-2.5).unwrap(), q(-5, 2));
    }

    #[test]
    fn parse_roundtrip() {
        for r in [q(3, 7), q(-12, 5), Rational::from(9)] {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
