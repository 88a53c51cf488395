use std::fmt;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::esf::EsfParams;

/// Default mantissa for [`Real`]; comfortably above the 128-bit floor.
pub const DEFAULT_PREC: u32 = 160;
pub const MIN_PREC: u32 = 128;

/// A coefficient field for [`TruncatedSeries`](super::TruncatedSeries).
#[allow(clippy::wrong_self_convention)]
pub trait Domain: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    /// θ as an element; the exact domain refuses a real-only θ.
    fn theta(&self, params: &EsfParams) -> Result<Self::Elem>;

    fn add_assign(&self, acc: &mut Self::Elem, x: &Self::Elem);
    fn sub_assign(&self, acc: &mut Self::Elem, x: &Self::Elem);
    /// `acc += a·b`, the hot path of every series product.
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem);
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul_usize(&self, a: &Self::Elem, k: usize) -> Self::Elem;
    fn div_usize(&self, a: &Self::Elem, k: usize) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_f64(&self, a: &Self::Elem) -> f64;
    /// `e^a`, or `None` when it leaves the domain.
    fn exp(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// `ln a`, or `None` when it leaves the domain.
    fn ln(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn one(&self) -> Self::Elem {
        self.from_int(1)
    }

    fn csv_header(&self) -> &'static [&'static str];
    fn csv_fields(&self, a: &Self::Elem) -> Vec<String>;
}

/// Exact rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Exact;

impl Domain for Exact {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::new()
    }

    fn from_int(&self, v: i64) -> Rational {
        Rational::from(v)
    }

    fn from_rational(&self, q: &Rational) -> Rational {
        q.clone()
    }

    fn theta(&self, params: &EsfParams) -> Result<Rational> {
        params.theta_exact().cloned()
    }

    fn add_assign(&self, acc: &mut Rational, x: &Rational) {
        *acc += x;
    }

    fn sub_assign(&self, acc: &mut Rational, x: &Rational) {
        *acc -= x;
    }

    fn mul_add_assign(&self, acc: &mut Rational, a: &Rational, b: &Rational) {
        if *a.numer() != 0 && *b.numer() != 0 {
            *acc += Rational::from(a * b);
        }
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a * b)
    }

    fn div(&self, a: &Rational, b: &Rational) -> Rational {
        Rational::from(a / b)
    }

    fn mul_usize(&self, a: &Rational, k: usize) -> Rational {
        Rational::from(a * rug::Integer::from(k))
    }

    fn div_usize(&self, a: &Rational, k: usize) -> Rational {
        Rational::from(a / rug::Integer::from(k))
    }

    fn is_zero(&self, a: &Rational) -> bool {
        *a.numer() == 0
    }

    fn to_f64(&self, a: &Rational) -> f64 {
        a.to_f64()
    }

    fn exp(&self, a: &Rational) -> Option<Rational> {
        self.is_zero(a).then(|| self.one())
    }

    fn ln(&self, a: &Rational) -> Option<Rational> {
        (*a == 1).then(|| self.zero())
    }

    fn csv_header(&self) -> &'static [&'static str] {
        &["numerator", "denominator"]
    }

    fn csv_fields(&self, a: &Rational) -> Vec<String> {
        vec![a.numer().to_string(), a.denom().to_string()]
    }
}

/// MPFR reals at a fixed mantissa precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Real {
    prec: u32,
}

impl Real {
    pub fn new(prec: u32) -> Result<Self> {
        if prec < MIN_PREC {
            return Err(Error::domain(format!(
                "real series need at least {MIN_PREC} bits, got {prec}"
            )));
        }
        Ok(Self { prec })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn float(&self, v: impl Into<f64>) -> Float {
        Float::with_val(self.prec, v.into())
    }
}

impl Default for Real {
    fn default() -> Self {
        Self { prec: DEFAULT_PREC }
    }
}

impl Domain for Real {
    type Elem = Float;

    fn zero(&self) -> Float {
        Float::new(self.prec)
    }

    fn from_int(&self, v: i64) -> Float {
        Float::with_val(self.prec, v)
    }

    fn from_rational(&self, q: &Rational) -> Float {
        Float::with_val(self.prec, q)
    }

    fn theta(&self, params: &EsfParams) -> Result<Float> {
        Ok(match params.theta_exact() {
            Ok(q) => self.from_rational(q),
            Err(_) => self.float(params.theta()),
        })
    }

    fn add_assign(&self, acc: &mut Float, x: &Float) {
        *acc += x;
    }

    fn sub_assign(&self, acc: &mut Float, x: &Float) {
        *acc -= x;
    }

    fn mul_add_assign(&self, acc: &mut Float, a: &Float, b: &Float) {
        *acc += a * b;
    }

    fn mul(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a * b)
    }

    fn div(&self, a: &Float, b: &Float) -> Float {
        Float::with_val(self.prec, a / b)
    }

    fn mul_usize(&self, a: &Float, k: usize) -> Float {
        Float::with_val(self.prec, a * k as f64)
    }

    fn div_usize(&self, a: &Float, k: usize) -> Float {
        Float::with_val(self.prec, a / k as f64)
    }

    fn is_zero(&self, a: &Float) -> bool {
        a.is_zero()
    }

    fn to_f64(&self, a: &Float) -> f64 {
        a.to_f64()
    }

    fn exp(&self, a: &Float) -> Option<Float> {
        Some(Float::with_val(self.prec, a.exp_ref()))
    }

    fn ln(&self, a: &Float) -> Option<Float> {
        (*a > 0).then(|| Float::with_val(self.prec, a.ln_ref()))
    }

    fn csv_header(&self) -> &'static [&'static str] {
        &["value"]
    }

    fn csv_fields(&self, a: &Float) -> Vec<String> {
        vec![a.to_string_radix(10, Some(40))]
    }
}
