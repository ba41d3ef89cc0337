//! Exact rational helpers.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always prints the denominator, so integers come out as `3/1`.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn pos(r: &Rational) -> Rational {
    if r.is_negative() {
        Rational::zero()
    } else {
        r.clone()
    }
}

pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_f64(x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

/// Natural logarithm of a positive rational, accurate for huge numerators and denominators.
pub fn ln(r: &Rational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

fn ln_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return libm::log(v.to_f64().unwrap_or(f64::NAN));
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    libm::log(top.to_f64().unwrap_or(f64::NAN)) + (shift as f64) * core::f64::consts::LN_2
}
