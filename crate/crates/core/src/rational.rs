//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Q = BigRational;

/// Builds `num/den` as an exact rational. Panics if `den == 0`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(x: &Q) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Q> {
    Q::from_float(x)
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Largest integer `k` with `k <= x`.
pub fn floor_int(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer `k` with `k >= x`.
pub fn ceil_int(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// Binomial coefficient `C(n, k)` as a big integer, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
