//! Exact quadratic surds `(p + q sqrt(d)) / r`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{fmt_q, from_f64, to_f64, Q};

/// `(p + q sqrt(d)) / r` with `r > 0`, `d` square-free, and `q = 0` whenever
/// `d` is 0 or 1 (those are folded into `p`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    pub p: Q,
    pub q: Q,
    pub r: Q,
    pub d: BigInt,
}

/// Writes `n = k^2 d` with `d` square-free and returns `(k, d)`. Requires `n >= 0`.
pub fn square_free_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative(), "square-free part of a negative number");
    if n.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut rem = n.clone();
    let mut k = BigInt::one();
    let mut d = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f * &f <= rem {
        let f2 = &f * &f;
        while (&rem % &f2).is_zero() {
            rem /= &f2;
            k *= &f;
        }
        if (&rem % &f).is_zero() {
            rem /= &f;
            d *= &f;
        }
        f += 1;
    }
    // `rem` now has at most two prime factors, all larger than any trial divisor.
    let s = rem.sqrt();
    if &s * &s == rem && !rem.is_one() {
        k *= s;
    } else {
        d *= rem;
    }
    (k, d)
}

/// Sign of `a + b sqrt(d)` for `d >= 0`.
pub fn sign_of(a: &Q, b: &Q, d: &BigInt) -> Ordering {
    let sa = a.cmp(&Q::zero());
    let sb = if d.is_zero() { Ordering::Equal } else { b.cmp(&Q::zero()) };
    match (sa, sb) {
        (x, Ordering::Equal) => x,
        (Ordering::Equal, y) => y,
        (x, y) if x == y => x,
        (x, _) => {
            // Opposite signs: compare a^2 with b^2 d.
            let lhs = a * a;
            let rhs = b * b * Q::from_integer(d.clone());
            match lhs.cmp(&rhs) {
                Ordering::Greater => x,
                Ordering::Less => x.reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl QuadraticSurd {
    pub fn from_rational(x: Q) -> Self {
        QuadraticSurd {
            p: x,
            q: Q::zero(),
            r: Q::one(),
            d: BigInt::zero(),
        }
    }

    /// `(p + q sqrt(rad)) / r` for a nonnegative rational radicand.
    pub fn new(p: Q, q: Q, rad: &Q, r: Q) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        assert!(!rad.is_negative(), "negative radicand");
        // sqrt(n/m) = sqrt(n m) / m
        let nm = rad.numer() * rad.denom();
        let (k, d) = square_free_decomposition(&nm);
        let coeff = &q * Q::new(k, rad.denom().clone());
        let (mut p, mut q, mut r) = (p, coeff, r);
        let mut d = d;
        if d.is_zero() {
            q = Q::zero();
        } else if d.is_one() {
            p += &q;
            q = Q::zero();
            d = BigInt::zero();
        }
        if q.is_zero() {
            d = BigInt::zero();
        }
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        // Fold r into p and q so representation is canonical.
        QuadraticSurd {
            p: p / &r,
            q: q / &r,
            r: Q::one(),
            d,
        }
    }

    /// Rational part `p / r`.
    pub fn rational_part(&self) -> Q {
        &self.p / &self.r
    }

    /// Coefficient of `sqrt(d)`.
    pub fn surd_coeff(&self) -> Q {
        &self.q / &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero() || self.d.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.rational_part(), &self.surd_coeff(), &self.d)
    }

    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        sign_of(&(self.rational_part() - x), &self.surd_coeff(), &self.d)
    }

    /// `x^2` for a surd `x = a + b sqrt(d)`.
    pub fn square(&self) -> QuadraticSurd {
        let a = self.rational_part();
        let b = self.surd_coeff();
        let dq = Q::from_integer(self.d.clone());
        QuadraticSurd {
            p: &a * &a + &b * &b * &dq,
            q: Q::from_integer(2.into()) * &a * &b,
            r: Q::one(),
            d: if (&a * &b).is_zero() { BigInt::zero() } else { self.d.clone() },
        }
    }

    /// Evaluates `c0 + c1 x + c2 x^2 + ...` exactly at `x = self`.
    pub fn eval_poly(&self, coeffs: &[Q]) -> QuadraticSurd {
        let a = self.rational_part();
        let b = self.surd_coeff();
        let dq = Q::from_integer(self.d.clone());
        let (mut ra, mut rb) = (Q::zero(), Q::zero());
        for c in coeffs.iter().rev() {
            // (ra + rb s)(a + b s) + c, s^2 = d
            let na = &ra * &a + &rb * &b * &dq + c;
            let nb = &ra * &b + &rb * &a;
            ra = na;
            rb = nb;
        }
        QuadraticSurd {
            p: ra,
            q: if self.d.is_zero() { Q::zero() } else { rb },
            r: Q::one(),
            d: self.d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Nearest float, avoiding cancellation through the conjugate.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational_part();
        let b = self.surd_coeff();
        if self.d.is_zero() || b.is_zero() {
            return to_f64(&a);
        }
        let s = self.d.to_f64().unwrap_or(f64::INFINITY).sqrt();
        let fa = to_f64(&a);
        let fb = to_f64(&b);
        if (fa > 0.0) == (fb > 0.0) || fa == 0.0 {
            return fa + fb * s;
        }
        // a + b s = (a^2 - b^2 d) / (a - b s)
        let num = &a * &a - &b * &b * Q::from_integer(self.d.clone());
        to_f64(&num) / (fa - fb * s)
    }

    /// Certified enclosure `[lo, hi]` of `sqrt(self)` with `hi - lo <= width`.
    /// Requires `self >= 0`.
    pub fn sqrt_enclosure(&self, width: f64) -> (f64, f64) {
        assert!(self.signum() != Ordering::Less, "square root of a negative surd");
        let t0 = self.to_f64().max(0.0).sqrt();
        let le_sq = |x: f64| -> bool {
            let xq = from_f64(x).expect("finite");
            self.cmp_rational(&(&xq * &xq)) != Ordering::Less
        };
        let ge_sq = |x: f64| -> bool {
            let xq = from_f64(x).expect("finite");
            self.cmp_rational(&(&xq * &xq)) != Ordering::Greater
        };
        let mut delta = (t0 * 1e-15).max(1e-300);
        while 2.0 * delta <= width {
            let lo = (t0 - delta).max(0.0);
            let hi = t0 + delta;
            if le_sq(lo) && ge_sq(hi) {
                return (lo, hi);
            }
            delta *= 2.0;
        }
        // Bisection fallback on exact comparisons.
        let mut lo = 0.0f64;
        let mut hi = t0.max(1.0) * 2.0;
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if le_sq(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.rational_part() - other.rational_part();
        let b1 = self.surd_coeff();
        let b2 = other.surd_coeff();
        if other.is_rational() {
            return sign_of(&a, &b1, &self.d);
        }
        if self.is_rational() {
            return sign_of(&a, &(-b2), &other.d);
        }
        if self.d == other.d {
            return sign_of(&a, &(b1 - b2), &self.d);
        }
        // sign(X - Y) with X = a + b1 sqrt(d1), Y = b2 sqrt(d2), b2 != 0.
        let sx = sign_of(&a, &b1, &self.d);
        let sy = b2.cmp(&Q::zero());
        if sx != sy {
            return sy.reverse();
        }
        let d1 = Q::from_integer(self.d.clone());
        let d2 = Q::from_integer(other.d.clone());
        let sq = sign_of(
            &(&a * &a + &b1 * &b1 * &d1 - &b2 * &b2 * &d2),
            &(Q::from_integer(2.into()) * &a * &b1),
            &self.d,
        );
        if sx == Ordering::Greater {
            sq
        } else {
            sq.reverse()
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.rational_part();
        let b = self.surd_coeff();
        if self.is_rational() {
            return f.write_str(&fmt_q(&a));
        }
        let rad = if b == Q::one() {
            format!("sqrt({})", self.d)
        } else if b == -Q::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_q(&b), self.d)
        };
        if a.is_zero() {
            f.write_str(&rad)
        } else if rad.starts_with('-') {
            write!(f, "{} - {}", fmt_q(&a), &rad[1..])
        } else {
            write!(f, "{} + {}", fmt_q(&a), rad)
        }
    }
}

/// Positive roots of `a u^2 + b u + c = 0` for `a != 0`, in increasing order.
pub fn quadratic_roots(a: &Q, b: &Q, c: &Q) -> Vec<QuadraticSurd> {
    assert!(!a.is_zero(), "not a quadratic");
    let disc = b * b - Q::from_integer(4.into()) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = Q::from_integer(2.into()) * a;
    let mut roots = vec![
        QuadraticSurd::new(-b.clone(), -Q::one(), &disc, two_a.clone()),
        QuadraticSurd::new(-b.clone(), Q::one(), &disc, two_a),
    ];
    roots.sort();
    roots.dedup();
    roots
}
