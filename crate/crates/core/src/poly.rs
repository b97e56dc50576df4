//! Univariate polynomials over the rationals and Sturm root counting.

use num_traits::{Signed, Zero};

use crate::rational::Q;

/// Coefficients in increasing degree; trailing zeros are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Remainder of Euclidean division by a nonzero `d`.
    pub fn rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            if !f.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    let idx = k - dd + i;
                    r[idx] = &r[idx] - &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().unwrap().rem(&next).neg();
            seq.push(next);
            next = r;
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Q, b: &Q) -> usize {
        assert!(a < b, "empty interval");
        assert!(!self.is_zero(), "zero polynomial has infinitely many roots");
        let seq = self.sturm_sequence();
        let changes = |x: &Q| -> usize {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| sign(&p.eval(x)))
                .filter(|s| *s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(a) - changes(b)
    }

    /// True when `p(x) < 0` for every `x` in `(a, b]`.
    pub fn negative_on(&self, a: &Q, b: &Q) -> bool {
        if self.is_zero() {
            return false;
        }
        self.count_roots(a, b) == 0 && self.eval(b).is_negative()
    }
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
