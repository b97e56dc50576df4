//! Exact enumeration of integer points under a positive-definite quadratic
//! cutoff: all `x >= lower` with `x^T M x + L.x <= cutoff`.
//!
//! Completing the square turns the condition into `(x+h)^T M (x+h) <= R`,
//! and an `L D L^T` factorisation bounds one coordinate at a time (Fincke-Pohst).
//! Every accept/reject decision is an exact rational comparison.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{to_f64, Q};

#[derive(Debug, Clone)]
pub struct QuadForm {
    pub quad: Matrix,
    pub linear: Vec<Q>,
}

impl QuadForm {
    pub fn new(quad: Matrix, linear: Vec<Q>) -> Self {
        QuadForm { quad, linear }
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, x: &[i64]) -> Q {
        let xq: Vec<Q> = x.iter().map(|&v| Q::from_integer(v.into())).collect();
        linalg::bilinear(&self.quad, &xq, &xq)
            + self
                .linear
                .iter()
                .zip(&xq)
                .fold(Q::zero(), |acc, (l, v)| acc + l * v)
    }

    /// All integer points `x` with `x_i >= lower[i]` and value `<= cutoff`,
    /// in lexicographic order.
    pub fn enumerate(&self, cutoff: &Q, lower: &[i64]) -> Result<Vec<Vec<i64>>> {
        let n = self.dim();
        assert_eq!(lower.len(), n);
        let (l, d) = linalg::ldlt_positive(&self.quad).ok_or(Error::NotPositiveDefinite)?;
        let inv = linalg::inverse(&self.quad).ok_or(Error::NotPositiveDefinite)?;
        let half: Vec<Q> = self.linear.iter().map(|v| v / Q::from_integer(2.into())).collect();
        let h = linalg::mat_vec(&inv, &half);
        let radius = cutoff + linalg::bilinear(&self.quad, &h, &h);
        let mut out = Vec::new();
        if radius.is_negative() {
            return Ok(out);
        }
        let mut x = vec![0i64; n];
        self.descend(n, &l, &d, &h, &radius, lower, &mut x, cutoff, &mut out);
        out.sort();
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        level: usize,
        l: &Matrix,
        d: &[Q],
        h: &[Q],
        remaining: &Q,
        lower: &[i64],
        x: &mut Vec<i64>,
        cutoff: &Q,
        out: &mut Vec<Vec<i64>>,
    ) {
        if level == 0 {
            if &self.eval(x) <= cutoff {
                out.push(x.clone());
            }
            return;
        }
        let j = level - 1;
        // y_j = x_j + c with c = h_j + sum_{i>j} L_ij (x_i + h_i)
        let mut c = h[j].clone();
        for i in (j + 1)..x.len() {
            c += &l[i][j] * (Q::from_integer(x[i].into()) + &h[i]);
        }
        let fits = |v: i64| -> bool {
            let y = Q::from_integer(v.into()) + &c;
            &d[j] * &y * &y <= *remaining
        };
        let centre = -&c;
        let r = to_f64(&(remaining / &d[j])).max(0.0).sqrt();
        let cf = to_f64(&centre);
        let mut lo = (cf - r).floor() as i64;
        let mut hi = (cf + r).ceil() as i64;
        // The feasible set is an interval around the centre: if it holds an
        // integer, it holds floor(centre) or floor(centre) + 1.
        let f = floor_i64(&centre);
        if !fits(f) && !fits(f + 1) {
            return;
        }
        // Exact adjustment of the float guesses.
        while lo < hi && !fits(lo) {
            lo += 1;
        }
        while fits(lo - 1) {
            lo -= 1;
        }
        while hi > lo && !fits(hi) {
            hi -= 1;
        }
        while fits(hi + 1) {
            hi += 1;
        }
        let lo = lo.max(lower[j]);
        for v in lo..=hi {
            if !fits(v) {
                continue;
            }
            x[j] = v;
            let y = Q::from_integer(v.into()) + &c;
            let rest = remaining - &d[j] * &y * &y;
            self.descend(j, l, d, h, &rest, lower, x, cutoff, out);
        }
        x[j] = 0;
    }
}

fn floor_i64(x: &Q) -> i64 {
    let f: BigInt = x.floor().to_integer();
    f.to_i64().unwrap_or(0)
}
