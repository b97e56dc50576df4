//! Scalar curvature of the canonical variation, by brute-force Wang-Ziller
//! summation over root triples and by the published closed forms.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::fibration::{FibrationData, FibrationFamily};
use crate::poly::Poly;
use crate::rational::{fmt_q, qi, Q};
use crate::rootsys::{structure_constant_sq, RootVector};

/// `scal(t) = (A + C t^2 + E t^4) / (D t^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalPoly {
    pub a: Q,
    pub c: Q,
    pub e: Q,
    pub d: Q,
}

impl ScalPoly {
    pub fn new(a: Q, c: Q, e: Q, d: Q) -> Self {
        ScalPoly { a, c, e, d }
    }

    fn ints(a: i64, c: i64, e: i64, d: i64) -> Self {
        ScalPoly::new(qi(a), qi(c), qi(e), qi(d))
    }

    /// Value at `u = t^2 > 0`.
    pub fn eval_u(&self, u: &Q) -> Q {
        (&self.a + &self.c * u + &self.e * u * u) / (&self.d * u)
    }

    /// Value at `t > 0`.
    pub fn eval_t(&self, t: &Q) -> Q {
        self.eval_u(&(t * t))
    }

    /// Numerator `A + C u + E u^2` as a polynomial in `u`.
    pub fn numerator(&self) -> Poly {
        Poly::new(vec![self.a.clone(), self.c.clone(), self.e.clone()])
    }

    /// Equality as rational functions of `u`, by cross-multiplication.
    pub fn identical(&self, other: &ScalPoly) -> bool {
        &self.a * &other.d == &other.a * &self.d
            && &self.c * &other.d == &other.c * &self.d
            && &self.e * &other.d == &other.e * &self.d
    }

    /// Rescaled so that `D` is the least positive value making `A, C, E, D` integers.
    pub fn normalized(&self) -> ScalPoly {
        use num_integer::Integer;
        let parts = [&self.a, &self.c, &self.e, &self.d];
        let lcm = parts
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<Q> = parts.iter().map(|x| *x * Q::from_integer(lcm.clone())).collect();
        let gcd = scaled
            .iter()
            .fold(num_bigint::BigInt::from(0), |acc, x| acc.gcd(x.numer()));
        let mut g = Q::from_integer(gcd);
        if self.d.is_negative() {
            g = -g;
        }
        ScalPoly::new(&scaled[0] / &g, &scaled[1] / &g, &scaled[2] / &g, &scaled[3] / &g)
    }
}

impl fmt::Display for ScalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Q, m: &str| {
            if c.is_negative() {
                format!(" - {}{m}", fmt_q(&-c))
            } else {
                format!(" + {}{m}", fmt_q(c))
            }
        };
        write!(
            f,
            "({}{}{}) / ({} t^2)",
            fmt_q(&self.a),
            term(&self.c, " t^2"),
            term(&self.e, " t^4"),
            fmt_q(&self.d)
        )
    }
}

/// Which of the three roots of a triple are vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleClass {
    /// All three vertical.
    Vvv,
    /// Exactly one vertical.
    Vhh,
    /// All three horizontal.
    Hhh,
}

/// An unordered triple `{alpha, beta, gamma = alpha + beta}` of positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleRecord {
    pub alpha: RootVector,
    pub beta: RootVector,
    pub gamma: RootVector,
    /// The symbol `[gamma; alpha beta] = 2 N_{alpha,beta}^2`.
    pub value: Q,
    pub klass: TripleClass,
}

pub fn triples(fib: &FibrationData) -> Vec<TripleRecord> {
    let rs = &fib.system;
    let pos = &fib.total_roots;
    let mut out = Vec::new();
    for (i, a) in pos.iter().enumerate() {
        for b in &pos[i + 1..] {
            let g = a.add(b);
            if !rs.is_positive_root(&g) {
                continue;
            }
            let nv = [a, b, &g].iter().filter(|r| fib.is_vertical(r)).count();
            let klass = match nv {
                3 => TripleClass::Vvv,
                1 => TripleClass::Vhh,
                0 => TripleClass::Hhh,
                _ => unreachable!("vertical roots form a closed subsystem"),
            };
            out.push(TripleRecord {
                alpha: a.clone(),
                beta: b.clone(),
                gamma: g,
                value: qi(2) * structure_constant_sq(rs, a, b),
                klass,
            });
        }
    }
    out
}

/// Ordered-triple census: `(n1, n2, n3)` where `n1` counts ordered triples
/// with all three modules vertical, `n2` those weighted by `1/t^2` with a single
/// vertical module, and `n3` those weighted by `t^2`.
pub fn ordered_census(records: &[TripleRecord]) -> (usize, usize, usize) {
    let mut c = (0, 0, 0);
    for r in records {
        match r.klass {
            TripleClass::Vvv => c.0 += 6,
            TripleClass::Vhh => {
                c.1 += 4;
                c.2 += 2;
            }
            TripleClass::Hhh => {}
        }
    }
    c
}

/// Wang-Ziller scalar curvature of the canonical variation.
pub fn scal_wz(fib: &FibrationData) -> ScalPoly {
    // Coefficients of u^-1, u^0, u^1.
    let mut k = [Q::zero(), Q::zero(), Q::zero()];
    // (1/2) sum d_l / t_l with d_l = 2.
    k[0] += qi(fib.vertical.len() as i64);
    k[1] += qi(fib.horizontal.len() as i64);
    let quarter = Q::new(1.into(), 4.into());
    for rec in triples(fib) {
        let v = [
            fib.is_vertical(&rec.alpha),
            fib.is_vertical(&rec.beta),
            fib.is_vertical(&rec.gamma),
        ];
        for (i, j, kk) in [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)] {
            let exp = v[kk] as i32 - v[i] as i32 - v[j] as i32;
            let slot = (exp + 1) as usize;
            k[slot] -= &quarter * &rec.value;
        }
    }
    ScalPoly::new(k[0].clone(), k[1].clone(), k[2].clone(), qi(1)).normalized()
}

/// Closed-form coefficients as printed for each family.
pub fn scal_closed_form(family: FibrationFamily) -> ScalPoly {
    let n = family.n() as i64;
    match family {
        FibrationFamily::Su(_) => {
            ScalPoly::ints(n * n * (n + 1) - 2 * n, 4 * n * (n + 1), n * (1 - n), 4 * (n + 1))
        }
        FibrationFamily::SoOdd(_) => ScalPoly::ints(
            5 * n * n * n - 7 * n * n + 2 * n,
            8 * n * n - 4 * n,
            -2 * n * n + 2 * n,
            4 * (2 * n - 1),
        ),
        FibrationFamily::Sp(_) => ScalPoly::ints(
            5 * n * n * n + 9 * n * n - 14 * n,
            24 * n * n * n + 48 * n * n + 24 * n,
            -2 * n * n * n + 2 * n,
            24 * (n + 1),
        ),
        FibrationFamily::SoEven(_) => ScalPoly::ints(
            5 * n * n + 2 * n,
            24 * n * n - 24 * n,
            -2 * n * n + 4 * n,
            24,
        ),
        FibrationFamily::G2 => ScalPoly::ints(2, 12, -2, 3),
    }
}

/// Scalar curvature of the normal metric on `G/T`: `dim(G/T)/4 + rank/2`.
pub fn normal_scal(fib: &FibrationData) -> Q {
    Q::new((fib.m_total as i64).into(), 4.into()) + Q::new((fib.system.family.rank() as i64).into(), 2.into())
}
