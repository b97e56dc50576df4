//! Spectral algebra of the canonical variation `g_t`.

use num_traits::{Signed, Zero};

use crate::curvature::ScalPoly;
use crate::error::{Error, Result};
use crate::fibration::{FibrationData, FibrationFamily};
use crate::poly::Poly;
use crate::rational::{q, qi, Q};
use crate::spectra::{base_spectrum, SpectrumEntry};

/// `lambda(t) = mu + (1/t^2 - 1) phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariationEigenvalue {
    pub mu: Q,
    pub phi: Q,
}

impl VariationEigenvalue {
    pub fn new(mu: Q, phi: Q) -> Self {
        VariationEigenvalue { mu, phi }
    }

    pub fn is_constant(&self) -> bool {
        self.phi.is_zero()
    }
}

pub fn eigen_at(v: &VariationEigenvalue, t: &Q) -> Result<Q> {
    if !t.is_positive() {
        return Err(Error::InvalidConfig("t must be positive".into()));
    }
    Ok(&v.mu + (qi(1) / (t * t) - qi(1)) * &v.phi)
}

/// Eigenvalues of `Delta_t` independent of `t`: the base spectrum.
pub fn constant_eigenvalues(fib: &FibrationData, cutoff: &Q) -> Result<Vec<SpectrumEntry>> {
    base_spectrum(fib.family, cutoff)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda1Bounds {
    pub lower: Q,
    pub upper: Q,
    pub exact: Option<Q>,
}

/// `mu_1 <= lambda_1(t) <= beta_1` with the documented first eigenvalues.
pub fn lambda1_bounds(fib: &FibrationData) -> Lambda1Bounds {
    let n = fib.family.n() as i64;
    let (lower, upper) = match fib.family {
        FibrationFamily::Su(_) | FibrationFamily::SoEven(_) => (qi(1), qi(1)),
        FibrationFamily::SoOdd(_) => (q(n, 2 * n - 1), q(n, 2 * n - 1)),
        FibrationFamily::Sp(_) => (q(4 * n - 1, 4 * (n + 1)), qi(1)),
        FibrationFamily::G2 => (q(1, 2), q(7, 6)),
    };
    let exact = (lower == upper).then(|| lower.clone());
    Lambda1Bounds { lower, upper, exact }
}

/// `scal(t) / (m - 1)`.
pub fn normalized_scal(fib: &FibrationData, poly: &ScalPoly) -> ScalPoly {
    let m1 = qi(fib.m_total as i64 - 1);
    ScalPoly::new(poly.a.clone(), poly.c.clone(), poly.e.clone(), &poly.d * m1)
}

/// Cleared-denominator form of `normalized(u) - mu1 - (1/u - 1) phi1`,
/// multiplied by `D u > 0`:
/// `E u^2 + (C - D (mu1 - phi1)) u + (A - D phi1)`.
pub fn lemma_polynomial(normalized: &ScalPoly, mu1: &Q, phi1: &Q) -> Poly {
    let d = &normalized.d;
    Poly::new(vec![
        &normalized.a - d * phi1,
        &normalized.c - d * (mu1 - phi1),
        normalized.e.clone(),
    ])
}

/// `normalized_scal(t) < mu1 + (1/t^2 - 1) phi1` for every `t` in `(0, 1]`,
/// decided by Sturm root counting.
pub fn lemma_holds(normalized: &ScalPoly, mu1: &Q, phi1: &Q) -> bool {
    lemma_polynomial(normalized, mu1, phi1).negative_on(&Q::zero(), &qi(1))
}

/// Smallest candidate for `lambda_1(t)`: the first base eigenvalue, or a
/// combination `mu_k + (1/t^2 - 1) phi_j` with `k, j >= 1`.
pub fn lambda1_candidate(t: &Q, beta1: &Q, total: &[Q], fiber: &[Q]) -> Q {
    let s = qi(1) / (t * t) - qi(1);
    let mut best = beta1.clone();
    for mu in total {
        for phi in fiber {
            let v = mu + &s * phi;
            if v < best {
                best = v;
            }
        }
    }
    best
}
