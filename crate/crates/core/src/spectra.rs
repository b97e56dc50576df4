//! Laplacian spectra of the total spaces `G/T` (class-one representations),
//! of the symmetric bases `G/H` (spherical representations) and of the
//! fibers `H/T`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fibration::{FibrationData, FibrationFamily};
use crate::lattice::QuadForm;
use crate::linalg::Matrix;
use crate::rational::{binomial, q, qi, Q};
use crate::rootsys::{build_root_system, FamilyKind, FamilyTag, RootSystem, RootVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Total,
    Base,
    Fiber,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Total => "total",
            Origin::Base => "base",
            Origin::Fiber => "fiber",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub value: Q,
    /// Multiplicity; `1` when `mult_known` is false.
    pub mult: BigInt,
    pub mult_known: bool,
    pub origin: Origin,
    /// Coordinates of the weights producing this value.
    pub weights: Vec<Vec<i64>>,
    /// Printable form of `weights`.
    pub labels: Vec<String>,
}

fn fmt_tuple(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

/// Sorts by value and merges equal values, summing known multiplicities.
fn merge(raw: Vec<(Q, BigInt, Vec<i64>)>, prefix: &str, origin: Origin, mult_known: bool) -> Vec<SpectrumEntry> {
    let mut map: BTreeMap<Q, (BigInt, Vec<Vec<i64>>)> = BTreeMap::new();
    for (v, m, w) in raw {
        let e = map.entry(v).or_insert_with(|| (BigInt::zero(), Vec::new()));
        e.0 += m;
        e.1.push(w);
    }
    map.into_iter()
        .map(|(value, (m, weights))| SpectrumEntry {
            value,
            mult: if mult_known { m } else { BigInt::one() },
            mult_known,
            origin,
            labels: weights.iter().map(|w| format!("{prefix}={}", fmt_tuple(w))).collect(),
            weights,
        })
        .collect()
}

/// Class-one eigenvalue polynomial `mu(P) = k (P^T Q P + l.P)` together with
/// the dominance rows `R P >= 0`, in the labelling used by the printed formulas.
#[derive(Debug, Clone)]
pub struct YamaguchiForm {
    pub prefactor: Q,
    pub quad: Matrix,
    pub linear: Vec<Q>,
    pub rows: Vec<Vec<i64>>,
}

impl YamaguchiForm {
    pub fn eval(&self, p: &[i64]) -> Q {
        let form = QuadForm::new(self.quad.clone(), self.linear.clone());
        &self.prefactor * form.eval(p)
    }

    pub fn admissible(&self, p: &[i64]) -> bool {
        p.iter().all(|&x| x >= 1)
            && self
                .rows
                .iter()
                .all(|r| r.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() >= 0)
    }
}

/// Dominance rows `row_i . P = <sum_j p_j alpha_j, alpha_i^vee>`.
fn cartan_rows(rs: &RootSystem, perm: &[usize]) -> Vec<Vec<i64>> {
    let a = rs.cartan_matrix();
    let l = perm.len();
    (0..l)
        .map(|i| (0..l).map(|j| a[perm[j]][perm[i]]).collect())
        .collect()
}

fn sym(n: usize) -> Matrix {
    vec![vec![Q::zero(); n]; n]
}

fn set_off(m: &mut Matrix, i: usize, j: usize, v: Q) {
    m[i][j] = v.clone();
    m[j][i] = v;
}

/// The printed class-one polynomial for `family`. The `D_n` prefactor is
/// `1/(2(n-1))` and the `B_n` dominance row `n-1` is `-p_{n-2} + 2p_{n-1} - p_n`;
/// `G2` uses the printed labelling with `alpha_1` short.
pub fn yamaguchi_form(family: FamilyTag) -> YamaguchiForm {
    let n = family.rank();
    let ni = n as i64;
    let rs = build_root_system(family);
    let ident: Vec<usize> = (0..n).collect();
    let half = q(-1, 2);
    match family.kind() {
        FamilyKind::A => {
            let mut m = sym(n);
            for i in 0..n {
                m[i][i] = qi(1);
                if i + 1 < n {
                    set_off(&mut m, i, i + 1, half.clone());
                }
            }
            YamaguchiForm {
                prefactor: q(1, ni + 1),
                quad: m,
                linear: vec![qi(1); n],
                rows: cartan_rows(&rs, &ident),
            }
        }
        FamilyKind::B => {
            let mut m = sym(n);
            let mut lin = vec![qi(2); n];
            for i in 0..n {
                m[i][i] = qi(2);
                if i + 1 < n {
                    set_off(&mut m, i, i + 1, qi(-1));
                }
            }
            m[n - 1][n - 1] = qi(1);
            lin[n - 1] = qi(1);
            YamaguchiForm {
                prefactor: q(1, 4 * ni - 2),
                quad: m,
                linear: lin,
                rows: cartan_rows(&rs, &ident),
            }
        }
        FamilyKind::C => {
            let mut m = sym(n);
            let mut lin = vec![qi(1); n];
            for i in 0..n {
                m[i][i] = qi(1);
                if i + 1 < n {
                    set_off(&mut m, i, i + 1, half.clone());
                }
            }
            m[n - 1][n - 1] = qi(2);
            lin[n - 1] = qi(2);
            YamaguchiForm {
                prefactor: q(1, 2 * (ni + 1)),
                quad: m,
                linear: lin,
                rows: cartan_rows(&rs, &ident),
            }
        }
        FamilyKind::D => {
            let mut m = sym(n);
            for i in 0..n {
                m[i][i] = qi(1);
                if i + 2 < n {
                    set_off(&mut m, i, i + 1, half.clone());
                }
            }
            set_off(&mut m, n - 3, n - 2, half.clone());
            set_off(&mut m, n - 3, n - 1, half.clone());
            YamaguchiForm {
                prefactor: q(1, 2 * (ni - 1)),
                quad: m,
                linear: vec![qi(1); n],
                rows: cartan_rows(&rs, &ident),
            }
        }
        FamilyKind::G2 => YamaguchiForm {
            prefactor: q(1, 12),
            quad: vec![vec![qi(1), q(-3, 2)], vec![q(-3, 2), qi(3)]],
            linear: vec![qi(1), qi(3)],
            rows: cartan_rows(&rs, &[1, 0]),
        },
    }
}

/// The `D_n` prefactor exactly as printed.
pub fn printed_d_prefactor(n: usize) -> Q {
    q(1, 2 * n as i64 - 1)
}

/// `P_0 = (1, 2, ..., 2, 1)` for `C_n` and `(1, 2, ..., 2, 1, 1)` for `D_n`.
pub fn stated_first_weight(family: FamilyTag) -> Vec<i64> {
    let n = family.rank();
    match family.kind() {
        FamilyKind::A | FamilyKind::B => vec![1; n],
        FamilyKind::C => {
            let mut v = vec![2; n];
            v[0] = 1;
            v[n - 1] = 1;
            v
        }
        FamilyKind::D => {
            let mut v = vec![2; n];
            v[0] = 1;
            v[n - 2] = 1;
            v[n - 1] = 1;
            v
        }
        FamilyKind::G2 => vec![2, 1],
    }
}

/// First eigenvalue as stated alongside each printed polynomial.
pub fn stated_mu1(family: FamilyTag) -> Q {
    let n = family.rank() as i64;
    match family.kind() {
        FamilyKind::A | FamilyKind::D => qi(1),
        FamilyKind::B => q(n, 2 * n - 1),
        FamilyKind::C => q(4 * n - 1, 4 * (n + 1)),
        FamilyKind::G2 => q(1, 2),
    }
}

/// Total-space eigenvalues `mu(P) <= cutoff` from the printed class-one polynomial.
/// Multiplicities are not computed: `mult` is 1 and `mult_known` is false.
pub fn flag_spectrum(family: FamilyTag, cutoff: &Q) -> Result<Vec<SpectrumEntry>> {
    if !cutoff.is_positive() {
        return Err(Error::InvalidConfig("cutoff must be positive".into()));
    }
    let y = yamaguchi_form(family);
    let quad: Matrix = y
        .quad
        .iter()
        .map(|r| r.iter().map(|v| v * &y.prefactor).collect())
        .collect();
    let lin: Vec<Q> = y.linear.iter().map(|v| v * &y.prefactor).collect();
    let form = QuadForm::new(quad, lin);
    let pts = form.enumerate(cutoff, &vec![1; family.rank()])?;
    let raw = pts
        .into_iter()
        .filter(|p| y.admissible(p))
        .map(|p| (form.eval(&p), BigInt::one(), p))
        .collect();
    Ok(merge(raw, "P", Origin::Total, false))
}

/// Casimir eigenvalues `<L, L + 2 rho>` of the nonzero dominant elements
/// `L = sum p_i alpha_i` of the root lattice spanned by `simple`, under the
/// ambient inner product of `rs`. For the full simple system this is the
/// class-one spectrum of `G/T`; for a subsystem it is that of `H/T`.
pub fn class_one_casimir(rs: &RootSystem, simple: &[RootVector], cutoff: &Q, origin: Origin) -> Result<Vec<SpectrumEntry>> {
    let l = simple.len();
    let gram: Matrix = simple
        .iter()
        .map(|a| simple.iter().map(|b| rs.inner(a, b)).collect())
        .collect();
    // 2 <alpha_i, rho_H> = |alpha_i|^2 for simple roots.
    let lin: Vec<Q> = (0..l).map(|i| gram[i][i].clone()).collect();
    let form = QuadForm::new(gram.clone(), lin);
    let pts = form.enumerate(cutoff, &vec![0; l])?;
    let raw = pts
        .into_iter()
        .filter(|p| p.iter().any(|&x| x != 0))
        .filter(|p| {
            (0..l).all(|i| {
                let s: Q = (0..l).fold(Q::zero(), |acc, j| acc + &gram[i][j] * Q::from_integer(p[j].into()));
                !s.is_negative()
            })
        })
        .map(|p| (form.eval(&p), BigInt::one(), p))
        .collect();
    Ok(merge(raw, "P", origin, false))
}

/// `prod_{alpha > 0} <L + rho, alpha> / <rho, alpha>`.
pub fn weyl_dim(rs: &RootSystem, lambda: &RootVector) -> Result<BigInt> {
    if !rs.is_dominant(lambda) {
        return Err(Error::InvalidConfig(format!("{lambda} is not dominant")));
    }
    let rho = rs.rho();
    let lr = lambda.add(&rho);
    let mut acc = Q::one();
    for a in &rs.positive {
        acc *= rs.inner(&lr, a) / rs.inner(&rho, a);
    }
    if !acc.is_integer() {
        return Err(Error::Inconsistent(format!("non-integral Weyl dimension for {lambda}")));
    }
    Ok(acc.to_integer())
}

/// Casimir eigenvalue `<L, L + 2 rho>`.
pub fn casimir(rs: &RootSystem, lambda: &RootVector) -> Q {
    let two_rho = rs.rho().scale(&qi(2));
    rs.inner(lambda, &lambda.add(&two_rho))
}

/// Generators of the spherical highest weights of `(G, H)`.
pub fn spherical_basis(family: FibrationFamily, rs: &RootSystem) -> Vec<RootVector> {
    let w = rs.fundamental_weights();
    let n = family.n();
    let two = qi(2);
    match family {
        FibrationFamily::Su(_) => vec![w[0].add(&w[n - 1])],
        FibrationFamily::SoOdd(_) => vec![w[0].clone()],
        FibrationFamily::Sp(_) => w.iter().map(|x| x.scale(&two)).collect(),
        FibrationFamily::SoEven(_) => {
            // omega_2, omega_4, ... up to omega_{n-2} (n even) or omega_{n-3} (n odd)
            let mut b: Vec<RootVector> = (2..=n - 2).step_by(2).map(|l| w[l - 1].clone()).collect();
            if n % 2 == 0 {
                b.push(w[n - 1].scale(&two));
            } else {
                b.push(w[n - 2].add(&w[n - 1]));
            }
            b
        }
        FibrationFamily::G2 => vec![w[0].scale(&two), w[1].scale(&two)],
    }
}

/// Spectrum of the symmetric base `G/H` up to `cutoff`, with multiplicities
/// from the Weyl dimension formula.
pub fn base_spectrum(family: FibrationFamily, cutoff: &Q) -> Result<Vec<SpectrumEntry>> {
    if !cutoff.is_positive() {
        return Err(Error::InvalidConfig("cutoff must be positive".into()));
    }
    let rs = build_root_system(family.tag()?);
    let basis = spherical_basis(family, &rs);
    let k = basis.len();
    let rho = rs.rho();
    let gram: Matrix = basis
        .iter()
        .map(|a| basis.iter().map(|b| rs.inner(a, b)).collect())
        .collect();
    let lin: Vec<Q> = basis.iter().map(|b| qi(2) * rs.inner(b, &rho)).collect();
    let form = QuadForm::new(gram, lin);
    let pts = form.enumerate(cutoff, &vec![0; k])?;
    let mut raw = Vec::new();
    for p in pts.into_iter().filter(|p| p.iter().any(|&x| x != 0)) {
        let lambda = basis
            .iter()
            .zip(&p)
            .fold(RootVector::zero(rs.dim()), |acc, (b, &c)| acc.add(&b.scale(&qi(c))));
        let m = weyl_dim(&rs, &lambda)?;
        raw.push((form.eval(&p), m, p));
    }
    Ok(merge(raw, "k", Origin::Base, true))
}

/// The first `count` distinct base eigenvalues, growing the cutoff as needed.
pub fn first_base_entries(family: FibrationFamily, count: usize) -> Result<Vec<SpectrumEntry>> {
    let mut cutoff = qi(2);
    loop {
        let s = base_spectrum(family, &cutoff)?;
        if s.len() >= count {
            return Ok(s.into_iter().take(count).collect());
        }
        cutoff *= qi(2);
    }
}

/// Spectrum of the fiber `H/T` with the metric induced from the ambient
/// Cartan-Killing form. Multiplicities are not computed.
pub fn fiber_spectrum(fib: &FibrationData, cutoff: &Q) -> Result<Vec<SpectrumEntry>> {
    let simple = fib.vertical_simple_roots();
    class_one_casimir(&fib.system, &simple, cutoff, Origin::Fiber)
}

/// First positive fiber eigenvalue under the ambient form.
pub fn ambient_phi1(fib: &FibrationData) -> Result<Q> {
    let mut cutoff = qi(1);
    loop {
        let s = fiber_spectrum(fib, &cutoff)?;
        if let Some(e) = s.first() {
            return Ok(e.value.clone());
        }
        cutoff *= qi(2);
    }
}

/// Documented first base eigenvalue `beta_1`.
pub fn stated_beta1(family: FibrationFamily) -> Q {
    match family {
        FibrationFamily::SoOdd(n) => q(n as i64, 2 * n as i64 - 1),
        FibrationFamily::G2 => q(7, 6),
        _ => qi(1),
    }
}

/// `k(k+n)/(n+1)` with multiplicity `((2k+n)/n) C(k+n-1, k)^2`.
pub fn cpn_closed_form(n: usize, k: usize) -> (Q, BigInt) {
    let (n, k) = (n as i64, k as i64);
    let c = binomial(k + n - 1, k);
    let m = BigInt::from(2 * k + n) * &c * &c / BigInt::from(n);
    (q(k * (k + n), n + 1), m)
}

/// `k(k+2n-1)/(2(2n-1))` with multiplicity `C(2n+k, k) - C(2n+k-2, k-2)`.
pub fn sphere_closed_form(n: usize, k: usize) -> (Q, BigInt) {
    let (n, k) = (n as i64, k as i64);
    let m = binomial(2 * n + k, k) - binomial(2 * n + k - 2, k - 2);
    (q(k * (k + 2 * n - 1), 2 * (2 * n - 1)), m)
}

/// `(9r + 6r^2 + 5s + 6rs + 2s^2)/6`.
pub fn g2_base_closed_form(r: i64, s: i64) -> Q {
    q(9 * r + 6 * r * r + 5 * s + 6 * r * s + 2 * s * s, 6)
}
