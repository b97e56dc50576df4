//! Root systems `A_n`, `B_n`, `C_n`, `D_n` and `G2` with the Cartan-Killing
//! normalised inner product `<theta, theta> = 1/h`, `h` the dual Coxeter
//! number.
//!
//! Classical roots live in the usual ambient coordinates `lambda_1, ...`.
//! `G2` roots are written in the basis of simple roots `alpha_1` (long) and
//! `alpha_2` (short).

use std::collections::HashSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{fmt_q, q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    A,
    B,
    C,
    D,
    G2,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyKind::A => "A",
            FamilyKind::B => "B",
            FamilyKind::C => "C",
            FamilyKind::D => "D",
            FamilyKind::G2 => "G2",
        };
        f.write_str(s)
    }
}

/// A validated (type, rank) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilyTag {
    kind: FamilyKind,
    rank: usize,
}

impl FamilyTag {
    pub fn new(kind: FamilyKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            FamilyKind::A => rank >= 1,
            FamilyKind::B => rank >= 2,
            FamilyKind::C => rank >= 3,
            FamilyKind::D => rank >= 4,
            FamilyKind::G2 => rank == 2,
        };
        if !ok {
            let rule = match kind {
                FamilyKind::A => "A_n requires n >= 1",
                FamilyKind::B => "B_n requires n >= 2",
                FamilyKind::C => "C_n requires n >= 3",
                FamilyKind::D => "D_n requires n >= 4",
                FamilyKind::G2 => "G2 has rank 2",
            };
            return Err(Error::InvalidFamily(format!("{rule}, got rank {rank}")));
        }
        Ok(FamilyTag { kind, rank })
    }

    pub fn g2() -> Self {
        FamilyTag {
            kind: FamilyKind::G2,
            rank: 2,
        }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dual Coxeter number.
    pub fn dual_coxeter(&self) -> i64 {
        let n = self.rank as i64;
        match self.kind {
            FamilyKind::A => n + 1,
            FamilyKind::B => 2 * n - 1,
            FamilyKind::C => n + 1,
            FamilyKind::D => 2 * n - 2,
            FamilyKind::G2 => 4,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            FamilyKind::A => n * (n + 1) / 2,
            FamilyKind::B | FamilyKind::C => n * n,
            FamilyKind::D => n * (n - 1),
            FamilyKind::G2 => 6,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::G2 => write!(f, "G2"),
            k => write!(f, "{}{}", k, self.rank),
        }
    }
}

/// Exact coordinate vector; used for roots and weights alike.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    pub coords: Vec<Q>,
}

impl RootVector {
    pub fn new(coords: Vec<Q>) -> Self {
        RootVector { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RootVector {
            coords: v.iter().map(|&x| qi(x)).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        RootVector {
            coords: vec![Q::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &RootVector) -> RootVector {
        RootVector {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &RootVector) -> RootVector {
        RootVector {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Cartan-Killing pairing on the ambient coordinate space.
#[derive(Debug, Clone, PartialEq)]
pub struct CkForm {
    /// `c` with `<u,v> = c * dot(u,v)` for the classical types; `None` for G2.
    pub scale: Option<Q>,
    pub dual_coxeter: i64,
    /// Ambient Gram matrix.
    pub gram: Matrix,
}

impl CkForm {
    fn scalar(c: Q, dim: usize, h: i64) -> Self {
        let mut gram = linalg::identity(dim);
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = c.clone();
        }
        CkForm {
            scale: Some(c),
            dual_coxeter: h,
            gram,
        }
    }
}

pub fn ck_inner(ck: &CkForm, u: &RootVector, v: &RootVector) -> Result<Q> {
    let n = ck.gram.len();
    if u.dim() != n || v.dim() != n {
        return Err(Error::InvalidConfig(format!(
            "dimension mismatch: {} and {} in a {}-dimensional space",
            u.dim(),
            v.dim(),
            n
        )));
    }
    if let Some(c) = &ck.scale {
        let dot = u
            .coords
            .iter()
            .zip(&v.coords)
            .fold(Q::zero(), |acc, (a, b)| acc + a * b);
        return Ok(dot * c);
    }
    Ok(linalg::bilinear(&ck.gram, &u.coords, &v.coords))
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub family: FamilyTag,
    pub positive: Vec<RootVector>,
    pub simple: Vec<RootVector>,
    pub ck: CkForm,
    all: HashSet<RootVector>,
}

fn unit(dim: usize, i: usize, s: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = s;
    v
}

fn pm(dim: usize, i: usize, j: usize, sj: i64) -> RootVector {
    let mut v = unit(dim, i, 1);
    v[j] = sj;
    RootVector::from_ints(&v)
}

pub fn build_root_system(family: FamilyTag) -> RootSystem {
    let n = family.rank;
    let h = family.dual_coxeter();
    let (positive, simple, ck) = match family.kind {
        FamilyKind::A => {
            let dim = n + 1;
            let mut pos = Vec::new();
            for i in 0..dim {
                for j in (i + 1)..dim {
                    pos.push(pm(dim, i, j, -1));
                }
            }
            let simple = (0..n).map(|i| pm(dim, i, i + 1, -1)).collect();
            (pos, simple, CkForm::scalar(q(1, 2 * (n as i64 + 1)), dim, h))
        }
        FamilyKind::B | FamilyKind::C | FamilyKind::D => {
            let mut pos = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    pos.push(pm(n, i, j, -1));
                    pos.push(pm(n, i, j, 1));
                }
            }
            let mut simple: Vec<RootVector> = (0..n - 1).map(|i| pm(n, i, i + 1, -1)).collect();
            let ni = n as i64;
            let c = match family.kind {
                FamilyKind::B => {
                    pos.extend((0..n).map(|k| RootVector::from_ints(&unit(n, k, 1))));
                    simple.push(RootVector::from_ints(&unit(n, n - 1, 1)));
                    q(1, 2 * (2 * ni - 1))
                }
                FamilyKind::C => {
                    pos.extend((0..n).map(|k| RootVector::from_ints(&unit(n, k, 2))));
                    simple.push(RootVector::from_ints(&unit(n, n - 1, 2)));
                    q(1, 4 * (ni + 1))
                }
                _ => {
                    simple.push(pm(n, n - 2, n - 1, 1));
                    q(1, 4 * (ni - 1))
                }
            };
            (pos, simple, CkForm::scalar(c, n, h))
        }
        FamilyKind::G2 => {
            let pos = [[1, 0], [0, 1], [1, 1], [1, 2], [1, 3], [2, 3]]
                .iter()
                .map(|v| RootVector::from_ints(v))
                .collect();
            let simple = vec![RootVector::from_ints(&[1, 0]), RootVector::from_ints(&[0, 1])];
            let gram = vec![vec![q(1, 4), q(-1, 8)], vec![q(-1, 8), q(1, 12)]];
            let ck = CkForm {
                scale: None,
                dual_coxeter: h,
                gram,
            };
            (pos, simple, ck)
        }
    };
    let mut all = HashSet::new();
    for r in &positive {
        all.insert(r.clone());
        all.insert(r.neg());
    }
    RootSystem {
        family,
        positive,
        simple,
        ck,
        all,
    }
}

impl RootSystem {
    pub fn dim(&self) -> usize {
        self.ck.gram.len()
    }

    pub fn inner(&self, u: &RootVector, v: &RootVector) -> Q {
        ck_inner(&self.ck, u, v).expect("vectors of the ambient dimension")
    }

    pub fn norm_sq(&self, u: &RootVector) -> Q {
        self.inner(u, u)
    }

    pub fn is_root(&self, v: &RootVector) -> bool {
        self.all.contains(v)
    }

    pub fn is_positive_root(&self, v: &RootVector) -> bool {
        self.is_root(v) && self.positive.contains(v)
    }

    /// Highest root, the positive root of maximal height.
    pub fn highest_root(&self) -> RootVector {
        let coords = |r: &RootVector| -> Q {
            self.simple_coords(r)
                .iter()
                .fold(Q::zero(), |a, b| a + b)
        };
        self.positive
            .iter()
            .max_by(|a, b| coords(a).cmp(&coords(b)))
            .cloned()
            .expect("nonempty root system")
    }

    /// Half-sum of positive roots.
    pub fn rho(&self) -> RootVector {
        let sum = self
            .positive
            .iter()
            .fold(RootVector::zero(self.dim()), |acc, r| acc.add(r));
        sum.scale(&q(1, 2))
    }

    /// Gram matrix of the simple roots.
    pub fn simple_gram(&self) -> Matrix {
        self.simple
            .iter()
            .map(|a| self.simple.iter().map(|b| self.inner(a, b)).collect())
            .collect()
    }

    /// Coordinates of `v` (assumed in the span of the roots) in the simple-root basis.
    pub fn simple_coords(&self, v: &RootVector) -> Vec<Q> {
        let g = self.simple_gram();
        let rhs: Vec<Q> = self.simple.iter().map(|a| self.inner(a, v)).collect();
        linalg::solve(&g, &rhs).expect("simple roots are independent")
    }

    /// `sum_i p_i alpha_i`.
    pub fn from_simple_coords(&self, p: &[Q]) -> RootVector {
        self.simple
            .iter()
            .zip(p)
            .fold(RootVector::zero(self.dim()), |acc, (a, c)| acc.add(&a.scale(c)))
    }

    /// Fundamental weights `omega_i` with `2<omega_i, alpha_j>/<alpha_j, alpha_j> = delta_ij`.
    pub fn fundamental_weights(&self) -> Vec<RootVector> {
        let g = self.simple_gram();
        let inv = linalg::inverse(&g).expect("simple roots are independent");
        let l = self.simple.len();
        (0..l)
            .map(|i| {
                let half = &g[i][i] / qi(2);
                let coeffs: Vec<Q> = (0..l).map(|k| &half * &inv[i][k]).collect();
                self.from_simple_coords(&coeffs)
            })
            .collect()
    }

    /// `2<v, alpha>/<alpha, alpha>`.
    pub fn coroot_pairing(&self, v: &RootVector, alpha: &RootVector) -> Q {
        qi(2) * self.inner(v, alpha) / self.norm_sq(alpha)
    }

    pub fn is_dominant(&self, v: &RootVector) -> bool {
        self.simple.iter().all(|a| !self.inner(v, a).is_negative())
    }

    /// Cartan integers `a_ij = 2<alpha_i, alpha_j>/<alpha_j, alpha_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|a| {
                self.simple
                    .iter()
                    .map(|b| {
                        let v = self.coroot_pairing(a, b);
                        debug_assert!(v.is_integer());
                        i64::try_from(v.to_integer()).expect("small Cartan integer")
                    })
                    .collect()
            })
            .collect()
    }
}

/// The `alpha`-string through `beta`: `beta - p alpha, ..., beta + q alpha`.
pub fn root_string(rs: &RootSystem, alpha: &RootVector, beta: &RootVector) -> Result<(u32, u32)> {
    if alpha == beta || *alpha == beta.neg() {
        return Err(Error::InvalidConfig(format!(
            "root string undefined for beta = +-alpha ({alpha})"
        )));
    }
    if !rs.is_root(alpha) || !rs.is_root(beta) {
        return Err(Error::InvalidConfig(format!("{alpha} or {beta} is not a root")));
    }
    let mut p = 0;
    let mut cur = beta.sub(alpha);
    while rs.is_root(&cur) {
        p += 1;
        cur = cur.sub(alpha);
    }
    let mut qn = 0;
    let mut cur = beta.add(alpha);
    while rs.is_root(&cur) {
        qn += 1;
        cur = cur.add(alpha);
    }
    Ok((p, qn))
}

/// `N_{alpha,beta}^2 = q (p + 1) <alpha, alpha> / 2`, zero when `alpha + beta` is not a root.
pub fn structure_constant_sq(rs: &RootSystem, alpha: &RootVector, beta: &RootVector) -> Q {
    let sum = alpha.add(beta);
    if !rs.is_root(&sum) {
        return Q::zero();
    }
    let (p, qn) = root_string(rs, alpha, beta).expect("alpha + beta is a root");
    qi(qn as i64) * qi(p as i64 + 1) * rs.norm_sq(alpha) / qi(2)
}

/// True when the squared length equals `1/h` for the highest root.
pub fn normalization_holds(rs: &RootSystem) -> bool {
    let theta = rs.highest_root();
    rs.norm_sq(&theta) * qi(rs.ck.dual_coxeter) == Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(kind: FamilyKind, n: usize) -> RootSystem {
        build_root_system(FamilyTag::new(kind, n).unwrap())
    }

    fn all_tags() -> Vec<FamilyTag> {
        let mut v = vec![FamilyTag::g2()];
        for n in 1..=7 {
            v.push(FamilyTag::new(FamilyKind::A, n).unwrap());
        }
        for n in 2..=7 {
            v.push(FamilyTag::new(FamilyKind::B, n).unwrap());
        }
        for n in 3..=7 {
            v.push(FamilyTag::new(FamilyKind::C, n).unwrap());
        }
        for n in 4..=7 {
            v.push(FamilyTag::new(FamilyKind::D, n).unwrap());
        }
        v
    }

    #[test]
    fn rank_constraints() {
        assert!(FamilyTag::new(FamilyKind::A, 0).is_err());
        assert!(FamilyTag::new(FamilyKind::B, 1).is_err());
        assert!(FamilyTag::new(FamilyKind::C, 2).is_err());
        let e = FamilyTag::new(FamilyKind::D, 3).unwrap_err();
        assert!(e.to_string().contains("n >= 4"));
        assert!(FamilyTag::new(FamilyKind::G2, 3).is_err());
    }

    #[test]
    fn positive_root_counts() {
        for tag in all_tags() {
            let rs = build_root_system(tag);
            assert_eq!(rs.positive.len(), tag.positive_root_count(), "{tag}");
            assert_eq!(rs.simple.len(), tag.rank());
        }
        assert_eq!(sys(FamilyKind::A, 2).positive.len(), 3);
    }

    #[test]
    fn b2_and_g2_roots() {
        let b2 = sys(FamilyKind::B, 2);
        let mut got = b2.positive.clone();
        got.sort();
        let mut want = vec![
            RootVector::from_ints(&[1, -1]),
            RootVector::from_ints(&[1, 1]),
            RootVector::from_ints(&[1, 0]),
            RootVector::from_ints(&[0, 1]),
        ];
        want.sort();
        assert_eq!(got, want);
        let g2 = build_root_system(FamilyTag::g2());
        assert!(g2.is_root(&RootVector::from_ints(&[2, 3])));
        assert!(!g2.is_root(&RootVector::from_ints(&[1, 4])));
    }

    #[test]
    fn highest_root_normalization() {
        for tag in all_tags() {
            assert!(normalization_holds(&build_root_system(tag)), "{tag}");
        }
    }

    #[test]
    fn inner_product_examples() {
        for n in 1..=6 {
            let rs = sys(FamilyKind::A, n);
            let a = &rs.positive[0];
            assert_eq!(rs.norm_sq(a), q(1, n as i64 + 1));
            assert_eq!(rs.inner(a, &RootVector::zero(n + 1)), Q::zero());
        }
        let c3 = sys(FamilyKind::C, 3);
        assert_eq!(c3.norm_sq(&RootVector::from_ints(&[2, 0, 0])), q(1, 4));
        let a2 = sys(FamilyKind::A, 2);
        assert!(ck_inner(&a2.ck, &RootVector::from_ints(&[1, 0]), &a2.positive[0]).is_err());
    }

    #[test]
    fn root_string_examples() {
        let a2 = sys(FamilyKind::A, 2);
        let s = root_string(
            &a2,
            &RootVector::from_ints(&[1, -1, 0]),
            &RootVector::from_ints(&[0, 1, -1]),
        )
        .unwrap();
        assert_eq!(s, (0, 1));
        let g2 = build_root_system(FamilyTag::g2());
        let s = root_string(&g2, &RootVector::from_ints(&[0, 1]), &RootVector::from_ints(&[1, 0]));
        assert_eq!(s.unwrap(), (0, 3));
        let b2 = sys(FamilyKind::B, 2);
        let s = root_string(&b2, &RootVector::from_ints(&[0, 1]), &RootVector::from_ints(&[1, -1]));
        assert_eq!(s.unwrap(), (0, 2));
        let a = RootVector::from_ints(&[0, 1]);
        assert!(root_string(&b2, &a, &a.neg()).is_err());
    }

    #[test]
    fn structure_constant_examples() {
        for n in 2..=6 {
            let rs = sys(FamilyKind::A, n);
            let mut a = vec![0; n + 1];
            a[0] = 1;
            a[1] = -1;
            let mut b = vec![0; n + 1];
            b[1] = 1;
            b[2] = -1;
            let v = structure_constant_sq(&rs, &RootVector::from_ints(&a), &RootVector::from_ints(&b));
            assert_eq!(v, q(1, 2 * (n as i64 + 1)));
        }
        let g2 = build_root_system(FamilyTag::g2());
        let a2 = RootVector::from_ints(&[0, 1]);
        let b = RootVector::from_ints(&[1, 1]);
        assert_eq!(root_string(&g2, &a2, &b).unwrap(), (1, 2));
        // q (p + 1) |alpha_2|^2 / 2 = 2 * 2 * (1/12) / 2
        assert_eq!(structure_constant_sq(&g2, &a2, &b), q(1, 6));
        let not_sum = structure_constant_sq(&g2, &RootVector::from_ints(&[1, 0]), &RootVector::from_ints(&[1, 1]));
        assert_eq!(not_sum, Q::zero());
    }

    #[test]
    fn string_identity_and_symmetry_exhaustive() {
        for tag in all_tags().into_iter().filter(|t| t.rank() <= 4) {
            let rs = build_root_system(tag);
            let roots: Vec<RootVector> = rs
                .positive
                .iter()
                .flat_map(|r| [r.clone(), r.neg()])
                .collect();
            for a in &roots {
                for b in &roots {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let (p, qn) = root_string(&rs, a, b).unwrap();
                    assert_eq!(qi(p as i64 - qn as i64), rs.coroot_pairing(b, a), "{tag} {a} {b}");
                    assert_eq!(structure_constant_sq(&rs, a, b), structure_constant_sq(&rs, b, a));
                }
            }
        }
    }

    #[test]
    fn simple_gram_positive_definite() {
        for tag in all_tags() {
            let rs = build_root_system(tag);
            assert!(linalg::is_positive_definite(&rs.simple_gram()), "{tag}");
        }
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for tag in all_tags() {
            let rs = build_root_system(tag);
            let w = rs.fundamental_weights();
            for (i, wi) in w.iter().enumerate() {
                for (j, aj) in rs.simple.iter().enumerate() {
                    let want = if i == j { Q::one() } else { Q::zero() };
                    assert_eq!(rs.coroot_pairing(wi, aj), want, "{tag}");
                }
            }
        }
    }

    #[test]
    fn g2_highest_root_is_fundamental() {
        let g2 = build_root_system(FamilyTag::g2());
        let w = g2.fundamental_weights();
        assert_eq!(w[0], RootVector::from_ints(&[2, 3]));
        assert_eq!(w[1], RootVector::from_ints(&[1, 2]));
        assert_eq!(g2.highest_root(), RootVector::from_ints(&[2, 3]));
    }
}
