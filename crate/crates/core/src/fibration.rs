//! The five homogeneous fibrations `H/T -> G/T -> G/H` over symmetric bases.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootsys::{build_root_system, FamilyKind, FamilyTag, RootSystem, RootVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FibrationFamily {
    /// `SU(n+1)/T^n -> CP^n`.
    Su(usize),
    /// `SO(2n+1)/T^n -> S^{2n}`.
    SoOdd(usize),
    /// `Sp(n)/T^n -> Sp(n)/U(n)`.
    Sp(usize),
    /// `SO(2n)/T^n -> SO(2n)/U(n)`.
    SoEven(usize),
    /// `G2/T -> G2/SO(4)`.
    G2,
}

impl FibrationFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(msg.to_string()));
        match *self {
            FibrationFamily::Su(n) if n < 2 => bad(&format!("SU(n+1)/T^n requires n >= 2, got n = {n}")),
            FibrationFamily::SoOdd(n) if n < 2 || n == 3 => bad(&format!(
                "SO(2n+1)/T^n requires n >= 2 and n != 3, got n = {n}"
            )),
            FibrationFamily::Sp(n) if n < 3 => bad(&format!("Sp(n)/T^n requires n >= 3, got n = {n}")),
            FibrationFamily::SoEven(n) if n < 4 => bad(&format!("SO(2n)/T^n requires n >= 4, got n = {n}")),
            _ => Ok(()),
        }
    }

    /// Rank parameter `n`; 2 for `G2`.
    pub fn n(&self) -> usize {
        match *self {
            FibrationFamily::Su(n)
            | FibrationFamily::SoOdd(n)
            | FibrationFamily::Sp(n)
            | FibrationFamily::SoEven(n) => n,
            FibrationFamily::G2 => 2,
        }
    }

    pub fn tag(&self) -> Result<FamilyTag> {
        self.validate()?;
        match *self {
            FibrationFamily::Su(n) => FamilyTag::new(FamilyKind::A, n),
            FibrationFamily::SoOdd(n) => FamilyTag::new(FamilyKind::B, n),
            FibrationFamily::Sp(n) => FamilyTag::new(FamilyKind::C, n),
            FibrationFamily::SoEven(n) => FamilyTag::new(FamilyKind::D, n),
            FibrationFamily::G2 => Ok(FamilyTag::g2()),
        }
    }

    /// Short command-line name.
    pub fn slug(&self) -> &'static str {
        match self {
            FibrationFamily::Su(_) => "su",
            FibrationFamily::SoOdd(_) => "so-odd",
            FibrationFamily::Sp(_) => "sp",
            FibrationFamily::SoEven(_) => "so-even",
            FibrationFamily::G2 => "g2",
        }
    }

    pub fn total_id(&self) -> String {
        match *self {
            FibrationFamily::Su(n) => format!("SU({})/T^{}", n + 1, n),
            FibrationFamily::SoOdd(n) => format!("SO({})/T^{}", 2 * n + 1, n),
            FibrationFamily::Sp(n) => format!("Sp({n})/T^{n}"),
            FibrationFamily::SoEven(n) => format!("SO({})/T^{}", 2 * n, n),
            FibrationFamily::G2 => "G2/T".to_string(),
        }
    }
}

impl fmt::Display for FibrationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.total_id())
    }
}

#[derive(Debug, Clone)]
pub struct FibrationData {
    pub family: FibrationFamily,
    pub system: RootSystem,
    pub total_roots: Vec<RootVector>,
    pub vertical: Vec<RootVector>,
    pub horizontal: Vec<RootVector>,
    pub m_total: usize,
    pub dim_fiber: usize,
    pub dim_base: usize,
    pub base_id: String,
    pub fiber_id: String,
    /// First positive eigenvalue of the fiber Laplacian.
    pub phi1: Q,
}

fn is_vertical(family: FibrationFamily, r: &RootVector) -> bool {
    let c = &r.coords;
    let nz: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
    match family {
        // lambda_i - lambda_j with i < j <= n: the last coordinate vanishes.
        FibrationFamily::Su(n) => c[n].is_zero(),
        // lambda_i +- lambda_j: exactly two nonzero coordinates.
        FibrationFamily::SoOdd(_) => nz.len() == 2,
        // lambda_i - lambda_j.
        FibrationFamily::Sp(_) | FibrationFamily::SoEven(_) => {
            nz.len() == 2 && (&c[nz[0]] + &c[nz[1]]).is_zero()
        }
        FibrationFamily::G2 => {
            *r == RootVector::from_ints(&[1, 1]) || *r == RootVector::from_ints(&[1, 3])
        }
    }
}

pub fn build_fibration(family: FibrationFamily) -> Result<FibrationData> {
    let tag = family.tag()?;
    let system = build_root_system(tag);
    let total_roots = system.positive.clone();
    let (vertical, horizontal): (Vec<_>, Vec<_>) = total_roots
        .iter()
        .cloned()
        .partition(|r| is_vertical(family, r));
    let (base_id, fiber_id) = match family {
        FibrationFamily::Su(n) => (format!("CP^{n}"), format!("SU({n})/T^{}", n - 1)),
        FibrationFamily::SoOdd(n) => (format!("S^{}", 2 * n), format!("SO({})/T^{n}", 2 * n)),
        FibrationFamily::Sp(n) => (format!("Sp({n})/U({n})"), format!("U({n})/T^{n}")),
        FibrationFamily::SoEven(n) => (format!("SO({})/U({n})", 2 * n), format!("U({n})/T^{n}")),
        FibrationFamily::G2 => ("G2/SO(4)".to_string(), "SO(4)/T^2".to_string()),
    };
    Ok(FibrationData {
        family,
        m_total: 2 * total_roots.len(),
        dim_fiber: 2 * vertical.len(),
        dim_base: 2 * horizontal.len(),
        system,
        total_roots,
        vertical,
        horizontal,
        base_id,
        fiber_id,
        phi1: Q::one(),
    })
}

impl FibrationData {
    pub fn with_phi1(mut self, phi1: Q) -> Self {
        self.phi1 = phi1;
        self
    }

    pub fn is_vertical(&self, r: &RootVector) -> bool {
        let p = if self.system.positive.contains(r) { r.clone() } else { r.neg() };
        self.vertical.contains(&p)
    }

    /// Simple roots of the vertical subsystem: vertical positive roots that
    /// are not the sum of two vertical positive roots.
    pub fn vertical_simple_roots(&self) -> Vec<RootVector> {
        self.vertical
            .iter()
            .filter(|r| {
                !self
                    .vertical
                    .iter()
                    .any(|a| a != *r && self.vertical.contains(&r.sub(a)))
            })
            .cloned()
            .collect()
    }
}
