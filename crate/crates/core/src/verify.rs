//! Whole-family audit: internal consistency checks plus a ledger of known
//! discrepancies in the printed formulas.
//!
//! A ledger entry never makes the audit fail; a failed check always does.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bifurcation::{cross_check_closed_forms, first_instants, rigidity_threshold};
use crate::curvature::{normal_scal, ordered_census, scal_closed_form, scal_wz, triples, ScalPoly};
use crate::error::Result;
use crate::fibration::{build_fibration, FibrationData, FibrationFamily};
use crate::rational::{fmt_q, q, qi};
use crate::rootsys::{build_root_system, FamilyKind};
use crate::spectra::{
    ambient_phi1, base_spectrum, casimir, class_one_casimir, cpn_closed_form, flag_spectrum, g2_base_closed_form,
    printed_d_prefactor, sphere_closed_form, stated_beta1, stated_first_weight, stated_mu1, yamaguchi_form, Origin,
};
use crate::variation::{lambda1_bounds, lemma_holds, normalized_scal};

/// Number of instants examined by the audit.
pub const AUDIT_INSTANTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub key: String,
    pub printed: String,
    pub derived: String,
    pub note: String,
}

impl fmt::Display for LedgerEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] printed: {}; derived: {}; {}", self.key, self.printed, self.derived, self.note)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub family: FibrationFamily,
    pub checks: Vec<Check>,
    pub ledger: Vec<LedgerEntry>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn ledger(&mut self, key: &str, printed: impl Into<String>, derived: impl Into<String>, note: &str) {
        self.ledger.push(LedgerEntry {
            key: key.to_string(),
            printed: printed.into(),
            derived: derived.into(),
            note: note.to_string(),
        });
    }
}

fn fmt_poly(p: &ScalPoly) -> String {
    format!("(A,C,E,D) = ({}, {}, {}, {})", fmt_q(&p.a), fmt_q(&p.c), fmt_q(&p.e), fmt_q(&p.d))
}

/// Runs every check for one family with the default `phi_1`.
pub fn verify_family(family: FibrationFamily) -> Result<VerifyReport> {
    verify_fibration(&build_fibration(family)?)
}

/// Runs every check for `fib`, honouring its `phi_1`.
pub fn verify_fibration(fib: &FibrationData) -> Result<VerifyReport> {
    let mut r = VerifyReport {
        family: fib.family,
        checks: Vec::new(),
        ledger: Vec::new(),
    };
    curvature_checks(fib, &mut r);
    spectrum_checks(fib, &mut r)?;
    instant_checks(fib, &mut r)?;
    r.ledger(
        "bracket-table",
        "[A_a, S_b] listed twice",
        "first line is [A_a, A_b]",
        "only squared structure constants are used",
    );
    Ok(r)
}

fn curvature_checks(fib: &FibrationData, r: &mut VerifyReport) {
    let wz = scal_wz(fib);
    let normal = normal_scal(fib);
    r.check(
        "scal(1) equals normal-metric scalar curvature",
        wz.eval_u(&qi(1)) == normal,
        format!("scal(1) = {}", fmt_q(&normal)),
    );
    let expected = q(fib.m_total as i64, 4) + q(fib.system.simple.len() as i64, 2);
    r.check(
        "normal scal = m/4 + rank/2",
        normal == expected,
        format!("{} vs {}", fmt_q(&normal), fmt_q(&expected)),
    );
    r.check(
        "sign conditions A > 0, E < 0, D > 0",
        wz.a.is_positive() && wz.e.is_negative() && wz.d.is_positive(),
        fmt_poly(&wz),
    );
    if let FibrationFamily::Su(n) = fib.family {
        let recs = triples(fib);
        let n = n as i64;
        let want = (n * n * n - 3 * n * n + 2 * n, 2 * n * (n - 1), n * (n - 1));
        let got = ordered_census(&recs);
        let got = (got.0 as i64, got.1 as i64, got.2 as i64);
        r.check("SU triple census", got == want, format!("{got:?}"));
        let v = q(1, n + 1);
        r.check(
            "SU triple values equal 1/(n+1)",
            recs.iter().all(|t| t.value == v),
            format!("{} triples", recs.len()),
        );
    }
    let closed = scal_closed_form(fib.family);
    if !wz.identical(&closed) {
        r.ledger(
            "scal-closed-form",
            fmt_poly(&closed.normalized()),
            fmt_poly(&wz.normalized()),
            "printed scalar curvature differs from the direct computation",
        );
    }
}

fn spectrum_checks(fib: &FibrationData, r: &mut VerifyReport) -> Result<()> {
    let tag = fib.family.tag()?;
    let n = tag.rank() as i64;
    let rs = build_root_system(tag);

    // Printed class-one polynomial against the Casimir of the same weights.
    let flag = flag_spectrum(tag, &qi(4))?;
    let casimir_min = class_one_casimir(&rs, &rs.simple, &qi(4), Origin::Total)?[0].value.clone();
    let printed_min = flag[0].value.clone();
    let stated = stated_mu1(tag);
    match tag.kind() {
        FamilyKind::C => {
            r.ledger(
                "C_n first eigenvalue",
                format!(
                    "polynomial gives {} at P = {:?}, text states {}",
                    fmt_q(&yamaguchi_form(tag).eval(&stated_first_weight(tag))),
                    stated_first_weight(tag),
                    fmt_q(&stated)
                ),
                format!("Casimir minimum {}", fmt_q(&casimir_min)),
                "stated value and polynomial disagree; the Casimir value is used",
            );
            r.check(
                "C_n discrepancy detected",
                printed_min != stated,
                format!("polynomial minimum {} vs stated {}", fmt_q(&printed_min), fmt_q(&stated)),
            );
        }
        _ => {
            r.check(
                "printed class-one minimum equals stated first eigenvalue",
                printed_min == stated,
                format!("{} vs {}", fmt_q(&printed_min), fmt_q(&stated)),
            );
            r.check(
                "printed class-one minimum equals Casimir minimum",
                printed_min == casimir_min,
                format!("{} vs {}", fmt_q(&printed_min), fmt_q(&casimir_min)),
            );
        }
    }
    if tag.kind() == FamilyKind::D {
        r.ledger(
            "D_n prefactor",
            fmt_q(&printed_d_prefactor(tag.rank())),
            fmt_q(&q(1, 2 * (n - 1))),
            "corrected prefactor reproduces the stated first eigenvalue 1",
        );
    }
    if tag.kind() == FamilyKind::B {
        r.ledger(
            "B_n dominance row",
            "p_{n-2} + 2p_{n-1} - p_n >= 0",
            "-p_{n-2} + 2p_{n-1} - p_n >= 0",
            "sign of the first term",
        );
    }

    // Base spectrum: first eigenvalue and closed forms.
    let base = base_spectrum(fib.family, &qi(6))?;
    let beta1 = stated_beta1(fib.family);
    r.check(
        "base first eigenvalue",
        base.first().map(|e| &e.value) == Some(&beta1),
        format!("beta_1 = {}", fmt_q(&beta1)),
    );
    let closed_ok = match fib.family {
        FibrationFamily::Su(k) => base
            .iter()
            .enumerate()
            .all(|(i, e)| cpn_closed_form(k, i + 1) == (e.value.clone(), e.mult.clone())),
        FibrationFamily::SoOdd(k) => base
            .iter()
            .enumerate()
            .all(|(i, e)| sphere_closed_form(k, i + 1) == (e.value.clone(), e.mult.clone())),
        FibrationFamily::G2 => base
            .iter()
            .all(|e| e.weights.iter().all(|w| g2_base_closed_form(w[0], w[1]) == e.value)),
        _ => true,
    };
    r.check("base spectrum matches closed forms", closed_ok, format!("{} values", base.len()));
    r.check(
        "base multiplicities positive",
        base.iter().all(|e| e.mult > BigInt::zero()),
        "Weyl dimension",
    );
    let rho = rs.rho();
    let zero = rho.sub(&rho);
    r.check("Casimir of the trivial weight is 0", casimir(&rs, &zero).is_zero(), "");

    let phi = ambient_phi1(fib)?;
    if phi != fib.phi1 {
        r.ledger(
            "fiber first eigenvalue",
            format!("phi_1 = {}", fmt_q(&fib.phi1)),
            format!("ambient-form value {}", fmt_q(&phi)),
            "default phi_1 = 1 is kept; pass --phi1 to override",
        );
    }
    Ok(())
}

fn instant_checks(fib: &FibrationData, r: &mut VerifyReport) -> Result<()> {
    let wz = scal_wz(fib);
    let ns = normalized_scal(fib, &wz);
    let mu1 = lambda1_bounds(fib).lower;
    r.check(
        "lemma inequality on (0, 1]",
        lemma_holds(&ns, &mu1, &fib.phi1),
        format!("mu_1 = {}, phi_1 = {}", fmt_q(&mu1), fmt_q(&fib.phi1)),
    );
    let b = rigidity_threshold(fib, &wz);
    r.check(
        "rigidity threshold in (0, 1)",
        b.is_ok(),
        b.as_ref().map(|i| format!("b = {:.12}", i.t)).unwrap_or_else(|e| e.to_string()),
    );
    let set = first_instants(fib, &wz, AUDIT_INSTANTS)?;
    let decreasing = set.instants.windows(2).all(|w| w[0].u > w[1].u);
    r.check("instants strictly decrease", decreasing, format!("{} instants", set.instants.len()));
    r.check(
        "every instant is a bifurcation instant",
        set.instants.iter().all(|i| i.is_bifurcation),
        "",
    );
    let morse_zero = [1.0, 0.999].iter().all(|&t| set.morse_index(t).map(|v| v.is_zero()).unwrap_or(false));
    r.check("Morse index vanishes above b", morse_zero, "");
    for row in cross_check_closed_forms(fib.family, &set.instants) {
        if row.agree == Some(false) {
            let printed = row.printed_t.map(|v| format!("{v:.12}")).unwrap_or_default();
            r.ledger(
                "printed instant",
                format!("{} t = {}", row.label, printed),
                format!("t = {:.12}", row.solved_t),
                &row.note,
            );
        }
    }
    Ok(())
}
