//! Independent re-derivations of the reference values.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use yamabe_flag::bifurcation::{degeneracy_instants, first_instants, g2_t_rs, printed_b_so_odd, printed_b_su};
use yamabe_flag::curvature::{scal_closed_form, scal_wz};
use yamabe_flag::fibration::build_fibration;
use yamabe_flag::rational::{binomial, from_f64, q, qi, to_f64};
use yamabe_flag::rootsys::build_root_system;
use yamabe_flag::spectra::{base_spectrum, g2_base_closed_form, weyl_dim};
use yamabe_flag::variation::normalized_scal;
use yamabe_flag::{FamilyKind, FamilyTag, FibrationFamily, Q};

fn tags() -> Vec<FamilyTag> {
    let mut v = vec![FamilyTag::g2()];
    for n in 2..=5 {
        v.push(FamilyTag::new(FamilyKind::A, n).unwrap());
        v.push(FamilyTag::new(FamilyKind::B, n).unwrap());
    }
    for n in 3..=5 {
        v.push(FamilyTag::new(FamilyKind::C, n).unwrap());
    }
    for n in 4..=5 {
        v.push(FamilyTag::new(FamilyKind::D, n).unwrap());
    }
    v
}

/// The Killing form on the torus is `K(x, y) = sum_alpha <alpha, x> <alpha, y>`;
/// the inner product on roots must be its dual, i.e. coincide with `K`.
#[test]
fn inner_product_is_dual_killing_form() {
    for tag in tags() {
        let rs = build_root_system(tag);
        let all: Vec<_> = rs.positive.iter().flat_map(|a| [a.clone(), a.neg()]).collect();
        let simple = &rs.simple;
        let l = simple.len();
        let mut k = vec![vec![Q::zero(); l]; l];
        for a in &all {
            for i in 0..l {
                for j in 0..l {
                    k[i][j] += rs.inner(a, &simple[i]) * rs.inner(a, &simple[j]);
                }
            }
        }
        // With <,> the dual Killing form, K(x, y) = <x, y> on the span of roots.
        for i in 0..l {
            for j in 0..l {
                assert_eq!(k[i][j], rs.inner(&simple[i], &simple[j]), "{tag} ({i},{j})");
            }
        }
    }
}

#[test]
fn quoted_root_lengths() {
    let a3 = build_root_system(FamilyTag::new(FamilyKind::A, 3).unwrap());
    for r in &a3.positive {
        assert_eq!(a3.norm_sq(r), q(1, 4));
    }
    let c3 = build_root_system(FamilyTag::new(FamilyKind::C, 3).unwrap());
    let long = c3.highest_root();
    assert_eq!(c3.norm_sq(&long), q(1, 4));
}

/// Dimension of the adjoint representation is `|roots| + rank`.
#[test]
fn adjoint_dimension() {
    for tag in tags() {
        let rs = build_root_system(tag);
        let want = BigInt::from(2 * rs.positive.len() + rs.simple.len());
        assert_eq!(weyl_dim(&rs, &rs.highest_root()).unwrap(), want, "{tag}");
    }
}

/// Harmonic polynomials of bidegree `(k, k)` on `C^{n+1}`.
fn cpn_harmonic(n: i64, k: i64) -> BigInt {
    let a = binomial(n + k, k);
    let b = if k >= 1 { binomial(n + k - 1, k - 1) } else { BigInt::zero() };
    &a * &a - &b * &b
}

/// Harmonic polynomials of degree `k` on `R^{N+1}`, `N = 2n`.
fn sphere_harmonic(n: i64, k: i64) -> BigInt {
    let big = 2 * n;
    let mut num = BigInt::from(2 * k + big - 1);
    for j in 1..=(k + big - 2) {
        num *= j;
    }
    let mut den = BigInt::one();
    for j in 1..=k {
        den *= j;
    }
    for j in 1..=(big - 1) {
        den *= j;
    }
    num / den
}

#[test]
fn base_multiplicities_from_harmonics() {
    for n in 2..=5usize {
        let s = base_spectrum(FibrationFamily::Su(n), &qi(12)).unwrap();
        for (i, e) in s.iter().enumerate() {
            let k = i as i64 + 1;
            assert_eq!(e.mult, cpn_harmonic(n as i64, k), "CP^{n} k={k}");
            // Ratio to the first eigenvalue is k(k+n)/(n+1).
            assert_eq!(&e.value / &s[0].value, q(k * (k + n as i64), n as i64 + 1));
        }
    }
    for n in [2usize, 4, 5] {
        let s = base_spectrum(FibrationFamily::SoOdd(n), &qi(12)).unwrap();
        for (i, e) in s.iter().enumerate() {
            let k = i as i64 + 1;
            assert_eq!(e.mult, sphere_harmonic(n as i64, k), "S^{} k={k}", 2 * n);
        }
    }
}

#[test]
fn g2_base_values() {
    let s = base_spectrum(FibrationFamily::G2, &qi(10)).unwrap();
    for e in &s {
        for w in &e.weights {
            assert_eq!(g2_base_closed_form(w[0], w[1]), e.value);
        }
    }
    assert_eq!(s[0].weights, vec![vec![0, 1]]);
    assert_eq!(s[0].value, q(7, 6));
}

#[test]
fn normalized_values_at_one() {
    let cases = [
        (FibrationFamily::Su(2), q(5, 2), q(1, 2)),
        (FibrationFamily::G2, qi(4), q(4, 11)),
        (FibrationFamily::SoOdd(2), qi(3), q(3, 7)),
    ];
    for (f, scal, norm) in cases {
        let fib = build_fibration(f).unwrap();
        let wz = scal_wz(&fib);
        assert_eq!(wz.eval_u(&qi(1)), scal);
        assert_eq!(scal_closed_form(f).eval_u(&qi(1)), scal);
        assert_eq!(normalized_scal(&fib, &wz).eval_u(&qi(1)), norm);
    }
}

/// `t` with `f(t) = target` for decreasing `f` on `(lo, hi)`, by bisection.
fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scal_f64(f: FibrationFamily) -> impl Fn(f64) -> f64 {
    let fib = build_fibration(f).unwrap();
    let ns = normalized_scal(&fib, &scal_wz(&fib));
    move |t| to_f64(&ns.eval_t(&from_f64(t).unwrap()))
}

#[test]
fn instants_by_bisection() {
    for f in [FibrationFamily::Su(2), FibrationFamily::SoOdd(2), FibrationFamily::G2, FibrationFamily::Sp(3)] {
        let fib = build_fibration(f).unwrap();
        let set = first_instants(&fib, &scal_wz(&fib), 6).unwrap();
        let g = scal_f64(f);
        for i in &set.instants {
            let t = bisect(&g, to_f64(&i.beta), 1e-6, 1.0);
            assert!((t - i.t).abs() < 1e-12, "{f}: {t} vs {}", i.t);
            assert!(i.t_lo <= i.t && i.t <= i.t_hi && i.t_hi - i.t_lo <= 2e-12);
        }
    }
}

#[test]
fn quoted_instants() {
    let su3 = build_fibration(FibrationFamily::Su(2)).unwrap();
    let set = degeneracy_instants(&su3, &scal_wz(&su3), 0.2).unwrap();
    let t1 = ((-18.0 + 340f64.sqrt()) / 2.0).sqrt();
    let t2 = ((-68.0 + 4640f64.sqrt()) / 2.0).sqrt();
    assert!((set.instants[0].t - t1).abs() < 1e-12);
    assert!((set.instants[1].t - t2).abs() < 1e-12);
    assert!((printed_b_su(2) - t1).abs() < 1e-9);
    assert!((printed_b_so_odd(2) - (-4.0 + 2.0 * 5f64.sqrt()).sqrt()).abs() < 1e-12);
    let g2 = build_fibration(FibrationFamily::G2).unwrap();
    let b = degeneracy_instants(&g2, &scal_wz(&g2), 0.2).unwrap();
    assert!((b.instants[0].t - ((-53.0 + 2873f64.sqrt()) / 8.0).sqrt()).abs() < 1e-12);
}

/// The `G2` instants solve `scal/11 = beta(r, s)`; the `rs` coefficient of the
/// closed form is fixed by that equation.
#[test]
fn g2_rs_coefficient() {
    let g = scal_f64(FibrationFamily::G2);
    for (r, s) in [(0, 1), (1, 0), (1, 1), (2, 1), (1, 2), (3, 2)] {
        let beta = to_f64(&g2_base_closed_form(r, s));
        let t = bisect(&g, beta, 1e-6, 1.0);
        assert!((g2_t_rs(r, s, 66) - t).abs() < 1e-9, "({r},{s})");
        if r * s == 0 {
            assert!((g2_t_rs(r, s, 33) - t).abs() < 1e-9);
        } else {
            assert!((g2_t_rs(r, s, 33) - t).abs() > 1e-6);
        }
    }
}

/// Morse index recomputed directly from the base spectrum below `scal(t)/(m-1)`.
#[test]
fn morse_by_direct_count() {
    for f in [FibrationFamily::Su(2), FibrationFamily::SoOdd(2), FibrationFamily::G2] {
        let fib = build_fibration(f).unwrap();
        let wz = scal_wz(&fib);
        let ns = normalized_scal(&fib, &wz);
        let set = degeneracy_instants(&fib, &wz, 0.15).unwrap();
        for k in 0..40 {
            let t = 0.15 + 0.85 * k as f64 / 39.0 + 1e-7;
            let t = t.min(1.0);
            let level = ns.eval_t(&from_f64(t).unwrap());
            let direct: BigInt = base_spectrum(f, &level)
                .unwrap()
                .iter()
                .filter(|e| e.value < level)
                .map(|e| e.mult.clone())
                .sum();
            assert_eq!(set.morse_index(t).unwrap(), direct, "{f} t={t}");
        }
    }
}
