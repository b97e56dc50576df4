//! Parsers for command-line values: exact rationals, decimals and family names.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fibration::FibrationFamily;
use crate::rational::Q;

/// Longest accepted input, in bytes.
pub const MAX_LEN: usize = 256;
/// Largest accepted decimal exponent magnitude.
pub const MAX_EXP: i64 = 64;

fn err(what: &str, s: &str) -> Error {
    let shown: String = s.chars().take(40).collect();
    Error::Parse(format!("{what}: {shown:?}"))
}

fn check_len(s: &str) -> Result<&str> {
    if s.len() > MAX_LEN {
        return Err(Error::Parse(format!("input longer than {MAX_LEN} bytes")));
    }
    Ok(s.trim())
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    }
}

fn digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `"p/q"` or `"p"`, with an optional sign on `p`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = check_len(s)?;
    let (neg, body) = split_sign(t);
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let num = digits(num).ok_or_else(|| err("expected an integer numerator", s))?;
    let den = match den {
        Some(d) => digits(d).ok_or_else(|| err("expected an integer denominator", s))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator", s));
    }
    let v = Q::new(num, den);
    Ok(if neg { -v } else { v })
}

/// Decimal such as `0.25`, `-.5` or `1e-3`, converted exactly.
pub fn parse_decimal(s: &str) -> Result<Q> {
    let t = check_len(s)?;
    let (neg, body) = split_sign(t);
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], Some(&body[i + 1..])),
        None => (body, None),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(err("expected a decimal", s));
    }
    let all = format!("{int}{frac}");
    let m = digits(&all).ok_or_else(|| err("expected a decimal", s))?;
    let mut e = -(frac.len() as i64);
    if let Some(x) = exp {
        let (eneg, ebody) = split_sign(x);
        if ebody.is_empty() || ebody.len() > 4 || !ebody.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad exponent", s));
        }
        let v: i64 = ebody.parse().map_err(|_| err("bad exponent", s))?;
        if v > MAX_EXP {
            return Err(err("exponent out of range", s));
        }
        e += if eneg { -v } else { v };
    }
    let ten = BigInt::from(10);
    let v = if e >= 0 {
        Q::from_integer(m * num_traits::pow(ten, e as usize))
    } else {
        Q::new(m, num_traits::pow(ten, (-e) as usize))
    };
    Ok(if neg { -v } else { v })
}

/// Family from its slug (`su`, `so-odd`, `sp`, `so-even`, `g2`, or the
/// Cartan letters `a`, `b`, `c`, `d`) and rank `n`.
pub fn parse_family(slug: &str, n: Option<usize>) -> Result<FibrationFamily> {
    let slug = check_len(slug)?.to_ascii_lowercase();
    let need = |n: Option<usize>| n.ok_or_else(|| Error::InvalidFamily(format!("family {slug} needs --n")));
    let f = match slug.as_str() {
        "su" | "a" => FibrationFamily::Su(need(n)?),
        "so-odd" | "b" => FibrationFamily::SoOdd(need(n)?),
        "sp" | "c" => FibrationFamily::Sp(need(n)?),
        "so-even" | "d" => FibrationFamily::SoEven(need(n)?),
        "g2" => match n {
            None | Some(2) => FibrationFamily::G2,
            Some(k) => return Err(Error::InvalidFamily(format!("g2 has rank 2, got n = {k}"))),
        },
        _ => return Err(Error::InvalidFamily(format!("unknown family {slug:?}"))),
    };
    f.validate()?;
    Ok(f)
}

/// `"slug"` or `"slug:n"`.
pub fn parse_family_spec(s: &str) -> Result<FibrationFamily> {
    let t = check_len(s)?;
    match t.split_once(':') {
        Some((slug, n)) => {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| err("expected a rank after ':'", s))?;
            parse_family(slug, Some(n))
        }
        None => parse_family(t, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use proptest::prelude::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), q(-3, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), qi(7));
        for bad in ["", "1/0", "/2", "1/", "a/b", "1/-2", "1.5", "--1", "1//2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_decimal("-.5").unwrap(), q(-1, 2));
        assert_eq!(parse_decimal("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_decimal("2.5E2").unwrap(), qi(250));
        assert_eq!(parse_decimal("1.").unwrap(), qi(1));
        for bad in ["", ".", "e3", "1e", "1e99999", "0x10", "1.2.3", "nan", "1e+"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn families() {
        assert_eq!(parse_family("su", Some(2)).unwrap(), FibrationFamily::Su(2));
        assert_eq!(parse_family("d", Some(4)).unwrap(), FibrationFamily::SoEven(4));
        assert_eq!(parse_family("G2", None).unwrap(), FibrationFamily::G2);
        assert_eq!(parse_family_spec("so-odd:5").unwrap(), FibrationFamily::SoOdd(5));
        assert!(parse_family("so-odd", Some(3)).is_err());
        assert!(parse_family("sp", None).is_err());
        assert!(parse_family("e8", Some(8)).is_err());
        assert!(parse_family("g2", Some(3)).is_err());
    }

    proptest! {
        #[test]
        fn rational_round_trip(p in -100_000i64..100_000, d in 1i64..100_000) {
            let x = q(p, d);
            prop_assert_eq!(parse_rational(&crate::rational::fmt_q(&x)).unwrap(), x);
        }

        #[test]
        fn decimal_matches_float_text(m in 0u32..1_000_000, k in 0usize..6) {
            let s = format!("{}.{:0>width$}", m / 10u32.pow(k as u32), m % 10u32.pow(k as u32), width = k);
            let want = q(m as i64, 10i64.pow(k as u32));
            prop_assert_eq!(parse_decimal(&s).unwrap(), want);
        }

        #[test]
        fn never_panics(s in "\\PC{0,40}") {
            let _ = parse_rational(&s);
            let _ = parse_decimal(&s);
            let _ = parse_family_spec(&s);
        }
    }
}
