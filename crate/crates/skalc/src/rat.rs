//! Exact rational scalars and their text forms.
//!
//! All quantities in this crate are `BigRational`s: entropies, rates, LP
//! coefficients, duals. Machine-readable output prints them as `p/q` (bare
//! integer when `q == 1`), human-readable output adds a decimal approximation
//! with twelve significant digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Exact `p/q` from machine integers. Panics if `q == 0`; meant for literals.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact integer as a rational.
pub fn rint(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `p`, `-p`, or `p/q` (ASCII digits, optional sign, optional spaces).
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let bad = || crate::Error::Parse(format!("not a rational: {s:?} (expected `p` or `p/q`)"));
    let t = s.trim();
    let (ns, ds) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let p: BigInt = ns.parse().map_err(|_| bad())?;
    let q: BigInt = match ds {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Canonical exact form: `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

const SIG_DIGITS: usize = 12;

/// Decimal approximation with twelve significant digits, trailing zeros
/// trimmed; falls back to scientific notation outside a printf `%g`-like
/// range. Deterministic (round half away from zero).
pub fn decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let a = r.abs();

    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let ten = BigInt::from(10);
    let mut e: i64 =
        a.numer().to_string().trim_start_matches('-').len() as i64 - a.denom().to_string().len() as i64;
    let pow = |k: i64| -> Rational {
        let p = num_traits::pow(ten.clone(), k.unsigned_abs() as usize);
        if k >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }

    // First SIG_DIGITS digits of a, rounded half away from zero.
    let scaled = &a * pow(SIG_DIGITS as i64 - 1 - e);
    let mut int = scaled.floor().to_integer();
    if (&scaled - Rational::from_integer(int.clone())) * Rational::from_integer(BigInt::from(2))
        >= Rational::one()
    {
        int += 1;
    }
    let mut digits = int.to_string();
    if digits.len() > SIG_DIGITS {
        // Rounding carried over, e.g. 0.99999999999952 -> 1000000000000.
        e += 1;
        digits.truncate(SIG_DIGITS);
    }
    debug_assert_eq!(digits.len(), SIG_DIGITS);

    let sign = if r.is_negative() { "-" } else { "" };
    let body = if e < -4 || e >= SIG_DIGITS as i64 {
        let mantissa = trim_zeros(&format!("{}.{}", &digits[..1], &digits[1..]));
        let (es, ea) = if e < 0 { ("-", -e) } else { ("+", e) };
        format!("{mantissa}e{es}{ea:02}")
    } else if e >= 0 {
        let cut = (e + 1) as usize;
        trim_zeros(&format!("{}.{}", &digits[..cut], &digits[cut..]))
    } else {
        trim_zeros(&format!("0.{}{}", "0".repeat((-e - 1) as usize), digits))
    };
    format!("{sign}{body}")
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `p/q (decimal)` for human-readable reports.
pub fn pretty(r: &Rational) -> String {
    let exact = format_rational(r);
    let dec = decimal(r);
    if exact == dec {
        exact
    } else {
        format!("{exact} ({dec})")
    }
}
