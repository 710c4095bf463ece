//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for payoffs and probabilities.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n / d` as a rational. Panics on `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a plain decimal-free integer string.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad rational numerator `{num}`"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad rational denominator `{den}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Q::new(n, d))
}

/// Canonical `"p/q"` rendering (always with a denominator).
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Short rendering: integers without denominator.
pub fn fmt_q_short(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        fmt_q(x)
    }
}

/// Sum of a slice of rationals.
pub fn sum(xs: &[Q]) -> Q {
    xs.iter().fold(Q::zero(), |a, b| a + b)
}

/// True when `x` is a probability vector (nonnegative, sums to one).
pub fn is_distribution(xs: &[Q]) -> bool {
    xs.iter().all(|x| !x.is_negative()) && sum(xs).is_one()
}
