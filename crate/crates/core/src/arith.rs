//! Exact integers, reduced rationals and generalized binomial coefficients.
//!
//! Integers are [`BigInt`]; rationals are [`BigRational`], which keeps every
//! value reduced with a positive denominator, so `==` compares canonical forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (optional leading `-`, `q != 0`) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let digits = |s: &str| -> Result<BigInt> {
        let body = s.strip_prefix('-').unwrap_or(s);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    let trimmed = text.trim();
    match trimmed.split_once('/') {
        None => Ok(BigRational::from_integer(digits(trimmed)?)),
        Some((p, q)) => {
            let (p, q) = (digits(p)?, digits(q)?);
            if q.is_zero() || q.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Canonical rendering: `"p/q"` in lowest terms with `q > 0`, or `"p"` when `q = 1`.
pub fn render(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Returns the integer value of `x` if it has denominator one.
pub fn as_integer(x: &Rational) -> Option<Integer> {
    x.is_integer().then(|| x.to_integer())
}

/// `x (x-1) ... (x-k+1)`; the empty product is 1.
pub fn falling_factorial(x: &Rational, k: i64) -> Result<Rational> {
    if k < 0 {
        return Err(precondition(format!("falling factorial order must be >= 0, got {k}")));
    }
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    Ok(acc)
}

fn factorial(k: i64) -> Integer {
    (1..=k).fold(Integer::one(), |acc, m| acc * m)
}

/// Generalized binomial coefficient `C(x, k)`; zero for `k < 0`.
pub fn binom_rational(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    // k >= 0 here, so the falling factorial cannot fail.
    let ff = falling_factorial(x, k).expect("nonnegative order");
    ff / Rational::from_integer(factorial(k))
}

/// `C(n, k)` for an integer upper argument, including negative `n`; zero for `k < 0`.
pub fn binom_integer(n: &Integer, k: i64) -> Integer {
    if k < 0 {
        return Integer::zero();
    }
    // Multiplicative form keeps every intermediate an integer:
    // acc_m = C(n, m) and acc_{m+1} = acc_m * (n - m) / (m + 1).
    let mut acc = Integer::one();
    for m in 0..k {
        acc = acc * (n - m) / (m + 1);
    }
    acc
}

/// `4^n`.
pub fn pow4(n: i64) -> Result<Integer> {
    if n < 0 {
        return Err(precondition(format!("exponent must be >= 0, got {n}")));
    }
    let exp = u32::try_from(n).map_err(|_| precondition("exponent too large"))?;
    Ok(num_traits::pow(int(4), exp as usize))
}

/// `(-1)^k` as a rational sign.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}
