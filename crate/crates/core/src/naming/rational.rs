use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::natfun::Nat;
use crate::error::{Error, Result};

/// Exact rational number, always normalized (positive denominator, lowest terms).
pub type Rational = BigRational;

/// Parses `p/q` or `p` (optionally signed) into a normalized rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// `p/q` in lowest terms; integers print without a denominator.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn nat_to_int(n: &Nat) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// `(x − y)/(z + 1)` for naturals.
pub fn quotient(x: &Nat, y: &Nat, z: &Nat) -> Rational {
    Rational::new(nat_to_int(x) - nat_to_int(y), nat_to_int(z) + 1)
}

/// Splits `q = p/d` into naturals `(p⁺, p⁻, d − 1)` so that
/// [`quotient`] of the result is exactly `q`.
pub fn encode(q: &Rational) -> (Nat, Nat, Nat) {
    let p = q.numer();
    let d = q.denom();
    let mag = p.magnitude().clone();
    let (pos, neg) = if p.is_negative() {
        (Nat::zero(), mag)
    } else {
        (mag, Nat::zero())
    };
    let den = d.magnitude() - Nat::one();
    (pos, neg, den)
}

/// `1/(t+1)`.
pub fn bound(t: &Nat) -> Rational {
    Rational::new(BigInt::one(), nat_to_int(t) + 1)
}

/// Smallest natural `n` with `n ≥ q` (zero for negative `q`).
pub fn ceil_nat(q: &Rational) -> Nat {
    if !q.is_positive() {
        return Nat::zero();
    }
    q.ceil().to_integer().magnitude().clone()
}
