//! Name triples and their rational approximations.
//!
//! A triple `(f, g, h)` of total functions names a real `ξ` when
//! `|(f(t) − g(t))/(h(t) + 1) − ξ| < 1/(t + 1)` for every `t`.

mod natfun;
mod rational;

use std::fmt;

use num_traits::{Signed, Zero};

pub use natfun::{Nat, NatFun};
pub use rational::{
    bound, ceil_nat, encode, format_rational, nat_to_int, parse_rational, quotient, rat, rat_int,
    Rational,
};

use crate::error::{Error, Result};

/// Three total functions naming a real number.
#[derive(Clone, Debug)]
pub struct NameTriple {
    pub f: NatFun,
    pub g: NatFun,
    pub h: NatFun,
}

impl NameTriple {
    pub fn new(f: NatFun, g: NatFun, h: NatFun) -> Self {
        NameTriple { f, g, h }
    }

    /// `(f(t) − g(t))/(h(t) + 1)`.
    pub fn approx(&self, t: &Nat) -> Rational {
        quotient(&self.f.eval(t), &self.g.eval(t), &self.h.eval(t))
    }

    pub fn approx_at(&self, t: u64) -> Rational {
        self.approx(&Nat::from(t))
    }

    /// The components as an operator argument list `[f, g, h]`.
    pub fn functions(&self) -> [NatFun; 3] {
        [self.f.clone(), self.g.clone(), self.h.clone()]
    }

    /// Flattens a list of triples into `[f₁, g₁, h₁, …, f_N, g_N, h_N]`.
    pub fn flatten(names: &[NameTriple]) -> Vec<NatFun> {
        names.iter().flat_map(|n| n.functions()).collect()
    }
}

pub fn approx(name: &NameTriple, t: &Nat) -> Rational {
    name.approx(t)
}

/// A triple naming `q` exactly at every index: `(č_{p⁺}, č_{p⁻}, č_{d−1})`
/// for `q = p/d`.
pub fn rational_name(q: &Rational) -> NameTriple {
    let (f, g, h) = encode(q);
    NameTriple::new(NatFun::constant(f), NatFun::constant(g), NatFun::constant(h))
}

/// Least `t` with `1/(t+1) ≤ eps`.
pub fn precision_index(eps: &Rational) -> Result<Nat> {
    if !eps.is_positive() {
        return Err(Error::NonPositivePrecision(format_rational(eps)));
    }
    let inv = eps.recip();
    let c = ceil_nat(&inv);
    Ok(if c.is_zero() { c } else { c - 1u32 })
}

/// One line of a [`ValidationReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationRow {
    pub t: u64,
    pub approx: Rational,
    pub bound: Rational,
    pub pass: bool,
}

impl fmt::Display for ValidationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} approx={} bound={} {}",
            self.t,
            format_rational(&self.approx),
            format_rational(&self.bound),
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

/// Outcome of checking the naming condition against a known value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub reference: Rational,
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&ValidationRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reference={}", format_rational(&self.reference))?;
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        write!(f, "overall={}", if self.pass() { "pass" } else { "FAIL" })
    }
}

/// Checks `|approx(name, t) − reference| < 1/(t+1)` for every `t ≤ t_max`
/// in exact arithmetic.
pub fn validate_name(name: &NameTriple, reference: &Rational, t_max: u64) -> ValidationReport {
    let rows = (0..=t_max)
        .map(|t| {
            let tn = Nat::from(t);
            let approx = name.approx(&tn);
            let bound = bound(&tn);
            let pass = (&approx - reference).abs() < bound;
            ValidationRow {
                t,
                approx,
                bound,
                pass,
            }
        })
        .collect();
    ValidationReport {
        reference: reference.clone(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: u32) -> NatFun {
        NatFun::constant(v)
    }

    #[test]
    fn approx_of_constant_triples() {
        let half = NameTriple::new(c(1), c(0), c(1));
        assert_eq!(half.approx_at(7), rat(1, 2));
        let zero = NameTriple::new(c(0), c(0), c(0));
        for t in [0, 1, 99, 12345] {
            assert_eq!(zero.approx_at(t), rat(0, 1));
        }
    }

    #[test]
    fn canonical_names_are_exact() {
        let q = rat(22, 7);
        let n = rational_name(&q);
        assert_eq!(n.approx_at(100), q);
        for q in [rat(0, 1), rat(-3, 4)] {
            let n = rational_name(&q);
            assert!((0..=50).all(|t| n.approx_at(t) == q));
        }
        let big = rat(1_000_000_000, 7);
        assert_eq!(rational_name(&big).approx_at(0), big);
    }

    #[test]
    fn precision_index_examples() {
        assert_eq!(precision_index(&rat(1, 1)).unwrap(), Nat::from(0u32));
        assert_eq!(precision_index(&rat(1, 10)).unwrap(), Nat::from(9u32));
        assert_eq!(precision_index(&rat(2, 7)).unwrap(), Nat::from(3u32));
        assert_eq!(precision_index(&rat(5, 1)).unwrap(), Nat::from(0u32));
        assert!(precision_index(&rat(0, 1)).is_err());
        assert!(precision_index(&rat(-1, 3)).is_err());
    }

    #[test]
    fn precision_index_is_least() {
        for (p, q) in [(1, 3), (3, 10), (7, 100), (2, 9), (1, 1000)] {
            let eps = rat(p, q);
            let t = precision_index(&eps).unwrap();
            assert!(bound(&t) <= eps);
            if t > Nat::from(0u32) {
                assert!(bound(&(t - 1u32)) > eps);
            }
        }
    }

    #[test]
    fn validate_examples() {
        let third = rat(1, 3);
        assert!(validate_name(&rational_name(&third), &third, 100).pass());

        let one = NameTriple::new(c(1), c(0), c(0));
        let report = validate_name(&one, &rat(0, 1), 2);
        assert!(!report.pass());
        assert_eq!(report.first_failure().unwrap().t, 0);
        // |1 − 0| = 1 ≥ 1/2 at t = 1 as well.
        assert!(!report.rows[1].pass);
    }

    #[test]
    fn report_renders_lines() {
        let report = validate_name(&rational_name(&rat(1, 2)), &rat(1, 2), 1);
        let text = report.to_string();
        assert!(text.contains("t=0 approx=1/2 bound=1 pass"));
        assert!(text.contains("t=1 approx=1/2 bound=1/2 pass"));
        assert!(text.ends_with("overall=pass"));
    }

    proptest! {
        #[test]
        fn canonical_names_validate(p in -10_000i64..10_000, q in 1i64..500, t_max in 0u64..1000) {
            let r = rat(p, q);
            let name = rational_name(&r);
            prop_assert!(validate_name(&name, &r, t_max).pass());
            prop_assert_eq!(name.approx_at(t_max), r.clone());
            prop_assert_eq!(name.approx_at(t_max), name.approx_at(t_max));
        }
    }
}
