//! Effective metric spaces with natural-number codes, ordinary names, and
//! the computability notions and constructions over them.

mod functions;
mod translate;

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

pub use functions::{
    apply_conditional_ms, apply_uniform_ms, compose_conditional_ms, embed_uniform_ms,
    glue_compact_ms, localize_ms, ms_dispatch_index, tuple_conditional, MsApplied, MsBall,
    MsConditionalFn, MsLocalized, MsNeighborhood, MsUniformFn,
};
pub use translate::{
    names_to_ordinary, ordinary_to_names, translate_conditional, translate_conditional_back,
    translate_uniform, translate_uniform_back,
};

use crate::error::{Error, Result};
use crate::gadgets::{ball_indicator, tuple, untuple};
use crate::naming::{bound, encode, format_rational, quotient, Nat, NatFun, Rational};
use crate::terms::BaseFunction;

/// `(M, d, A, α)` with `dom(α) ⊆ ℕ`. Points are reached only through codes.
pub trait EffectiveSpace: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// `n ∈ dom(α)`.
    fn in_domain(&self, n: &Nat) -> bool;

    /// `d(α(n), α(m))` when it is rational.
    fn dist(&self, n: &Nat, m: &Nat) -> Option<Rational>;

    /// Decides `d(α(n), α(m)) < q` exactly.
    fn dist_lt(&self, n: &Nat, m: &Nat, q: &Rational) -> bool;

    /// Human-readable `α(n)`.
    fn describe(&self, n: &Nat) -> String;

    /// A unary function with `e(n) = 0 ⇔ d(α(n), α(center)) < q` on `dom(α)`.
    fn ball_indicator(&self, center: &Nat, q: &Rational) -> Result<BaseFunction>;
}

pub type Space = Arc<dyn EffectiveSpace>;

pub(crate) fn same_space(expected: &Space, found: &Space) -> Result<()> {
    if expected.name() == found.name() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            expected: expected.name(),
            found: found.name(),
        })
    }
}

/// `M_N = (ℝᴺ, d_N, ℚᴺ, α_N)` with the max-norm and
/// `α_N(n) = ((P_{3N,1}(n) − P_{3N,2}(n))/(P_{3N,3}(n) + 1), …)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MnSpace {
    n: usize,
}

impl MnSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("M_N needs N >= 1".into()));
        }
        Ok(MnSpace { n })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn alpha(&self, code: &Nat) -> Vec<Rational> {
        untuple(3 * self.n, code)
            .expect("3N >= 3")
            .chunks(3)
            .map(|c| quotient(&c[0], &c[1], &c[2]))
            .collect()
    }

    /// A code of the rational point `p`.
    pub fn code(&self, p: &[Rational]) -> Result<Nat> {
        if p.len() != self.n {
            return Err(Error::ArityMismatch {
                context: "M_N point",
                expected: self.n,
                found: p.len(),
            });
        }
        let parts: Vec<Nat> = p
            .iter()
            .flat_map(|q| {
                let (a, b, c) = encode(q);
                [a, b, c]
            })
            .collect();
        tuple(&parts)
    }

    fn distance(&self, n: &Nat, m: &Nat) -> Rational {
        self.alpha(n)
            .iter()
            .zip(self.alpha(m))
            .map(|(x, y)| (x - y).abs())
            .max()
            .unwrap_or_default()
    }
}

pub fn make_mn(n: usize) -> Result<Space> {
    Ok(Arc::new(MnSpace::new(n)?))
}

impl EffectiveSpace for MnSpace {
    fn name(&self) -> String {
        format!("M_{}", self.n)
    }

    fn in_domain(&self, _n: &Nat) -> bool {
        true
    }

    fn dist(&self, n: &Nat, m: &Nat) -> Option<Rational> {
        Some(self.distance(n, m))
    }

    fn dist_lt(&self, n: &Nat, m: &Nat, q: &Rational) -> bool {
        &self.distance(n, m) < q
    }

    fn describe(&self, n: &Nat) -> String {
        let parts: Vec<String> = self.alpha(n).iter().map(format_rational).collect();
        format!("({})", parts.join(", "))
    }

    /// `ball_indicator(α_N(center), q)` applied to `P_{3N,1}(n), …, P_{3N,3N}(n)`.
    fn ball_indicator(&self, center: &Nat, q: &Rational) -> Result<BaseFunction> {
        let e = ball_indicator(&self.alpha(center), q)?;
        let k = 3 * self.n;
        Ok(BaseFunction::new(
            format!("{}∘P_{k}", e.name()),
            1,
            move |a| e.call(&untuple(k, &a[0]).expect("k >= 3")).expect("arity 3N"),
        ))
    }
}

/// The codes `0 … size−1` as points at mutual distance 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSpace {
    size: u64,
}

impl DiscreteSpace {
    pub fn new(size: u64) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("discrete space needs a point".into()));
        }
        Ok(DiscreteSpace { size })
    }
}

pub fn make_discrete(size: u64) -> Result<Space> {
    Ok(Arc::new(DiscreteSpace::new(size)?))
}

impl EffectiveSpace for DiscreteSpace {
    fn name(&self) -> String {
        format!("D_{}", self.size)
    }

    fn in_domain(&self, n: &Nat) -> bool {
        n < &Nat::from(self.size)
    }

    fn dist(&self, n: &Nat, m: &Nat) -> Option<Rational> {
        Some(if n == m {
            Rational::zero()
        } else {
            Rational::from_integer(1.into())
        })
    }

    fn dist_lt(&self, n: &Nat, m: &Nat, q: &Rational) -> bool {
        &self.dist(n, m).expect("always rational") < q
    }

    fn describe(&self, n: &Nat) -> String {
        format!("#{n}")
    }

    fn ball_indicator(&self, center: &Nat, q: &Rational) -> Result<BaseFunction> {
        let zero_in = q.is_positive();
        let whole = q > &Rational::from_integer(1.into());
        let center = center.clone();
        Ok(BaseFunction::new(
            format!("ballD[{center};{}]", format_rational(q)),
            1,
            move |a| {
                let inside = whole || (zero_in && a[0] == center);
                Nat::from(u8::from(!inside))
            },
        ))
    }
}

/// Spaces offered by name: `M_N` for `N ≥ 1` and `D_n` for `n ≥ 1`.
pub fn space_by_name(name: &str) -> Result<Space> {
    let bad = || Error::Parse(format!("unknown space `{name}`"));
    if let Some(n) = name.strip_prefix("M_") {
        return make_mn(n.parse().map_err(|_| bad())?);
    }
    if let Some(n) = name.strip_prefix("D_") {
        return make_discrete(n.parse().map_err(|_| bad())?);
    }
    Err(bad())
}

/// Space families and their descriptions, for listings.
pub const SPACES: &[(&str, &str)] = &[
    (
        "M_N",
        "R^N with max-norm; code n denotes ((P1-P2)/(P3+1), ...) over the 3N-tuple decoding",
    ),
    ("D_n", "codes 0..n-1 with the 0/1 metric"),
];

/// An ordinary name: `f(t) ∈ dom(α)` and `d(α(f(t)), ξ) < 1/(t + 1)`.
#[derive(Clone, Debug)]
pub struct OrdinaryName {
    pub f: NatFun,
    pub space: Space,
}

impl OrdinaryName {
    pub fn new(f: NatFun, space: Space) -> Self {
        OrdinaryName { f, space }
    }

    /// The name constantly equal to `code`.
    pub fn constant(code: Nat, space: Space) -> Self {
        OrdinaryName::new(NatFun::constant(code), space)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryRow {
    pub t: u64,
    pub code: Nat,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryReport {
    pub rows: Vec<OrdinaryRow>,
}

impl OrdinaryReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn first_failure(&self) -> Option<&OrdinaryRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

/// Checks the naming condition against the coded point `point` for
/// `t ≤ t_max`.
pub fn validate_ordinary(name: &OrdinaryName, point: &Nat, t_max: u64) -> OrdinaryReport {
    let rows = (0..=t_max)
        .map(|t| {
            let tn = Nat::from(t);
            let code = name.f.eval(&tn);
            let pass =
                name.space.in_domain(&code) && name.space.dist_lt(&code, point, &bound(&tn));
            OrdinaryRow { t, code, pass }
        })
        .collect();
    OrdinaryReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naming::{rat, rat_int};

    #[test]
    fn mn_examples() {
        let m1 = MnSpace::new(1).unwrap();
        let code = tuple(&[Nat::from(1u8), Nat::from(0u8), Nat::from(1u8)]).unwrap();
        assert_eq!(m1.alpha(&code), vec![rat(1, 2)]);
        let m2 = MnSpace::new(2).unwrap();
        let o = m2.code(&[rat_int(0), rat_int(0)]).unwrap();
        let p = m2.code(&[rat(1, 2), rat(-1, 3)]).unwrap();
        assert!(m2.dist_lt(&o, &p, &rat(3, 5)));
        assert!(!m2.dist_lt(&o, &p, &rat(1, 2)));
        assert_eq!(m2.dist(&o, &p), Some(rat(1, 2)));
        assert_eq!(m2.describe(&p), "(1/2, -1/3)");
        for n in 0..500u32 {
            assert_eq!(m2.alpha(&Nat::from(n)).len(), 2);
        }
        assert!(MnSpace::new(0).is_err());
        assert!(m2.code(&[rat_int(1)]).is_err());
    }

    #[test]
    fn mn_metric_axioms_on_codes() {
        let m = MnSpace::new(1).unwrap();
        let codes: Vec<Nat> = (0..40u32).map(Nat::from).collect();
        for a in &codes {
            assert_eq!(m.dist(a, a), Some(Rational::zero()));
            for b in &codes {
                assert_eq!(m.dist(a, b), m.dist(b, a));
                for c in codes.iter().step_by(7) {
                    let (ab, bc, ac) = (m.dist(a, b).unwrap(), m.dist(b, c).unwrap(), m.dist(a, c).unwrap());
                    assert!(ac <= ab + bc);
                }
            }
        }
    }

    #[test]
    fn mn_ball_indicator_matches_dist_lt() {
        for n in 1..=2usize {
            let m = MnSpace::new(n).unwrap();
            let centers = [vec![rat_int(0); n], vec![rat(1, 2); n]];
            for c in &centers {
                let cc = m.code(c).unwrap();
                for q in [rat(1, 3), rat_int(1), rat(5, 2)] {
                    let e = m.ball_indicator(&cc, &q).unwrap();
                    for code in 0..1500u32 {
                        let code = Nat::from(code);
                        let zero = e.call(std::slice::from_ref(&code)).unwrap().is_zero();
                        assert_eq!(zero, m.dist_lt(&code, &cc, &q), "n={n} code={code}");
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_space() {
        let d = DiscreteSpace::new(5).unwrap();
        let (a, b) = (Nat::from(1u8), Nat::from(3u8));
        assert!(d.dist_lt(&a, &a, &rat(1, 2)));
        assert!(!d.dist_lt(&a, &b, &rat_int(1)));
        assert!(d.dist_lt(&a, &b, &rat(3, 2)));
        assert!(d.in_domain(&Nat::from(4u8)));
        assert!(!d.in_domain(&Nat::from(5u8)));
        for q in [rat_int(0), rat(1, 2), rat_int(1), rat(3, 2)] {
            let e = d.ball_indicator(&a, &q).unwrap();
            for code in 0..5u32 {
                let code = Nat::from(code);
                let zero = e.call(std::slice::from_ref(&code)).unwrap().is_zero();
                assert_eq!(zero, d.dist_lt(&code, &a, &q));
            }
        }
    }

    #[test]
    fn spaces_by_name() {
        assert_eq!(space_by_name("M_3").unwrap().name(), "M_3");
        assert_eq!(space_by_name("D_4").unwrap().name(), "D_4");
        assert!(space_by_name("M_0").is_err());
        assert!(space_by_name("X").is_err());
    }

    #[test]
    fn ordinary_validation() {
        let m = make_mn(1).unwrap();
        let mn = MnSpace::new(1).unwrap();
        let half = mn.code(&[rat(1, 2)]).unwrap();
        let name = OrdinaryName::constant(half.clone(), m.clone());
        assert!(validate_ordinary(&name, &half, 100).pass());
        let zero = mn.code(&[rat_int(0)]).unwrap();
        let report = validate_ordinary(&name, &zero, 100);
        assert_eq!(report.first_failure().map(|r| r.t), Some(1));
    }
}
