//! Registered real functions: exact arithmetic on names (uniform) and the
//! reciprocal (conditional).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::computable::{embed_uniform, ConditionalFn, UniformFn};
use crate::error::{Error, Result};
use crate::gadgets::{constant_fn, GadgetRegistry};
use crate::naming::{
    ceil_nat, encode, format_rational, nat_to_int, quotient, rat, validate_name, NameTriple, Nat,
    NatFun, Rational, ValidationRow,
};
use crate::terms::{Operator, OperatorTerm};

/// Exact value of a function at rational arguments, `None` outside the domain.
pub type Oracle = Arc<dyn Fn(&[Rational]) -> Option<Rational> + Send + Sync>;

type Rule = dyn Fn(&[NatFun], &Nat) -> Rational + Send + Sync;

/// `(f_j(r) − g_j(r))/(h_j(r) + 1)` for the `j`-th (0-based) argument.
pub fn input_approx(fns: &[NatFun], j: usize, r: &Nat) -> Rational {
    quotient(&fns[3 * j].eval(r), &fns[3 * j + 1].eval(r), &fns[3 * j + 2].eval(r))
}

/// A uniform function whose output at `t` is the rational `rule(fns, t)`,
/// re-encoded as a triple.
pub fn pointwise_uniform<F>(n: usize, label: &str, rule: F) -> UniformFn
where
    F: Fn(&[NatFun], &Nat) -> Rational + Send + Sync + 'static,
{
    let rule: Arc<Rule> = Arc::new(rule);
    let component = |c: usize| {
        let rule = rule.clone();
        Operator::direct(3 * n, format!("{label}.{}", ["f", "g", "h"][c]), move |fs, t| {
            let (p, m, d) = encode(&rule(fs, t));
            [p, m, d][c].clone()
        })
    };
    UniformFn::new(n, component(0), component(1), component(2)).expect("arity matches")
}

/// `2t + 1`: halves the error so that two inputs sum below `1/(t + 1)`.
fn doubled(t: &Nat) -> Nat {
    t * 2u32 + 1u32
}

pub fn negate() -> UniformFn {
    let p = |i| Operator::projection(3, i).expect("valid index");
    UniformFn::new(1, p(2), p(1), p(3)).expect("arity matches")
}

pub fn add() -> UniformFn {
    pointwise_uniform(2, "add", |fs, t| {
        let r = doubled(t);
        input_approx(fs, 0, &r) + input_approx(fs, 1, &r)
    })
}

pub fn sub() -> UniformFn {
    pointwise_uniform(2, "sub", |fs, t| {
        let r = doubled(t);
        input_approx(fs, 0, &r) - input_approx(fs, 1, &r)
    })
}

/// Queries at `r` with `r + 1 ≥ (t + 1)(|x₀| + |y₀| + 3)`, where `x₀, y₀` are
/// the index-0 approximations bounding the arguments' magnitudes.
pub fn mul() -> UniformFn {
    pointwise_uniform(2, "mul", |fs, t| {
        let zero = Nat::zero();
        let scale = input_approx(fs, 0, &zero).abs() + input_approx(fs, 1, &zero).abs() + rat(3, 1);
        let r1 = ceil_nat(&(scale * Rational::from_integer(nat_to_int(&(t + 1u32)))));
        let r = r1 - 1u32;
        input_approx(fs, 0, &r) * input_approx(fs, 1, &r)
    })
}

pub fn abs() -> UniformFn {
    pointwise_uniform(1, "abs", |fs, t| input_approx(fs, 0, t).abs())
}

pub fn min() -> UniformFn {
    pointwise_uniform(2, "min", |fs, t| {
        input_approx(fs, 0, t).min(input_approx(fs, 1, t))
    })
}

pub fn max() -> UniformFn {
    pointwise_uniform(2, "max", |fs, t| {
        input_approx(fs, 0, t).max(input_approx(fs, 1, t))
    })
}

/// The nullary function with value `q`.
pub fn constant(q: &Rational) -> UniformFn {
    let (p, m, d) = encode(q);
    let c = |v: Nat| Operator::constant(0, &constant_fn(v)).expect("nullary");
    UniformFn::new(0, c(p), c(m), c(d)).expect("arity matches")
}

/// `E(f, g, h)(s) = 0 ⇔ |x_s| > 2/(s + 1)` for `x_s = (f(s) − g(s))/(h(s) + 1)`,
/// through `gt_2` and `lt_{−2}` applied to `((s + 1)f(s), (s + 1)g(s), h(s))`.
pub fn recip_condition_term() -> OperatorTerm {
    let x = "(base mul (base succ (proj 1)) (apply 1 (proj 1)))";
    let y = "(base mul (base succ (proj 1)) (apply 2 (proj 1)))";
    let z = "(apply 3 (proj 1))";
    let src = format!(
        "(base delta_1 (base gt[2] {x} {y} {z}) \
         (base delta_1 (base lt[-2] {x} {y} {z}) (base const_1) (base const_0)) \
         (base const_0))"
    );
    OperatorTerm::parse(&src, 3, 1, &GadgetRegistry::default()).expect("well-formed")
}

/// Once `s` certifies `|ξ| > 1/(s + 1)`, the output at `t` inverts the input
/// approximation at `r = 2(t + 1)(s + 1)² − 1`.
pub fn recip() -> ConditionalFn {
    let e = Operator::from_term(recip_condition_term()).expect("unary output");
    let component = |c: usize| {
        Operator::direct(4, format!("recip.{}", ["f", "g", "h"][c]), move |fs, t| {
            let s1 = fs[3].eval(&Nat::zero()) + 1u32;
            let r = (t + 1u32) * &s1 * &s1 * 2u32 - 1u32;
            let num = nat_to_int(&fs[0].eval(&r)) - nat_to_int(&fs[1].eval(&r));
            let den = fs[2].eval(&r) + 1u32;
            if num.is_zero() {
                return Nat::zero();
            }
            let mag = num.magnitude() - 1u32;
            let out = if num.is_positive() {
                [den, Nat::zero(), mag]
            } else {
                [Nat::zero(), den, mag]
            };
            out[c].clone()
        })
    };
    ConditionalFn::new(1, e, component(0), component(1), component(2)).expect("arity matches")
}

/// A registered function.
#[derive(Clone, Debug)]
pub enum RealFn {
    Uniform(UniformFn),
    Conditional(ConditionalFn),
}

/// Result of applying a [`RealFn`]: the name and, for conditional
/// functions, the parameter found.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub name: NameTriple,
    pub s: Option<Nat>,
}

impl RealFn {
    pub fn arity(&self) -> usize {
        match self {
            RealFn::Uniform(u) => u.arity(),
            RealFn::Conditional(c) => c.arity(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RealFn::Uniform(_) => "uniform",
            RealFn::Conditional(_) => "conditional",
        }
    }

    pub fn to_conditional(&self) -> ConditionalFn {
        match self {
            RealFn::Uniform(u) => embed_uniform(u),
            RealFn::Conditional(c) => c.clone(),
        }
    }

    pub fn apply(&self, names: &[NameTriple], budget: u64) -> Result<Evaluated> {
        match self {
            RealFn::Uniform(u) => Ok(Evaluated {
                name: u.apply(names)?,
                s: None,
            }),
            RealFn::Conditional(c) => {
                let a = c.apply(names, budget)?;
                Ok(Evaluated {
                    name: a.name,
                    s: Some(a.s),
                })
            }
        }
    }
}

#[derive(Clone)]
pub struct Entry {
    pub name: String,
    pub fun: RealFn,
    pub oracle: Option<Oracle>,
}

impl Entry {
    pub fn new(name: &str, fun: RealFn, oracle: Option<Oracle>) -> Self {
        Entry {
            name: name.to_string(),
            fun,
            oracle,
        }
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} ({})", self.name, self.fun.arity(), self.fun.kind())
    }
}

/// The rational test grid.
pub fn test_grid() -> Vec<Rational> {
    [(-3, 1), (-3, 2), (0, 1), (1, 7), (1, 2), (2, 1), (22, 7)]
        .iter()
        .map(|&(p, q)| rat(p, q))
        .collect()
}

/// Budget for parameter searches during validation.
pub const VALIDATION_BUDGET: u64 = 100_000;

/// Index bound checked when an entry is registered.
pub const REGISTRATION_T_MAX: u64 = 50;

#[derive(Clone, Debug, Default)]
pub struct FunctionRegistry {
    entries: BTreeMap<String, Entry>,
}

impl FunctionRegistry {
    pub fn new() -> Self {
        FunctionRegistry::default()
    }

    /// Adds an entry after checking it on the test grid.
    pub fn register(&mut self, entry: Entry) -> Result<()> {
        if self.entries.contains_key(&entry.name) {
            return Err(Error::InvalidParameter(format!(
                "function `{}` is already registered",
                entry.name
            )));
        }
        let report = validate_entry(&entry, REGISTRATION_T_MAX);
        if let Some(bad) = report.iter().find(|c| !c.pass()) {
            return Err(Error::InvalidParameter(format!(
                "`{}` failed validation: {bad}",
                entry.name
            )));
        }
        self.entries.insert(entry.name.clone(), entry);
        Ok(())
    }

    /// Adds or replaces an entry without validation.
    pub fn insert_unvalidated(&mut self, entry: Entry) {
        self.entries.insert(entry.name.clone(), entry);
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn oracle1(f: fn(&Rational) -> Option<Rational>) -> Option<Oracle> {
    Some(Arc::new(move |a: &[Rational]| f(&a[0])))
}

fn oracle2(f: fn(&Rational, &Rational) -> Option<Rational>) -> Option<Oracle> {
    Some(Arc::new(move |a: &[Rational]| f(&a[0], &a[1])))
}

/// negate, add, sub, mul, abs, min, max (uniform) and recip (conditional).
pub fn register_builtins() -> FunctionRegistry {
    let mut reg = FunctionRegistry::new();
    let entries = [
        Entry::new("neg", RealFn::Uniform(negate()), oracle1(|x| Some(-x))),
        Entry::new("add", RealFn::Uniform(add()), oracle2(|x, y| Some(x + y))),
        Entry::new("sub", RealFn::Uniform(sub()), oracle2(|x, y| Some(x - y))),
        Entry::new("mul", RealFn::Uniform(mul()), oracle2(|x, y| Some(x * y))),
        Entry::new("abs", RealFn::Uniform(abs()), oracle1(|x| Some(x.abs()))),
        Entry::new("min", RealFn::Uniform(min()), oracle2(|x, y| Some(x.min(y).clone()))),
        Entry::new("max", RealFn::Uniform(max()), oracle2(|x, y| Some(x.max(y).clone()))),
        Entry::new(
            "recip",
            RealFn::Conditional(recip()),
            oracle1(|x| (!x.is_zero()).then(|| x.recip())),
        ),
    ];
    for e in entries {
        reg.register(e).expect("builtins validate");
    }
    reg
}

/// Outcome of one (function, arguments) validation.
#[derive(Clone, Debug)]
pub enum Outcome {
    Pass,
    Fail(ValidationRow),
    Error(Error),
}

#[derive(Clone, Debug)]
pub struct FnCheck {
    pub name: String,
    pub args: Vec<Rational>,
    pub expected: Rational,
    pub s: Option<Nat>,
    pub outcome: Outcome,
}

impl FnCheck {
    pub fn pass(&self) -> bool {
        matches!(self.outcome, Outcome::Pass)
    }
}

impl fmt::Display for FnCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(format_rational).collect();
        write!(
            f,
            "{}({}) = {}",
            self.name,
            args.join(", "),
            format_rational(&self.expected)
        )?;
        if let Some(s) = &self.s {
            write!(f, " s={s}")?;
        }
        match &self.outcome {
            Outcome::Pass => write!(f, ": pass"),
            Outcome::Fail(row) => write!(f, ": FAIL {row}"),
            Outcome::Error(e) => write!(f, ": ERROR {e}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RegistryReport {
    pub checks: Vec<FnCheck>,
}

impl RegistryReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(FnCheck::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FnCheck> {
        self.checks.iter().filter(|c| !c.pass())
    }
}

impl fmt::Display for RegistryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "overall={}", if self.pass() { "pass" } else { "fail" })
    }
}

fn grid_tuples(n: usize) -> Vec<Vec<Rational>> {
    let grid = test_grid();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |q| {
                    let mut v = p.clone();
                    v.push(q.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Validates one function at one argument tuple against an exact value.
pub fn check_at(
    name: &str,
    fun: &RealFn,
    args: &[Rational],
    expected: &Rational,
    t_max: u64,
) -> FnCheck {
    let names: Vec<NameTriple> = args.iter().map(crate::naming::rational_name).collect();
    let (s, outcome) = match fun.apply(&names, VALIDATION_BUDGET) {
        Err(e) => (None, Outcome::Error(e)),
        Ok(ev) => {
            let report = validate_name(&ev.name, expected, t_max);
            let outcome = match report.first_failure() {
                None => Outcome::Pass,
                Some(row) => Outcome::Fail(row.clone()),
            };
            (ev.s, outcome)
        }
    };
    FnCheck {
        name: name.to_string(),
        args: args.to_vec(),
        expected: expected.clone(),
        s,
        outcome,
    }
}

fn validate_entry(entry: &Entry, t_max: u64) -> Vec<FnCheck> {
    let Some(oracle) = &entry.oracle else {
        return vec![];
    };
    grid_tuples(entry.fun.arity())
        .into_iter()
        .filter_map(|args| {
            let expected = oracle(&args)?;
            Some(check_at(&entry.name, &entry.fun, &args, &expected, t_max))
        })
        .collect()
}

/// Validates every entry with an oracle over the test grid.
pub fn registry_validate(reg: &FunctionRegistry, t_max: u64) -> RegistryReport {
    RegistryReport {
        checks: reg
            .entries()
            .flat_map(|e| validate_entry(e, t_max))
            .collect(),
    }
}

/// `(f, g, h)` naming `1/x` evaluated through an explicit `s`, used to check
/// every admissible parameter and not only the first.
pub fn recip_at(input: &NameTriple, s: &Nat) -> Result<NameTriple> {
    recip().apply_at(std::slice::from_ref(input), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::naming::{rat_int, rational_name};

    fn eval(name: &str, args: &[Rational]) -> NameTriple {
        let reg = register_builtins();
        let names: Vec<_> = args.iter().map(rational_name).collect();
        reg.get(name).unwrap().fun.apply(&names, 10_000).unwrap().name
    }

    #[test]
    fn worked_examples() {
        let out = eval("add", &[rat(1, 2), rat(1, 3)]);
        assert!(validate_name(&out, &rat(5, 6), 1000).pass());
        let out = eval("abs", &[rat(-7, 5)]);
        assert!(validate_name(&out, &rat(7, 5), 1000).pass());
        let out = eval("mul", &[rat(-3, 4), rat_int(8)]);
        assert!(validate_name(&out, &rat_int(-6), 500).pass());
        let out = eval("recip", &[rat(1, 2)]);
        assert!(validate_name(&out, &rat_int(2), 500).pass());
    }

    #[test]
    fn recip_of_zero_is_inconclusive() {
        let r = recip();
        let zero = [rational_name(&rat_int(0))];
        assert_eq!(
            r.search(&zero, 1000).unwrap_err(),
            Error::BudgetExhausted { budget: 1000 }
        );
    }

    #[test]
    fn recip_parameter_grows_as_input_shrinks() {
        let r = recip();
        let mut last = None;
        for d in [1, 10, 100, 1000] {
            let s = r.search(&[rational_name(&rat(1, d))], 100_000).unwrap();
            assert_eq!(s, Nat::from(2 * d as u64));
            if let Some(prev) = last {
                assert!(s > prev);
            }
            last = Some(s);
        }
    }

    #[test]
    fn recip_condition_matches_rational_comparison() {
        let e = recip_condition_term();
        let names: Vec<_> = test_grid()
            .iter()
            .chain([rat(-1, 9), rat(2, 5)].iter())
            .map(rational_name)
            .collect();
        for name in &names {
            for s in 0..40u64 {
                let s = Nat::from(s);
                let x = name.approx(&s);
                let certified = x.abs() > Rational::new(2.into(), nat_to_int(&(&s + 1u32)));
                let v = e.eval(&name.functions(), std::slice::from_ref(&s)).unwrap();
                assert_eq!(v.is_zero(), certified, "x={x} s={s}");
            }
        }
    }

    #[test]
    fn constants_and_registry() {
        let c = constant(&rat(-22, 7));
        assert!(c.is_term());
        let name = c.apply(&[]).unwrap();
        assert_eq!(name.approx_at(17), rat(-22, 7));
        assert!(registry_validate(&FunctionRegistry::new(), 10).pass());
        assert!(registry_validate(&FunctionRegistry::new(), 10).checks.is_empty());
        let mut reg = register_builtins();
        assert!(reg
            .register(Entry::new("add", RealFn::Uniform(add()), None))
            .is_err());
        assert_eq!(reg.entries().count(), 8);
    }
}
