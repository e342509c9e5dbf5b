//! Uniformly and conditionally computable real functions, and the
//! constructions on them: embedding, composition, localization and gluing.

mod glue;
mod localize;

use std::fmt;

use num_traits::Zero;

pub use glue::{check_separation, dispatch_index, glue_compact, separation, Ball, BallCover, Separation};
pub use localize::{localize, patch_direct, patch_operator, Localized, Neighborhood};
pub(crate) use localize::patch;

use crate::error::{check_arity, Error, Result};
use crate::gadgets::{conj_fn, left_fn, right_fn};
use crate::naming::{NameTriple, Nat, NatFun};
use crate::terms::{BaseFunction, Operator};

/// `(F, G, H)`: `3N`-ary operators mapping names of `ξ₁…ξ_N` to a name of
/// `θ(ξ₁…ξ_N)`.
#[derive(Clone, Debug)]
pub struct UniformFn {
    n: usize,
    ops: [Operator; 3],
}

impl UniformFn {
    pub fn new(n: usize, f: Operator, g: Operator, h: Operator) -> Result<Self> {
        for op in [&f, &g, &h] {
            check_arity("uniform operator arity", 3 * n, op.arity())?;
        }
        Ok(UniformFn { n, ops: [f, g, h] })
    }

    /// `ξ₁…ξ_N ↦ ξ_j` via projections onto `(f_j, g_j, h_j)`.
    pub fn projection(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange {
                context: "uniform projection",
                index: j,
                max: n,
            });
        }
        let p = |i| Operator::projection(3 * n, 3 * (j - 1) + i);
        UniformFn::new(n, p(1)?, p(2)?, p(3)?)
    }

    pub fn identity() -> Self {
        UniformFn::projection(1, 1).expect("valid projection")
    }

    /// Number of real arguments `N`.
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[Operator; 3] {
        &self.ops
    }

    pub fn apply(&self, names: &[NameTriple]) -> Result<NameTriple> {
        check_arity("uniform function arguments", self.n, names.len())?;
        let fns = NameTriple::flatten(names);
        let [f, g, h] = &self.ops;
        Ok(NameTriple::new(f.apply(&fns)?, g.apply(&fns)?, h.apply(&fns)?))
    }

    /// True when all three operators are substitutional terms.
    pub fn is_term(&self) -> bool {
        self.ops.iter().all(Operator::is_term)
    }
}

pub fn apply_uniform(fun: &UniformFn, names: &[NameTriple]) -> Result<NameTriple> {
    fun.apply(names)
}

/// `(E, F, G, H)`: `E` is `3N`-ary, `F, G, H` take the parameter function
/// `č_s` as their last argument. Any `s` with `E(…)(s) = 0` gives a name of
/// the value through `(F, G, H)(…, č_s)`.
#[derive(Clone, Debug)]
pub struct ConditionalFn {
    n: usize,
    e: Operator,
    ops: [Operator; 3],
}

impl ConditionalFn {
    pub fn new(n: usize, e: Operator, f: Operator, g: Operator, h: Operator) -> Result<Self> {
        check_arity("condition operator arity", 3 * n, e.arity())?;
        for op in [&f, &g, &h] {
            check_arity("conditional operator arity", 3 * n + 1, op.arity())?;
        }
        Ok(ConditionalFn { n, e, ops: [f, g, h] })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn condition(&self) -> &Operator {
        &self.e
    }

    pub fn operators(&self) -> &[Operator; 3] {
        &self.ops
    }

    /// `E(f₁, g₁, h₁, …)(s)`.
    pub fn condition_at(&self, names: &[NameTriple], s: &Nat) -> Result<Nat> {
        check_arity("conditional function arguments", self.n, names.len())?;
        self.e.eval_at(&NameTriple::flatten(names), s)
    }

    /// Least `s < budget` with `E(…)(s) = 0`.
    pub fn search(&self, names: &[NameTriple], budget: u64) -> Result<Nat> {
        check_arity("conditional function arguments", self.n, names.len())?;
        search_condition(&self.e, &NameTriple::flatten(names), budget)
    }

    /// `(F, G, H)(…, č_s)`, whether or not `s` satisfies the condition.
    pub fn apply_at(&self, names: &[NameTriple], s: &Nat) -> Result<NameTriple> {
        check_arity("conditional function arguments", self.n, names.len())?;
        let mut fns = NameTriple::flatten(names);
        fns.push(NatFun::constant(s.clone()));
        let [f, g, h] = &self.ops;
        Ok(NameTriple::new(f.apply(&fns)?, g.apply(&fns)?, h.apply(&fns)?))
    }

    /// Searches for `s`, then applies at it.
    pub fn apply(&self, names: &[NameTriple], budget: u64) -> Result<Applied> {
        let s = self.search(names, budget)?;
        let name = self.apply_at(names, &s)?;
        Ok(Applied { s, name })
    }
}

/// A conditional application: the parameter found and the resulting name.
#[derive(Clone, Debug)]
pub struct Applied {
    pub s: Nat,
    pub name: NameTriple,
}

impl fmt::Display for Applied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}", self.s)
    }
}

pub(crate) fn search_condition(e: &Operator, fns: &[NatFun], budget: u64) -> Result<Nat> {
    let mut s = Nat::zero();
    for _ in 0..budget {
        if e.eval_at(fns, &s)?.is_zero() {
            return Ok(s);
        }
        s += 1u32;
    }
    Err(Error::BudgetExhausted { budget })
}

pub fn apply_conditional(
    fun: &ConditionalFn,
    names: &[NameTriple],
    budget: u64,
) -> Result<NameTriple> {
    Ok(fun.apply(names, budget)?.name)
}

/// `E = id_ℕ` (so `s = 0` always works) and `F, G, H` ignore the parameter.
pub fn embed_uniform(fun: &UniformFn) -> ConditionalFn {
    let k = 3 * fun.n;
    let projs: Vec<Operator> = (1..=k)
        .map(|i| Operator::projection(k + 1, i).expect("valid index"))
        .collect();
    let widen = |op: &Operator| op.compose_with_arity(&projs, k + 1).expect("arity checked");
    let [f, g, h] = &fun.ops;
    ConditionalFn::new(fun.n, Operator::identity(k), widen(f), widen(g), widen(h))
        .expect("arity checked")
}

/// `T(f…, e) = T₀(T₁(f…, R̊(e)), L̊(e))` and
/// `E(f…)(s) = C(E₁(f…)(R(s)), E₀(T₁(f…, R̊(č_s)))(L(s)))`, for `k` input
/// functions. `outs1` are the inner output operators (arity `k + 1`), `e0`
/// and `outs0` the outer condition and outputs over `outs1.len()` functions.
pub(crate) fn compose_parts(
    k: usize,
    e1: &Operator,
    outs1: &[Operator],
    e0: &Operator,
    outs0: &[Operator],
) -> Result<(Operator, Vec<Operator>)> {
    let w = k + 1;
    let projs = (1..=k)
        .map(|i| Operator::projection(w, i))
        .collect::<Result<Vec<_>>>()?;
    let param = Operator::projection(w, w)?;
    let r_param = Operator::lift(&right_fn()).compose(std::slice::from_ref(&param))?;
    let l_param = Operator::lift(&left_fn()).compose(&[param])?;

    let mut inner_args = projs.clone();
    inner_args.push(r_param);
    let mids = outs1
        .iter()
        .map(|op| op.compose(&inner_args))
        .collect::<Result<Vec<_>>>()?;

    let at = |op: Operator, g: &BaseFunction| -> Result<Operator> {
        Operator::binary_composition().compose(&[op, Operator::constant_function(w, g)?])
    };
    let first = at(e1.compose_with_arity(&projs, w)?, &right_fn())?;
    let second = at(e0.compose_with_arity(&mids, w)?, &left_fn())?;
    let e = Operator::base_of(&conj_fn(), &[first, second])?.diagonalize()?;

    let mut outer_args = mids;
    outer_args.push(l_param);
    let outs = outs0
        .iter()
        .map(|op| op.compose(&outer_args))
        .collect::<Result<Vec<_>>>()?;
    Ok((e, outs))
}

/// `θ₀ ∘ θ₁` for unary conditional functions. A found `s` decodes as
/// `(L(s), R(s)) = (s₀, s₁)` with `s₁` certifying the inner function and `s₀`
/// the outer one on the inner output.
pub fn compose_conditional(outer: &ConditionalFn, inner: &ConditionalFn) -> Result<ConditionalFn> {
    check_arity("composition outer arity", 1, outer.n)?;
    check_arity("composition inner arity", 1, inner.n)?;
    let (e, outs) = compose_parts(3, &inner.e, &inner.ops, &outer.e, &outer.ops)?;
    let [f, g, h]: [Operator; 3] = outs.try_into().expect("three outputs");
    ConditionalFn::new(1, e, f, g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{left, right};
    use crate::naming::{rat, rational_name, validate_name};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn identity_validates() {
        let q = rat(2, 3);
        let out = apply_uniform(&UniformFn::identity(), &[rational_name(&q)]).unwrap();
        assert!(validate_name(&out, &q, 500).pass());
        assert!(UniformFn::identity().is_term());
    }

    #[test]
    fn uniform_arity_checked() {
        let id = UniformFn::identity();
        let q = rational_name(&rat(1, 2));
        assert!(id.apply(&[q.clone(), q]).is_err());
        assert!(UniformFn::projection(2, 3).is_err());
        assert!(UniformFn::new(1, Operator::identity(2), Operator::identity(3), Operator::identity(3)).is_err());
    }

    #[test]
    fn embedded_identity() {
        let c = embed_uniform(&UniformFn::identity());
        let q = rat(5, 1);
        let names = [rational_name(&q)];
        let applied = c.apply(&names, 1).unwrap();
        assert_eq!(applied.s, n(0));
        assert!(validate_name(&applied.name, &q, 200).pass());
        assert!(c.condition().is_term());
        for s in 0..5u64 {
            assert_eq!(c.condition_at(&names, &n(s)).unwrap(), n(s));
        }
    }

    #[test]
    fn zero_budget_is_inconclusive() {
        let c = embed_uniform(&UniformFn::identity());
        let names = [rational_name(&rat(1, 1))];
        assert_eq!(c.search(&names, 0), Err(Error::BudgetExhausted { budget: 0 }));
    }

    #[test]
    fn composition_of_embedded_identities_stays_a_term() {
        let id = embed_uniform(&UniformFn::identity());
        let c = compose_conditional(&id, &id).unwrap();
        assert!(c.condition().is_term());
        assert!(c.operators().iter().all(Operator::is_term));
        let q = rat(-7, 3);
        let names = [rational_name(&q)];
        let applied = c.apply(&names, 10).unwrap();
        assert_eq!(applied.s, n(0));
        assert!(validate_name(&applied.name, &q, 300).pass());
        // E(s) = C(id(R(s)), id(L(s))) = L(s) + R(s)
        for s in 0..40u64 {
            let s = n(s);
            assert_eq!(c.condition_at(&names, &s).unwrap(), left(&s) + right(&s));
        }
    }
}
