use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::{same_space, OrdinaryName, Space};
use crate::computable::{compose_parts, patch, search_condition};
use crate::error::{check_arity, Error, Result};
use crate::gadgets::{conj_fn, constant_fn, delta_fn, project_fn, tuple_fn};
use crate::naming::{bound, Nat, NatFun, Rational};
use crate::terms::{Node, Operator, OperatorTerm};

/// `θ : M → M′` with `T(f)` an ordinary name of `θ(ξ)` for every ordinary
/// name `f` of `ξ`.
#[derive(Clone, Debug)]
pub struct MsUniformFn {
    pub domain: Space,
    pub codomain: Space,
    t: Operator,
}

impl MsUniformFn {
    pub fn new(domain: Space, codomain: Space, t: Operator) -> Result<Self> {
        check_arity("metric uniform operator arity", 1, t.arity())?;
        Ok(MsUniformFn { domain, codomain, t })
    }

    pub fn identity(space: Space) -> Self {
        MsUniformFn::new(space.clone(), space, Operator::projection(1, 1).expect("valid index"))
            .expect("unary")
    }

    pub fn operator(&self) -> &Operator {
        &self.t
    }

    pub fn apply(&self, name: &OrdinaryName) -> Result<OrdinaryName> {
        same_space(&self.domain, &name.space)?;
        Ok(OrdinaryName::new(
            self.t.apply(std::slice::from_ref(&name.f))?,
            self.codomain.clone(),
        ))
    }
}

/// `(E, T)`: some `s` has `E(f)(s) = 0`, and any such `s` makes `T(f, č_s)`
/// an ordinary name of `θ(ξ)`.
#[derive(Clone, Debug)]
pub struct MsConditionalFn {
    pub domain: Space,
    pub codomain: Space,
    e: Operator,
    t: Operator,
}

impl MsConditionalFn {
    pub fn new(domain: Space, codomain: Space, e: Operator, t: Operator) -> Result<Self> {
        check_arity("metric condition operator arity", 1, e.arity())?;
        check_arity("metric conditional operator arity", 2, t.arity())?;
        Ok(MsConditionalFn {
            domain,
            codomain,
            e,
            t,
        })
    }

    pub fn condition(&self) -> &Operator {
        &self.e
    }

    pub fn operator(&self) -> &Operator {
        &self.t
    }

    pub fn condition_at(&self, name: &OrdinaryName, s: &Nat) -> Result<Nat> {
        same_space(&self.domain, &name.space)?;
        self.e.eval_at(std::slice::from_ref(&name.f), s)
    }

    /// Whether `E(f)(s) = 0`.
    pub fn accepts(&self, name: &OrdinaryName, s: &Nat) -> Result<bool> {
        Ok(self.condition_at(name, s)?.is_zero())
    }

    pub fn search(&self, name: &OrdinaryName, budget: u64) -> Result<Nat> {
        same_space(&self.domain, &name.space)?;
        search_condition(&self.e, std::slice::from_ref(&name.f), budget)
    }

    pub fn apply_at(&self, name: &OrdinaryName, s: &Nat) -> Result<OrdinaryName> {
        same_space(&self.domain, &name.space)?;
        let args = [name.f.clone(), NatFun::constant(s.clone())];
        Ok(OrdinaryName::new(self.t.apply(&args)?, self.codomain.clone()))
    }

    pub fn apply(&self, name: &OrdinaryName, budget: u64) -> Result<MsApplied> {
        let s = self.search(name, budget)?;
        let name = self.apply_at(name, &s)?;
        Ok(MsApplied { s, name })
    }
}

#[derive(Clone, Debug)]
pub struct MsApplied {
    pub s: Nat,
    pub name: OrdinaryName,
}

impl fmt::Display for MsApplied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}", self.s)
    }
}

pub fn apply_uniform_ms(fun: &MsUniformFn, name: &OrdinaryName) -> Result<OrdinaryName> {
    fun.apply(name)
}

pub fn apply_conditional_ms(
    fun: &MsConditionalFn,
    name: &OrdinaryName,
    budget: u64,
) -> Result<OrdinaryName> {
    Ok(fun.apply(name, budget)?.name)
}

/// `E = id_ℕ`, `T(f, e) = T₀(f)`.
pub fn embed_uniform_ms(fun: &MsUniformFn) -> MsConditionalFn {
    let p = Operator::projection(2, 1).expect("valid index");
    let t = fun.t.compose(&[p]).expect("unary");
    MsConditionalFn::new(fun.domain.clone(), fun.codomain.clone(), Operator::identity(1), t)
        .expect("arity checked")
}

/// `E(f)(s) = C(E₁(f)(R(s)), E₀(T₁(f, R̊(č_s)))(L(s)))` and
/// `T(f, e) = T₀(T₁(f, R̊(e)), L̊(e))`.
pub fn compose_conditional_ms(
    outer: &MsConditionalFn,
    inner: &MsConditionalFn,
) -> Result<MsConditionalFn> {
    same_space(&outer.domain, &inner.codomain)?;
    let (e, outs) = compose_parts(
        1,
        &inner.e,
        std::slice::from_ref(&inner.t),
        &outer.e,
        std::slice::from_ref(&outer.t),
    )?;
    let t = outs.into_iter().next().expect("one output");
    MsConditionalFn::new(inner.domain.clone(), outer.codomain.clone(), e, t)
}

/// `U = ∩_{t ≤ u} { ξ : d(α(f₀(t)), ξ) < 1/(t + 1) }`.
#[derive(Clone, Debug)]
pub struct MsNeighborhood {
    pub space: Space,
    pub anchors: Vec<Nat>,
    pub u: usize,
}

impl MsNeighborhood {
    pub fn from_name(name: &OrdinaryName, u: usize) -> Self {
        MsNeighborhood {
            space: name.space.clone(),
            anchors: (0..=u).map(|t| name.f.eval(&Nat::from(t))).collect(),
            u,
        }
    }

    /// Whether the coded point `code` lies in `U`.
    pub fn contains(&self, code: &Nat) -> bool {
        self.space.in_domain(code)
            && self
                .anchors
                .iter()
                .enumerate()
                .all(|(t, a)| self.space.dist_lt(a, code, &bound(&Nat::from(t))))
    }
}

impl fmt::Display for MsNeighborhood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U in {} (u={}):", self.space.name(), self.u)?;
        for (t, a) in self.anchors.iter().enumerate() {
            write!(f, " d(., {}) < 1/{}", self.space.describe(a), t + 1)?;
            if t < self.u {
                f.write_str(" and")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MsLocalized {
    pub s0: Nat,
    pub neighborhood: MsNeighborhood,
    pub uniform: MsUniformFn,
}

/// `T₀(f) = T(P(f), č_{s₀})` with `P = ᵘ⁺¹f₀`.
pub fn localize_ms(fun: &MsConditionalFn, at: &OrdinaryName, budget: u64) -> Result<MsLocalized> {
    let s0 = fun.search(at, budget)?;
    let (_, trace) = fun.e.eval_traced(std::slice::from_ref(&at.f), &s0)?;
    let u = match trace.max_argument() {
        None => 0,
        Some(m) => m.to_usize().ok_or_else(|| {
            Error::InvalidParameter(format!("continuity modulus {m} is too large"))
        })?,
    };
    let p = patch(&at.f, u + 1);
    let t = fun
        .t
        .compose(&[p, Operator::constant(1, &constant_fn(s0.clone()))?])?;
    Ok(MsLocalized {
        s0,
        neighborhood: MsNeighborhood::from_name(at, u),
        uniform: MsUniformFn::new(fun.domain.clone(), fun.codomain.clone(), t)?,
    })
}

/// `{ ξ : d(ξ, α(center)) < radius }` with a uniform function valid there.
#[derive(Clone, Debug)]
pub struct MsBall {
    pub center: Nat,
    pub radius: Rational,
    pub local: MsUniformFn,
}

/// `T(f)(t) = δ_K(e₁(f(k)), T₁(f)(t), …, e_K(f(k)), T_K(f)(t), 0)` with
/// `e_i(n) = 0 ⇔ d(α(n), a_i) < d_i − 1/(k + 1)`.
pub fn glue_compact_ms(cover: &[MsBall], k: u64) -> Result<MsUniformFn> {
    let first = cover.first().ok_or(Error::EmptyCover)?;
    let (domain, codomain) = (first.local.domain.clone(), first.local.codomain.clone());
    let shrink = bound(&Nat::from(k));
    let kc = constant_fn(k);
    let mut subs = Vec::with_capacity(2 * cover.len() + 1);
    for ball in cover {
        same_space(&domain, &ball.local.domain)?;
        same_space(&codomain, &ball.local.codomain)?;
        let e = domain.ball_indicator(&ball.center, &(&ball.radius - &shrink))?;
        let sel = Node::base(&e, vec![Node::apply(1, Node::base(&kc, vec![]))]);
        subs.push(Operator::from_term(OperatorTerm::new(1, 1, sel)?)?);
        subs.push(ball.local.t.clone());
    }
    subs.push(Operator::constant(1, &constant_fn(0u32))?);
    let t = Operator::base_of(&delta_fn(cover.len()), &subs)?;
    MsUniformFn::new(domain, codomain, t)
}

/// The least (0-based) ball the glued function selects for `name`.
pub fn ms_dispatch_index(cover: &[MsBall], k: u64, name: &OrdinaryName) -> Option<usize> {
    let probe = name.f.at(k);
    let shrink = bound(&Nat::from(k));
    cover.iter().position(|b| {
        b.local
            .domain
            .dist_lt(&probe, &b.center, &(&b.radius - &shrink))
    })
}

/// `θ(ξ) = (θ₁(ξ), …, θ_K(ξ))` into `M_K`. The parameter decodes as
/// `(P_{K,1}(s), …, P_{K,K}(s))`; `E` is the `C`-fold of
/// `E_i(f)(P_{K,i}(s))` and `T` re-codes the `3K` components of the
/// outputs `T_i(f, P̊_{K,i}(e))` through `J_{3K}`.
pub fn tuple_conditional(fns: &[MsConditionalFn]) -> Result<MsConditionalFn> {
    let first = fns.first().ok_or_else(|| {
        Error::InvalidParameter("tuple_conditional needs at least one component".into())
    })?;
    let k = fns.len();
    let m1 = super::make_mn(1)?;
    for c in fns {
        same_space(&first.domain, &c.domain)?;
        same_space(&m1, &c.codomain)?;
    }
    let at_part = |i: usize| project_fn(k, i);
    let mut conds = fns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Operator::binary_composition()
                .compose(&[c.e.clone(), Operator::constant_function(1, &at_part(i + 1)?)?])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut e = conds.pop().expect("k >= 1");
    while let Some(c) = conds.pop() {
        e = Operator::base_of(&conj_fn(), &[c, e])?;
    }

    let f_arg = Operator::projection(2, 1)?;
    let e_arg = Operator::projection(2, 2)?;
    let mut parts = Vec::with_capacity(3 * k);
    for (i, c) in fns.iter().enumerate() {
        let param = Operator::lift(&at_part(i + 1)?).compose(std::slice::from_ref(&e_arg))?;
        let out = c.t.compose(&[f_arg.clone(), param])?;
        for j in 1..=3 {
            parts.push(Operator::lift(&project_fn(3, j)?).compose(std::slice::from_ref(&out))?);
        }
    }
    let t = Operator::base_of(&tuple_fn(3 * k)?, &parts)?;
    MsConditionalFn::new(first.domain.clone(), super::make_mn(k)?, e, t)
}
