use num_traits::{Signed, ToPrimitive};

use super::{ConditionalFn, UniformFn};
use crate::error::{check_arity, Error, Result};
use crate::gadgets::{constant_fn, mu};
use crate::naming::{bound, quotient, NameTriple, Nat, NatFun, Rational};
use crate::terms::{Node, Operator, OperatorTerm};

/// Longest `μ`-chain used for patching; longer patches use the case
/// definition, which denotes the same operator.
const MAX_CHAIN: usize = 2048;

/// `ᵏa` as a substitutional term: `⁰a(f) = f` and
/// `ᵏ⁺¹a(f)(t) = μ_{k,a(k)}(t, ᵏa(f)(t))`.
pub fn patch_operator(anchor: &NatFun, k: usize) -> Operator {
    let mut node = Node::apply(1, Node::proj(1));
    for j in 0..k {
        let j = Nat::from(j);
        let c = anchor.eval(&j);
        node = Node::base(&mu(j, c), vec![Node::proj(1), node]);
    }
    Operator::from_term(OperatorTerm::new(1, 1, node).expect("well-formed")).expect("unary")
}

/// `ᵏa(f)(t) = a(t)` if `t < k`, `f(t)` otherwise.
pub fn patch_direct(anchor: &NatFun, k: usize) -> Operator {
    let anchor = anchor.clone();
    let k = Nat::from(k);
    Operator::direct(1, format!("patch<{k}"), move |fs, t| {
        if t < &k {
            anchor.eval(t)
        } else {
            fs[0].eval(t)
        }
    })
}

pub(crate) fn patch(anchor: &NatFun, k: usize) -> Operator {
    if k <= MAX_CHAIN {
        patch_operator(anchor, k)
    } else {
        patch_direct(anchor, k)
    }
}

/// `U = ∩_{t ≤ u} { ξ : |(f₀(t) − g₀(t))/(h₀(t) + 1) − ξ| < 1/(t + 1) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighborhood {
    pub anchors: Vec<(Nat, Nat, Nat)>,
    pub u: usize,
}

impl Neighborhood {
    pub fn from_name(name: &NameTriple, u: usize) -> Self {
        let anchors = (0..=u)
            .map(|t| {
                let t = Nat::from(t);
                (name.f.eval(&t), name.g.eval(&t), name.h.eval(&t))
            })
            .collect();
        Neighborhood { anchors, u }
    }

    fn constraints(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        self.anchors
            .iter()
            .enumerate()
            .map(|(t, (f, g, h))| (quotient(f, g, h), bound(&Nat::from(t))))
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.constraints().all(|(x, b)| (x - q).abs() < b)
    }

    /// `U` as an open interval `(lo, hi)`; empty when `lo ≥ hi`.
    pub fn interval(&self) -> (Rational, Rational) {
        let mut it = self.constraints().map(|(x, b)| (&x - &b, x + b));
        let first = it.next().expect("at least one anchor");
        it.fold(first, |(lo, hi), (l, h)| (lo.max(l), hi.min(h)))
    }
}

/// Result of [`localize`].
#[derive(Clone, Debug)]
pub struct Localized {
    pub s0: Nat,
    pub neighborhood: Neighborhood,
    pub uniform: UniformFn,
    /// The patching operators `(P, Q, R)`.
    pub patches: [Operator; 3],
}

/// Finds `s₀` for the name `at`, takes `u` from the queries `E` makes at
/// `s₀`, and returns `F₀(f, g, h) = F(P(f), Q(g), R(h), č_{s₀})` with
/// `P = ᵘ⁺¹f₀`, `Q = ᵘ⁺¹g₀`, `R = ᵘ⁺¹h₀`.
pub fn localize(fun: &ConditionalFn, at: &NameTriple, budget: u64) -> Result<Localized> {
    check_arity("localize arity", 1, fun.arity())?;
    let names = std::slice::from_ref(at);
    let s0 = fun.search(names, budget)?;
    let fns = NameTriple::flatten(names);
    let (_, trace) = fun.condition().eval_traced(&fns, &s0)?;
    let u = match trace.max_argument() {
        None => 0,
        Some(m) => m.to_usize().ok_or_else(|| {
            Error::InvalidParameter(format!("continuity modulus {m} is too large"))
        })?,
    };
    let patches = [patch(&at.f, u + 1), patch(&at.g, u + 1), patch(&at.h, u + 1)];
    let mut args = patches
        .iter()
        .enumerate()
        .map(|(i, p)| p.compose(&[Operator::projection(3, i + 1)?]))
        .collect::<Result<Vec<_>>>()?;
    args.push(Operator::constant(3, &constant_fn(s0.clone()))?);
    let [f, g, h] = fun.operators();
    let uniform = UniformFn::new(1, f.compose(&args)?, g.compose(&args)?, h.compose(&args)?)?;
    Ok(Localized {
        s0,
        neighborhood: Neighborhood::from_name(at, u),
        uniform,
        patches,
    })
}
