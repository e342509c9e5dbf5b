//! Structural constructions on operator terms. Each one is a pure rewrite
//! following the clause structure of the term.

use std::sync::Arc;

use super::base::BaseFunction;
use super::term::{Node, OperatorTerm};
use crate::error::{check_arity, Error, Result};

fn require_unary_output(context: &'static str, t: &OperatorTerm) -> Result<()> {
    check_arity(context, 1, t.arg_arity())
}

/// Replaces every `Proj(1)` in a unary-output node by `repl`.
fn substitute_argument(node: &Arc<Node>, repl: &Arc<Node>) -> Arc<Node> {
    match &**node {
        Node::Proj(_) => repl.clone(),
        Node::Apply(i, s) => Arc::new(Node::Apply(*i, substitute_argument(s, repl))),
        Node::Base(f, subs) => Arc::new(Node::Base(
            f.clone(),
            subs.iter().map(|s| substitute_argument(s, repl)).collect(),
        )),
    }
}

/// `H(g₁…g_l) = F(G₁(g…), …, G_k(g…))`: every `Apply(i, s)` of the outer
/// term is replaced by the `i`-th inner term evaluated at the rewritten `s`.
pub fn compose_terms(outer: &OperatorTerm, inners: &[OperatorTerm]) -> Result<OperatorTerm> {
    check_arity("compose_terms inner count", outer.fn_arity(), inners.len())?;
    let l = inners.first().map_or(0, OperatorTerm::fn_arity);
    for inner in inners {
        require_unary_output("compose_terms inner", inner)?;
        check_arity("compose_terms inner arity", l, inner.fn_arity())?;
    }
    fn graft(node: &Arc<Node>, inners: &[OperatorTerm]) -> Arc<Node> {
        match &**node {
            Node::Proj(_) => node.clone(),
            Node::Apply(i, s) => substitute_argument(inners[i - 1].root_arc(), &graft(s, inners)),
            Node::Base(f, subs) => Arc::new(Node::Base(
                f.clone(),
                subs.iter().map(|s| graft(s, inners)).collect(),
            )),
        }
    }
    OperatorTerm::from_arc(l, outer.arg_arity(), graft(outer.root_arc(), inners))
}

/// `G(f₁…f_k)(n) = F(f₁…f_k, č_n)(n)`. Applications of the last function
/// argument collapse to `Proj(1)` since `č_n` returns `n` everywhere.
pub fn diagonalize(term: &OperatorTerm) -> Result<OperatorTerm> {
    require_unary_output("diagonalize", term)?;
    let k1 = term.fn_arity();
    if k1 == 0 {
        return Err(Error::InvalidParameter(
            "diagonalize needs at least one function argument".into(),
        ));
    }
    fn go(node: &Arc<Node>, last: usize) -> Arc<Node> {
        match &**node {
            Node::Proj(_) => node.clone(),
            Node::Apply(i, _) if *i == last => Arc::new(Node::Proj(1)),
            Node::Apply(i, s) => Arc::new(Node::Apply(*i, go(s, last))),
            Node::Base(f, subs) => {
                Arc::new(Node::Base(f.clone(), subs.iter().map(|s| go(s, last)).collect()))
            }
        }
    }
    OperatorTerm::from_arc(k1 - 1, 1, go(term.root_arc(), k1))
}

/// Moves the first numeric argument `s` into a new trailing function
/// argument, so that `F(f…)(s, t…) = G(f…, č_s)(t…)`.
pub fn curry(term: &OperatorTerm) -> Result<OperatorTerm> {
    let m1 = term.arg_arity();
    if m1 < 2 {
        return Err(Error::InvalidParameter(
            "curry needs at least two numeric arguments".into(),
        ));
    }
    let k = term.fn_arity();
    fn go(node: &Arc<Node>, new_fn: usize) -> Arc<Node> {
        match &**node {
            Node::Proj(1) => Arc::new(Node::Apply(new_fn, Arc::new(Node::Proj(1)))),
            Node::Proj(i) => Arc::new(Node::Proj(i - 1)),
            Node::Apply(i, s) => Arc::new(Node::Apply(*i, go(s, new_fn))),
            Node::Base(f, subs) => Arc::new(Node::Base(
                f.clone(),
                subs.iter().map(|s| go(s, new_fn)).collect(),
            )),
        }
    }
    OperatorTerm::from_arc(k + 1, m1 - 1, go(term.root_arc(), k + 1))
}

/// Inverse direction of [`curry`]: applications of the last function
/// argument become the new leading numeric argument.
pub fn uncurry(term: &OperatorTerm) -> Result<OperatorTerm> {
    let k1 = term.fn_arity();
    let m = term.arg_arity();
    if m == 0 {
        return Err(Error::InvalidParameter(
            "uncurry needs at least one numeric argument".into(),
        ));
    }
    if k1 == 0 {
        return Err(Error::InvalidParameter(
            "uncurry needs at least one function argument".into(),
        ));
    }
    fn go(node: &Arc<Node>, last: usize) -> Arc<Node> {
        match &**node {
            Node::Proj(i) => Arc::new(Node::Proj(i + 1)),
            Node::Apply(i, _) if *i == last => Arc::new(Node::Proj(1)),
            Node::Apply(i, s) => Arc::new(Node::Apply(*i, go(s, last))),
            Node::Base(f, subs) => {
                Arc::new(Node::Base(f.clone(), subs.iter().map(|s| go(s, last)).collect()))
            }
        }
    }
    OperatorTerm::from_arc(k1 - 1, m + 1, go(term.root_arc(), k1))
}

/// Curries every numeric argument except the last:
/// `F(f…)(s₁…s_m, t) = G(f…, č_{s₁}, …, č_{s_m})(t)`.
pub fn multi_curry(term: &OperatorTerm) -> Result<OperatorTerm> {
    let mut t = term.clone();
    while t.arg_arity() > 1 {
        t = curry(&t)?;
    }
    Ok(t)
}

/// `f̊(f₁…f_r)(n) = f(f₁(n), …, f_r(n))`.
pub fn representable_lift(f: &BaseFunction) -> OperatorTerm {
    let subs = (1..=f.arity())
        .map(|i| Node::apply(i, Node::proj(1)))
        .collect();
    OperatorTerm::new(f.arity(), 1, Node::base(f, subs)).expect("lift is well-formed")
}

/// Structural bound on the number of distinct function queries made by one
/// evaluation: 0 for projections, 1 + sub for applications, sum for base nodes.
pub fn support_bound(term: &OperatorTerm) -> usize {
    fn go(node: &Node) -> usize {
        match node {
            Node::Proj(_) => 0,
            Node::Apply(_, s) => 1 + go(s),
            Node::Base(_, subs) => subs.iter().map(|s| go(s)).sum(),
        }
    }
    go(term.root())
}

/// `F(f₁…f_k) = f_i`.
pub fn projection_term(k: usize, i: usize) -> Result<OperatorTerm> {
    OperatorTerm::new(k, 1, Node::apply(i, Node::proj(1)))
}

/// `F(f₁, f₂)(n) = f₁(f₂(n))`.
pub fn binary_composition_term() -> OperatorTerm {
    OperatorTerm::new(2, 1, Node::apply(1, Node::apply(2, Node::proj(1)))).expect("well-formed")
}

/// `F(f₁…f_k) = id_ℕ`.
pub fn identity_term(k: usize) -> OperatorTerm {
    OperatorTerm::new(k, 1, Node::proj(1)).expect("well-formed")
}
