use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::base::{BaseFunction, Signature};
use crate::error::{check_arity, Error, Result};
use crate::naming::{Nat, NatFun};
use crate::sexpr::Sexpr;

/// One clause of the substitutional term language.
///
/// Indices are 1-based, as in the textual syntax: `Proj(i)` selects the
/// `i`-th numeric argument and `Apply(i, _)` applies the `i`-th function
/// argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Proj(usize),
    Apply(usize, Arc<Node>),
    Base(BaseFunction, Vec<Arc<Node>>),
}

impl Node {
    pub fn proj(i: usize) -> Node {
        Node::Proj(i)
    }

    pub fn apply(i: usize, sub: Node) -> Node {
        Node::Apply(i, Arc::new(sub))
    }

    pub fn base(f: &BaseFunction, subs: Vec<Node>) -> Node {
        Node::Base(f.clone(), subs.into_iter().map(Arc::new).collect())
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Proj(_) => 1,
            Node::Apply(_, s) => 1 + s.depth(),
            Node::Base(_, subs) => 1 + subs.iter().map(|s| s.depth()).max().unwrap_or(0),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Proj(_) => 1,
            Node::Apply(_, s) => 1 + s.size(),
            Node::Base(_, subs) => 1 + subs.iter().map(|s| s.size()).sum::<usize>(),
        }
    }

    fn check(&self, k: usize, m: usize) -> Result<()> {
        match self {
            Node::Proj(i) => check_index("projection", *i, m),
            Node::Apply(i, sub) => {
                check_index("function application", *i, k)?;
                sub.check(k, m)
            }
            Node::Base(f, subs) => {
                check_arity("base function node", f.arity(), subs.len())?;
                subs.iter().try_for_each(|s| s.check(k, m))
            }
        }
    }

    fn max_apply(&self) -> usize {
        match self {
            Node::Proj(_) => 0,
            Node::Apply(i, s) => (*i).max(s.max_apply()),
            Node::Base(_, subs) => subs.iter().map(|s| s.max_apply()).max().unwrap_or(0),
        }
    }

    fn max_proj(&self) -> usize {
        match self {
            Node::Proj(i) => *i,
            Node::Apply(_, s) => s.max_proj(),
            Node::Base(_, subs) => subs.iter().map(|s| s.max_proj()).max().unwrap_or(0),
        }
    }
}

fn check_index(context: &'static str, index: usize, max: usize) -> Result<()> {
    if index >= 1 && index <= max {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            context,
            index,
            max,
        })
    }
}

/// A substitutional operator term mapping `k` unary functions to an
/// `m`-ary function. Immutable; transformations return new terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    k: usize,
    m: usize,
    root: Arc<Node>,
}

impl OperatorTerm {
    pub fn new(k: usize, m: usize, root: Node) -> Result<Self> {
        Self::from_arc(k, m, Arc::new(root))
    }

    pub(crate) fn from_arc(k: usize, m: usize, root: Arc<Node>) -> Result<Self> {
        root.check(k, m)?;
        Ok(OperatorTerm { k, m, root })
    }

    /// Smallest `(k, m)` the node fits, with `m ≥ 1`.
    pub fn inferred(root: Node) -> Self {
        let k = root.max_apply();
        let m = root.max_proj().max(1);
        OperatorTerm {
            k,
            m,
            root: Arc::new(root),
        }
    }

    /// Number of function arguments.
    pub fn fn_arity(&self) -> usize {
        self.k
    }

    /// Number of numeric arguments.
    pub fn arg_arity(&self) -> usize {
        self.m
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub(crate) fn root_arc(&self) -> &Arc<Node> {
        &self.root
    }

    /// The same term viewed with `l ≥ k` function arguments.
    pub fn widen(&self, l: usize) -> Result<Self> {
        if l < self.k {
            return Err(Error::ArityMismatch {
                context: "widen",
                expected: self.k,
                found: l,
            });
        }
        Ok(OperatorTerm {
            k: l,
            m: self.m,
            root: self.root.clone(),
        })
    }

    pub fn eval(&self, fns: &[NatFun], args: &[Nat]) -> Result<Nat> {
        eval_term(self, fns, args)
    }

    pub fn to_sexpr(&self) -> Sexpr {
        node_to_sexpr(&self.root)
    }

    /// Parses the textual form for a term of the given arities.
    pub fn parse(src: &str, k: usize, m: usize, sig: &dyn Signature) -> Result<Self> {
        let node = node_from_sexpr(&Sexpr::parse(src)?, sig)?;
        OperatorTerm::new(k, m, node)
    }

    /// Parses and infers the smallest fitting arities.
    pub fn parse_inferred(src: &str, sig: &dyn Signature) -> Result<Self> {
        Ok(OperatorTerm::inferred(node_from_sexpr(&Sexpr::parse(src)?, sig)?))
    }
}

impl fmt::Display for OperatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

fn node_to_sexpr(node: &Node) -> Sexpr {
    let atom = |s: &str| Sexpr::Atom(s.to_string());
    match node {
        Node::Proj(i) => Sexpr::List(vec![atom("proj"), atom(&i.to_string())]),
        Node::Apply(i, sub) => Sexpr::List(vec![
            atom("apply"),
            atom(&i.to_string()),
            node_to_sexpr(sub),
        ]),
        Node::Base(f, subs) => {
            let mut items = vec![atom("base"), atom(f.name())];
            items.extend(subs.iter().map(|s| node_to_sexpr(s)));
            Sexpr::List(items)
        }
    }
}

fn node_from_sexpr(e: &Sexpr, sig: &dyn Signature) -> Result<Node> {
    let items = match e {
        Sexpr::List(items) if !items.is_empty() => items,
        other => return Err(Error::Parse(format!("expected a term, found `{other}`"))),
    };
    let index = |e: &Sexpr| -> Result<usize> {
        e.as_atom()
            .and_then(|a| a.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected an index, found `{e}`")))
    };
    match items[0].as_atom() {
        Some("proj") if items.len() == 2 => Ok(Node::Proj(index(&items[1])?)),
        Some("apply") if items.len() == 3 => Ok(Node::apply(
            index(&items[1])?,
            node_from_sexpr(&items[2], sig)?,
        )),
        Some("base") if items.len() >= 2 => {
            let name = items[1]
                .as_atom()
                .ok_or_else(|| Error::Parse(format!("expected a name, found `{}`", items[1])))?;
            let f = sig
                .lookup(name)
                .ok_or_else(|| Error::UnknownFunction(name.to_string()))?;
            let subs = items[2..]
                .iter()
                .map(|s| node_from_sexpr(s, sig))
                .collect::<Result<Vec<_>>>()?;
            check_arity("base function node", f.arity(), subs.len())?;
            Ok(Node::base(&f, subs))
        }
        _ => Err(Error::Parse(format!("malformed term `{e}`"))),
    }
}

/// Per-function-argument sets of queried arguments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportTrace {
    pub queried: Vec<BTreeSet<Nat>>,
}

impl SupportTrace {
    pub fn new(k: usize) -> Self {
        SupportTrace {
            queried: vec![BTreeSet::new(); k],
        }
    }

    /// Records that function `i` (0-based) was evaluated at `n`.
    pub fn record(&mut self, i: usize, n: &Nat) {
        if !self.queried[i].contains(n) {
            self.queried[i].insert(n.clone());
        }
    }

    /// Total number of distinct (function, argument) pairs.
    pub fn len(&self) -> usize {
        self.queried.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_argument(&self) -> Option<Nat> {
        self.queried
            .iter()
            .filter_map(|s| s.iter().next_back())
            .max()
            .cloned()
    }

    pub fn contains(&self, i: usize, n: &Nat) -> bool {
        self.queried.get(i).is_some_and(|s| s.contains(n))
    }
}

fn check_inputs(term: &OperatorTerm, fns: &[NatFun], args: &[Nat]) -> Result<()> {
    check_arity("term function arguments", term.k, fns.len())?;
    check_arity("term numeric arguments", term.m, args.len())
}

pub(crate) fn eval_node<Q>(node: &Node, args: &[Nat], query: &mut Q) -> Nat
where
    Q: FnMut(usize, Nat) -> Nat,
{
    match node {
        Node::Proj(i) => args[i - 1].clone(),
        Node::Apply(i, sub) => {
            let x = eval_node(sub, args, query);
            query(i - 1, x)
        }
        Node::Base(f, subs) => {
            let vals: Vec<Nat> = subs.iter().map(|s| eval_node(s, args, query)).collect();
            f.call_unchecked(&vals)
        }
    }
}

/// Clause-by-clause denotation of a term.
pub fn eval_term(term: &OperatorTerm, fns: &[NatFun], args: &[Nat]) -> Result<Nat> {
    check_inputs(term, fns, args)?;
    Ok(eval_node(&term.root, args, &mut |i, x| fns[i].eval(&x)))
}

/// Evaluates while recording every function query.
pub fn eval_instrumented(
    term: &OperatorTerm,
    fns: &[NatFun],
    args: &[Nat],
) -> Result<(Nat, SupportTrace)> {
    check_inputs(term, fns, args)?;
    let mut trace = SupportTrace::new(term.k);
    let value = eval_node(&term.root, args, &mut |i, x| {
        trace.record(i, &x);
        fns[i].eval(&x)
    });
    Ok((value, trace))
}
