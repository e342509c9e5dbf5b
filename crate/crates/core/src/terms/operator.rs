use std::fmt;
use std::sync::{Arc, Mutex};

use super::base::BaseFunction;
use super::term::{eval_instrumented, eval_node, Node, OperatorTerm, SupportTrace};
use super::transform;
use crate::error::{check_arity, Error, Result};
use crate::naming::{Nat, NatFun};

type Pointwise = dyn Fn(&[NatFun], &Nat) -> Nat + Send + Sync;

/// A `k`-ary operator `T₁ᵏ → T₁`, either as a substitutional term or as a
/// direct procedure honouring the same contract (total, deterministic, and
/// touching its inputs only through evaluation).
///
/// The combinators below keep term form whenever all their inputs are terms.
#[derive(Clone)]
pub struct Operator {
    arity: usize,
    repr: Repr,
}

#[derive(Clone)]
enum Repr {
    Term(OperatorTerm),
    Direct {
        label: Arc<str>,
        eval: Arc<Pointwise>,
    },
}

impl Operator {
    pub fn from_term(term: OperatorTerm) -> Result<Self> {
        check_arity("operator term output arity", 1, term.arg_arity())?;
        Ok(Operator {
            arity: term.fn_arity(),
            repr: Repr::Term(term),
        })
    }

    /// A direct operator given pointwise: `eval(fns, n) = F(fns)(n)`.
    pub fn direct<F>(arity: usize, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[NatFun], &Nat) -> Nat + Send + Sync + 'static,
    {
        let label: String = label.into();
        Operator {
            arity,
            repr: Repr::Direct {
                label: label.into(),
                eval: Arc::new(eval),
            },
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn as_term(&self) -> Option<&OperatorTerm> {
        match &self.repr {
            Repr::Term(t) => Some(t),
            Repr::Direct { .. } => None,
        }
    }

    pub fn is_term(&self) -> bool {
        self.as_term().is_some()
    }

    pub fn apply(&self, fns: &[NatFun]) -> Result<NatFun> {
        check_arity("operator arguments", self.arity, fns.len())?;
        let fns: Vec<NatFun> = fns.to_vec();
        Ok(match &self.repr {
            Repr::Term(t) => {
                let root = t.root_arc().clone();
                NatFun::from_fn(move |n| {
                    eval_node(&root, std::slice::from_ref(n), &mut |i, x| fns[i].eval(&x))
                })
            }
            Repr::Direct { eval, .. } => {
                let eval = eval.clone();
                NatFun::from_fn(move |n| eval(&fns, n))
            }
        })
    }

    /// `F(fns)(n)` without building a memoized result function.
    pub fn eval_at(&self, fns: &[NatFun], n: &Nat) -> Result<Nat> {
        check_arity("operator arguments", self.arity, fns.len())?;
        Ok(match &self.repr {
            Repr::Term(t) => eval_node(t.root(), std::slice::from_ref(n), &mut |i, x| {
                fns[i].eval(&x)
            }),
            Repr::Direct { eval, .. } => eval(fns, n),
        })
    }

    /// `F(fns)(n)` together with every (argument index, point) queried.
    /// Direct procedures are observed by wrapping their inputs.
    pub fn eval_traced(&self, fns: &[NatFun], n: &Nat) -> Result<(Nat, SupportTrace)> {
        check_arity("operator arguments", self.arity, fns.len())?;
        match &self.repr {
            Repr::Term(t) => eval_instrumented(t, fns, std::slice::from_ref(n)),
            Repr::Direct { eval, .. } => {
                let trace = Arc::new(Mutex::new(SupportTrace::new(self.arity)));
                let wrapped: Vec<NatFun> = fns
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let f = f.clone();
                        let trace = trace.clone();
                        NatFun::from_fn_unmemoized(move |x| {
                            trace.lock().expect("trace poisoned").record(i, x);
                            f.eval(x)
                        })
                    })
                    .collect();
                let value = eval(&wrapped, n);
                let trace = trace.lock().expect("trace poisoned").clone();
                Ok((value, trace))
            }
        }
    }

    /// `H(g₁…g_l) = F(G₁(g…), …, G_k(g…))`.
    pub fn compose(&self, inners: &[Operator]) -> Result<Operator> {
        let l = inners.first().map_or(0, Operator::arity);
        self.compose_with_arity(inners, l)
    }

    /// Like [`Operator::compose`], with the result arity stated explicitly
    /// (needed when `inners` is empty).
    pub fn compose_with_arity(&self, inners: &[Operator], l: usize) -> Result<Operator> {
        check_arity("operator composition inner count", self.arity, inners.len())?;
        for g in inners {
            check_arity("operator composition inner arity", l, g.arity)?;
        }
        let terms: Option<Vec<OperatorTerm>> =
            inners.iter().map(|g| g.as_term().cloned()).collect();
        if let (Some(outer), Some(terms)) = (self.as_term(), terms) {
            let composed = if terms.is_empty() {
                outer.widen(l)?
            } else {
                transform::compose_terms(outer, &terms)?
            };
            return Operator::from_term(composed);
        }
        let outer = self.clone();
        let inners = inners.to_vec();
        Ok(Operator::direct(
            l,
            format!("compose({})", self.short_label()),
            move |gs, n| {
                let mid: Vec<NatFun> = inners
                    .iter()
                    .map(|g| g.apply(gs).expect("arity checked"))
                    .collect();
                outer.eval_at(&mid, n).expect("arity checked")
            },
        ))
    }

    /// `G(f₁…f_k)(n) = F(f₁…f_k, č_n)(n)`.
    pub fn diagonalize(&self) -> Result<Operator> {
        if let Some(t) = self.as_term() {
            return Operator::from_term(transform::diagonalize(t)?);
        }
        if self.arity == 0 {
            return Err(Error::InvalidParameter(
                "diagonalize needs at least one function argument".into(),
            ));
        }
        let inner = self.clone();
        Ok(Operator::direct(
            self.arity - 1,
            format!("diag({})", self.short_label()),
            move |fs, n| {
                let mut args = fs.to_vec();
                args.push(NatFun::constant(n.clone()));
                inner.eval_at(&args, n).expect("arity checked")
            },
        ))
    }

    /// `F(f₁…f_k) = f_i` (1-based).
    pub fn projection(k: usize, i: usize) -> Result<Operator> {
        Operator::from_term(transform::projection_term(k, i)?)
    }

    /// `F(f₁, f₂)(n) = f₁(f₂(n))`.
    pub fn binary_composition() -> Operator {
        Operator::from_term(transform::binary_composition_term()).expect("unary output")
    }

    /// `F(f₁…f_k) = id_ℕ`.
    pub fn identity(k: usize) -> Operator {
        Operator::from_term(transform::identity_term(k)).expect("unary output")
    }

    /// `f̊`.
    pub fn lift(f: &BaseFunction) -> Operator {
        Operator::from_term(transform::representable_lift(f)).expect("unary output")
    }

    /// `F(f₁…f_k) = f` for a unary base function `f`.
    pub fn constant_function(k: usize, f: &BaseFunction) -> Result<Operator> {
        check_arity("constant operator base", 1, f.arity())?;
        Operator::from_term(OperatorTerm::new(k, 1, Node::base(f, vec![Node::proj(1)]))?)
    }

    /// `F(f₁…f_k) = č_c`, given a nullary base function for `c`.
    pub fn constant(k: usize, c: &BaseFunction) -> Result<Operator> {
        check_arity("constant operator base", 0, c.arity())?;
        Operator::from_term(OperatorTerm::new(k, 1, Node::base(c, vec![]))?)
    }

    /// `(F₁(f…)(n), …)` fed to a base function: `f(F₁(f…)(n), …, F_r(f…)(n))`.
    pub fn base_of(f: &BaseFunction, subs: &[Operator]) -> Result<Operator> {
        let k = subs.first().map_or(0, Operator::arity);
        Operator::lift(f).compose_with_arity(subs, k)
    }

    fn short_label(&self) -> String {
        match &self.repr {
            Repr::Term(t) => format!("term/{}", t.fn_arity()),
            Repr::Direct { label, .. } => label.to_string(),
        }
    }

    pub fn label(&self) -> String {
        match &self.repr {
            Repr::Term(t) => t.to_string(),
            Repr::Direct { label, .. } => label.to_string(),
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator[{}]({})", self.arity, self.label())
    }
}
