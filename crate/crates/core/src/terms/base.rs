use std::fmt;
use std::sync::Arc;

use crate::error::{check_arity, Result};
use crate::naming::Nat;

type Eval = dyn Fn(&[Nat]) -> Nat + Send + Sync;

/// A named total function `ℕʳ → ℕ`: one element of the base signature `F`.
///
/// Two base functions compare equal when their names and arities agree;
/// names are expected to be unique within a signature.
#[derive(Clone)]
pub struct BaseFunction(Arc<Inner>);

struct Inner {
    name: String,
    arity: usize,
    eval: Box<Eval>,
}

impl BaseFunction {
    pub fn new<F>(name: impl Into<String>, arity: usize, eval: F) -> Self
    where
        F: Fn(&[Nat]) -> Nat + Send + Sync + 'static,
    {
        BaseFunction(Arc::new(Inner {
            name: name.into(),
            arity,
            eval: Box::new(eval),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn call(&self, args: &[Nat]) -> Result<Nat> {
        check_arity("base function call", self.0.arity, args.len())?;
        Ok((self.0.eval)(args))
    }

    /// Callers guarantee `args.len() == arity`.
    pub(crate) fn call_unchecked(&self, args: &[Nat]) -> Nat {
        debug_assert_eq!(args.len(), self.0.arity, "{}", self.0.name);
        (self.0.eval)(args)
    }

    /// Renames without changing behaviour.
    pub fn renamed(&self, name: impl Into<String>) -> BaseFunction {
        let inner = self.clone();
        BaseFunction::new(name, self.arity(), move |args| inner.call_unchecked(args))
    }
}

impl PartialEq for BaseFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name && self.0.arity == other.0.arity)
    }
}

impl Eq for BaseFunction {}

impl fmt::Debug for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.name, self.0.arity)
    }
}

/// Name resolution for base functions, used when parsing terms.
pub trait Signature {
    fn lookup(&self, name: &str) -> Option<BaseFunction>;
}

impl Signature for [BaseFunction] {
    fn lookup(&self, name: &str) -> Option<BaseFunction> {
        self.iter().find(|f| f.name() == name).cloned()
    }
}

impl Signature for Vec<BaseFunction> {
    fn lookup(&self, name: &str) -> Option<BaseFunction> {
        self.as_slice().lookup(name)
    }
}
