use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

type Procedure = dyn Fn(&Nat) -> Nat + Send + Sync;

/// A total unary function on the naturals.
///
/// Values are immutable and cheap to clone. Procedures built with
/// [`NatFun::from_fn`] memoize their results per argument; the memo table is
/// guarded so that concurrent evaluation is observationally identical to
/// sequential evaluation. The lock is never held while the underlying
/// procedure runs, so procedures may re-enter themselves at other arguments.
#[derive(Clone)]
pub struct NatFun(Arc<Kind>);

enum Kind {
    Constant(Nat),
    Identity,
    Procedure {
        eval: Box<Procedure>,
        memo: Option<Mutex<HashMap<Nat, Nat>>>,
    },
}

impl NatFun {
    /// The constant function with value `c`.
    pub fn constant(c: impl Into<Nat>) -> Self {
        NatFun(Arc::new(Kind::Constant(c.into())))
    }

    /// `id_ℕ`.
    pub fn identity() -> Self {
        NatFun(Arc::new(Kind::Identity))
    }

    /// Wraps a procedure the caller vouches is total and deterministic.
    pub fn from_fn<F>(f: F) -> Self
    where
        F: Fn(&Nat) -> Nat + Send + Sync + 'static,
    {
        NatFun(Arc::new(Kind::Procedure {
            eval: Box::new(f),
            memo: Some(Mutex::new(HashMap::new())),
        }))
    }

    /// Like [`NatFun::from_fn`] but without a memo table. Used for wrappers
    /// that must observe every call (tracing) or that are queried once.
    pub fn from_fn_unmemoized<F>(f: F) -> Self
    where
        F: Fn(&Nat) -> Nat + Send + Sync + 'static,
    {
        NatFun(Arc::new(Kind::Procedure {
            eval: Box::new(f),
            memo: None,
        }))
    }

    pub fn eval(&self, n: &Nat) -> Nat {
        match &*self.0 {
            Kind::Constant(c) => c.clone(),
            Kind::Identity => n.clone(),
            Kind::Procedure { eval, memo: None } => eval(n),
            Kind::Procedure {
                eval,
                memo: Some(memo),
            } => {
                if let Some(v) = memo.lock().expect("memo poisoned").get(n) {
                    return v.clone();
                }
                let v = eval(n);
                memo.lock()
                    .expect("memo poisoned")
                    .entry(n.clone())
                    .or_insert(v)
                    .clone()
            }
        }
    }

    /// Convenience for small arguments.
    pub fn at(&self, n: u64) -> Nat {
        self.eval(&Nat::from(n))
    }

    /// The value, if this function was built with [`NatFun::constant`].
    pub fn as_constant(&self) -> Option<&Nat> {
        match &*self.0 {
            Kind::Constant(c) => Some(c),
            _ => None,
        }
    }

    pub fn ptr_eq(&self, other: &NatFun) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl fmt::Debug for NatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Kind::Constant(c) => write!(f, "NatFun::constant({c})"),
            Kind::Identity => f.write_str("NatFun::identity"),
            Kind::Procedure { memo, .. } => match memo {
                Some(m) => write!(
                    f,
                    "NatFun::procedure(memoized: {})",
                    m.lock().map(|m| m.len()).unwrap_or(0)
                ),
                None => f.write_str("NatFun::procedure"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    #[test]
    fn constants_and_identity() {
        let c = NatFun::constant(7u32);
        assert_eq!(c.at(0), Nat::from(7u32));
        assert_eq!(c.at(1_000_000), Nat::from(7u32));
        assert_eq!(c.as_constant(), Some(&Nat::from(7u32)));
        let id = NatFun::identity();
        assert_eq!(id.at(42), Nat::from(42u32));
        assert!(id.as_constant().is_none());
    }

    #[test]
    fn memoization_runs_procedure_once_per_argument() {
        let calls = Arc::new(AtomicUsize::new(0));
        let counter = calls.clone();
        let f = NatFun::from_fn(move |n| {
            counter.fetch_add(1, Ordering::SeqCst);
            n * n
        });
        for _ in 0..5 {
            assert_eq!(f.at(9), Nat::from(81u32));
        }
        assert_eq!(f.at(3), Nat::from(9u32));
        assert_eq!(calls.load(Ordering::SeqCst), 2);
    }

    #[test]
    fn concurrent_evaluation_matches_sequential() {
        let f = NatFun::from_fn(|n| n * 3u32 + 1u32);
        let expected: Vec<Nat> = (0..200).map(|t| Nat::from(3 * t + 1u64)).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                let f = f.clone();
                let expected = &expected;
                s.spawn(move || {
                    for (t, e) in expected.iter().enumerate() {
                        assert_eq!(&f.at(t as u64), e);
                    }
                });
            }
        });
    }

    #[test]
    fn reentrant_procedure_does_not_deadlock() {
        use std::sync::OnceLock;
        static FIB: OnceLock<NatFun> = OnceLock::new();
        let fib = FIB.get_or_init(|| {
            NatFun::from_fn(|n| {
                let one = Nat::from(1u32);
                if *n <= one {
                    n.clone()
                } else {
                    let f = FIB.get().unwrap();
                    f.eval(&(n - 1u32)) + f.eval(&(n - 2u32))
                }
            })
        });
        assert_eq!(fib.at(90), "2880067194370816120".parse::<Nat>().unwrap());
    }
}
