use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_arity, Error, Result};
use crate::naming::{format_rational, Nat, Rational};
use crate::terms::BaseFunction;

/// `x ∸ y = max(x − y, 0)`.
pub fn monus(x: &Nat, y: &Nat) -> Nat {
    if x > y {
        x - y
    } else {
        Nat::zero()
    }
}

/// `y` if `x = 0`, `z` otherwise.
pub fn delta_1(x: &Nat, y: &Nat, z: &Nat) -> Nat {
    if x.is_zero() {
        y.clone()
    } else {
        z.clone()
    }
}

/// `δ_K(x₁, y₁, …, x_K, y_K, z)`: the first `y_i` whose guard `x_i` is zero,
/// else `z`. Unfolds `δ_{K+1}(x₁, y₁, …) = δ₁(x₁, y₁, δ_K(…))` with
/// `δ₀(z) = z`.
pub fn delta_k(k: usize, args: &[Nat]) -> Result<Nat> {
    check_arity("delta_K", 2 * k + 1, args.len())?;
    Ok(delta_unchecked(args))
}

fn delta_unchecked(args: &[Nat]) -> Nat {
    let mut rest = args;
    while rest.len() >= 3 {
        if rest[0].is_zero() {
            return rest[1].clone();
        }
        rest = &rest[2..];
    }
    rest[0].clone()
}

pub fn successor_fn() -> BaseFunction {
    BaseFunction::new("succ", 1, |a| &a[0] + 1u32)
}

pub fn monus_fn() -> BaseFunction {
    BaseFunction::new("monus", 2, |a| monus(&a[0], &a[1]))
}

pub fn add_fn() -> BaseFunction {
    BaseFunction::new("add", 2, |a| &a[0] + &a[1])
}

pub fn mul_fn() -> BaseFunction {
    BaseFunction::new("mul", 2, |a| &a[0] * &a[1])
}

pub fn delta_fn(k: usize) -> BaseFunction {
    BaseFunction::new(format!("delta_{k}"), 2 * k + 1, delta_unchecked)
}

/// The nullary constant `c`.
pub fn constant_fn(c: impl Into<Nat>) -> BaseFunction {
    let c: Nat = c.into();
    BaseFunction::new(format!("const_{c}"), 0, move |_| c.clone())
}

/// `μ_{k,c}(x, y) = δ₁(x ∸ k, δ₁(k ∸ x, c, y), y)`, which is `c` if `x = k`
/// and `y` otherwise.
pub fn mu(k: impl Into<Nat>, c: impl Into<Nat>) -> BaseFunction {
    let k: Nat = k.into();
    let c: Nat = c.into();
    BaseFunction::new(format!("mu_{k}_{c}"), 2, move |a| {
        let (x, y) = (&a[0], &a[1]);
        delta_1(&monus(x, &k), &delta_1(&monus(&k, x), &c, y), y)
    })
}

/// Evaluates `γ_{b,c}(x₁…x_b, y₁…y_c)` by the clause recursion, following
/// only the branch the `δ₁` guard selects.
pub fn gamma_eval(xs: &[Nat], ys: &[Nat]) -> Nat {
    assert!(!xs.is_empty() && !ys.is_empty(), "γ needs b, c ≥ 1");
    let mut xs = xs.to_vec();
    let mut ys = ys.to_vec();
    loop {
        let (b, c) = (xs.len(), ys.len());
        match (b, c) {
            (1, 1) => return monus(&xs[0], &ys[0]),
            (1, _) => {
                let y = ys.pop().expect("c > 1");
                xs[0] = monus(&xs[0], &y);
            }
            (_, 1) => {
                let x = xs.pop().expect("b > 1");
                let guard = monus(&x, &ys[0]);
                if !guard.is_zero() {
                    return guard;
                }
                ys[0] = monus(&ys[0], &x);
            }
            _ => {
                let x = xs.pop().expect("b > 1");
                let y = ys.pop().expect("c > 1");
                if monus(&x, &y).is_zero() {
                    ys.push(monus(&y, &x));
                } else {
                    xs.push(monus(&x, &y));
                }
            }
        }
    }
}

fn gamma_cache() -> &'static Mutex<HashMap<(usize, usize), BaseFunction>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), BaseFunction>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `γ_{b,c}` with `γ > 0 ⇔ x₁ + ⋯ + x_b > y₁ + ⋯ + y_c`.
pub fn gamma(b: usize, c: usize) -> Result<BaseFunction> {
    if b == 0 || c == 0 {
        return Err(Error::InvalidParameter(format!(
            "gamma needs b, c >= 1, got b={b}, c={c}"
        )));
    }
    let mut cache = gamma_cache().lock().expect("gamma cache poisoned");
    let f = cache.entry((b, c)).or_insert_with(|| {
        BaseFunction::new(format!("gamma_{b}_{c}"), b + c, move |a| {
            gamma_eval(&a[..b], &a[b..])
        })
    });
    Ok(f.clone())
}

fn small(n: &num_bigint::BigInt) -> usize {
    n.magnitude()
        .to_usize()
        .expect("rational too large for a comparison gadget")
}

fn lt_eval(a: &Rational, x: &Nat, y: &Nat, z: &Nat) -> Nat {
    if a.is_zero() {
        return monus(y, x);
    }
    let z1 = z + 1u32;
    if a.is_positive() {
        let (b, c) = (small(a.numer()), small(a.denom()));
        let d = monus(x, y);
        gamma_eval(&vec![z1; b], &vec![d; c])
    } else {
        let (c, b) = (small(a.numer()), small(a.denom()));
        let d = monus(y, x);
        gamma_eval(&vec![d; b], &vec![z1; c])
    }
}

/// `lt_a(x, y, z) > 0 ⇔ (x − y)/(z + 1) < a`.
pub fn lt(a: &Rational) -> BaseFunction {
    let a = a.clone();
    BaseFunction::new(format!("lt[{}]", format_rational(&a)), 3, move |v| {
        lt_eval(&a, &v[0], &v[1], &v[2])
    })
}

/// `gt_a(x, y, z) = lt_{−a}(y, x, z)`, so `gt_a > 0 ⇔ (x − y)/(z + 1) > a`.
pub fn gt(a: &Rational) -> BaseFunction {
    let neg = -a.clone();
    BaseFunction::new(format!("gt[{}]", format_rational(a)), 3, move |v| {
        lt_eval(&neg, &v[1], &v[0], &v[2])
    })
}

/// `e(x₁, y₁, z₁, …) = 0 ⇔ max_j |(x_j − y_j)/(z_j + 1) − a_j| < q`, built as
/// `δ_N(u₁, 1, …, u_N, 1, 0)` with `u_j = δ₁(gt_{a_j−q}, gt_{a_j−q}, lt_{a_j+q})`.
pub fn ball_indicator(center: &[Rational], q: &Rational) -> Result<BaseFunction> {
    if center.is_empty() {
        return Err(Error::InvalidParameter(
            "ball indicator needs at least one coordinate".into(),
        ));
    }
    let n = center.len();
    let bounds: Vec<(Rational, Rational)> = center
        .iter()
        .map(|a| (-(a - q), a + q))
        .collect();
    let label = center
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(",");
    let one = Nat::one();
    Ok(BaseFunction::new(
        format!("ball[{label};{}]", format_rational(q)),
        3 * n,
        move |v| {
            let mut args = Vec::with_capacity(2 * n + 1);
            for (j, (neg_lo, hi)) in bounds.iter().enumerate() {
                let (x, y, z) = (&v[3 * j], &v[3 * j + 1], &v[3 * j + 2]);
                let g = lt_eval(neg_lo, y, x, z);
                let u = if g.is_zero() {
                    g
                } else {
                    lt_eval(hi, x, y, z)
                };
                args.push(u);
                args.push(one.clone());
            }
            args.push(Nat::zero());
            delta_unchecked(&args)
        },
    ))
}
