use crate::error::{Error, Result};
use crate::naming::Nat;
use crate::terms::BaseFunction;

/// Cantor pairing `J(u, v) = (u + v)(u + v + 1)/2 + u`.
pub fn pair(u: &Nat, v: &Nat) -> Nat {
    let w = u + v;
    (&w * (&w + 1u32)) / 2u32 + u
}

/// `(L(s), R(s))` with `J(L(s), R(s)) = s`.
pub fn unpair(s: &Nat) -> (Nat, Nat) {
    let w = ((s * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let tri = (&w * (&w + 1u32)) / 2u32;
    let l = s - tri;
    let r = w - &l;
    (l, r)
}

pub fn left(s: &Nat) -> Nat {
    unpair(s).0
}

pub fn right(s: &Nat) -> Nat {
    unpair(s).1
}

/// `C(u, v) = u + v`, zero exactly at `(0, 0)`.
pub fn conj(u: &Nat, v: &Nat) -> Nat {
    u + v
}

/// `J_K(u₁, …, u_K) = J(u₁, J_{K−1}(u₂, …, u_K))` with `J₁ = id`.
pub fn tuple(us: &[Nat]) -> Result<Nat> {
    match us.split_last() {
        None => Err(Error::InvalidParameter("J_K needs K >= 1".into())),
        Some((last, init)) => Ok(init.iter().rev().fold(last.clone(), |acc, u| pair(u, &acc))),
    }
}

/// `P_{K,i}(J_K(u₁, …, u_K)) = u_i` (1-based `i`).
pub fn project(k: usize, i: usize, n: &Nat) -> Result<Nat> {
    check_tuple_index(k, i)?;
    let mut cur = n.clone();
    for _ in 1..i {
        cur = right(&cur);
    }
    Ok(if i < k { left(&cur) } else { cur })
}

/// All `K` components of a `J_K` code.
pub fn untuple(k: usize, n: &Nat) -> Result<Vec<Nat>> {
    if k == 0 {
        return Err(Error::InvalidParameter("P_K needs K >= 1".into()));
    }
    let mut out = Vec::with_capacity(k);
    let mut cur = n.clone();
    for _ in 1..k {
        let (l, r) = unpair(&cur);
        out.push(l);
        cur = r;
    }
    out.push(cur);
    Ok(out)
}

fn check_tuple_index(k: usize, i: usize) -> Result<()> {
    if i >= 1 && i <= k {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            context: "tuple projection",
            index: i,
            max: k,
        })
    }
}

pub fn pair_fn() -> BaseFunction {
    BaseFunction::new("J", 2, |a| pair(&a[0], &a[1]))
}

pub fn left_fn() -> BaseFunction {
    BaseFunction::new("L", 1, |a| left(&a[0]))
}

pub fn right_fn() -> BaseFunction {
    BaseFunction::new("R", 1, |a| right(&a[0]))
}

pub fn conj_fn() -> BaseFunction {
    BaseFunction::new("C", 2, |a| conj(&a[0], &a[1]))
}

pub fn tuple_fn(k: usize) -> Result<BaseFunction> {
    if k == 0 {
        return Err(Error::InvalidParameter("J_K needs K >= 1".into()));
    }
    Ok(BaseFunction::new(format!("J_{k}"), k, |a| {
        tuple(a).expect("nonempty")
    }))
}

pub fn project_fn(k: usize, i: usize) -> Result<BaseFunction> {
    check_tuple_index(k, i)?;
    Ok(BaseFunction::new(format!("P_{k}_{i}"), 1, move |a| {
        project(k, i, &a[0]).expect("index checked")
    }))
}
