use super::{make_mn, MsConditionalFn, MsUniformFn, OrdinaryName, Space};
use crate::computable::{ConditionalFn, UniformFn};
use crate::error::{Error, Result};
use crate::gadgets::{project_fn, tuple_fn};
use crate::naming::NameTriple;
use crate::terms::Operator;

/// `N` for a space `M_N`.
fn mn_dimension(space: &Space) -> Result<usize> {
    space
        .name()
        .strip_prefix("M_")
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| Error::SpaceMismatch {
            expected: "M_N".into(),
            found: space.name(),
        })
}

fn expect_m1(space: &Space) -> Result<()> {
    if mn_dimension(space)? == 1 {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            expected: "M_1".into(),
            found: space.name(),
        })
    }
}

/// `P̊_{k,1}(x), …, P̊_{k,k}(x)` where `x` is the operator `arg`.
fn decodes(k: usize, arg: &Operator) -> Result<Vec<Operator>> {
    (1..=k)
        .map(|i| Operator::lift(&project_fn(k, i)?).compose(std::slice::from_ref(arg)))
        .collect()
}

/// `J̊_k(G₁, …, G_k)`.
fn encode(parts: &[Operator]) -> Result<Operator> {
    Operator::base_of(&tuple_fn(parts.len())?, parts)
}

/// `J̊_{3N}` over the first `3N` of `arity` arguments.
fn encode_args(n: usize, arity: usize) -> Result<Operator> {
    let projs = (1..=3 * n)
        .map(|i| Operator::projection(arity, i))
        .collect::<Result<Vec<_>>>()?;
    encode(&projs)
}

/// The `M_N` name `J̊_{3N}(f₁, g₁, h₁, …)`.
pub fn names_to_ordinary(names: &[NameTriple]) -> Result<OrdinaryName> {
    let n = names.len();
    let f = encode_args(n, 3 * n)?.apply(&NameTriple::flatten(names))?;
    Ok(OrdinaryName::new(f, make_mn(n)?))
}

/// `(P̊_{3N,1}(f), P̊_{3N,2}(f), P̊_{3N,3}(f)), …` for an `M_N` name.
pub fn ordinary_to_names(name: &OrdinaryName) -> Result<Vec<NameTriple>> {
    let n = mn_dimension(&name.space)?;
    let fs = decodes(3 * n, &Operator::projection(1, 1)?)?
        .iter()
        .map(|d| d.apply(std::slice::from_ref(&name.f)))
        .collect::<Result<Vec<_>>>()?;
    Ok(fs
        .chunks(3)
        .map(|c| NameTriple::new(c[0].clone(), c[1].clone(), c[2].clone()))
        .collect())
}

/// `T(f) = J̊₃(F(P̊_{3N,1}(f), …), G(…), H(…))` from `M_N` to `M₁`.
pub fn translate_uniform(fun: &UniformFn) -> Result<MsUniformFn> {
    let n = fun.arity();
    let ds = decodes(3 * n, &Operator::projection(1, 1)?)?;
    let outs = fun
        .operators()
        .iter()
        .map(|op| op.compose_with_arity(&ds, 1))
        .collect::<Result<Vec<_>>>()?;
    MsUniformFn::new(make_mn(n)?, make_mn(1)?, encode(&outs)?)
}

/// `F(f₁, g₁, h₁, …) = P̊_{3,1}(T(J̊_{3N}(f₁, g₁, h₁, …)))`, similarly `G`, `H`.
pub fn translate_uniform_back(fun: &MsUniformFn) -> Result<UniformFn> {
    let n = mn_dimension(&fun.domain)?;
    expect_m1(&fun.codomain)?;
    let out = fun.operator().compose(&[encode_args(n, 3 * n)?])?;
    let [f, g, h]: [Operator; 3] = decodes(3, &out)?.try_into().expect("three parts");
    UniformFn::new(n, f, g, h)
}

/// `E′(f) = E(P̊_{3N,1}(f), …)` and
/// `T(f, e) = J̊₃(F(P̊_{3N,1}(f), …, e), G(…, e), H(…, e))`.
pub fn translate_conditional(fun: &ConditionalFn) -> Result<MsConditionalFn> {
    let n = fun.arity();
    let e = fun
        .condition()
        .compose_with_arity(&decodes(3 * n, &Operator::projection(1, 1)?)?, 1)?;
    let mut args = decodes(3 * n, &Operator::projection(2, 1)?)?;
    args.push(Operator::projection(2, 2)?);
    let outs = fun
        .operators()
        .iter()
        .map(|op| op.compose(&args))
        .collect::<Result<Vec<_>>>()?;
    MsConditionalFn::new(make_mn(n)?, make_mn(1)?, e, encode(&outs)?)
}

/// `E(f₁, …) = E′(J̊_{3N}(f₁, …))` and
/// `F(f₁, …, e) = P̊_{3,1}(T(J̊_{3N}(f₁, …), e))`, similarly `G`, `H`.
pub fn translate_conditional_back(fun: &MsConditionalFn) -> Result<ConditionalFn> {
    let n = mn_dimension(&fun.domain)?;
    expect_m1(&fun.codomain)?;
    let k = 3 * n;
    let e = fun.condition().compose(&[encode_args(n, k)?])?;
    let out = fun
        .operator()
        .compose(&[encode_args(n, k + 1)?, Operator::projection(k + 1, k + 1)?])?;
    let [f, g, h]: [Operator; 3] = decodes(3, &out)?.try_into().expect("three parts");
    ConditionalFn::new(n, e, f, g, h)
}
