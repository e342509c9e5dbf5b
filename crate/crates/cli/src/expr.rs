//! Expressions over registered real functions and rational literals.

use condreal::elementary::FunctionRegistry;
use condreal::naming::{parse_rational, rational_name, NameTriple, Nat};
use condreal::sexpr::Sexpr;
use condreal::{Error, Result};

/// A parameter found while evaluating a conditional application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Search {
    pub call: String,
    pub s: Nat,
}

/// Builds the name pipeline for `expr` and returns the output name with the
/// searches performed, innermost first.
pub fn evaluate(
    expr: &Sexpr,
    reg: &FunctionRegistry,
    budget: u64,
) -> Result<(NameTriple, Vec<Search>)> {
    let mut searches = Vec::new();
    let name = eval_into(expr, reg, budget, &mut searches)?;
    Ok((name, searches))
}

fn eval_into(
    expr: &Sexpr,
    reg: &FunctionRegistry,
    budget: u64,
    searches: &mut Vec<Search>,
) -> Result<NameTriple> {
    let (head, args) = match expr {
        Sexpr::Atom(a) => {
            if let Ok(q) = parse_rational(a) {
                return Ok(rational_name(&q));
            }
            (a.as_str(), &[][..])
        }
        Sexpr::List(items) => match items.split_first() {
            Some((Sexpr::Atom(h), rest)) => (h.as_str(), rest),
            _ => return Err(Error::Parse(format!("expected (function args..), got `{expr}`"))),
        },
    };
    let entry = reg
        .get(head)
        .ok_or_else(|| Error::UnknownFunction(head.to_string()))?;
    if entry.fun.arity() != args.len() {
        return Err(Error::Parse(format!(
            "`{head}` takes {} argument(s), got {}",
            entry.fun.arity(),
            args.len()
        )));
    }
    let names = args
        .iter()
        .map(|a| eval_into(a, reg, budget, searches))
        .collect::<Result<Vec<_>>>()?;
    let out = entry.fun.apply(&names, budget)?;
    if let Some(s) = out.s {
        searches.push(Search {
            call: expr.to_string(),
            s,
        });
    }
    Ok(out.name)
}
