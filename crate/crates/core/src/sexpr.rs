//! Minimal s-expression reader shared by the term syntax and CLI expressions.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String),
    List(Vec<Sexpr>),
}

impl Sexpr {
    pub fn parse(src: &str) -> Result<Sexpr> {
        let tokens = tokenize(src);
        let mut pos = 0;
        let expr = parse_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input after expression: `{}`",
                tokens[pos..].join(" ")
            )));
        }
        Ok(expr)
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(a) => Some(a),
            Sexpr::List(_) => None,
        }
    }
}

impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(a) => f.write_str(a),
            Sexpr::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn tokenize(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<Sexpr> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(Error::Parse("unclosed `(`".into())),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexpr::List(items));
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected `)`".into())),
        atom => Ok(Sexpr::Atom(atom.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_lists() {
        let e = Sexpr::parse(" (add 1/2 (neg 3)) ").unwrap();
        assert_eq!(e.to_string(), "(add 1/2 (neg 3))");
        assert_eq!(Sexpr::parse("7/3").unwrap(), Sexpr::Atom("7/3".into()));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(Sexpr::parse("(add 1").is_err());
        assert!(Sexpr::parse(")").is_err());
        assert!(Sexpr::parse("(a) b").is_err());
        assert!(Sexpr::parse("").is_err());
    }
}
