//! Turns a syntax tree into a polynomial or a derivation in `n` variables.

use std::fmt;

use divlie_core::{Derivation, Polynomial};

use crate::expr::{parse_expr, Expr};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Poly(Polynomial),
    Deriv(Derivation),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{p}"),
            Value::Deriv(d) => write!(f, "{d}"),
        }
    }
}

fn lower_error(msg: impl Into<String>) -> CliError {
    CliError::Lower(msg.into())
}

fn index(i: usize, n: usize, c: char) -> Result<usize, CliError> {
    if i == 0 || i > n {
        return Err(lower_error(format!("index of `{c}{i}` exceeds n = {n}")));
    }
    Ok(i - 1)
}

pub fn lower(e: &Expr, n: usize) -> Result<Value, CliError> {
    Ok(match e {
        Expr::Lit(c) => Value::Poly(Polynomial::constant(n, c.clone())),
        Expr::Var(i) => Value::Poly(Polynomial::var(n, index(*i, n, 'x')?)),
        Expr::DOp(i) => Value::Deriv(Derivation::partial(n, index(*i, n, 'd')?)?),
        Expr::HOp(i) => Value::Deriv(Derivation::euler(n, index(*i, n, 'H')?)?),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let sub = matches!(e, Expr::Sub(..));
            match (lower(a, n)?, lower(b, n)?) {
                (Value::Poly(p), Value::Poly(q)) => Value::Poly(if sub { &p - &q } else { &p + &q }),
                (Value::Deriv(p), Value::Deriv(q)) => Value::Deriv(if sub { &p - &q } else { &p + &q }),
                _ => return Err(lower_error("cannot add a polynomial and a derivation")),
            }
        }
        Expr::Neg(a) => match lower(a, n)? {
            Value::Poly(p) => Value::Poly(-p),
            Value::Deriv(d) => Value::Deriv(-&d),
        },
        Expr::Mul(a, b) => match (lower(a, n)?, lower(b, n)?) {
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(&p * &q),
            (Value::Poly(p), Value::Deriv(d)) => Value::Deriv(d.mul_poly(&p)?),
            (Value::Deriv(_), _) => {
                return Err(lower_error("a derivation may only be the rightmost factor of a term"))
            }
        },
        Expr::Pow(a, k) => match lower(a, n)? {
            Value::Poly(p) => Value::Poly(p.pow(*k)),
            Value::Deriv(_) => return Err(lower_error("a derivation cannot be raised to a power")),
        },
    })
}

/// Number of variables: `n` if given, else the largest index used (at least 1).
pub fn resolve_n(n: Option<usize>, exprs: &[&Expr]) -> usize {
    n.unwrap_or_else(|| exprs.iter().map(|e| e.max_index()).max().unwrap_or(0).max(1))
}

pub fn parse_value(text: &str, n: usize) -> Result<Value, CliError> {
    lower(&parse_expr(text)?, n)
}

pub fn parse_poly(text: &str, n: usize) -> Result<Polynomial, CliError> {
    match parse_value(text, n)? {
        Value::Poly(p) => Ok(p),
        Value::Deriv(_) => Err(lower_error(format!("`{text}` is a derivation, expected a polynomial"))),
    }
}

/// A polynomial is not silently promoted; only `0` counts as the zero derivation.
pub fn parse_derivation(text: &str, n: usize) -> Result<Derivation, CliError> {
    match parse_value(text, n)? {
        Value::Deriv(d) => Ok(d),
        Value::Poly(p) if p.is_zero() => Ok(Derivation::zero(n)),
        Value::Poly(_) => Err(lower_error(format!("`{text}` is a polynomial, expected a derivation"))),
    }
}
