//! Text syntax for polynomials and derivations.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | 'x' uint | 'd' uint | 'H' uint | '(' expr ')' | '-' factor
//! ```
//!
//! A rational literal is `uint` or `uint/uint`. Indices run from 1 to 9.
//! Because unary minus takes a whole factor, `-x1^2` is `-(x1^2)`.

use std::fmt;

use divlie_core::Rational;
use num_traits::Zero;

pub const MAX_INDEX: usize = 9;

/// Syntax tree. Indices are stored one-based, as written; literals are
/// nonnegative (a leading minus is a `Neg` node).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Var(usize),
    DOp(usize),
    HOp(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Largest variable or direction index used, or 0.
    pub fn max_index(&self) -> usize {
        match self {
            Expr::Lit(_) => 0,
            Expr::Var(i) | Expr::DOp(i) | Expr::HOp(i) => *i,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_index().max(b.max_index()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_index(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Var(char, String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Var(c, s) => write!(f, "`{c}{s}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn err(pos: Pos, message: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.line,
        col: pos.col,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut chars = Vec::new();
    let mut pos = Pos { line: 1, col: 1 };
    for c in text.chars() {
        chars.push((c, pos));
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    }
    let mut out = Vec::new();
    let mut k = 0;
    let digits = |k: &mut usize| {
        let mut s = String::new();
        while let Some(&(d, _)) = chars.get(*k) {
            if !d.is_ascii_digit() {
                break;
            }
            s.push(d);
            *k += 1;
        }
        s
    };
    while let Some(&(c, start)) = chars.get(k) {
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '0'..='9' => Tok::Num(digits(&mut k)),
            'x' | 'd' | 'H' => {
                k += 1;
                let s = digits(&mut k);
                if s.is_empty() {
                    return Err(err(start, format!("`{c}` must be followed by an index 1..{MAX_INDEX}")));
                }
                Tok::Var(c, s)
            }
            _ => {
                k += 1;
                match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(err(start, format!("unexpected character `{other}`"))),
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    open: Vec<Pos>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let (tok, pos) = &self.toks[self.at];
        if *tok == Tok::End {
            if let Some(p) = self.open.last() {
                return err(*p, format!("`(` is never closed; expected {wanted} before end of input"));
            }
        }
        err(*pos, format!("expected {wanted}, found {tok}"))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.next();
                let k: u32 = s
                    .parse()
                    .map_err(|_| err(pos, format!("exponent {s} overflows a 32-bit exponent")))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(self.unexpected("a nonnegative integer exponent")),
        }
    }

    fn index(pos: Pos, c: char, s: &str) -> Result<usize, ParseError> {
        match s.parse::<usize>() {
            Ok(i) if (1..=MAX_INDEX).contains(&i) => Ok(i),
            _ => Err(err(pos, format!("index of `{c}{s}` must be between 1 and {MAX_INDEX}"))),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.next();
                let num: Rational = Rational::from_integer(s.parse().expect("digits"));
                if *self.peek() != Tok::Slash {
                    return Ok(Expr::Lit(num));
                }
                self.next();
                let dpos = self.pos();
                match self.next().0 {
                    Tok::Num(d) => {
                        let den: Rational = Rational::from_integer(d.parse().expect("digits"));
                        if den.is_zero() {
                            return Err(err(dpos, "zero denominator"));
                        }
                        Ok(Expr::Lit(num / den))
                    }
                    _ => Err(err(dpos, "expected a denominator after `/`")),
                }
            }
            Tok::Var(c, s) => {
                self.next();
                let i = Self::index(pos, c, &s)?;
                Ok(match c {
                    'x' => Expr::Var(i),
                    'd' => Expr::DOp(i),
                    _ => Expr::HOp(i),
                })
            }
            Tok::LParen => {
                self.next();
                self.open.push(pos);
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.next();
                self.open.pop();
                Ok(e)
            }
            Tok::Minus => {
                self.next();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            _ => Err(self.unexpected("a number, variable, `(` or `-`")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        open: Vec::new(),
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        let (tok, pos) = &p.toks[p.at];
        return Err(err(*pos, format!("unexpected {tok}")));
    }
    Ok(e)
}

fn write_lit(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl Expr {
    fn is_sum(&self) -> bool {
        matches!(self, Expr::Add(..) | Expr::Sub(..))
    }

    fn fmt_paren(&self, f: &mut fmt::Formatter<'_>, paren: bool) -> fmt::Result {
        if paren {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(c) => write_lit(f, c),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::DOp(i) => write!(f, "d{i}"),
            Expr::HOp(i) => write!(f, "H{i}"),
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                b.fmt_paren(f, b.is_sum())
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                b.fmt_paren(f, b.is_sum())
            }
            Expr::Mul(a, b) => {
                a.fmt_paren(f, a.is_sum())?;
                f.write_str("*")?;
                b.fmt_paren(f, b.is_sum() || matches!(**b, Expr::Mul(..)))
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_paren(f, a.is_sum() || matches!(**a, Expr::Mul(..)))
            }
            Expr::Pow(a, k) => {
                let paren = match &**a {
                    Expr::Lit(c) => !c.is_integer(),
                    Expr::Var(_) | Expr::DOp(_) | Expr::HOp(_) => false,
                    _ => true,
                };
                a.fmt_paren(f, paren)?;
                write!(f, "^{k}")
            }
        }
    }
}
