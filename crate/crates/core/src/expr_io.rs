//! Text grammar, canonical printer, and structured (serde) encoding.
//!
//! ```text
//! expr     := term (('+' | '-') term)* ;
//! term     := factor ('*' factor)* ;
//! factor   := base ('^' natural)? ;
//! base     := rational | variable | '(' expr ')' | '-' factor ;
//! variable := 'x[' nat ',' nat ']' | 'y' nat ;
//! rational := integer ('/' natural)? ;
//! ```
//!
//! Whitespace is ignored between tokens and multiplication must be written
//! with `*`. Indices are one-based. A single expression may use matrix
//! variables or row variables, never both. The ambient grammar used for
//! 1-form coefficients replaces `variable` with `'x' nat`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix_ring::RingShape;
use crate::poly::{Monomial, Polynomial, VarKey};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Grammar {
    /// `x[i,j]` and `yi`
    Standard,
    /// `xi`, read as the ambient coordinate `i`
    Ambient,
}

/// Parses a matrix polynomial (`x[i,j]`) or a row polynomial (`yi`) whose
/// indices must fit `shape`.
pub fn parse(src: &str, shape: RingShape) -> Result<Polynomial> {
    Parser::new(src, Grammar::Standard, shape).run()
}

/// Parses a polynomial in the ambient coordinates `x1..xm`.
pub fn parse_ambient(src: &str, m: u32) -> Result<Polynomial> {
    let shape = RingShape::new(m, 1)?;
    Parser::new(src, Grammar::Ambient, shape).run()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    grammar: Grammar,
    shape: RingShape,
    saw_matrix: bool,
    saw_row: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, grammar: Grammar, shape: RingShape) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            grammar,
            shape,
            saw_matrix: false,
            saw_row: false,
        }
    }

    fn run(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error(format!("unexpected {}", self.describe_here())));
        }
        Ok(p)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn describe_here(&self) -> String {
        match self.src.get(self.pos) {
            Some(&b) => format!("'{}'", b as char),
            None => "end of input".to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected '{}', found {}",
                c as char,
                self.describe_here()
            )))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if self.eat(b'^') {
            let e = self.natural()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(b')')?;
                Ok(p)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'0'..=b'9') => self.rational().map(Polynomial::constant),
            Some(b'x') | Some(b'y') => self.variable().map(Polynomial::var),
            _ => Err(self.error(format!(
                "expected a number, variable or '(', found {}",
                self.describe_here()
            ))),
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected digits, found {}", self.describe_here())));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn natural(&mut self) -> Result<u32> {
        let start = self.pos;
        let d = self.digits()?;
        d.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("number {d} is too large"),
        })
    }

    fn rational(&mut self) -> Result<Rational> {
        let start = self.pos;
        let numer = self.digits()?;
        let denom = if self.eat(b'/') {
            Some(self.digits()?)
        } else {
            None
        };
        let text = match denom {
            Some(d) => format!("{numer}/{d}"),
            None => numer.to_string(),
        };
        text.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("invalid rational {text} (zero denominator?)"),
        })
    }

    fn variable(&mut self) -> Result<VarKey> {
        let start = self.pos;
        let letter = self.src[self.pos];
        self.pos += 1;
        let (m, n) = (self.shape.m(), self.shape.n());
        let var = match (self.grammar, letter) {
            (Grammar::Standard, b'x') => {
                // no whitespace inside the "x[" token
                if self.src.get(self.pos) != Some(&b'[') {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: "matrix variables are written x[i,j]".into(),
                    });
                }
                self.pos += 1;
                let i = self.natural()?;
                self.expect(b',')?;
                let j = self.natural()?;
                self.expect(b']')?;
                self.saw_matrix = true;
                VarKey::x(i, j)
            }
            (Grammar::Standard, _) => {
                let i = self.index_suffix(start)?;
                self.saw_row = true;
                VarKey::y(i)
            }
            (Grammar::Ambient, b'x') => VarKey::Row(self.index_suffix(start)?),
            (Grammar::Ambient, _) => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "form coefficients use the ambient variables x1..xm".into(),
                })
            }
        };
        if self.saw_matrix && self.saw_row {
            return Err(Error::MixedVariableKinds);
        }
        let in_range = match var {
            VarKey::Matrix { row, col } => (1..=m).contains(&row) && (1..=n).contains(&col),
            VarKey::Row(i) => (1..=m).contains(&i),
        };
        if !in_range {
            return Err(Error::VariableOutOfShape { var, m, n });
        }
        Ok(var)
    }

    /// The index directly following a variable letter, as in `y12`.
    fn index_suffix(&mut self, start: usize) -> Result<u32> {
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(Error::Syntax {
                pos: start,
                msg: "variable letter must be followed by its index".into(),
            });
        }
        self.natural()
    }
}

fn render(p: &Polynomial, name: impl Fn(VarKey) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (mono, coeff)) in p.terms().enumerate() {
        let negative = coeff.is_negative();
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = coeff.abs();
        let factors: Vec<String> = mono
            .factors()
            .iter()
            .map(|&(v, e)| match e {
                1 => name(v),
                _ => format!("{}^{e}", name(v)),
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Deterministic text form in graded-lex order; inverse of [`parse`].
pub fn print_canonical(p: &Polynomial) -> String {
    render(p, |v| v.to_string())
}

/// Prints with row variables named `x1..xm`, the ambient coordinate syntax.
pub fn print_ambient(p: &Polynomial) -> String {
    render(p, |v| match v {
        VarKey::Row(i) => format!("x{i}"),
        other => other.to_string(),
    })
}

/// One term of the structured encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredTerm {
    /// `"n"` or `"n/d"` in lowest terms.
    pub coeff: String,
    pub vars: Vec<StructuredVar>,
}

/// `["x", i, j, e]` or `["y", i, e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructuredVar {
    Matrix(String, u32, u32, u32),
    Row(String, u32, u32),
}

pub fn to_structured(p: &Polynomial) -> Vec<StructuredTerm> {
    p.terms()
        .map(|(mono, c)| StructuredTerm {
            coeff: c.to_string(),
            vars: mono
                .factors()
                .iter()
                .map(|&(v, e)| match v {
                    VarKey::Matrix { row, col } => StructuredVar::Matrix("x".into(), row, col, e),
                    VarKey::Row(i) => StructuredVar::Row("y".into(), i, e),
                })
                .collect(),
        })
        .collect()
}

pub fn from_structured(terms: &[StructuredTerm]) -> Result<Polynomial> {
    let bad = |msg: String| Error::Structured(msg);
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c: Rational = t.coeff.parse().map_err(|e| bad(format!("{e}")))?;
        let mut factors = Vec::with_capacity(t.vars.len());
        for v in &t.vars {
            let (key, e) = match v {
                StructuredVar::Matrix(tag, i, j, e) if tag == "x" => (VarKey::x(*i, *j), *e),
                StructuredVar::Row(tag, i, e) if tag == "y" => (VarKey::y(*i), *e),
                other => return Err(bad(format!("unknown variable encoding {other:?}"))),
            };
            if e == 0 || key.row() == 0 || matches!(key, VarKey::Matrix { col: 0, .. }) {
                return Err(bad(format!("zero index or exponent in {v:?}")));
            }
            factors.push((key, e));
        }
        out.push((Monomial::from_factors(factors), c));
    }
    Ok(Polynomial::from_terms(out))
}
