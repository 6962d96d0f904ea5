//! Small arithmetic-expression parser for classes typed at the command line.
//!
//! Grammar: sums and differences of products, `^` with integer exponents
//! (negative allowed), parentheses, integers, and the variables `y`, `t`,
//! `H`, `x`, `a1`, `a2`, …. Juxtaposition such as `3H` or `2y` multiplies.
//! Unicode superscripts (`t²`, `a2⁻¹`), `−` and `·` are normalised first.

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// Index `j` (0-based) of a variable named `a{j+1}`.
pub fn alpha_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('a')?;
    let j: usize = digits.parse().ok()?;
    j.checked_sub(1)
}

fn normalize(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_sup = false;
    for ch in s.chars() {
        let sup = match ch {
            '⁰' => Some('0'),
            '¹' => Some('1'),
            '²' => Some('2'),
            '³' => Some('3'),
            '⁴' => Some('4'),
            '⁵' => Some('5'),
            '⁶' => Some('6'),
            '⁷' => Some('7'),
            '⁸' => Some('8'),
            '⁹' => Some('9'),
            '⁻' => Some('-'),
            _ => None,
        };
        match sup {
            Some(c) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(c);
            }
            None => {
                in_sup = false;
                out.push(match ch {
                    '−' => '-',
                    '·' | '⋅' | '×' => '*',
                    c => c,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            toks.push(Tok::Int(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            // `a` takes a numeric index; other variables are single letters.
            if c == 'a' {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat_op('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.eat_op('+');
            self.product()?
        };
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))
        )
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.power()?));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_op('^') {
            let neg = self.eat_op('-');
            let e = match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.pos += 1;
                    i64::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))?
                }
                Some(Tok::Op('(')) => {
                    self.pos += 1;
                    let inner_neg = self.eat_op('-');
                    let v = match self.peek().cloned() {
                        Some(Tok::Int(v)) => v,
                        _ => return Err(Error::Parse("expected integer exponent".into())),
                    };
                    self.pos += 1;
                    if !self.eat_op(')') {
                        return Err(Error::Parse("unclosed exponent".into()));
                    }
                    let v = i64::try_from(v).map_err(|_| Error::Parse("exponent too large".into()))?;
                    if inner_neg {
                        -v
                    } else {
                        v
                    }
                }
                _ => return Err(Error::Parse("expected integer exponent".into())),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.power()?)))
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr> {
    let toks = lex(&normalize(s))?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {} in {s:?}",
            p.pos
        )));
    }
    Ok(e)
}
