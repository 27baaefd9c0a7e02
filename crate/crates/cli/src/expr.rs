//! Linear element expressions: `expr := term (('+'|'-') term)*`,
//! `term := coeff ('*' symbol)? | symbol`, `coeff := int ('/' posint)?`,
//! `symbol := i | j | k | e<digit><digit> | b<digits>`.

use std::fmt;

use divalg::algebra::{AlgebraDef, AlgebraElem};
use divalg::error::{Error, Result};
use divalg::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    /// `None` for a scalar term.
    pub symbol: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Cursor {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            col: self.col0 + self.pos + 1,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn coeff(&mut self) -> Result<Rational> {
        let num = self.digits();
        let num: i64 = num
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        if self.peek() != Some('/') {
            return Ok(Rational::from_int(num));
        }
        self.pos += 1;
        self.skip_ws();
        let den = self.digits();
        if den.is_empty() {
            return Err(self.error("expected a denominator"));
        }
        match den.parse::<i64>() {
            Ok(d) if d > 0 => Ok(Rational::new(num, d)),
            Ok(_) => Err(self.error("denominator must be positive")),
            Err(_) => Err(self.error("integer out of range")),
        }
    }

    fn symbol(&mut self) -> Result<String> {
        match self.peek() {
            Some(c @ ('i' | 'j' | 'k')) => {
                self.pos += 1;
                Ok(c.to_string())
            }
            Some('e') => {
                self.pos += 1;
                let d: String = self.chars[self.pos..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .take(2)
                    .collect();
                if d.len() != 2 {
                    return Err(self.error("matrix unit needs two digits, as in e12"));
                }
                self.pos += 2;
                Ok(format!("e{d}"))
            }
            Some('b') => {
                self.pos += 1;
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.error("basis symbol needs an index, as in b0"));
                }
                Ok(format!("b{d}"))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn term(&mut self, negate: bool) -> Result<Term> {
        let sign = |r: Rational| if negate { -r } else { r };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = sign(self.coeff()?);
                if self.peek() == Some('*') {
                    self.pos += 1;
                    let s = self.symbol()?;
                    Ok(Term {
                        coeff,
                        symbol: Some(s),
                    })
                } else {
                    Ok(Term {
                        coeff,
                        symbol: None,
                    })
                }
            }
            _ => Ok(Term {
                coeff: sign(Rational::one()),
                symbol: Some(self.symbol()?),
            }),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        Self::parse_at(text, 1, 0)
    }

    /// Parses with error positions offset to `line` and column `col0 + 1`.
    pub fn parse_at(text: &str, line: usize, col0: usize) -> Result<Expr> {
        let mut c = Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col0,
        };
        let mut negate = false;
        if c.peek() == Some('-') {
            c.pos += 1;
            negate = true;
        }
        let mut terms = vec![c.term(negate)?];
        loop {
            match c.peek() {
                None => break,
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(ch) => return Err(c.error(format!("expected `+` or `-`, found `{ch}`"))),
            }
            c.pos += 1;
            terms.push(c.term(negate)?);
        }
        Ok(Expr { terms })
    }

    /// Evaluates in `alg`. `b<idx>` names the basis vector of that index
    /// in any algebra; other symbols must be basis names.
    pub fn eval(&self, alg: &AlgebraDef) -> Result<AlgebraElem> {
        let ctx = alg.ctx();
        let mut acc = alg.zero();
        for t in &self.terms {
            let c = ctx.rational(&t.coeff)?;
            let v = match &t.symbol {
                None => alg.one(),
                Some(s) => alg.basis(symbol_index(alg, s)?),
            };
            acc = &acc + &v.scale(&c);
        }
        Ok(acc)
    }
}

fn symbol_index(alg: &AlgebraDef, s: &str) -> Result<usize> {
    if let Some(i) = alg.basis_index(s) {
        return Ok(i);
    }
    if let Some(idx) = s.strip_prefix('b').and_then(|d| d.parse::<usize>().ok()) {
        if idx < alg.dim() {
            return Ok(idx);
        }
    }
    Err(Error::UnknownSymbol(s.to_string()))
}

/// Parses and evaluates in one step.
pub fn parse_element(text: &str, alg: &AlgebraDef) -> Result<AlgebraElem> {
    Expr::parse(text)?.eval(alg)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.abs();
            match (n, t.coeff.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match &t.symbol {
                None => write!(f, "{mag}")?,
                Some(s) if mag.is_one() => f.write_str(s)?,
                Some(s) => write!(f, "{mag}*{s}")?,
            }
        }
        Ok(())
    }
}
