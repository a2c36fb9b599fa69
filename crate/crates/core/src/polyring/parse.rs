//! Text syntax for polynomials: `x1^2 - 1`, `3/2*x1*h`, `(x1 + x2)^2`.
//! Ideals are `;`-separated lists of polynomials.

use num_bigint::BigInt;

use super::MultiPoly;
use crate::error::{parse_err, Result};
use crate::rootdata::Q;

/// `x1..xn` followed by `h` for ħ when `with_hbar`.
pub fn default_names(n: usize, with_hbar: bool) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    if with_hbar {
        v.push("h".into());
    }
    v
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().map(|x| x.1).collect();
            out.push((Tok::Num(text.parse().expect("digits")), pos));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let mut text: String = chars[i..j].iter().map(|x| x.1).collect();
            if text == "ħ" {
                text = "h".into();
            }
            out.push((Tok::Ident(text), pos));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(parse_err(s, pos, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.src.len())
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.nvars());
        let mut sign = 1;
        match self.peek() {
            Some(Tok::Op('-')) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Op('+')) => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let col = self.col();
                    let d = self.factor()?;
                    let c = match (d.num_terms(), d.total_degree()) {
                        (1, Some(0)) => d.terms().values().next().unwrap().clone(),
                        _ => return Err(parse_err(self.src, col, "division only by nonzero constants")),
                    };
                    acc = acc.scale(&c.recip());
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| parse_err(self.src, col, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(parse_err(self.src, col, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let col = self.col();
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(n, Q::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.names.iter().position(|x| *x == name) {
                    Some(i) => Ok(MultiPoly::var(n, i)),
                    None => Err(parse_err(self.src, col, format!("unknown variable {name:?}"))),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(parse_err(self.src, self.col(), "expected ')'")),
                }
            }
            _ => Err(parse_err(self.src, col, "expected a number, variable or '('")),
        }
    }
}

/// Parse a polynomial in the named variables.
pub fn parse_poly(s: &str, names: &[String]) -> Result<MultiPoly> {
    let toks = lex(s)?;
    let mut p = Parser { src: s, toks, pos: 0, names };
    if p.peek().is_none() {
        return Err(parse_err(s, 0, "empty polynomial"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(parse_err(s, p.col(), "unexpected trailing input"));
    }
    Ok(e)
}

/// Parse a `;`-separated list of polynomials.
pub fn parse_ideal(s: &str, names: &[String]) -> Result<Vec<MultiPoly>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(';') {
        if !part.trim().is_empty() {
            out.push(parse_poly(part, names).map_err(|e| match e {
                crate::error::Error::Parse { column, message, .. } => parse_err(s, offset + column, message),
                other => other,
            })?);
        }
        offset += part.len() + 1;
    }
    Ok(out)
}
