//! Expression evaluator for `cosetnum calc`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := tuple | '(' expr ')' | 'inv(' expr ')' | rational | basis label
//! tuple   := '(' rational (',' rational)+ ')'
//! ```
//!
//! A bare rational `r` stands for `r·1`; basis labels are the ones the
//! pattern assigns (`i`, `j`, `k` for the four-dimensional systems).

use std::sync::Arc;

use cosetnum::algebra::parse_tuple;
use cosetnum::{parse_rational, Error, GeneralNumber, NumberSystem, Result};

pub fn evaluate(system: &Arc<NumberSystem>, text: &str) -> Result<GeneralNumber> {
    let mut p = Parser { system, src: text, pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    system: &'a Arc<NumberSystem>,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::ParseNumber(format!("{msg} at column {} of `{}`", self.pos + 1, self.src))
    }

    fn expr(&mut self) -> Result<GeneralNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') || self.eat('\u{2212}') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<GeneralNumber> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GeneralNumber> {
        if self.eat('-') || self.eat('\u{2212}') {
            return Ok(self.unary()?.neg());
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<GeneralNumber> {
        match self.peek() {
            Some('(') => self.parenthesized(),
            Some(c) if c.is_ascii_digit() => {
                let len = self.rest().find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(self.rest().len());
                let literal = &self.rest()[..len];
                let r = parse_rational(literal).map_err(|_| self.error(&format!("bad number `{literal}`")))?;
                self.pos += len;
                Ok(self.system.one().scale(&r))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let len = self.rest().find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(self.rest().len());
                let word = self.rest()[..len].to_string();
                self.pos += len;
                if word == "inv" {
                    if !self.eat('(') {
                        return Err(self.error("expected `(` after inv"));
                    }
                    let x = self.expr()?;
                    if !self.eat(')') {
                        return Err(self.error("expected `)`"));
                    }
                    return x.inverse();
                }
                let labels = self.system.pattern().basis_labels();
                match labels.iter().position(|l| *l == word) {
                    Some(idx) => Ok(self.system.basis(idx)),
                    None => Err(self.error(&format!("unknown name `{word}`"))),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Either a coefficient tuple or a grouped expression, told apart by a
    /// comma at nesting depth one.
    fn parenthesized(&mut self) -> Result<GeneralNumber> {
        let start = self.pos;
        let mut depth = 0usize;
        let mut tuple = false;
        let mut end = None;
        for (off, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(start + off + 1);
                        break;
                    }
                }
                ',' if depth == 1 => tuple = true,
                _ => {}
            }
        }
        let end = end.ok_or_else(|| self.error("unbalanced parentheses"))?;
        if tuple {
            let coeffs = parse_tuple(&self.src[start..end])?;
            self.pos = end;
            return self.system.number(coeffs).map_err(|e| match e {
                Error::DimensionMismatch { expected, found } => Error::ParseNumber(format!(
                    "`{}` has {found} components, system {} needs {expected}",
                    &self.src[start..end],
                    self.system.name()
                )),
                other => other,
            });
        }
        self.pos += 1;
        let x = self.expr()?;
        if !self.eat(')') {
            return Err(self.error("expected `)`"));
        }
        Ok(x)
    }
}
