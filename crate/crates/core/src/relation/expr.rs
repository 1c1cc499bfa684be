//! A small arithmetic expression language for relation targets and bases.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | primary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := primary ('^' unary)?
//! primary:= number | 'pi' | 'euler' | 'log' (INT | '(' expr ')')
//!         | ('sin' | 'cos' | 'sqrt' | 'exp') '(' expr ')' | '(' expr ')'
//! ```

use crate::arith::{checked_ln, checked_sqrt, PrecisionContext, Real};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            if c == 'π' {
                out.push(Token::Ident("pi".into()));
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect::<String>().to_lowercase()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ctx: &'a PrecisionContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Token::Op(o)) if o == c => Ok(()),
            other => Err(Error::Parse(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn expr<T: Real>(&mut self) -> Result<T> {
        let mut acc = self.term::<T>()?;
        while let Some(Token::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term::<T>()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term<T: Real>(&mut self) -> Result<T> {
        let mut acc = self.unary::<T>()?;
        loop {
            match self.peek().cloned() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    acc *= self.unary::<T>()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary::<T>()?;
                    if d.is_zero() {
                        return Err(Error::domain("division by zero in expression"));
                    }
                    acc /= d;
                }
                Some(Token::Ident(_)) | Some(Token::Op('(')) => acc *= self.power::<T>()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary<T: Real>(&mut self) -> Result<T> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary::<T>()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<T: Real>(&mut self) -> Result<T> {
        let base = self.primary::<T>()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let e = self.unary::<T>()?;
            if let Some(k) = e.round_to_i128().filter(|&k| T::from_big_int(&k.into(), self.ctx) == e) {
                let k = i32::try_from(k).map_err(|_| Error::domain("exponent too large"))?;
                return Ok(base.powi(k));
            }
            return Ok((checked_ln(&base)? * e).exp());
        }
        Ok(base)
    }

    fn call_arg<T: Real>(&mut self) -> Result<T> {
        self.expect('(')?;
        let v = self.expr::<T>()?;
        self.expect(')')?;
        Ok(v)
    }

    fn primary<T: Real>(&mut self) -> Result<T> {
        match self.next() {
            Some(Token::Num(s)) => T::parse_decimal(&s, self.ctx)
                .ok_or_else(|| Error::Parse(format!("bad number {s:?}"))),
            Some(Token::Op('(')) => {
                let v = self.expr::<T>()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Token::Ident(name)) => match name.as_str() {
                "pi" => Ok(T::pi(self.ctx)),
                "euler" => Ok(T::euler_gamma(self.ctx)),
                "log" | "ln" => {
                    let arg = match self.peek().cloned() {
                        Some(Token::Num(s)) => {
                            self.pos += 1;
                            T::parse_decimal(&s, self.ctx).ok_or_else(|| Error::Parse(format!("bad number {s:?}")))?
                        }
                        _ => self.call_arg::<T>()?,
                    };
                    checked_ln(&arg)
                }
                "sin" => Ok(self.call_arg::<T>()?.sin()),
                "cos" => Ok(self.call_arg::<T>()?.cos()),
                "exp" => Ok(self.call_arg::<T>()?.exp()),
                "sqrt" => checked_sqrt(&self.call_arg::<T>()?),
                other => Err(Error::Parse(format!("unknown name {other:?}"))),
            },
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Evaluate an expression such as `log2 - 3*log(3) + sin(2pi/5)*log5`.
pub fn evaluate<T: Real>(src: &str, ctx: &PrecisionContext) -> Result<T> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0, ctx };
    let v = p.expr::<T>()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(v)
}

/// Split a comma-separated list, ignoring commas inside parentheses.
pub fn split_list(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
