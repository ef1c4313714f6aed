use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, VarContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = lx.src[start..i].parse().expect("digits");
                lx.toks.push((Tok::Num(n), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), start));
            } else if "+-*/^()".contains(c) {
                lx.toks.push((Tok::Op(c), i));
                i += 1;
            } else {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'c> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ctx: &'c Arc<VarContext>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() {
                        return Err(Error::Syntax { pos, msg: "division by a non-constant".into() });
                    }
                    if d.is_zero() {
                        return Err(Error::Syntax { pos, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Op('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != &Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            (Tok::Num(n), pos) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
                Ok(base.pow(e))
            }
            (_, pos) => Err(Error::Syntax { pos, msg: "expected a non-negative integer exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.bump() {
            (Tok::Num(n), _) => Ok(Polynomial::constant(self.ctx, BigRational::from_integer(n))),
            (Tok::Ident(name), pos) => match self.ctx.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ctx, i)),
                None => Err(Error::UnknownIdentifier { name, pos }),
            },
            (Tok::Op('('), _) => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::Op(')'), _) => Ok(inner),
                    (_, pos) => Err(Error::Syntax { pos, msg: "expected `)`".into() }),
                }
            }
            (Tok::End, pos) => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
            (t, pos) => Err(Error::Syntax { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

/// Parses `+ - * / ^`, parentheses, integer literals and declared variable
/// names. Division is only allowed by nonzero constants, so `3/2*x` is a
/// rational coefficient.
pub fn parse_poly(src: &str, ctx: &Arc<VarContext>) -> Result<Polynomial> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { toks, at: 0, ctx };
    if p.peek() == &Tok::End {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("trailing input");
    }
    Ok(out)
}
