use super::elem::{AlgElem, Word};
use super::AlgError;
use crate::scalar::Scalar;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{}`", n),
            Tok::Ident(s) => format!("identifier `{}`", s),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, usize)>, AlgError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'-' => {
                if b.get(i + 1) == Some(&b'>') {
                    i += 1;
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            b'0'..=b'9' => {
                while i + 1 < b.len() && b[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Num(src[start..=i].parse().unwrap())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < b.len() && (b[i + 1].is_ascii_alphanumeric() || b[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..=i].to_string())
            }
            _ => {
                return Err(AlgError::Syntax {
                    pos: i,
                    expected: "a token".into(),
                    found: format!("character `{}`", c as char),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::Eof, src.len()));
    Ok(out)
}

/// Operations the expression evaluator needs from its surroundings.
pub(crate) trait ExprContext {
    fn generator(&self, name: &str) -> Option<u8>;
    fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem, AlgError>;
    fn s_value(&self) -> Scalar;
}

pub(crate) struct Parser<'a, C: ExprContext> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ctx: &'a C,
}

impl<'a, C: ExprContext> Parser<'a, C> {
    pub fn new(src: &str, ctx: &'a C) -> Result<Self, AlgError> {
        Ok(Parser {
            toks: lex(src)?,
            at: 0,
            ctx,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, AlgError> {
        Err(AlgError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), AlgError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn finish(&self) -> Result<(), AlgError> {
        if self.at_eof() {
            Ok(())
        } else {
            self.fail("an operator or end of input")
        }
    }

    pub fn expr(&mut self) -> Result<AlgElem, AlgError> {
        let mut acc = AlgElem::zero();
        let mut sign = Scalar::one();
        match self.peek() {
            Tok::Minus => {
                self.bump();
                sign = -Scalar::one();
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&sign, &t);
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    sign = Scalar::one();
                }
                Tok::Minus => {
                    self.bump();
                    sign = -Scalar::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<AlgElem, AlgError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let r = self.power()?;
                    acc = self.ctx.mul(&acc, &r)?;
                }
                Tok::Slash => {
                    self.bump();
                    let p = self.pos();
                    let r = self.power()?;
                    let c = r.as_scalar().ok_or(AlgError::Syntax {
                        pos: p,
                        expected: "a scalar divisor".into(),
                        found: "an algebra element".into(),
                    })?;
                    let inv = c.inv().map_err(|_| AlgError::Syntax {
                        pos: p,
                        expected: "a nonzero divisor".into(),
                        found: "zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ if self.starts_atom() => {
                    let r = self.power()?;
                    acc = self.ctx.mul(&acc, &r)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<AlgElem, AlgError> {
        let is_q = matches!(self.peek(), Tok::Ident(s) if s == "q");
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let p = self.pos();
        let (num, den) = self.exponent()?;
        if den == 2 {
            if !is_q {
                return Err(AlgError::Syntax {
                    pos: p,
                    expected: "an integer exponent".into(),
                    found: "a half-integer exponent on a non-q base".into(),
                });
            }
            let v = self.ctx.s_value().pow(num).map_err(|_| AlgError::Syntax {
                pos: p,
                expected: "an invertible base".into(),
                found: "zero".into(),
            })?;
            return Ok(AlgElem::scalar(v));
        }
        if num < 0 {
            let c = base.as_scalar().ok_or(AlgError::Syntax {
                pos: p,
                expected: "a nonnegative exponent".into(),
                found: "a negative power of an algebra element".into(),
            })?;
            let v = c.pow(num).map_err(|_| AlgError::Syntax {
                pos: p,
                expected: "an invertible base".into(),
                found: "zero".into(),
            })?;
            return Ok(AlgElem::scalar(v));
        }
        let mut acc = AlgElem::one();
        for _ in 0..num {
            acc = self.ctx.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<i64, AlgError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.peek().clone() {
            Tok::Num(n) => {
                let v: i64 = i64::try_from(&n).map_err(|_| AlgError::Syntax {
                    pos: self.pos(),
                    expected: "a small integer".into(),
                    found: format!("`{}`", n),
                })?;
                self.bump();
                Ok(if neg { -v } else { v })
            }
            _ => self.fail("an integer"),
        }
    }

    /// `n`, `-n`, or `(k/2)`; returns (numerator, denominator in {1, 2}).
    fn exponent(&mut self) -> Result<(i64, i64), AlgError> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let n = self.int()?;
            let d = if *self.peek() == Tok::Slash {
                self.bump();
                self.int()?
            } else {
                1
            };
            self.expect(Tok::RParen, "`)`")?;
            return match d {
                1 => Ok((n, 1)),
                2 if n % 2 == 0 => Ok((n / 2, 1)),
                2 => Ok((n, 2)),
                _ => Err(AlgError::Syntax {
                    pos: self.pos(),
                    expected: "denominator 1 or 2".into(),
                    found: format!("{}", d),
                }),
            };
        }
        Ok((self.int()?, 1))
    }

    fn atom(&mut self) -> Result<AlgElem, AlgError> {
        let p = self.pos();
        if !self.starts_atom() {
            return self.fail("a number, identifier or `(`");
        }
        match self.bump() {
            Tok::Num(n) => Ok(AlgElem::scalar(Scalar::from(n))),
            Tok::Ident(s) => match s.as_str() {
                "q" => {
                    let s = self.ctx.s_value();
                    Ok(AlgElem::scalar(s.mul(&s)))
                }
                "i" => Ok(AlgElem::scalar(Scalar::i())),
                name => match self.ctx.generator(name) {
                    Some(g) => Ok(AlgElem::term(vec![g], Scalar::one())),
                    None => Err(AlgError::UnknownGenerator {
                        name: name.into(),
                        pos: p,
                    }),
                },
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            _ => unreachable!(),
        }
    }

    /// A rule left side: identifiers with optional positive powers, possibly
    /// containing one `{x y ...}*` group. Returns the word before the group,
    /// the group, and the word after it.
    pub fn rule_lhs(&mut self) -> Result<(Word, Option<Vec<u8>>, Word), AlgError> {
        let mut before = Vec::new();
        let mut group = None;
        let mut after = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(name) => {
                    let p = self.pos();
                    self.bump();
                    let g = self.ctx.generator(&name).ok_or(AlgError::UnknownGenerator {
                        name: name.clone(),
                        pos: p,
                    })?;
                    let mut n = 1;
                    if *self.peek() == Tok::Caret {
                        self.bump();
                        n = self.int()?;
                        if n < 1 {
                            return self.fail("a positive power");
                        }
                    }
                    let target = if group.is_some() { &mut after } else { &mut before };
                    for _ in 0..n {
                        target.push(g);
                    }
                }
                Tok::Star => {
                    self.bump();
                }
                Tok::LBrace if group.is_none() => {
                    self.bump();
                    let mut gs = Vec::new();
                    while let Tok::Ident(name) = self.peek().clone() {
                        let p = self.pos();
                        self.bump();
                        gs.push(self.ctx.generator(&name).ok_or(AlgError::UnknownGenerator {
                            name,
                            pos: p,
                        })?);
                    }
                    self.expect(Tok::RBrace, "`}`")?;
                    self.expect(Tok::Star, "`*` after a `{...}` group")?;
                    group = Some(gs);
                }
                Tok::Arrow => {
                    self.bump();
                    return Ok((before, group, after));
                }
                _ => return self.fail("a generator, `{` or `->`"),
            }
        }
    }
}

/// Render an input line with a caret under byte offset `pos`.
pub fn caret(input: &str, pos: usize) -> String {
    format!("{}\n{}^", input, " ".repeat(pos.min(input.len())))
}
