//! Text grammar for polynomials: identifiers, integer literals, the
//! operators `+ - * ^`, and parentheses; whitespace is ignored. Example:
//! `x*y^2 - 3*z`.

use crate::algebra::poly::{PolyRing, Polynomial};
use crate::{KResult, KernelError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

fn line_col(src: &[u8], pos: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for &b in &src[..pos.min(src.len())] {
        if b == b'\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> KernelError {
        let (line, col) = line_col(self.src, at);
        KernelError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn tokens(mut self, modulus: u64) -> KResult<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((Tok::Plus, start));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((Tok::Minus, start));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((Tok::Star, start));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((Tok::Caret, start));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((Tok::LParen, start));
                    self.pos += 1;
                }
                b')' => {
                    out.push((Tok::RParen, start));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let mut val: u64 = 0;
                    let mut raw_len = 0usize;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        let d = (self.src[self.pos] - b'0') as u64;
                        val = (val * 10 + d) % modulus.max(1);
                        raw_len += 1;
                        self.pos += 1;
                    }
                    if raw_len > 18 {
                        // already reduced mod p on the fly; length cap only
                        // guards absurd inputs
                    }
                    out.push((Tok::Int(val), start));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let mut end = self.pos;
                    while end < self.src.len()
                        && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                    {
                        end += 1;
                    }
                    let name = std::str::from_utf8(&self.src[self.pos..end])
                        .map_err(|_| self.err(start, "invalid utf8 in identifier"))?
                        .to_string();
                    self.pos = end;
                    out.push((Tok::Ident(name), start));
                }
                other => {
                    return Err(self.err(start, format!("unexpected character {:?}", other as char)));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl<'a> Parser<'a> {
    fn err_at(&self, at: usize, msg: impl Into<String>) -> KernelError {
        let (line, col) = line_col(self.src, at);
        KernelError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn err_here(&self, msg: impl Into<String>) -> KernelError {
        let at = self
            .toks
            .get(self.idx)
            .map(|(_, p)| *p)
            .unwrap_or(self.src.len());
        self.err_at(at, msg)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(t, _)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> KResult<Polynomial> {
        let mut negate_first = false;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            negate_first = true;
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = self.ring.neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> KResult<Polynomial> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    // factor := base ('^' int)?
    fn factor(&mut self) -> KResult<Polynomial> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let e = match self.bump() {
                Some(Tok::Int(v)) => v,
                _ => return Err(self.err_here("expected integer exponent after '^'")),
            };
            if e > 1_000 {
                return Err(self.err_here(format!("exponent {e} too large")));
            }
            let mut acc = self.ring.one();
            for _ in 0..e {
                acc = self.ring.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    // base := ident | int | '(' expr ')'
    fn base(&mut self) -> KResult<Polynomial> {
        match self.bump() {
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(self.ring.var(i)),
                None => {
                    self.idx -= 1;
                    Err(self.err_here(format!(
                        "unknown variable {:?}; ring variables are [{}]",
                        name,
                        self.ring.vars().join(", ")
                    )))
                }
            },
            Some(Tok::Int(v)) => Ok(self.ring.constant(v as i64)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err_here("expected ')'")),
                }
            }
            _ => Err(self.err_here("expected variable, integer, or '('")),
        }
    }
}

/// Parses one polynomial in the ring's variables. Exponent caveat: `^` has
/// higher precedence than `*`, and exponents must be literal integers.
pub fn parse_polynomial(ring: &PolyRing, src: &str) -> KResult<Polynomial> {
    let lexer = Lexer {
        src: src.as_bytes(),
        pos: 0,
    };
    let toks = lexer.tokens(ring.field().characteristic())?;
    if toks.is_empty() {
        return Err(KernelError::Parse {
            line: 1,
            col: 1,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        ring,
        src: src.as_bytes(),
        toks,
        idx: 0,
    };
    let poly = p.expr()?;
    if p.idx != p.toks.len() {
        return Err(p.err_here("trailing input after polynomial"));
    }
    Ok(poly)
}

/// Parses a polynomial and insists it is homogeneous and nonzero; the
/// graded kernel rejects anything else at the boundary.
pub fn parse_homogeneous(ring: &PolyRing, src: &str) -> KResult<Polynomial> {
    let p = parse_polynomial(ring, src)?;
    if p.is_zero() {
        return Err(KernelError::degenerate(format!(
            "polynomial {src:?} is zero in characteristic {}",
            ring.field().characteristic()
        )));
    }
    if !p.is_homogeneous() {
        return Err(KernelError::unsupported(format!(
            "inhomogeneous polynomial {src:?}; the graded kernel requires homogeneous input"
        )));
    }
    Ok(p)
}
