//! Text grammar for scalars, shared by matrix files and the CLI:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := literal | var
//! literal := uint ['/' uint]          -- base-ring literal, e.g. 7, 3/4
//! var     := 'x' [index] ['^' uint]   -- x over R[x]; x1..xm over R[x1..xm]
//! ```
//!
//! Whitespace is ignored everywhere. Parsing evaluates directly in the
//! target ring, so `3*x^2+1` over 𝔽₂[x] lands in canonical form (here
//! `x^2+1`). Errors carry the byte position of the offending token.

use super::{MPoly, Monomial, Ring, RingKind, Scalar, UPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Debug)]
enum Tok {
    Num(BigInt),
    Var(Option<u32>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

struct Spanned {
    tok: Tok,
    at: usize,
}

fn err_at(at: usize, msg: impl Into<String>) -> Error {
    Error::parse(format!("col {}", at + 1), msg)
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            '-' => {
                i += 1;
                Tok::Minus
            }
            '*' => {
                i += 1;
                Tok::Star
            }
            '/' => {
                i += 1;
                Tok::Slash
            }
            '^' => {
                i += 1;
                Tok::Caret
            }
            _ if c.is_ascii_digit() => {
                let mut digits = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    digits.push(chars[i].1);
                    i += 1;
                }
                Tok::Num(digits.parse().expect("digit run"))
            }
            'x' => {
                i += 1;
                let mut digits = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    digits.push(chars[i].1);
                    i += 1;
                }
                if digits.is_empty() {
                    Tok::Var(None)
                } else {
                    let idx: u32 = digits
                        .parse()
                        .map_err(|_| err_at(at, "variable index too large"))?;
                    Tok::Var(Some(idx))
                }
            }
            _ => return Err(err_at(at, format!("unexpected character `{c}`"))),
        };
        out.push(Spanned { tok, at });
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<Spanned>,
    pos: usize,
    len: usize, // byte length of the input, for end-of-input spans
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next_at(&self) -> usize {
        self.peek().map(|s| s.at).unwrap_or(self.len)
    }

    fn advance(&mut self) -> Option<&Spanned> {
        let s = self.toks.get(self.pos);
        if s.is_some() {
            self.pos += 1;
        }
        s
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut negate = false;
        match self.peek().map(|s| &s.tok) {
            Some(Tok::Plus) => {
                self.pos += 1;
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.ring.neg(&acc);
        }
        loop {
            let sub = match self.peek().map(|s| &s.tok) {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc = if sub {
                self.ring.sub(&acc, &t)
            } else {
                self.ring.add(&acc, &t)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Star)) {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        let at = self.next_at();
        match self.advance().map(|s| &s.tok) {
            Some(Tok::Num(n)) => {
                let num = n.clone();
                if matches!(self.peek().map(|s| &s.tok), Some(Tok::Slash)) {
                    self.pos += 1;
                    let den_at = self.next_at();
                    match self.advance().map(|s| &s.tok) {
                        Some(Tok::Num(d)) => {
                            let den = d.clone();
                            self.literal(num, Some(den), at, den_at)
                        }
                        _ => Err(err_at(den_at, "expected an integer after `/`")),
                    }
                } else {
                    self.literal(num, None, at, at)
                }
            }
            Some(Tok::Var(idx)) => {
                let idx = *idx;
                let exp = if matches!(self.peek().map(|s| &s.tok), Some(Tok::Caret)) {
                    self.pos += 1;
                    let exp_at = self.next_at();
                    match self.advance().map(|s| &s.tok) {
                        Some(Tok::Num(e)) => {
                            use num_traits::ToPrimitive;
                            e.to_u32()
                                .ok_or_else(|| err_at(exp_at, "exponent too large"))?
                        }
                        _ => return Err(err_at(exp_at, "expected an exponent after `^`")),
                    }
                } else {
                    1
                };
                self.var_power(idx, exp, at)
            }
            _ => Err(err_at(at, "expected a number or variable")),
        }
    }

    /// Evaluate `num[/den]` as a literal of the coefficient ring and lift it
    /// into the target ring.
    fn literal(
        &self,
        num: BigInt,
        den: Option<BigInt>,
        at: usize,
        den_at: usize,
    ) -> Result<Scalar> {
        fn scalar_literal(
            ring: &Ring,
            num: &BigInt,
            den: Option<&BigInt>,
            at: usize,
            den_at: usize,
        ) -> Result<Scalar> {
            use num_traits::Zero;
            let n = ring.embed_bigint(num);
            let Some(d) = den else {
                return Ok(n);
            };
            if d.is_zero() {
                return Err(err_at(den_at, "zero denominator"));
            }
            match &ring.0 {
                RingKind::Rat | RingKind::Fp(_) => {
                    let d = ring.embed_bigint(d);
                    ring.div(&n, &d)
                        .map_err(|_| err_at(den_at, "zero denominator"))
                }
                RingKind::Int => {
                    let d = ring.embed_bigint(d);
                    ring.div_exact(&n, &d)
                        .map_err(|_| err_at(at, "rational literals are not elements of Z"))
                }
                _ => unreachable!("literal bases are scalar rings"),
            }
        }

        match &self.ring.0 {
            RingKind::Int | RingKind::Fp(_) | RingKind::Rat => {
                scalar_literal(self.ring, &num, den.as_ref(), at, den_at)
            }
            RingKind::Poly(_) => {
                let base = self.ring.base_ring().unwrap();
                let c = scalar_literal(&base, &num, den.as_ref(), at, den_at)?;
                Ok(Scalar::Poly(UPoly::constant(c)))
            }
            RingKind::MPoly(_, n) => {
                let base = self.ring.base_ring().unwrap();
                let c = scalar_literal(&base, &num, den.as_ref(), at, den_at)?;
                Ok(Scalar::MPoly(MPoly::constant(*n, c)))
            }
            RingKind::Frac(_) => {
                let base = self.ring.base_ring().unwrap();
                let c = scalar_literal(&base, &num, den.as_ref(), at, den_at)?;
                Ok(Scalar::Frac(Box::new(super::RatFunc::from_poly(
                    &base,
                    UPoly::constant(c),
                ))))
            }
        }
    }

    fn var_power(&self, idx: Option<u32>, exp: u32, at: usize) -> Result<Scalar> {
        match &self.ring.0 {
            RingKind::Poly(_) => match idx {
                None => {
                    let base = self.ring.base_ring().unwrap();
                    Ok(Scalar::Poly(UPoly::monomial(exp as usize, base.one())))
                }
                Some(_) => Err(err_at(
                    at,
                    "univariate ring: the variable is written plain `x`",
                )),
            },
            RingKind::MPoly(_, n) => match idx {
                Some(i) if (1..=*n as u32).contains(&i) => {
                    let base = self.ring.base_ring().unwrap();
                    let mut exps = vec![0u32; *n];
                    exps[(i - 1) as usize] = exp;
                    Ok(Scalar::MPoly(MPoly::term(*n, Monomial(exps), base.one())))
                }
                Some(i) => Err(err_at(
                    at,
                    format!("variable x{i} out of range; ring has x1..x{n}"),
                )),
                None => Err(err_at(
                    at,
                    format!("multivariate ring: variables are written x1..x{n}"),
                )),
            },
            _ => Err(err_at(
                at,
                format!("variables are not allowed in {}", self.ring),
            )),
        }
    }
}

/// Parse a scalar of `ring` from its text form. See the module docs for the
/// grammar.
pub fn parse_scalar(ring: &Ring, text: &str) -> Result<Scalar> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(err_at(0, "empty scalar"));
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        len: text.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err_at(p.next_at(), "unexpected trailing input"));
    }
    Ok(v)
}
