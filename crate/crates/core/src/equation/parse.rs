use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{Polynomial, Rational};
use crate::error::EquationError;

/// A polynomial plus a linear combination of the unknowns `f0, f1, ...`.
#[derive(Clone, Debug, Default)]
pub struct LinearForm {
    pub constant: Polynomial,
    pub terms: BTreeMap<usize, Polynomial>,
}

impl LinearForm {
    fn constant(p: Polynomial) -> Self {
        LinearForm { constant: p, terms: BTreeMap::new() }
    }

    fn unknown(i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(i, Polynomial::one());
        LinearForm { constant: Polynomial::zero(), terms }
    }

    fn is_pure(&self) -> bool {
        self.terms.values().all(|p| p.is_zero())
    }

    fn combine(mut self, o: LinearForm, sign: bool) -> Self {
        let add = |a: &Polynomial, b: &Polynomial| if sign { a + b } else { a - b };
        self.constant = add(&self.constant, &o.constant);
        for (i, p) in o.terms {
            let cur = self.terms.remove(&i).unwrap_or_default();
            self.terms.insert(i, add(&cur, &p));
        }
        self
    }

    fn times(&self, p: &Polynomial) -> Self {
        LinearForm {
            constant: &self.constant * p,
            terms: self.terms.iter().map(|(i, q)| (*i, q * p)).collect(),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allow_unknowns: bool,
}

type PResult<T> = Result<T, EquationError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: &str) -> PResult<T> {
        Err(EquationError::SyntaxError { offset: at, message: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> PResult<LinearForm> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.combine(rhs, c == b'+');
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<LinearForm> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if rhs.is_pure() {
                acc.times(&rhs.constant)
            } else if acc.is_pure() {
                rhs.times(&acc.constant)
            } else {
                return self.err(at, "product of two unknowns is not linear");
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<LinearForm> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.times(&Polynomial::constant(-Rational::from_integer(1.into()))))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<LinearForm> {
        let base_at = self.pos;
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        let e = e.to_u32().filter(|&e| e <= 1 << 16);
        let Some(e) = e else { return self.err(at, "exponent out of range") };
        if !base.is_pure() {
            return self.err(base_at, "unknowns cannot be raised to a power");
        }
        Ok(LinearForm::constant(base.constant.pow(e)))
    }

    fn integer(&mut self) -> PResult<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "expected an integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> PResult<LinearForm> {
        let at = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        match self.src[at] {
            b'0'..=b'9' => {
                let n = self.integer()?;
                let mut val = Rational::from_integer(n);
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let dat = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return self.err(dat, "zero denominator");
                    }
                    val /= Rational::from_integer(d);
                }
                Ok(LinearForm::constant(Polynomial::constant(val)))
            }
            b'z' => {
                self.pos += 1;
                Ok(LinearForm::constant(Polynomial::z_pow(1)))
            }
            b'f' if self.allow_unknowns => {
                self.pos += 1;
                let iat = self.pos;
                let i = self.integer()?;
                match i.to_usize().filter(|&i| i <= 64) {
                    Some(i) => Ok(LinearForm::unknown(i)),
                    None => self.err(iat, "unknown index out of range"),
                }
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => self.err(at, "unexpected character"),
        }
    }

    fn finish(&mut self, v: LinearForm) -> PResult<LinearForm> {
        if self.peek().is_some() {
            return self.err(self.pos, "unexpected trailing input");
        }
        Ok(v)
    }
}

/// Parses a polynomial in `z` over the rationals, e.g. `1 - 2*z + 3/4*z^2`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, EquationError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, allow_unknowns: false };
    let v = p.expr()?;
    Ok(p.finish(v)?.constant)
}

/// Parses a homogeneous linear expression in `f0, f1, ...` with polynomial coefficients;
/// returns the coefficient of each `fi`, indexed by `i`.
pub fn parse_linear_equation(text: &str) -> Result<Vec<Polynomial>, EquationError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, allow_unknowns: true };
    let v = p.expr()?;
    let v = p.finish(v)?;
    if !v.constant.is_zero() {
        return Err(EquationError::SchemaError("equation has a term without an unknown".into()));
    }
    let len = v.terms.keys().next_back().map_or(0, |m| m + 1);
    let mut out = vec![Polynomial::zero(); len];
    for (i, q) in v.terms {
        out[i] = q;
    }
    Ok(out)
}
