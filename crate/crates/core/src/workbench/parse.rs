//! Expression and field-spec parsing.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' digits)?
//! base   := digits | 'z' | 'w' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use crate::algebra::{field_make, Field, FieldSpec, Q};
use crate::error::{Error, Result};
use crate::ratfun::RatFun;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    var: &'a str,
    allow_gen: bool,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, expected: &str) -> Error {
        Error::SyntaxError { position: self.pos, expected: expected.to_string() }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).map_err(|_| Error::SyntaxError { position: at, expected: "nonzero divisor".into() })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFun> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits().ok_or_else(|| self.syntax("nonnegative integer exponent"))?;
            let e: usize = e.try_into().map_err(|_| self.syntax("exponent below 2^32"))?;
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn base(&mut self) -> Result<RatFun> {
        let k = self.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits().unwrap();
                Ok(RatFun::constant(k.from_q(Q::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c >= 0x80 => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] >= 0x80)
                {
                    self.pos += 1;
                }
                let sym = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                if sym == self.var {
                    Ok(RatFun::identity(k))
                } else if sym == "w" && self.allow_gen && !k.is_rationals() {
                    Ok(RatFun::constant(k.gen()))
                } else {
                    Err(Error::UnknownSymbol { position: start, symbol: sym })
                }
            }
            _ => Err(self.syntax("number, variable or '('")),
        }
    }
}

fn parse_in(text: &str, field: &Field, var: &str, allow_gen: bool) -> Result<RatFun> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field, var, allow_gen };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.syntax("operator or end of input"));
    }
    Ok(e)
}

/// Parses a rational function of `z`; `w` is the field generator.
pub fn parse_ratfun(text: &str, field: &Field) -> Result<RatFun> {
    parse_in(text, field, "z", true)
}

/// Parses a field element (an expression without `z`).
pub fn parse_constant(text: &str, field: &Field) -> Result<crate::algebra::Fe> {
    let f = parse_in(text, field, "\u{0}", true)?;
    Ok(f.as_constant().expect("no variable was accepted"))
}

/// `"Q"`, `"Q(zeta_N)"` or `"Q[w]/(poly)"`.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let t = text.trim();
    if t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(rest) = t.strip_prefix("Q(zeta_").and_then(|r| r.strip_suffix(')')) {
        return rest
            .trim()
            .parse::<u32>()
            .map(FieldSpec::Cyclotomic)
            .map_err(|_| Error::InvalidSpec(format!("bad cyclotomic order in {t:?}")));
    }
    if let Some(rest) = t.strip_prefix("Q[w]/(").and_then(|r| r.strip_suffix(')')) {
        let q = Field::rationals();
        let p = parse_in(rest, &q, "w", false)?;
        if !p.is_polynomial() {
            return Err(Error::InvalidSpec(format!("modulus {rest:?} is not a polynomial")));
        }
        let coeffs = p.num().coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
        return Ok(FieldSpec::Extension(coeffs));
    }
    Err(Error::InvalidSpec(format!("unrecognized field {t:?}; expected Q, Q(zeta_N) or Q[w]/(poly)")))
}

pub fn parse_field(text: &str) -> Result<Field> {
    field_make(&parse_field_spec(text)?)
}

/// Chebyshev polynomial `T_n`, from `T_{n+1} = 2z T_n - T_{n-1}`.
pub fn chebyshev(k: &Field, n: usize) -> RatFun {
    let z = RatFun::identity(k);
    let two_z = z.scale(&k.from_int(2));
    let (mut a, mut b) = (RatFun::constant(k.one()), z);
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let c = two_z.mul(&b).sub(&a);
        a = b;
        b = c;
    }
    b
}
