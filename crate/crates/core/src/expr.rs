//! Polynomial expressions over `F_q`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := uint | 'T' | 'u' | '(' expr ')'
//! ```
//!
//! `u` is the generator of an extension field and is rejected over prime
//! fields. Whitespace is ignored. The canonical rendering of [`Poly`] parses
//! back to the same polynomial.

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::poly::Poly;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_poly(src: &str, field: Field) -> Result<Poly> {
    let mut parser = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
    };
    parser.skip_ws();
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

/// A constant expression such as `3` or `u+1`.
pub fn parse_const(src: &str, field: Field) -> Result<FieldElement> {
    let p = parse_poly(src, field)?;
    if !p.is_constant() {
        return Err(Error::InvalidArgument(format!("{src:?} is not a constant")));
    }
    Ok(p.coeff(0))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.error("expected a nonnegative integer exponent"));
        }
        let mut e: u64 = 0;
        while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
            e = e.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        if e > MAX_EXPONENT {
            return Err(Error::Syntax {
                pos: start,
                msg: format!("exponent overflow (max {MAX_EXPONENT})"),
            });
        }
        self.skip_ws();
        if let Some(d) = base.deg() {
            if d as u64 * e > MAX_EXPONENT {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("degree {} exceeds {MAX_EXPONENT}", d as u64 * e),
                });
            }
        }
        Ok(base.pow(e as u32))
    }

    fn base(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.field.characteristic();
                let mut v: u64 = 0;
                while let Some(c) = self.peek().filter(u8::is_ascii_digit) {
                    v = (v * 10 + (c - b'0') as u64) % p;
                    self.pos += 1;
                }
                self.skip_ws();
                Ok(Poly::constant(self.field.from_int(v as i64)))
            }
            Some(b'T') => {
                self.pos += 1;
                self.skip_ws();
                Ok(Poly::t(self.field))
            }
            Some(b'u') => {
                let g = self
                    .field
                    .generator()
                    .ok_or_else(|| self.error("'u' is only defined over extension fields"))?;
                self.pos += 1;
                self.skip_ws();
                Ok(Poly::constant(g))
            }
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("expected an integer, 'T', 'u' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{field_of_order, prime_field};

    #[test]
    fn examples() {
        let f = prime_field(5).unwrap();
        assert_eq!(
            parse_poly("(T^2+T)^2+4*T+4", f).unwrap(),
            Poly::from_ints(f, &[4, 4, 1, 2, 1])
        );
        assert_eq!(parse_poly("T^4+1", f).unwrap().to_string(), "T^4+1");
        assert_eq!(parse_poly(" 12 * T - 3 ", f).unwrap(), Poly::from_ints(f, &[2, 2]));
    }

    #[test]
    fn errors_carry_positions() {
        let f = prime_field(5).unwrap();
        assert_eq!(
            parse_poly("T^-1", f).unwrap_err(),
            Error::Syntax {
                pos: 2,
                msg: "expected a nonnegative integer exponent".into()
            }
        );
        assert!(matches!(parse_poly("T+", f), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("(T+1", f), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("T T", f), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("T^99999999999999999999", f), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("u+1", f), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("", f), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn extension_roundtrip() {
        let f = field_of_order(9, 0).unwrap();
        let g = f.generator().unwrap();
        let p = Poly::from_coeffs(f, vec![g + f.one(), f.zero(), g]);
        let text = p.to_string();
        assert_eq!(parse_poly(&text, f).unwrap(), p, "{text}");
    }

    #[test]
    fn constants() {
        let f = prime_field(7).unwrap();
        assert_eq!(parse_const("10", f).unwrap(), f.from_int(3));
        assert!(parse_const("T", f).is_err());
    }
}
