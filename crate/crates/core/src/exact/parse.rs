//! Recursive-descent parser for polynomial literals.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' digits]
//! atom   := digits ['/' digits] | var digits | '(' expr ')'
//! ```
//!
//! Whitespace between tokens is ignored. Exponents are plain nonnegative
//! integers; `x1^(2)` is rejected.

use num_bigint::BigInt;

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u32 = 65_535;

/// Parses a polynomial in `x1..x{nvars}`.
pub fn parse_poly(text: &str, field: Field, nvars: usize) -> Result<Poly> {
    parse_poly_in(text, field, nvars, "x")
}

/// Parses a polynomial whose variables are `{var}1..{var}{nvars}`.
pub fn parse_poly_in(text: &str, field: Field, nvars: usize, var: &str) -> Result<Poly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        nvars,
        var: var.as_bytes(),
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: Field,
    nvars: usize,
    var: &'a [u8],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self
                .digits()
                .ok_or_else(|| self.err("expected a nonnegative integer exponent"))?;
            let e: u32 = digits.parse().map_err(|_| Error::ExponentOverflow(at))?;
            if e > MAX_EXPONENT {
                return Err(Error::ExponentOverflow(at));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().expect("digit present").parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    den = self
                        .digits()
                        .ok_or_else(|| self.err("expected a denominator"))?
                        .parse()
                        .expect("digits");
                    if self.field.from_bigint(&den).is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "denominator vanishes in the field".into(),
                        });
                    }
                }
                let c = self.field.from_ratio(&num, &den)?;
                Ok(Poly::constant(self.field, self.nvars, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let unknown = || Error::UnknownVariable {
                    pos: start,
                    name: String::from_utf8_lossy(name).into_owned(),
                };
                let rest = name.strip_prefix(self.var).ok_or_else(unknown)?;
                let idx: usize = std::str::from_utf8(rest)
                    .ok()
                    .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(unknown)?;
                if idx == 0 || idx > self.nvars {
                    return Err(unknown());
                }
                Ok(Poly::var(self.field, self.nvars, idx - 1))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::multi::Multi;

    #[test]
    fn grammar_example() {
        let q = Field::Rational;
        let f = parse_poly("x1^2*x2 - 3/2*x2", q, 2).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coeff(&Multi(vec![2, 1])), q.one());
        assert_eq!(f.coeff(&Multi(vec![0, 1])), q.parse_scalar("-3/2").unwrap());
    }

    #[test]
    fn zero_literal() {
        let f = parse_poly("0", Field::Rational, 3).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.num_terms(), 0);
    }

    #[test]
    fn parenthesized_exponent_rejected() {
        match parse_poly("x1^(2)", Field::Rational, 1) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable() {
        assert!(matches!(
            parse_poly("x3 + 1", Field::Rational, 2),
            Err(Error::UnknownVariable { pos: 0, .. })
        ));
        assert!(matches!(
            parse_poly("y1", Field::Rational, 2),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn exponent_overflow() {
        assert!(matches!(
            parse_poly("x1^99999999999", Field::Rational, 1),
            Err(Error::ExponentOverflow(3))
        ));
    }

    #[test]
    fn whitespace_and_parentheses() {
        let q = Field::Rational;
        let a = parse_poly(" ( x1 + 1 ) ^ 2 ", q, 1).unwrap();
        let b = parse_poly("x1^2+2*x1+1", q, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_poly("-x1*-2", q, 1).unwrap(), parse_poly("2*x1", q, 1).unwrap());
    }

    #[test]
    fn char_p_literals() {
        let f3 = Field::Prime(3);
        assert!(parse_poly("1/3", f3, 1).is_err());
        assert_eq!(parse_poly("4*x1", f3, 1).unwrap().to_string(), "x1");
    }

    #[test]
    fn other_variable_prefix() {
        let f = parse_poly_in("t1*t2 + t2^2", Field::Rational, 2, "t").unwrap();
        assert_eq!(f.display_with("t"), "t1*t2 + t2^2");
    }
}
