//! Reader for the canonical polynomial text form (and anything a person
//! would reasonably type: parentheses, powers, `p/q` coefficients).

use num_bigint::BigInt;
use num_traits::One;

use super::{AlgebraError, Monomial, Polynomial, Rational};

impl Polynomial {
    /// Parses text such as `"x1^2 - 4*t^2"` or `"(x1 - 2*t)*(x3 + 1/2*t)"`
    /// in the ring with `var_count` x-variables.
    pub fn parse(text: &str, var_count: usize) -> Result<Polynomial, AlgebraError> {
        let mut parser = Parser { text, bytes: text.as_bytes(), pos: 0, var_count };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    var_count: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse { input: self.text.to_string(), position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = self.text;
        (self.pos > start).then(|| &text[start..self.pos])
    }

    fn uint<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, AlgebraError> {
        match self.digits() {
            Some(d) => d.parse().map_err(|_| self.error(&format!("{what} too large"))),
            None => Err(self.error(&format!("expected {what}"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = Polynomial::zero(self.var_count);
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e: u32 = self.uint("exponent")?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, AlgebraError> {
        let n = self.var_count;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Polynomial::t(n))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx: usize = self.uint("variable index")?;
                if idx == 0 || idx > n {
                    return Err(self.error("variable index out of range"));
                }
                Ok(Polynomial::var(n, idx))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut den = BigInt::one();
                // a '/' directly after a literal is part of the coefficient
                let save = self.pos;
                if self.eat(b'/') {
                    match self.digits() {
                        Some(d) => den = d.parse().unwrap(),
                        None => {
                            self.pos = save;
                            return Err(self.error("expected denominator"));
                        }
                    }
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                }
                Ok(Polynomial::monomial(Monomial::one(n), Rational::new(num, den)))
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ratio, Polynomial};

    #[test]
    fn roundtrips_canonical_rendering() {
        for s in ["x1^2 - 4*t^2", "0", "1", "x2^3 - 3/2*x1*x2*t - 7", "x2 - 2*t"] {
            assert_eq!(Polynomial::parse(s, 2).unwrap().to_string(), s);
        }
    }

    #[test]
    fn expands_products_and_powers() {
        let p = Polynomial::parse("(x1 - t)*(x1 + t)", 1).unwrap();
        assert_eq!(p.to_string(), "x1^2 - t^2");
        let q = Polynomial::parse("(2*t)^3", 1).unwrap();
        assert_eq!(q.to_string(), "8*t^3");
        let r = Polynomial::parse("1/2*x1 - -t", 1).unwrap();
        assert_eq!(r.coefficient(&Monomial::var(1, 1)), ratio(1, 2));
    }

    #[test]
    fn reports_position_on_error() {
        match Polynomial::parse("x1 + x3", 2) {
            Err(AlgebraError::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Polynomial::parse("x1 +", 1).is_err());
        assert!(Polynomial::parse("(x1", 1).is_err());
        assert!(Polynomial::parse("1/0", 1).is_err());
    }
}
