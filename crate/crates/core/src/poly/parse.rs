//! Reader for polynomial strings such as `3/2*x^2 - (y + 1)*t`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: i + 1,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    names: &'a [String],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end) + 1
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            column: self.column(),
            message: message.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<Rational>> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial<Rational>> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial<Rational>> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.err("exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial<Rational>> {
        let n = self.names.len();
        match self.peek().cloned() {
            Some(Tok::Num(num)) => {
                self.pos += 1;
                let mut den = BigInt::one();
                if self.peek() == Some(&Tok::Op('/')) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            self.pos += 1;
                            den = d;
                        }
                        Some(Tok::Num(_)) => return Err(self.err("zero denominator")),
                        _ => return Err(self.err("expected an integer denominator")),
                    }
                }
                Ok(Polynomial::constant(n, Rational::new(num, den)))
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(n, i))
                }
                None => Err(self.err(format!("unknown variable '{name}'"))),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial over the given ordered variable names.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial<Rational>> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end: src.chars().count(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn names() -> Vec<String> {
        ["x", "y", "t"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_rationals_and_powers() {
        let p = parse_polynomial("3/2*x^2 - (y + 1)*t", &names()).unwrap();
        let x = Polynomial::<Rational>::var(3, 0);
        let y = Polynomial::var(3, 1);
        let t = Polynomial::var(3, 2);
        let expect = &(&x * &x).scale(&rat(3, 2)) - &(&(&y + &Polynomial::one(3)) * &t);
        assert_eq!(p, expect);
    }

    #[test]
    fn reports_column_of_error() {
        match parse_polynomial("x + q", &names()) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial("x^", &names()).is_err());
        assert!(parse_polynomial("1/0", &names()).is_err());
        assert!(parse_polynomial("(x", &names()).is_err());
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(coeffs in proptest::collection::vec((-20i64..20, 1i64..6, 0u32..3, 0u32..3, 0u32..2), 0..6)) {
            let mut p = Polynomial::<Rational>::zero(3);
            for (a, b, e0, e1, e2) in coeffs {
                p.add_term(super::super::monomial::Monomial::from_exponents(vec![e0, e1, e2]), rat(a, b));
            }
            let text = p.to_string_with(&names());
            let back = parse_polynomial(&text, &names()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
