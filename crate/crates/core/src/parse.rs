//! Polynomial text format.
//!
//! Terms are joined by `+`/`-`; a term is an optional coefficient times
//! variables with `^` exponents. `*` is optional between factors, so `3a`,
//! `s t`, and `st^3` (read as `s * t^3` when `st` is not itself a variable)
//! are accepted. Coefficients are decimal integers or `num/den`. Parentheses
//! group subexpressions. When the field carries a square root of -1 and no
//! variable is named `i`, the identifier `i` denotes that constant.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(chars[start..i].iter().collect()), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(AlgebraError::Parse {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let ring = self.ring;
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { ring.neg(&first) } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.bump();
        match self.bump() {
            Some(Tok::Num(n)) => n.parse::<u16>().map(u32::from).or_else(|_| {
                self.pos -= 1;
                self.err("exponent too large")
            }),
            _ => {
                self.pos -= 1;
                self.err("expected a nonnegative integer exponent")
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let ring = self.ring;
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut text = n;
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) => text = format!("{text}/{d}"),
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a denominator");
                        }
                    }
                }
                let c =
                    ring.field()
                        .parse_number(&text)
                        .map_err(|message| AlgebraError::Parse {
                            column: col,
                            message,
                        })?;
                let e = self.exponent()?;
                Ok(ring.constant(ring.field().pow(&c, e as u64)))
            }
            Some(Tok::Ident(name)) => {
                let pieces = self.resolve(&name, col)?;
                let e = self.exponent()?;
                let (last, init) = pieces.split_last().expect("nonempty");
                let mut acc = ring.pow(last, e);
                for p in init {
                    acc = ring.mul(p, &acc);
                }
                Ok(acc)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.pos -= 1;
                    return self.err("expected `)`");
                }
                let e = self.exponent()?;
                Ok(ring.pow(&inner, e))
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a coefficient, variable, or `(`")
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn atom_for(&self, name: &str) -> Option<Polynomial<F>> {
        let ring = self.ring;
        if let Some(idx) = ring.var_index(name) {
            return Some(ring.var(idx));
        }
        if name == "i" {
            return ring.field().sqrt_minus_one().map(|c| ring.constant(c));
        }
        None
    }

    /// Splits an identifier run into known names, longest prefix first.
    fn resolve(&self, name: &str, col: usize) -> Result<Vec<Polynomial<F>>> {
        if let Some(p) = self.atom_for(name) {
            return Ok(vec![p]);
        }
        let mut pieces = Vec::new();
        let mut rest = name;
        'outer: while !rest.is_empty() {
            for len in (1..=rest.len()).rev() {
                if let Some(p) = self.atom_for(&rest[..len]) {
                    pieces.push(p);
                    rest = &rest[len..];
                    continue 'outer;
                }
            }
            return Err(AlgebraError::Parse {
                column: col,
                message: format!("unknown variable `{name}`"),
            });
        }
        Ok(pieces)
    }
}

pub fn parse_polynomial<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<Polynomial<F>> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse {
            column: 1,
            message: "empty expression".into(),
        });
    }
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
    };
    let poly = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(poly)
}

fn format_monomial(names: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect();
    parts.join("*")
}

pub fn format_polynomial<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, m)) in f.terms().iter().enumerate() {
        let (negative, magnitude) = ring.field().signed_repr(c);
        if negative {
            out.push('-');
        } else if k > 0 {
            out.push('+');
        }
        let mono = format_monomial(ring.names(), m);
        match (mono.is_empty(), magnitude == "1") {
            (true, _) => out.push_str(&magnitude),
            (false, true) => out.push_str(&mono),
            (false, false) => {
                out.push_str(&magnitude);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_examples() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), &["a", "b", "c", "d"]).unwrap();
        let f = r.parse("a*b^2 - 3*c*d").unwrap();
        assert_eq!(r.format(&f), "a*b^2-3*c*d");
        assert_eq!(r.parse("ab^2").unwrap(), r.parse("a*b^2").unwrap());
        assert_eq!(
            r.parse("2(a+b)^2").unwrap(),
            r.parse("2a^2+4a*b+2b^2").unwrap()
        );
        assert_eq!(r.parse("-a + a").unwrap(), r.zero());
    }

    #[test]
    fn reports_unknown_variables_with_column() {
        let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        match r.parse("x + 2*zz") {
            Err(AlgebraError::Parse { column, message }) => {
                assert_eq!(column, 7);
                assert!(message.contains("zz"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.parse("x +").is_err());
        assert!(r.parse("(x").is_err());
        assert!(r.parse("").is_err());
    }

    #[test]
    fn imaginary_unit_constant() {
        let r =
            PolyRing::new(PrimeField::with_sqrt_minus_one(32029).unwrap(), &["s", "t"]).unwrap();
        let f = r.parse("-s+it").unwrap();
        let g = r.parse("-i*s-t").unwrap();
        let i = r.field().sqrt_minus_one().unwrap();
        assert_eq!(r.scale(&f, &i), g);
        assert_eq!(r.format(&f), "-s+i*t");
        let plain = PolyRing::new(PrimeField::new(32029).unwrap(), &["s", "t"]).unwrap();
        assert!(plain.parse("it").is_err());
    }

    #[test]
    fn rational_coefficients() {
        let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
        let f = r.parse("1/2*x^2 - 3/4 y").unwrap();
        assert_eq!(r.format(&f), "1/2*x^2-3/4*y");
    }

    fn rational_poly() -> impl Strategy<Value = Vec<(i64, i64, u16, u16)>> {
        prop::collection::vec((-50i64..50, 1i64..20, 0u16..4, 0u16..4), 0..6)
    }

    proptest! {
        #[test]
        fn rational_text_round_trip(terms in rational_poly()) {
            let r = PolyRing::new(Rationals, &["x", "y"]).unwrap();
            let f = r.from_terms(terms.iter().map(|&(n, d, a, b)| {
                (r.field().parse_number(&format!("{n}/{d}")).unwrap(), Monomial::from_exponents(&[a, b]))
            }));
            let back = r.parse(&r.format(&f)).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
