//! Polynomial expressions over named variables.
//!
//! Grammar: a sum of signed terms, each term a product of factors joined by
//! `*` or juxtaposition; a factor is an integer, a rational `a/b`, or a
//! variable with an optional `^k`. A vector is `[f1, ..., fp]`.

use hironaka::{Alpha, Exponent, Rational, SeriesVec};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type Poly = Vec<(Alpha, Rational)>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [String]) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, vars }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.chars[..pos.min(self.chars.len())];
        let line = 1 + before.iter().filter(|&&c| c == '\n').count();
        let column = 1 + before.iter().rev().take_while(|&&c| c != '\n').count();
        ParseError { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().unwrap())
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn starts_factor(&self) -> bool {
        self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_')
    }

    /// One factor, multiplied into `(alpha, coeff)`.
    fn factor(&mut self, alpha: &mut Alpha, coeff: &mut Rational) -> Result<(), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let value = if self.peek() == Some('/') {
                    self.pos += 1;
                    let den_pos = self.pos;
                    let den = self.digits().ok_or_else(|| self.error_at(den_pos, "expected a denominator"))?;
                    if den.is_zero() {
                        return Err(self.error_at(den_pos, "zero denominator"));
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                *coeff = coeff.clone() * value;
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let name = self.identifier();
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.error_at(start, format!("unknown variable {name}")))?;
                let mut k = 1u32;
                if self.eat('^') {
                    self.skip_ws();
                    let exp_pos = self.pos;
                    let e = self.digits().ok_or_else(|| self.error_at(exp_pos, "malformed exponent"))?;
                    k = u32::try_from(&e).map_err(|_| self.error_at(exp_pos, "exponent too large"))?;
                }
                alpha[i] += k;
            }
            Some(c) => return Err(self.error_at(start, format!("unexpected character '{c}'"))),
            None => return Err(self.error_at(start, "unexpected end of input")),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<(Alpha, Rational), ParseError> {
        let mut alpha = Alpha::from_elem(0, self.vars.len());
        let mut coeff = Rational::one();
        self.factor(&mut alpha, &mut coeff)?;
        loop {
            if self.eat('*') {
                self.factor(&mut alpha, &mut coeff)?;
                continue;
            }
            self.skip_ws();
            if self.starts_factor() {
                self.factor(&mut alpha, &mut coeff)?;
                continue;
            }
            return Ok((alpha, coeff));
        }
    }

    fn polynomial(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error_at(self.pos, "empty expression"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    return Ok(terms);
                }
                false
            };
            first = false;
            let (alpha, c) = self.term()?;
            terms.push((alpha, if negative { -c } else { c }));
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error_at(self.pos, format!("unexpected character '{c}'"))),
        }
    }
}

fn to_series(n: usize, rank: usize, comps: Vec<Poly>) -> SeriesVec<Rational> {
    let terms = comps
        .into_iter()
        .enumerate()
        .flat_map(|(i, p)| p.into_iter().map(move |(a, c)| (Exponent::new(a, i), c)));
    SeriesVec::from_terms(n, rank, terms)
}

/// Parses a scalar polynomial or a bracketed vector.
pub fn parse_series(text: &str, vars: &[String]) -> Result<SeriesVec<Rational>, ParseError> {
    let mut p = Parser::new(text, vars);
    if p.eat('[') {
        let mut comps = Vec::new();
        loop {
            comps.push(p.polynomial()?);
            if p.eat(',') {
                continue;
            }
            if p.eat(']') {
                break;
            }
            return Err(p.error_at(p.pos, "expected ',' or ']'"));
        }
        p.finish()?;
        let rank = comps.len();
        return Ok(to_series(vars.len(), rank, comps));
    }
    let poly = p.polynomial()?;
    p.finish()?;
    Ok(to_series(vars.len(), 1, vec![poly]))
}

/// Parses a scalar polynomial; vectors are rejected.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<SeriesVec<Rational>, ParseError> {
    let v = parse_series(text, vars)?;
    if v.rank() != 1 {
        return Err(ParseError { line: 1, column: 1, message: "expected a polynomial, found a vector".into() });
    }
    Ok(v)
}
