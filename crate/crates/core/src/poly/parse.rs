//! Integer polynomial input: expressions in named variables, or JSON
//! coefficient lists.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntPolynomial, Poly};
use crate::error::{Error, Result};

/// Exponents above this are rejected.
pub const MAX_EXPONENT: u32 = 10_000;

/// Sparse polynomial: exponent vector to coefficient, no zero coefficients.
type Sparse = BTreeMap<Vec<u32>, BigInt>;

fn sparse_add(mut a: Sparse, b: Sparse) -> Sparse {
    for (k, v) in b {
        let e = a.entry(k.clone()).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            a.remove(&k);
        }
    }
    a
}

fn sparse_mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            out = sparse_add(out, Sparse::from([(k, va * vb)]));
        }
    }
    out
}

fn sparse_neg(a: Sparse) -> Sparse {
    a.into_iter().map(|(k, v)| (k, -v)).collect()
}

fn total_degree(a: &Sparse) -> u32 {
    a.keys().map(|k| k.iter().sum()).max().unwrap_or(0)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { offset: self.pos, message: message.into() }
    }

    fn ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.text[self.pos..].chars().next()
    }

    fn constant(&self, c: BigInt) -> Sparse {
        if c.is_zero() {
            Sparse::new()
        } else {
            Sparse::from([(vec![0; self.vars.len()], c)])
        }
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut negative = false;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                negative = true;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = sparse_add(acc, if negative { sparse_neg(t) } else { t });
            match self.peek() {
                Some('+') => negative = false,
                Some('-') => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => self.pos += 1,
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = sparse_mul(&acc, &f);
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(sparse_neg(self.factor()?));
        }
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.ws();
        let start = self.pos;
        let digits = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected an exponent"));
        }
        self.pos += digits;
        let e: u32 = self.text[start..self.pos]
            .parse()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(Error::OutOfRange { offset: start, message: format!("exponent above {MAX_EXPONENT}") })?;
        if (total_degree(&base) as u64) * (e as u64) > MAX_EXPONENT as u64 {
            return Err(Error::OutOfRange { offset: start, message: format!("degree above {MAX_EXPONENT}") });
        }
        let mut out = self.constant(BigInt::one());
        for _ in 0..e {
            out = sparse_mul(&out, &base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Sparse> {
        let Some(c) = self.peek() else {
            return Err(self.err("unexpected end of input"));
        };
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            return Ok(e);
        }
        let start = self.pos;
        if c.is_ascii_digit() {
            let digits = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
            self.pos += digits;
            let v: BigInt = self.text[start..self.pos].parse().expect("digits");
            return Ok(self.constant(v));
        }
        let len = self.text[start..].bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        let word = &self.text[start..start + len];
        match self.vars.iter().position(|v| *v == word) {
            Some(i) => {
                self.pos += len;
                let mut k = vec![0; self.vars.len()];
                k[i] = 1;
                Ok(Sparse::from([(k, BigInt::one())]))
            }
            None if len > 0 => Err(self.err(format!("unknown variable '{word}' (expected {})", self.vars.join(" or ")))),
            None => Err(self.err(format!("unexpected character '{c}'"))),
        }
    }
}

fn parse_sparse(text: &str, vars: &[&str]) -> Result<Sparse> {
    let mut p = Parser { text, pos: 0, vars };
    let e = p.expr()?;
    p.ws();
    if p.pos != text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a polynomial in `var` with integer coefficients.
pub fn parse_polynomial_in(text: &str, var: &str) -> Result<IntPolynomial> {
    let s = parse_sparse(text, &[var])?;
    let n = s.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut c = vec![BigInt::zero(); n + 1];
    for (k, v) in s {
        c[k[0] as usize] = v;
    }
    Ok(IntPolynomial::new(c))
}

/// An expression in `x`, or a JSON list of ascending coefficients given as
/// integers or decimal strings.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial> {
    if text.trim_start().starts_with('[') {
        parse_coefficients_json(text)
    } else {
        parse_polynomial_in(text, "x")
    }
}

pub fn parse_coefficients_json(text: &str) -> Result<IntPolynomial> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse { offset: 0, message: format!("invalid JSON: {e}") })?;
    let items =
        value.as_array().ok_or_else(|| Error::Parse { offset: 0, message: "expected a JSON array of coefficients".into() })?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let bad = || Error::Parse { offset: 0, message: format!("coefficient {i} is not an integer") };
            match v {
                serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad),
                serde_json::Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| bad()),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::new(coeffs))
}

/// Parses `f(y; p)` into a polynomial in `y` with coefficients in `ℤ[p]`.
pub fn parse_family(text: &str) -> Result<Poly<IntPolynomial>> {
    let s = parse_sparse(text, &["y", "p"])?;
    let dy = s.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dy + 1];
    for (k, v) in s {
        let row = &mut rows[k[0] as usize];
        let j = k[1] as usize;
        if row.len() <= j {
            row.resize(j + 1, BigInt::zero());
        }
        row[j] = v;
    }
    Ok(Poly::new(rows.into_iter().map(IntPolynomial::new).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_polynomial("x^6 - 3*x - 1").unwrap(), p(&[-1, -3, 0, 0, 0, 0, 1]));
        assert_eq!(parse_polynomial("-x^2 + 2x").unwrap(), p(&[0, 2, -1]));
        assert_eq!(parse_polynomial("(x+1)^3").unwrap(), p(&[1, 3, 3, 1]));
        assert_eq!(parse_polynomial("2(x - 1)(x + 1)").unwrap(), p(&[-2, 0, 2]));
        assert_eq!(parse_polynomial("x*-3").unwrap(), p(&[0, -3]));
        assert_eq!(parse_polynomial("x - x").unwrap(), p(&[]));
        assert_eq!(
            parse_polynomial("123456789012345678901234567890").unwrap().coeff(0).to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn json_lists() {
        assert_eq!(parse_polynomial("[1, 0, 1]").unwrap(), p(&[1, 0, 1]));
        assert_eq!(parse_polynomial(r#"["-2", 0, "1"]"#).unwrap(), p(&[-2, 0, 1]));
        assert!(parse_polynomial("[1.5]").is_err());
        assert!(parse_polynomial("[1,").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_polynomial("x + y"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse_polynomial("x^"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_polynomial("(x + 1"), Err(Error::Parse { offset: 6, .. })));
        assert!(matches!(parse_polynomial("x^99999"), Err(Error::OutOfRange { offset: 2, .. })));
        assert!(matches!(parse_polynomial("(x^100)^200"), Err(Error::OutOfRange { .. })));
        assert!(matches!(parse_polynomial("x ) "), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn families() {
        let f = parse_family("y^3 + p*y + p").unwrap();
        assert_eq!(f.deg(), 3);
        assert_eq!(f.coeff(0), p(&[0, 1]));
        assert_eq!(f.coeff(1), p(&[0, 1]));
        assert_eq!(f.coeff(3), p(&[1]));
        let g = parse_family("p^2 y^2 - 3").unwrap();
        assert_eq!(g.coeff(2), p(&[0, 0, 1]));
        assert_eq!(g.coeff(0), p(&[-3]));
    }
}
