//! Polynomial and complex-number literals used in config values:
//! `x^2 + y`, `y^2 - 1/2*x`, `(1+2i)*z^3`, `-0.25i`.

use std::collections::BTreeMap;

use cdyn_core::{Complex64, Point2, Poly, Poly2};
use thiserror::Error;

/// Largest exponent accepted anywhere in an expression.
const MAX_EXPONENT: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("unexpected character '{0}'")]
    BadChar(char),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unexpected token {0}")]
    Unexpected(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("exponent must be an integer in 0..={MAX_EXPONENT}")]
    BadExponent,
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("invalid number '{0}'")]
    BadNumber(String),
    #[error("expected a constant")]
    NotConstant,
    #[error("expected two coordinates separated by ','")]
    BadPoint,
    #[error("polynomial out of range: {0}")]
    Range(String),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<Tok>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // scientific exponent, only when digits follow
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|_| ExprError::BadNumber(text.clone()))?;
            out.push(Tok::Num(v));
        } else if ch.is_ascii_alphabetic() {
            // symbols are single letters, so `xy` reads as `x*y`
            out.push(Tok::Ident(ch.to_string()));
            i += 1;
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(ExprError::BadChar(ch));
        }
    }
    Ok(out)
}

/// A polynomial in named variables with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyExpr {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Complex64>,
}

impl PolyExpr {
    fn constant(nvars: usize, c: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        if c != Complex64::new(0.0, 0.0) {
            terms.insert(vec![0; nvars], c);
        }
        Self { nvars, terms }
    }

    fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self {
            nvars,
            terms: BTreeMap::from([(e, Complex64::new(1.0, 0.0))]),
        }
    }

    fn add(mut self, other: &PolyExpr, sign: f64) -> Self {
        for (e, c) in &other.terms {
            *self.terms.entry(e.clone()).or_insert(Complex64::new(0.0, 0.0)) += c * sign;
        }
        self.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        self
    }

    fn mul(&self, other: &PolyExpr) -> Result<Self, ExprError> {
        let mut out = PolyExpr::constant(self.nvars, Complex64::new(0.0, 0.0));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().sum::<u32>() > MAX_EXPONENT {
                    return Err(ExprError::BadExponent);
                }
                *out.terms.entry(e).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        out.terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(out)
    }

    /// The value if the expression has no variable terms.
    pub fn as_constant(&self) -> Option<Complex64> {
        match self.terms.len() {
            0 => Some(Complex64::new(0.0, 0.0)),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&k| k == 0))
                .map(|(_, c)| *c),
            _ => None,
        }
    }

    /// Univariate polynomial; requires a single variable.
    pub fn to_poly(&self) -> Poly {
        assert_eq!(self.nvars, 1, "univariate conversion of a multivariate expression");
        let deg = self.terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] = *c;
        }
        Poly::new(coeffs)
    }

    /// Bivariate polynomial; requires two variables.
    pub fn to_poly2(&self) -> Result<Poly2, ExprError> {
        assert_eq!(self.nvars, 2, "bivariate conversion of an expression in other variables");
        let terms: Vec<(usize, usize, Complex64)> = self
            .terms
            .iter()
            .map(|(e, c)| (e[0] as usize, e[1] as usize, *c))
            .collect();
        Poly2::from_terms(&terms).ok_or_else(|| ExprError::Range("total degree above 16".into()))
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<PolyExpr, ExprError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, if op == '+' { 1.0 } else { -1.0 });
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<PolyExpr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?.as_constant().ok_or(ExprError::BadDivision)?;
                    if d == Complex64::new(0.0, 0.0) {
                        return Err(ExprError::BadDivision);
                    }
                    acc = acc.mul(&PolyExpr::constant(self.vars.len(), 1.0 / d))?;
                }
                // implicit product: 2x, 3i, 2(x + 1)
                _ if self.starts_atom() => acc = acc.mul(&self.power()?)?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<PolyExpr, ExprError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(PolyExpr::constant(self.vars.len(), Complex64::new(0.0, 0.0)).add(&v, -1.0))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyExpr, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let k = match self.next() {
                Some(Tok::Num(v)) if v.fract() == 0.0 && (0.0..=MAX_EXPONENT as f64).contains(&v) => v as u32,
                _ => return Err(ExprError::BadExponent),
            };
            let mut acc = PolyExpr::constant(self.vars.len(), Complex64::new(1.0, 0.0));
            for _ in 0..k {
                acc = acc.mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr, ExprError> {
        let n = self.vars.len();
        match self.next() {
            Some(Tok::Num(v)) => Ok(PolyExpr::constant(n, Complex64::new(v, 0.0))),
            Some(Tok::Ident(name)) => {
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    Ok(PolyExpr::var(n, k))
                } else if name == "i" {
                    Ok(PolyExpr::constant(n, Complex64::new(0.0, 1.0)))
                } else {
                    Err(ExprError::UnknownSymbol(name))
                }
            }
            Some(Tok::Op('(')) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::Op(')')) => Ok(e),
                    Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
                    None => Err(ExprError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
            None => Err(ExprError::UnexpectedEnd),
        }
    }
}

/// Parses a polynomial in the given variables.
pub fn parse_poly(src: &str, vars: &[&str]) -> Result<PolyExpr, ExprError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
    }
}

pub fn parse_complex(src: &str) -> Result<Complex64, ExprError> {
    let c = parse_poly(src, &[])?.as_constant().ok_or(ExprError::NotConstant)?;
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(ExprError::BadNumber(src.trim().to_string()));
    }
    Ok(c)
}

pub fn parse_real(src: &str) -> Result<f64, ExprError> {
    let c = parse_complex(src)?;
    if c.im != 0.0 {
        return Err(ExprError::NotConstant);
    }
    Ok(c.re)
}

/// `"x, y"` with complex coordinates.
pub fn parse_point(src: &str) -> Result<Point2, ExprError> {
    let parts: Vec<&str> = src.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok(Point2::new(parse_complex(x)?, parse_complex(y)?)),
        _ => Err(ExprError::BadPoint),
    }
}

/// Points separated by `;`.
pub fn parse_points(src: &str) -> Result<Vec<Point2>, ExprError> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_point)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constants() {
        assert_eq!(parse_complex("1/2").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("-0.25i").unwrap(), c(0.0, -0.25));
        assert_eq!(parse_complex("2 + 3i").unwrap(), c(2.0, 3.0));
        assert_eq!(parse_complex("1e6").unwrap(), c(1e6, 0.0));
        assert_eq!(parse_complex("(1+i)^2").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_real("-3/4").unwrap(), -0.75);
        assert!(parse_real("i").is_err());
    }

    #[test]
    fn bivariate() {
        let p = parse_poly("x^2 + y", &["x", "y"]).unwrap().to_poly2().unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeff(2, 0), c(1.0, 0.0));
        assert_eq!(p.coeff(0, 1), c(1.0, 0.0));
        let q = parse_poly("2xy - (x - y)^2", &["x", "y"]).unwrap().to_poly2().unwrap();
        assert_eq!(q.coeff(1, 1), c(4.0, 0.0));
        assert_eq!(q.coeff(2, 0), c(-1.0, 0.0));
    }

    #[test]
    fn univariate() {
        let p = parse_poly("y^2 - 1/2", &["y"]).unwrap().to_poly();
        assert_eq!(p.coeffs(), &[c(-0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let t = parse_poly("z^3/3 + t", &["z", "t"]).unwrap();
        assert!(t.as_constant().is_none());
    }

    #[test]
    fn errors() {
        assert_eq!(parse_poly("x^2 + w", &["x", "y"]), Err(ExprError::UnknownSymbol("w".into())));
        assert_eq!(parse_poly("x / y", &["x", "y"]), Err(ExprError::BadDivision));
        assert_eq!(parse_poly("x^1.5", &["x"]), Err(ExprError::BadExponent));
        assert_eq!(parse_poly("(x + 1", &["x"]), Err(ExprError::UnexpectedEnd));
        assert!(matches!(parse_poly("x $ 2", &["x"]), Err(ExprError::BadChar('$'))));
        assert!(parse_point("1, 2, 3").is_err());
    }

    #[test]
    fn point_lists() {
        let pts = parse_points("2, 0.5; 1+i, -3").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1], Point2::new(c(1.0, 1.0), c(-3.0, 0.0)));
    }
}
