//! Exact polynomials in two auxiliary variables, polynomials in `x` over
//! them, and a small parser for the textual forms in the data file.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sparse polynomial in `a` and `b` with rational coefficients. The two
/// variables are bound to `(v, w)` or `(y, q)` by the surrounding series.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct PolyAux {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PolyAux {
    pub fn zero() -> Self {
        PolyAux::default()
    }

    pub fn one() -> Self {
        PolyAux::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        PolyAux::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        PolyAux::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, da: u32, db: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((da, db), c);
        }
        PolyAux { terms }
    }

    pub fn var_a() -> Self {
        PolyAux::monomial(BigRational::one(), 1, 0)
    }

    pub fn var_b() -> Self {
        PolyAux::monomial(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn coeff(&self, da: u32, db: u32) -> BigRational {
        self.terms.get(&(da, db)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0, 0)
    }

    /// Monomials in lexicographic order of `(deg_a, deg_b)`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `deg_a + deg_b`; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn degree_a(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    pub fn degree_b(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> PolyAux {
        if c.is_zero() {
            return PolyAux::zero();
        }
        PolyAux { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Multiply by `a^da b^db`.
    pub fn shift(&self, da: u32, db: u32) -> PolyAux {
        PolyAux { terms: self.terms.iter().map(|(&(a, b), v)| ((a + da, b + db), v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> PolyAux {
        let mut out = PolyAux::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `self(a, b)` with `b` set to 1.
    pub fn at_b_one(&self) -> PolyAux {
        let mut out = PolyAux::zero();
        for (&(a, _), c) in &self.terms {
            out.add_term((a, 0), c.clone());
        }
        out
    }

    /// `self(sa, sb)` for polynomial arguments.
    pub fn compose(&self, sa: &PolyAux, sb: &PolyAux) -> PolyAux {
        let mut out = PolyAux::zero();
        let mut pa = vec![PolyAux::one()];
        let mut pb = vec![PolyAux::one()];
        for (&(a, b), c) in &self.terms {
            while pa.len() <= a as usize {
                let next = pa.last().unwrap() * sa;
                pa.push(next);
            }
            while pb.len() <= b as usize {
                let next = pb.last().unwrap() * sb;
                pb.push(next);
            }
            out += (&pa[a as usize] * &pb[b as usize]).scale(c);
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &PolyAux) -> Option<PolyAux> {
        let (&(da, db), dc) = d.terms.last_key_value()?;
        let mut rem = self.clone();
        let mut quot = PolyAux::zero();
        while let Some((&(ra, rb), rc)) = rem.terms.last_key_value() {
            if ra < da || rb < db {
                return None;
            }
            let c = rc / dc;
            let (sa, sb) = (ra - da, rb - db);
            for (&(a, b), v) in &d.terms {
                rem.add_term((a + sa, b + sb), -(v * &c));
            }
            quot.add_term((sa, sb), c);
        }
        Some(quot)
    }
}

impl fmt::Debug for PolyAux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("a", "b"))
    }
}

impl PolyAux {
    /// Human-readable rendering with the given variable names, highest
    /// monomials first.
    pub fn render(&self, na: &str, nb: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [(na, a), (nb, b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl Add for &PolyAux {
    type Output = PolyAux;
    fn add(self, rhs: &PolyAux) -> PolyAux {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &PolyAux {
    type Output = PolyAux;
    fn sub(self, rhs: &PolyAux) -> PolyAux {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &PolyAux {
    type Output = PolyAux;
    fn neg(self) -> PolyAux {
        PolyAux { terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect() }
    }
}

impl Mul for &PolyAux {
    type Output = PolyAux;
    fn mul(self, rhs: &PolyAux) -> PolyAux {
        let mut out = PolyAux::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl AddAssign<&PolyAux> for PolyAux {
    fn add_assign(&mut self, rhs: &PolyAux) {
        for (&k, v) in &rhs.terms {
            self.add_term(k, v.clone());
        }
    }
}

impl AddAssign<PolyAux> for PolyAux {
    fn add_assign(&mut self, rhs: PolyAux) {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
    }
}

impl SubAssign<&PolyAux> for PolyAux {
    fn sub_assign(&mut self, rhs: &PolyAux) {
        for (&k, v) in &rhs.terms {
            self.add_term(k, -v.clone());
        }
    }
}

/// A polynomial in `x` whose coefficients are [`PolyAux`]; used for
/// numerators, denominators and radicands of closed forms.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct XPoly {
    coeffs: Vec<PolyAux>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly::default()
    }

    pub fn one() -> Self {
        XPoly::from_aux(PolyAux::one())
    }

    pub fn x() -> Self {
        XPoly::from_coeffs(vec![PolyAux::zero(), PolyAux::one()])
    }

    pub fn from_aux(p: PolyAux) -> Self {
        XPoly::from_coeffs(vec![p])
    }

    pub fn from_int(c: i64) -> Self {
        XPoly::from_aux(PolyAux::from_int(c))
    }

    pub fn from_coeffs(mut coeffs: Vec<PolyAux>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[PolyAux] {
        &self.coeffs
    }

    /// Coefficient of `x^m` (zero past the degree).
    pub fn coeff(&self, m: usize) -> PolyAux {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn pow(&self, k: u32) -> XPoly {
        let mut out = XPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replace the auxiliary variables by polynomials in them.
    pub fn compose_aux(&self, sa: &PolyAux, sb: &PolyAux) -> XPoly {
        XPoly::from_coeffs(self.coeffs.iter().map(|c| c.compose(sa, sb)).collect())
    }

    /// Largest excess `deg_aux(c_m) - 2m` over all coefficients, floored at 0.
    pub fn guard_excess(&self) -> u32 {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(m, c)| c.total_degree().map(|d| (d as i64 - 2 * m as i64).max(0) as u32))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| format!("({:?})*x^{m}", c))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|m| &self.coeff(m) + &rhs.coeff(m)).collect())
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        XPoly::from_coeffs((0..n).map(|m| &self.coeff(m) - &rhs.coeff(m)).collect())
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        XPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![PolyAux::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in rhs.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        XPoly::from_coeffs(out)
    }
}

/// Parses `+ - * ^ ( )`, non-negative integers and the identifiers `x`,
/// `na`, `nb` into an [`XPoly`]. Multiplication must be written out.
pub fn parse_xpoly(input: &str, na: &str, nb: &str) -> Result<XPoly> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0, input, na, nb };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error(format!("unexpected token {:?}", p.tokens[p.pos])));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().collect();
            out.push(Token::Num(digits.parse().unwrap()));
        } else if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*^()".contains(ch) {
            out.push(Token::Op(ch));
            k += 1;
        } else {
            return Err(Error::PolyParse { input: input.to_string(), reason: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    input: &'a str,
    na: &'a str,
    nb: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: String) -> Error {
        Error::PolyParse { input: self.input.to_string(), reason }
    }

    fn peek_op(&self, op: char) -> bool {
        self.tokens.get(self.pos) == Some(&Token::Op(op))
    }

    fn expr(&mut self) -> Result<XPoly> {
        let mut acc = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                acc = &acc + &self.term()?;
            } else if self.peek_op('-') {
                self.pos += 1;
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<XPoly> {
        let mut acc = self.unary()?;
        while self.peek_op('*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<XPoly> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if self.peek_op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<XPoly> {
        let base = self.atom()?;
        if self.peek_op('^') {
            self.pos += 1;
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Num(e)) => {
                    self.pos += 1;
                    let e = u32::try_from(e).map_err(|_| self.error("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                other => return Err(self.error(format!("expected an exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<XPoly> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(c)) => Ok(XPoly::from_aux(PolyAux::constant(BigRational::from_integer(c)))),
            Some(Token::Ident(name)) => {
                if name == "x" {
                    Ok(XPoly::x())
                } else if name == self.na {
                    Ok(XPoly::from_aux(PolyAux::var_a()))
                } else if name == self.nb {
                    Ok(XPoly::from_aux(PolyAux::var_b()))
                } else {
                    Err(self.error(format!("unknown variable `{name}`")))
                }
            }
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                if !self.peek_op(')') {
                    return Err(self.error("missing `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial without `x` into a [`PolyAux`].
pub fn parse_aux(input: &str, na: &str, nb: &str) -> Result<PolyAux> {
    let p = parse_xpoly(input, na, nb)?;
    match p.degree() {
        None => Ok(PolyAux::zero()),
        Some(0) => Ok(p.coeff(0)),
        Some(_) => Err(Error::PolyParse { input: input.to_string(), reason: "unexpected x".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aux(s: &str) -> PolyAux {
        parse_aux(s, "v", "w").unwrap()
    }

    #[test]
    fn arithmetic_and_rendering() {
        let p = aux("(1 + v)^2 - 2*v");
        assert_eq!(p, aux("1 + v^2"));
        assert_eq!(p.render("v", "w"), "v^2 + 1");
        assert_eq!(aux("3*v*w - 1").render("v", "w"), "3*v*w - 1");
        assert_eq!(aux("0").render("v", "w"), "0");
        assert!(aux("v - v").is_zero());
        assert_eq!(aux("v*w^2").total_degree(), Some(3));
    }

    #[test]
    fn exact_division() {
        let d = aux("(2 - v)*(1 - w)");
        let n = &aux("v^3*w + 7") * &d;
        assert_eq!(n.div_exact(&d), Some(aux("v^3*w + 7")));
        assert_eq!(aux("v + 1").div_exact(&aux("v - 1")), None);
        assert_eq!(aux("v*w + 1").div_exact(&aux("w")), None);
        assert_eq!(aux("1").div_exact(&PolyAux::zero()), None);
    }

    #[test]
    fn composition() {
        let p = aux("v^2*w + v");
        let got = p.compose(&aux("1 - v*w"), &aux("v*w"));
        let expected = aux("(1 - v*w)^2*v*w + 1 - v*w");
        assert_eq!(got, expected);
        assert_eq!(aux("v^2*w^3 + w").at_b_one(), aux("v^2 + 1"));
    }

    #[test]
    fn xpoly_parsing() {
        let p = parse_xpoly("1 - 6*x*v*w + x^2*v^2*w^2", "v", "w").unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(1), aux("-6*v*w"));
        assert_eq!(p.guard_excess(), 0);
        assert_eq!(parse_xpoly("v^3", "v", "w").unwrap().guard_excess(), 3);
        assert!(parse_xpoly("x + z", "v", "w").is_err());
        assert!(parse_xpoly("(x + 1", "v", "w").is_err());
        assert!(parse_xpoly("x # 1", "v", "w").is_err());
        assert!(parse_aux("x", "v", "w").is_err());
    }
}
