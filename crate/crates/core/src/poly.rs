//! Bivariate polynomials in the shifted plane coordinates `u1 = x1 - x01`,
//! `u2 = x2 - x02`.
//!
//! Coefficients are generic so the same type carries real gauge functions
//! and the complex coefficient fields of differential operators. All ring
//! operations and partial derivatives are exact over the coefficient map.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

/// Default bound on the total degree of user-supplied gauge functions.
pub const DEFAULT_MAX_DEGREE: u32 = 6;

/// Coefficient field for [`Poly2`].
pub trait Coeff:
    Copy
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + From<f64>
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Copy
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + From<f64>
        + Send
        + Sync
        + 'static
{
}

/// Sparse polynomial `sum c_ij u1^i u2^j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Poly2<T: Coeff = f64> {
    terms: BTreeMap<(u32, u32), T>,
}

/// Complex-coefficient polynomial.
pub type CPoly2 = Poly2<Complex64>;

impl<T: Coeff> Default for Poly2<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Coeff> Poly2<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: T) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// The coordinate `u1` (`var == 0`) or `u2` (`var == 1`).
    pub fn var(var: usize) -> Self {
        match var {
            0 => Self::monomial(1, 0, T::one()),
            1 => Self::monomial(0, 1, T::one()),
            _ => panic!("Poly2 has two variables, got index {var}"),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), T)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in iter {
            p.add_term(i, j, c);
        }
        p
    }

    /// Accumulates `c u1^i u2^j`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, i: u32, j: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(T::zero);
        *entry = *entry + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), T)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).copied().unwrap_or_else(T::zero)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn check_degree(&self, max: u32) -> crate::Result<()> {
        let degree = self.degree();
        if degree > max {
            return Err(crate::Error::DegreeOverflow { degree, max });
        }
        Ok(())
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Partial derivative with respect to `u1` (`var == 0`) or `u2` (`var == 1`).
    pub fn deriv(&self, var: usize) -> Self {
        assert!(var < 2, "Poly2 has two variables, got index {var}");
        let mut out = Self::zero();
        for ((i, j), c) in self.terms() {
            let e = if var == 0 { i } else { j };
            if e == 0 {
                continue;
            }
            let c = c * T::from(e as f64);
            if var == 0 {
                out.add_term(i - 1, j, c);
            } else {
                out.add_term(i, j - 1, c);
            }
        }
        out
    }

    pub fn gradient(&self) -> [Self; 2] {
        [self.deriv(0), self.deriv(1)]
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(T::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at shifted coordinates `u`.
    pub fn eval(&self, u: [f64; 2]) -> T {
        let (mi, mj) = self
            .terms
            .keys()
            .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)));
        let p1 = powers(u[0], mi);
        let p2 = powers(u[1], mj);
        let mut acc = T::zero();
        for ((i, j), c) in self.terms() {
            acc = acc + c * T::from(p1[i as usize] * p2[j as usize]);
        }
        acc
    }

    /// Flattens into a form suited to repeated evaluation.
    pub fn compile(&self) -> CompiledPoly<T> {
        let terms: Vec<_> = self.terms().map(|((i, j), c)| (i, j, c)).collect();
        let max_i = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let max_j = terms.iter().map(|t| t.1).max().unwrap_or(0);
        CompiledPoly {
            terms,
            max_i,
            max_j,
        }
    }
}

fn powers(x: f64, n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        out.push(acc);
        acc *= x;
    }
    out
}

impl Poly2<f64> {
    pub fn to_complex(&self) -> CPoly2 {
        Poly2::from_terms(self.terms().map(|(e, c)| (e, Complex64::new(c, 0.0))))
    }

    /// Drops coefficients whose magnitude is at most `tol`.
    pub fn pruned(&self, tol: f64) -> Self {
        Self::from_terms(self.terms().filter(|(_, c)| c.abs() > tol))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max)
    }
}

impl CPoly2 {
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }
}

/// A polynomial prepared for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly<T: Coeff> {
    terms: Vec<(u32, u32, T)>,
    max_i: u32,
    max_j: u32,
}

impl<T: Coeff> CompiledPoly<T> {
    pub fn eval(&self, u: [f64; 2]) -> T {
        if self.terms.is_empty() {
            return T::zero();
        }
        let mut p1 = [1.0f64; 32];
        let mut p2 = [1.0f64; 32];
        if self.max_i < 32 && self.max_j < 32 {
            for k in 1..=self.max_i as usize {
                p1[k] = p1[k - 1] * u[0];
            }
            for k in 1..=self.max_j as usize {
                p2[k] = p2[k - 1] * u[1];
            }
            let mut acc = T::zero();
            for &(i, j, c) in &self.terms {
                acc = acc + c * T::from(p1[i as usize] * p2[j as usize]);
            }
            acc
        } else {
            let mut acc = T::zero();
            for &(i, j, c) in &self.terms {
                acc = acc + c * T::from(u[0].powi(i as i32) * u[1].powi(j as i32));
            }
            acc
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Coeff> fmt::Debug for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter())
            .finish()
    }
}

impl<T: Coeff> Add for &Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, c);
        }
        out
    }
}

impl<T: Coeff> Sub for &Poly2<T> {
    type Output = Poly2<T>;
    fn sub(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl<T: Coeff> Mul for &Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = Poly2::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl<T: Coeff> Neg for &Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        self.scale(-T::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Poly2<T> {
            type Output = Poly2<T>;
            fn $m(self, rhs: Poly2<T>) -> Poly2<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Syntax and bound errors from [`Poly2::parse`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("term at byte {pos} has degree {degree}, above the bound {max}")]
    DegreeOverflow { pos: usize, degree: u32, max: u32 },
}

impl Poly2<f64> {
    /// Parses with the default degree bound.
    pub fn parse(text: &str) -> Result<Self, PolyParseError> {
        Self::parse_bounded(text, DEFAULT_MAX_DEGREE)
    }

    /// Parses `expression := term (('+'|'-') term)*` over `u1`, `u2`, where a
    /// term is a decimal coefficient and/or a `*`-separated product of
    /// factors `u1^k`, `u2^k`. A leading sign is accepted.
    pub fn parse_bounded(text: &str, max_degree: u32) -> Result<Self, PolyParseError> {
        Parser::new(text, max_degree).expression()
    }
}

impl FromStr for Poly2<f64> {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    max_degree: u32,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, max_degree: u32) -> Self {
        Self {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            max_degree,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
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

    fn expression(mut self) -> Result<Poly2<f64>, PolyParseError> {
        let mut out = Poly2::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            None => return self.err("empty expression"),
            _ => 1.0,
        };
        loop {
            let start = self.pos;
            let (i, j, c) = self.term()?;
            if i + j > self.max_degree {
                return Err(PolyParseError::DegreeOverflow {
                    pos: start,
                    degree: i + j,
                    max: self.max_degree,
                });
            }
            out.add_term(i, j, sign * c);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(u32, u32, f64), PolyParseError> {
        let mut coeff = 1.0;
        let (mut i, mut j) = (0u32, 0u32);
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                coeff = self.number()?;
                if self.peek() != Some(b'*') {
                    return Ok((0, 0, coeff));
                }
                self.pos += 1;
            }
            Some(b'u') => {}
            Some(c) => return self.err(format!("expected a term, found `{}`", c as char)),
            None => return self.err("expected a term, found end of input"),
        }
        loop {
            let (var, exp) = self.factor()?;
            let slot = if var == 0 { &mut i } else { &mut j };
            *slot = match slot.checked_add(exp) {
                Some(v) => v,
                None => return self.err("exponent overflow"),
            };
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((i, j, coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32), PolyParseError> {
        self.skip_ws();
        let var = match self.bytes.get(self.pos..self.pos + 2) {
            Some(b"u1") => 0,
            Some(b"u2") => 1,
            _ => return self.err("expected `u1` or `u2`"),
        };
        self.pos += 2;
        if self.peek() != Some(b'^') {
            return Ok((var, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer exponent");
        }
        match self.src[start..self.pos].parse::<u32>() {
            Ok(e) => Ok((var, e)),
            Err(_) => {
                self.pos = start;
                self.err("exponent out of range")
            }
        }
    }

    fn number(&mut self) -> Result<f64, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.bytes.len() && p.bytes[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            self.pos = start;
            return self.err("malformed number");
        }
        if matches!(self.bytes.get(self.pos), Some(b'e') | Some(b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
                return self.err("malformed exponent");
            }
        }
        match self.src[start..self.pos].parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err("number out of range")
            }
        }
    }
}

/// Canonical order: ascending total degree, then descending power of `u1`.
fn canonical_order(p: &Poly2<f64>) -> Vec<((u32, u32), f64)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|&((i, j), _)| (i + j, std::cmp::Reverse(i)));
    terms
}

impl fmt::Display for Poly2<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in canonical_order(self).into_iter().enumerate() {
            let mag = c.abs();
            match (k, c < 0.0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            for (name, e) in [("u1", i), ("u2", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1.0 {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
