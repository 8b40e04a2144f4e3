use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::Scalar;

use super::FormError;

/// Coordinate names used for the axes of a chart `ℝ^m`, `m ≤ 4`.
pub const AXIS_NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn axis_index(name: &str) -> Option<usize> {
    AXIS_NAMES.iter().position(|&n| n == name)
}

/// Sparse polynomial in `nvars` variables with [`Scalar`] coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// The coordinate function of axis `k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        Poly::monomial(nvars, &[(k, 1)], Scalar::one())
    }

    pub fn monomial(nvars: usize, powers: &[(usize, u32)], c: Scalar) -> Self {
        let mut e = vec![0; nvars];
        for &(k, p) in powers {
            e[k] += p;
        }
        let mut out = Poly::zero(nvars);
        out.add_term(e, c);
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Scalar) {
        assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂/∂x_k`.
    pub fn deriv(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, c * &Scalar::from_int(e[k] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &p) in point.iter().zip(e) {
                    for _ in 0..p {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Parses `"2*x^2*y - (1+i)*z + 3/2"` over the first `nvars` axis names.
    pub fn parse(src: &str, nvars: usize) -> Result<Poly, FormError> {
        PolyParser { src, pos: 0, nvars }.parse()
    }
}

impl fmt::Display for Poly {
    /// Terms in descending exponent order, coefficients parenthesized when
    /// they are not a single rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| if p == 1 { AXIS_NAMES[k].to_string() } else { format!("{}^{}", AXIS_NAMES[k], p) })
                .collect();
            let (neg, mag) = if c.is_rational() && c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coef = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            if vars.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coef}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
    nvars: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: impl Into<String>) -> FormError {
        FormError::PolyParse { offset: self.pos, msg: msg.into() }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<Poly, FormError> {
        let mut acc = Poly::zero(self.nvars);
        let mut sign = if self.eat('-') { -1 } else { self.eat('+'); 1 };
        loop {
            let t = self.term()?;
            acc.add_assign(&t.scale(&Scalar::from_int(sign)));
            self.skip_ws();
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        self.skip_ws();
        if !self.rest().is_empty() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, FormError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, FormError> {
        self.skip_ws();
        if self.eat('(') {
            let close = self.rest().find(')').ok_or_else(|| self.err("unclosed '('"))?;
            let inner = &self.rest()[..close];
            let c: Scalar = inner.parse().map_err(|e| self.err(format!("{e}")))?;
            self.pos += close + 1;
            return Ok(Poly::constant(self.nvars, c));
        }
        let digits = self.rest().bytes().take_while(|b| b.is_ascii_digit() || *b == b'/').count();
        if digits > 0 {
            let c: Scalar = self.rest()[..digits].parse().map_err(|e| self.err(format!("{e}")))?;
            self.pos += digits;
            return Ok(Poly::constant(self.nvars, c));
        }
        let name = self.rest().chars().next().map(String::from).unwrap_or_default();
        let k = axis_index(&name).filter(|&k| k < self.nvars).ok_or_else(|| self.err("expected coordinate or number"))?;
        self.pos += 1;
        let mut pow = 1u32;
        if self.eat('^') {
            self.skip_ws();
            let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
            pow = self.rest()[..n].parse().map_err(|_| self.err("bad exponent"))?;
            self.pos += n;
        }
        Ok(Poly::monomial(self.nvars, &[(k, pow)], Scalar::one()))
    }
}
