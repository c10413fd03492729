//! Polynomials with natural coefficients, `ℕ[x_1, …, x_n]`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::structure::PartialRing;
use crate::Elem;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl NatPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(nvars);
        if c > 0 {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self { nvars, terms: BTreeMap::from([(e, 1)]) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            *out.terms.entry(m.clone()).or_insert(0) += c;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *out.terms.entry(m).or_insert(0) += c1 * c2;
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, 1), |acc, _| acc.mul(self))
    }

    /// Variables with a positive exponent somewhere.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m[i] > 0)).collect()
    }

    /// Total number of monomials counted with multiplicity.
    pub fn weight(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut s = String::new();
                let factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
                    .collect();
                if c != 1 || factors.is_empty() {
                    write!(s, "{c}").expect("write to string");
                    if !factors.is_empty() {
                        s.push('*');
                    }
                }
                s.push_str(&factors.join("*"));
                s
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses `+ * ^ ( )`, natural literals and the given variable names.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0, names };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(poly)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at column {} in {text:?}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NatPoly> {
        let mut p = self.term()?;
        while self.eat('+') {
            p = p.add(&self.term()?);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<NatPoly> {
        let mut p = self.factor()?;
        while self.eat('*') {
            p = p.mul(&self.factor()?);
        }
        Ok(p)
    }

    fn factor(&mut self) -> Result<NatPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let k = self.natural()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.error("number too large"))
    }

    fn atom(&mut self) -> Result<NatPoly> {
        let n = self.names.len();
        if self.eat('(') {
            let p = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(p);
        }
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_digit() => Ok(NatPoly::constant(n, self.natural()?)),
            Some(c) if c.is_alphabetic() || *c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '\'') {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                match self.names.iter().position(|x| *x == ident) {
                    Some(i) => Ok(NatPoly::var(n, i)),
                    None => {
                        self.pos = start;
                        Err(self.error(&format!("unknown generator {ident:?}")))
                    }
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

/// Each monomial repeated as often as its coefficient.
pub fn monomials(p: &NatPoly) -> Vec<Monomial> {
    p.terms.iter().flat_map(|(m, &c)| std::iter::repeat_n(m.clone(), c as usize)).collect()
}

pub fn eval_monomial(a: &PartialRing, m: &[u32], asg: &[Elem]) -> Elem {
    m.iter().zip(asg).fold(a.one(), |acc, (&e, &x)| a.mul(acc, a.pow(x, e)))
}

/// Values of the monomials of `p`, with multiplicity.
pub fn monomial_values(a: &PartialRing, p: &NatPoly, asg: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(p.weight() as usize);
    for (m, &c) in &p.terms {
        let v = eval_monomial(a, m, asg);
        out.extend(std::iter::repeat_n(v, c as usize));
    }
    out
}

/// The value of `p`, if its monomials form a summable multiset.
pub fn evaluate(a: &PartialRing, p: &NatPoly, asg: &[Elem]) -> Option<Elem> {
    a.sum_multiset(&monomial_values(a, p, asg))
}

pub fn can_calculate(a: &PartialRing, p: &NatPoly, asg: &[Elem]) -> bool {
    evaluate(a, p, asg).is_some()
}
