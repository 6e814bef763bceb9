//! Sparse multivariate polynomials over an exchangeable coefficient ring.
//!
//! Terms are kept in a map keyed by exponent vectors under graded
//! lexicographic order, with zero coefficients never stored, so two equal
//! polynomials over the same variable list always render to the same text.
//! Operations on polynomials with different variable lists first align both
//! onto the union of their variables (left operand's order, then new names
//! from the right operand in their order).
//!
//! Canonical text form: terms from greatest to least, factors joined by `*`,
//! powers written `x^k` for `k > 1`, e.g. `-L^5 + b1*L^4 + 4*L^3 - 3*L`.

mod quad;
mod ring;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use quad::{QuadExtRational, SQRT3};
pub use ring::Ring;

use crate::error::{Error, Result};

/// Exponent vector, ordered by total degree then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponents of the product of two monomials over the same variables.
    fn product_exponents(&self, other: &Self) -> Vec<u32> {
        self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<R: Ring> {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> MultiPoly<R> {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: R) -> Self {
        let mut p = Self::zero(vars);
        let exps = vec![0; p.vars.len()];
        p.add_term(exps, c);
        p
    }

    /// The polynomial `name` over `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name)?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.add_term(exps, R::one());
        Ok(p)
    }

    /// Build from `(coefficient, exponents)` pairs; like terms are combined.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (R, Vec<u32>)>,
    {
        let mut p = Self::zero(vars);
        for (c, exps) in terms {
            if exps.len() != p.vars.len() {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    p.vars.len()
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: R) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(exps);
        match self.terms.remove(&key) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(key, sum);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let idx = self.index_of(name)?;
        Ok(self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> R {
        self.terms
            .get(&Monomial(vec![0; self.vars.len()]))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// Variables that appear with a positive exponent in some term.
    pub fn used_vars(&self) -> Vec<&str> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|m| m.0[*i] > 0))
            .map(|(_, v)| v.as_str())
            .collect()
    }

    /// Re-express over `vars`, which must contain every variable in use.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let new_vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match new_vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().any(|m| m.0[i] > 0) => {
                    return Err(Error::UnknownVariable(v.clone()))
                }
                None => map.push(None),
            }
        }
        let mut out = Self::zero(&new_vars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; new_vars.len()];
            for (i, e) in m.0.iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = *e;
                }
            }
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned_pair(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.union_vars(other);
        // union contains every variable of both operands
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, v) in &self.terms {
            out.add_term(m.0.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(&self.vars, R::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replace `name` by the ring element `value`; `name` leaves the variable list.
    pub fn substitute(&self, name: &str, value: &R) -> Result<Self> {
        let idx = self.index_of(name)?;
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let mut powers: Vec<R> = vec![R::one()];
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty").clone() * value.clone();
                powers.push(next);
            }
            let mut exps = m.0.clone();
            exps.remove(idx);
            out.add_term(exps, c.clone() * powers[e].clone());
        }
        Ok(out)
    }

    /// Replace `name` by the polynomial `value`. The result lives over the
    /// union of the remaining variables and those of `value`.
    pub fn substitute_poly(&self, name: &str, value: &Self) -> Result<Self> {
        let idx = self.index_of(name)?;
        let remaining: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let value = Self::zero(&remaining).aligned_pair(value).1;
        let vars = value.vars.clone();
        let mut powers = vec![Self::constant(&vars, R::one())];
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * &value;
                powers.push(next);
            }
            let mut exps = m.0.clone();
            exps.remove(idx);
            let mono = Self::from_terms(&remaining, [(c.clone(), exps)])?
                .with_vars(&vars)?;
            out = &out + &(&mono * &powers[e]);
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        let idx = self.index_of(name)?;
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            out.add_term(exps, c.clone() * R::from_i64(e as i64));
        }
        Ok(out)
    }

    /// Coefficients in powers of `name`: entry `k` multiplies `name^k`.
    /// Each coefficient is a polynomial over the remaining variables.
    pub fn coefficients_in(&self, name: &str) -> Result<Vec<Self>> {
        let idx = self.index_of(name)?;
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let deg = self.degree_in(name)? as usize;
        let mut out = vec![Self::zero(&vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut exps = m.0.clone();
            exps.remove(idx);
            out[e].add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at a real point given by name. Extra bindings are ignored.
    pub fn evaluate(&self, point: &HashMap<String, f64>) -> Result<f64> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                point
                    .get(v)
                    .copied()
                    .ok_or_else(|| Error::MissingBinding(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.evaluate_slice(&values))
    }

    /// Evaluate with `values[i]` bound to `vars()[i]`.
    pub fn evaluate_slice(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.vars.len(), "binding count");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(values)
                    .fold(c.to_f64(), |acc, (e, x)| acc * x.powi(*e as i32))
            })
            .sum()
    }

    /// Exact evaluation in the coefficient ring.
    pub fn evaluate_exact(&self, point: &HashMap<String, R>) -> Result<R> {
        let mut p = self.clone();
        for v in &self.vars {
            let value = point
                .get(v)
                .ok_or_else(|| Error::MissingBinding(v.clone()))?;
            p = p.substitute(v, value)?;
        }
        Ok(p.constant_term())
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.0.clone(), f(c));
        }
        out
    }

    pub fn to_float(&self) -> MultiPoly<f64> {
        self.map_coeffs(R::to_f64)
    }
}

impl<R: Ring> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (negative, mag) = c.sign_and_magnitude();
            let sign = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| {
                    if *e == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let body = match (factors.is_empty(), mag == "1") {
                (true, _) => mag,
                (false, true) => factors.join("*"),
                (false, false) => format!("{mag}*{}", factors.join("*")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

impl<R: Ring> Add for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn add(self, rhs: Self) -> MultiPoly<R> {
        let (mut a, b) = self.aligned_pair(rhs);
        for (m, c) in b.terms {
            a.add_term(m.0, c);
        }
        a
    }
}

impl<R: Ring> Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn neg(self) -> MultiPoly<R> {
        self.scale(&-R::one())
    }
}

impl<R: Ring> Sub for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn sub(self, rhs: Self) -> MultiPoly<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Mul for &MultiPoly<R> {
    type Output = MultiPoly<R>;
    fn mul(self, rhs: Self) -> MultiPoly<R> {
        let (a, b) = self.aligned_pair(rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps = ma.product_exponents(mb);
                out.add_term(exps, ca.clone() * cb.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<R: Ring> $tr for MultiPoly<R> {
            type Output = MultiPoly<R>;
            fn $method(self, rhs: Self) -> MultiPoly<R> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
