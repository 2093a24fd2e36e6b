//! Sparse multivariate polynomials over the coefficient rings in [`crate::ring`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MAX_VARS};
use crate::ring::{Field, Ring, UnivariatePolynomials};

/// Ordered variable names. The order is the variable ranking: the first name
/// is the largest variable.
#[derive(Clone, Debug, Eq)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidInput(format!("bad variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Vars(names.into()))
    }

    pub fn xyz() -> Self {
        Vars::new(&["x", "y", "z"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new ambient with `name` prepended as the largest variable.
    pub fn prepend(&self, name: &str) -> Result<Vars> {
        let mut v = vec![name.to_string()];
        v.extend(self.0.iter().cloned());
        Vars::new(&v)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// A polynomial with coefficients in `R`, stored as a map from monomials to
/// nonzero coefficients. Iteration order is increasing degrevlex.
#[derive(Clone, Debug)]
pub struct Polynomial<R: Ring> {
    ring: R,
    vars: Vars,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl<R: Ring> Polynomial<R> {
    pub fn zero(ring: &R, vars: &Vars) -> Self {
        Polynomial { ring: ring.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &R, vars: &Vars, c: R::Elem) -> Self {
        Self::term(ring, vars, Monomial::one(), c)
    }

    pub fn one(ring: &R, vars: &Vars) -> Self {
        Self::constant(ring, vars, ring.one())
    }

    pub fn term(ring: &R, vars: &Vars, m: Monomial, c: R::Elem) -> Self {
        let mut p = Self::zero(ring, vars);
        if !ring.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(ring: &R, vars: &Vars, m: Monomial) -> Self {
        Self::term(ring, vars, m, ring.one())
    }

    pub fn var(ring: &R, vars: &Vars, i: usize) -> Self {
        Self::monomial(ring, vars, Monomial::var(i))
    }

    pub fn from_terms<I>(ring: &R, vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, R::Elem)>,
    {
        let mut p = Self::zero(ring, vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing degrevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, R::Elem> {
        self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Largest monomial in degrevlex together with its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                self.ring.add_assign(existing, c);
                if self.ring.is_zero(existing) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::AmbientMismatch(format!(
                "{:?} vs {:?}",
                self.vars.names(),
                other.vars.names()
            )));
        }
        if self.ring != other.ring {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ring.name(),
                other.ring.name()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut out = Self::zero(&self.ring, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &self.ring.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs_same(|c| self.ring.neg(c))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        if self.ring.is_zero(c) {
            return Self::zero(&self.ring, &self.vars);
        }
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m, a) in &self.terms {
            out.add_term(*m, &self.ring.mul(a, c));
        }
        out
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, &self.vars);
        if self.ring.is_zero(c) {
            return out;
        }
        for (a, ca) in &self.terms {
            out.add_term(a.mul(m), &self.ring.mul(ca, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring, &self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// One step of division by a polynomial whose leading coefficient (in
    /// degrevlex) is a unit: cancels the term at `m`, which must be divisible
    /// by the divisor's leading monomial.
    pub fn head_division_step(&self, m: &Monomial, divisor: &Self) -> Result<Self> {
        self.check_ambient(divisor)?;
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::NonUnitDivision("division by zero".into()))?;
        let inv = self
            .ring
            .unit_inverse(lc)
            .ok_or_else(|| Error::NonUnitDivision(self.ring.format_elem(lc)))?;
        let q = m
            .div(lm)
            .ok_or_else(|| Error::InvalidInput("head does not divide the term".into()))?;
        let c = self.ring.mul(&self.coeff(m), &inv);
        let sub = divisor.mul_term(&q, &c);
        self.try_sub(&sub)
    }

    fn map_coeffs_same<F: Fn(&R::Elem) -> R::Elem>(&self, f: F) -> Self {
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    /// Coefficient-wise image in another ring.
    pub fn map_coeffs<S: Ring, F: Fn(&R::Elem) -> S::Elem>(&self, target: &S, f: F) -> Polynomial<S> {
        let mut out = Polynomial::zero(target, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    pub fn try_map_coeffs<S: Ring, F: Fn(&R::Elem) -> Result<S::Elem>>(
        &self,
        target: &S,
        f: F,
    ) -> Result<Polynomial<S>> {
        let mut out = Polynomial::zero(target, &self.vars);
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Same polynomial in a different ambient with the same number of
    /// variables, or in a larger one whose leading variables are new
    /// (`shift` slots prepended).
    pub fn with_vars(&self, vars: &Vars, shift: usize) -> Result<Self> {
        if vars.len() < self.nvars() + shift {
            return Err(Error::AmbientMismatch("target ambient too small".into()));
        }
        let mut out = Self::zero(&self.ring, vars);
        for (m, c) in &self.terms {
            out.add_term(m.shifted(shift)?, c);
        }
        Ok(out)
    }

    /// Substitutes `x_i -> images[i]` for every variable. The images may live
    /// in a different ambient (all the same).
    pub fn substitute(&self, images: &[Polynomial<R>]) -> Result<Polynomial<R>> {
        if images.len() != self.nvars() {
            return Err(Error::AmbientMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target_vars = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        let mut powers: Vec<Vec<Polynomial<R>>> = images
            .iter()
            .map(|p| vec![Polynomial::one(&self.ring, &target_vars), p.clone()])
            .collect();
        let mut out = Polynomial::zero(&self.ring, &target_vars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, &target_vars, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().try_mul(&images[i])?;
                    pw.push(next);
                }
                if e > 0 {
                    t = t.try_mul(&pw[e])?;
                }
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Evaluates at a point given as ring elements.
    pub fn evaluate(&self, point: &[R::Elem]) -> Result<R::Elem> {
        if point.len() != self.nvars() {
            return Err(Error::AmbientMismatch("point dimension".into()));
        }
        let r = &self.ring;
        let mut acc = r.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = r.mul(&t, &r.pow(v, e));
                }
            }
            r.add_assign(&mut acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes values for the variables not in `keep` and returns the
    /// result in the ambient `keep`, whose names must be a subset of this
    /// ambient's names.
    pub fn specialize(&self, assignment: &BTreeMap<String, R::Elem>, keep: &Vars) -> Result<Polynomial<R>> {
        let r = &self.ring;
        let mut images = Vec::with_capacity(self.nvars());
        for name in self.vars.names() {
            if let Some(j) = keep.index_of(name) {
                images.push(Polynomial::var(r, keep, j));
            } else {
                images.push(Polynomial::zero(r, keep));
            }
        }
        // only variables that actually occur need a value
        for (i, name) in self.vars.names().iter().enumerate() {
            if keep.index_of(name).is_some() {
                continue;
            }
            let occurs = self.terms.keys().any(|m| m.exp(i) > 0);
            match assignment.get(name) {
                Some(v) => images[i] = Polynomial::constant(r, keep, v.clone()),
                None if occurs => return Err(Error::UnassignedParameter(name.clone())),
                None => {}
            }
        }
        self.substitute(&images)
    }

    /// Terms whose monomial satisfies `pred`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Self {
        let mut out = Self::zero(&self.ring, &self.vars);
        for (m, c) in &self.terms {
            if pred(m) {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }
}

impl<K: Field> Polynomial<K> {
    /// Substitutes `x_i -> sum_j M[j][i] x_j`: column `i` of `matrix` is the
    /// image of `x_i`. With this convention applying `M1` and then `M2` equals
    /// applying `M2 * M1`.
    pub fn apply_linear_change(&self, matrix: &[Vec<K::Elem>]) -> Result<Self> {
        let n = self.nvars();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::AmbientMismatch("matrix size".into()));
        }
        if crate::linalg::rank(&self.ring, matrix.to_vec()) < n {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Polynomial<K>> = (0..n)
            .map(|i| {
                Polynomial::from_terms(
                    &self.ring,
                    &self.vars,
                    (0..n).map(|j| (Monomial::var(j), matrix[j][i].clone())),
                )
            })
            .collect();
        self.substitute(&images)
    }

    /// Substitutes `x_i -> x_i + c_i`.
    pub fn translate(&self, shift: &[K::Elem]) -> Result<Self> {
        let n = self.nvars();
        if shift.len() != n {
            return Err(Error::AmbientMismatch("point dimension".into()));
        }
        let images: Vec<Polynomial<K>> = (0..n)
            .map(|i| {
                let mut p = Polynomial::var(&self.ring, &self.vars, i);
                p.add_term(Monomial::one(), &shift[i]);
                p
            })
            .collect();
        self.substitute(&images)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.inv(c).expect("nonzero field element");
                self.scale(&inv)
            }
        }
    }
}

impl<K: Field> Polynomial<UnivariatePolynomials<K>> {
    /// Evaluates the coefficient parameter `t`.
    pub fn specialize_t(&self, value: &K::Elem) -> Polynomial<K> {
        let base = self.ring.base().clone();
        self.map_coeffs(&base, |c| self.ring.eval(c, value))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a, R: Ring> std::ops::$tr<&'a Polynomial<R>> for &'a Polynomial<R> {
            type Output = Polynomial<R>;
            fn $method(self, rhs: &'a Polynomial<R>) -> Polynomial<R> {
                self.$inner(rhs).expect("operands share an ambient")
            }
        }
        impl<R: Ring> std::ops::$tr<Polynomial<R>> for Polynomial<R> {
            type Output = Polynomial<R>;
            fn $method(self, rhs: Polynomial<R>) -> Polynomial<R> {
                self.$inner(&rhs).expect("operands share an ambient")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<R: Ring> std::ops::Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial::neg(self)
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    /// Canonical form: terms in decreasing degrevlex, `*` between factors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = self.ring.format_elem(c);
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", m.display_with(names))?;
            } else {
                write!(f, "{}*{}", body, m.display_with(names))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses a polynomial over `ring` in the ambient `vars`.
///
/// Grammar: sums and differences of products of factors; a factor is an
/// integer, a variable, or a parenthesised expression, optionally raised to a
/// nonnegative integer power with `^`. `*` may be omitted, and `/` divides by
/// a nonzero integer (so `3/4*x` and `x/2` both work).
pub fn parse_polynomial<R: Ring>(input: &str, ring: &R, vars: &Vars) -> Result<Polynomial<R>> {
    let tokens = tokenize(input)?;
    let mut parser = Parser { input, tokens, pos: 0, ring, vars };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = input.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(input[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(input[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    input: input.to_string(),
                    position: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    input: &'a str,
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a R,
    vars: &'a Vars,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn error(&self, message: &str) -> Error {
        let position = self.tokens.get(self.pos).map_or(self.input.len(), |t| t.0);
        Error::Parse { input: self.input.to_string(), position, message: message.to_string() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.1)
    }

    fn expr(&mut self) -> Result<Polynomial<R>> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.try_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.try_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<R>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.try_mul(&self.power()?)?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = match self.peek() {
                        Some(Tok::Num(n)) => n.clone(),
                        _ => return Err(self.error("expected an integer divisor")),
                    };
                    if d.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    self.pos += 1;
                    let q = BigRational::new(1.into(), d);
                    let c = self
                        .ring
                        .from_rational(&q)
                        .ok_or_else(|| self.error("divisor is not invertible"))?;
                    acc = acc.scale(&c);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.try_mul(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial<R>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(self.error("expected an exponent")),
            };
            self.pos += 1;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<R>> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self
                    .ring
                    .from_rational(&BigRational::from_integer(n))
                    .ok_or_else(|| self.error("coefficient not representable"))?;
                Ok(Polynomial::constant(self.ring, self.vars, c))
            }
            Some(Tok::Ident(name)) => {
                let i = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| self.error(&format!("unknown variable `{name}`")))?;
                self.pos += 1;
                Ok(Polynomial::var(self.ring, self.vars, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(p)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, DualNumbers, PrimeField, Rationals};

    fn q(s: &str) -> Polynomial<Rationals> {
        parse_polynomial(s, &Rationals, &Vars::xyz()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q("x+y") * &q("x-y"), q("x^2 - y^2"));
    }

    #[test]
    fn dual_number_square() {
        let d = DualNumbers::new(Rationals);
        let vars = Vars::xyz();
        let mut p = Polynomial::var(&d, &vars, 0);
        p.add_term(Monomial::var(1), &d.pure_eps(rat(1, 1)));
        let sq = &p * &p;
        let mut expected = Polynomial::monomial(&d, &vars, Monomial::new(&[2, 0, 0]));
        expected.add_term(Monomial::new(&[1, 1, 0]), &d.pure_eps(rat(2, 1)));
        assert_eq!(sq, expected);
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let f2 = PrimeField::new(2).unwrap();
        let vars = Vars::xyz();
        let p = parse_polynomial("x+y", &f2, &vars).unwrap();
        assert_eq!(&p * &p, parse_polynomial("x^2+y^2", &f2, &vars).unwrap());
    }

    #[test]
    fn printing_is_canonical() {
        let p = q("-x*z + y^3 + 3/4 - 2 y z");
        assert_eq!(p.to_string(), "y^3 - x*z - 2*y*z + 3/4");
        assert_eq!(q(&p.to_string()), p);
        assert_eq!(q("0").to_string(), "0");
        assert_eq!(q("-1").to_string(), "-1");
    }

    #[test]
    fn parse_variants() {
        assert_eq!(q("2x(y+1)"), q("2*x*y + 2*x"));
        assert_eq!(q("(x+y)^2"), q("x^2 + 2*x*y + y^2"));
        assert_eq!(q("x/2"), q("1/2*x"));
        assert_eq!(q("-(x)^2"), q("-x^2"));
        assert!(parse_polynomial("x + w", &Rationals, &Vars::xyz()).is_err());
        assert!(parse_polynomial("x +", &Rationals, &Vars::xyz()).is_err());
        assert!(parse_polynomial("x/0", &Rationals, &Vars::xyz()).is_err());
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = q("x");
        let other = Vars::new(&["x", "y"]).unwrap();
        let b = parse_polynomial("x", &Rationals, &other).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn head_division_step_needs_unit() {
        let d = DualNumbers::new(Rationals);
        let vars = Vars::xyz();
        let g = Polynomial::monomial(&d, &vars, Monomial::new(&[2, 0, 0]));
        let divisor = Polynomial::term(&d, &vars, Monomial::var(0), d.pure_eps(rat(1, 1)));
        assert!(matches!(
            g.head_division_step(&Monomial::new(&[2, 0, 0]), &divisor),
            Err(Error::NonUnitDivision(_))
        ));
        let unit = Polynomial::var(&d, &vars, 0);
        assert!(g.head_division_step(&Monomial::new(&[2, 0, 0]), &unit).unwrap().is_zero());
    }

    #[test]
    fn linear_change_examples() {
        let id = vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(q("x").apply_linear_change(&id).unwrap(), q("x"));
        // column 0 = image of x = x + y
        let mut m = id.clone();
        m[1][0] = rat(1, 1);
        assert_eq!(q("x^2").apply_linear_change(&m).unwrap(), q("x^2 + 2*x*y + y^2"));
        let singular = vec![vec![rat(1, 1); 3]; 3];
        assert_eq!(q("x").apply_linear_change(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn translation_examples() {
        let c = [rat(3, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(q("x").translate(&c).unwrap(), q("x + 3"));
        // shift of the x-support by -(b4 t^2) at b4 = t = 1
        let c = [rat(-1, 1), rat(0, 1), rat(0, 1)];
        assert_eq!(q("x^2").translate(&c).unwrap(), q("x^2 - 2*x + 1"));
        let p = q("x^2*y - 3*z + 1/5");
        let c = [rat(1, 2), rat(-7, 3), rat(2, 1)];
        let back: Vec<_> = c.iter().map(|v| -v).collect();
        assert_eq!(p.translate(&c).unwrap().translate(&back).unwrap(), p);
    }

    #[test]
    fn specialization_examples() {
        let kt = UnivariatePolynomials::new(Rationals);
        let vars = Vars::xyz();
        // x*y*z + t*y^2*z - b4*t^2*y*z with b4 = 1
        let mut p = Polynomial::monomial(&kt, &vars, Monomial::new(&[1, 1, 1]));
        p.add_term(Monomial::new(&[0, 2, 1]), &kt.t());
        p.add_term(Monomial::new(&[0, 1, 1]), &kt.neg(&kt.monomial(rat(1, 1), 2)));
        assert_eq!(p.specialize_t(&rat(0, 1)), q("x*y*z"));

        let bvars = Vars::new(&["b1", "b2", "b3", "b4", "b5"]).unwrap();
        let disc = parse_polynomial("b3*b4^3 - b2*b4^2*b5 + b1*b4*b5^2 - b5^3", &Rationals, &bvars).unwrap();
        let values: Vec<_> = [rat(0, 1), rat(-1, 2), rat(0, 1), rat(1, 1), rat(1, 1)].to_vec();
        assert_eq!(disc.evaluate(&values).unwrap(), rat(-1, 2));

        let empty = Vars::new::<&str>(&[]).unwrap();
        let mut assignment = BTreeMap::new();
        for (name, v) in bvars.names().iter().zip(values) {
            assignment.insert(name.clone(), v);
        }
        let constant = disc.specialize(&assignment, &empty).unwrap();
        assert_eq!(constant.coeff(&Monomial::one()), rat(-1, 2));
        assignment.remove("b5");
        assert_eq!(disc.specialize(&assignment, &empty), Err(Error::UnassignedParameter("b5".into())));
    }
}

/// Polynomials over a field used as a coefficient ring, for computing with
/// symbolic parameters. Only nonzero constants are units.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialRing<K> {
    base: K,
    vars: Vars,
}

impl<K: Field> PolynomialRing<K> {
    pub fn new(base: K, vars: Vars) -> Self {
        PolynomialRing { base, vars }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var(&self, i: usize) -> Polynomial<K> {
        Polynomial::var(&self.base, &self.vars, i)
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial<K>> {
        parse_polynomial(s, &self.base, &self.vars)
    }
}

impl<K: Field> Ring for PolynomialRing<K> {
    type Elem = Polynomial<K>;

    fn zero(&self) -> Self::Elem {
        Polynomial::zero(&self.base, &self.vars)
    }
    fn one(&self) -> Self::Elem {
        Polynomial::one(&self.base, &self.vars)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Polynomial::neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() != 1 || a.total_degree() != Some(0) {
            return None;
        }
        let c = self.base.inv(&a.coeff(&Monomial::one()))?;
        Some(Polynomial::constant(&self.base, &self.vars, c))
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|c| Polynomial::constant(&self.base, &self.vars, c))
    }
    fn name(&self) -> String {
        format!("{}[{}]", self.base.name(), self.vars.names().join(","))
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        if a.len() <= 1 && a.total_degree().unwrap_or(0) == 0 {
            self.base.format_elem(&a.coeff(&Monomial::one()))
        } else {
            format!("({a})")
        }
    }
}
