//! JSON description of an ideal: variables, characteristic, generators,
//! an optional order ideal and named rational parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marked::MarkedSet;
use crate::monomial::Monomial;
use crate::monomial_ideal::OrderIdeal;
use crate::poly::{parse_polynomial, Polynomial, Vars};
use crate::ring::{is_prime, parse_rational, Field, Rationals};
use crate::sampling::{marked_basis_from_generators, marked_basis_on};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    /// Largest variable first.
    pub variables: Vec<String>,
    #[serde(default)]
    pub characteristic: u64,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_ideal: Option<Vec<String>>,
    /// Rational values for symbols that are not variables.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

fn bad_input(input: &str, message: String) -> Error {
    Error::Parse { input: input.to_string(), position: 0, message }
}

/// Replaces every identifier that names a parameter by its parenthesized value.
fn substitute(s: &str, values: &BTreeMap<String, num_rational::BigRational>) -> String {
    let mut out = String::with_capacity(s.len());
    let mut ident = String::new();
    let flush = |ident: &mut String, out: &mut String| {
        match values.get(ident.as_str()) {
            Some(q) => out.push_str(&format!("({q})")),
            None => out.push_str(ident),
        }
        ident.clear();
    };
    for ch in s.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            if ident.is_empty() && ch.is_ascii_digit() {
                out.push(ch);
            } else {
                ident.push(ch);
            }
        } else {
            flush(&mut ident, &mut out);
            out.push(ch);
        }
    }
    flush(&mut ident, &mut out);
    out
}

impl IdealSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: IdealSpec = serde_json::from_str(s).map_err(|e| Error::Parse {
            input: "<json>".into(),
            position: e.column(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.characteristic != 0 && !is_prime(self.characteristic) {
            return Err(Error::InvalidPrime(self.characteristic));
        }
        if self.generators.is_empty() {
            return Err(bad_input("generators", "no generators".into()));
        }
        Vars::new(&self.variables)?;
        for name in self.params.keys() {
            if self.variables.contains(name) {
                return Err(bad_input(name, "parameter shadows a variable".into()));
            }
        }
        self.polynomials(&Rationals)?;
        self.order_ideal()?;
        Ok(())
    }

    pub fn vars(&self) -> Result<Vars> {
        Vars::new(&self.variables)
    }

    fn parse_rationals(&self) -> Result<BTreeMap<String, num_rational::BigRational>> {
        self.params.iter().map(|(k, v)| Ok((k.clone(), parse_rational(v)?))).collect()
    }

    /// Generators over `k`, with parameters substituted.
    pub fn polynomials<K: Field>(&self, k: &K) -> Result<Vec<Polynomial<K>>> {
        let vars = self.vars()?;
        let values = self.parse_rationals()?;
        for (n, q) in &values {
            if k.from_rational(q).is_none() {
                return Err(Error::NonUnitDivision(format!("parameter {n} = {q} in {}", k.name())));
            }
        }
        self.generators
            .iter()
            .map(|g| parse_polynomial(&substitute(g, &values), k, &vars))
            .collect()
    }

    pub fn order_ideal(&self) -> Result<Option<OrderIdeal>> {
        let Some(list) = &self.order_ideal else { return Ok(None) };
        let vars = self.vars()?;
        let monos = list
            .iter()
            .map(|s| {
                let p = parse_polynomial(s, &Rationals, &vars)?;
                match p.leading_term() {
                    Some((m, c)) if p.len() == 1 && *c == num_rational::BigRational::from_integer(1.into()) => Ok(*m),
                    _ => Err(bad_input(s, "not a monomial".into())),
                }
            })
            .collect::<Result<Vec<Monomial>>>()?;
        OrderIdeal::new(vars.len(), monos).map(Some)
    }

    /// The marked basis of the ideal: on the given order ideal if there is
    /// one, else on the degrevlex standard monomials.
    pub fn marked_basis<K: Field>(&self, k: &K) -> Result<MarkedSet<K>> {
        let gens = self.polynomials(k)?;
        match self.order_ideal()? {
            None => marked_basis_from_generators(&gens),
            Some(n) => marked_basis_on(&gens, &n)?
                .ok_or_else(|| Error::NotABasis("the order ideal is not a basis of the quotient".into())),
        }
    }
}
