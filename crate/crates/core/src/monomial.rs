//! Exponent vectors and term orders.
//!
//! Variables are ranked by position: index 0 is the largest variable. In
//! `QQ[x,y,z]` this gives `x > y > z`. The *minimum* of a monomial is the
//! smallest variable dividing it, i.e. the one with the largest index.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 8;

/// A monomial `x^a` stored as a fixed-size exponent array. Unused slots are
/// zero, so comparisons need no knowledge of the ambient variable count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len()));
        }
        let mut m = Monomial::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e)
                .map_err(|_| Error::InvalidInput(format!("exponent {e} too large")))?;
        }
        Ok(m)
    }

    /// Panicking constructor for literals in tests and hard-coded families.
    pub fn new(exps: &[u32]) -> Self {
        Self::from_exponents(exps).expect("valid exponent vector")
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Number of variables actually used (index of the last nonzero slot + 1).
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.exps[i] += 1;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        Some(m)
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].max(other.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Index of the smallest variable dividing the monomial (`None` for 1).
    pub fn min_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    /// Index of the largest variable dividing the monomial (`None` for 1).
    pub fn max_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e != 0)
    }

    /// Shift exponents right by `k` slots, used when prepending variables.
    pub fn shifted(&self, k: usize) -> Result<Monomial> {
        let mut m = Monomial::default();
        for i in 0..MAX_VARS {
            if self.exps[i] != 0 {
                if i + k >= MAX_VARS {
                    return Err(Error::TooManyVariables(i + k + 1));
                }
                m.exps[i + k] = self.exps[i];
            }
        }
        Ok(m)
    }

    /// Drop the first `k` slots (inverse of [`Monomial::shifted`]).
    pub fn unshifted(&self, k: usize) -> Monomial {
        let mut m = Monomial::default();
        m.exps[..MAX_VARS - k].copy_from_slice(&self.exps[k..]);
        m
    }

    /// Renders the monomial with the given variable names, `1` for the unit.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exps[i] {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

/// Degree reverse lexicographic order with `x_0 > x_1 > ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support_len().max(1);
        write!(f, "{:?}", &self.exps[..n])
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents(self.support_len()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Monomial::from_exponents(&v).map_err(serde::de::Error::custom)
    }
}

pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        if a.exps[i] != b.exps[i] {
            return b.exps[i].cmp(&a.exps[i]);
        }
    }
    Ordering::Equal
}

pub fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}

/// Monomial orders used by the Gröbner oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Block order eliminating the first `block` variables: compare the total
    /// degree in the block first, then degrevlex within the block, then
    /// degrevlex on the remaining variables.
    Elimination { block: usize },
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Lex => lex(a, b),
            TermOrder::DegRevLex => degrevlex(a, b),
            TermOrder::Elimination { block } => {
                let (mut ha, mut hb) = (Monomial::one(), Monomial::one());
                let (mut ta, mut tb) = (*a, *b);
                for i in 0..block.min(MAX_VARS) {
                    ha.exps[i] = a.exps[i];
                    hb.exps[i] = b.exps[i];
                    ta.exps[i] = 0;
                    tb.exps[i] = 0;
                }
                degrevlex(&ha, &hb).then_with(|| degrevlex(&ta, &tb))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn degrevlex_basics() {
        // x > y > z, and x*z < y^2 in degrevlex
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[1, 1, 0]) > m(&[0, 2, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        assert!(Monomial::one() < m(&[0, 0, 1]));
    }

    #[test]
    fn min_and_max_variables() {
        let a = m(&[1, 2, 0]);
        assert_eq!(a.min_var(), Some(1));
        assert_eq!(a.max_var(), Some(0));
        assert_eq!(Monomial::one().min_var(), None);
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let ord = TermOrder::Elimination { block: 1 };
        // t * z  >  x^5 since t is eliminated
        assert_eq!(ord.cmp(&m(&[1, 0, 0, 1]), &m(&[0, 5, 0, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 2, 0, 0]), &m(&[0, 1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn shifting_round_trips() {
        let a = m(&[1, 2, 3]);
        assert_eq!(a.shifted(1).unwrap().unshifted(1), a);
        assert_eq!(a.shifted(1).unwrap().exp(0), 0);
    }

    #[test]
    fn display() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(m(&[2, 0, 1]).display_with(&names), "x^2*z");
        assert_eq!(Monomial::one().display_with(&names), "1");
    }
}
