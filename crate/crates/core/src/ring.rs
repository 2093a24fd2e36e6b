//! Exact coefficient rings.
//!
//! A closed family of four rings covers every computation in the crate: the
//! rationals, prime fields, dual numbers `k[e]/(e^2)` and the univariate
//! polynomial ring `k[t]` over a field `k`. Rings are small value objects that
//! carry whatever runtime data they need (the modulus of a prime field, the base
//! field of an extension) and act on plain element values.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring with identity and exact arithmetic.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Inverse of `a` when `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Image of a rational number, if its denominator is invertible.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    /// Short human readable ring name such as `QQ` or `GF(2)[e]`.
    fn name(&self) -> String;

    /// Coefficient as printed inside a polynomial. Atomic values may start with
    /// `-`; compound values are parenthesised.
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every ring")
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// A ring in which every nonzero element is a unit.
pub trait Field: Ring {
    fn characteristic(&self) -> u64;

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.unit_inverse(a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn add_assign(&self, a: &mut BigRational, b: &BigRational) {
        *a += b;
    }
}

impl Field for Rationals {
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Parses `"3"`, `"-1/2"` and the like.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        input: s.to_string(),
        position: 0,
        message: "not a rational number".to_string(),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Shorthand used throughout tests and constructors.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

// ---------------------------------------------------------------------------
// Prime fields

/// The prime field `F_p` for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

pub const MAX_PRIME: u64 = 1 << 62;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }

    /// Symmetric representative in `(-p/2, p/2]`, handy for printing small negatives.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        self.unit_inverse(&den).map(|di| self.mul(&num, &di))
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn characteristic(&self) -> u64 {
        self.p
    }
}

// ---------------------------------------------------------------------------
// Dual numbers

/// An element `re + eps * e` of `k[e]/(e^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualNumber<E> {
    pub re: E,
    pub eps: E,
}

/// Dual numbers `k[e]/(e^2)` over a field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualNumbers<K> {
    base: K,
}

impl<K: Field> DualNumbers<K> {
    pub fn new(base: K) -> Self {
        DualNumbers { base }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn embed(&self, a: K::Elem) -> DualNumber<K::Elem> {
        DualNumber { re: a, eps: self.base.zero() }
    }

    pub fn pure_eps(&self, a: K::Elem) -> DualNumber<K::Elem> {
        DualNumber { re: self.base.zero(), eps: a }
    }

    pub fn make(&self, re: K::Elem, eps: K::Elem) -> DualNumber<K::Elem> {
        DualNumber { re, eps }
    }
}

impl<K: Field> Ring for DualNumbers<K> {
    type Elem = DualNumber<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.embed(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.eps)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        DualNumber { re: self.base.add(&a.re, &b.re), eps: self.base.add(&a.eps, &b.eps) }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        DualNumber { re: self.base.sub(&a.re, &b.re), eps: self.base.sub(&a.eps, &b.eps) }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        DualNumber { re: self.base.neg(&a.re), eps: self.base.neg(&a.eps) }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let re = self.base.mul(&a.re, &b.re);
        let eps = self.base.add(&self.base.mul(&a.re, &b.eps), &self.base.mul(&a.eps, &b.re));
        DualNumber { re, eps }
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // (a + b e)^-1 = a^-1 - b a^-2 e
        let ai = self.base.inv(&a.re)?;
        let eps = self.base.neg(&self.base.mul(&a.eps, &self.base.mul(&ai, &ai)));
        Some(DualNumber { re: ai, eps })
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|a| self.embed(a))
    }
    fn name(&self) -> String {
        format!("{}[e]", self.base.name())
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        match (self.base.is_zero(&a.re), self.base.is_zero(&a.eps)) {
            (_, true) => self.base.format_elem(&a.re),
            (true, false) => format!("({}*e)", self.base.format_elem(&a.eps)),
            (false, false) => format!(
                "({} + {}*e)",
                self.base.format_elem(&a.re),
                self.base.format_elem(&a.eps)
            ),
        }
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials k[t]

/// The polynomial ring `k[t]` over a field. Elements are coefficient vectors,
/// lowest degree first, without trailing zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomials<K> {
    base: K,
}

impl<K: Field> UnivariatePolynomials<K> {
    pub fn new(base: K) -> Self {
        UnivariatePolynomials { base }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    fn trim(&self, mut v: Vec<K::Elem>) -> Vec<K::Elem> {
        while v.last().is_some_and(|c| self.base.is_zero(c)) {
            v.pop();
        }
        v
    }

    /// The element `c * t^k`.
    pub fn monomial(&self, c: K::Elem, k: usize) -> Vec<K::Elem> {
        let mut v = vec![self.base.zero(); k + 1];
        v[k] = c;
        self.trim(v)
    }

    pub fn t(&self) -> Vec<K::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn constant(&self, c: K::Elem) -> Vec<K::Elem> {
        self.trim(vec![c])
    }

    pub fn degree(&self, a: &[K::Elem]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    /// Evaluation at `t = value` (Horner).
    pub fn eval(&self, a: &[K::Elem], value: &K::Elem) -> K::Elem {
        let mut acc = self.base.zero();
        for c in a.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, value), c);
        }
        acc
    }
}

impl<K: Field> Ring for UnivariatePolynomials<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| self.base.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(v)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        let zero = self.base.zero();
        let v = (0..n)
            .map(|i| self.base.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect();
        self.trim(v)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|c| self.base.neg(c)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.base.zero(); a.len() + b.len() - 1];
        for (i, ai) in a.iter().enumerate() {
            if self.base.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let prod = self.base.mul(ai, bj);
                self.base.add_assign(&mut v[i + j], &prod);
            }
        }
        self.trim(v)
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.len() == 1 {
            self.base.inv(&a[0]).map(|c| vec![c])
        } else {
            None
        }
    }
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        self.base.from_rational(q).map(|c| self.constant(c))
    }
    fn name(&self) -> String {
        format!("{}[t]", self.base.name())
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let nonzero: Vec<(usize, &K::Elem)> =
            a.iter().enumerate().filter(|(_, c)| !self.base.is_zero(c)).collect();
        if nonzero.len() == 1 && nonzero[0].0 == 0 {
            return self.base.format_elem(nonzero[0].1);
        }
        if nonzero.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = nonzero
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => self.base.format_elem(c),
                1 => format!("{}*t", self.base.format_elem(c)),
                _ => format!("{}*t^{}", self.base.format_elem(c), k),
            })
            .collect();
        format!("({})", parts.join(" + "))
    }
}

/// Conversion from rationals to a prime field, failing when a denominator
/// vanishes modulo `p`.
pub fn rational_mod_p(field: &PrimeField, q: &BigRational) -> Result<u64> {
    field
        .from_rational(q)
        .ok_or_else(|| Error::NonUnitDivision(format!("denominator of {q} vanishes mod {}", field.modulus())))
}
