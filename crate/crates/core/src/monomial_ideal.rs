//! Order ideals, monomial ideals and Pommaret bases.
//!
//! The Pommaret cone of `x^a != 1` is `x^a` times all monomials in the
//! variables that are not larger than `min x^a`. With variables ranked by
//! index (index 0 largest), the multipliers of `x^a` are the variables with
//! index `>= min_var(x^a)`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A finite set of monomials closed under division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    nvars: usize,
    monomials: BTreeSet<Monomial>,
}

pub fn is_order_ideal(set: &BTreeSet<Monomial>) -> bool {
    set.iter().all(|m| {
        (0..crate::monomial::MAX_VARS)
            .filter_map(|i| m.div_var(i))
            .all(|d| set.contains(&d))
    })
}

impl OrderIdeal {
    pub fn new<I: IntoIterator<Item = Monomial>>(nvars: usize, monomials: I) -> Result<Self> {
        let monomials: BTreeSet<Monomial> = monomials.into_iter().collect();
        if let Some(m) = monomials.iter().find(|m| m.support_len() > nvars) {
            return Err(Error::InvalidOrderIdeal(format!("{m:?} uses more than {nvars} variables")));
        }
        if !is_order_ideal(&monomials) {
            return Err(Error::InvalidOrderIdeal("not closed under division".into()));
        }
        Ok(OrderIdeal { nvars, monomials })
    }

    pub fn from_exponents(nvars: usize, exps: &[Vec<u32>]) -> Result<Self> {
        let ms = exps.iter().map(|e| Monomial::from_exponents(e)).collect::<Result<Vec<_>>>()?;
        Self::new(nvars, ms)
    }

    /// All monomials of degree below `d`.
    pub fn below_degree(nvars: usize, d: u32) -> Self {
        let mut out = BTreeSet::new();
        let mut frontier = vec![Monomial::one()];
        while let Some(m) = frontier.pop() {
            if m.degree() >= d || !out.insert(m) {
                continue;
            }
            for i in 0..nvars {
                frontier.push(m.mul_var(i));
            }
        }
        OrderIdeal { nvars, monomials: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Members in increasing degrevlex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.degree()).max()
    }

    /// Exponent vectors by increasing degree, larger monomials first within a
    /// degree: the serialized form.
    pub fn to_exponents(&self) -> Vec<Vec<u32>> {
        let mut v: Vec<&Monomial> = self.monomials.iter().collect();
        v.sort_by(|a, b| a.degree().cmp(&b.degree()).then(b.cmp(a)));
        v.into_iter().map(|m| m.exponents(self.nvars)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_exponents()).expect("serializable")
    }

    pub fn from_json(nvars: usize, s: &str) -> Result<Self> {
        let v: Vec<Vec<u32>> =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if v.iter().any(|e| e.len() != nvars) {
            return Err(Error::InvalidOrderIdeal("exponent vector of wrong length".into()));
        }
        Self::from_exponents(nvars, &v)
    }
}

impl Serialize for OrderIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_exponents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderIdeal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vec<u32>>::deserialize(d)?;
        let nvars = v.first().map_or(0, |e| e.len());
        if v.iter().any(|e| e.len() != nvars) {
            return Err(serde::de::Error::custom("exponent vectors of different lengths"));
        }
        OrderIdeal::from_exponents(nvars, &v).map_err(serde::de::Error::custom)
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal and discards non-minimal generators.
    pub fn new<I: IntoIterator<Item = Monomial>>(nvars: usize, gens: I) -> Self {
        let all: BTreeSet<Monomial> = gens.into_iter().collect();
        let gens = all
            .iter()
            .filter(|m| !all.iter().any(|d| d != *m && d.divides(m)))
            .copied()
            .collect();
        MonomialIdeal { nvars, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Minimal generators in increasing degrevlex order.
    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.gens.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when every variable has a pure power among the generators.
    pub fn has_finite_colength(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g.exp(i) > 0 && (0..self.nvars).all(|j| j == i || g.exp(j) == 0))
        }) || self.gens.iter().any(|g| g.is_one())
    }

    /// The order ideal of monomials outside the ideal.
    pub fn standard_monomials(&self) -> Result<OrderIdeal> {
        if !self.has_finite_colength() {
            return Err(Error::InfiniteColength);
        }
        let mut out = BTreeSet::new();
        let mut frontier = vec![Monomial::one()];
        while let Some(m) = frontier.pop() {
            if self.contains(&m) || !out.insert(m) {
                continue;
            }
            for i in 0..self.nvars {
                frontier.push(m.mul_var(i));
            }
        }
        Ok(OrderIdeal { nvars: self.nvars, monomials: out })
    }

    pub fn colength(&self) -> Result<usize> {
        self.standard_monomials().map(|n| n.len())
    }

    /// Number of monomials of degree `d` in the ideal, by direct enumeration.
    pub fn count_in_degree(&self, d: u32) -> usize {
        monomials_of_degree(self.nvars, d).iter().filter(|m| self.contains(m)).count()
    }
}

/// All monomials of total degree `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(Monomial::new(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, nvars, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = vec![0; nvars];
    rec(0, nvars, d, &mut cur, &mut out);
    out
}

/// The monomial ideal `J_N` generated by the monomials outside `N`.
pub fn complement_ideal(n: &OrderIdeal) -> MonomialIdeal {
    if n.is_empty() {
        return MonomialIdeal::new(n.nvars, [Monomial::one()]);
    }
    let mut gens = BTreeSet::new();
    for m in n.iter() {
        for i in 0..n.nvars {
            let c = m.mul_var(i);
            if n.contains(&c) {
                continue;
            }
            let minimal = (0..n.nvars).filter_map(|j| c.div_var(j)).all(|d| n.contains(&d));
            if minimal {
                gens.insert(c);
            }
        }
    }
    MonomialIdeal { nvars: n.nvars, gens: gens.into_iter().collect() }
}

/// The Pommaret cone of a monomial: the generator and its multiplier
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PommaretCone {
    pub generator: Monomial,
    pub multipliers: Vec<usize>,
}

impl PommaretCone {
    pub fn contains(&self, m: &Monomial) -> bool {
        match m.div(&self.generator) {
            None => false,
            Some(q) => (0..crate::monomial::MAX_VARS)
                .all(|i| q.exp(i) == 0 || self.multipliers.contains(&i)),
        }
    }
}

pub fn pommaret_cone(m: &Monomial, nvars: usize) -> Result<PommaretCone> {
    let min = m.min_var().ok_or(Error::ConeOfOne)?;
    Ok(PommaretCone { generator: *m, multipliers: (min..nvars).collect() })
}

/// True when `u` lies in the Pommaret cone of `g`.
#[inline]
pub fn in_cone(g: &Monomial, u: &Monomial) -> bool {
    match (u.div(g), g.min_var()) {
        (Some(q), Some(min)) => q.max_var().is_none_or(|mx| mx >= min),
        _ => false,
    }
}

/// A Pommaret basis of a quasi-stable monomial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PommaretBasis {
    nvars: usize,
    generators: Vec<Monomial>,
    parent: MonomialIdeal,
}

impl PommaretBasis {
    /// Generators in increasing degrevlex order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn parent(&self) -> &MonomialIdeal {
        &self.parent
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cones(&self) -> Vec<PommaretCone> {
        self.generators
            .iter()
            .map(|g| pommaret_cone(g, self.nvars).expect("generators differ from 1"))
            .collect()
    }

    /// The generator whose cone contains `m`, if any.
    pub fn involutive_divisor(&self, m: &Monomial) -> Option<&Monomial> {
        self.generators.iter().find(|g| in_cone(g, m))
    }

    /// Checks that the cones are pairwise disjoint and cover exactly the
    /// monomials of the parent ideal in every degree up to `bound`.
    pub fn verify_partition(&self, bound: u32) -> bool {
        (0..=bound).all(|d| {
            monomials_of_degree(self.nvars, d).iter().all(|m| {
                let hits = self.generators.iter().filter(|g| in_cone(g, m)).count();
                hits == usize::from(self.parent.contains(m))
            })
        })
    }

    /// Number of degree-`d` monomials of the ideal counted through the cone
    /// decomposition: the cone of `g` contributes the monomials of degree
    /// `d - deg g` in its multiplier variables.
    pub fn count_in_degree(&self, d: u32) -> usize {
        self.generators
            .iter()
            .filter(|g| g.degree() <= d)
            .map(|g| {
                let k = (self.nvars - g.min_var().unwrap()) as u64;
                binomial(d as u64 - g.degree() as u64 + k - 1, k - 1) as usize
            })
            .sum()
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Involutive completion: starting from the minimal generators, adds the
/// products `x_i * g` by non-multiplicative variables that no cone covers,
/// dropping generators that fall into another cone, until closed. Fails once a
/// candidate exceeds `bound`.
fn complete(ideal: &MonomialIdeal, bound: u32) -> Result<Vec<Monomial>> {
    let nvars = ideal.nvars;
    let mut basis: BTreeSet<Monomial> = ideal.gens.iter().copied().collect();
    loop {
        // autoreduce
        let snapshot: Vec<Monomial> = basis.iter().copied().collect();
        basis.retain(|m| !snapshot.iter().any(|g| g != m && in_cone(g, m)));
        let candidate = basis
            .iter()
            .flat_map(|g| {
                let min = g.min_var().unwrap_or(nvars);
                (0..min.min(nvars)).map(move |i| g.mul_var(i))
            })
            .filter(|c| !basis.iter().any(|g| in_cone(g, c)))
            .min();
        match candidate {
            None => return Ok(basis.into_iter().collect()),
            Some(c) if c.degree() > bound => return Err(Error::NotQuasiStable(bound)),
            Some(c) => {
                basis.insert(c);
            }
        }
    }
}

/// Pommaret basis of a monomial ideal of finite colength.
///
/// The completion is run with the degree bound `max deg N + 1`, where `N` is
/// the complementary order ideal; every element of a Pommaret basis of such an
/// ideal divided by its minimal variable lies in `N`.
pub fn pommaret_basis(ideal: &MonomialIdeal) -> Result<PommaretBasis> {
    let n = ideal.standard_monomials()?;
    let bound = n.max_degree().map_or(1, |d| d + 1).max(ideal.max_generator_degree());
    let generators = complete(ideal, bound)?;
    Ok(PommaretBasis { nvars: ideal.nvars, generators, parent: ideal.clone() })
}

/// Pommaret basis read off directly from the order ideal: the monomials
/// `x_j * n` with `n` in `N`, `x_j <= min n`, lying outside `N`.
pub fn pommaret_basis_from_order_ideal(n: &OrderIdeal) -> PommaretBasis {
    let mut gens = BTreeSet::new();
    for m in n.iter() {
        let min = m.min_var().unwrap_or(0);
        for j in min..n.nvars {
            let c = m.mul_var(j);
            if !n.contains(&c) {
                gens.insert(c);
            }
        }
    }
    PommaretBasis {
        nvars: n.nvars,
        generators: gens.into_iter().collect(),
        parent: complement_ideal(n),
    }
}

/// Decides quasi-stability by bounded completion. For ideals of finite
/// colength the bound is exact; otherwise completion is cut off at the maximal
/// generator degree plus the number of variables.
pub fn is_quasi_stable(ideal: &MonomialIdeal) -> bool {
    if ideal.has_finite_colength() {
        return pommaret_basis(ideal).is_ok();
    }
    complete(ideal, ideal.max_generator_degree() + ideal.nvars as u32).is_ok()
}

/// Pommaret basis of `J_N` together with fast membership data, shared by
/// marked sets.
#[derive(Clone, Debug)]
pub struct Staircase {
    pub order_ideal: OrderIdeal,
    pub basis: PommaretBasis,
    basis_monomials: Vec<Monomial>,
    members: HashMap<Monomial, usize>,
    heads: HashMap<Monomial, usize>,
}

impl Staircase {
    pub fn new(order_ideal: OrderIdeal) -> Result<Self> {
        if order_ideal.is_empty() {
            return Err(Error::InvalidOrderIdeal("empty order ideal".into()));
        }
        let basis = pommaret_basis(&complement_ideal(&order_ideal))?;
        let basis_monomials: Vec<Monomial> = order_ideal.iter().copied().collect();
        let members = basis_monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let heads = basis.generators.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Ok(Staircase { order_ideal, basis, basis_monomials, members, heads })
    }

    pub fn nvars(&self) -> usize {
        self.order_ideal.nvars
    }

    #[inline]
    pub fn in_order_ideal(&self, m: &Monomial) -> bool {
        self.members.contains_key(m)
    }

    /// Position of `m` in the increasing degrevlex listing of the order ideal.
    #[inline]
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.members.get(m).copied()
    }

    /// The order ideal as a list, increasing in degrevlex.
    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis_monomials
    }

    pub fn heads(&self) -> &[Monomial] {
        self.basis.generators()
    }

    pub fn colength(&self) -> usize {
        self.basis_monomials.len()
    }

    pub fn head_index(&self, m: &Monomial) -> Option<usize> {
        self.heads.get(m).copied()
    }

    /// Index of the Pommaret generator whose cone contains `m` (which must lie
    /// outside the order ideal), found by stripping minimal variables.
    pub fn cone_of(&self, m: &Monomial) -> Option<usize> {
        if self.in_order_ideal(m) {
            return None;
        }
        let mut cur = *m;
        loop {
            let min = cur.min_var()?;
            let q = cur.div_var(min).expect("min variable divides");
            if self.in_order_ideal(&q) {
                return self.head_index(&cur);
            }
            cur = q;
        }
    }
}
