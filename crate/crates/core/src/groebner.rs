//! A plain Buchberger implementation used as an independent oracle.
//!
//! Pairs are processed by the normal strategy (smallest lcm first) with
//! Buchberger's coprime and chain criteria. Intermediate polynomials are kept
//! monic.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, TermOrder};
use crate::monomial_ideal::{MonomialIdeal, OrderIdeal};
use crate::poly::{Polynomial, Vars};
use crate::ring::Field;

type Terms<E> = Vec<(Monomial, E)>;

/// Terms of `p` sorted decreasingly for `order`.
fn sorted_terms<K: Field>(p: &Polynomial<K>, order: TermOrder) -> Terms<K::Elem> {
    let mut t: Terms<K::Elem> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// `a - c * m * b` for sorted term lists.
fn sub_scaled<K: Field>(
    k: &K,
    order: TermOrder,
    a: &[(Monomial, K::Elem)],
    c: &K::Elem,
    m: &Monomial,
    b: &[(Monomial, K::Elem)],
) -> Terms<K::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bm = b.get(j).map(|(bm, _)| bm.mul(m));
        let ord = match (a.get(i), &bm) {
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some((am, _)), Some(bm)) => order.cmp(am, bm),
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.unwrap(), k.neg(&k.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = k.sub(&a[i].1, &k.mul(c, &b[j].1));
                if !k.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic<K: Field>(k: &K, t: &mut Terms<K::Elem>) {
    if let Some((_, lc)) = t.first() {
        if !k.is_one(lc) {
            let inv = k.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in t.iter_mut() {
                *c = k.mul(c, &inv);
            }
        }
    }
}

/// Full reduction of `p` by monic polynomials `basis`.
fn reduce_terms<K: Field>(
    k: &K,
    order: TermOrder,
    mut p: Terms<K::Elem>,
    basis: &[Terms<K::Elem>],
) -> Terms<K::Elem> {
    let mut rem = Vec::new();
    while let Some((m, c)) = p.first().cloned() {
        match basis.iter().find(|g| g[0].0.divides(&m)) {
            Some(g) => {
                let q = m.div(&g[0].0).unwrap();
                p = sub_scaled(k, order, &p, &c, &q, g);
            }
            None => {
                rem.push((m, c));
                p.remove(0);
            }
        }
    }
    rem
}

fn to_polynomial<K: Field>(k: &K, vars: &Vars, t: &Terms<K::Elem>) -> Polynomial<K> {
    Polynomial::from_terms(k, vars, t.iter().cloned())
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    field: K,
    vars: Vars,
    order: TermOrder,
    basis: Vec<Terms<K::Elem>>,
}

/// Colength of an ideal: finite or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Colength {
    Finite(usize),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<usize> {
        match self {
            Colength::Finite(d) => Some(d),
            Colength::Infinite => None,
        }
    }
}

pub fn buchberger<K: Field>(field: &K, vars: &Vars, gens: &[Polynomial<K>], order: TermOrder) -> Result<GroebnerBasis<K>> {
    for g in gens {
        if g.vars() != vars {
            return Err(Error::AmbientMismatch("generator in another ring".into()));
        }
    }
    let k = field;
    let mut g: Vec<Terms<K::Elem>> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let add = |g: &mut Vec<Terms<K::Elem>>, pairs: &mut BTreeSet<(usize, usize)>, mut p: Terms<K::Elem>| {
        make_monic(k, &mut p);
        let n = g.len();
        for i in 0..n {
            pairs.insert((i, n));
        }
        g.push(p);
    };

    for p in gens {
        let t = reduce_terms(k, order, sorted_terms(p, order), &g);
        if !t.is_empty() {
            add(&mut g, &mut pairs, t);
        }
    }

    loop {
        // normal strategy: smallest lcm, ties broken by indices
        let next = pairs
            .iter()
            .min_by(|a, b| {
                let la = g[a.0][0].0.lcm(&g[a.1][0].0);
                let lb = g[b.0][0].0.lcm(&g[b.1][0].0);
                order.cmp(&la, &lb).then(a.cmp(b))
            })
            .copied();
        let Some((i, j)) = next else { break };
        pairs.remove(&(i, j));
        done.insert((i, j));
        let (li, lj) = (g[i][0].0, g[j][0].0);
        if li.is_coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && g[k][0].0.divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let one = k.one();
        let si = sub_scaled(k, order, &[], &k.neg(&one), &lcm.div(&li).unwrap(), &g[i]);
        let s = sub_scaled(k, order, &si, &one, &lcm.div(&lj).unwrap(), &g[j]);
        let r = reduce_terms(k, order, s, &g);
        if !r.is_empty() {
            add(&mut g, &mut pairs, r);
        }
    }

    // minimalize and interreduce
    let mut lead: Vec<(usize, Monomial)> = g.iter().enumerate().map(|(i, p)| (i, p[0].0)).collect();
    lead.sort_by(|a, b| order.cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
    let mut keep: Vec<Terms<K::Elem>> = Vec::new();
    for (i, m) in &lead {
        if !keep.iter().any(|p| p[0].0.divides(m)) {
            keep.push(g[*i].clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for idx in 0..keep.len() {
        let others: Vec<Terms<K::Elem>> =
            keep.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, p)| p.clone()).collect();
        let head = keep[idx][0].clone();
        let mut tail = reduce_terms(k, order, keep[idx][1..].to_vec(), &others);
        tail.insert(0, head);
        reduced.push(tail);
    }
    Ok(GroebnerBasis { field: field.clone(), vars: vars.clone(), order, basis: reduced })
}

impl<K: Field> GroebnerBasis<K> {
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Reduced basis, sorted by increasing leading monomial.
    pub fn generators(&self) -> Vec<Polynomial<K>> {
        self.basis.iter().map(|t| to_polynomial(&self.field, &self.vars, t)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|t| t[0].0).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|t| t[0].0.is_one())
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.vars.len(), self.leading_monomials())
    }

    pub fn normal_form(&self, p: &Polynomial<K>) -> Polynomial<K> {
        let t = reduce_terms(&self.field, self.order, sorted_terms(p, self.order), &self.basis);
        to_polynomial(&self.field, &self.vars, &t)
    }

    pub fn contains(&self, p: &Polynomial<K>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn standard_monomials(&self) -> Result<OrderIdeal> {
        if self.is_unit_ideal() {
            return OrderIdeal::new(self.vars.len(), []);
        }
        self.initial_ideal().standard_monomials()
    }

    pub fn colength(&self) -> Colength {
        if self.is_unit_ideal() {
            return Colength::Finite(0);
        }
        match self.initial_ideal().colength() {
            Ok(d) => Colength::Finite(d),
            Err(_) => Colength::Infinite,
        }
    }
}

fn ambient<K: Field>(gens: &[Polynomial<K>]) -> Result<(K, Vars)> {
    gens.first()
        .map(|g| (g.ring().clone(), g.vars().clone()))
        .ok_or_else(|| Error::InvalidInput("empty generator list".into()))
}

pub fn degrevlex_basis<K: Field>(gens: &[Polynomial<K>]) -> Result<GroebnerBasis<K>> {
    let (k, vars) = ambient(gens)?;
    buchberger(&k, &vars, gens, TermOrder::DegRevLex)
}

pub fn oracle_colength<K: Field>(gens: &[Polynomial<K>]) -> Result<Colength> {
    Ok(degrevlex_basis(gens)?.colength())
}

pub fn membership<K: Field>(g: &Polynomial<K>, gens: &[Polynomial<K>]) -> Result<bool> {
    if gens.is_empty() {
        return Ok(g.is_zero());
    }
    Ok(degrevlex_basis(gens)?.contains(g))
}

pub fn ideal_equal<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>]) -> Result<bool> {
    let (ga, gb) = (degrevlex_basis(a)?, degrevlex_basis(b)?);
    Ok(b.iter().all(|p| ga.contains(p)) && a.iter().all(|p| gb.contains(p)))
}

/// Generators of `(a) ∩ (b)` by eliminating `s` from `s*a + (1 - s)*b`.
pub fn intersect<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
    let (k, vars) = ambient(a)?;
    let ext = vars.prepend("_s")?;
    let s = Polynomial::var(&k, &ext, 0);
    let one_minus_s = &Polynomial::one(&k, &ext) - &s;
    let mut gens = Vec::new();
    for p in a {
        gens.push(&s * &p.with_vars(&ext, 1)?);
    }
    for p in b {
        gens.push(&one_minus_s * &p.with_vars(&ext, 1)?);
    }
    let gb = buchberger(&k, &ext, &gens, TermOrder::Elimination { block: 1 })?;
    gb.generators()
        .into_iter()
        .filter(|p| p.support().all(|m| m.exp(0) == 0))
        .map(|p| {
            Ok(Polynomial::from_terms(&k, &vars, p.terms().map(|(m, c)| (m.unshifted(1), c.clone()))))
        })
        .collect()
}

pub fn intersect_all<K: Field>(ideals: &[Vec<Polynomial<K>>]) -> Result<Vec<Polynomial<K>>> {
    let mut it = ideals.iter();
    let mut acc = it.next().ok_or_else(|| Error::InvalidInput("no ideals".into()))?.clone();
    for next in it {
        acc = intersect(&acc, next)?;
    }
    Ok(acc)
}

/// Generators of the maximal ideal of a point.
pub fn point_ideal<K: Field>(k: &K, vars: &Vars, point: &[K::Elem]) -> Vec<Polynomial<K>> {
    point
        .iter()
        .enumerate()
        .map(|(i, c)| &Polynomial::var(k, vars, i) - &Polynomial::constant(k, vars, c.clone()))
        .collect()
}

/// True when the zero-dimensional ideal is a fat point at `point`: it is a
/// proper ideal, and after translating `point` to the origin it has the same
/// colength and contains every monomial of degree `bound`.
pub fn support_check<K: Field>(gens: &[Polynomial<K>], point: &[K::Elem], bound: u32) -> Result<bool> {
    let (k, vars) = ambient(gens)?;
    if point.len() != vars.len() {
        return Err(Error::AmbientMismatch("point has the wrong dimension".into()));
    }
    let d = match oracle_colength(gens)? {
        Colength::Infinite => return Err(Error::NotZeroDimensional),
        Colength::Finite(0) => return Ok(false),
        Colength::Finite(d) => d,
    };
    let moved = gens.iter().map(|g| g.translate(point)).collect::<Result<Vec<_>>>()?;
    let gb = degrevlex_basis(&moved)?;
    if gb.colength() != Colength::Finite(d) {
        return Ok(false);
    }
    Ok(crate::monomial_ideal::monomials_of_degree(vars.len(), bound)
        .into_iter()
        .all(|m| gb.contains(&Polynomial::monomial(&k, &vars, m))))
}
