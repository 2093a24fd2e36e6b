//! Marked sets over a Pommaret basis, reduction and the marked basis
//! criterion.
//!
//! A marked polynomial is `f = x^a + tail` with `x^a` in the Pommaret basis of
//! `J_N` and `tail` supported on `N`. Reduction replaces a term `c x^b x^a`
//! with `x^b x^a` in the cone of `x^a` by `-c x^b tail`. Heads are monic, so
//! reduction never divides and works over any coefficient ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::monomial_ideal::{OrderIdeal, Staircase};
use crate::poly::{Polynomial, Vars};
use crate::ring::Ring;

/// Which reducible term to rewrite next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The largest reducible term in degrevlex.
    Largest,
    /// A uniformly random reducible term, from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct MarkedSet<R: Ring> {
    ring: R,
    vars: Vars,
    stair: Arc<Staircase>,
    tails: Vec<Polynomial<R>>,
}

/// A failing criterion pair: `x_var * f_head` has a nonzero normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct CriterionWitness<R: Ring> {
    pub var: usize,
    pub head: Monomial,
    pub normal_form: Polynomial<R>,
}

/// Result of reducing a polynomial, with the multipliers used for each head:
/// `g = sum_a quotients[a] * f_a + remainder`.
#[derive(Clone, Debug)]
pub struct Trace<R: Ring> {
    pub remainder: Polynomial<R>,
    pub quotients: Vec<Polynomial<R>>,
}

impl<R: Ring> MarkedSet<R> {
    /// Builds a marked set from an order ideal and a tail for every Pommaret
    /// head. Heads that are not given get a zero tail only if `tails` is empty.
    pub fn new(
        ring: &R,
        vars: &Vars,
        order_ideal: OrderIdeal,
        tails: BTreeMap<Monomial, Polynomial<R>>,
    ) -> Result<Self> {
        if order_ideal.nvars() != vars.len() {
            return Err(Error::AmbientMismatch(format!(
                "order ideal in {} variables, ring in {}",
                order_ideal.nvars(),
                vars.len()
            )));
        }
        let stair = Arc::new(Staircase::new(order_ideal)?);
        let heads = stair.heads();
        if tails.is_empty() {
            let zero = vec![Polynomial::zero(ring, vars); heads.len()];
            return Self::from_parts(ring, vars, stair, zero);
        }
        if let Some(extra) = tails.keys().find(|m| stair.head_index(m).is_none()) {
            return Err(Error::HeadMismatch(format!(
                "{} is not a Pommaret generator",
                extra.display_with(vars.names())
            )));
        }
        let mut ordered = Vec::with_capacity(heads.len());
        for h in heads {
            match tails.get(h) {
                Some(t) => ordered.push(t.clone()),
                None => {
                    return Err(Error::HeadMismatch(format!(
                        "no polynomial with head {}",
                        h.display_with(vars.names())
                    )))
                }
            }
        }
        Self::from_parts(ring, vars, stair, ordered)
    }

    /// Tails indexed like `stair.heads()`.
    pub fn from_parts(
        ring: &R,
        vars: &Vars,
        stair: Arc<Staircase>,
        tails: Vec<Polynomial<R>>,
    ) -> Result<Self> {
        if tails.len() != stair.heads().len() {
            return Err(Error::HeadMismatch(format!(
                "{} tails for {} heads",
                tails.len(),
                stair.heads().len()
            )));
        }
        for (h, t) in stair.heads().iter().zip(&tails) {
            if t.vars() != vars || t.ring() != ring {
                return Err(Error::AmbientMismatch("tail in another ring".into()));
            }
            if let Some(bad) = t.support().find(|m| !stair.in_order_ideal(m)) {
                return Err(Error::TailOutsideN {
                    head: h.display_with(vars.names()),
                    term: bad.display_with(vars.names()),
                });
            }
        }
        Ok(MarkedSet { ring: ring.clone(), vars: vars.clone(), stair, tails })
    }

    /// Reads marked polynomials `head + tail`: each polynomial must have
    /// exactly one term outside `N`, with coefficient 1.
    pub fn from_polynomials(ring: &R, vars: &Vars, order_ideal: OrderIdeal, polys: &[Polynomial<R>]) -> Result<Self> {
        let stair = Staircase::new(order_ideal)?;
        let mut tails = BTreeMap::new();
        for p in polys {
            let outside: Vec<(&Monomial, &R::Elem)> =
                p.terms().filter(|(m, _)| !stair.in_order_ideal(m)).collect();
            let (head, c) = match outside.as_slice() {
                [single] => *single,
                _ => return Err(Error::HeadMismatch(format!("{p} does not have a single head"))),
            };
            if !ring.is_one(c) {
                return Err(Error::HeadMismatch(format!("{p} is not monic")));
            }
            let tail = p.filter_terms(|m| m != head);
            if tails.insert(*head, tail).is_some() {
                return Err(Error::HeadMismatch(format!(
                    "head {} appears twice",
                    head.display_with(vars.names())
                )));
            }
        }
        Self::new(ring, vars, stair.order_ideal, tails)
    }

    /// The monomial marked set: every tail is zero.
    pub fn monomial(ring: &R, vars: &Vars, order_ideal: OrderIdeal) -> Result<Self> {
        Self::new(ring, vars, order_ideal, BTreeMap::new())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn staircase(&self) -> &Arc<Staircase> {
        &self.stair
    }

    pub fn order_ideal(&self) -> &OrderIdeal {
        &self.stair.order_ideal
    }

    pub fn heads(&self) -> &[Monomial] {
        self.stair.heads()
    }

    pub fn tails(&self) -> &[Polynomial<R>] {
        &self.tails
    }

    pub fn tail_of(&self, head: &Monomial) -> Option<&Polynomial<R>> {
        self.stair.head_index(head).map(|i| &self.tails[i])
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    /// `f_a = x^a + tail_a`.
    pub fn polynomial(&self, i: usize) -> Polynomial<R> {
        let mut p = self.tails[i].clone();
        p.add_term(self.heads()[i], &self.ring.one());
        p
    }

    pub fn polynomials(&self) -> Vec<Polynomial<R>> {
        (0..self.len()).map(|i| self.polynomial(i)).collect()
    }

    /// Coefficient-wise image, keeping the heads.
    pub fn try_map<S: Ring, F>(&self, target: &S, f: F) -> Result<MarkedSet<S>>
    where
        F: Fn(&R::Elem) -> Result<S::Elem>,
    {
        let tails = self
            .tails
            .iter()
            .map(|t| t.try_map_coeffs(target, &f))
            .collect::<Result<Vec<_>>>()?;
        MarkedSet::from_parts(target, &self.vars, self.stair.clone(), tails)
    }

    pub fn map<S: Ring, F>(&self, target: &S, f: F) -> MarkedSet<S>
    where
        F: Fn(&R::Elem) -> S::Elem,
    {
        self.try_map(target, |c| Ok(f(c))).expect("infallible map")
    }

    /// Replaces the tails, keeping the order ideal.
    pub fn with_tails(&self, tails: Vec<Polynomial<R>>) -> Result<Self> {
        Self::from_parts(&self.ring, &self.vars, self.stair.clone(), tails)
    }

    fn step_budget(&self, g: &Polynomial<R>) -> u64 {
        let maxdeg = self
            .tails
            .iter()
            .filter_map(|t| t.total_degree())
            .chain(self.heads().iter().map(|h| h.degree()))
            .chain(g.total_degree())
            .max()
            .unwrap_or(1)
            .max(1) as u64;
        (g.len().max(1) as u64) * (self.stair.colength() as u64) * maxdeg * maxdeg * 100
    }

    fn reduce_inner(&self, g: &Polynomial<R>, strategy: Strategy, trace: bool) -> Result<Trace<R>> {
        if g.vars() != &self.vars {
            return Err(Error::AmbientMismatch("polynomial and marked set differ".into()));
        }
        let budget = self.step_budget(g);
        let ring = &self.ring;
        let mut terms: BTreeMap<Monomial, R::Elem> = g.clone().into_terms();
        let mut quotients: Vec<BTreeMap<Monomial, R::Elem>> =
            if trace { vec![BTreeMap::new(); self.len()] } else { Vec::new() };
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            Strategy::Largest => None,
        };
        let mut steps = 0u64;
        loop {
            let target = match rng.as_mut() {
                None => terms.keys().rev().find(|m| !self.stair.in_order_ideal(m)).copied(),
                Some(rng) => {
                    let reducible: Vec<Monomial> =
                        terms.keys().filter(|m| !self.stair.in_order_ideal(m)).copied().collect();
                    reducible.choose(rng).copied()
                }
            };
            let Some(m) = target else { break };
            steps += 1;
            if steps > budget {
                return Err(Error::NonTermination(budget));
            }
            let c = terms.remove(&m).expect("term present");
            let a = self.stair.cone_of(&m).expect("monomials outside N lie in a cone");
            let q = m.div(&self.heads()[a]).expect("head divides");
            for (t, tc) in self.tails[a].terms() {
                let key = t.mul(&q);
                let delta = ring.neg(&ring.mul(&c, tc));
                add_into(ring, &mut terms, key, &delta);
            }
            if trace {
                add_into(ring, &mut quotients[a], q, &c);
            }
        }
        let remainder = Polynomial::from_terms(ring, &self.vars, terms);
        let quotients = quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(ring, &self.vars, q))
            .collect();
        Ok(Trace { remainder, quotients })
    }

    /// Normal form of `g` with respect to the marked set.
    pub fn reduce(&self, g: &Polynomial<R>) -> Result<Polynomial<R>> {
        self.reduce_inner(g, Strategy::Largest, false).map(|t| t.remainder)
    }

    pub fn reduce_with(&self, g: &Polynomial<R>, strategy: Strategy) -> Result<Polynomial<R>> {
        self.reduce_inner(g, strategy, false).map(|t| t.remainder)
    }

    pub fn reduce_traced(&self, g: &Polynomial<R>) -> Result<Trace<R>> {
        self.reduce_inner(g, Strategy::Largest, true)
    }

    /// The pairs `(i, a)` checked by the criterion: `x_i > min x^a`.
    pub fn criterion_pairs(&self) -> Vec<(usize, usize)> {
        self.heads()
            .iter()
            .enumerate()
            .flat_map(|(a, h)| (0..h.min_var().unwrap_or(0)).map(move |i| (i, a)))
            .collect()
    }

    /// `x_i * f_a` for a criterion pair.
    pub fn criterion_product(&self, i: usize, a: usize) -> Polynomial<R> {
        self.polynomial(a).mul_term(&Monomial::var(i), &self.ring.one())
    }

    /// Normal forms of all criterion products, in the order of
    /// [`MarkedSet::criterion_pairs`].
    pub fn criterion_normal_forms(&self, strategy: Strategy) -> Result<Vec<Polynomial<R>>> {
        self.criterion_pairs()
            .par_iter()
            .enumerate()
            .map(|(k, &(i, a))| {
                let s = match strategy {
                    Strategy::Random(seed) => Strategy::Random(seed.wrapping_add(k as u64)),
                    Strategy::Largest => Strategy::Largest,
                };
                self.reduce_with(&self.criterion_product(i, a), s)
            })
            .collect()
    }

    /// Runs the criterion, returning the first failing pair if any.
    pub fn criterion(&self) -> Result<Option<CriterionWitness<R>>> {
        self.criterion_with(Strategy::Largest)
    }

    pub fn criterion_with(&self, strategy: Strategy) -> Result<Option<CriterionWitness<R>>> {
        let nfs = self.criterion_normal_forms(strategy)?;
        Ok(self.criterion_pairs().into_iter().zip(nfs).find(|(_, nf)| !nf.is_zero()).map(
            |((var, a), normal_form)| CriterionWitness { var, head: self.heads()[a], normal_form },
        ))
    }

    pub fn is_marked_basis(&self) -> Result<bool> {
        Ok(self.criterion()?.is_none())
    }

    fn require_basis(&self) -> Result<()> {
        match self.criterion()? {
            None => Ok(()),
            Some(w) => Err(Error::NotABasis(format!(
                "x{} * f[{}] reduces to {}",
                w.var,
                w.head.display_with(self.vars.names()),
                w.normal_form
            ))),
        }
    }

    pub fn colength(&self) -> Result<usize> {
        self.require_basis()?;
        Ok(self.stair.colength())
    }

    pub fn quotient_algebra(&self) -> Result<QuotientAlgebra<R>> {
        self.require_basis()?;
        Ok(QuotientAlgebra::build(self))
    }

    /// Coefficient vector of a polynomial supported on `N`, indexed like
    /// `staircase().basis_monomials()`.
    pub fn coordinates(&self, p: &Polynomial<R>) -> Result<Vec<R::Elem>> {
        let mut v = vec![self.ring.zero(); self.stair.colength()];
        for (m, c) in p.terms() {
            let k = self.stair.basis_index(m).ok_or_else(|| Error::TailOutsideN {
                head: "-".into(),
                term: m.display_with(self.vars.names()),
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }
}

fn add_into<R: Ring>(ring: &R, terms: &mut BTreeMap<Monomial, R::Elem>, m: Monomial, c: &R::Elem) {
    if ring.is_zero(c) {
        return;
    }
    match terms.get_mut(&m) {
        Some(e) => {
            ring.add_assign(e, c);
            if ring.is_zero(e) {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

/// The quotient `R/(F)` of a marked basis as a free module on `N`, with one
/// multiplication matrix per variable. Column `j` of `matrices[i]` is the
/// normal form of `x_i * n_j`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra<R: Ring> {
    ring: R,
    stair: Arc<Staircase>,
    matrices: Vec<Vec<Vec<R::Elem>>>,
}

impl<R: Ring> QuotientAlgebra<R> {
    fn build(f: &MarkedSet<R>) -> Self {
        let n = f.stair.colength();
        let ring = f.ring.clone();
        let nvars = f.vars.len();
        let matrices = (0..nvars)
            .map(|i| {
                let mut mat = vec![vec![ring.zero(); n]; n];
                for (j, b) in f.stair.basis_monomials().iter().enumerate() {
                    let prod = b.mul_var(i);
                    let col = match f.stair.basis_index(&prod) {
                        Some(k) => {
                            let mut v = vec![ring.zero(); n];
                            v[k] = ring.one();
                            v
                        }
                        None => {
                            let nf = f
                                .reduce(&Polynomial::monomial(&ring, &f.vars, prod))
                                .expect("reduction of a monomial terminates");
                            f.coordinates(&nf).expect("normal form lies on N")
                        }
                    };
                    for (k, c) in col.into_iter().enumerate() {
                        mat[k][j] = c;
                    }
                }
                mat
            })
            .collect();
        QuotientAlgebra { ring, stair: f.stair.clone(), matrices }
    }

    pub fn dimension(&self) -> usize {
        self.stair.colength()
    }

    pub fn matrix(&self, i: usize) -> &[Vec<R::Elem>] {
        &self.matrices[i]
    }

    pub fn apply(&self, i: usize, v: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.ring;
        self.matrices[i]
            .iter()
            .map(|row| {
                let mut acc = r.zero();
                for (a, b) in row.iter().zip(v) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        r.add_assign(&mut acc, &r.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn product(&self, a: &[Vec<R::Elem>], b: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        let r = &self.ring;
        let n = a.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = r.zero();
                        for k in 0..n {
                            r.add_assign(&mut acc, &r.mul(&a[i][k], &b[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    pub fn matrices_commute(&self) -> bool {
        let k = self.matrices.len();
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                self.product(&self.matrices[i], &self.matrices[j])
                    == self.product(&self.matrices[j], &self.matrices[i])
            })
        })
    }

    /// Coordinates of the normal form of a monomial.
    pub fn monomial_coordinates(&self, m: &Monomial, memo: &mut HashMap<Monomial, Vec<R::Elem>>) -> Vec<R::Elem> {
        if let Some(k) = self.stair.basis_index(m) {
            let mut v = vec![self.ring.zero(); self.dimension()];
            v[k] = self.ring.one();
            return v;
        }
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let i = m.min_var().expect("1 lies in N");
        let prev = self.monomial_coordinates(&m.div_var(i).unwrap(), memo);
        let v = self.apply(i, &prev);
        memo.insert(*m, v.clone());
        v
    }
}
