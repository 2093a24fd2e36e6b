//! First-order deformations of a marked basis and the tangent space.
//!
//! Perturb every tail by `eps * sum_g T[a, g] x^g`. Write the reduction of a
//! criterion product as `x_i f_a = sum_b q_b f_b`. The eps-part of the
//! perturbed normal form is then `NF(x_i T_a - sum_b q_b T_b)`. Every basis
//! monomial coefficient of it is a linear equation in the unknowns `T[b, g]`,
//! indexed `b * |N| + g`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::marked::{MarkedSet, QuotientAlgebra};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::{is_prime, rational_mod_p, DualNumber, DualNumbers, Field, PrimeField, Rationals};

/// The linear system whose kernel is the tangent space.
#[derive(Clone, Debug)]
pub struct TangentSystem<K: Field> {
    field: K,
    rows: Vec<Vec<K::Elem>>,
    nheads: usize,
    nbasis: usize,
    pairs: Vec<(usize, usize)>,
}

impl<K: Field> TangentSystem<K> {
    pub fn ncols(&self) -> usize {
        self.nheads * self.nbasis
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Rows, `|N|` per criterion pair, in the order of
    /// [`MarkedSet::criterion_pairs`].
    pub fn rows(&self) -> &[Vec<K::Elem>] {
        &self.rows
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn nonzero_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.iter().any(|e| !self.field.is_zero(e))).count()
    }

    pub fn unknown_index(&self, head: usize, tail: usize) -> usize {
        head * self.nbasis + tail
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, self.rows.clone())
    }

    pub fn kernel(&self) -> Vec<Vec<K::Elem>> {
        linalg::kernel(&self.field, self.rows.clone(), self.ncols())
    }

    pub fn annihilates(&self, v: &[K::Elem]) -> bool {
        let k = &self.field;
        self.rows.iter().all(|row| {
            let mut acc = k.zero();
            for (a, b) in row.iter().zip(v) {
                if !k.is_zero(a) && !k.is_zero(b) {
                    k.add_assign(&mut acc, &k.mul(a, b));
                }
            }
            k.is_zero(&acc)
        })
    }
}

fn require_basis<K: Field>(f: &MarkedSet<K>) -> Result<QuotientAlgebra<K>> {
    f.quotient_algebra()
}

/// Builds the system from one traced reduction per criterion pair.
pub fn build_tangent_system<K: Field>(f: &MarkedSet<K>) -> Result<TangentSystem<K>> {
    let qa = require_basis(f)?;
    let k = f.ring().clone();
    let nbasis = f.staircase().colength();
    let nheads = f.len();
    let ncols = nheads * nbasis;
    let pairs = f.criterion_pairs();
    let traces = pairs
        .par_iter()
        .map(|&(i, a)| f.reduce_traced(&f.criterion_product(i, a)))
        .collect::<Result<Vec<_>>>()?;
    let basis = f.staircase().basis_monomials().to_vec();
    let mut memo: HashMap<Monomial, Vec<K::Elem>> = HashMap::new();
    let mut rows = Vec::with_capacity(pairs.len() * nbasis);
    for (&(i, a), trace) in pairs.iter().zip(&traces) {
        let mut block = vec![vec![k.zero(); ncols]; nbasis];
        for b in 0..nheads {
            let q = &trace.quotients[b];
            if q.is_zero() && b != a {
                continue;
            }
            for (g, xg) in basis.iter().enumerate() {
                let mut col = vec![k.zero(); nbasis];
                if b == a {
                    col = qa.monomial_coordinates(&xg.mul_var(i), &mut memo);
                }
                for (m, c) in q.terms() {
                    let nf = qa.monomial_coordinates(&m.mul(xg), &mut memo);
                    for (e, v) in col.iter_mut().zip(&nf) {
                        if !k.is_zero(v) {
                            *e = k.sub(e, &k.mul(c, v));
                        }
                    }
                }
                let idx = b * nbasis + g;
                for (r, e) in col.into_iter().enumerate() {
                    block[r][idx] = e;
                }
            }
        }
        rows.extend(block);
    }
    Ok(TangentSystem { field: k, rows, nheads, nbasis, pairs })
}

/// Builds the same system by perturbing one unknown at a time over the dual
/// numbers and reading off the eps-parts of the criterion normal forms.
pub fn build_tangent_system_superposition<K: Field>(f: &MarkedSet<K>) -> Result<TangentSystem<K>> {
    require_basis(f)?;
    let k = f.ring().clone();
    let d = DualNumbers::new(k.clone());
    let nbasis = f.staircase().colength();
    let nheads = f.len();
    let ncols = nheads * nbasis;
    let pairs = f.criterion_pairs();
    let lifted = f.map(&d, |c| d.embed(c.clone()));
    let columns = (0..ncols)
        .into_par_iter()
        .map(|idx| {
            let (b, g) = (idx / nbasis, idx % nbasis);
            let mut tails = lifted.tails().to_vec();
            let xg = f.staircase().basis_monomials()[g];
            tails[b].add_term(xg, &d.pure_eps(k.one()));
            let perturbed = lifted.with_tails(tails)?;
            let nfs = perturbed.criterion_normal_forms(crate::marked::Strategy::Largest)?;
            let mut col = Vec::with_capacity(pairs.len() * nbasis);
            for nf in &nfs {
                let mut block = vec![k.zero(); nbasis];
                for (m, c) in nf.terms() {
                    let r = f.staircase().basis_index(m).expect("normal forms lie on N");
                    block[r] = c.eps.clone();
                }
                col.extend(block);
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let nrows = pairs.len() * nbasis;
    let rows = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(TangentSystem { field: k, rows, nheads, nbasis, pairs })
}

/// The first-order family `F + eps * T` for a vector of unknowns.
pub fn instantiate<K: Field>(f: &MarkedSet<K>, t: &[K::Elem]) -> Result<MarkedSet<DualNumbers<K>>> {
    let k = f.ring();
    let nbasis = f.staircase().colength();
    if t.len() != f.len() * nbasis {
        return Err(Error::InvalidInput(format!("expected {} unknowns, got {}", f.len() * nbasis, t.len())));
    }
    let d = DualNumbers::new(k.clone());
    let lifted = f.map(&d, |c| d.embed(c.clone()));
    let mut tails = lifted.tails().to_vec();
    for (idx, v) in t.iter().enumerate() {
        if !k.is_zero(v) {
            let m = f.staircase().basis_monomials()[idx % nbasis];
            tails[idx / nbasis].add_term(m, &d.pure_eps(v.clone()));
        }
    }
    lifted.with_tails(tails)
}

/// Splits a first-order family into its base and its eps-vector.
pub fn first_order_parts<K: Field>(g: &MarkedSet<DualNumbers<K>>) -> (MarkedSet<K>, Vec<K::Elem>) {
    let k = g.ring().base().clone();
    let base = g.map(&k, |c: &DualNumber<K::Elem>| c.re.clone());
    let nbasis = g.staircase().colength();
    let mut v = vec![k.zero(); g.len() * nbasis];
    for (b, tail) in g.tails().iter().enumerate() {
        for (m, c) in tail.terms() {
            let r = g.staircase().basis_index(m).expect("tails lie on N");
            v[b * nbasis + r] = c.eps.clone();
        }
    }
    (base, v)
}

/// Rank of the eps-parts of first-order families over a common base. Each
/// family must pass the criterion over the dual numbers.
pub fn tangent_vectors_rank<K: Field>(families: &[MarkedSet<DualNumbers<K>>]) -> Result<usize> {
    let Some(first) = families.first() else { return Ok(0) };
    let (base, _) = first_order_parts(first);
    let mut vectors = Vec::with_capacity(families.len());
    for (i, g) in families.iter().enumerate() {
        let (b, v) = first_order_parts(g);
        if b.order_ideal() != base.order_ideal() || b.tails() != base.tails() {
            return Err(Error::BaseMismatch);
        }
        if !g.is_marked_basis()? {
            return Err(Error::NotFlat(i));
        }
        vectors.push(v);
    }
    Ok(linalg::rank(base.ring(), vectors))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Holds,
    Fails,
}

impl Parity {
    pub fn of(d: usize, dim: usize) -> Self {
        if d % 2 == dim % 2 {
            Parity::Holds
        } else {
            Parity::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Fraction-free elimination over the rationals.
    ExactRational,
    /// Agreement of ranks modulo several primes.
    ModularConsensus,
    /// Elimination over the prime field itself.
    ExactPrimeField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub d: usize,
    pub dim: usize,
    pub parity: Parity,
    pub rank_method: RankMethod,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub primes: Option<Vec<u64>>,
    pub characteristic: u64,
    pub unknowns: usize,
    pub rank: usize,
}

#[derive(Clone, Debug)]
pub struct RankOptions {
    pub seed: u64,
    /// Primes to use instead of random ones.
    pub primes: Option<Vec<u64>>,
    pub exact_threshold: usize,
    pub nprimes: usize,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { seed: 0, primes: None, exact_threshold: 300, nprimes: 3 }
    }
}

/// Random primes in `(2^20, 2^31)`.
pub fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let mut p = rng.gen_range((1u64 << 20) + 1..(1u64 << 31)) | 1;
        while !is_prime(p) {
            p += 2;
        }
        if p < (1 << 31) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Rank of a prime field system, using word arithmetic when it fits.
fn prime_field_rank(field: &PrimeField, sys: &TangentSystem<PrimeField>) -> usize {
    if field.modulus() < (1 << 32) {
        let rows: Vec<Vec<u64>> = sys
            .rows
            .iter()
            .filter(|r| r.iter().any(|&e| e != 0))
            .cloned()
            .collect();
        linalg::rank_mod_p(field.modulus(), rows)
    } else {
        sys.rank()
    }
}

/// Rank of the tangent system of a rational marked basis modulo `p`, or
/// `None` when a coefficient has a denominator divisible by `p`.
pub fn modular_rank(f: &MarkedSet<Rationals>, p: u64) -> Result<Option<usize>> {
    let field = PrimeField::new(p)?;
    let fp = match f.try_map(&field, |c| rational_mod_p(&field, c)) {
        Ok(fp) => fp,
        Err(Error::NonUnitDivision(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let sys = build_tangent_system(&fp)?;
    Ok(Some(prime_field_rank(&field, &sys)))
}

/// Fields over which the tangent dimension can be computed.
pub trait TangentField: Field {
    fn tangent_rank(f: &MarkedSet<Self>, opts: &RankOptions) -> Result<(usize, RankMethod, Option<Vec<u64>>)>;
}

impl TangentField for Rationals {
    fn tangent_rank(f: &MarkedSet<Self>, opts: &RankOptions) -> Result<(usize, RankMethod, Option<Vec<u64>>)> {
        let ncols = f.len() * f.staircase().colength();
        if ncols <= opts.exact_threshold && opts.primes.is_none() {
            let sys = build_tangent_system(f)?;
            return Ok((linalg::rank_bareiss(&sys.rows), RankMethod::ExactRational, None));
        }
        // the marked basis is checked once over the rationals; the modular
        // systems then only need the reductions
        f.quotient_algebra()?;
        let mut seed = opts.seed;
        let mut best: Option<usize> = None;
        for attempt in 0..2 {
            let primes = match &opts.primes {
                Some(p) if attempt == 0 => p.clone(),
                _ => {
                    seed = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
                    random_primes(seed, opts.nprimes)
                }
            };
            let ranks = primes
                .par_iter()
                .map(|&p| modular_rank(f, p).map(|r| (p, r)))
                .collect::<Result<Vec<_>>>()?;
            let usable: Vec<(u64, usize)> = ranks.iter().filter_map(|&(p, r)| r.map(|r| (p, r))).collect();
            let max = usable.iter().map(|&(_, r)| r).max();
            let unanimous = !usable.is_empty() && usable.iter().all(|&(_, r)| Some(r) == max);
            if unanimous && max >= best {
                let used = usable.iter().map(|&(p, _)| p).collect();
                return Ok((max.unwrap(), RankMethod::ModularConsensus, Some(used)));
            }
            best = best.max(max);
        }
        Err(Error::ModularDisagreement(format!("no unanimous prime triple, largest rank seen {best:?}")))
    }
}

impl TangentField for PrimeField {
    fn tangent_rank(f: &MarkedSet<Self>, _opts: &RankOptions) -> Result<(usize, RankMethod, Option<Vec<u64>>)> {
        let sys = build_tangent_system(f)?;
        Ok((prime_field_rank(f.ring(), &sys), RankMethod::ExactPrimeField, None))
    }
}

pub fn tangent_dimension<K: TangentField>(f: &MarkedSet<K>, opts: &RankOptions) -> Result<TangentReport> {
    let d = f.staircase().colength();
    let unknowns = f.len() * d;
    let (rank, rank_method, primes) = K::tangent_rank(f, opts)?;
    let dim = unknowns - rank;
    Ok(TangentReport {
        d,
        dim,
        parity: Parity::of(d, dim),
        rank_method,
        primes,
        characteristic: f.ring().characteristic(),
        unknowns,
        rank,
    })
}

/// A basis of the tangent space as vectors of unknowns.
pub fn tangent_basis<K: Field>(f: &MarkedSet<K>) -> Result<Vec<Vec<K::Elem>>> {
    Ok(build_tangent_system(f)?.kernel())
}

/// Tangent vector of a first-order family given by explicit perturbed
/// generators: the eps-part of the normal form of each head's generator.
pub fn first_order_from_generators<K: Field>(
    f: &MarkedSet<K>,
    eps_parts: &[(Monomial, Polynomial<K>)],
) -> Result<MarkedSet<DualNumbers<K>>> {
    let nbasis = f.staircase().colength();
    let mut t = vec![f.ring().zero(); f.len() * nbasis];
    let heads = f.heads();
    for (head, p) in eps_parts {
        let b = heads
            .iter()
            .position(|h| h == head)
            .ok_or_else(|| Error::HeadMismatch(head.display_with(f.vars().names())))?;
        let nf = f.reduce(p)?;
        for (m, c) in nf.terms() {
            t[b * nbasis + f.staircase().basis_index(m).unwrap()] = c.clone();
        }
    }
    instantiate(f, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_ideal::OrderIdeal;
    use crate::poly::Vars;

    #[test]
    fn point_has_three_dimensional_tangent_space() {
        let n = OrderIdeal::from_exponents(3, &[vec![0, 0, 0]]).unwrap();
        let f = MarkedSet::monomial(&Rationals, &Vars::xyz(), n).unwrap();
        let sys = build_tangent_system(&f).unwrap();
        assert_eq!(sys.ncols(), 3);
        assert_eq!(sys.nonzero_rows(), 0);
        let r = tangent_dimension(&f, &RankOptions::default()).unwrap();
        assert_eq!((r.d, r.dim, r.parity), (1, 3, Parity::Holds));
        let basis = tangent_basis(&f).unwrap();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn random_primes_are_in_range_and_deterministic() {
        let p = random_primes(7, 3);
        assert_eq!(p, random_primes(7, 3));
        assert!(p.iter().all(|&q| q > (1 << 20) && q < (1 << 31) && is_prime(q)));
    }

    #[test]
    fn parity_rule() {
        assert_eq!(Parity::of(12, 45), Parity::Fails);
        assert_eq!(Parity::of(12, 48), Parity::Holds);
    }
}
