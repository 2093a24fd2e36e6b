//! Marked bases from ideals, order ideal enumeration and seeded random
//! zero-dimensional ideals.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{self, Colength, GroebnerBasis};
use crate::marked::MarkedSet;
use crate::monomial::Monomial;
use crate::monomial_ideal::{complement_ideal, OrderIdeal, Staircase};
use crate::poly::{Polynomial, Vars};
use crate::ring::{rat, Field, Rationals};

fn finite_basis<K: Field>(gens: &[Polynomial<K>]) -> Result<(GroebnerBasis<K>, usize)> {
    let gb = groebner::degrevlex_basis(gens)?;
    match gb.colength() {
        Colength::Finite(d) => Ok((gb, d)),
        Colength::Infinite => Err(Error::NotZeroDimensional),
    }
}

/// The marked basis on the degrevlex standard monomials of the ideal.
pub fn marked_basis_from_generators<K: Field>(gens: &[Polynomial<K>]) -> Result<MarkedSet<K>> {
    let (gb, _) = finite_basis(gens)?;
    let n = gb.standard_monomials()?;
    let k = gens[0].ring().clone();
    let vars = gens[0].vars().clone();
    let stair = Arc::new(Staircase::new(n)?);
    let tails = stair
        .heads()
        .iter()
        .map(|h| gb.normal_form(&Polynomial::monomial(&k, &vars, *h)).neg())
        .collect();
    MarkedSet::from_parts(&k, &vars, stair, tails)
}

/// The marked basis of the ideal on a prescribed order ideal, or `None` when
/// `n` does not give a basis of the quotient.
pub fn marked_basis_on<K: Field>(gens: &[Polynomial<K>], n: &OrderIdeal) -> Result<Option<MarkedSet<K>>> {
    let (gb, d) = finite_basis(gens)?;
    if d != n.len() {
        return Ok(None);
    }
    let k = gens[0].ring().clone();
    let vars = gens[0].vars().clone();
    let std = gb.standard_monomials()?;
    let std: Vec<Monomial> = std.iter().copied().collect();
    let coords = |m: &Monomial| -> Vec<K::Elem> {
        let nf = gb.normal_form(&Polynomial::monomial(&k, &vars, *m));
        std.iter().map(|s| nf.coeff(s)).collect()
    };
    let stair = Arc::new(Staircase::new(n.clone())?);
    let cols: Vec<Vec<K::Elem>> = stair.basis_monomials().iter().map(coords).collect();
    // a[i][j] = coordinate i of basis monomial j
    let a: Vec<Vec<K::Elem>> = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    if crate::linalg::rank(&k, a.clone()) < d {
        return Ok(None);
    }
    let mut tails = Vec::with_capacity(stair.heads().len());
    for h in stair.heads() {
        let c = crate::linalg::solve(&k, &a, &coords(h)).ok_or(Error::SingularMatrix)?;
        let terms = stair.basis_monomials().iter().zip(c).map(|(m, e)| (*m, k.neg(&e)));
        tails.push(Polynomial::from_terms(&k, &vars, terms));
    }
    MarkedSet::from_parts(&k, &vars, stair, tails).map(Some)
}

/// All order ideals with exactly `size` monomials.
pub fn order_ideals_of_size(nvars: usize, size: usize) -> Vec<OrderIdeal> {
    let mut level: BTreeSet<BTreeSet<Monomial>> = BTreeSet::new();
    if size == 0 {
        return vec![OrderIdeal::new(nvars, []).expect("empty")];
    }
    level.insert([Monomial::one()].into());
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for n in &level {
            for m in n {
                for i in 0..nvars {
                    let c = m.mul_var(i);
                    if n.contains(&c) {
                        continue;
                    }
                    let closed = (0..nvars).all(|j| c.div_var(j).is_none_or(|q| n.contains(&q)));
                    if closed {
                        let mut bigger = n.clone();
                        bigger.insert(c);
                        next.insert(bigger);
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().map(|s| OrderIdeal::new(nvars, s).expect("order ideal")).collect()
}

fn small_int(rng: &mut ChaCha8Rng, r: i64) -> BigRational {
    rat(rng.gen_range(-r..=r), 1)
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigRational>> {
    loop {
        let m: Vec<Vec<BigRational>> = (0..n).map(|_| (0..n).map(|_| small_int(rng, 3)).collect()).collect();
        if crate::linalg::rank(&Rationals, m.clone()) == n {
            return m;
        }
    }
}

/// A random ideal of colength `d`: an intersection of monomial clusters of
/// random shapes, each moved by a random linear change and translated to its
/// own point.
pub fn random_cluster_ideal(rng: &mut ChaCha8Rng, vars: &Vars, d: usize, max_cluster: usize) -> Result<Vec<Polynomial<Rationals>>> {
    cluster_ideal(vars, &random_clusters(rng, vars.len(), d, max_cluster))
}

/// Generators of the ideal of a union of clusters.
pub fn cluster_ideal(vars: &Vars, clusters: &[Cluster]) -> Result<Vec<Polynomial<Rationals>>> {
    let k = Rationals;
    let mut parts = Vec::new();
    for c in clusters {
        // the cluster at `point` is cut out by g(M^-1 (x - point))
        let inv = invert(&c.matrix)?;
        let shift: Vec<BigRational> = c.point.iter().map(|q| -q.clone()).collect();
        let moved = complement_ideal(&c.shape)
            .generators()
            .iter()
            .map(|m| Polynomial::monomial(&k, vars, *m).apply_linear_change(&transpose(&inv))?.translate(&shift))
            .collect::<Result<Vec<_>>>()?;
        parts.push(moved);
    }
    groebner::intersect_all(&parts)
}

fn transpose(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    (0..m.len()).map(|i| m.iter().map(|r| r[i].clone()).collect()).collect()
}

fn invert(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    let cols = (0..n)
        .map(|j| {
            let e: Vec<BigRational> = (0..n).map(|i| rat((i == j) as i64, 1)).collect();
            crate::linalg::solve(&Rationals, m, &e).ok_or(Error::SingularMatrix)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(transpose(&cols))
}

/// A cluster: the monomial shape `n` moved to `point` by the linear map `m`.
/// Its functionals send `f` to the coefficients of `y^a`, `a` in `n`, of
/// `f(point + m y)`.
#[derive(Clone, Debug)]
pub struct Cluster {
    pub shape: OrderIdeal,
    pub matrix: Vec<Vec<BigRational>>,
    pub point: Vec<BigRational>,
}

impl Cluster {
    fn images(&self, vars: &Vars) -> Vec<Polynomial<Rationals>> {
        let n = vars.len();
        (0..n)
            .map(|i| {
                let mut p = Polynomial::from_terms(&Rationals, vars, (0..n).map(|j| (Monomial::var(j), self.matrix[i][j].clone())));
                p.add_term(Monomial::one(), &self.point[i]);
                p
            })
            .collect()
    }

    /// Values of the cluster functionals on a monomial.
    fn evaluate(&self, images: &[Polynomial<Rationals>], vars: &Vars, m: &Monomial) -> Result<Vec<BigRational>> {
        let moved = Polynomial::monomial(&Rationals, vars, *m).substitute(images)?;
        Ok(self.shape.iter().map(|a| moved.coeff(a)).collect())
    }
}

pub fn random_clusters(rng: &mut ChaCha8Rng, n: usize, d: usize, max_cluster: usize) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut left = d;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(max_cluster.max(1)));
        left -= s;
        let shape = order_ideals_of_size(n, s).choose(rng).expect("nonempty").clone();
        let matrix = random_invertible(rng, n);
        let point = loop {
            let p: Vec<BigRational> = (0..n).map(|_| small_int(rng, 50)).collect();
            if out.iter().all(|c| c.point != p) {
                break p;
            }
        };
        out.push(Cluster { shape, matrix, point });
    }
    out
}

/// The marked basis on `n` of the ideal annihilated by the clusters'
/// functionals, or `None` when `n` is not a basis of the quotient.
pub fn marked_basis_from_clusters(vars: &Vars, clusters: &[Cluster], n: &OrderIdeal) -> Result<Option<MarkedSet<Rationals>>> {
    let k = Rationals;
    let d: usize = clusters.iter().map(|c| c.shape.len()).sum();
    if d != n.len() {
        return Ok(None);
    }
    let images: Vec<_> = clusters.iter().map(|c| c.images(vars)).collect();
    let values = |m: &Monomial| -> Result<Vec<BigRational>> {
        let mut v = Vec::with_capacity(d);
        for (c, im) in clusters.iter().zip(&images) {
            v.extend(c.evaluate(im, vars, m)?);
        }
        Ok(v)
    };
    let stair = Arc::new(Staircase::new(n.clone())?);
    let cols = stair.basis_monomials().iter().map(&values).collect::<Result<Vec<_>>>()?;
    let a: Vec<Vec<BigRational>> = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    if crate::linalg::rank(&k, a.clone()) < d {
        return Ok(None);
    }
    let mut tails = Vec::with_capacity(stair.heads().len());
    for h in stair.heads() {
        let c = crate::linalg::solve(&k, &a, &values(h)?).ok_or(Error::SingularMatrix)?;
        let terms = stair.basis_monomials().iter().zip(c).map(|(m, e)| (*m, -e));
        tails.push(Polynomial::from_terms(&k, vars, terms));
    }
    MarkedSet::from_parts(&k, vars, stair, tails).map(Some)
}

/// A random marked basis of colength `d`, on `n` when given, else on the
/// degrevlex standard monomials. Later tries use smaller clusters, down to
/// reduced points.
pub fn random_marked_basis(
    rng: &mut ChaCha8Rng,
    vars: &Vars,
    d: usize,
    n: Option<&OrderIdeal>,
    tries: usize,
) -> Result<MarkedSet<Rationals>> {
    let tries = tries.max(1);
    for i in 0..tries {
        let max_cluster = match i * 3 / tries {
            0 => 4,
            1 => 2,
            _ => 1,
        };
        match n {
            None => return marked_basis_from_generators(&random_cluster_ideal(rng, vars, d, max_cluster)?),
            Some(n) => {
                let clusters = random_clusters(rng, vars.len(), d, max_cluster);
                if let Some(f) = marked_basis_from_clusters(vars, &clusters, n)? {
                    return Ok(f);
                }
            }
        }
    }
    Err(Error::InvalidInput(format!("no random ideal had the requested order ideal as a basis after {tries} tries")))
}
