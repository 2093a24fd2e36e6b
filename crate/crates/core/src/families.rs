//! The explicit ideals and families: the colength 12 counterexamples, their
//! smoothing, the four limit components, unions with reduced points, the
//! length 78 example and the first-order families spanning the image of the
//! parametrization.

use crate::error::{Error, Result};
use crate::groebner::{self, Colength};
use crate::marked::MarkedSet;
use crate::monomial::Monomial;
use crate::monomial_ideal::OrderIdeal;
use crate::poly::{parse_polynomial, Polynomial, Vars};
use crate::ring::{DualNumbers, Field, Ring, UnivariatePolynomials};
use crate::tangent::first_order_from_generators;

/// Which variable the linear form `l` is normalized on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    X,
    Y,
    Z,
}

impl Chart {
    fn index(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    /// The two remaining variables, larger first.
    fn complement(self) -> (usize, usize) {
        match self {
            Chart::X => (1, 2),
            Chart::Y => (0, 2),
            Chart::Z => (0, 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CounterexampleParams<K: Field> {
    pub chart: Chart,
    pub a: [K::Elem; 2],
    pub b: [K::Elem; 6],
}

fn c<K: Field>(k: &K, vars: &Vars, e: &K::Elem) -> Polynomial<K> {
    Polynomial::constant(k, vars, e.clone())
}

fn var<K: Field>(k: &K, vars: &Vars, i: usize) -> Polynomial<K> {
    Polynomial::var(k, vars, i)
}

fn int<K: Field>(k: &K, vars: &Vars, n: i64) -> Polynomial<K> {
    Polynomial::constant(k, vars, k.from_int(n))
}

fn sum<K: Ring>(k: &K, vars: &Vars, parts: Vec<Polynomial<K>>) -> Polynomial<K> {
    parts.into_iter().fold(Polynomial::zero(k, vars), |acc, p| &acc + &p)
}

/// `b0 u^3 + b1 u^2 w + b2 u w^2 + b3 w^3 + b4 l u + b5 l w`.
fn cubic_v<K: Field>(k: &K, vars: &Vars, l: &Polynomial<K>, u: &Polynomial<K>, w: &Polynomial<K>, b: &[K::Elem]) -> Polynomial<K> {
    sum(
        k,
        vars,
        vec![
            &c(k, vars, &b[0]) * &u.pow(3),
            &(&c(k, vars, &b[1]) * &u.pow(2)) * w,
            &(&c(k, vars, &b[2]) * u) * &w.pow(2),
            &c(k, vars, &b[3]) * &w.pow(3),
            &(&c(k, vars, &b[4]) * l) * u,
            &(&c(k, vars, &b[5]) * l) * w,
        ],
    )
}

/// Generators of `((l) + (u, w)^2)^2`.
fn square_part<K: Field>(l: &Polynomial<K>, u: &Polynomial<K>, w: &Polynomial<K>) -> Vec<Polynomial<K>> {
    let quadrics = [u * u, u * w, w * w];
    let mut out = vec![l * l];
    for q in &quadrics {
        out.push(l * q);
    }
    for i in 0..3 {
        for j in i..3 {
            let p = &quadrics[i] * &quadrics[j];
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Generators of `((l) + m^2)^2 + (v)` in `k[x, y, z]`.
pub fn counterexample_generators<K: Field>(k: &K, p: &CounterexampleParams<K>) -> Result<Vec<Polynomial<K>>> {
    if p.b.iter().all(|e| k.is_zero(e)) {
        return Err(Error::AllZeroB);
    }
    let vars = Vars::xyz();
    let (ui, wi) = p.chart.complement();
    let (u, w) = (var(k, &vars, ui), var(k, &vars, wi));
    let l = sum(
        k,
        &vars,
        vec![var(k, &vars, p.chart.index()), &c(k, &vars, &p.a[0]) * &u, &c(k, &vars, &p.a[1]) * &w],
    );
    let mut gens = square_part(&l, &u, &w);
    gens.push(cubic_v(k, &vars, &l, &u, &w, &p.b));
    Ok(gens)
}

/// The order ideal `{1, x, y, z, xy, y^2, xz, yz, z^2, y^2z, yz^2, z^3}`.
pub fn order_ideal_12() -> OrderIdeal {
    OrderIdeal::from_exponents(
        3,
        &[
            vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1],
            vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2],
            vec![0, 2, 1], vec![0, 1, 2], vec![0, 0, 3],
        ],
    )
    .expect("division closed")
}

/// The chart generators with `l = x` and `b0 = 1`, `b = (b1, ..., b5)`.
pub fn chart_x_generators<K: Field>(k: &K, b: &[K::Elem; 5]) -> Vec<Polynomial<K>> {
    let vars = Vars::xyz();
    let (x, y, z) = (var(k, &vars, 0), var(k, &vars, 1), var(k, &vars, 2));
    let mut full = vec![k.one()];
    full.extend(b.iter().cloned());
    let mut gens: Vec<Polynomial<K>> = ["x^2", "x*y^2", "x*y*z", "x*z^2", "y^2*z^2", "y*z^3", "z^4"]
        .iter()
        .map(|s| parse_polynomial(s, k, &vars).expect("fixed generator"))
        .collect();
    gens.push(cubic_v(k, &vars, &x, &y, &z, &full));
    gens
}

/// The marked basis on the 12-element order ideal for `l = x`, `b0 = 1`.
pub fn counterexample_marked_basis<K: Field>(k: &K, b: &[K::Elem; 5]) -> Result<MarkedSet<K>> {
    MarkedSet::from_polynomials(k, &Vars::xyz(), order_ideal_12(), &chart_x_generators(k, b))
}

/// `b3 b4^3 - b2 b4^2 b5 + b1 b4 b5^2 - b5^3`.
pub fn discriminant<K: Field>(k: &K, b: &[K::Elem; 5]) -> K::Elem {
    let [b1, b2, b3, b4, b5] = b;
    let t1 = k.mul(b3, &k.pow(b4, 3));
    let t2 = k.mul(&k.mul(b2, &k.pow(b4, 2)), b5);
    let t3 = k.mul(&k.mul(b1, b4), &k.pow(b5, 2));
    let t4 = k.pow(b5, 3);
    k.sub(&k.add(&k.sub(&t1, &t2), &t3), &t4)
}

/// `b4^2 (b3 b4 - b2 b5) + b5^2 (b1 b4 - b5)`.
pub fn discriminant_factored<K: Field>(k: &K, b: &[K::Elem; 5]) -> K::Elem {
    let [b1, b2, b3, b4, b5] = b;
    let u = k.sub(&k.mul(b3, b4), &k.mul(b2, b5));
    let w = k.sub(&k.mul(b1, b4), b5);
    k.add(&k.mul(&k.pow(b4, 2), &u), &k.mul(&k.pow(b5, 2), &w))
}

/// Compares the ideals built on two complements `L = <l1, l2>` and
/// `L' = <l1', l2'>` of `<l>`, linear forms given by coefficient vectors.
pub fn lambda_invariance_check<K: Field>(
    k: &K,
    l: &[K::Elem; 3],
    basis: [&[K::Elem; 3]; 2],
    other: [&[K::Elem; 3]; 2],
    b: &[K::Elem; 6],
) -> Result<bool> {
    let vars = Vars::xyz();
    let form = |v: &[K::Elem; 3]| sum(k, &vars, (0..3).map(|i| &c(k, &vars, &v[i]) * &var(k, &vars, i)).collect());
    for pair in [basis, other] {
        let m: Vec<Vec<K::Elem>> = vec![l.to_vec(), pair[0].to_vec(), pair[1].to_vec()];
        if crate::linalg::rank(k, m) < 3 {
            return Err(Error::DegenerateComplement);
        }
    }
    let lf = form(l);
    let build = |pair: [&[K::Elem; 3]; 2]| {
        let (u, w) = (form(pair[0]), form(pair[1]));
        let mut gens = square_part(&lf, &u, &w);
        gens.push(cubic_v(k, &vars, &lf, &u, &w, b));
        gens
    };
    groebner::ideal_equal(&build(basis), &build(other))
}

type KT<K> = UnivariatePolynomials<K>;

/// The x^2-generator of the smoothing family. The sign in front of its first
/// `t^2` term is a parameter; only `-1` yields a flat family.
fn smoothing_x2<K: Field>(k: &K, kt: &KT<K>, vars: &Vars, b: &[K::Elem; 5], sign: i64) -> Result<Polynomial<KT<K>>> {
    let [b1, b2, b3, b4, b5] = b;
    let disc = discriminant(k, b);
    let dinv = k.inv(&disc).ok_or(Error::DiscriminantZero)?;
    let u = k.sub(&k.mul(b3, b4), &k.mul(b2, b5));
    let w = k.sub(&k.mul(b1, b4), b5);
    let q = |e: K::Elem| k.mul(&e, &dinv);
    let t2 = |e: K::Elem| kt.monomial(e, 2);
    let m = |e: &[u32]| Monomial::new(e);
    let two_b = k.mul(&k.from_int(2), &disc);
    let mut p = Polynomial::monomial(kt, vars, m(&[2, 0, 0]));
    let coeffs: Vec<(Monomial, Vec<K::Elem>)> = vec![
        (m(&[0, 2, 0]), t2(k.mul(&k.from_int(sign), &q(k.mul(&k.pow(b4, 2), &u))))),
        (m(&[0, 1, 1]), t2(k.neg(&q(k.mul(&k.mul(b4, &u), &w))))),
        (m(&[0, 0, 2]), t2(q(k.mul(&k.mul(&k.mul(b3, b4), b5), &w)))),
        (m(&[1, 0, 0]), t2(k.neg(&q(k.mul(b4, &k.sub(&two_b, &k.mul(&k.pow(b5, 2), &w))))))),
        (m(&[0, 0, 0]), kt.monomial(q(k.mul(&k.pow(b4, 4), &u)), 4)),
    ];
    for (mono, coef) in coeffs {
        p.add_term(mono, &coef);
    }
    Ok(p)
}

/// The eight generators of the smoothing family over `k[t]`.
pub fn smoothing_generators<K: Field>(k: &K, b: &[K::Elem; 5]) -> Result<Vec<Polynomial<KT<K>>>> {
    smoothing_generators_signed(k, b, -1)
}

fn smoothing_generators_signed<K: Field>(k: &K, b: &[K::Elem; 5], sign: i64) -> Result<Vec<Polynomial<KT<K>>>> {
    let kt = UnivariatePolynomials::new(k.clone());
    let vars = Vars::xyz();
    let [b1, b2, b3, b4, b5] = b;
    let m = |e: &[u32]| Monomial::new(e);
    let term = |e: &[u32], coef: Vec<K::Elem>| Polynomial::term(&kt, &vars, m(e), coef);
    let mono = |e: &[u32]| Polynomial::monomial(&kt, &vars, m(e));
    let x2 = smoothing_x2(k, &kt, &vars, b, sign)?;
    let neg_b4_t2 = kt.monomial(k.neg(b4), 2);
    let v = sum(
        &kt,
        &vars,
        vec![
            mono(&[0, 3, 0]),
            term(&[0, 2, 1], kt.constant(b1.clone())),
            term(&[0, 1, 2], kt.constant(b2.clone())),
            term(&[0, 0, 3], kt.constant(b3.clone())),
            term(&[1, 1, 0], kt.constant(b4.clone())),
            term(&[1, 0, 1], kt.constant(b5.clone())),
            term(&[0, 1, 0], kt.monomial(k.neg(&k.pow(b4, 2)), 2)),
            term(&[0, 0, 1], kt.monomial(k.neg(&k.mul(b4, b5)), 2)),
        ],
    );
    Ok(vec![
        x2,
        mono(&[1, 2, 0]),
        sum(&kt, &vars, vec![mono(&[1, 1, 1]), term(&[0, 2, 1], kt.t()), term(&[0, 1, 1], neg_b4_t2.clone())]),
        sum(&kt, &vars, vec![mono(&[1, 0, 2]), term(&[0, 0, 2], neg_b4_t2)]),
        mono(&[0, 2, 2]),
        mono(&[0, 1, 3]),
        mono(&[0, 0, 4]),
        v,
    ])
}

/// The smoothing family as a marked set over `k[t]`.
pub fn smoothing_family<K: Field>(k: &K, b: &[K::Elem; 5]) -> Result<MarkedSet<KT<K>>> {
    let kt = UnivariatePolynomials::new(k.clone());
    MarkedSet::from_polynomials(&kt, &Vars::xyz(), order_ideal_12(), &smoothing_generators(k, b)?)
}

/// The same eight generators with the opposite sign on the first `t^2` term
/// of the x^2-generator.
pub fn smoothing_family_other_sign<K: Field>(k: &K, b: &[K::Elem; 5]) -> Result<MarkedSet<KT<K>>> {
    let kt = UnivariatePolynomials::new(k.clone());
    MarkedSet::from_polynomials(&kt, &Vars::xyz(), order_ideal_12(), &smoothing_generators_signed(k, b, 1)?)
}

/// The family `xyz + t y^2 z` for `b4 = b5 = 0`.
pub fn homogeneous_lift_family<K: Field>(k: &K, b: &[K::Elem; 3]) -> Result<MarkedSet<KT<K>>> {
    let kt = UnivariatePolynomials::new(k.clone());
    let vars = Vars::xyz();
    let zero = k.zero();
    let base = chart_x_generators(k, &[b[0].clone(), b[1].clone(), b[2].clone(), zero.clone(), zero]);
    let mut gens: Vec<Polynomial<KT<K>>> =
        base.iter().map(|p| p.map_coeffs(&kt, |e| kt.constant(e.clone()))).collect();
    gens[2].add_term(Monomial::new(&[0, 2, 1]), &kt.t());
    MarkedSet::from_polynomials(&kt, &vars, order_ideal_12(), &gens)
}

/// The four limit components of a fiber of the smoothing family.
#[derive(Clone, Debug)]
pub struct SmoothingComponents<K: Field> {
    pub components: [Vec<Polynomial<K>>; 4],
    pub supports: [[K::Elem; 3]; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComponentsReport {
    pub colengths: Vec<usize>,
    pub pairwise_comaximal: bool,
    pub intersection_matches_fiber: bool,
    pub supports_match: Vec<bool>,
    pub fiber_colength: usize,
}

impl ComponentsReport {
    pub fn passes(&self) -> bool {
        self.colengths == [7, 2, 2, 1]
            && self.pairwise_comaximal
            && self.intersection_matches_fiber
            && self.supports_match.iter().all(|&s| s)
            && self.fiber_colength == 12
    }
}

pub fn smoothing_components<K: Field>(k: &K, b: &[K::Elem; 5], t: &K::Elem) -> Result<SmoothingComponents<K>> {
    let [b1, b2, b3, b4, b5] = b;
    let disc = discriminant(k, b);
    if k.is_zero(&disc) {
        return Err(Error::DiscriminantZero);
    }
    if k.is_zero(b4) {
        return Err(Error::B4Zero);
    }
    if k.is_zero(t) {
        return Err(Error::InvalidInput("t must be nonzero".into()));
    }
    let vars = Vars::xyz();
    let (x, y, z) = (var(k, &vars, 0), var(k, &vars, 1), var(k, &vars, 2));
    let cst = |e: &K::Elem| c(k, &vars, e);
    let u = k.sub(&k.mul(b3, b4), &k.mul(b2, b5));
    let t2 = k.mul(t, t);
    let s1 = k.mul(b4, &t2);
    let s2 = k.div(&k.mul(&k.mul(&k.pow(b4, 3), &u), &t2), &disc).unwrap();
    let bt = k.mul(b4, t);

    let xs = &x - &cst(&s1);
    let p1 = vec![
        &xs * &xs,
        &y * &y,
        sum(k, &vars, vec![&(&cst(&u) * &y) * &z, (&cst(&k.neg(&k.mul(b3, b5))) * &z.pow(2)), &cst(&k.neg(&k.pow(b5, 2))) * &xs]),
        &(&(&cst(b3) * &y) * &z.pow(2)) + &(&(&cst(b5) * &y) * &xs),
        sum(
            k,
            &vars,
            vec![
                &(&cst(b2) * &y) * &z.pow(2),
                &cst(b3) * &z.pow(3),
                &(&(&cst(b4) * &y) + &(&cst(b5) * &z)) * &xs,
            ],
        ),
        &xs * &z.pow(2),
        &(&xs * &y) * &z,
        &y * &z.pow(3),
        z.pow(4),
    ];

    let xs2 = &x - &cst(&s2);
    let lin = &(&cst(b4) * &y) + &(&cst(b5) * &z);
    let coef_z = k.add(&k.mul(b4, &u), &k.mul(b1, &k.pow(b5, 2)));
    let g3 = sum(
        k,
        &vars,
        vec![
            &xs2 * &(&(&cst(&k.pow(b5, 2)) * &y) + &(&cst(&coef_z) * &z)),
            &cst(&k.div(&k.mul(&k.mul(&k.pow(b4, 3), &k.pow(b5, 2)), &k.mul(&u, &t2)), &disc).unwrap()) * &y,
            &cst(&k.div(&k.mul(&k.mul(&k.pow(b4, 2), &k.pow(b5, 3)), &k.mul(&u, &t2)), &disc).unwrap()) * &z,
        ],
    );
    let p2 = vec![xs2.clone(), lin, g3, &y * &y, &y * &z, &z * &z];

    let ys = &y - &cst(&bt);
    let w = k.sub(&k.mul(b1, b4), b5);
    let p3 = vec![
        x.clone(),
        &(&cst(&k.mul(&k.from_int(2), b4)) * &ys) + &(&cst(&w) * &z),
        &(&(&(&int(k, &vars, 2) * &y) + &(&cst(b1) * &z)) * &ys) + &(&cst(&k.mul(&w, t)) * &z),
        &ys * &z,
        &z * &z,
    ];

    let p4 = vec![x.clone(), &y + &cst(&bt), z.clone()];
    let zero = k.zero();
    Ok(SmoothingComponents {
        components: [p1, p2, p3, p4],
        supports: [
            [s1, zero.clone(), zero.clone()],
            [s2, zero.clone(), zero.clone()],
            [zero.clone(), bt.clone(), zero.clone()],
            [zero.clone(), k.neg(&bt), zero],
        ],
    })
}

/// Checks the components against the fiber of the smoothing family at `t`.
pub fn verify_components<K: Field>(k: &K, b: &[K::Elem; 5], t: &K::Elem) -> Result<ComponentsReport> {
    let comps = smoothing_components(k, b, t)?;
    let fiber: Vec<Polynomial<K>> = smoothing_generators(k, b)?.iter().map(|p| p.specialize_t(t)).collect();
    let colengths = comps
        .components
        .iter()
        .map(|p| groebner::oracle_colength(p).map(|c| c.finite().unwrap_or(usize::MAX)))
        .collect::<Result<Vec<_>>>()?;
    let mut comaximal = true;
    for i in 0..4 {
        for j in i + 1..4 {
            let mut both = comps.components[i].clone();
            both.extend(comps.components[j].iter().cloned());
            comaximal &= groebner::degrevlex_basis(&both)?.is_unit_ideal();
        }
    }
    let inter = groebner::intersect_all(&comps.components)?;
    let intersection_matches_fiber = groebner::ideal_equal(&inter, &fiber)?;
    let supports_match = comps
        .components
        .iter()
        .zip(&comps.supports)
        .zip(&colengths)
        .map(|((p, s), &d)| groebner::support_check(p, s, d as u32))
        .collect::<Result<Vec<_>>>()?;
    let fiber_colength = groebner::oracle_colength(&fiber)?.finite().unwrap_or(usize::MAX);
    Ok(ComponentsReport { colengths, pairwise_comaximal: comaximal, intersection_matches_fiber, supports_match, fiber_colength })
}

/// Intersects an ideal with the maximal ideals of distinct points outside
/// its zero set.
pub fn disjoint_union<K: Field>(gens: &[Polynomial<K>], points: &[Vec<K::Elem>]) -> Result<Vec<Polynomial<K>>> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidInput("empty generator list".into()));
    };
    let (k, vars) = (first.ring().clone(), first.vars().clone());
    for (i, p) in points.iter().enumerate() {
        let name = format!("{:?}", p.iter().map(|e| k.format_elem(e)).collect::<Vec<_>>());
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint(name));
        }
        let vanish = gens.iter().map(|g| g.evaluate(p)).collect::<Result<Vec<_>>>()?;
        if vanish.iter().all(|e| k.is_zero(e)) {
            return Err(Error::PointInSupport(name));
        }
    }
    let mut acc = gens.to_vec();
    for p in points {
        acc = groebner::intersect(&acc, &groebner::point_ideal(&k, &vars, p))?;
    }
    Ok(acc)
}

/// Generators of the length 78 example.
pub fn length78_generators<K: Field>(k: &K) -> Vec<Polynomial<K>> {
    [
        "y^2*z^4",
        "x^2*z^4 + z^6",
        "y^3*z^3",
        "x^3*z^3",
        "x*y^3*z^2",
        "x*y^4*z + x^3*y*z^2 - y^2*z^3",
        "x^4*y*z - z^6 + y^3*z^2",
        "x^3*y^3 - x^2*y*z^2 - y*z^4",
        "x^5*z + x^3*y^2*z + x*y*z^4 - x^2*z^3 - z^5",
        "y^6 + x^4*z^2 + x*y^2*z^3 + x*z^5",
        "x^6 - y^4*z - x*z^4",
        "y^5*z^2 + x*y*z^5",
        "x^2*y^5 + x*y*z^5 + z^7",
        "x^5*y^2 + x^3*y^2*z^2 + x*y*z^5 + x^2*y^4 - y^4*z^2 + z^6 - x*y^2*z^2",
    ]
    .iter()
    .map(|s| parse_polynomial(s, k, &Vars::xyz()).expect("fixed generator"))
    .collect()
}

/// True when every generator is homogeneous for the given integer weights of
/// the variables.
pub fn multigrading_check<K: Ring>(gens: &[Polynomial<K>], weights: &[Vec<i64>]) -> bool {
    let degree = |m: &Monomial| -> Vec<i64> {
        let dim = weights.first().map_or(0, |w| w.len());
        (0..dim).map(|j| weights.iter().enumerate().map(|(i, w)| w[j] * m.exp(i) as i64).sum()).collect()
    };
    gens.iter().all(|g| {
        let mut degs = g.support().map(&degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    })
}

/// The ten first-order families spanning the image of the differential of
/// the parametrization at `l = x`, `b0 = 1`: two for the linear form, five for
/// `v` and three translations.
pub fn closed_immersion_vectors<K: Field>(k: &K, b: &[K::Elem; 5]) -> Result<Vec<MarkedSet<DualNumbers<K>>>> {
    let f = counterexample_marked_basis(k, b)?;
    let vars = Vars::xyz();
    let [b1, b2, b3, b4, b5] = b;
    let m = |e: &[u32]| Monomial::new(e);
    let t = |coef: K::Elem, e: &[u32]| Polynomial::term(k, &vars, m(e), coef);
    let n = |v: i64, e: &[u32]| t(k.from_int(v), e);
    let (x2, xy2, xyz, xz2, y2z2, yz3, z4, y3) =
        (m(&[2, 0, 0]), m(&[1, 2, 0]), m(&[1, 1, 1]), m(&[1, 0, 2]), m(&[0, 2, 2]), m(&[0, 1, 3]), m(&[0, 0, 4]), m(&[0, 3, 0]));
    let s = |parts: Vec<Polynomial<K>>| sum(k, &vars, parts);
    let lists: Vec<Vec<(Monomial, Polynomial<K>)>> = vec![
        vec![
            (x2, n(2, &[1, 1, 0])),
            (xy2, n(1, &[0, 3, 0])),
            (xyz, n(1, &[0, 2, 1])),
            (xz2, n(1, &[0, 1, 2])),
            (y3, s(vec![t(b4.clone(), &[0, 2, 0]), t(b5.clone(), &[0, 1, 1])])),
        ],
        vec![
            (x2, n(2, &[1, 0, 1])),
            (xy2, n(1, &[0, 2, 1])),
            (xyz, n(1, &[0, 1, 2])),
            (xz2, n(1, &[0, 0, 3])),
            (y3, s(vec![t(b4.clone(), &[0, 1, 1]), t(b5.clone(), &[0, 0, 2])])),
        ],
        vec![(y3, n(1, &[0, 2, 1]))],
        vec![(y3, n(1, &[0, 1, 2]))],
        vec![(y3, n(1, &[0, 0, 3]))],
        vec![(y3, n(1, &[1, 1, 0]))],
        vec![(y3, n(1, &[1, 0, 1]))],
        vec![
            (x2, n(2, &[1, 0, 0])),
            (xy2, n(1, &[0, 2, 0])),
            (xyz, n(1, &[0, 1, 1])),
            (xz2, n(1, &[0, 0, 2])),
            (y3, s(vec![t(b4.clone(), &[0, 1, 0]), t(b5.clone(), &[0, 0, 1])])),
        ],
        vec![
            (xy2, n(2, &[1, 1, 0])),
            (xyz, n(1, &[1, 0, 1])),
            (y2z2, n(2, &[0, 1, 2])),
            (yz3, n(1, &[0, 0, 3])),
            (
                y3,
                s(vec![
                    n(3, &[0, 2, 0]),
                    t(k.mul(&k.from_int(2), b1), &[0, 1, 1]),
                    t(b2.clone(), &[0, 0, 2]),
                    t(b4.clone(), &[1, 0, 0]),
                ]),
            ),
        ],
        vec![
            (xyz, n(1, &[1, 1, 0])),
            (xz2, n(2, &[1, 0, 1])),
            (y2z2, n(2, &[0, 2, 1])),
            (yz3, n(3, &[0, 1, 2])),
            (z4, n(4, &[0, 0, 3])),
            (
                y3,
                s(vec![
                    t(b1.clone(), &[0, 2, 0]),
                    t(k.mul(&k.from_int(2), b2), &[0, 1, 1]),
                    t(k.mul(&k.from_int(3), b3), &[0, 0, 2]),
                    t(b5.clone(), &[1, 0, 0]),
                ]),
            ),
        ],
    ];
    lists.iter().map(|eps| first_order_from_generators(&f, eps)).collect()
}

/// Colength via the oracle, failing for ideals that are not zero-dimensional.
pub fn colength<K: Field>(gens: &[Polynomial<K>]) -> Result<usize> {
    match groebner::oracle_colength(gens)? {
        Colength::Finite(d) => Ok(d),
        Colength::Infinite => Err(Error::NotZeroDimensional),
    }
}

/// The order ideal `{1, x}` in `k[x, y]`.
pub fn two_variable_order_ideal() -> OrderIdeal {
    OrderIdeal::from_exponents(2, &[vec![0, 0], vec![1, 0]]).expect("division closed")
}

/// The marked set `x^2 + c1 x + c2, xy + c3 x + c4, y + c5 x + c6` over any
/// coefficient ring.
pub fn two_variable_marked_set<R: Ring>(r: &R, c: &[R::Elem; 6]) -> Result<MarkedSet<R>> {
    let vars = Vars::new(&["x", "y"])?;
    let m = |e: [u32; 2]| Monomial::new(&e);
    let poly = |head: [u32; 2], a: &R::Elem, b: &R::Elem| {
        Polynomial::from_terms(r, &vars, [(m(head), r.one()), (m([1, 0]), a.clone()), (m([0, 0]), b.clone())])
    };
    let gens = [poly([2, 0], &c[0], &c[1]), poly([1, 1], &c[2], &c[3]), poly([0, 1], &c[4], &c[5])];
    MarkedSet::from_polynomials(r, &vars, two_variable_order_ideal(), &gens)
}

/// The conditions on `c1, ..., c6` for the two-variable marked set to be a
/// marked basis: every coefficient of every criterion normal form, computed
/// over `Q[c1, ..., c6]`.
pub fn two_variable_conditions() -> Result<Vec<Polynomial<crate::ring::Rationals>>> {
    use crate::poly::PolynomialRing;
    let params = Vars::new(&["c1", "c2", "c3", "c4", "c5", "c6"])?;
    let pr = PolynomialRing::new(crate::ring::Rationals, params);
    let c: [Polynomial<_>; 6] = std::array::from_fn(|i| pr.var(i));
    let f = two_variable_marked_set(&pr, &c)?;
    let mut out = Vec::new();
    for nf in f.criterion_normal_forms(crate::marked::Strategy::Largest)? {
        out.extend(nf.terms().map(|(_, e)| e.clone()));
    }
    Ok(out)
}

/// Nonzero rows of the tangent system of the two-variable marked set, with
/// columns ordered `(x^2: x, 1), (xy: x, 1), (y: x, 1)`.
pub fn two_variable_tangent_rows<K: Field>(f: &MarkedSet<K>) -> Result<Vec<Vec<K::Elem>>> {
    let sys = crate::tangent::build_tangent_system(f)?;
    let basis = f.staircase().basis_monomials();
    let mut order = Vec::with_capacity(6);
    for h in [[2, 0], [1, 1], [0, 1]] {
        let hi = f.heads().iter().position(|m| *m == Monomial::new(&h)).ok_or_else(|| Error::NotABasis("not the two-variable staircase".into()))?;
        for t in [[1u32, 0], [0, 0]] {
            let ti = basis.iter().position(|m| *m == Monomial::new(&t)).ok_or_else(|| Error::NotABasis("not the two-variable staircase".into()))?;
            order.push(sys.unknown_index(hi, ti));
        }
    }
    let k = f.ring();
    Ok(sys
        .rows()
        .iter()
        .filter(|r| r.iter().any(|e| !k.is_zero(e)))
        .map(|r| order.iter().map(|&i| r[i].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Rationals};
    use num_rational::BigRational;

    fn b(v: [(i64, i64); 5]) -> [BigRational; 5] {
        v.map(|(n, d)| rat(n, d))
    }

    fn figure1() -> [BigRational; 5] {
        b([(0, 1), (-1, 2), (0, 1), (1, 1), (1, 1)])
    }

    #[test]
    fn discriminant_values() {
        let k = Rationals;
        assert_eq!(discriminant(&k, &b([(0, 1), (0, 1), (0, 1), (0, 1), (-1, 1)])), rat(1, 1));
        assert_eq!(discriminant(&k, &figure1()), rat(-1, 2));
        assert_eq!(discriminant(&k, &b([(3, 1), (5, 1), (7, 1), (0, 1), (0, 1)])), rat(0, 1));
        let r = b([(2, 3), (-5, 7), (1, 1), (4, 1), (-3, 2)]);
        assert_eq!(discriminant(&k, &r), discriminant_factored(&k, &r));
    }

    #[test]
    fn baby_example_generators() {
        let k = Rationals;
        let p = CounterexampleParams {
            chart: Chart::X,
            a: [rat(0, 1), rat(0, 1)],
            b: [rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1)],
        };
        let gens = counterexample_generators(&k, &p).unwrap();
        let expected: Vec<Polynomial<Rationals>> =
            ["x^2", "x*y^2", "x*y*z", "x*z^2", "y^2*z^2", "y*z^3", "z^4", "y^3 - x*z"]
                .iter()
                .map(|s| parse_polynomial(s, &k, &Vars::xyz()).unwrap())
                .collect();
        assert!(groebner::ideal_equal(&gens, &expected).unwrap());
        assert_eq!(colength(&gens).unwrap(), 12);
        let f = counterexample_marked_basis(&k, &b([(0, 1), (0, 1), (0, 1), (0, 1), (-1, 1)])).unwrap();
        assert!(f.is_marked_basis().unwrap());
        assert_eq!(f.colength().unwrap(), 12);
    }

    #[test]
    fn smoothing_sign_is_forced() {
        let k = Rationals;
        assert!(smoothing_family(&k, &figure1()).unwrap().is_marked_basis().unwrap());
        assert!(!smoothing_family_other_sign(&k, &figure1()).unwrap().is_marked_basis().unwrap());
    }

    #[test]
    fn grading() {
        let k = Rationals;
        let gens = chart_x_generators(&k, &b([(0, 1), (0, 1), (0, 1), (0, 1), (-1, 1)]));
        assert!(multigrading_check(&gens, &[vec![3, 0], vec![1, 1], vec![0, 3]]));
        assert!(!multigrading_check(&gens, &[vec![1], vec![1], vec![1]]));
    }
}

