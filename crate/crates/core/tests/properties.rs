use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use marked_tangent::families::*;
use marked_tangent::groebner;
use marked_tangent::linalg::rank;
use marked_tangent::marked::{MarkedSet, Strategy as Reduction};
use marked_tangent::monomial::{degrevlex, Monomial};
use marked_tangent::monomial_ideal::*;
use marked_tangent::poly::{Polynomial, Vars};
use marked_tangent::ring::*;
use marked_tangent::sampling::{random_cluster_ideal, random_marked_basis};
use marked_tangent::tangent::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn small_q() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn check_axioms<R: Ring>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) {
    assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
    assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
    assert_eq!(r.mul(a, b), r.mul(b, a));
    assert_eq!(r.add(a, &r.neg(a)), r.zero());
    assert_eq!(r.mul(a, &r.one()), *a);
    assert!(!r.is_one(&r.zero()));
}

fn poly(vars: &Vars, coeffs: &[(u32, u32, u32, BigRational)]) -> Polynomial<Rationals> {
    let mut p = Polynomial::zero(&Rationals, vars);
    for (a, b, c, e) in coeffs {
        p.add_term(Monomial::new(&[*a, *b, *c]), e);
    }
    p
}

fn poly3() -> impl Strategy<Value = Polynomial<Rationals>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, small_q()), 0..6).prop_map(|t| poly(&Vars::xyz(), &t))
}

fn matrix3() -> impl Strategy<Value = Vec<Vec<BigRational>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(|n| rat(n, 1)).collect()).collect())
        .prop_filter("invertible", |m: &Vec<Vec<BigRational>>| rank(&Rationals, m.clone()) == 3)
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

/// The order ideal generated by divisors of a few monomials.
fn order_ideal(max: usize) -> impl Strategy<Value = OrderIdeal> {
    prop::collection::vec((0u32..4, 0u32..4, 0u32..4), 1..4).prop_filter_map("too large", move |tops| {
        let mut set = BTreeSet::new();
        for (a, b, c) in tops {
            for i in 0..=a {
                for j in 0..=b {
                    for k in 0..=c {
                        set.insert(Monomial::new(&[i, j, k]));
                    }
                }
            }
        }
        (set.len() <= max).then(|| OrderIdeal::new(3, set).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rational_axioms(a in q(), b in q(), c in q()) {
        check_axioms(&Rationals, &a, &b, &c);
    }

    #[test]
    fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
        let k = PrimeField::new(32003).unwrap();
        check_axioms(&k, &a, &b, &c);
        if a != 0 {
            prop_assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), 1);
        }
        let two = PrimeField::new(2).unwrap();
        check_axioms(&two, &(a % 2), &(b % 2), &(c % 2));
    }

    #[test]
    fn dual_number_axioms(v in prop::collection::vec(q(), 6)) {
        let d = DualNumbers::new(Rationals);
        let [a, b, c] = [0, 2, 4].map(|i| d.make(v[i].clone(), v[i + 1].clone()));
        check_axioms(&d, &a, &b, &c);
        let e = d.pure_eps(rat(1, 1));
        prop_assert!(d.is_zero(&d.mul(&e, &e)));
    }

    #[test]
    fn univariate_axioms(v in prop::collection::vec(prop::collection::vec(small_q(), 0..4), 3)) {
        let kt = UnivariatePolynomials::new(Rationals);
        let elems: Vec<_> = v
            .iter()
            .map(|cs| cs.iter().enumerate().fold(kt.zero(), |acc, (i, c)| kt.add(&acc, &kt.monomial(c.clone(), i))))
            .collect();
        check_axioms(&kt, &elems[0], &elems[1], &elems[2]);
    }

    #[test]
    fn polynomial_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!(a.terms().all(|(_, e)| !Rationals.is_zero(e)));
    }

    #[test]
    fn linear_changes_compose(p in poly3(), m1 in matrix3(), m2 in matrix3()) {
        let two_steps = p.apply_linear_change(&m1).unwrap().apply_linear_change(&m2).unwrap();
        prop_assert_eq!(two_steps, p.apply_linear_change(&matmul(&m2, &m1)).unwrap());
    }

    #[test]
    fn pure_eps_products_vanish(a in poly3(), b in poly3()) {
        let d = DualNumbers::new(Rationals);
        let lift = |p: &Polynomial<Rationals>| p.map_coeffs(&d, |c| d.pure_eps(c.clone()));
        prop_assert!((&lift(&a) * &lift(&b)).is_zero());
    }

    #[test]
    fn specialization_is_a_homomorphism(a in poly3(), b in poly3(), v in small_q()) {
        let keep = Vars::new(&["x", "y"]).unwrap();
        let at: BTreeMap<String, BigRational> = [("z".to_string(), v)].into();
        let s = |p: &Polynomial<Rationals>| p.specialize(&at, &keep).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn degrevlex_is_a_monomial_order(a in prop::collection::vec(0u32..5, 3), b in prop::collection::vec(0u32..5, 3), c in prop::collection::vec(0u32..5, 3)) {
        let (a, b, c) = (Monomial::new(&a), Monomial::new(&b), Monomial::new(&c));
        prop_assert_eq!(degrevlex(&a, &b), degrevlex(&a.mul(&c), &b.mul(&c)));
        prop_assert_ne!(degrevlex(&Monomial::one(), &a), Ordering::Greater);
        prop_assert_eq!(degrevlex(&a, &b) == Ordering::Equal, a == b);
    }

    #[test]
    fn complement_ideals(n in order_ideal(30)) {
        let j = complement_ideal(&n);
        prop_assert!(j.has_finite_colength());
        prop_assert_eq!(j.colength().unwrap(), n.len());
        prop_assert_eq!(&j.standard_monomials().unwrap(), &n);
        prop_assert!(is_quasi_stable(&j));
        let p = pommaret_basis(&j).unwrap();
        let bound = j.max_generator_degree() + 3;
        prop_assert!(p.verify_partition(bound));
        prop_assert!(j.generators().iter().all(|g| p.generators().contains(g)));
        for d in 0..=bound {
            prop_assert_eq!(p.count_in_degree(d), j.count_in_degree(d));
        }
    }
}

fn random_basis(seed: u64, d: usize) -> MarkedSet<Rationals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_marked_basis(&mut rng, &Vars::xyz(), d, None, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn reduction_matches_oracle(seed in any::<u64>(), d in 1usize..=8, g in poly3()) {
        let f = random_basis(seed, d);
        let gens = f.polynomials();
        prop_assert_eq!(groebner::oracle_colength(&gens).unwrap().finite(), Some(f.colength().unwrap()));
        let product = (&g * &gens[seed as usize % gens.len()]).try_add(&gens[0]).unwrap();
        for h in [&g, &product] {
            prop_assert_eq!(f.reduce(h).unwrap().is_zero(), groebner::membership(h, &gens).unwrap());
        }
    }

    #[test]
    fn criterion_verdict_ignores_strategy(seed in any::<u64>(), d in 1usize..=6, bump in small_q()) {
        let f = random_basis(seed, d);
        prop_assert!(f.criterion_with(Reduction::Random(seed)).unwrap().is_none());
        // perturbing one tail coefficient usually breaks the basis
        let mut tails = f.tails().to_vec();
        let i = seed as usize % tails.len();
        tails[i].add_term(Monomial::one(), &bump);
        let g = f.with_tails(tails).unwrap();
        let verdict = g.is_marked_basis().unwrap();
        for s in 0..3 {
            prop_assert_eq!(g.criterion_with(Reduction::Random(seed ^ s)).unwrap().is_none(), verdict);
        }
    }

    #[test]
    fn eps_parts_are_linear(seed in any::<u64>(), d in 1usize..=5) {
        let f = random_basis(seed, d);
        let k = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = f.len() * d;
        let t1: Vec<BigRational> = (0..n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
        let t2: Vec<BigRational> = (0..n).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
        let sum: Vec<BigRational> = t1.iter().zip(&t2).map(|(a, b)| a + b).collect();
        let eps = |t: &[BigRational]| -> Vec<Polynomial<Rationals>> {
            let g = instantiate(&f, t).unwrap();
            g.criterion_normal_forms(Reduction::Largest).unwrap().iter().map(|p| p.map_coeffs(&k, |c| c.eps.clone())).collect()
        };
        let (a, b, c) = (eps(&t1), eps(&t2), eps(&sum));
        for i in 0..a.len() {
            prop_assert_eq!(&(&a[i] + &b[i]), &c[i]);
        }
    }

    #[test]
    fn superposition_matches_fast_system(seed in any::<u64>(), d in 1usize..=6) {
        let f = random_basis(seed, d);
        let fast = build_tangent_system(&f).unwrap();
        let slow = build_tangent_system_superposition(&f).unwrap();
        prop_assert_eq!(fast.ncols(), f.len() * d);
        let r = fast.rank();
        prop_assert_eq!(r, slow.rank());
        let mut both = fast.rows().to_vec();
        both.extend(slow.rows().iter().cloned());
        prop_assert_eq!(rank(&Rationals, both), r);
    }

    #[test]
    fn kernel_vectors_are_first_order_deformations(seed in any::<u64>(), d in 1usize..=5) {
        let f = random_basis(seed, d);
        let sys = build_tangent_system(&f).unwrap();
        let basis = tangent_basis(&f).unwrap();
        prop_assert_eq!(basis.len(), sys.ncols() - sys.rank());
        for v in &basis {
            prop_assert!(instantiate(&f, v).unwrap().is_marked_basis().unwrap());
        }
        // a unit vector outside the kernel is not a deformation
        if let Some(j) = (0..sys.ncols()).find(|&j| sys.rows().iter().any(|r| !Rationals.is_zero(&r[j]))) {
            let mut e = vec![rat(0, 1); sys.ncols()];
            e[j] = rat(1, 1);
            if !sys.annihilates(&e) {
                prop_assert!(!instantiate(&f, &e).unwrap().is_marked_basis().unwrap());
            }
        }
    }

    #[test]
    fn reduced_points_are_smooth(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_cluster_ideal(&mut rng, &Vars::xyz(), d, 1).unwrap();
        let f = marked_tangent::sampling::marked_basis_from_generators(&gens).unwrap();
        prop_assert_eq!(tangent_dimension(&f, &RankOptions::default()).unwrap().dim, 3 * d);
    }

    #[test]
    fn intersection_is_commutative_and_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vars = Vars::xyz();
        let [a, b, c] = [1, 2, 2].map(|d| random_cluster_ideal(&mut rng, &vars, d, 2).unwrap());
        let ab = groebner::intersect(&a, &b).unwrap();
        prop_assert!(groebner::ideal_equal(&ab, &groebner::intersect(&b, &a).unwrap()).unwrap());
        let left = groebner::intersect(&ab, &c).unwrap();
        let right = groebner::intersect(&a, &groebner::intersect(&b, &c).unwrap()).unwrap();
        prop_assert!(groebner::ideal_equal(&left, &right).unwrap());
    }
}

fn b5() -> impl Strategy<Value = [BigRational; 5]> {
    prop::array::uniform5(small_q())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10, ..ProptestConfig::default() })]

    #[test]
    fn counterexample_rank_window(b in b5()) {
        prop_assume!(b.iter().any(|e| !Rationals.is_zero(e)));
        let f = counterexample_marked_basis(&Rationals, &b).unwrap();
        let sys = build_tangent_system(&f).unwrap();
        let r = sys.rank();
        prop_assert!((42..=51).contains(&r), "rank {}", r);
        for p in random_primes(r as u64, 2) {
            if let Some(m) = modular_rank(&f, p).unwrap() {
                prop_assert_eq!(m, r);
            }
        }
    }

    #[test]
    fn smoothing_family_is_flat(b in b5()) {
        let k = Rationals;
        prop_assume!(!k.is_zero(&discriminant(&k, &b)));
        prop_assert!(smoothing_family(&k, &b).unwrap().is_marked_basis().unwrap());
        let at0: Vec<_> = smoothing_generators(&k, &b).unwrap().iter().map(|p| p.specialize_t(&rat(0, 1))).collect();
        prop_assert_eq!(at0, chart_x_generators(&k, &b));
    }

    #[test]
    fn smoothing_fibers_split(b in b5(), t in small_q()) {
        let k = Rationals;
        prop_assume!(!k.is_zero(&discriminant(&k, &b)) && !k.is_zero(&b[3]) && !k.is_zero(&t));
        let rep = verify_components(&k, &b, &t).unwrap();
        prop_assert!(rep.passes(), "{:?}", rep);
    }

    #[test]
    fn every_chart_has_colength_12(chart in prop_oneof![Just(Chart::X), Just(Chart::Y), Just(Chart::Z)], a in prop::array::uniform2(small_q()), b in prop::array::uniform6(small_q())) {
        let k = Rationals;
        prop_assume!(b.iter().any(|e| !k.is_zero(e)));
        let gens = counterexample_generators(&k, &CounterexampleParams { chart, a, b }).unwrap();
        prop_assert_eq!(groebner::oracle_colength(&gens).unwrap().finite(), Some(12));
    }
}
