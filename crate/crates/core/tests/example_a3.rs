use marked_tangent::families::{two_variable_conditions, two_variable_marked_set, two_variable_tangent_rows};
use marked_tangent::groebner;
use marked_tangent::linalg::rank;
use marked_tangent::poly::{parse_polynomial, Vars};
use marked_tangent::ring::{rat, Rationals};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params() -> Vars {
    Vars::new(&["c1", "c2", "c3", "c4", "c5", "c6"]).unwrap()
}

#[test]
fn conditions_are_exactly_the_two_equations() {
    let conds = two_variable_conditions().unwrap();
    let expected: Vec<_> = ["c3 - c6 + c1*c5", "c4 + c2*c5"]
        .iter()
        .map(|s| parse_polynomial(s, &Rationals, &params()).unwrap())
        .collect();
    assert!(groebner::ideal_equal(&conds, &expected).unwrap());
    // each of the two equations shows up verbatim, up to sign
    for e in &expected {
        assert!(conds.iter().any(|c| c == e || *c == -e), "missing condition {e}");
    }
}

fn sample(rng: &mut ChaCha8Rng) -> [BigRational; 6] {
    let mut r = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
    let (c1, c2, c5, c6) = (r(), r(), r(), r());
    let c3 = &c6 - &c1 * &c5;
    let c4 = -(&c2 * &c5);
    [c1, c2, c3, c4, c5, c6]
}

#[test]
fn tangent_rows_match_displayed_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = Rationals;
    for _ in 0..10 {
        let c = sample(&mut rng);
        let f = two_variable_marked_set(&k, &c).unwrap();
        assert!(f.is_marked_basis().unwrap());
        let rows = two_variable_tangent_rows(&f).unwrap();
        let z = || rat(0, 1);
        let one = || rat(1, 1);
        let shown = [
            vec![z(), c[4].clone(), z(), one(), c[1].clone(), z()],
            vec![c[4].clone(), z(), one(), z(), c[0].clone(), -one()],
        ];
        let proportional = |a: &[BigRational], b: &[BigRational]| rank(&k, vec![a.to_vec(), b.to_vec()]) == 1;
        for s in &shown {
            assert!(rows.iter().any(|r| proportional(r, s)), "row {s:?} missing from {rows:?}");
        }
        let mut both = rows.clone();
        both.extend(shown.iter().cloned());
        assert_eq!(rank(&k, rows.clone()), 2);
        assert_eq!(rank(&k, both), 2);
    }
}
