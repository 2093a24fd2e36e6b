use marked_tangent::families::*;
use marked_tangent::groebner;
use marked_tangent::marked::MarkedSet;
use marked_tangent::poly::Vars;
use marked_tangent::ring::{rat, PrimeField, Rationals, Ring};
use marked_tangent::tangent::{
    build_tangent_system, tangent_dimension, tangent_vectors_rank, Parity, RankMethod, RankOptions,
};
use num_rational::BigRational;

fn b5(v: [i64; 5]) -> [BigRational; 5] {
    v.map(|n| rat(n, 1))
}

fn dim(f: &MarkedSet<Rationals>) -> usize {
    tangent_dimension(f, &RankOptions::default()).unwrap().dim
}

#[test]
fn eq12_dimension_45() {
    let f = counterexample_marked_basis(&Rationals, &b5([0, 0, 0, 0, -1])).unwrap();
    let rep = tangent_dimension(&f, &RankOptions::default()).unwrap();
    assert_eq!((rep.d, rep.unknowns, rep.rank, rep.dim), (12, 96, 51, 45));
    assert_eq!(rep.parity, Parity::Fails);
    assert_eq!(rep.rank_method, RankMethod::ExactRational);
    assert_eq!(build_tangent_system(&f).unwrap().pairs().len(), 12);
}

#[test]
fn tangent_table() {
    // b4 = b5 = 0
    for b in [[0, 0, 0, 0, 0], [1, 2, 3, 0, 0], [0, 0, 1, 0, 0]] {
        assert_eq!(dim(&counterexample_marked_basis(&Rationals, &b5(b)).unwrap()), 54, "{b:?}");
    }
    // discriminant zero, (b4, b5) nonzero
    for b in [[0, 0, 0, 1, 0], [5, 7, 0, 1, 0], [1, 0, 0, 1, 1], [1, 2, 2, 1, 1]] {
        let bb = b5(b);
        assert_eq!(discriminant(&Rationals, &bb), rat(0, 1));
        assert_eq!(dim(&counterexample_marked_basis(&Rationals, &bb).unwrap()), 48, "{b:?}");
    }
    for b in [[0, 0, 0, 0, -1], [1, 2, 3, 4, 5], [0, 0, 1, 1, 0], [-2, 1, 1, 3, 1]] {
        let bb = b5(b);
        assert_ne!(discriminant(&Rationals, &bb), rat(0, 1));
        assert_eq!(dim(&counterexample_marked_basis(&Rationals, &bb).unwrap()), 45, "{b:?}");
    }
}

#[test]
fn characteristic_two() {
    let k = PrimeField::new(2).unwrap();
    let b = [0, 0, 0, 0, 1].map(|n| k.from_int(n));
    let f = counterexample_marked_basis(&k, &b).unwrap();
    let rep = tangent_dimension(&f, &RankOptions::default()).unwrap();
    assert_eq!((rep.rank, rep.dim), (50, 46));
    assert_eq!(rep.parity, Parity::Holds);
    assert_eq!(rep.rank_method, RankMethod::ExactPrimeField);
}

#[test]
fn closed_immersion_rank_10() {
    for b in [[0, 0, 0, 0, -1], [1, 2, 3, 4, 5]] {
        let fams = closed_immersion_vectors(&Rationals, &b5(b)).unwrap();
        assert_eq!(fams.len(), 10);
        assert_eq!(tangent_vectors_rank(&fams).unwrap(), 10);
    }
}

#[test]
fn smoothing_components_figure1() {
    let b = [rat(0, 1), rat(-1, 2), rat(0, 1), rat(1, 1), rat(1, 1)];
    let rep = verify_components(&Rationals, &b, &rat(1, 1)).unwrap();
    assert_eq!(rep.colengths, vec![7, 2, 2, 1]);
    assert!(rep.passes(), "{rep:?}");
    let comps = smoothing_components(&Rationals, &b, &rat(1, 1)).unwrap();
    assert_eq!(comps.supports[1][0], rat(-1, 1));
}

#[test]
fn smoothing_family_flat() {
    for b in [[0, 0, 0, 0, -1], [1, 2, 3, 4, 5], [0, 0, 1, 1, 0]] {
        assert!(smoothing_family(&Rationals, &b5(b)).unwrap().is_marked_basis().unwrap());
    }
    assert!(homogeneous_lift_family(&Rationals, &[rat(1, 1), rat(2, 1), rat(3, 1)]).unwrap().is_marked_basis().unwrap());
    assert!(matches!(
        smoothing_family(&Rationals, &b5([0, 0, 0, 1, 0])),
        Err(marked_tangent::Error::DiscriminantZero)
    ));
}

#[test]
fn components_preconditions() {
    let k = Rationals;
    assert!(matches!(smoothing_components(&k, &b5([0, 0, 0, 0, -1]), &rat(1, 1)), Err(marked_tangent::Error::B4Zero)));
    assert!(matches!(smoothing_components(&k, &b5([0, 0, 0, 1, 0]), &rat(1, 1)), Err(marked_tangent::Error::DiscriminantZero)));
}

#[test]
fn complement_independence() {
    let k = Rationals;
    let q = |v: [i64; 3]| v.map(|n| rat(n, 1));
    let b = [1, 2, -1, 3, 1, 2].map(|n| rat(n, 1));
    let l = q([1, 0, 0]);
    let ok = lambda_invariance_check(&k, &l, [&q([0, 1, 0]), &q([0, 0, 1])], [&q([1, 1, 0]), &q([-2, 0, 1])], &b).unwrap();
    assert!(ok);
    assert!(matches!(
        lambda_invariance_check(&k, &l, [&q([0, 1, 0]), &q([0, 0, 1])], [&q([1, 1, 0]), &q([1, 0, 0])], &b),
        Err(marked_tangent::Error::DegenerateComplement)
    ));
}

#[test]
fn linear_change_matches_chart() {
    let k = Rationals;
    let b = b5([1, 2, 3, 4, 5]);
    let base = chart_x_generators(&k, &b);
    // x -> x + y
    let m = vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)], vec![rat(1, 1), rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1), rat(1, 1)]];
    let moved: Vec<_> = base.iter().map(|p| p.apply_linear_change(&m).unwrap()).collect();
    let mut full = vec![rat(1, 1)];
    full.extend(b.iter().cloned());
    let p = CounterexampleParams { chart: Chart::X, a: [rat(1, 1), rat(0, 1)], b: full.try_into().unwrap() };
    let direct = counterexample_generators(&k, &p).unwrap();
    assert!(groebner::ideal_equal(&moved, &direct).unwrap());
    assert_eq!(colength(&direct).unwrap(), 12);
}

#[test]
fn union_with_points() {
    let k = Rationals;
    let gens = chart_x_generators(&k, &b5([0, 0, 0, 0, -1]));
    let pts = vec![vec![rat(1, 1), rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(2, 1), rat(3, 1)]];
    let u = disjoint_union(&gens, &pts).unwrap();
    assert_eq!(colength(&u).unwrap(), 14);
    let origin = vec![rat(0, 1), rat(0, 1), rat(0, 1)];
    assert!(matches!(disjoint_union(&gens, &[origin]), Err(marked_tangent::Error::PointInSupport(_))));
    assert!(matches!(
        disjoint_union(&gens, &[pts[0].clone(), pts[0].clone()]),
        Err(marked_tangent::Error::DuplicatePoint(_))
    ));
    let _ = Vars::xyz();
}

#[test]
fn length78_grading_and_colength() {
    let gens = length78_generators(&Rationals);
    assert_eq!(gens.len(), 14);
    assert_eq!(colength(&gens).unwrap(), 78);
}

#[test]
fn length78_tangent_263() {
    let gens = length78_generators(&Rationals);
    let f = marked_tangent::sampling::marked_basis_from_generators(&gens).unwrap();
    assert_eq!(f.colength().unwrap(), 78);
    let rep = tangent_dimension(&f, &RankOptions::default()).unwrap();
    assert_eq!(rep.dim, 263);
    assert_eq!(rep.rank_method, RankMethod::ModularConsensus);
    assert_eq!(rep.parity, Parity::Fails);
}
