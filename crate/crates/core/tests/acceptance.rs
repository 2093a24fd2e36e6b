//! One line per acceptance criterion. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use marked_tangent::families::*;
use marked_tangent::groebner;
use marked_tangent::linalg::rank;
use marked_tangent::marked::MarkedSet;
use marked_tangent::monomial::Monomial;
use marked_tangent::poly::{parse_polynomial, Polynomial, Vars};
use marked_tangent::reproduce::{figure1_b, monomial_dimensions, table_samples};
use marked_tangent::ring::{rat, PrimeField, Rationals, Ring};
use marked_tangent::sampling::{marked_basis_from_generators, order_ideals_of_size, random_cluster_ideal, random_marked_basis};
use marked_tangent::tangent::*;
use marked_tangent::Error;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), Error>;
type Criterion = (&'static str, fn() -> Outcome);

fn b5(v: [i64; 5]) -> [BigRational; 5] {
    v.map(|n| rat(n, 1))
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn eq12() -> Outcome {
    let start = Instant::now();
    let f = counterexample_marked_basis(&Rationals, &b5([0, 0, 0, 0, -1]))?;
    let d = f.colength()?;
    let rep = tangent_dimension(&f, &RankOptions::default())?;
    let took = start.elapsed();
    let ok = d == 12 && rep.dim == 45 && rep.rank_method == RankMethod::ExactRational && took < Duration::from_secs(10);
    Ok((ok, format!("colength {d}, dim {}, {:?}, {}", rep.dim, rep.rank_method, secs(took))))
}

fn stratification() -> Outcome {
    let start = Instant::now();
    let samples = table_samples(2024, 50);
    let mut counts = [0usize; 3];
    let mut bad = 0;
    for (b, expected) in &samples {
        let dim = tangent_dimension(&counterexample_marked_basis(&Rationals, b)?, &RankOptions::default())?.dim;
        bad += (dim != *expected) as usize;
        counts[[54, 48, 45].iter().position(|e| e == expected).unwrap()] += 1;
    }
    let took = start.elapsed();
    let ok = bad == 0 && samples.len() == 50 && took < Duration::from_secs(300);
    Ok((ok, format!("{} samples (54: {}, 48: {}, 45: {}), {bad} mismatches, {}", samples.len(), counts[0], counts[1], counts[2], secs(took))))
}

fn system_shape() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut lines = Vec::new();
    let mut ok = true;
    let mut tried = 0;
    while tried < 5 {
        let b: [BigRational; 5] = std::array::from_fn(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3)));
        if discriminant(&Rationals, &b) == rat(0, 1) {
            continue;
        }
        tried += 1;
        let f = counterexample_marked_basis(&Rationals, &b)?;
        let sys = build_tangent_system(&f)?;
        let r = sys.rank();
        ok &= sys.ncols() == 96 && r == 51 && sys.ncols() - r == 45;
        lines.push(format!("{}x{} nonzero {} rank {r}", sys.nrows(), sys.ncols(), sys.nonzero_rows()));
    }
    Ok((ok, format!("96 unknowns expected; {}", lines.join("; "))))
}

fn char2() -> Outcome {
    let k = PrimeField::new(2)?;
    let f = counterexample_marked_basis(&k, &[0, 0, 0, 0, 1].map(|n| k.from_int(n)))?;
    let rep = tangent_dimension(&f, &RankOptions::default())?;
    Ok((rep.dim == 46, format!("dim {} over GF(2)", rep.dim)))
}

fn length78() -> Outcome {
    let start = Instant::now();
    let f = marked_basis_from_generators(&length78_generators(&Rationals))?;
    let d = f.colength()?;
    let rep = tangent_dimension(&f, &RankOptions { seed: 78, ..RankOptions::default() })?;
    let took = start.elapsed();
    let ok = d == 78 && rep.dim == 263 && rep.rank_method == RankMethod::ModularConsensus && rep.primes.as_ref().map_or(0, Vec::len) == 3;
    Ok((ok, format!("colength {d}, dim {}, {:?} over {:?}, {}", rep.dim, rep.rank_method, rep.primes.unwrap_or_default(), secs(took))))
}

fn smoothing() -> Outcome {
    let k = Rationals;
    let b = figure1_b();
    let rep = verify_components(&k, &b, &rat(1, 1))?;
    let flat = smoothing_family(&k, &b)?.is_marked_basis()?;
    let ok = rep.passes() && rep.colengths == [7, 2, 2, 1] && rep.pairwise_comaximal && rep.intersection_matches_fiber && flat;
    Ok((ok, format!(
        "colengths {:?}, comaximal {}, intersection {}, criterion over k[t] {}",
        rep.colengths, rep.pairwise_comaximal, rep.intersection_matches_fiber, flat
    )))
}

fn immersion() -> Outcome {
    let k = Rationals;
    let mut ok = true;
    let mut parts = Vec::new();
    for b in [b5([0, 0, 0, 0, -1]), b5([1, 2, 3, 4, 5]), b5([0, 0, 0, 1, 0])] {
        let fams = closed_immersion_vectors(&k, &b)?;
        let mut flat = true;
        for g in &fams {
            flat &= g.is_marked_basis()?;
        }
        let parts_ = fams.iter().map(first_order_parts).collect::<Vec<_>>();
        let sys = build_tangent_system(&parts_[0].0)?;
        let in_kernel = parts_.iter().all(|(_, v)| sys.annihilates(v));
        let r = tangent_vectors_rank(&fams)?;
        ok &= fams.len() == 10 && flat && in_kernel && r == 10;
        parts.push(format!("{} families, flat {flat}, in kernel {in_kernel}, rank {r}", fams.len()));
    }
    Ok((ok, parts.join("; ")))
}

fn monomial_parity() -> Outcome {
    let dims = monomial_dimensions(8, &RankOptions::default())?;
    let bad = dims.iter().filter(|(d, t)| d % 2 != t % 2).count();
    Ok((bad == 0 && dims.len() == 341, format!("{} monomial ideals, {bad} violations", dims.len())))
}

fn random_poly(rng: &mut ChaCha8Rng, vars: &Vars, max_deg: u32, terms: usize) -> Polynomial<Rationals> {
    let k = Rationals;
    let mut p = Polynomial::zero(&k, vars);
    for _ in 0..terms {
        let e: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(0..=max_deg)).collect();
        if e.iter().sum::<u32>() <= max_deg {
            p.add_term(Monomial::new(&e), &rat(rng.gen_range(-5..=5), 1));
        }
    }
    p
}

fn oracle_equivalence() -> Outcome {
    let k = Rationals;
    let vars = Vars::xyz();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut cases, mut colength_bad, mut member_bad, mut in_ideal) = (0, 0, 0, 0);
    let mut membership_checks = 0;
    for i in 0..200 {
        let d = 1 + i % 8;
        let f: MarkedSet<Rationals> = if i % 2 == 0 {
            let n = order_ideals_of_size(3, d).choose(&mut rng).unwrap().clone();
            match random_marked_basis(&mut rng, &vars, d, Some(&n), 30) {
                Ok(f) => f,
                Err(Error::InvalidInput(_)) => random_marked_basis(&mut rng, &vars, d, None, 1)?,
                Err(e) => return Err(e),
            }
        } else {
            random_marked_basis(&mut rng, &vars, d, None, 1)?
        };
        cases += 1;
        let gens = f.polynomials();
        if groebner::oracle_colength(&gens)?.finite() != Some(f.colength()?) {
            colength_bad += 1;
        }
        let mut tests = Vec::new();
        let mut comb = Polynomial::zero(&k, &vars);
        for g in &gens {
            comb = comb.try_add(&random_poly(&mut rng, &vars, 2, 3).try_mul(g)?)?;
        }
        tests.push(comb.clone());
        tests.push(random_poly(&mut rng, &vars, 3, 6));
        let basis = f.staircase().basis_monomials().to_vec();
        let m = basis.choose(&mut rng).unwrap();
        tests.push(comb.try_add(&Polynomial::monomial(&k, &vars, *m))?);
        for g in &tests {
            membership_checks += 1;
            let marked = f.reduce(g)?.is_zero();
            let oracle = groebner::membership(g, &gens)?;
            in_ideal += oracle as usize;
            member_bad += (marked != oracle) as usize;
        }
    }
    let ok = cases == 200 && colength_bad == 0 && member_bad == 0;
    Ok((ok, format!(
        "{cases} bases, {colength_bad} colength mismatches, {member_bad}/{membership_checks} membership mismatches ({in_ideal} members)"
    )))
}

fn example_a3() -> Outcome {
    let k = Rationals;
    let params = Vars::new(&["c1", "c2", "c3", "c4", "c5", "c6"])?;
    let conds = two_variable_conditions()?;
    let expected = ["c3 - c6 + c1*c5", "c4 + c2*c5"]
        .iter()
        .map(|s| parse_polynomial(s, &k, &params))
        .collect::<Result<Vec<_>, _>>()?;
    let same_ideal = groebner::ideal_equal(&conds, &expected)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut rows_ok = true;
    for _ in 0..10 {
        let mut r = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let (c1, c2, c5, c6) = (r(), r(), r(), r());
        let c = [c1.clone(), c2.clone(), &c6 - &c1 * &c5, -(&c2 * &c5), c5.clone(), c6];
        let f = two_variable_marked_set(&k, &c)?;
        let rows = two_variable_tangent_rows(&f)?;
        let (z, one) = (rat(0, 1), rat(1, 1));
        let shown = [
            vec![z.clone(), c5.clone(), z.clone(), one.clone(), c2, z.clone()],
            vec![c5, z.clone(), one.clone(), z, c1, -one],
        ];
        for s in &shown {
            rows_ok &= rows.iter().any(|row| rank(&k, vec![row.clone(), s.clone()]) == 1);
        }
        let mut all = rows.clone();
        all.extend(shown.iter().cloned());
        rows_ok &= f.is_marked_basis()? && rank(&k, rows) == 2 && rank(&k, all) == 2;
    }
    Ok((same_ideal && rows_ok, format!("conditions generate the expected ideal: {same_ideal}; rows match up to scalar and order: {rows_ok}")))
}

fn reduced_points() -> Outcome {
    let k = Rationals;
    let vars = Vars::xyz();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ok = true;
    let mut pts = Vec::new();
    for d in 1..=5 {
        let f = marked_basis_from_generators(&random_cluster_ideal(&mut rng, &vars, d, 1)?)?;
        let dim = tangent_dimension(&f, &RankOptions::default())?.dim;
        ok &= f.colength()? == d && dim == 3 * d;
        pts.push(format!("{d}:{dim}"));
    }
    let base = counterexample_marked_basis(&k, &b5([0, 0, 0, 0, -1]))?.polynomials();
    let candidates: Vec<Vec<BigRational>> = [[3, 5, 7], [-2, 1, 4], [1, -3, 2]].iter().map(|p| p.iter().map(|&n| rat(n, 1)).collect()).collect();
    let mut unions = Vec::new();
    for kpts in 1..=3 {
        let gens = disjoint_union(&base, &candidates[..kpts])?;
        let f = marked_basis_from_generators(&gens)?;
        let rep = tangent_dimension(&f, &RankOptions::default())?;
        ok &= rep.d == 12 + kpts && rep.dim == 45 + 3 * kpts && rep.parity == Parity::Fails;
        unions.push(format!("d {} dim {} {:?}", rep.d, rep.dim, rep.parity));
    }
    Ok((ok, format!("points (d:dim) {}; unions {}", pts.join(" "), unions.join(", "))))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("colength 12 ideal has tangent dimension 45", eq12),
        ("tangent dimension stratification 54/48/45", stratification),
        ("tangent system shape and rank", system_shape),
        ("characteristic 2 dimension 46", char2),
        ("length 78 example has dimension 263", length78),
        ("smoothing components and flatness over k[t]", smoothing),
        ("closed immersion vectors", immersion),
        ("monomial parity up to colength 8", monomial_parity),
        ("marked bases agree with Buchberger", oracle_equivalence),
        ("two-variable golden example", example_a3),
        ("reduced points and disjoint unions", reduced_points),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !ok as usize;
        println!("criterion {:>2} {} {name}: {detail} [{}]", i + 1, if ok { "PASS" } else { "FAIL" }, secs(start.elapsed()));
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
