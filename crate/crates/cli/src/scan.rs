use std::path::PathBuf;

use marked_tangent::families::{counterexample_marked_basis, discriminant};
use marked_tangent::marked::MarkedSet;
use marked_tangent::monomial::Monomial;
use marked_tangent::monomial_ideal::OrderIdeal;
use marked_tangent::poly::{parse_polynomial, Vars};
use marked_tangent::ring::{rat, rational_mod_p, PrimeField, Rationals};
use marked_tangent::sampling::random_marked_basis;
use marked_tangent::tangent::{tangent_dimension, Parity, RankOptions, TangentReport};
use marked_tangent::Error;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{digest, Failure, Format};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    /// Unions of moved monomial clusters with the given order ideal as basis.
    #[default]
    Random,
    /// The colength 12 counterexample family with random `b`.
    Counterexample,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanFile {
    variables: Vec<String>,
    #[serde(default)]
    order_ideals: Vec<Vec<String>>,
    #[serde(default)]
    family: Family,
}

fn parse_order_ideal(vars: &Vars, list: &[String]) -> Result<OrderIdeal, Error> {
    let monos = list
        .iter()
        .map(|s| {
            let p = parse_polynomial(s, &Rationals, vars)?;
            match p.leading_term() {
                Some((m, _)) if p.len() == 1 => Ok(*m),
                _ => Err(Error::InvalidOrderIdeal(format!("`{s}` is not a monomial"))),
            }
        })
        .collect::<Result<Vec<Monomial>, Error>>()?;
    OrderIdeal::new(vars.len(), monos)
}

struct Sample {
    seed: u64,
    outcome: Result<(TangentReport, Value), String>,
}

fn dimension(f: &MarkedSet<Rationals>, p: u64, seed: u64) -> Result<TangentReport, Error> {
    let opts = RankOptions { seed, exact_threshold: 0, ..RankOptions::default() };
    if p == 0 {
        return tangent_dimension(f, &opts);
    }
    let k = PrimeField::new(p)?;
    let g = f.try_map(&k, |q| rational_mod_p(&k, q))?;
    tangent_dimension(&g, &opts)
}

fn small(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-3..=3), 1)
}

fn one_sample(file: &ScanFile, ideals: &[OrderIdeal], vars: &Vars, p: u64, seed: u64, index: usize) -> Result<(TangentReport, Value), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match file.family {
        Family::Counterexample => {
            let b = [small(&mut rng), small(&mut rng), small(&mut rng), small(&mut rng), small(&mut rng)];
            let f = counterexample_marked_basis(&Rationals, &b)?;
            let extra = json!({
                "b": b.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "discriminant_zero": discriminant(&Rationals, &b) == rat(0, 1),
            });
            Ok((dimension(&f, p, seed)?, extra))
        }
        Family::Random => {
            let which = index % ideals.len();
            let n = &ideals[which];
            // a few redraws when a coefficient denominator vanishes mod p
            for _ in 0..8 {
                let f = random_marked_basis(&mut rng, vars, n.len(), Some(n), 50)?;
                match dimension(&f, p, seed) {
                    Err(Error::NonUnitDivision(_)) => continue,
                    other => return Ok((other?, json!({ "order_ideal": which }))),
                }
            }
            Err(Error::NonUnitDivision(format!("no sample reduces modulo {p}")))
        }
    }
}

pub fn run(path: &PathBuf, count: usize, seed: u64, p: u64, format: Format, jobs: usize) -> Result<String, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: ScanFile = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let vars = Vars::new(&file.variables)?;
    if p != 0 {
        PrimeField::new(p)?;
    }
    let ideals = file.order_ideals.iter().map(|l| parse_order_ideal(&vars, l)).collect::<Result<Vec<_>, _>>()?;
    match file.family {
        Family::Random if ideals.is_empty() => return Err(Failure::Input("no order ideals to scan".into())),
        Family::Counterexample if vars.len() != 3 => {
            return Err(Failure::Input("the counterexample family lives in three variables".into()))
        }
        _ => {}
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..count).map(|_| master.gen()).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let samples: Vec<Sample> = pool.install(|| {
        seeds
            .par_iter()
            .enumerate()
            .map(|(i, &s)| Sample {
                seed: s,
                outcome: one_sample(&file, &ideals, &vars, p, s, i).map_err(|e| e.to_string()),
            })
            .collect()
    });

    let mut lines = Vec::with_capacity(count + 2);
    if format == Format::Csv {
        lines.push("seed,d,dim,parity".to_string());
    }
    let (mut violations, mut errors) = (0usize, 0usize);
    for s in &samples {
        match &s.outcome {
            Ok((rep, extra)) => {
                let parity = if rep.parity == Parity::Holds { "holds" } else { "fails" };
                if rep.parity == Parity::Fails {
                    violations += 1;
                }
                match format {
                    Format::Csv => lines.push(format!("{},{},{},{}", s.seed, rep.d, rep.dim, parity)),
                    Format::Json => {
                        let mut v = json!({ "seed": s.seed, "d": rep.d, "dim": rep.dim, "parity": parity, "rank_method": rep.rank_method });
                        v.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
                        lines.push(v.to_string());
                    }
                }
            }
            Err(e) => {
                errors += 1;
                eprintln!("sample {}: {e}", s.seed);
                if format == Format::Json {
                    lines.push(json!({ "seed": s.seed, "error": e }).to_string());
                }
            }
        }
    }
    let summary = json!({
        "samples": count,
        "violations": violations,
        "errors": errors,
        "characteristic": p,
        "seed": seed,
        "input_digest": digest(text.as_bytes()),
    });
    match format {
        Format::Json => lines.push(json!({ "summary": summary }).to_string()),
        Format::Csv => lines.push(format!("# samples={count} violations={violations} errors={errors}")),
    }
    Ok(lines.join("\n"))
}
