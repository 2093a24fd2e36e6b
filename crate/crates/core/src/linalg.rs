//! Dense exact linear algebra: echelon forms and kernels over any field,
//! fraction-free (Bareiss) rank over the rationals and word-sized modular
//! rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::Field;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<K: Field>(k: &K, mut rows: Vec<Vec<K::Elem>>) -> (Vec<Vec<K::Elem>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).expect("pivot is nonzero");
        for j in c..ncols {
            rows[r][j] = k.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !k.is_zero(&pivot_row[j]) {
                    row[j] = k.sub(&row[j], &k.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<K: Field>(k: &K, rows: Vec<Vec<K::Elem>>) -> usize {
    rref(k, rows).1.len()
}

/// A basis of `{v : A v = 0}` for a matrix with `ncols` columns.
pub fn kernel<K: Field>(k: &K, rows: Vec<Vec<K::Elem>>, ncols: usize) -> Vec<Vec<K::Elem>> {
    let (red, pivots) = rref(k, rows);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![k.zero(); ncols];
        v[free] = k.one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = k.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

/// Solves `A x = b` for a square invertible `A`; `None` if singular.
pub fn solve<K: Field>(k: &K, a: &[Vec<K::Elem>], b: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let n = a.len();
    let aug: Vec<Vec<K::Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(k, aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(red.iter().map(|r| r[n].clone()).collect())
}

/// Rank over the rationals by fraction-free Gaussian elimination: rows are
/// cleared of denominators and eliminated with exact Bareiss division.
pub fn rank_bareiss(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|e| !e.is_zero()))
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        // smallest nonzero entry keeps intermediate numbers down
        let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs())
        else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c..ncols {
                let v = &pivot * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Rank over `F_p` for a word-sized prime, rows given as residues.
pub fn rank_mod_p(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    assert!(p < (1 << 32), "modular elimination expects a prime below 2^32");
    rows.retain(|r| r.iter().any(|&e| e != 0));
    let ncols = rows.first().map_or(0, |r| r.len());
    let inv = |a: u64| -> u64 {
        let (mut b, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let pinv = inv(rows[r][c]);
        {
            let row = &mut rows[r];
            for e in row[c..].iter_mut() {
                *e = *e * pinv % p;
            }
        }
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let nz: Vec<usize> = (c..ncols).filter(|&j| pivot_row[j] != 0).collect();
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            for &j in &nz {
                row[j] = (row[j] + f * pivot_row[j]) % p;
            }
        }
        r += 1;
    }
    r
}
