#![allow(dead_code)]

use std::collections::HashMap;

use hironaka::series::monomials_of_degree;
use hironaka::{Alpha, Exponent, Field, PrimeField, Rational, SeriesVec, Zp};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = Rational;

pub fn q(k: i64) -> Q {
    Q::from_integer(k.into())
}

pub fn poly(terms: &[(&[u32], i64)]) -> SeriesVec<Q> {
    let n = terms[0].0.len();
    SeriesVec::from_terms(n, 1, terms.iter().map(|(a, c)| (Exponent::scalar(Alpha::from_slice(a)), q(*c))))
}

pub fn gf() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

/// A random polynomial in m^2 (no constant or linear terms).
pub fn random_poly(rng: &mut ChaCha8Rng, field: &PrimeField, n: usize, max_deg: u32, max_terms: usize) -> SeriesVec<Zp> {
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let d = rng.gen_range(2..=max_deg);
        let monos = monomials_of_degree(n, d);
        let a = monos[rng.gen_range(0..monos.len())].clone();
        let c = field.from_i64(rng.gen_range(-20..=20));
        (Exponent::scalar(a), c)
    });
    SeriesVec::from_terms(n, 1, terms)
}

pub fn random_ideal(rng: &mut ChaCha8Rng, field: &PrimeField, n: usize) -> Vec<SeriesVec<Zp>> {
    let k = rng.gen_range(1..=3);
    loop {
        let gens: Vec<_> = (0..k).map(|_| random_poly(rng, field, n, 4, 4)).collect();
        if gens.iter().any(|g| !g.is_zero()) {
            return gens;
        }
    }
}

/// Rank of a dense matrix by Gaussian elimination.
pub fn matrix_rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].try_inv().unwrap();
        let pivot: Vec<F> = rows[rank].iter().map(|v| v.clone() * inv.clone()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `dim_K R / (I + m^{eta+1})` by linear algebra on the eta-jets of all
/// monomial multiples of the generators.
pub fn hs_oracle<F: Field>(gens: &[SeriesVec<F>], eta: u32) -> u64 {
    let n = gens[0].nvars();
    let monos: Vec<Alpha> = (0..=eta).flat_map(|d| monomials_of_degree(n, d)).collect();
    let index: HashMap<Alpha, usize> = monos.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        for beta in &monos {
            let h = g.mul_term(&F::one(), beta).jet(eta);
            if h.is_zero() {
                continue;
            }
            let mut row = vec![F::zero(); monos.len()];
            for (e, c) in h.terms() {
                row[index[&Alpha::from_slice(e.alpha())]] = c.clone();
            }
            rows.push(row);
        }
    }
    (monos.len() - matrix_rank(rows)) as u64
}

/// True when a computation stopped on its work budget.
pub fn is_budget<T>(r: &hironaka::Result<T>) -> bool {
    matches!(r, Err(hironaka::Error::Budget(_)))
}

/// A basis of `{v : A v = 0}` for a dense matrix with `ncols` columns.
pub fn nullspace<F: Field>(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][c].try_inv().unwrap();
        let pivot: Vec<F> = rows[rank].iter().map(|v| v.clone() * inv.clone()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        rows[rank] = pivot;
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// All polynomial relations `sum a_k g_k = 0` with `deg a_k <= cap`, as a
/// basis of the corresponding finite-dimensional kernel.
pub fn dense_syzygies<F: Field>(gens: &[SeriesVec<F>], cap: u32) -> Vec<SeriesVec<F>> {
    let n = gens[0].nvars();
    let p = gens[0].rank();
    let top = cap + gens.iter().map(|g| g.max_degree()).max().unwrap_or(0);
    let monos: Vec<Alpha> = (0..=cap).flat_map(|d| monomials_of_degree(n, d)).collect();
    let targets: Vec<Exponent> =
        (0..p).flat_map(|i| (0..=top).flat_map(move |d| monomials_of_degree(n, d).into_iter().map(move |a| Exponent::new(a, i)))).collect();
    let index: HashMap<Exponent, usize> = targets.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let ncols = gens.len() * monos.len();
    let mut rows = vec![vec![F::zero(); ncols]; targets.len()];
    for (k, g) in gens.iter().enumerate() {
        for (m, beta) in monos.iter().enumerate() {
            for (e, c) in g.mul_term(&F::one(), beta).terms() {
                rows[index[e]][k * monos.len() + m] = c.clone();
            }
        }
    }
    nullspace(rows, ncols)
        .into_iter()
        .map(|v| {
            let entries: Vec<SeriesVec<F>> = (0..gens.len())
                .map(|k| {
                    let terms = monos.iter().enumerate().filter_map(|(m, a)| {
                        let c = &v[k * monos.len() + m];
                        (!c.is_zero()).then(|| (Exponent::scalar(a.clone()), c.clone()))
                    });
                    SeriesVec::from_terms(n, 1, terms)
                })
                .collect();
            SeriesVec::from_components(n, &entries)
        })
        .collect()
}

/// A random vector in `R^p` with entries in m^2.
pub fn random_vector(rng: &mut ChaCha8Rng, field: &PrimeField, n: usize, p: usize, max_deg: u32) -> SeriesVec<Zp> {
    let entries: Vec<_> = (0..p)
        .map(|_| if rng.gen_bool(0.3) { SeriesVec::zero(n, 1) } else { random_poly(rng, field, n, max_deg, 3) })
        .collect();
    SeriesVec::from_components(n, &entries)
}

/// Proptest settings with a fixed seed so runs are reproducible.
pub fn seeded(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed),
        ..Default::default()
    }
}
