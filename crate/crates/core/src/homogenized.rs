//! Standard bases through homogenization.
//!
//! A vector `v` paired with a total degree `d >= v.max_degree()` stands for
//! the homogeneous vector `v^h` over K[t, x] whose term `x^a e_i` carries
//! `t^(d - |a|)`. Ordering homogeneous terms of equal degree by the local
//! order of their x-part makes the initial term of `v` the leading term of
//! `v^h`, so Buchberger's algorithm on the homogenized generators, read at
//! `t = 1`, is a standard basis of the local module. Reductions never need a
//! unit, and every representation is polynomial.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::series::{s_series, SSeries, SeriesVec};

/// Work cap for one completion, counted in terms touched.
pub const HOMOGENIZED_MAX_WORK: u64 = 200_000_000;

#[derive(Clone, Debug)]
pub(crate) struct HomBasis<F: Field> {
    pub elements: Vec<SeriesVec<F>>,
    pub sugar: Vec<u32>,
    pub transform: Vec<Vec<SeriesVec<F>>>,
}

pub(crate) fn t_degree<F: Field>(v: &SeriesVec<F>, d: u32) -> u32 {
    d - v.leading_exponent().expect("nonzero").degree()
}

/// `h = sum q_m g_m + r` in homogeneous degree `d`, `r` zero or not
/// divisible by any homogeneous leading term of the basis.
pub(crate) fn reduce<F: Field>(
    mut h: SeriesVec<F>,
    d: u32,
    elements: &[SeriesVec<F>],
    sugar: &[u32],
    work: &mut u64,
) -> Result<(Vec<SeriesVec<F>>, SeriesVec<F>)> {
    let n = h.nvars();
    let mut quotients: Vec<Vec<_>> = vec![Vec::new(); elements.len()];
    while let Some((lead, lc)) = h.leading().cloned() {
        *work += h.len() as u64;
        if *work > HOMOGENIZED_MAX_WORK {
            return Err(Error::Budget(format!("homogenized completion exceeded {HOMOGENIZED_MAX_WORK} work units")));
        }
        let room = d - lead.degree();
        let found = elements.iter().zip(sugar).enumerate().filter(|(_, (g, &dg))| {
            g.leading_exponent().is_some_and(|l| l.divides(&lead)) && t_degree(g, dg) <= room
        });
        let Some((m, (g, _))) = found.min_by_key(|(m, (g, _))| (g.len(), *m)) else { break };
        let (gl, gc) = g.leading().expect("nonzero");
        let shift = gl.quotient_alpha(&lead);
        let c = lc / gc.clone();
        h = h.sub(&g.mul_term(&c, &shift));
        quotients[m].push((crate::series::Exponent::scalar(shift), c));
    }
    let quotients = quotients.into_iter().map(|q| SeriesVec::from_terms(n, 1, q)).collect();
    Ok((quotients, h))
}

/// The s-series of a pair and the homogeneous degree it lives in.
pub(crate) fn pair<F: Field>(elements: &[SeriesVec<F>], sugar: &[u32], i: usize, j: usize) -> Result<Option<(SSeries<F>, u32)>> {
    let ss = s_series(&elements[i], &elements[j])?;
    let Some(gamma) = ss.lcm_degree else { return Ok(None) };
    let t = t_degree(&elements[i], sugar[i]).max(t_degree(&elements[j], sugar[j]));
    Ok(Some((ss, gamma + t)))
}

/// Buchberger's algorithm on the homogenized generators, pairs taken by
/// increasing homogeneous degree, followed by removal of elements whose
/// homogeneous leading term is divisible by another's.
pub(crate) fn complete<F: Field>(generators: &[SeriesVec<F>]) -> Result<HomBasis<F>> {
    let n = generators[0].nvars();
    let s = generators.len();
    let mut elements = Vec::new();
    let mut sugar = Vec::new();
    let mut transform = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        if !g.is_zero() {
            elements.push(g.clone());
            sugar.push(g.max_degree());
            let mut row = vec![SeriesVec::zero(n, 1); s];
            row[j] = SeriesVec::one(n);
            transform.push(row);
        }
    }

    let mut work = 0u64;
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<_>, elements: &[SeriesVec<F>], sugar: &[u32], new: usize| -> Result<()> {
        for i in 0..new {
            if let Some((_, d)) = pair(elements, sugar, i, new)? {
                queue.push(Reverse((d, i, new)));
            }
        }
        Ok(())
    };
    for k in 1..elements.len() {
        push_pairs(&mut queue, &elements, &sugar, k)?;
    }

    while let Some(Reverse((d, i, j))) = queue.pop() {
        let (ss, _) = pair(&elements, &sugar, i, j)?.expect("queued pairs share a component");
        if ss.s.is_zero() {
            continue;
        }
        let (quotients, r) = reduce(ss.s, d, &elements, &sugar, &mut work)?;
        if r.is_zero() {
            continue;
        }
        let mut row = Vec::with_capacity(s);
        for c in 0..s {
            let mut t = transform[i][c].mul_scalar(&ss.mult_f).sub(&transform[j][c].mul_scalar(&ss.mult_g));
            for (m, q) in quotients.iter().enumerate() {
                if !q.is_zero() && !transform[m][c].is_zero() {
                    t = t.sub(&transform[m][c].mul_scalar(q));
                }
            }
            row.push(t);
        }
        elements.push(r);
        sugar.push(d);
        transform.push(row);
        push_pairs(&mut queue, &elements, &sugar, elements.len() - 1)?;
    }

    let keep: Vec<bool> = (0..elements.len())
        .map(|k| {
            let lk = elements[k].leading_exponent().expect("nonzero");
            let tk = t_degree(&elements[k], sugar[k]);
            !(0..elements.len()).any(|m| {
                let lm = elements[m].leading_exponent().expect("nonzero");
                let tm = t_degree(&elements[m], sugar[m]);
                let divides = lm.divides(lk) && tm <= tk;
                let equal = lm == lk && tm == tk;
                m != k && divides && (!equal || m < k)
            })
        })
        .collect();
    Ok(HomBasis { elements: pick(elements, &keep), sugar: pick(sugar, &keep), transform: pick(transform, &keep) })
}

fn pick<T>(v: Vec<T>, keep: &[bool]) -> Vec<T> {
    v.into_iter().zip(keep).filter(|(_, &k)| k).map(|(x, _)| x).collect()
}

/// The s-series of pair `(i, j)` with quotients from its homogeneous
/// reduction, and whether the reduction reached zero. With `verify` set, the
/// quotients must moreover form a standard representation:
/// `s = sum q_m g_m` exactly with `inexp(s) = min inexp(q_m g_m)`.
/// `None` when the initial components differ.
pub(crate) fn pair_representation<F: Field>(
    elements: &[SeriesVec<F>],
    sugar: &[u32],
    (i, j): (usize, usize),
    verify: bool,
    work: &mut u64,
) -> Result<Option<(SSeries<F>, Vec<SeriesVec<F>>, bool)>> {
    let Some((ss, d)) = pair(elements, sugar, i, j)? else { return Ok(None) };
    let (quotients, r) = reduce(ss.s.clone(), d, elements, sugar, work)?;
    let holds = r.is_zero() && (!verify || {
        let products: Vec<SeriesVec<F>> = quotients.iter().zip(elements).map(|(q, g)| g.mul_scalar(q)).collect();
        let sum = products.iter().fold(SeriesVec::zero(ss.s.nvars(), ss.s.rank()), |acc, p| acc.add(p));
        let min = products.iter().map(|p| p.inexp()).min().unwrap_or(crate::series::Initial::Infinity);
        sum == ss.s && min == ss.s.inexp()
    });
    Ok(Some((ss, quotients, holds)))
}

/// Becker's criterion for a completed basis, with the representations
/// supplied by homogeneous reduction.
pub(crate) fn certify<F: Field>(basis: &HomBasis<F>) -> Result<bool> {
    let mut work = 0;
    for j in 1..basis.elements.len() {
        for i in 0..j {
            if let Some((_, _, false)) = pair_representation(&basis.elements, &basis.sugar, (i, j), true, &mut work)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
