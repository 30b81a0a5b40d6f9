//! Hilbert–Samuel function, polynomial and Krull dimension of K[[x]]/I,
//! read off the diagram of initial exponents.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::series::{monomials_of_degree, Exponent};
use crate::stdbasis::Diagram;

#[derive(Clone, Debug, PartialEq)]
pub struct HilbertData {
    /// `H_I(eta)` for `eta = 0..values.len()`.
    pub values: Vec<u64>,
    /// Hilbert–Samuel polynomial, coefficients of increasing powers of eta.
    pub poly_coeffs: Vec<Rational>,
    /// First eta from which the values agree with the polynomial.
    pub stab: usize,
    pub dim: usize,
}

impl HilbertData {
    pub fn degree(&self) -> usize {
        self.poly_coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, eta: u64) -> Rational {
        eval_poly(&self.poly_coeffs, eta)
    }
}

fn require_ideal(d: &Diagram) -> Result<()> {
    if d.rank() != 1 {
        return Err(Error::Usage(format!(
            "Hilbert-Samuel data is defined for ideals, got a submodule of rank {}",
            d.rank()
        )));
    }
    Ok(())
}

/// Number of points of degree exactly `d` outside the staircase.
fn outside_count(diagram: &Diagram, d: u32) -> u64 {
    monomials_of_degree(diagram.nvars(), d)
        .into_iter()
        .filter(|a| !diagram.contains(&Exponent::scalar(a.clone())))
        .count() as u64
}

fn cumulative(diagram: &Diagram, up_to: usize) -> Vec<u64> {
    let mut acc = 0;
    (0..=up_to as u32)
        .map(|d| {
            acc += outside_count(diagram, d);
            acc
        })
        .collect()
}

/// `#{beta in N^n \ N(I) : |beta| <= eta}`.
pub fn hs_function(diagram: &Diagram, eta: u32) -> Result<u64> {
    require_ideal(diagram)?;
    Ok((0..=eta).map(|d| outside_count(diagram, d)).sum())
}

/// Largest size of a coordinate subset S such that no vertex is supported
/// inside S.
pub fn krull_dimension(diagram: &Diagram) -> Result<usize> {
    require_ideal(diagram)?;
    let n = diagram.nvars();
    let mut best = 0;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let hits = diagram
            .vertices()
            .iter()
            .any(|v| v.alpha().iter().enumerate().all(|(i, &a)| a == 0 || mask & (1 << i) != 0));
        if !hits {
            best = size;
        }
    }
    Ok(best)
}

fn eval_poly(coeffs: &[Rational], eta: u64) -> Rational {
    let x = Rational::from_integer(BigInt::from(eta));
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Interpolating polynomial through `(x0 + k, ys[k])` via Newton forward
/// differences, returned in the monomial basis.
fn interpolate(x0: u64, ys: &[u64]) -> Vec<Rational> {
    let mut diffs: Vec<Rational> = ys.iter().map(|&y| Rational::from_integer(y.into())).collect();
    let mut leading = Vec::with_capacity(ys.len());
    for _ in 0..ys.len() {
        leading.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    // sum_k Δ^k * binom(eta - x0, k)
    let mut result = vec![Rational::zero(); ys.len()];
    let mut basis = vec![Rational::one()]; // binom(eta - x0, k) as a polynomial in eta
    for (k, dk) in leading.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            result[i] = result[i].clone() + dk.clone() * b.clone();
        }
        // basis *= (eta - x0 - k) / (k + 1)
        let shift = Rational::from_integer(BigInt::from(x0 + k as u64));
        let denom = Rational::from_integer(BigInt::from(k as u64 + 1));
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + b.clone() / denom.clone();
            next[i] = next[i].clone() - b.clone() * shift.clone() / denom.clone();
        }
        basis = next;
    }
    while result.len() > 1 && result.last().is_some_and(|c| c.is_zero()) {
        result.pop();
    }
    result
}

/// Hilbert–Samuel values over a window `eta <= n * D + n + 2` (D the largest
/// vertex degree), the polynomial fitted by finite differences on the last
/// `n + 1` points of that window and verified on `n + 1` further points.
pub fn hs_polynomial(diagram: &Diagram) -> Result<HilbertData> {
    require_ideal(diagram)?;
    let n = diagram.nvars();
    let window = n * diagram.max_vertex_degree() as usize + n + 2;
    let values = cumulative(diagram, window + n + 1);

    let fit_from = window - n;
    let coeffs = interpolate(fit_from as u64, &values[fit_from..=window]);
    let agrees = |eta: usize| eval_poly(&coeffs, eta as u64) == Rational::from_integer(values[eta].into());
    if !(window + 1..values.len()).all(agrees) {
        return Err(Error::Integrity("Hilbert-Samuel values did not stabilise within the window".into()));
    }
    let mut stab = fit_from;
    while stab > 0 && agrees(stab - 1) {
        stab -= 1;
    }

    let dim = krull_dimension(diagram)?;
    let data = HilbertData { values, poly_coeffs: coeffs, stab, dim };
    let degree = if data.poly_coeffs.iter().all(|c| c.is_zero()) { 0 } else { data.degree() };
    if degree != dim {
        return Err(Error::Integrity(format!(
            "Hilbert-Samuel polynomial has degree {degree} but the combinatorial dimension is {dim}"
        )));
    }
    Ok(data)
}
