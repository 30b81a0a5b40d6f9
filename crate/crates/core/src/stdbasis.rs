//! Standard bases by completion under Becker's criterion, and the diagram of
//! initial exponents.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::coeff::Field;
use crate::division::{lead_remainder, weak_normal_form_with, DivisionOptions, DEFAULT_MAX_WORK};
use crate::homogenized;
use crate::error::{Error, Result};
use crate::series::{s_series, Exponent, SeriesVec};

/// A standard basis together with the matrix expressing it over the input
/// generators: `elements[k] = sum_j transform[k][j] * source[j]`.
#[derive(Clone, Debug)]
pub struct StdBasis<F: Field> {
    pub elements: Vec<SeriesVec<F>>,
    pub source: Vec<SeriesVec<F>>,
    pub transform: Vec<Vec<SeriesVec<F>>>,
    pub certified: bool,
    /// Homogeneous degrees of the elements when the basis came from the
    /// homogenized completion.
    pub(crate) sugar: Option<Vec<u32>>,
}

impl<F: Field> StdBasis<F> {
    pub fn nvars(&self) -> usize {
        self.source[0].nvars()
    }

    pub fn rank(&self) -> usize {
        self.source[0].rank()
    }

    pub fn initial_exponents(&self) -> Vec<Exponent> {
        self.elements.iter().filter_map(|g| g.leading_exponent().cloned()).collect()
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::from_exponents(self.nvars(), self.rank(), self.initial_exponents())
    }

    pub fn contains(&self, f: &SeriesVec<F>) -> Result<bool> {
        Ok(lead_remainder(f, &self.elements, DEFAULT_MAX_WORK)?.is_zero())
    }

    /// Recomputes `sum_j transform[k][j] * source[j]` and compares with
    /// `elements[k]` for every k.
    pub fn transform_holds(&self) -> bool {
        self.elements.iter().zip(&self.transform).all(|(g, row)| {
            let mut acc = SeriesVec::zero(g.nvars(), g.rank());
            for (t, f) in row.iter().zip(&self.source) {
                acc = acc.add(&f.mul_scalar(t));
            }
            acc == *g
        })
    }
}

pub(crate) fn validate_generators<F: Field>(generators: &[SeriesVec<F>]) -> Result<()> {
    let first = generators.first().ok_or_else(|| Error::Usage("empty generator list".into()))?;
    if generators.iter().any(|g| g.nvars() != first.nvars() || g.rank() != first.rank()) {
        return Err(Error::Usage("generators live in different free modules".into()));
    }
    if generators.iter().all(|g| g.is_zero()) {
        return Err(Error::Usage("all generators are zero".into()));
    }
    Ok(())
}

struct PairQueue {
    heap: BinaryHeap<Reverse<(u32, usize, usize)>>,
}

impl PairQueue {
    fn push_pairs_with<F: Field>(&mut self, elements: &[SeriesVec<F>], new: usize) {
        let en = elements[new].leading_exponent().expect("nonzero element");
        for (i, g) in elements[..new].iter().enumerate() {
            let ei = g.leading_exponent().expect("nonzero element");
            // differing components give s = 0 by definition
            if ei.comp() == en.comp() {
                let deg = ei.lcm_alpha(en).iter().sum();
                self.heap.push(Reverse((deg, i, new)));
            }
        }
    }
}

/// Per-division work cap inside the completion loop; past it the
/// homogenized completion takes over.
pub const COMPLETION_MAX_WORK: u64 = 2_000_000;

fn completion_options() -> DivisionOptions {
    DivisionOptions { max_work: COMPLETION_MAX_WORK, ..DivisionOptions::lead_only() }
}

/// Completes `generators` to a standard basis of the module they generate.
///
/// Critical pairs are processed in increasing `(|gamma|, i, j)`; each
/// s-series vector is reduced against the current basis and a nonzero
/// remainder joins the basis. The result is re-checked against Becker's
/// criterion before it is marked certified. When a division exceeds
/// [`COMPLETION_MAX_WORK`], the basis is computed by Buchberger's algorithm on
/// the homogenized generators instead.
pub fn standard_basis<F: Field>(generators: &[SeriesVec<F>]) -> Result<StdBasis<F>> {
    validate_generators(generators)?;
    match mora_completion(generators) {
        Err(Error::Budget(_)) => homogenized_standard_basis(generators),
        other => other,
    }
}

pub(crate) fn homogenized_standard_basis<F: Field>(generators: &[SeriesVec<F>]) -> Result<StdBasis<F>> {
    let basis = homogenized::complete(generators)?;
    let certified = homogenized::certify(&basis)?;
    Ok(StdBasis {
        elements: basis.elements,
        source: generators.to_vec(),
        transform: basis.transform,
        certified,
        sugar: Some(basis.sugar),
    })
}

fn mora_completion<F: Field>(generators: &[SeriesVec<F>]) -> Result<StdBasis<F>> {
    let n = generators[0].nvars();
    let s = generators.len();

    let mut elements = Vec::new();
    let mut transform = Vec::new();
    for (j, g) in generators.iter().enumerate() {
        if !g.is_zero() {
            elements.push(g.clone());
            let mut row = vec![SeriesVec::zero(n, 1); s];
            row[j] = SeriesVec::one(n);
            transform.push(row);
        }
    }

    let mut queue = PairQueue { heap: BinaryHeap::new() };
    for k in 1..elements.len() {
        queue.push_pairs_with(&elements, k);
    }

    while let Some(Reverse((_, i, j))) = queue.heap.pop() {
        let ss = s_series(&elements[i], &elements[j])?;
        if ss.s.is_zero() {
            continue;
        }
        let div = weak_normal_form_with(&ss.s, &elements, &completion_options())?;
        if div.remainder.is_zero() {
            continue;
        }
        // r = unit * (P_i G_i - P_j G_j) - sum q_m G_m
        let up_i = ss.mult_f.mul_scalar(&div.unit);
        let up_j = ss.mult_g.mul_scalar(&div.unit);
        let mut row = Vec::with_capacity(s);
        for c in 0..s {
            let mut t = transform[i][c].mul_scalar(&up_i).sub(&transform[j][c].mul_scalar(&up_j));
            for (m, q) in div.quotients.iter().enumerate() {
                if !q.is_zero() && !transform[m][c].is_zero() {
                    t = t.sub(&transform[m][c].mul_scalar(q));
                }
            }
            row.push(t);
        }
        elements.push(div.remainder);
        transform.push(row);
        queue.push_pairs_with(&elements, elements.len() - 1);
    }

    let certified = becker(&elements, COMPLETION_MAX_WORK)?;
    Ok(StdBasis { elements, source: generators.to_vec(), transform, certified, sugar: None })
}

/// Becker's criterion: every pairwise s-series vector has a standard
/// representation in terms of `elements`.
pub fn is_standard_basis<F: Field>(elements: &[SeriesVec<F>]) -> Result<bool> {
    if elements.iter().any(|g| g.is_zero()) {
        return Err(Error::Usage("standard basis candidates must be nonzero".into()));
    }
    becker(elements, DEFAULT_MAX_WORK)
}

/// Every s-series reduces to zero, so has a standard representation.
fn becker<F: Field>(elements: &[SeriesVec<F>], max_work: u64) -> Result<bool> {
    for j in 1..elements.len() {
        for i in 0..j {
            let ss = s_series(&elements[i], &elements[j])?;
            if !lead_remainder(&ss.s, elements, max_work)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The diagram of initial exponents, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    nvars: usize,
    rank: usize,
    vertices: Vec<Exponent>,
}

impl Diagram {
    /// The staircase generated by `exps`, keeping only minimal elements.
    pub fn from_exponents(nvars: usize, rank: usize, exps: impl IntoIterator<Item = Exponent>) -> Self {
        let mut all: Vec<Exponent> = exps.into_iter().collect();
        all.sort();
        all.dedup();
        let mut vertices: Vec<Exponent> = Vec::new();
        // ascending order: a divisor always precedes its multiples
        for e in all {
            if !vertices.iter().any(|v| v.divides(&e)) {
                vertices.push(e);
            }
        }
        Diagram { nvars, rank, vertices }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.vertices.iter().any(|v| v.divides(e))
    }

    pub fn max_vertex_degree(&self) -> u32 {
        self.vertices.iter().map(|v| v.degree()).max().unwrap_or(0)
    }
}

pub fn diagram_of<F: Field>(generators: &[SeriesVec<F>]) -> Result<Diagram> {
    Ok(standard_basis(generators)?.diagram())
}

pub fn is_member<F: Field>(f: &SeriesVec<F>, generators: &[SeriesVec<F>]) -> Result<bool> {
    standard_basis(generators)?.contains(f)
}
