//! Exponents, the degree-component-lex order, and power series vectors
//! represented by polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::Field;
use crate::error::{Error, Result};

pub type Alpha = SmallVec<[u32; 4]>;

/// The exponent `(alpha, comp)` of a monomial term `x^alpha e_comp`.
///
/// Components are stored 0-based. The derived order compares
/// `(|alpha|, comp, alpha_1, ..., alpha_n)` lexicographically, which is the
/// order used throughout for initial exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    deg: u32,
    comp: u32,
    alpha: Alpha,
}

impl Exponent {
    pub fn new(alpha: impl Into<Alpha>, comp: usize) -> Self {
        let alpha = alpha.into();
        Exponent { deg: alpha.iter().sum(), comp: comp as u32, alpha }
    }

    pub fn scalar(alpha: impl Into<Alpha>) -> Self {
        Self::new(alpha, 0)
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn comp(&self) -> usize {
        self.comp as usize
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.alpha.len()
    }

    /// `self` divides `other`: same component and componentwise `alpha <= beta`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.comp == other.comp
            && self.deg <= other.deg
            && self.alpha.iter().zip(other.alpha.iter()).all(|(a, b)| a <= b)
    }

    /// `other - self` on the alpha part; caller guarantees divisibility.
    pub fn quotient_alpha(&self, other: &Exponent) -> Alpha {
        debug_assert!(self.divides(other));
        other.alpha.iter().zip(self.alpha.iter()).map(|(b, a)| b - a).collect()
    }

    pub fn shifted(&self, by: &[u32]) -> Exponent {
        let alpha: Alpha = self.alpha.iter().zip(by.iter()).map(|(a, b)| a + b).collect();
        Exponent { deg: self.deg + by.iter().sum::<u32>(), comp: self.comp, alpha }
    }

    pub fn with_comp(&self, comp: usize) -> Exponent {
        Exponent { comp: comp as u32, ..self.clone() }
    }

    pub fn lcm_alpha(&self, other: &Exponent) -> Alpha {
        self.alpha.iter().zip(other.alpha.iter()).map(|(a, b)| *a.max(b)).collect()
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.alpha.as_slice(), self.comp + 1)
    }
}

/// An initial exponent, with a sentinel above every finite exponent for the
/// zero vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Initial {
    Finite(Exponent),
    Infinity,
}

impl Initial {
    pub fn finite(&self) -> Option<&Exponent> {
        match self {
            Initial::Finite(e) => Some(e),
            Initial::Infinity => None,
        }
    }
}

/// All exponent vectors in `n` variables of total degree `d`, in increasing
/// lexicographic order (so increasing in the term order).
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Alpha> {
    fn rec(n: usize, d: u32, prefix: &mut Alpha, out: &mut Vec<Alpha>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=d {
            prefix.push(first);
            rec(n - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Alpha::new());
        }
        return out;
    }
    rec(n, d, &mut Alpha::new(), &mut out);
    out
}

/// A power series vector in K[[x_1..x_n]]^p given by a polynomial
/// representative. Terms are kept strictly increasing in the exponent order
/// and never carry a zero coefficient.
#[derive(Clone, PartialEq)]
pub struct SeriesVec<F: Field> {
    nvars: usize,
    rank: usize,
    terms: Vec<(Exponent, F)>,
}

impl<F: Field> SeriesVec<F> {
    pub fn zero(nvars: usize, rank: usize) -> Self {
        SeriesVec { nvars, rank, terms: Vec::new() }
    }

    /// Builds a vector from arbitrary terms, combining duplicates and
    /// dropping zeros.
    pub fn from_terms(nvars: usize, rank: usize, terms: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut acc: BTreeMap<Exponent, F> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars, "exponent has wrong number of variables");
            assert!(e.comp() < rank, "component index out of range");
            accumulate(&mut acc, e, c);
        }
        Self::from_sorted_map(nvars, rank, acc)
    }

    fn from_sorted_map(nvars: usize, rank: usize, acc: BTreeMap<Exponent, F>) -> Self {
        SeriesVec { nvars, rank, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn term(nvars: usize, rank: usize, e: Exponent, c: F) -> Self {
        Self::from_terms(nvars, rank, [(e, c)])
    }

    /// The scalar `c * x^alpha`.
    pub fn monomial(alpha: impl Into<Alpha>, c: F) -> Self {
        let e = Exponent::scalar(alpha);
        let n = e.nvars();
        Self::term(n, 1, e, c)
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(nvars, 1, Exponent::scalar(smallvec::smallvec![0; nvars]), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The standard basis vector e_i of K[[x]]^rank (0-based).
    pub fn unit_vector(nvars: usize, rank: usize, i: usize) -> Self {
        Self::term(nvars, rank, Exponent::new(Alpha::from_elem(0, nvars), i), F::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Exponent, F)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.iter().map(|(e, _)| e)
    }

    pub fn inexp(&self) -> Initial {
        match self.terms.first() {
            Some((e, _)) => Initial::Finite(e.clone()),
            None => Initial::Infinity,
        }
    }

    pub fn leading(&self) -> Option<&(Exponent, F)> {
        self.terms.first()
    }

    pub fn leading_exponent(&self) -> Option<&Exponent> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn coefficient(&self, e: &Exponent) -> Option<&F> {
        self.terms.binary_search_by(|(t, _)| t.cmp(e)).ok().map(|i| &self.terms[i].1)
    }

    /// Largest total degree in the support (0 for the zero vector).
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.degree()).max().unwrap_or(0)
    }

    /// Écart: max support degree minus the degree of the initial exponent.
    pub fn ecart(&self) -> u32 {
        match self.terms.first() {
            Some((e, _)) => self.max_degree() - e.degree(),
            None => 0,
        }
    }

    /// The μ-jet: all terms of total degree at most `mu`.
    pub fn jet(&self, mu: u32) -> Self {
        SeriesVec {
            nvars: self.nvars,
            rank: self.rank,
            terms: self.terms.iter().filter(|(e, _)| e.degree() <= mu).cloned().collect(),
        }
    }

    /// True if some term has degree 0, i.e. the vector is not in m·K[[x]]^p.
    pub fn has_unit_part(&self) -> bool {
        self.terms.first().is_some_and(|(e, _)| e.degree() == 0)
    }

    /// Constant term of a scalar, zero if absent.
    pub fn constant_coeff(&self) -> F {
        match self.terms.first() {
            Some((e, c)) if e.degree() == 0 => c.clone(),
            _ => F::zero(),
        }
    }

    fn check_ambient(&self, other: &Self) {
        assert!(
            self.nvars == other.nvars && self.rank == other.rank,
            "ambient mismatch: ({}, {}) vs ({}, {})",
            self.nvars,
            self.rank,
            other.nvars,
            other.rank
        );
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_ambient(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &F| if negate_other { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| (e.clone(), sign(c))));
        SeriesVec { nvars: self.nvars, rank: self.rank, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.rank);
        }
        SeriesVec {
            nvars: self.nvars,
            rank: self.rank,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// `c * x^shift * self`. Multiplication by a monomial preserves the
    /// term order, so no re-sorting is needed.
    pub fn mul_term(&self, c: &F, shift: &[u32]) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.rank);
        }
        SeriesVec {
            nvars: self.nvars,
            rank: self.rank,
            terms: self.terms.iter().map(|(e, a)| (e.shifted(shift), a.clone() * c.clone())).collect(),
        }
    }

    /// Product of a scalar (rank-1) series with this vector.
    pub fn mul_scalar(&self, q: &SeriesVec<F>) -> Self {
        assert_eq!(q.rank, 1, "multiplier must be a scalar series");
        assert_eq!(q.nvars, self.nvars, "variable count mismatch");
        match q.terms.len() {
            0 => return Self::zero(self.nvars, self.rank),
            1 => return self.mul_term(&q.terms[0].1, q.terms[0].0.alpha()),
            _ => {}
        }
        let mut acc: BTreeMap<Exponent, F> = BTreeMap::new();
        for (qe, qc) in &q.terms {
            for (e, c) in &self.terms {
                accumulate(&mut acc, e.shifted(qe.alpha()), qc.clone() * c.clone());
            }
        }
        Self::from_sorted_map(self.nvars, self.rank, acc)
    }

    /// `self + c * x^shift * other`, the workhorse of every reduction step.
    pub fn add_mul_term(&self, c: &F, shift: &[u32], other: &Self) -> Self {
        self.add(&other.mul_term(c, shift))
    }

    /// Entry `i` of the vector, as a scalar series.
    pub fn component(&self, i: usize) -> SeriesVec<F> {
        SeriesVec {
            nvars: self.nvars,
            rank: 1,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.comp() == i)
                .map(|(e, c)| (e.with_comp(0), c.clone()))
                .collect(),
        }
    }

    pub fn components(&self) -> Vec<SeriesVec<F>> {
        (0..self.rank).map(|i| self.component(i)).collect()
    }

    /// Assembles a vector from scalar entries.
    pub fn from_components(nvars: usize, entries: &[SeriesVec<F>]) -> Self {
        let rank = entries.len();
        let mut terms = Vec::new();
        for (i, s) in entries.iter().enumerate() {
            assert_eq!(s.rank, 1, "entries must be scalar");
            terms.extend(s.terms.iter().map(|(e, c)| (e.with_comp(i), c.clone())));
        }
        Self::from_terms(nvars, rank, terms)
    }

    /// Scalar viewed as `f * e_i` in K[[x]]^rank.
    pub fn embed_scalar(&self, rank: usize, i: usize) -> Self {
        assert_eq!(self.rank, 1);
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (e.with_comp(i), c.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        SeriesVec { nvars: self.nvars, rank, terms }
    }

    /// Coefficients mapped through `f`, zeros dropped. Used to move between fields.
    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> SeriesVec<G> {
        SeriesVec {
            nvars: self.nvars,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Human-readable rendering with the given variable names. Scalars
    /// print as polynomials, vectors as `[f1, ..., fp]`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> SeriesDisplay<'a, F> {
        SeriesDisplay { v: self, names }
    }
}

fn accumulate<F: Field>(acc: &mut BTreeMap<Exponent, F>, e: Exponent, c: F) {
    if c.is_zero() {
        return;
    }
    match acc.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().clone() + c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<F: Field> fmt::Debug for SeriesVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct SeriesDisplay<'a, F: Field> {
    v: &'a SeriesVec<F>,
    names: &'a [String],
}

fn write_scalar<F: Field>(f: &mut fmt::Formatter<'_>, terms: &[(Exponent, F)], names: &[String]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, (e, c)) in terms.iter().enumerate() {
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        match (k, negative) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let mut factors: Vec<String> = Vec::new();
        for (i, &a) in e.alpha().iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], a)),
            }
        }
        if factors.is_empty() {
            write!(f, "{magnitude}")?;
        } else if magnitude == "1" {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{}*{}", magnitude, factors.join("*"))?;
        }
    }
    Ok(())
}

impl<F: Field> fmt::Display for SeriesDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.rank == 1 {
            return write_scalar(f, &self.v.terms, self.names);
        }
        write!(f, "[")?;
        for i in 0..self.v.rank {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_scalar(f, &self.v.component(i).terms, self.names)?;
        }
        write!(f, "]")
    }
}

/// An s-series vector together with its monomial multipliers:
/// `s = mult_f * F - mult_g * G`.
#[derive(Clone, Debug)]
pub struct SSeries<F: Field> {
    pub s: SeriesVec<F>,
    pub mult_f: SeriesVec<F>,
    pub mult_g: SeriesVec<F>,
    /// Degree of the lcm `x^gamma` of the two initial monomials, when the
    /// initial components agree.
    pub lcm_degree: Option<u32>,
}

/// The s-series vector of `f` and `g`.
///
/// With `(alpha_F, i)`, `(alpha_G, i)` the initial exponents and
/// `x^gamma = lcm(x^alpha_F, x^alpha_G)`, the multipliers are
/// `g_0 x^(gamma - alpha_F)` and `f_0 x^(gamma - alpha_G)` (`f_0`, `g_0` the
/// initial coefficients), so the two `x^gamma e_i` terms cancel. Differing
/// initial components give zero multipliers and `s = 0`.
pub fn s_series<F: Field>(f: &SeriesVec<F>, g: &SeriesVec<F>) -> Result<SSeries<F>> {
    let ((ef, cf), (eg, cg)) = match (f.leading(), g.leading()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Usage("s-series of a zero vector".into())),
    };
    if f.nvars != g.nvars || f.rank != g.rank {
        return Err(Error::Usage("s-series operands live in different free modules".into()));
    }
    let n = f.nvars;
    if ef.comp() != eg.comp() {
        return Ok(SSeries {
            s: SeriesVec::zero(n, f.rank),
            mult_f: SeriesVec::zero(n, 1),
            mult_g: SeriesVec::zero(n, 1),
            lcm_degree: None,
        });
    }
    let gamma = ef.lcm_alpha(eg);
    let shift_f: Alpha = gamma.iter().zip(ef.alpha()).map(|(g, a)| g - a).collect();
    let shift_g: Alpha = gamma.iter().zip(eg.alpha()).map(|(g, a)| g - a).collect();
    let s = f.mul_term(cg, &shift_f).sub(&g.mul_term(cf, &shift_g));
    Ok(SSeries {
        s,
        mult_f: SeriesVec::monomial(shift_f, cg.clone()),
        mult_g: SeriesVec::monomial(shift_g, cf.clone()),
        lcm_degree: Some(gamma.iter().sum()),
    })
}
