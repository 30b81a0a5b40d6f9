//! Division with remainder under the local order.
//!
//! Naive division does not terminate for a local order, so reduction of the
//! leading term follows Mora: among the divisors whose initial exponent
//! divides the current one, the one of least écart is used, and whenever it
//! has larger écart than the current vector, the current vector is itself
//! appended to the list of reducers. The price is a unit multiplier:
//!
//! ```text
//! unit * F = sum_i quotients[i] * G_i + remainder,   unit(0) != 0
//! ```
//!
//! Tail terms are then reduced the same way, one reducible term at a time,
//! up to a degree bound (see [`DivisionOptions`]).

use std::collections::hash_map::{Entry, HashMap};

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::series::{Alpha, Exponent, SeriesVec};

#[derive(Clone, Debug)]
pub struct DivisionResult<F: Field> {
    pub unit: SeriesVec<F>,
    pub quotients: Vec<SeriesVec<F>>,
    pub remainder: SeriesVec<F>,
    /// No exponent of the remainder is divisible by an initial exponent of
    /// a divisor. False only when the tail bound was reached.
    pub fully_reduced: bool,
}

impl<F: Field> DivisionResult<F> {
    /// Checks `unit * f = sum q_i g_i + remainder` exactly.
    pub fn identity_holds(&self, f: &SeriesVec<F>, divisors: &[SeriesVec<F>]) -> bool {
        let mut rhs = self.remainder.clone();
        for (q, g) in self.quotients.iter().zip(divisors) {
            rhs = rhs.add(&g.mul_scalar(q));
        }
        f.mul_scalar(&self.unit) == rhs
    }
}

#[derive(Clone, Debug)]
pub struct DivisionOptions {
    /// Reduce terms beyond the initial one.
    pub reduce_tail: bool,
    /// Tail terms of degree above this bound are left unreduced. `None`
    /// picks `3 * D + 8`, D the largest degree among the inputs.
    pub tail_degree_bound: Option<u32>,
    pub max_tail_rounds: usize,
    /// Cap on the total size of intermediate series processed by one call;
    /// exceeding it during the initial-term reduction is a budget error,
    /// during tail reduction it ends the tail pass.
    pub max_work: u64,
}

pub const DEFAULT_MAX_WORK: u64 = 20_000_000;

impl Default for DivisionOptions {
    fn default() -> Self {
        DivisionOptions { reduce_tail: true, tail_degree_bound: None, max_tail_rounds: 512, max_work: DEFAULT_MAX_WORK }
    }
}

impl DivisionOptions {
    pub fn lead_only() -> Self {
        DivisionOptions { reduce_tail: false, ..Default::default() }
    }
}

/// Scalar polynomial under construction; cheap single-term updates.
#[derive(Clone)]
struct Accumulator<F: Field>(HashMap<Alpha, F>);

impl<F: Field> Accumulator<F> {
    fn zero() -> Self {
        Accumulator(HashMap::new())
    }

    fn one(nvars: usize) -> Self {
        let mut acc = Self::zero();
        acc.0.insert(Alpha::from_elem(0, nvars), F::one());
        acc
    }

    fn add_term(&mut self, alpha: Alpha, c: F) {
        match self.0.entry(alpha) {
            Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    /// `self -= c * x^shift * other`
    fn sub_shifted(&mut self, other: &Self, c: &F, shift: &[u32]) {
        for (a, v) in &other.0 {
            let moved: Alpha = a.iter().zip(shift).map(|(x, y)| x + y).collect();
            self.add_term(moved, -(c.clone() * v.clone()));
        }
    }

    fn into_series(self, nvars: usize) -> SeriesVec<F> {
        SeriesVec::from_terms(nvars, 1, self.0.into_iter().map(|(a, c)| (Exponent::scalar(a), c)))
    }
}

#[derive(Clone)]
struct Representation<F: Field> {
    unit: Accumulator<F>,
    quotients: Vec<Accumulator<F>>,
}

impl<F: Field> Representation<F> {
    fn size(&self) -> u64 {
        (self.unit.0.len() + self.quotients.iter().map(|q| q.0.len()).sum::<usize>()) as u64
    }
}

struct Snapshot<F: Field> {
    value: SeriesVec<F>,
    rep: Representation<F>,
    ecart: u32,
}

type Reduced<F> = (SeriesVec<F>, Vec<SeriesVec<F>>, SeriesVec<F>);

enum Reducer {
    Divisor(usize),
    Snapshot(usize),
}

struct Mora<'a, F: Field> {
    divisors: &'a [SeriesVec<F>],
    ecarts: Vec<u32>,
    nvars: usize,
}

impl<'a, F: Field> Mora<'a, F> {
    fn new(divisors: &'a [SeriesVec<F>], nvars: usize) -> Self {
        Mora { divisors, ecarts: divisors.iter().map(|g| g.ecart()).collect(), nvars }
    }

    fn reducible(&self, e: &Exponent) -> bool {
        self.divisors.iter().any(|g| g.leading_exponent().is_some_and(|l| l.divides(e)))
    }

    /// Reduces the initial term of `h` until it is not divisible by any
    /// divisor. Returns `(unit, quotients, h')` with
    /// `unit * h = sum q_i G_i + h'`.
    /// With `track` off the unit and quotients are left at their initial
    /// values and only the returned remainder is meaningful.
    fn reduce_lead(&self, mut h: SeriesVec<F>, work: &mut u64, max_work: u64, track: bool) -> Result<Reduced<F>> {
        let s = self.divisors.len();
        let mut rep = Representation { unit: Accumulator::one(self.nvars), quotients: vec![Accumulator::zero(); s] };
        let mut snapshots: Vec<Snapshot<F>> = Vec::new();

        while let Some((lead, lc)) = h.leading().cloned() {
            *work += h.len() as u64;
            if *work > max_work {
                return Err(Error::Budget(format!("division exceeded {max_work} work units")));
            }
            // least écart, then lowest index; divisors precede snapshots
            let mut best: Option<(u32, Reducer)> = None;
            for (i, g) in self.divisors.iter().enumerate() {
                if g.leading_exponent().is_some_and(|l| l.divides(&lead))
                    && best.as_ref().is_none_or(|(e, _)| self.ecarts[i] < *e)
                {
                    best = Some((self.ecarts[i], Reducer::Divisor(i)));
                }
            }
            for (j, t) in snapshots.iter().enumerate() {
                if t.value.leading_exponent().is_some_and(|l| l.divides(&lead))
                    && best.as_ref().is_none_or(|(e, _)| t.ecart < *e)
                {
                    best = Some((t.ecart, Reducer::Snapshot(j)));
                }
            }
            let Some((ecart, reducer)) = best else { break };

            let h_ecart = h.ecart();
            if ecart > h_ecart {
                snapshots.push(Snapshot { value: h.clone(), rep: rep.clone(), ecart: h_ecart });
            }

            match reducer {
                Reducer::Divisor(i) => {
                    let g = &self.divisors[i];
                    let (gl, gc) = g.leading().expect("nonzero divisor");
                    let shift = gl.quotient_alpha(&lead);
                    let c = lc / gc.clone();
                    h = h.sub(&g.mul_term(&c, &shift));
                    if track {
                        rep.quotients[i].add_term(shift, c);
                    }
                }
                Reducer::Snapshot(j) => {
                    let t = &snapshots[j];
                    let (tl, tc) = t.value.leading().expect("nonzero snapshot");
                    let shift = tl.quotient_alpha(&lead);
                    let c = lc / tc.clone();
                    h = h.sub(&t.value.mul_term(&c, &shift));
                    if track {
                        *work += t.rep.size();
                        rep.unit.sub_shifted(&t.rep.unit, &c, &shift);
                        for (q, tq) in rep.quotients.iter_mut().zip(&t.rep.quotients) {
                            q.sub_shifted(tq, &c, &shift);
                        }
                    }
                }
            }
        }
        let n = self.nvars;
        let quotients = rep.quotients.into_iter().map(|q| q.into_series(n)).collect();
        Ok((rep.unit.into_series(n), quotients, h))
    }
}

fn validate<F: Field>(f: &SeriesVec<F>, divisors: &[SeriesVec<F>]) -> Result<()> {
    for (i, g) in divisors.iter().enumerate() {
        if g.is_zero() {
            return Err(Error::Usage(format!("divisor {} is zero", i + 1)));
        }
        if g.nvars() != f.nvars() || g.rank() != f.rank() {
            return Err(Error::Usage(format!("divisor {} lives in a different free module", i + 1)));
        }
    }
    Ok(())
}

/// Weak normal form with full tail reduction under the default options.
pub fn weak_normal_form<F: Field>(f: &SeriesVec<F>, divisors: &[SeriesVec<F>]) -> Result<DivisionResult<F>> {
    weak_normal_form_with(f, divisors, &DivisionOptions::default())
}

/// Only the initial term is reduced: the remainder is zero or has an
/// initial exponent outside the monomial module of the divisors.
pub fn lead_normal_form<F: Field>(f: &SeriesVec<F>, divisors: &[SeriesVec<F>]) -> Result<DivisionResult<F>> {
    weak_normal_form_with(f, divisors, &DivisionOptions::lead_only())
}

pub fn weak_normal_form_with<F: Field>(
    f: &SeriesVec<F>,
    divisors: &[SeriesVec<F>],
    opts: &DivisionOptions,
) -> Result<DivisionResult<F>> {
    validate(f, divisors)?;
    let mora = Mora::new(divisors, f.nvars());
    let mut work = 0;
    let (mut unit, mut quotients, mut rem) = mora.reduce_lead(f.clone(), &mut work, opts.max_work, true)?;

    let mut fully_reduced = !rem.support().any(|e| mora.reducible(e));
    if opts.reduce_tail && !fully_reduced {
        let top = divisors.iter().map(|g| g.max_degree()).chain([f.max_degree()]).max().unwrap_or(0);
        let bound = opts.tail_degree_bound.unwrap_or(3 * top + 8);
        let mut rounds = 0;
        loop {
            let Some(pos) = rem.support().position(|e| mora.reducible(e)) else {
                fully_reduced = true;
                break;
            };
            if rem.terms()[pos].0.degree() > bound || rounds >= opts.max_tail_rounds {
                break;
            }
            rounds += 1;
            let n = rem.nvars();
            let low = SeriesVec::from_terms(n, rem.rank(), rem.terms()[..pos].iter().cloned());
            let high = SeriesVec::from_terms(n, rem.rank(), rem.terms()[pos..].iter().cloned());
            let Ok((u2, q2, high2)) = mora.reduce_lead(high, &mut work, opts.max_work, true) else { break };
            unit = unit.mul_scalar(&u2);
            for (q, extra) in quotients.iter_mut().zip(q2) {
                *q = q.mul_scalar(&u2).add(&extra);
            }
            rem = low.mul_scalar(&u2).add(&high2);
        }
    }

    Ok(DivisionResult { unit, quotients, remainder: rem, fully_reduced })
}

/// The remainder of the initial-term reduction alone, without the unit and
/// quotients. Zero exactly when [`lead_normal_form`] gives remainder zero,
/// that is, when `f` has a standard representation.
pub fn lead_remainder<F: Field>(f: &SeriesVec<F>, divisors: &[SeriesVec<F>], max_work: u64) -> Result<SeriesVec<F>> {
    validate(f, divisors)?;
    let mut work = 0;
    Ok(Mora::new(divisors, f.nvars()).reduce_lead(f.clone(), &mut work, max_work, false)?.2)
}

#[derive(Clone, Debug)]
pub struct StandardRepresentation<F: Field> {
    pub holds: bool,
    /// `unit * F = sum quotients[i] * G_i` when `holds`.
    pub unit: SeriesVec<F>,
    pub quotients: Vec<SeriesVec<F>>,
}

/// Decides whether `f` (up to a unit) has a standard representation in terms
/// of `divisors`: `unit * f = sum Q_i G_i` with
/// `inexp(f) = min_i inexp(Q_i G_i)`.
pub fn has_standard_representation<F: Field>(
    f: &SeriesVec<F>,
    divisors: &[SeriesVec<F>],
) -> Result<StandardRepresentation<F>> {
    has_standard_representation_with(f, divisors, &DivisionOptions::lead_only())
}

/// [`has_standard_representation`] with explicit division options; the tail
/// settings are ignored.
pub fn has_standard_representation_with<F: Field>(
    f: &SeriesVec<F>,
    divisors: &[SeriesVec<F>],
    opts: &DivisionOptions,
) -> Result<StandardRepresentation<F>> {
    let opts = DivisionOptions { reduce_tail: false, ..opts.clone() };
    let div = weak_normal_form_with(f, divisors, &opts)?;
    let holds = div.remainder.is_zero() && {
        let min = div
            .quotients
            .iter()
            .zip(divisors)
            .map(|(q, g)| g.mul_scalar(q).inexp())
            .min()
            .unwrap_or(crate::series::Initial::Infinity);
        min == f.inexp()
    };
    Ok(StandardRepresentation { holds, unit: div.unit, quotients: div.quotients })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::series::{Alpha, Initial};
    use num_traits::Zero;

    type Q = Rational;

    fn p(terms: &[(&[u32], i64)]) -> SeriesVec<Q> {
        let n = terms[0].0.len();
        SeriesVec::from_terms(
            n,
            1,
            terms.iter().map(|(a, c)| (Exponent::scalar(Alpha::from_slice(a)), Q::from_integer((*c).into()))),
        )
    }

    fn check(f: &SeriesVec<Q>, gs: &[SeriesVec<Q>], r: &DivisionResult<Q>) {
        assert!(r.identity_holds(f, gs), "division identity");
        assert!(!r.unit.constant_coeff().is_zero(), "unit must be invertible");
        if let Initial::Finite(_) = f.inexp() {
            for (q, g) in r.quotients.iter().zip(gs) {
                assert!(g.mul_scalar(q).inexp() >= f.inexp());
            }
        }
        if r.fully_reduced {
            for e in r.remainder.support() {
                assert!(!gs.iter().any(|g| g.leading_exponent().unwrap().divides(e)));
            }
        }
    }

    #[test]
    fn divides_power() {
        let f = p(&[(&[3], 1)]);
        let gs = [p(&[(&[2], 1)])];
        let r = weak_normal_form(&f, &gs).unwrap();
        assert_eq!(r.unit, SeriesVec::one(1));
        assert_eq!(r.quotients[0], p(&[(&[1], 1)]));
        assert!(r.remainder.is_zero());
        check(&f, &gs, &r);
    }

    #[test]
    fn nothing_to_reduce() {
        let f = p(&[(&[0, 2], 1)]);
        let gs = [p(&[(&[1, 0], 1)])];
        let r = weak_normal_form(&f, &gs).unwrap();
        assert_eq!(r.unit, SeriesVec::one(2));
        assert_eq!(r.remainder, f);
        check(&f, &gs, &r);
    }

    #[test]
    fn unit_multiplier_appears() {
        // (1 + x) * x = 1 * (x + x^2)
        let f = p(&[(&[1], 1)]);
        let gs = [p(&[(&[1], 1), (&[2], 1)])];
        let r = weak_normal_form(&f, &gs).unwrap();
        assert_eq!(r.unit, p(&[(&[0], 1), (&[1], 1)]));
        assert_eq!(r.quotients[0], p(&[(&[0], 1)]));
        assert!(r.remainder.is_zero());
        check(&f, &gs, &r);
    }

    #[test]
    fn tail_reduction_needs_unit() {
        // F = x + y, G = y - x*y: the tail x*y keeps regenerating x^k y without
        // a unit multiplier; with it the remainder is x - x^2.
        let f = p(&[(&[1, 0], 1), (&[0, 1], 1)]);
        let gs = [p(&[(&[0, 1], 1), (&[1, 1], -1)])];
        let r = weak_normal_form(&f, &gs).unwrap();
        assert!(r.fully_reduced);
        assert_eq!(r.remainder, p(&[(&[1, 0], 1), (&[2, 0], -1)]));
        check(&f, &gs, &r);
    }

    #[test]
    fn zero_divisor_rejected() {
        let f = p(&[(&[1], 1)]);
        let gs = [SeriesVec::zero(1, 1)];
        assert!(matches!(weak_normal_form(&f, &gs), Err(Error::Usage(_))));
    }

    #[test]
    fn standard_representation_examples() {
        let g1 = p(&[(&[2, 0], 1), (&[0, 3], 1)]);
        let g2 = p(&[(&[1, 1], 1)]);
        let g3 = p(&[(&[0, 4], 1)]);
        let y4 = g3.clone();

        let rep = has_standard_representation(&y4, &[g1.clone(), g2.clone(), g3.clone()]).unwrap();
        assert!(rep.holds);
        assert!(rep.quotients[0].is_zero() && rep.quotients[1].is_zero());
        assert_eq!(rep.quotients[2], SeriesVec::one(2));

        let zero = SeriesVec::zero(2, 1);
        let rep = has_standard_representation(&zero, &[g1.clone(), g2.clone()]).unwrap();
        assert!(rep.holds && rep.quotients.iter().all(|q| q.is_zero()));

        let rep = has_standard_representation(&y4, &[g1, g2]).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn deterministic() {
        let f = p(&[(&[3, 1], 2), (&[0, 5], 1), (&[1, 1], -1)]);
        let gs = [p(&[(&[1, 0], 1), (&[0, 2], 1)]), p(&[(&[0, 1], 1), (&[3, 0], 1)])];
        let a = weak_normal_form(&f, &gs).unwrap();
        let b = weak_normal_form(&f, &gs).unwrap();
        assert_eq!(a.remainder, b.remainder);
        assert_eq!(a.unit, b.unit);
        assert_eq!(a.quotients, b.quotients);
        check(&f, &gs, &a);
    }
}
