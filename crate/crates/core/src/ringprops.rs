//! Ring-theoretic verdicts for K[[x]]/I and the jet-truncation laboratory.
//!
//! Cohen–Macaulayness is decided by Auslander–Buchsbaum over the regular
//! ring K[[x]]: R/I is CM iff `pd(R/I) = n - dim R/I`. Flatness of a map
//! K[[y]] -> R/I with CM source quotient is decided through the special
//! fibre: flat iff `dim R/I = m + dim R/J`, J = I + (phi_1, ..., phi_m).

use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::hilbert::{hs_polynomial, HilbertData};
use crate::resolution::{build_resolution, BettiTable, FreeResolution};
use crate::series::SeriesVec;
use crate::stdbasis::{Diagram, StdBasis};

#[derive(Clone, Debug)]
pub struct RingReport {
    pub n: usize,
    pub dim: usize,
    pub pd: usize,
    pub betti: BettiTable,
    pub is_cm: bool,
    pub cm_type: Option<usize>,
    pub is_gorenstein: bool,
    pub hs: HilbertData,
    pub diagram: Diagram,
}

/// Everything ring_report computes, plus the resolution and standard bases
/// the laboratory needs.
#[derive(Clone, Debug)]
pub struct IdealAnalysis<F: Field> {
    pub report: RingReport,
    pub resolution: Option<FreeResolution<F>>,
}

fn check_ideal<F: Field>(ideal: &[SeriesVec<F>]) -> Result<()> {
    let first = ideal.first().ok_or_else(|| Error::Usage("empty generator list".into()))?;
    if ideal.iter().any(|g| g.rank() != 1 || g.nvars() != first.nvars()) {
        return Err(Error::Usage("ideal generators must be scalar series in the same variables".into()));
    }
    if ideal.iter().any(|g| g.has_unit_part()) {
        return Err(Error::WholeRing);
    }
    Ok(())
}

fn assemble(n: usize, diagram: Diagram, hs: HilbertData, mut betti: BettiTable) -> RingReport {
    let dim = hs.dim;
    let pd = betti.pd;
    let is_cm = pd + dim == n;
    let cm_type = if is_cm { betti.betti.last().copied() } else { None };
    betti.cm_type = cm_type;
    RingReport { n, dim, pd, betti, is_cm, cm_type, is_gorenstein: is_cm && cm_type == Some(1), hs, diagram }
}

/// Analysis of R/I for a proper ideal; the zero ideal is accepted here
/// (R itself: regular, so CM and Gorenstein).
pub fn analyze_ideal<F: Field>(ideal: &[SeriesVec<F>]) -> Result<IdealAnalysis<F>> {
    check_ideal(ideal)?;
    let n = ideal[0].nvars();
    if ideal.iter().all(|g| g.is_zero()) {
        let diagram = Diagram::from_exponents(n, 1, []);
        let hs = hs_polynomial(&diagram)?;
        let betti = BettiTable { betti: vec![1], pd: 0, cm_type: None };
        return Ok(IdealAnalysis { report: assemble(n, diagram, hs, betti), resolution: None });
    }
    let res = build_resolution(ideal)?;
    let diagram = res.level_bases[0].diagram();
    let hs = hs_polynomial(&diagram)?;
    let betti = BettiTable::of_quotient(&res);
    if betti.pd > n {
        return Err(Error::Integrity(format!("projective dimension {} exceeds {n}", betti.pd)));
    }
    Ok(IdealAnalysis { report: assemble(n, diagram, hs, betti), resolution: Some(res) })
}

pub fn ring_report<F: Field>(ideal: &[SeriesVec<F>]) -> Result<RingReport> {
    check_ideal(ideal)?;
    if ideal.iter().all(|g| g.is_zero()) {
        return Err(Error::Usage("the zero ideal has no ring report".into()));
    }
    Ok(analyze_ideal(ideal)?.report)
}

/// A local homomorphism K[[y_1..y_m]] -> K[[x]]/I, given by the images of
/// the y's.
#[derive(Clone, Debug)]
pub struct MapSpec<F: Field> {
    pub images: Vec<SeriesVec<F>>,
}

impl<F: Field> MapSpec<F> {
    pub fn source_vars(&self) -> usize {
        self.images.len()
    }
}

#[derive(Clone, Debug)]
pub struct FlatnessReport {
    pub flat: bool,
    pub source_vars: usize,
    pub dim_total: usize,
    pub dim_fibre: usize,
    pub total: RingReport,
    pub fibre: RingReport,
}

/// Decides flatness of `phi` over a Cohen–Macaulay R/I by the dimension
/// equality for the special fibre. Refuses when R/I is not CM.
pub fn flatness_check<F: Field>(ideal: &[SeriesVec<F>], phi: &MapSpec<F>) -> Result<FlatnessReport> {
    let total = ring_report(ideal)?;
    if !total.is_cm {
        return Err(Error::Inapplicable(format!(
            "K[[x]]/I is not Cohen-Macaulay (pd {} + dim {} != {})",
            total.pd, total.dim, total.n
        )));
    }
    let n = ideal[0].nvars();
    for (i, img) in phi.images.iter().enumerate() {
        if img.rank() != 1 || img.nvars() != n {
            return Err(Error::Usage(format!("image {} is not a scalar series in the ring variables", i + 1)));
        }
        if img.has_unit_part() {
            return Err(Error::Inapplicable(format!("image {} has a constant term, so the map is not local", i + 1)));
        }
    }
    let mut j: Vec<SeriesVec<F>> = ideal.to_vec();
    j.extend(phi.images.iter().cloned());
    let fibre = ring_report(&j)?;
    let m = phi.source_vars();
    Ok(FlatnessReport {
        flat: total.dim == m + fibre.dim,
        source_vars: m,
        dim_total: total.dim,
        dim_fibre: fibre.dim,
        total,
        fibre,
    })
}

/// Componentwise μ-jets of the generators.
pub fn truncate_ideal<F: Field>(ideal: &[SeriesVec<F>], mu: u32) -> Vec<SeriesVec<F>> {
    ideal.iter().map(|g| g.jet(mu)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub mu: u32,
    pub diagram_equal: bool,
    pub hs_equal: bool,
    pub betti_equal: bool,
    pub dim_equal: bool,
    pub cm_equal: bool,
    pub candidate_mu0: u32,
}

impl TruncationReport {
    pub fn all_equal(&self) -> bool {
        self.diagram_equal && self.hs_equal && self.betti_equal && self.dim_equal && self.cm_equal
    }
}

fn hs_agree(a: &HilbertData, b: &HilbertData) -> bool {
    let len = a.values.len().min(b.values.len());
    a.poly_coeffs == b.poly_coeffs && a.values[..len] == b.values[..len]
}

fn compare_reports(mu: u32, base: &RingReport, trunc: &RingReport, candidate_mu0: u32) -> TruncationReport {
    TruncationReport {
        mu,
        diagram_equal: base.diagram == trunc.diagram,
        hs_equal: hs_agree(&base.hs, &trunc.hs),
        betti_equal: base.betti.betti == trunc.betti.betti,
        dim_equal: base.dim == trunc.dim,
        cm_equal: base.is_cm == trunc.is_cm,
        candidate_mu0,
    }
}

/// `max |alpha~_k|` over the levels of the resolution, `alpha~_k` the largest
/// initial exponent in the standard basis of the k-th module of syzygies.
pub fn mu0_from_bases<F: Field>(bases: &[StdBasis<F>]) -> u32 {
    bases
        .iter()
        .filter_map(|sb| sb.initial_exponents().into_iter().max())
        .map(|e| e.degree())
        .max()
        .unwrap_or(0)
}

fn check_proper_nonzero<F: Field>(ideal: &[SeriesVec<F>]) -> Result<()> {
    check_ideal(ideal)?;
    if ideal.iter().all(|g| g.is_zero()) {
        return Err(Error::Usage("the ideal must be nonzero".into()));
    }
    Ok(())
}

pub fn candidate_mu0<F: Field>(ideal: &[SeriesVec<F>]) -> Result<u32> {
    check_proper_nonzero(ideal)?;
    let res = build_resolution(ideal)?;
    Ok(mu0_from_bases(&res.level_bases))
}

/// Reusable state for repeated truncation comparisons of one ideal.
pub struct TruncationLab<F: Field> {
    ideal: Vec<SeriesVec<F>>,
    base: RingReport,
    candidate: u32,
}

impl<F: Field> TruncationLab<F> {
    pub fn new(ideal: &[SeriesVec<F>]) -> Result<Self> {
        check_proper_nonzero(ideal)?;
        let analysis = analyze_ideal(ideal)?;
        let res = analysis.resolution.as_ref().expect("nonzero ideal has a resolution");
        let candidate = mu0_from_bases(&res.level_bases);
        Ok(TruncationLab { ideal: ideal.to_vec(), base: analysis.report, candidate })
    }

    pub fn candidate_mu0(&self) -> u32 {
        self.candidate
    }

    pub fn base_report(&self) -> &RingReport {
        &self.base
    }

    pub fn compare(&self, mu: u32) -> Result<TruncationReport> {
        let truncated = truncate_ideal(&self.ideal, mu);
        if truncated == self.ideal {
            return Ok(compare_reports(mu, &self.base, &self.base, self.candidate));
        }
        let trunc = analyze_ideal(&truncated)?.report;
        Ok(compare_reports(mu, &self.base, &trunc, self.candidate))
    }

    /// Comparisons for `mu = 0..=mu_max` and the smallest mu from which every
    /// comparison up to `mu_max` is all-equal.
    pub fn scan(&self, mu_max: u32) -> Result<(Vec<TruncationReport>, Option<u32>)> {
        let reports = (0..=mu_max).map(|mu| self.compare(mu)).collect::<Result<Vec<_>>>()?;
        let mut empirical = None;
        for r in reports.iter().rev() {
            if !r.all_equal() {
                break;
            }
            empirical = Some(r.mu);
        }
        Ok((reports, empirical))
    }
}

pub fn compare_truncation<F: Field>(ideal: &[SeriesVec<F>], mu: u32) -> Result<TruncationReport> {
    TruncationLab::new(ideal)?.compare(mu)
}

pub fn empirical_mu0<F: Field>(ideal: &[SeriesVec<F>], mu_max: u32) -> Result<Option<u32>> {
    Ok(TruncationLab::new(ideal)?.scan(mu_max)?.1)
}
