//! Syzygies, minimal free resolutions and Betti numbers.
//!
//! Syzygies of a standard basis come from Schreyer's construction: for each
//! pair with equal initial components, the s-series relation together with
//! the standard representation of the s-series vector. Syzygies of arbitrary
//! generators are obtained by pulling those back through the transformation
//! matrix of the standard basis.

use crate::coeff::Field;
use crate::division::{has_standard_representation, has_standard_representation_with, lead_remainder, DivisionOptions};
use crate::homogenized;
use crate::error::{Error, Result};
use crate::series::{s_series, SeriesVec};
use crate::stdbasis::{
    homogenized_standard_basis, is_member, standard_basis, validate_generators, StdBasis, COMPLETION_MAX_WORK,
};

/// A matrix over K[[x]] stored by columns; column j is a vector in
/// K[[x]]^rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMatrix<F: Field> {
    nvars: usize,
    rows: usize,
    columns: Vec<SeriesVec<F>>,
}

impl<F: Field> ModuleMatrix<F> {
    pub fn from_columns(nvars: usize, rows: usize, columns: Vec<SeriesVec<F>>) -> Result<Self> {
        if columns.iter().any(|c| c.rank() != rows || c.nvars() != nvars) {
            return Err(Error::Usage("matrix column does not match the row count".into()));
        }
        Ok(ModuleMatrix { nvars, rows, columns })
    }

    /// Builds a matrix from scalar entries `entries[i][j]`.
    pub fn from_entries(nvars: usize, rows: usize, cols: usize, entries: &[Vec<SeriesVec<F>>]) -> Self {
        let columns = (0..cols)
            .map(|j| {
                let col: Vec<_> = (0..rows).map(|i| entries[i][j].clone()).collect();
                if rows == 0 {
                    SeriesVec::zero(nvars, 0)
                } else {
                    SeriesVec::from_components(nvars, &col)
                }
            })
            .collect();
        ModuleMatrix { nvars, rows, columns }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SeriesVec<F>] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> SeriesVec<F> {
        self.columns[j].component(i)
    }

    pub fn entries(&self) -> Vec<Vec<SeriesVec<F>>> {
        let comps: Vec<Vec<SeriesVec<F>>> = self.columns.iter().map(|c| c.components()).collect();
        (0..self.rows).map(|i| comps.iter().map(|col| col[i].clone()).collect()).collect()
    }

    /// Entry-wise μ-jet.
    pub fn jet(&self, mu: u32) -> Self {
        ModuleMatrix { nvars: self.nvars, rows: self.rows, columns: self.columns.iter().map(|c| c.jet(mu)).collect() }
    }

    /// Some entry has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().any(|c| c.has_unit_part())
    }

    /// `self * v` for `v` in K[[x]]^cols.
    pub fn apply(&self, v: &SeriesVec<F>) -> SeriesVec<F> {
        let mut acc = SeriesVec::zero(self.nvars, self.rows);
        for (j, a) in v.components().iter().enumerate() {
            if !a.is_zero() {
                acc = acc.add(&self.columns[j].mul_scalar(a));
            }
        }
        acc
    }

    /// `self ∘ next = 0`, checked exactly.
    pub fn composes_to_zero(&self, next: &ModuleMatrix<F>) -> bool {
        next.rows == self.cols() && next.columns.iter().all(|v| self.apply(v).is_zero())
    }
}

/// A finite free resolution
/// `0 -> R^{n_c} -> ... -> R^{n_0} -> M -> 0` of a submodule M of R^p.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    /// `phi_0`: p x n_0, its columns generate M.
    pub presentation: ModuleMatrix<F>,
    /// `phi_1, ..., phi_c`.
    pub maps: Vec<ModuleMatrix<F>>,
    /// Standard bases of the images of `phi_0, ..., phi_c`, when built
    /// level by level (empty after a minimalization that changed bases).
    pub level_bases: Vec<StdBasis<F>>,
    pub minimal: bool,
}

impl<F: Field> FreeResolution<F> {
    pub fn nvars(&self) -> usize {
        self.presentation.nvars
    }

    /// `n_0, ..., n_c`.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(self.presentation.cols()).chain(self.maps.iter().map(|m| m.cols())).collect()
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_complex(&self) -> bool {
        let mut prev = &self.presentation;
        for m in &self.maps {
            if !prev.composes_to_zero(m) {
                return false;
            }
            prev = m;
        }
        true
    }

    pub fn is_minimal(&self) -> bool {
        !self.maps.iter().any(|m| m.has_unit_entry())
    }

    pub fn last_map(&self) -> &ModuleMatrix<F> {
        self.maps.last().unwrap_or(&self.presentation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    pub pd: usize,
    /// Last Betti number, filled in when the quotient is Cohen–Macaulay.
    pub cm_type: Option<usize>,
}

impl BettiTable {
    /// Betti numbers of R/I from a minimal resolution of I: `(1, n_0, ..., n_c)`.
    pub fn of_quotient<F: Field>(res: &FreeResolution<F>) -> Self {
        let betti: Vec<usize> = std::iter::once(1).chain(res.ranks()).collect();
        BettiTable { pd: betti.len() - 1, betti, cm_type: None }
    }

    /// Betti numbers of the module itself: `(n_0, ..., n_c)`.
    pub fn of_module<F: Field>(res: &FreeResolution<F>) -> Self {
        BettiTable { betti: res.ranks(), pd: res.length(), cm_type: None }
    }
}

/// Schreyer's generators of `Syz(G_1, ..., G_r)` for a certified standard
/// basis: for each pair with equal initial components,
/// `unit * (P_ij e_i - P_ji e_j) - sum_m Q_m e_m`.
pub fn schreyer_syzygies<F: Field>(std: &StdBasis<F>) -> Result<Vec<SeriesVec<F>>> {
    if !std.certified {
        return Err(Error::Usage("Schreyer syzygies need a certified standard basis".into()));
    }
    let elems = &std.elements;
    let n = std.nvars();
    let opts = DivisionOptions { max_work: COMPLETION_MAX_WORK, ..DivisionOptions::lead_only() };
    let mut work = 0;
    let mut out = Vec::new();
    for (i, j) in schreyer_pairs(std) {
        {
            // unit * s_ij = sum_m Q_m G_m
            let (ss, unit, quotients) = match &std.sugar {
                Some(sugar) => match homogenized::pair_representation(elems, sugar, (i, j), false, &mut work)? {
                    None => continue,
                    Some((ss, q, true)) => (ss, SeriesVec::one(n), q),
                    Some((_, _, false)) => return Err(no_representation(i, j)),
                },
                None => {
                    let ss = s_series(&elems[i], &elems[j])?;
                    if ss.lcm_degree.is_none() {
                        continue;
                    }
                    let rep = has_standard_representation_with(&ss.s, elems, &opts)?;
                    if !rep.holds {
                        return Err(no_representation(i, j));
                    }
                    (ss, rep.unit, rep.quotients)
                }
            };
            let mut entries: Vec<SeriesVec<F>> = quotients.iter().map(|q| q.neg()).collect();
            entries[i] = entries[i].add(&ss.mult_f.mul_scalar(&unit));
            entries[j] = entries[j].sub(&ss.mult_g.mul_scalar(&unit));
            let xi = SeriesVec::from_components(n, &entries);
            if !xi.is_zero() {
                out.push(xi);
            }
        }
    }
    Ok(out)
}

/// Pairs `i < j` with equal initial components whose relation has a
/// leading term `(lcm_ij / lm_i) e_i` in the Schreyer order not divisible by
/// that of another pair `(i, j')`. The remaining relations lie in the module
/// of these, which is therefore all of the syzygy module. For homogenized
/// bases the monomials carry the t-degree as an extra exponent.
fn schreyer_pairs<F: Field>(std: &StdBasis<F>) -> Vec<(usize, usize)> {
    let elems = &std.elements;
    let mono = |k: usize| -> (usize, Vec<u32>) {
        let e = elems[k].leading_exponent().expect("nonzero");
        let mut m = e.alpha().to_vec();
        if let Some(sugar) = &std.sugar {
            m.push(homogenized::t_degree(&elems[k], sugar[k]));
        }
        (e.comp(), m)
    };
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let mut out = Vec::new();
    for i in 0..elems.len() {
        let (ci, mi) = mono(i);
        let quotients: Vec<(usize, Vec<u32>)> = (i + 1..elems.len())
            .filter_map(|j| {
                let (cj, mj) = mono(j);
                (cj == ci).then(|| (j, mi.iter().zip(&mj).map(|(a, b)| a.max(b) - a).collect()))
            })
            .collect();
        for (j, q) in &quotients {
            let dominated = quotients.iter().any(|(k, p)| k != j && divides(p, q) && (p != q || k < j));
            if !dominated {
                out.push((i, *j));
            }
        }
    }
    out
}

fn no_representation(i: usize, j: usize) -> Error {
    Error::Integrity(format!("s-series of pair ({}, {}) has no standard representation", i + 1, j + 1))
}

fn is_syzygy<F: Field>(v: &SeriesVec<F>, gens: &[SeriesVec<F>]) -> bool {
    let mut acc = SeriesVec::zero(gens[0].nvars(), gens[0].rank());
    for (a, g) in v.components().iter().zip(gens) {
        acc = acc.add(&g.mul_scalar(a));
    }
    acc.is_zero()
}

/// A generating set of `Syz(S_1, ..., S_s)` for arbitrary generators, and the
/// standard basis of the module they generate.
///
/// With `G = H S` the standard basis and `u_k S_k = sum_l R_kl G_l`, the
/// syzygy module is generated by the pulled-back Schreyer relations `Xi H`
/// together with the rows of `diag(u) - R H`.
pub fn syzygies<F: Field>(gens: &[SeriesVec<F>]) -> Result<(Vec<SeriesVec<F>>, StdBasis<F>)> {
    let mut sb = standard_basis(gens)?;
    if !sb.certified {
        return Err(Error::Integrity("standard basis failed certification".into()));
    }
    let relations = match schreyer_syzygies(&sb) {
        Err(Error::Budget(_)) if sb.sugar.is_none() => {
            sb = homogenized_standard_basis(gens)?;
            if !sb.certified {
                return Err(Error::Integrity("standard basis failed certification".into()));
            }
            schreyer_syzygies(&sb)?
        }
        other => other?,
    };
    let n = sb.nvars();
    let s = gens.len();

    let pull_back = |coeffs: &[SeriesVec<F>]| -> Vec<SeriesVec<F>> {
        let mut out = vec![SeriesVec::zero(n, 1); s];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, h) in sb.transform[i].iter().enumerate() {
                if !h.is_zero() {
                    out[k] = out[k].add(&h.mul_scalar(c));
                }
            }
        }
        out
    };

    let mut result = Vec::new();
    for xi in relations {
        let v = SeriesVec::from_components(n, &pull_back(&xi.components()));
        if !v.is_zero() {
            result.push(v);
        }
    }
    let mut work = 0;
    for (k, g) in gens.iter().enumerate() {
        let not_reduced = || Error::Integrity(format!("generator {} is not reduced to zero by its standard basis", k + 1));
        let (unit, quotients) = match &sb.sugar {
            Some(sugar) => {
                let (q, r) = homogenized::reduce(g.clone(), g.max_degree(), &sb.elements, sugar, &mut work)?;
                if !r.is_zero() {
                    return Err(not_reduced());
                }
                (SeriesVec::one(n), q)
            }
            None => {
                let rep = has_standard_representation(g, &sb.elements)?;
                if !rep.holds {
                    return Err(not_reduced());
                }
                (rep.unit, rep.quotients)
            }
        };
        let mut entries: Vec<SeriesVec<F>> = pull_back(&quotients).iter().map(|e| e.neg()).collect();
        entries[k] = entries[k].add(&unit);
        let v = SeriesVec::from_components(n, &entries);
        if !v.is_zero() {
            result.push(v);
        }
    }
    for v in &result {
        if !is_syzygy(v, gens) {
            return Err(Error::Integrity("computed relation is not a syzygy".into()));
        }
    }
    Ok((result, sb))
}

/// [`syzygies`] together with the Koszul relations for scalar generators,
/// thinned so that no kept relation lies in the module of the smaller ones
/// kept before it.
pub fn pruned_syzygies<F: Field>(gens: &[SeriesVec<F>]) -> Result<(Vec<SeriesVec<F>>, StdBasis<F>)> {
    let (mut rels, sb) = syzygies(gens)?;
    if sb.rank() == 1 {
        rels.extend(koszul_relations(gens));
    }
    Ok((prune_relations(rels)?, sb))
}

/// `S_j e_i - S_i e_j` for scalar generators.
fn koszul_relations<F: Field>(gens: &[SeriesVec<F>]) -> Vec<SeriesVec<F>> {
    let n = gens[0].nvars();
    let s = gens.len();
    let mut out = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if gens[i].is_zero() || gens[j].is_zero() {
                continue;
            }
            let mut entries = vec![SeriesVec::zero(n, 1); s];
            entries[i] = gens[j].clone();
            entries[j] = gens[i].neg();
            out.push(SeriesVec::from_components(n, &entries));
        }
    }
    out
}

/// Membership under the completion budget, with a reduction that runs out
/// of budget read as "not shown".
fn known_member<F: Field>(sb: &StdBasis<F>, v: &SeriesVec<F>) -> Result<bool> {
    match lead_remainder(v, &sb.elements, COMPLETION_MAX_WORK) {
        Err(Error::Budget(_)) => Ok(false),
        other => Ok(other?.is_zero()),
    }
}

fn prune_relations<F: Field>(mut rels: Vec<SeriesVec<F>>) -> Result<Vec<SeriesVec<F>>> {
    rels.sort_by_key(|v| v.len());
    let mut kept: Vec<SeriesVec<F>> = Vec::new();
    let mut basis: Option<StdBasis<F>> = None;
    for v in rels {
        if let Some(sb) = &basis {
            if known_member(sb, &v)? {
                continue;
            }
        }
        kept.push(v);
        basis = Some(standard_basis(&kept)?);
    }
    Ok(kept)
}

/// Drops generators that lie in the module generated by the others, last
/// first. Over a local ring an irredundant generating set is minimal, so the
/// result has `dim_K M / mM` elements.
pub fn minimal_generators<F: Field>(gens: &[SeriesVec<F>]) -> Result<Vec<SeriesVec<F>>> {
    drop_redundant(gens, true)
}

/// With `strict` off, a membership test that runs out of budget keeps the
/// generator; the result still generates the module.
fn drop_redundant<F: Field>(gens: &[SeriesVec<F>], strict: bool) -> Result<Vec<SeriesVec<F>>> {
    validate_generators(gens)?;
    let mut keep: Vec<SeriesVec<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        if keep.len() == 1 {
            break;
        }
        let others: Vec<SeriesVec<F>> =
            keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
        let redundant = if strict {
            is_member(&keep[i], &others)?
        } else {
            match standard_basis(&others) {
                Ok(sb) => known_member(&sb, &keep[i])?,
                Err(Error::Budget(_)) => false,
                Err(e) => return Err(e),
            }
        };
        if redundant {
            keep.remove(i);
        }
    }
    Ok(keep)
}

fn minor_det<F: Field>(m: &[Vec<SeriesVec<F>>], rows: &[usize], cols: &[usize], nvars: usize) -> SeriesVec<F> {
    if cols.is_empty() {
        return SeriesVec::one(nvars);
    }
    let (c0, rest) = (cols[0], &cols[1..]);
    let mut acc = SeriesVec::zero(nvars, 1);
    for (k, &r) in rows.iter().enumerate() {
        if m[r][c0].is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let term = minor_det(m, &sub_rows, rest, nvars).mul_scalar(&m[r][c0]);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Injectivity certificate: some maximal (cols x cols) minor is a nonzero
/// polynomial. Determinants are expanded by cofactors, so this is meant for
/// small column counts.
pub fn check_injective_minors<F: Field>(m: &ModuleMatrix<F>) -> Result<bool> {
    let cols = m.cols();
    if cols == 0 {
        return Ok(true);
    }
    if m.rows() < cols {
        return Err(Error::Usage(format!("a {}x{} matrix cannot be injective", m.rows(), cols)));
    }
    let entries = m.entries();
    let all_cols: Vec<usize> = (0..cols).collect();
    Ok(subsets(m.rows(), cols).iter().any(|rows| !minor_det(&entries, rows, &all_cols, m.nvars()).is_zero()))
}

const MINOR_COLUMN_LIMIT: usize = 4;

fn certify<F: Field>(res: &FreeResolution<F>) -> Result<()> {
    if !res.is_complex() {
        return Err(Error::Integrity("consecutive maps do not compose to zero".into()));
    }
    let last = res.last_map();
    if last.cols() <= MINOR_COLUMN_LIMIT && !check_injective_minors(last)? {
        return Err(Error::Integrity("last map of the resolution is not injective".into()));
    }
    Ok(())
}

/// Minimal free resolution of the module generated by `gens`: at each level
/// take minimal generators, compute their standard basis and Schreyer
/// syzygies, and stop once the syzygy module vanishes.
pub fn build_resolution<F: Field>(gens: &[SeriesVec<F>]) -> Result<FreeResolution<F>> {
    validate_generators(gens)?;
    let n = gens[0].nvars();
    let p = gens[0].rank();
    let mut current = drop_redundant(gens, false)?;
    let presentation = ModuleMatrix::from_columns(n, p, current.clone())?;
    let mut maps = Vec::new();
    let mut level_bases = Vec::new();
    loop {
        let (syz, sb) = pruned_syzygies(&current)?;
        level_bases.push(sb);
        if syz.is_empty() {
            break;
        }
        let next = drop_redundant(&syz, false)?;
        maps.push(ModuleMatrix::from_columns(n, current.len(), next.clone())?);
        if maps.len() > n {
            return Err(Error::Integrity(format!("resolution longer than {n}, violating the syzygy bound")));
        }
        current = next;
    }
    let res = FreeResolution { presentation, maps, level_bases, minimal: false };
    let mut res = if res.is_minimal() { res } else { minimalize(res)? };
    certify(&res)?;
    res.minimal = res.is_minimal();
    Ok(res)
}

/// A non-minimal resolution: the given nonzero generators, every relation
/// produced for them as the first syzygies, then minimal generators at the
/// later levels. Iterating raw relations at every level would not stop, since
/// a redundant generating set always has syzygies. `max_length` bounds the
/// number of levels.
pub fn schreyer_resolution<F: Field>(gens: &[SeriesVec<F>], max_length: usize) -> Result<FreeResolution<F>> {
    validate_generators(gens)?;
    let n = gens[0].nvars();
    let mut current: Vec<SeriesVec<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let presentation = ModuleMatrix::from_columns(n, gens[0].rank(), current.clone())?;
    let mut maps = Vec::new();
    loop {
        let (syz, _) = syzygies(&current)?;
        if syz.is_empty() {
            break;
        }
        if maps.len() == max_length {
            return Err(Error::Usage(format!("Schreyer resolution exceeds {max_length} levels")));
        }
        let next = if maps.is_empty() { syz } else { drop_redundant(&syz, false)? };
        maps.push(ModuleMatrix::from_columns(n, current.len(), next.clone())?);
        current = next;
    }
    let res = FreeResolution { presentation, maps, level_bases: Vec::new(), minimal: false };
    certify(&res)?;
    let minimal = res.is_minimal();
    Ok(FreeResolution { minimal, ..res })
}

/// A unit entry of `phi_level` at `(row, col)`, `level >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitEntry {
    pub level: usize,
    pub row: usize,
    pub col: usize,
}

/// Removes unit entries: lowest level first, then by (row, col).
pub fn minimalize<F: Field>(res: FreeResolution<F>) -> Result<FreeResolution<F>> {
    minimalize_by(res, |_| 0)
}

/// Unit elimination with a caller-chosen order: `pick` receives every
/// current unit entry (sorted) and returns the index of the one to cancel.
///
/// Cancelling a unit `u = phi_k[r][c]` splits off `R --u--> R`: row r and
/// column c leave `phi_k`, which becomes `u * A - b * d`; column r leaves
/// `phi_{k-1}` and row c leaves `phi_{k+1}`.
pub fn minimalize_by<F: Field>(
    res: FreeResolution<F>,
    mut pick: impl FnMut(&[UnitEntry]) -> usize,
) -> Result<FreeResolution<F>> {
    if !res.is_complex() {
        return Err(Error::Integrity("cannot minimalize a sequence that is not a complex".into()));
    }
    let n = res.nvars();
    let p = res.presentation.rows();
    // dense copies: mats[0] = phi_0, mats[k] = phi_k
    let mut dims: Vec<(usize, usize)> = std::iter::once(&res.presentation)
        .chain(res.maps.iter())
        .map(|m| (m.rows(), m.cols()))
        .collect();
    let mut mats: Vec<Vec<Vec<SeriesVec<F>>>> =
        std::iter::once(&res.presentation).chain(res.maps.iter()).map(|m| m.entries()).collect();
    let mut changed = false;

    loop {
        let mut units = Vec::new();
        for (k, m) in mats.iter().enumerate().skip(1) {
            for (r, row) in m.iter().enumerate() {
                for (c, e) in row.iter().enumerate() {
                    if e.has_unit_part() {
                        units.push(UnitEntry { level: k, row: r, col: c });
                    }
                }
            }
        }
        if units.is_empty() {
            break;
        }
        let UnitEntry { level: k, row: r, col: c } = units[pick(&units).min(units.len() - 1)];
        changed = true;

        let m = &mats[k];
        let u = m[r][c].clone();
        let mut next: Vec<Vec<SeriesVec<F>>> = Vec::with_capacity(dims[k].0 - 1);
        for (i, row) in m.iter().enumerate() {
            if i == r {
                continue;
            }
            let b = &row[c];
            let new_row: Vec<SeriesVec<F>> = row
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(j, a)| {
                    let ua = a.mul_scalar(&u);
                    if b.is_zero() {
                        ua
                    } else {
                        ua.sub(&m[r][j].mul_scalar(b))
                    }
                })
                .collect();
            next.push(new_row);
        }
        mats[k] = next;
        dims[k] = (dims[k].0 - 1, dims[k].1 - 1);

        for row in mats[k - 1].iter_mut() {
            row.remove(r);
        }
        dims[k - 1].1 -= 1;

        if k + 1 < mats.len() {
            mats[k + 1].remove(c);
            dims[k + 1].0 -= 1;
        }
    }

    // trailing levels of rank zero carry no information
    while mats.len() > 1 && dims.last().is_some_and(|d| d.1 == 0) {
        mats.pop();
        dims.pop();
    }

    let to_matrix = |m: &Vec<Vec<SeriesVec<F>>>, (rows, cols): (usize, usize)| ModuleMatrix::from_entries(n, rows, cols, m);
    let presentation = to_matrix(&mats[0], dims[0]);
    debug_assert_eq!(presentation.rows(), p);
    let maps: Vec<ModuleMatrix<F>> = mats.iter().zip(&dims).skip(1).map(|(m, d)| to_matrix(m, *d)).collect();
    let out = FreeResolution {
        presentation,
        maps,
        level_bases: if changed { Vec::new() } else { res.level_bases },
        minimal: true,
    };
    if !out.is_complex() {
        return Err(Error::Integrity("unit elimination broke the complex property".into()));
    }
    Ok(out)
}
