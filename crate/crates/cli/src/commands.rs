//! Subcommand dispatch and report rendering.

use hironaka::coeff::{Embed, RationalField};
use hironaka::{
    build_resolution, flatness_check, hs_function, hs_polynomial, ring_report, standard_basis, truncate_ideal,
    BettiTable, Diagram, Exponent, Field, FieldKind, MapSpec, ModuleMatrix, RingReport, SeriesVec, TruncationLab,
    TruncationReport,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::{embed_all, Problem};

pub const DEFAULT_ETA_MAX: u32 = 10;
pub const DEFAULT_MU_MAX: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    StdBasis,
    Diagram,
    Hilbert { eta_max: Option<u32> },
    Resolve,
    Betti,
    RingReport,
    FlatCheck,
    Truncate { mu: u32 },
    Mu0Scan { mu_max: Option<u32> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::StdBasis => "std-basis",
            Command::Diagram => "diagram",
            Command::Hilbert { .. } => "hilbert",
            Command::Resolve => "resolve",
            Command::Betti => "betti",
            Command::RingReport => "ring-report",
            Command::FlatCheck => "flat-check",
            Command::Truncate { .. } => "truncate",
            Command::Mu0Scan { .. } => "mu0-scan",
        }
    }
}

/// A finished command: a JSON document and its plain-text rendering.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn run_command(cmd: &Command, problem: &Problem) -> Result<Report, CliError> {
    let mut report = match problem.field {
        FieldKind::Rationals => run_in(cmd, problem, &RationalField)?,
        FieldKind::Prime(p) => run_in(cmd, problem, &p)?,
    };
    if let Value::Object(map) = &mut report.json {
        map.insert("command".into(), json!(cmd.name()));
        map.insert("field".into(), json!(problem.field.to_string()));
        map.insert("variables".into(), json!(problem.variables));
    }
    Ok(report)
}

struct Ctx<'a, F: Field> {
    vars: &'a [String],
    gens: Vec<SeriesVec<F>>,
}

impl<F: Field> Ctx<'_, F> {
    fn show(&self, s: &SeriesVec<F>) -> String {
        s.display_with(self.vars).to_string()
    }

    fn show_all(&self, list: &[SeriesVec<F>]) -> Vec<String> {
        list.iter().map(|s| self.show(s)).collect()
    }

    fn is_ideal(&self) -> bool {
        self.gens[0].rank() == 1
    }
}

fn run_in<F: Field, E: Embed<F>>(cmd: &Command, problem: &Problem, emb: &E) -> Result<Report, CliError> {
    let ctx = Ctx { vars: &problem.variables, gens: embed_all(emb, &problem.generators)? };
    match cmd {
        Command::StdBasis => std_basis_cmd(&ctx),
        Command::Diagram => diagram_cmd(&ctx),
        Command::Hilbert { eta_max } => {
            hilbert_cmd(&ctx, eta_max.or(problem.eta_max).unwrap_or(DEFAULT_ETA_MAX))
        }
        Command::Resolve => resolve_cmd(&ctx),
        Command::Betti => betti_cmd(&ctx),
        Command::RingReport => ring_report_cmd(&ctx),
        Command::FlatCheck => {
            let images = problem
                .map_images
                .as_ref()
                .ok_or_else(|| CliError::Usage("flat-check needs map_images in the problem file".into()))?;
            flat_check_cmd(&ctx, embed_all(emb, images)?)
        }
        Command::Truncate { mu } => truncate_cmd(&ctx, *mu),
        Command::Mu0Scan { mu_max } => mu0_scan_cmd(&ctx, mu_max.or(problem.mu_max).unwrap_or(DEFAULT_MU_MAX)),
    }
}

fn exponent_json(e: &Exponent) -> Value {
    json!({ "alpha": e.alpha(), "component": e.comp() + 1 })
}

fn exponent_text(e: &Exponent, rank: usize) -> String {
    let alpha: Vec<String> = e.alpha().iter().map(u32::to_string).collect();
    if rank == 1 {
        format!("({})", alpha.join(","))
    } else {
        format!("({})e{}", alpha.join(","), e.comp() + 1)
    }
}

fn join_exponents(list: &[Exponent], rank: usize) -> String {
    list.iter().map(|e| exponent_text(e, rank)).collect::<Vec<_>>().join(" ")
}

fn list_text(list: &[usize]) -> String {
    list.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn std_basis_cmd<F: Field>(ctx: &Ctx<F>) -> Result<Report, CliError> {
    let sb = standard_basis(&ctx.gens)?;
    if !sb.certified {
        return Err(CliError::Integrity("standard basis failed certification".into()));
    }
    let rank = sb.rank();
    let exps = sb.initial_exponents();
    let elements = ctx.show_all(&sb.elements);
    let mut text = format!("standard basis ({} elements, certified):\n", elements.len());
    for e in &elements {
        text += &format!("  {e}\n");
    }
    text += &format!("initial exponents: {}\n", join_exponents(&exps, rank));
    let json = json!({
        "certified": sb.certified,
        "elements": elements,
        "initial_exponents": exps.iter().map(exponent_json).collect::<Vec<_>>(),
        "rank": rank,
    });
    Ok(Report { json, text })
}

fn diagram_of_gens<F: Field>(ctx: &Ctx<F>) -> Result<Diagram, CliError> {
    Ok(standard_basis(&ctx.gens)?.diagram())
}

fn diagram_cmd<F: Field>(ctx: &Ctx<F>) -> Result<Report, CliError> {
    let d = diagram_of_gens(ctx)?;
    let text = format!("vertices: {}\n", join_exponents(d.vertices(), d.rank()));
    let json = json!({
        "rank": d.rank(),
        "vertices": d.vertices().iter().map(exponent_json).collect::<Vec<_>>(),
    });
    Ok(Report { json, text })
}

fn hilbert_json(values: &[u64], data: &hironaka::HilbertData) -> Value {
    json!({
        "dim": data.dim,
        "polynomial": data.poly_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "stab": data.stab,
        "values": values,
    })
}

fn polynomial_text(coeffs: &[hironaka::Rational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(k, c)| match k {
            0 => c.to_string(),
            1 => format!("({c})*eta"),
            _ => format!("({c})*eta^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn hilbert_cmd<F: Field>(ctx: &Ctx<F>, eta_max: u32) -> Result<Report, CliError> {
    let d = diagram_of_gens(ctx)?;
    let values = (0..=eta_max).map(|eta| hs_function(&d, eta)).collect::<Result<Vec<_>, _>>()?;
    let data = hs_polynomial(&d)?;
    let shown: Vec<String> = values.iter().map(u64::to_string).collect();
    let text = format!(
        "H(0..={eta_max}): {}\npolynomial: {}\nstable from eta = {}\ndim: {}\n",
        shown.join(","),
        polynomial_text(&data.poly_coeffs),
        data.stab,
        data.dim
    );
    let mut json = hilbert_json(&values, &data);
    json["eta_max"] = json!(eta_max);
    Ok(Report { json, text })
}

fn matrix_json<F: Field>(ctx: &Ctx<F>, level: usize, m: &ModuleMatrix<F>) -> Value {
    let rows: Vec<Vec<String>> = m.entries().iter().map(|row| ctx.show_all(row)).collect();
    json!({ "cols": m.cols(), "entries": rows, "level": level, "rows": m.rows() })
}

fn matrix_text<F: Field>(ctx: &Ctx<F>, level: usize, m: &ModuleMatrix<F>) -> String {
    let mut out = format!("phi_{level}: {} x {}\n", m.rows(), m.cols());
    for row in m.entries() {
        out += &format!("  [{}]\n", ctx.show_all(&row).join(", "));
    }
    out
}

fn resolve_cmd<F: Field>(ctx: &Ctx<F>) -> Result<Report, CliError> {
    let res = build_resolution(&ctx.gens)?;
    if !res.is_complex() {
        return Err(CliError::Integrity("resolution maps do not compose to zero".into()));
    }
    let ranks = res.ranks();
    let all: Vec<&ModuleMatrix<F>> = std::iter::once(&res.presentation).chain(&res.maps).collect();
    let mut text = format!("ranks: {}\nlength: {}\nminimal: {}\n", list_text(&ranks), res.length(), res.minimal);
    for (k, m) in all.iter().enumerate() {
        text += &matrix_text(ctx, k, m);
    }
    let json = json!({
        "length": res.length(),
        "maps": all.iter().enumerate().map(|(k, m)| matrix_json(ctx, k, m)).collect::<Vec<_>>(),
        "minimal": res.minimal,
        "ranks": ranks,
    });
    Ok(Report { json, text })
}

fn betti_cmd<F: Field>(ctx: &Ctx<F>) -> Result<Report, CliError> {
    let res = build_resolution(&ctx.gens)?;
    let (table, of): (BettiTable, &str) = if ctx.is_ideal() {
        (BettiTable::of_quotient(&res), "quotient")
    } else {
        (BettiTable::of_module(&res), "module")
    };
    let text = format!("betti ({of}): {}\npd: {}\n", list_text(&table.betti), table.pd);
    let json = json!({ "betti": table.betti, "of": of, "pd": table.pd });
    Ok(Report { json, text })
}

fn ring_json(r: &RingReport) -> Value {
    json!({
        "betti": r.betti.betti,
        "cm": r.is_cm,
        "cm_type": r.cm_type,
        "dim": r.dim,
        "gorenstein": r.is_gorenstein,
        "hs": hilbert_json(&r.hs.values, &r.hs),
        "n": r.n,
        "pd": r.pd,
        "vertices": r.diagram.vertices().iter().map(exponent_json).collect::<Vec<_>>(),
    })
}

fn ring_text(r: &RingReport) -> String {
    let values: Vec<String> = r.hs.values.iter().map(u64::to_string).collect();
    let cm_type = r.cm_type.map_or("-".to_string(), |t| t.to_string());
    format!(
        "dim: {}\npd: {}\nbetti: {}\ncm: {}\ncm type: {}\ngorenstein: {}\nhs values: {}\nhs polynomial: {}\n",
        r.dim,
        r.pd,
        list_text(&r.betti.betti),
        r.is_cm,
        cm_type,
        r.is_gorenstein,
        values.join(","),
        polynomial_text(&r.hs.poly_coeffs)
    )
}

fn ring_report_cmd<F: Field>(ctx: &Ctx<F>) -> Result<Report, CliError> {
    let r = ring_report(&ctx.gens)?;
    Ok(Report { json: ring_json(&r), text: ring_text(&r) })
}

fn flat_check_cmd<F: Field>(ctx: &Ctx<F>, images: Vec<SeriesVec<F>>) -> Result<Report, CliError> {
    let shown = ctx.show_all(&images);
    let rep = flatness_check(&ctx.gens, &MapSpec { images })?;
    let text = format!(
        "map: {}\nflat: {}\ndim R/I: {}\ndim fibre: {}\nsource variables: {}\n",
        shown.iter().enumerate().map(|(i, s)| format!("y{} -> {s}", i + 1)).collect::<Vec<_>>().join(", "),
        rep.flat,
        rep.dim_total,
        rep.dim_fibre,
        rep.source_vars
    );
    let json = json!({
        "dim_fibre": rep.dim_fibre,
        "dim_total": rep.dim_total,
        "flat": rep.flat,
        "images": shown,
        "source_vars": rep.source_vars,
    });
    Ok(Report { json, text })
}

fn truncation_json(r: &TruncationReport) -> Value {
    json!({
        "all_equal": r.all_equal(),
        "betti_equal": r.betti_equal,
        "cm_equal": r.cm_equal,
        "diagram_equal": r.diagram_equal,
        "dim_equal": r.dim_equal,
        "hs_equal": r.hs_equal,
        "mu": r.mu,
    })
}

fn truncation_text(r: &TruncationReport) -> String {
    format!(
        "mu {}: diagram {} hs {} betti {} dim {} cm {}{}",
        r.mu,
        r.diagram_equal,
        r.hs_equal,
        r.betti_equal,
        r.dim_equal,
        r.cm_equal,
        if r.all_equal() { " (all equal)" } else { "" }
    )
}

fn truncate_cmd<F: Field>(ctx: &Ctx<F>, mu: u32) -> Result<Report, CliError> {
    let lab = TruncationLab::new(&ctx.gens)?;
    let r = lab.compare(mu)?;
    let jets = ctx.show_all(&truncate_ideal(&ctx.gens, mu));
    let mut text = format!("jets of order {mu}:\n");
    for j in &jets {
        text += &format!("  {j}\n");
    }
    text += &format!("{}\ncandidate mu0: {}\n", truncation_text(&r), r.candidate_mu0);
    let mut json = truncation_json(&r);
    json["candidate_mu0"] = json!(r.candidate_mu0);
    json["truncated"] = json!(jets);
    Ok(Report { json, text })
}

fn mu0_scan_cmd<F: Field>(ctx: &Ctx<F>, mu_max: u32) -> Result<Report, CliError> {
    let lab = TruncationLab::new(&ctx.gens)?;
    let (reports, empirical) = lab.scan(mu_max)?;
    let mut text = String::new();
    for r in &reports {
        text += &truncation_text(r);
        text.push('\n');
    }
    let shown = empirical.map_or(format!("none up to {mu_max}"), |m| m.to_string());
    text += &format!("empirical mu0: {shown}\ncandidate mu0: {}\n", lab.candidate_mu0());
    let json = json!({
        "candidate_mu0": lab.candidate_mu0(),
        "empirical_mu0": empirical,
        "mu_max": mu_max,
        "scan": reports.iter().map(truncation_json).collect::<Vec<_>>(),
    });
    Ok(Report { json, text })
}
