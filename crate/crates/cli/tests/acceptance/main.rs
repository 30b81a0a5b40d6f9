//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use hironaka::{
    build_resolution, compare_truncation, diagram_of, flatness_check, hs_function, is_standard_basis, ring_report,
    standard_basis, weak_normal_form, Exponent, MapSpec, PrimeField, Rational, SeriesVec, TruncationLab, Zp,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 32003;

/// A generator as raw data: exponent vectors with residues mod P.
type RawPoly = Vec<(Vec<u32>, u64)>;

struct Case {
    n: usize,
    gens: Vec<RawPoly>,
}

impl Case {
    fn series(&self) -> Vec<SeriesVec<Zp>> {
        let f = PrimeField::new(P).unwrap();
        self.gens
            .iter()
            .map(|g| {
                let terms = g.iter().map(|(a, c)| (Exponent::scalar(a.clone()), f.from_i64(*c as i64)));
                SeriesVec::from_terms(self.n, 1, terms.collect::<Vec<_>>())
            })
            .collect()
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a: Vec<u32>| {
                let used: u32 = a.iter().sum();
                (0..=d - used).map(move |k| {
                    let mut b = a.clone();
                    b.push(k);
                    b
                })
            })
            .collect();
    }
    out
}

/// n <= 3 variables, at most 3 generators, terms of degree 2..=4.
fn corpus(size: usize, seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|i| {
            let n = 1 + i % 3;
            let monos: Vec<Vec<u32>> =
                monomials_up_to(n, 4).into_iter().filter(|a| a.iter().sum::<u32>() >= 2).collect();
            let k = rng.gen_range(1..=3);
            let gens = (0..k)
                .map(|_| {
                    let mut acc: HashMap<Vec<u32>, u64> = HashMap::new();
                    for _ in 0..rng.gen_range(1..=4) {
                        let a = monos[rng.gen_range(0..monos.len())].clone();
                        *acc.entry(a).or_default() += rng.gen_range(1..P);
                    }
                    let mut g: RawPoly = acc.into_iter().map(|(a, c)| (a, c % P)).filter(|(_, c)| *c != 0).collect();
                    g.sort();
                    g
                })
                .filter(|g| !g.is_empty())
                .collect::<Vec<_>>();
            Case { n, gens }
        })
        .filter(|c| !c.gens.is_empty())
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], P - 2);
        let pivot: Vec<u64> = rows[rank].iter().map(|x| x * inv % P).collect();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let m = rows[r][col];
                for c in 0..ncols {
                    rows[r][c] = (rows[r][c] + (P - m) * pivot[c]) % P;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// dim_K R/(I + m^(eta+1)) by row reduction of the monomial multiples of the
/// generators, truncated above degree eta.
fn hs_oracle(case: &Case, eta: u32) -> u64 {
    let monos = monomials_up_to(case.n, eta);
    let index: HashMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows = Vec::new();
    for g in &case.gens {
        for beta in &monos {
            let mut row = vec![0u64; monos.len()];
            for (a, c) in g {
                let prod: Vec<u32> = a.iter().zip(beta).map(|(x, y)| x + y).collect();
                if let Some(&j) = index.get(&prod) {
                    row[j] = (row[j] + c) % P;
                }
            }
            if row.iter().any(|&x| x != 0) {
                rows.push(row);
            }
        }
    }
    (monos.len() - rank_mod_p(rows)) as u64
}

fn q(terms: &[(&[u32], i64)]) -> SeriesVec<Rational> {
    let n = terms[0].0.len();
    let terms = terms.iter().map(|(a, c)| (Exponent::scalar(a.to_vec()), Rational::from_integer((*c).into())));
    SeriesVec::from_terms(n, 1, terms.collect::<Vec<_>>())
}

struct CatalogEntry {
    name: &'static str,
    text: &'static [&'static str],
    gens: Vec<SeriesVec<Rational>>,
    betti: Vec<usize>,
    pd: usize,
    dim: usize,
    cm: bool,
    cm_type: Option<usize>,
    gorenstein: bool,
    hs_prefix: &'static [u64],
}

fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "(xy)",
            text: &["x*y"],
            gens: vec![q(&[(&[1, 1], 1)])],
            betti: vec![1, 1],
            pd: 1,
            dim: 1,
            cm: true,
            cm_type: Some(1),
            gorenstein: true,
            // 2 eta + 1
            hs_prefix: &[1, 3, 5, 7, 9],
        },
        CatalogEntry {
            name: "(x^2, xy)",
            text: &["x^2", "x*y"],
            gens: vec![q(&[(&[2, 0], 1)]), q(&[(&[1, 1], 1)])],
            betti: vec![1, 2, 1],
            pd: 2,
            dim: 1,
            cm: false,
            cm_type: None,
            gorenstein: false,
            // 1, x, y, y^2, ... : eta + 2 from eta = 1
            hs_prefix: &[1, 3, 4, 5, 6],
        },
        CatalogEntry {
            name: "(x^2, xy, y^2)",
            text: &["x^2", "x*y", "y^2"],
            gens: vec![q(&[(&[2, 0], 1)]), q(&[(&[1, 1], 1)]), q(&[(&[0, 2], 1)])],
            betti: vec![1, 3, 2],
            pd: 2,
            dim: 0,
            cm: true,
            cm_type: Some(2),
            gorenstein: false,
            hs_prefix: &[1, 3, 3, 3, 3],
        },
        CatalogEntry {
            name: "(x^2+y^3, xy)",
            text: &["x^2 + y^3", "x*y"],
            gens: vec![q(&[(&[2, 0], 1), (&[0, 3], 1)]), q(&[(&[1, 1], 1)])],
            betti: vec![1, 2, 1],
            pd: 2,
            dim: 0,
            cm: true,
            cm_type: Some(1),
            gorenstein: true,
            hs_prefix: &[1, 3, 4, 5, 5, 5],
        },
    ]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = corpus(200, 1);
    let mut bad = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let gens = case.series();
        let ok = standard_basis(&gens).and_then(|sb| {
            let mut ok = sb.certified && is_standard_basis(&sb.elements)?;
            for g in &gens {
                ok &= weak_normal_form(g, &sb.elements)?.remainder.is_zero();
            }
            Ok(ok)
        });
        match ok {
            Ok(true) => {}
            Ok(false) => bad.push(format!("#{i} uncertified")),
            Err(e) => bad.push(format!("#{i} {e}")),
        }
    }
    let t = start.elapsed();
    let pass = bad.is_empty() && t < Duration::from_secs(60);
    outcome(pass, format!("{} ideals, {} failures {:?}, {:.1} s", cases.len(), bad.len(), bad, t.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let cases = corpus(50, 2);
    let mut checked = 0;
    let mut bad = Vec::new();
    for (i, case) in cases.iter().enumerate() {
        let d = match diagram_of(&case.series()) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("#{i} {e}"));
                continue;
            }
        };
        for eta in 0..=6 {
            let ours = hs_function(&d, eta).unwrap();
            let oracle = hs_oracle(case, eta);
            checked += 1;
            if ours != oracle {
                bad.push(format!("#{i} eta {eta}: {ours} vs {oracle}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} values on {} ideals, {} mismatches {:?}", cases.len(), bad.len(), bad))
}

fn criterion_3() -> Outcome {
    let cases = corpus(200, 1);
    let mut bad = Vec::new();
    let mut depth = [0usize; 4];
    for (i, case) in cases.iter().enumerate() {
        match build_resolution(&case.series()) {
            Ok(res) => {
                let no_units = !res.presentation.has_unit_entry() && res.maps.iter().all(|m| !m.has_unit_entry());
                if !(res.is_complex() && no_units && res.length() <= case.n) {
                    bad.push(format!("#{i} n={} ranks {:?}", case.n, res.ranks()));
                }
                depth[res.length().min(3)] += 1;
            }
            Err(e) => bad.push(format!("#{i} n={}: {e}", case.n)),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} ideals, lengths 0..=3: {:?}, {} failures {:?}", cases.len(), depth, bad.len(), bad),
    )
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    for c in catalog() {
        match ring_report(&c.gens) {
            Ok(r) => {
                let ok = r.betti.betti == c.betti
                    && r.pd == c.pd
                    && r.dim == c.dim
                    && r.is_cm == c.cm
                    && r.cm_type == c.cm_type
                    && r.is_gorenstein == c.gorenstein
                    && r.hs.values.starts_with(c.hs_prefix);
                if !ok {
                    bad.push(format!("{}: got betti {:?} dim {} cm {} type {:?}", c.name, r.betti.betti, r.dim, r.is_cm, r.cm_type));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", c.name)),
        }
    }
    outcome(bad.is_empty(), format!("4 catalog ideals, {} mismatches {:?}", bad.len(), bad))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let cusp = &catalog()[3].gens;
    let run = || -> hironaka::Result<(bool, String)> {
        let lab = TruncationLab::new(cusp)?;
        let (_, empirical) = lab.scan(8)?;
        let candidate = lab.candidate_mu0();
        let at2 = compare_truncation(cusp, 2)?;
        let at3 = compare_truncation(cusp, 3)?;
        let mut ok = empirical == Some(3) && candidate == 4 && !at2.diagram_equal && at3.all_equal();
        let mut summary = format!("cusp empirical {empirical:?} candidate {candidate}");
        for c in catalog() {
            let lab = TruncationLab::new(&c.gens)?;
            let (_, e) = lab.scan(8)?;
            let fine = e.is_some_and(|e| e <= lab.candidate_mu0());
            ok &= fine;
            summary += &format!("; {} {e:?} <= {}", c.name, lab.candidate_mu0());
        }
        Ok((ok, summary))
    };
    match run() {
        Ok((ok, summary)) => {
            let t = start.elapsed();
            outcome(ok && t < Duration::from_secs(10), format!("{summary}; {:.2} s", t.as_secs_f64()))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn criterion_6() -> Outcome {
    let y = q(&[(&[0, 1], 1)]);
    let flat_case = flatness_check(&[q(&[(&[2, 0], 1), (&[0, 1], -1)])], &MapSpec { images: vec![y.clone()] });
    let non_flat = flatness_check(&[q(&[(&[1, 1], 1)])], &MapSpec { images: vec![y] });
    match (flat_case, non_flat) {
        (Ok(a), Ok(b)) => outcome(
            a.flat && !b.flat,
            format!(
                "(x^2-y): flat {} ({} = 1 + {}); (xy): flat {} ({} != 1 + {})",
                a.flat, a.dim_total, a.dim_fibre, b.flat, b.dim_total, b.dim_fibre
            ),
        ),
        (a, b) => outcome(false, format!("errors: {:?} {:?}", a.err(), b.err())),
    }
}

fn criterion_7() -> Outcome {
    let dir = std::env::temp_dir().join(format!("hironaka-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let commands: &[&[&str]] = &[
        &["std-basis"],
        &["diagram"],
        &["hilbert", "--eta-max", "8"],
        &["resolve"],
        &["betti"],
        &["ring-report"],
        &["truncate", "--mu", "2"],
        &["mu0-scan", "--mu-max", "6"],
    ];
    let mut runs = 0;
    let mut bad = Vec::new();
    for (k, c) in catalog().iter().enumerate() {
        let file = dir.join(format!("case{k}.json"));
        let gens: Vec<String> = c.text.iter().map(|s| format!("\"{s}\"")).collect();
        let body = format!("{{\"variables\":[\"x\",\"y\"],\"generators\":[{}]}}", gens.join(","));
        std::fs::write(&file, body).unwrap();
        for args in commands {
            let outputs: Vec<Vec<u8>> = (0..3)
                .map(|_| {
                    let out = Command::new(env!("CARGO_BIN_EXE_hironaka"))
                        .args(*args)
                        .arg("--json")
                        .arg(&file)
                        .output()
                        .unwrap();
                    runs += 1;
                    if !out.status.success() {
                        bad.push(format!("{} {:?}: exit {:?}", c.name, args, out.status.code()));
                    }
                    out.stdout
                })
                .collect();
            if outputs.windows(2).any(|w| w[0] != w[1]) || outputs[0].is_empty() {
                bad.push(format!("{} {:?}: outputs differ", c.name, args));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(bad.is_empty(), format!("{runs} runs, {} problems {:?}", bad.len(), bad))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("standard bases certified", criterion_1),
        ("Hilbert-Samuel oracle", criterion_2),
        ("resolution integrity", criterion_3),
        ("catalog Betti/CM verdicts", criterion_4),
        ("truncation laboratory", criterion_5),
        ("flatness", criterion_6),
        ("JSON determinism", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("criterion {} [{}] {name}: {}", k + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
