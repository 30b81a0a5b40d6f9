//! The JSON problem file.

use hironaka::coeff::Embed;
use hironaka::{FieldKind, Rational, SeriesVec};
use serde::Deserialize;

use crate::error::CliError;
use crate::parse::{parse_polynomial, parse_series};

pub const MAX_VARS: usize = 6;
pub const MAX_DEGREE: u32 = 16;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GeneratorText {
    Expr(String),
    Vector(Vec<String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default = "default_field")]
    pub field: String,
    pub variables: Vec<String>,
    pub generators: Vec<GeneratorText>,
    #[serde(default)]
    pub map_images: Option<Vec<String>>,
    #[serde(default)]
    pub eta_max: Option<u32>,
    #[serde(default)]
    pub mu_max: Option<u32>,
}

fn default_field() -> String {
    "q".into()
}

/// A problem with every expression parsed over the rationals.
#[derive(Debug, Clone)]
pub struct Problem {
    pub field: FieldKind,
    pub variables: Vec<String>,
    pub generators: Vec<SeriesVec<Rational>>,
    pub map_images: Option<Vec<SeriesVec<Rational>>>,
    pub eta_max: Option<u32>,
    pub mu_max: Option<u32>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            context: "problem file".into(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Parses all expressions; `field_override` replaces the file's field.
    pub fn resolve(&self, field_override: Option<&str>, allow_large: bool) -> Result<Problem, CliError> {
        let selector = field_override.unwrap_or(&self.field);
        let field: FieldKind =
            selector.parse().map_err(|e| CliError::Usage(format!("bad field selector '{selector}': {e}")))?;

        let vars = &self.variables;
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(CliError::Usage(format!("'{v}' is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(CliError::Usage(format!("variable '{v}' declared twice")));
            }
        }
        if vars.is_empty() {
            return Err(CliError::Usage("no variables declared".into()));
        }
        if self.generators.is_empty() {
            return Err(CliError::Usage("no generators given".into()));
        }
        if vars.len() > MAX_VARS && !allow_large {
            return Err(CliError::Usage(format!(
                "{} variables exceed the cap of {MAX_VARS}; pass --allow-large to override",
                vars.len()
            )));
        }

        let parse_err = |context: String| {
            move |e: crate::parse::ParseError| CliError::Parse { context, line: e.line, column: e.column, message: e.message }
        };
        let mut generators = Vec::new();
        for (k, g) in self.generators.iter().enumerate() {
            let v = match g {
                GeneratorText::Expr(s) => parse_series(s, vars).map_err(parse_err(format!("generator {}", k + 1)))?,
                GeneratorText::Vector(parts) => {
                    let comps = parts
                        .iter()
                        .enumerate()
                        .map(|(i, s)| {
                            parse_polynomial(s, vars).map_err(parse_err(format!("generator {} entry {}", k + 1, i + 1)))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if comps.is_empty() {
                        return Err(CliError::Usage(format!("generator {} is an empty vector", k + 1)));
                    }
                    SeriesVec::from_components(vars.len(), &comps)
                }
            };
            generators.push(v);
        }
        let rank = generators[0].rank();
        if generators.iter().any(|g| g.rank() != rank) {
            return Err(CliError::Usage("module generators must share a common rank".into()));
        }

        let map_images = match &self.map_images {
            None => None,
            Some(list) => Some(
                list.iter()
                    .enumerate()
                    .map(|(k, s)| parse_polynomial(s, vars).map_err(parse_err(format!("map image {}", k + 1))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };

        let top = generators.iter().chain(map_images.iter().flatten()).map(|g| g.max_degree()).max().unwrap_or(0);
        if top > MAX_DEGREE && !allow_large {
            return Err(CliError::Usage(format!(
                "degree {top} exceeds the cap of {MAX_DEGREE}; pass --allow-large to override"
            )));
        }

        Ok(Problem { field, variables: vars.clone(), generators, map_images, eta_max: self.eta_max, mu_max: self.mu_max })
    }
}

/// Maps rational series into the target field.
pub fn embed_all<F: hironaka::Field>(
    emb: &impl Embed<F>,
    series: &[SeriesVec<Rational>],
) -> Result<Vec<SeriesVec<F>>, CliError> {
    series
        .iter()
        .map(|s| {
            let terms = s
                .terms()
                .iter()
                .map(|(e, c)| emb.embed(c).map(|x| (e.clone(), x)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("coefficient not representable in the field: {e}")))?;
            Ok(SeriesVec::from_terms(s.nvars(), s.rank(), terms))
        })
        .collect()
}
