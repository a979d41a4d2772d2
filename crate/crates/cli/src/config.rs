//! Job configuration: the JSON file format and its validation.

use std::fmt;
use std::path::{Path, PathBuf};

use parahiggs::generic::generic_flags;
use parahiggs::pairing::{check_pairing_iso, PairingForm, Symmetry};
use parahiggs::parabolic::{MarkedCurve, ParabolicBundle};
use parahiggs::scalar::parse_rational;
use parahiggs::verystable::DEFAULT_SEED;
use parahiggs::{Poly, PolyMatrix, QMatrix, Rational};
use serde::{Deserialize, Serialize};

pub const CONFIG_SCHEMA: &str = "parahiggs.config/v1";

/// Tasks in the order they run and appear in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Task {
    Sections,
    Hitchin,
    Equivariance,
    VeryStable,
    Stability,
    Serre,
    Dimensions,
}

impl Task {
    pub const ALL: [Task; 7] = [
        Task::Sections,
        Task::Hitchin,
        Task::Equivariance,
        Task::VeryStable,
        Task::Stability,
        Task::Serre,
        Task::Dimensions,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Task::Sections => "sections",
            Task::Hitchin => "hitchin",
            Task::Equivariance => "equivariance",
            Task::VeryStable => "very-stable",
            Task::Stability => "stability",
            Task::Serre => "serre",
            Task::Dimensions => "dimensions",
        }
    }

    pub fn parse(name: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Either the keyword `"generic"` / `"standard"` or an explicit value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Choice<T> {
    Keyword(String),
    Explicit(T),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingConfig {
    pub symmetry: String,
    pub target_degree: i64,
    /// `"standard"` or a matrix whose entries are coefficient lists in `z`,
    /// lowest degree first.
    pub omega: Choice<Vec<Vec<Vec<String>>>>,
}

/// The file format, as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: String,
    pub name: String,
    pub points: Vec<String>,
    pub splitting: Vec<i64>,
    /// `"generic"` or one matrix per point; column `i` spans the `i`-th step
    /// together with the columns after it.
    pub flags: Choice<Vec<Vec<Vec<String>>>>,
    pub weights: Vec<Vec<String>>,
    pub pairing: PairingConfig,
    pub tasks: Vec<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_genus")]
    pub genus: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_genus() -> i64 {
    2
}

/// A validated job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub name: String,
    pub bundle: ParabolicBundle,
    pub pairing: PairingForm,
    pub tasks: Vec<Task>,
    pub seed: u64,
    pub genus: i64,
    pub output: Option<PathBuf>,
    pub generic_flags: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

pub fn load_config(path: &Path) -> Result<JobConfig, ConfigError> {
    load_raw(path)?.validate()
}

/// Reads and parses a config without validating it.
pub fn load_raw(path: &Path) -> Result<RawConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_raw(&text)
}

pub fn parse_raw(text: &str) -> Result<RawConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_config(text: &str) -> Result<JobConfig, ConfigError> {
    parse_raw(text)?.validate()
}

fn rationals(field: &str, items: &[String], errors: &mut Vec<String>) -> Vec<Rational> {
    items
        .iter()
        .filter_map(|s| match parse_rational(s) {
            Ok(q) => Some(q),
            Err(e) => {
                errors.push(format!("{field}: {e}"));
                None
            }
        })
        .collect()
}

fn square_matrix<T: parahiggs::Ring>(
    field: &str,
    n: usize,
    rows: &[Vec<T>],
    errors: &mut Vec<String>,
) -> Option<parahiggs::Matrix<T>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        errors.push(format!("{field}: expected a {n}x{n} matrix"));
        return None;
    }
    parahiggs::Matrix::from_rows(rows.to_vec()).ok()
}

impl RawConfig {
    pub fn validate(&self) -> Result<JobConfig, ConfigError> {
        let mut errors = Vec::new();
        if self.schema != CONFIG_SCHEMA {
            errors.push(format!(
                "schema: expected {CONFIG_SCHEMA:?}, found {:?}",
                self.schema
            ));
        }

        let points = rationals("points", &self.points, &mut errors);
        let curve = if points.is_empty() {
            errors.push("points: at least one marked point is required".into());
            None
        } else {
            match MarkedCurve::new(points) {
                Ok(c) => Some(c),
                Err(e) => {
                    errors.push(format!("points: {e}"));
                    None
                }
            }
        };
        let n = self.splitting.len();
        if n == 0 {
            errors.push("splitting: rank must be positive".into());
        }

        let mut tasks = Vec::new();
        for t in &self.tasks {
            match Task::parse(t) {
                Some(task) if !tasks.contains(&task) => tasks.push(task),
                Some(_) => {}
                None => errors.push(format!("tasks: unknown task {t:?}")),
            }
        }
        if self.tasks.is_empty() {
            errors.push("tasks: at least one task is required".into());
        }
        tasks.sort();

        let symmetry = match self.pairing.symmetry.as_str() {
            "antisymmetric" => Some(Symmetry::Antisymmetric),
            "symmetric" => Some(Symmetry::Symmetric),
            other => {
                errors.push(format!(
                    "pairing.symmetry: expected antisymmetric or symmetric, found {other:?}"
                ));
                None
            }
        };
        let pairing = symmetry.and_then(|sym| match &self.pairing.omega {
            Choice::Keyword(k) if k == "standard" => {
                if sym == Symmetry::Antisymmetric && n % 2 == 1 {
                    errors.push(format!(
                        "pairing.omega: no standard antisymmetric form in odd rank {n}"
                    ));
                    return None;
                }
                PairingForm::standard(n, sym, self.pairing.target_degree)
                    .map_err(|e| errors.push(format!("pairing.omega: {e}")))
                    .ok()
            }
            Choice::Keyword(k) => {
                errors.push(format!(
                    "pairing.omega: expected \"standard\" or a matrix, found {k:?}"
                ));
                None
            }
            Choice::Explicit(rows) => {
                let polys: Vec<Vec<Poly>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| Poly::new(rationals("pairing.omega", c, &mut errors)))
                            .collect()
                    })
                    .collect();
                let omega: PolyMatrix = square_matrix("pairing.omega", n, &polys, &mut errors)?;
                let ok = match sym {
                    Symmetry::Antisymmetric => omega.is_antisymmetric(),
                    Symmetry::Symmetric => omega.is_symmetric(),
                };
                if !ok {
                    errors.push(format!("pairing.omega: matrix is not {sym}"));
                    return None;
                }
                Some(PairingForm::new(omega, sym, self.pairing.target_degree))
            }
        });

        let weights: Vec<Vec<Rational>> = self
            .weights
            .iter()
            .map(|w| rationals("weights", w, &mut errors))
            .collect();

        let mut generic = false;
        let flags: Option<Vec<QMatrix>> = match &self.flags {
            Choice::Keyword(k) if k == "generic" => {
                generic = true;
                match (&curve, &pairing) {
                    (Some(c), Some(p)) => generic_flags(c, p, self.seed)
                        .map_err(|e| errors.push(format!("flags: {e}")))
                        .ok(),
                    _ => None,
                }
            }
            Choice::Keyword(k) => {
                errors.push(format!(
                    "flags: expected \"generic\" or matrices, found {k:?}"
                ));
                None
            }
            Choice::Explicit(ms) => {
                let mut out = Vec::new();
                for (i, m) in ms.iter().enumerate() {
                    let field = format!("flags[{i}]");
                    let rows: Vec<Vec<Rational>> = m
                        .iter()
                        .map(|r| rationals(&field, r, &mut errors))
                        .collect();
                    if let Some(q) = square_matrix(&field, n, &rows, &mut errors) {
                        out.push(q);
                    }
                }
                Some(out)
            }
        };

        let mut job = None;
        if let (Some(curve), Some(pairing), Some(flags)) = (curve, pairing, flags) {
            let bundle = ParabolicBundle::new(curve, self.splitting.clone(), flags, weights);
            let violations = bundle.validate();
            if violations.is_empty() {
                let diag = check_pairing_iso(&bundle, &pairing);
                errors.extend(diag.failures.iter().map(|f| format!("pairing: {f}")));
            } else {
                errors.extend(violations.iter().map(|v| format!("bundle: {v}")));
            }
            job = Some(JobConfig {
                name: self.name.clone(),
                bundle,
                pairing,
                tasks,
                seed: self.seed,
                genus: self.genus,
                output: self.output.as_ref().map(PathBuf::from),
                generic_flags: generic,
            });
        }
        match job {
            Some(job) if errors.is_empty() => Ok(job),
            _ => Err(ConfigError::Invalid(errors)),
        }
    }
}
