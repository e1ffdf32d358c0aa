//! Scenario files, the built-in catalog, command dispatch and output.

pub mod catalog;
pub mod report;
pub mod scenario;

use thiserror::Error;

use crate::analysis::roots::{default_width, fut_roots, OpenInterval};
use crate::analysis::validate::{cross_validate, sample_curve, sample_points, ValidateError};
use crate::arith::{parse_rational, ArithError, Rational};
use crate::localization::{fut_localized, volume_localized, LocalizationError};
use crate::toric::{direction, minkowski_check, realize, volume_and_moment, Apex, ToricError};

pub use catalog::{catalog_names, load_catalog};
pub use report::{
    emit, ObstructionReport, Output, OutputFormat, PolytopeSummary, SampleReport, ToricReport,
    VerifyReport,
};
pub use scenario::{load_scenario, parse_scenario, serialize_scenario, ScenarioError, ScenarioFile, ToricBlock};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_COMPUTATION: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Localize,
    Toric,
    Roots,
    Verify,
    Sample,
    Validate,
}

/// Which parameter values a command should sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Samples {
    /// Equally spaced interior points of the validity interval.
    Count(usize),
    Points(Vec<Rational>),
}

impl Samples {
    /// `"5"` or a comma-separated list such as `"5/16,3/8,1/2"`.
    pub fn parse(text: &str) -> Result<Self, ArithError> {
        let text = text.trim();
        if let Ok(n) = text.parse::<usize>() {
            return Ok(Self::Count(n));
        }
        text.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map(Self::Points)
    }

    pub fn resolve(&self, interval: &OpenInterval) -> Vec<Rational> {
        match self {
            Self::Count(n) => sample_points(interval, *n),
            Self::Points(points) => points.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub param_value: Option<Rational>,
    pub samples: Samples,
    pub root_width: Rational,
    pub direction: Option<Vec<i64>>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            param_value: None,
            samples: Samples::Count(5),
            root_width: default_width(),
            direction: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(ScenarioError),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("localization error: {0}")]
    Localization(#[from] LocalizationError),
    #[error("toric error: {0}")]
    Toric(#[from] ToricError),
    #[error("arithmetic error: {0}")]
    Arith(#[from] ArithError),
    #[error("cross-validation error: {0}")]
    CrossValidation(#[from] ValidateError),
    #[error("usage error: {0}")]
    Usage(String),
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Invalid { violations } => Self::Validation(violations.join("; ")),
            other => Self::Parse(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse(_) | Self::Usage(_) => EXIT_PARSE,
            Self::Validation(_) => EXIT_VALIDATION,
            Self::Localization(LocalizationError::InconsistentResidueData { .. }) => EXIT_VALIDATION,
            _ => EXIT_COMPUTATION,
        }
    }

    /// Machine-readable category.
    pub fn category(&self) -> &'static str {
        match self {
            Self::Parse(_) => "parse",
            Self::Usage(_) => "usage",
            Self::Validation(_) => "validation",
            Self::Localization(LocalizationError::InconsistentResidueData { .. }) => "validation",
            Self::Localization(_) => "localization",
            Self::Toric(_) => "toric",
            Self::Arith(_) => "arithmetic",
            Self::CrossValidation(_) => "cross-validation",
        }
    }
}

fn interval_of(file: &ScenarioFile) -> Option<OpenInterval> {
    file.scenario.parameter.as_ref().map(|p| p.interval())
}

fn toric_block(file: &ScenarioFile) -> Result<&ToricBlock, CliError> {
    file.toric
        .as_ref()
        .ok_or_else(|| CliError::Usage(format!("scenario `{}` has no toric block", file.metadata.name)))
}

/// Runs one command on a parsed scenario.
pub fn run(command: Command, file: &ScenarioFile, options: &Options) -> Result<Output, CliError> {
    let s = &file.scenario;
    let interval = interval_of(file);
    match command {
        Command::Validate => Ok(Output::Validate(file.report.clone())),
        Command::Localize => {
            let mut volumes = Vec::new();
            let mut numerators = Vec::new();
            for alpha in 0..s.k {
                volumes.push(volume_localized(s, alpha)?);
                numerators.push(s.residue_sum(alpha, s.m + 1)?);
            }
            let fut = fut_localized(s)?;
            let roots = match &interval {
                Some(i) => Some(fut_roots(&fut, i, &options.root_width)?),
                None => None,
            };
            let value = match &options.param_value {
                Some(x) => Some((x.clone(), fut.eval(x)?)),
                None => None,
            };
            Ok(Output::Localize(Box::new(ObstructionReport {
                name: file.metadata.name.clone(),
                m: s.m,
                var: s.var().to_string(),
                interval,
                volumes,
                numerators,
                fut,
                roots,
                value,
                warnings: file.report.warnings.clone(),
                notes: report::provenance_notes(s.m),
            })))
        }
        Command::Roots => {
            let interval = interval.ok_or_else(|| CliError::Usage("scenario has no parameter".into()))?;
            let fut = fut_localized(s)?;
            Ok(Output::Roots {
                fut: fut.clone(),
                roots: fut_roots(&fut, &interval, &options.root_width)?,
            })
        }
        Command::Sample => {
            let interval = interval.ok_or_else(|| CliError::Usage("scenario has no parameter".into()))?;
            let fut = fut_localized(s)?;
            let points = match &options.samples {
                Samples::Count(n) => sample_curve(&fut, &interval, *n),
                Samples::Points(xs) => xs
                    .iter()
                    .map(|x| crate::analysis::CurvePoint {
                        x: x.clone(),
                        value: fut.eval(x).ok(),
                    })
                    .collect(),
            };
            Ok(Output::Sample(SampleReport {
                var: s.var().to_string(),
                points,
            }))
        }
        Command::Toric => {
            let block = toric_block(file)?;
            let x = options
                .param_value
                .clone()
                .or_else(|| interval.as_ref().map(OpenInterval::midpoint))
                .unwrap_or_default();
            let xi = options.direction.clone().unwrap_or_else(|| block.direction.clone());
            let xi_q = direction(&xi);
            let mut polytopes = Vec::new();
            let mut fut = Rational::default();
            for p in &block.polytopes {
                let q = realize(p, &x)?;
                if q.dim() != xi_q.len() {
                    return Err(ToricError::DirectionLength {
                        expected: q.dim(),
                        found: xi_q.len(),
                    }
                    .into());
                }
                let (volume, moment) = volume_and_moment(&q, &xi_q, Apex::default());
                fut += &moment / &volume;
                polytopes.push(PolytopeSummary {
                    vertices: q.vertices().len(),
                    facets: q.facet_count(),
                    volume,
                    moment,
                });
            }
            let minkowski = match &block.anticanonical {
                Some(whole) => Some(minkowski_check(&block.polytopes, whole, &x)?),
                None => None,
            };
            Ok(Output::Toric(ToricReport {
                x,
                direction: xi,
                polytopes,
                fut,
                minkowski,
            }))
        }
        Command::Verify => {
            let block = toric_block(file)?;
            let xi = options.direction.clone().unwrap_or_else(|| block.direction.clone());
            let samples = match &interval {
                Some(i) => options.samples.resolve(i),
                None => Vec::new(),
            };
            let record = cross_validate(s, &block.polytopes, &xi, &samples)?;
            Ok(Output::Verify(VerifyReport {
                name: file.metadata.name.clone(),
                direction: xi,
                record,
            }))
        }
    }
}
