use num_traits::Zero;
use thiserror::Error;

use crate::arith::{factorial, format_rational, ArithError, Rational, RationalFunction};
use crate::localization::{fut_localized, volume_localized, LocalizationError, LocalizationScenario};
use crate::toric::{direction, realize, volume_and_moment, Apex, ParamPolytope, ToricError};

use super::roots::OpenInterval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error("sample {sample}: {source}")]
    Toric { sample: String, source: ToricError },
    #[error("sample {sample}: {source}")]
    Arith { sample: String, source: ArithError },
    #[error("scenario has {k} bundles but {polytopes} polytopes were given")]
    PolytopeCount { k: usize, polytopes: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeComparison {
    /// `volume_localized(s, α)(x) / m!`.
    pub localized: Rational,
    /// Euclidean volume of the realized polytope.
    pub toric: Rational,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleComparison {
    pub x: Rational,
    pub localized: Rational,
    pub toric: Rational,
    pub equal: bool,
    pub volumes: Vec<VolumeComparison>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationRecord {
    pub samples: Vec<SampleComparison>,
}

impl ValidationRecord {
    /// True when every Fut value and every volume agrees exactly.
    pub fn all_equal(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.equal && s.volumes.iter().all(|v| v.equal))
    }

    pub fn first_mismatch(&self) -> Option<&SampleComparison> {
        self.samples
            .iter()
            .find(|s| !s.equal || s.volumes.iter().any(|v| !v.equal))
    }
}

/// Compares the residue computation with the polytope oracle at each sample.
/// A scenario without a parameter is compared once, at `0`.
pub fn cross_validate(
    s: &LocalizationScenario,
    polytopes: &[ParamPolytope],
    xi: &[i64],
    samples: &[Rational],
) -> Result<ValidationRecord, ValidateError> {
    if polytopes.len() != s.k {
        return Err(ValidateError::PolytopeCount {
            k: s.k,
            polytopes: polytopes.len(),
        });
    }
    let fut = fut_localized(s)?;
    let volumes = (0..s.k)
        .map(|alpha| volume_localized(s, alpha))
        .collect::<Result<Vec<_>, _>>()?;
    let points: Vec<Rational> = if s.parameter.is_some() {
        samples.to_vec()
    } else {
        vec![Rational::zero()]
    };
    let scale = factorial(s.m);
    let xi = direction(xi);
    let mut record = ValidationRecord::default();
    for x in points {
        let sample = format_rational(&x);
        let arith = |source| ValidateError::Arith {
            sample: sample.clone(),
            source,
        };
        let localized = fut.eval(&x).map_err(arith)?;
        let mut toric = Rational::zero();
        let mut comparisons = Vec::new();
        for (p, vol) in polytopes.iter().zip(&volumes) {
            let q = realize(p, &x).map_err(|source| ValidateError::Toric {
                sample: sample.clone(),
                source,
            })?;
            if q.dim() != xi.len() {
                return Err(ValidateError::Toric {
                    sample,
                    source: ToricError::DirectionLength {
                        expected: q.dim(),
                        found: xi.len(),
                    },
                });
            }
            let (volume, moment) = volume_and_moment(&q, &xi, Apex::default());
            toric += &moment / &volume;
            let expected = vol.eval(&x).map_err(arith)? / &scale;
            comparisons.push(VolumeComparison {
                equal: expected == volume,
                localized: expected,
                toric: volume,
            });
        }
        record.samples.push(SampleComparison {
            equal: localized == toric,
            x,
            localized,
            toric,
            volumes: comparisons,
        });
    }
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvePoint {
    pub x: Rational,
    /// `None` where `x` is a pole of the sampled function.
    pub value: Option<Rational>,
}

/// `count` equally spaced interior points `lo + i (hi − lo)/(count + 1)`.
pub fn sample_points(interval: &OpenInterval, count: usize) -> Vec<Rational> {
    let step = (&interval.upper - &interval.lower) / Rational::from_integer((count + 1).into());
    (1..=count)
        .map(|i| &interval.lower + &step * Rational::from_integer(i.into()))
        .collect()
}

/// Exact values of `f` at [`sample_points`]; poles are flagged.
pub fn sample_curve(f: &RationalFunction, interval: &OpenInterval, count: usize) -> Vec<CurvePoint> {
    sample_points(interval, count)
        .into_iter()
        .map(|x| CurvePoint {
            value: f.eval(&x).ok(),
            x,
        })
        .collect()
}
