//! Vanishing locus of the obstruction, curve sampling, and the
//! localization-versus-polytope cross-validation driver.

pub mod roots;
pub mod validate;

pub use roots::{fut_roots, isolate_roots, OpenInterval, RootReport};
pub use validate::{cross_validate, sample_curve, sample_points, CurvePoint, ValidationRecord};
