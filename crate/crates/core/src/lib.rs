//! Exact computation of the coupled Futaki invariant of a Fano manifold from
//! fixed-point data by equivariant localization, cross-checked against
//! moment-polytope integrals.

pub mod arith;
pub mod cohomology;
pub mod localization;
pub mod toric;
pub mod analysis;
pub mod cli;
