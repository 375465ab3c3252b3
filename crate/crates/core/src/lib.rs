//! Solving and verifying Van Vleck and d'Alembert type functional equations
//! on finite semigroups with finitely supported complex measures.
//!
//! Characters are enumerated exactly, closed-form solution sets are built
//! from them and checked by the residual engine, and a numerical root finder
//! cross-checks completeness independently.

pub mod characters;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod measure;
pub mod scalar;
pub mod semigroup;
pub mod solvers;
pub mod stability;
pub mod wire;

pub use characters::{character_to_scalar, compose_sigma, enumerate_characters, Character};
pub use engine::{EquationTag, ResidualReport};
pub use error::{Error, ErrorClass, Result};
pub use measure::{integrate, measure_norm, DiracMeasure};
pub use scalar::{Complex64, RootValue, ScalarFunction, ToleranceConfig};
pub use semigroup::{FiniteSemigroup, InvolutiveMorphism, MorphismKind};
pub use solvers::{Solution, SolutionSet};
pub use stability::{CampaignConfig, CampaignReport, RadiusSchedule, Verdict};
