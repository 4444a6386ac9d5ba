//! Exact computational algebra for the Leray–Hirsch bookkeeping of moduli
//! of smooth projective hypersurfaces.
//!
//! * [`series`], [`bigraded`], [`exterior`]: exact arithmetic over `Q`.
//! * [`models`]: cohomology of `GL_n`, `P^n` and the sphere `Q_n`.
//! * [`verifier`]: discriminant degrees, multiplicities and the Chern-class
//!   nonvanishing certificate.
//! * [`spectral`]: page-by-page dimension engine for first-quadrant
//!   spectral sequences.
//! * [`fixtures`]: Poincaré–Serre data of the moduli spaces, taken as input.

pub mod bigraded;
pub mod error;
pub mod exec;
pub mod exterior;
pub mod fixtures;
pub mod models;
pub mod rational;
pub mod series;
pub mod spectral;
pub mod verifier;

pub use bigraded::{BigradedPolynomial, DivisionError, Exponent};
pub use error::{Error, Result};
pub use exec::Execution;
pub use exterior::{ExteriorAlgebra, ExteriorElement, Monomial};
pub use rational::Rational;
pub use series::TruncatedSeries;
pub use spectral::{DifferentialPlan, SpectralGrid};
pub use verifier::{ModuliInstance, VerifierReport};
