//! Exact multigraded apolarity on bigraded models: catalecticant rank loci,
//! constructive cactus-membership certificates on `P¹`, nef-cone splitting
//! synthesis, and brute-force oracles to check them against.

pub mod apolarity;
pub mod catalecticant;
pub mod cones;
pub mod error;
pub mod exactalg;
pub mod formats;
pub mod model;
pub mod oracle;
pub mod reconstruct;
pub mod sample;

pub use apolarity::{ApolarProfile, Functional, Subspace};
pub use catalecticant::{CatalecticantMatrix, SplittingWindow};
pub use cones::{ConeSpec, SplittingPlan};
pub use error::{Error, Result};
pub use exactalg::{Field, Matrix, Scalar};
pub use model::{BigradedModel, Bidegree, ModelKind, RingElement};
pub use oracle::{EquivalenceReport, HilbertReport, HilbertTable, SchemeWitness};
pub use reconstruct::{DecompositionCertificate, TheoremParams};
