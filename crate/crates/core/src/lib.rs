//! Exact computations behind the Yamabe bifurcation analysis of canonical
//! variations on maximal flag manifolds `G/T`.
//!
//! Everything that decides a mathematical fact (identities of rational
//! functions, sign conditions, degeneracy classification) is carried out in
//! exact rational or quadratic-surd arithmetic. Floats only appear in
//! presentation fields.

pub mod bifurcation;
pub mod curvature;
pub mod error;
pub mod fibration;
pub mod lattice;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod rootsys;
pub mod spectra;
pub mod surd;
pub mod variation;
pub mod verify;

pub use error::{Error, Result};
pub use fibration::{FibrationData, FibrationFamily};
pub use rational::Q;
pub use rootsys::{FamilyKind, FamilyTag, RootSystem, RootVector};
