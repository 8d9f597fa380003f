//! Braid groups at desk scale: exact words and Garside normal forms, the
//! left-invariant order and its floor, fractional twist coefficients,
//! Seifert-matrix link invariants of closures, quasimorphism tooling, and
//! seeded random walks driving reproducible experiments.

pub mod dehornoy;
pub mod error;
pub mod experiments;
pub mod fdtc;
pub mod garside;
pub mod invariants;
pub mod laurent;
pub mod perm;
pub mod quasimorphism;
pub mod rat;
pub mod rng;
pub mod walk;
pub mod word;

pub use error::{Error, Result};
pub use word::BraidWord;
