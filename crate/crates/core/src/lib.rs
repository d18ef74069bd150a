//! Exact-arithmetic computations for the lattice-level data of
//! stability conditions on crepant resolutions of ADE surface
//! singularities.
//!
//! The crate models the numerical Grothendieck lattice of the
//! resolution, the central-charge family on it, and everything those
//! two determine at the level of classes: parameter validity regions,
//! support-property quadratic forms with exact definiteness
//! certificates, pushforward and lifting between the resolution and
//! the singular surface, Jordan-Holder combinatorics on the
//! exceptional locus, and wall scanning along the deformation
//! parameters.
//!
//! All arithmetic is exact rational; phases are compared by cross
//! products, never trigonometry. The `parallel` feature (on by
//! default) runs candidate sweeps through rayon; disabling it yields a
//! fully sequential build with the same results.

pub mod charge;
pub mod error;
pub mod exceptional;
pub mod linalg;
pub mod par;
pub mod rational;
pub mod root_data;
pub mod scanner;
pub mod surface;

pub use charge::{ChargeParams, ChargeValue};
pub use error::{Error, Result};
pub use rational::Rational;
pub use root_data::{AdeData, AdeType, Series};
pub use surface::{NumClass, PushedClass, SurfaceSpec};
