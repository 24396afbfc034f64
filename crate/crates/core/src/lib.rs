//! Desk-scale verification workbench for prime counting in arithmetic
//! progressions, Kloosterman-sum evaluation, exponential-sum moments, and
//! the explicit-constant calculus that connects them.
//!
//! The crate is organized around the pipeline:
//!
//! * [`modmath`] — exact 64-bit modular arithmetic, deterministic primality;
//! * [`kloosterman`] — single and batch Kloosterman sums with Weil checks;
//! * [`smoothweight`] — the smooth cutoff Φ and tent weight φ with their
//!   Fourier transforms;
//! * [`apsieve`] — exact prime counts π(x; q, a), weighted counts A(d), and
//!   the Poisson-truncated remainder;
//! * [`expsums`] — the quintilinear sum, the shifted/averaged form, the
//!   (b, c)-multiplicity census, and the sum-product moment apparatus;
//! * [`bounds`] — exact rational Brun-Titchmarsh constants and the
//!   parameter planner, with an optimizer over the moment order.

pub mod apsieve;
pub mod bounds;
pub mod error;
pub mod expsums;
pub mod kloosterman;
pub mod modmath;
pub mod quad;
pub mod rng;
pub mod smoothweight;

pub use error::{Error, Result};
pub use kloosterman::{DirectKloosterman, KloostermanTable};
pub use modmath::PrimeModulus;
pub use rng::SplitMix64;
pub use smoothweight::{SmoothWeight, TentWeight};
pub use expsums::{MomentReport, QuintConfig, ShiftConfig};
pub use bounds::{ExponentPlan, ParameterPlan};
