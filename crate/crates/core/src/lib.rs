//! Achievable rate regions for the state-dependent Z channel.
//!
//! The crate is organised around five engines:
//!
//! * [`prob`]: finite-alphabet entropies and mutual informations over the
//!   nine-variable joint law, plus exact Gaussian mutual information from
//!   covariance log-determinants.
//! * [`dmc_regions`]: the discrete memoryless inner/outer bounds and their
//!   corollary reductions, assembled as [`dmc_regions::RateRegion`] objects.
//! * [`polyproj`]: linear inequality systems, Fourier–Motzkin elimination,
//!   LP-based redundancy removal and vertex enumeration, in `f64` or exact
//!   rational arithmetic.
//! * [`gauss_dpc`]: the standard-form Gaussian degraded Z channel with
//!   Costa dirty-paper coefficients.
//! * [`lattice_sim`]: lattice-strategy rate formulas and a dithered scalar
//!   mod-lattice Monte Carlo simulator.
//!
//! Data-parallel loops (distribution sweeps, grid sweeps, Monte Carlo
//! chunks) run on rayon when the `parallel` feature is enabled and fall back
//! to plain iterators otherwise; results are bit-identical either way.

pub mod dmc_regions;
pub mod error;
pub mod gauss_dpc;
pub mod lattice_sim;
pub mod par;
pub mod polyproj;
pub mod prob;
pub mod verify;

pub use error::{Error, Result};
