//! Dithered scalar mod-lattice scheme for the degraded Gaussian Z channel:
//! rate formulas, MMSE scalings and Monte Carlo checks of the effective
//! noise algebra.

mod bounds;
mod config;
mod lattice;
mod rng;
mod sim;
mod stats;
mod toy;

pub use bounds::{
    frontier_csv, optimal_alphas, region_union, region_union_with, shaping_gap_bits, theorem5_bounds, LatticePoint,
    LatticeUnion, OptimalAlphas, Theorem5Bounds,
};
pub use config::LatticeConfig;
pub use lattice::mod_lattice;
pub use rng::{Stream, StreamReader};
pub use sim::{
    decoder1_prediction, simulate_decoder1, simulate_decoder1_with, simulate_decoder2, simulate_decoder2_with,
    variance_band, Decoder1Prediction, LatticeRunStats, BLOCK, IDENTITY_TOL, KS_SIGNIFICANCE, MIN_SAMPLES,
};
pub use stats::{kolmogorov_pvalue, ks_uniform, BoundCheck, KsCheck, Moments, RatioCheck};
pub use toy::{toy_decode_demo, StageSer, ToyDecodeReport};
