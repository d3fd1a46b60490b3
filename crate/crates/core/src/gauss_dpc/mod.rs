//! Degraded Gaussian Z channel with additive state: standard form, Costa
//! coefficients, the orthogonality lemma and dirty-paper rate regions.

mod bounds;
mod channel;
mod model;

pub use bounds::{
    dpc_bounds, dpc_bounds_with, dpc_region, dpc_region_union, dpc_region_union_with, dpc_region_with, grid,
    logdet_second_receiver, region_from_bounds, sweep_csv, DetForm, DpcBounds, DpcPoint, DpcUnion, HULL_TOL,
};
pub use channel::{standardize, ChannelSpec, GaussianZChannel, RawChannel, StandardChannel};
pub use model::{build_covariance, costa_coefficients, lemma1_residuals, DpcParams, Lemma1Report, MODEL_NAMES};
