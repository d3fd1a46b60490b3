//! Finite-alphabet and Gaussian information measures.

mod gaussian;
mod joint;
mod random;
mod vars;

pub use gaussian::{gaussian_mutual_information, CovarianceModel};
pub use joint::{
    conditional_mutual_information, entropy, Alphabets, FactorSet, JointDistribution,
    DEFAULT_TOLERANCE, FACTOR_LAYOUT, MAX_ALPHABET,
};
pub use random::{random_joint_distribution, random_joint_distribution_with, GenOptions};
pub use vars::{Var, VarSet};

/// Unit of the logarithm used by the information measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    /// Converts a quantity measured in nats into this unit.
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Bits => nats / std::f64::consts::LN_2,
            LogBase::Nats => nats,
        }
    }
}

/// Binary entropy function in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Tiny negative round-off in a mutual information is reported as zero.
pub(crate) fn clamp_round_off(v: f64, tol: f64) -> f64 {
    if v < 0.0 && v > -tol {
        0.0
    } else {
        v
    }
}
