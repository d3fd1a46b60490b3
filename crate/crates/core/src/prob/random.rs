use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::joint::{Alphabets, FactorSet, JointDistribution, DEFAULT_TOLERANCE, FACTOR_LAYOUT};
use super::vars::Var;
use crate::error::{Error, Result};

/// Structural constraints for generated test laws.
#[derive(Debug, Clone, Copy, Default)]
pub struct GenOptions {
    /// Force U1 = U (requires equal alphabets).
    pub identity_u1: bool,
    /// Draw the channel as p(y2|x2,s) p(y1|x1,y2,s).
    pub degraded: bool,
}

/// Random law of product form with deterministic encoders.
pub fn random_joint_distribution(seed: u64, alphabets: Alphabets) -> Result<JointDistribution> {
    random_joint_distribution_with(seed, alphabets, GenOptions::default())
}

pub fn random_joint_distribution_with(
    seed: u64,
    alphabets: Alphabets,
    opts: GenOptions,
) -> Result<JointDistribution> {
    if opts.identity_u1 && alphabets.get(Var::U1) != alphabets.get(Var::U) {
        return Err(Error::input("identity U1 needs |U1| = |U|"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tables: [Vec<f64>; 8] = Default::default();
    for (i, spec) in FACTOR_LAYOUT.iter().enumerate() {
        let shape: Vec<usize> = spec.axes.iter().map(|v| alphabets.get(*v)).collect();
        let n_target: usize = shape[shape.len() - spec.conditioned..].iter().product();
        let n_ctx: usize = shape.iter().product::<usize>() / n_target;
        tables[i] = match spec.name {
            "x1|w,s" | "x2|u,u1,u2,s" => (0..n_ctx)
                .flat_map(|_| one_hot(rng.gen_range(0..n_target), n_target))
                .collect(),
            "u1|u,s" if opts.identity_u1 => {
                // axes (U, S, U1)
                let (nu, ns) = (shape[0], shape[1]);
                (0..nu)
                    .flat_map(|u| (0..ns).flat_map(move |_| one_hot(u, nu)))
                    .collect()
            }
            "y1,y2|x1,x2,s" if opts.degraded => degraded_channel(&mut rng, &shape),
            _ => (0..n_ctx)
                .flat_map(|_| simplex(&mut rng, n_target))
                .collect(),
        };
    }
    JointDistribution::from_factors(alphabets, &FactorSet { tables }, DEFAULT_TOLERANCE)
}

fn one_hot(k: usize, n: usize) -> Vec<f64> {
    (0..n).map(|j| if j == k { 1.0 } else { 0.0 }).collect()
}

/// Uniform draw from the probability simplex (normalised exponentials).
fn simplex(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = e.iter().sum();
    e.into_iter().map(|x| x / total).collect()
}

/// Shape is (X1, X2, S, Y1, Y2).
fn degraded_channel(rng: &mut impl Rng, shape: &[usize]) -> Vec<f64> {
    let (nx1, nx2, ns, ny1, ny2) = (shape[0], shape[1], shape[2], shape[3], shape[4]);
    let p_y2: Vec<Vec<f64>> = (0..nx2 * ns).map(|_| simplex(rng, ny2)).collect();
    let p_y1: Vec<Vec<f64>> = (0..nx1 * ny2 * ns).map(|_| simplex(rng, ny1)).collect();
    let mut out = Vec::with_capacity(shape.iter().product());
    for x1 in 0..nx1 {
        for x2 in 0..nx2 {
            for s in 0..ns {
                #[allow(clippy::needless_range_loop)]
                for y1 in 0..ny1 {
                    for y2 in 0..ny2 {
                        let a = p_y2[x2 * ns + s][y2];
                        let b = p_y1[(x1 * ny2 + y2) * ns + s][y1];
                        out.push(a * b);
                    }
                }
            }
        }
    }
    out
}
