mod common;

use common::brute_mi;
use nalgebra::DMatrix;
use zchan_core::prob::*;
use Var::*;

fn tensor(sizes: [usize; 9], entries: &[([usize; 9], f64)]) -> JointDistribution {
    let alph = Alphabets::new(sizes).unwrap();
    let mut p = vec![0.0; alph.total()];
    for (idx, v) in entries {
        let flat = idx.iter().zip(sizes).fold(0, |acc, (i, n)| acc * n + i);
        p[flat] += v;
    }
    JointDistribution::from_tensor(alph, p, DEFAULT_TOLERANCE).unwrap()
}

#[test]
fn entropy_examples() {
    // W uniform on 4 values, U uniform on 2, independent.
    let sizes = [1, 4, 1, 2, 1, 1, 1, 1, 1];
    let entries: Vec<_> = (0..4).flat_map(|w| (0..2).map(move |u| ([0, w, 0, u, 0, 0, 0, 0, 0], 0.125))).collect();
    let d = tensor(sizes, &entries);
    assert!((entropy(&d, W | U).unwrap() - 3.0).abs() < 1e-12);
    assert!((entropy(&d, U.into()).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(entropy(&d, S.into()).unwrap(), 0.0);
    assert!(entropy(&d, VarSet::EMPTY).is_err());
}

#[test]
fn binary_symmetric_channel() {
    let eps = 0.11;
    let sizes = [1, 2, 2, 1, 1, 1, 1, 2, 1];
    let mut entries = Vec::new();
    for w in 0..2 {
        for y in 0..2 {
            let p = if w == y { 1.0 - eps } else { eps };
            entries.push(([0, w, w, 0, 0, 0, 0, y, 0], 0.5 * p));
        }
    }
    let d = tensor(sizes, &entries);
    let i = conditional_mutual_information(&d, X1.into(), Y1.into(), VarSet::EMPTY).unwrap();
    assert!((i - (1.0 - binary_entropy(eps))).abs() < 1e-12);
    assert!(conditional_mutual_information(&d, X1 | Y1, Y1.into(), VarSet::EMPTY).is_err());
}

#[test]
fn chain_rule_and_nonnegativity() {
    for seed in 0..30 {
        let d = random_joint_distribution(seed, Alphabets::uniform(2).unwrap()).unwrap();
        let mi = |a: VarSet, b: VarSet, c: VarSet| d.mutual_information(a, b, c).unwrap();
        let lhs = mi(U | U1, Y1.into(), W.into());
        let rhs = mi(U.into(), Y1.into(), W.into()) + mi(U1.into(), Y1.into(), W | U);
        assert!((lhs - rhs).abs() < 1e-10);
        for (a, b, c) in [(W, Y1, U), (U2, Y2, U), (U, S, X2), (X1, Y2, S)] {
            let v = mi(a.into(), b.into(), c.into());
            assert!(v >= -1e-10);
            assert!((v - brute_mi(&d, &[a], &[b], &[c])).abs() < 1e-10);
        }
        let h_cond = entropy(&d, W | Y1).unwrap() - entropy(&d, Y1.into()).unwrap();
        let marg = d.marginal(W | Y1);
        let my: Vec<f64> = (0..2).map(|y| marg[y] + marg[2 + y]).collect();
        let direct: f64 = marg
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > 0.0)
            .map(|(k, p)| -p * (p / my[k % 2]).log2())
            .sum();
        assert!((h_cond - direct).abs() < 1e-10);
    }
}

#[test]
fn generator_properties() {
    let alph = Alphabets::uniform(2).unwrap();
    let a = random_joint_distribution(1, alph).unwrap();
    let b = random_joint_distribution(1, alph).unwrap();
    assert_eq!(a.probs(), b.probs());
    assert!(a.factorization_residual() < 1e-12);
    let no_state = random_joint_distribution(1, alph.with(S, 1).unwrap()).unwrap();
    assert_eq!(no_state.mutual_information(U.into(), S.into(), W.into()).unwrap(), 0.0);
    let degraded = random_joint_distribution_with(4, alph, GenOptions { degraded: true, identity_u1: true }).unwrap();
    assert!(degraded.is_degraded() && degraded.u1_is_identity());
    assert!(Alphabets::uniform(5).is_err());
}

#[test]
fn json_round_trip_and_mass_error() {
    let d = random_joint_distribution(2, Alphabets::uniform(2).unwrap()).unwrap();
    let back = JointDistribution::from_json(&d.to_json()).unwrap();
    for (x, y) in d.probs().iter().zip(back.probs()) {
        assert!((x - y).abs() < 1e-12);
    }
    let mut v = d.to_json();
    v["factors"]["s"] = serde_json::json!([0.4, 0.5]);
    let err = JointDistribution::from_json(&v).unwrap_err().to_string();
    assert!(err.contains("mass 0.9"), "{err}");
}

#[test]
fn gaussian_identities() {
    let p = 3.0;
    let cov = DMatrix::from_row_slice(3, 3, &[p, 0.0, p, 0.0, 1.0, 1.0, p, 1.0, p + 1.0]);
    let m = CovarianceModel::new(vec!["X".into(), "Z".into(), "Y".into()], cov).unwrap();
    let i = gaussian_mutual_information(&m, &["X"], &["Y"], &[]).unwrap();
    assert!((i - 0.5 * (1.0 + p).log2()).abs() < 1e-9);
    assert!(gaussian_mutual_information(&m, &["X"], &["Z"], &[]).unwrap().abs() < 1e-12);
    assert!(gaussian_mutual_information(&m, &["X"], &["Q"], &[]).is_err());
    let bad = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
    assert!(CovarianceModel::new(vec!["A".into(), "B".into()], bad).is_err());
}
