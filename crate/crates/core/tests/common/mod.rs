#![allow(dead_code)]

use std::collections::HashMap;

use zchan_core::prob::{JointDistribution, Var};

type Key = Vec<usize>;

/// Mutual information in bits by direct summation over the dense tensor.
pub fn brute_mi(d: &JointDistribution, a: &[Var], b: &[Var], c: &[Var]) -> f64 {
    let sizes = d.alphabets().sizes();
    let mut idx = [0usize; 9];
    let key = |idx: &[usize; 9], vs: &[Var]| vs.iter().map(|v| idx[v.index()]).collect::<Vec<_>>();
    let mut p_abc: HashMap<(Key, Key, Key), f64> = HashMap::new();
    let mut p_ac: HashMap<(Key, Key), f64> = HashMap::new();
    let mut p_bc: HashMap<(Key, Key), f64> = HashMap::new();
    let mut p_c: HashMap<Key, f64> = HashMap::new();
    for &p in d.probs() {
        let (ka, kb, kc) = (key(&idx, a), key(&idx, b), key(&idx, c));
        *p_abc.entry((ka.clone(), kb.clone(), kc.clone())).or_default() += p;
        *p_ac.entry((ka, kc.clone())).or_default() += p;
        *p_bc.entry((kb, kc.clone())).or_default() += p;
        *p_c.entry(kc).or_default() += p;
        for k in (0..9).rev() {
            idx[k] += 1;
            if idx[k] < sizes[k] {
                break;
            }
            idx[k] = 0;
        }
    }
    let mut total = 0.0;
    for ((ka, kb, kc), p) in &p_abc {
        if *p > 0.0 {
            let r = p * p_c[kc] / (p_ac[&(ka.clone(), kc.clone())] * p_bc[&(kb.clone(), kc.clone())]);
            total += p * r.log2();
        }
    }
    total
}

/// `I(a;Y|c) - I(a;S|c)` via [`brute_mi`].
pub fn brute_gp(d: &JointDistribution, a: &[Var], y: Var, c: &[Var]) -> f64 {
    brute_mi(d, a, &[y], c) - brute_mi(d, a, &[Var::S], c)
}

/// Bounded 3-D vertices of `{x : a·x <= b}` by solving every 3-subset.
pub fn brute_vertices(rows: &[([f64; 3], f64)]) -> Vec<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let mut out: Vec<[f64; 3]> = Vec::new();
    let n = rows.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = [rows[i].0, rows[j].0, rows[k].0];
                let b = [rows[i].1, rows[j].1, rows[k].1];
                let dm = det(m);
                if dm.abs() < 1e-12 {
                    continue;
                }
                let mut x = [0.0; 3];
                for (c, xc) in x.iter_mut().enumerate() {
                    let mut mc = m;
                    for r in 0..3 {
                        mc[r][c] = b[r];
                    }
                    *xc = det(mc) / dm;
                }
                let feasible = rows.iter().all(|(a, rhs)| a[0] * x[0] + a[1] * x[1] + a[2] * x[2] <= rhs + 1e-9);
                if feasible && !out.iter().any(|v| (0..3).all(|t| (v[t] - x[t]).abs() < 1e-9)) {
                    out.push(x);
                }
            }
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

pub fn same_points(a: &[Vec<f64>], b: &[[f64; 3]], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| (0..3).all(|t| (p[t] - q[t]).abs() <= tol)))
        && b.iter().all(|q| a.iter().any(|p| (0..3).all(|t| (p[t] - q[t]).abs() <= tol)))
}

/// Projection of the split-rate system onto (R11, R21, R22), derived by
/// hand, for clamped bounds `i = [I15, .., I21]`.
pub fn hand_projection(i: [f64; 7]) -> Vec<([f64; 3], f64)> {
    let [i15, i16, i17, i18, i19, i20, i21] = i;
    vec![
        ([-1.0, 0.0, 0.0], 0.0),
        ([0.0, -1.0, 0.0], 0.0),
        ([0.0, 0.0, -1.0], 0.0),
        ([1.0, 0.0, 0.0], i19.min(i17)),
        ([0.0, 1.0, 0.0], i16),
        ([0.0, 0.0, 1.0], i20),
        ([1.0, 1.0, 0.0], i15),
        ([0.0, 1.0, 1.0], (i16 + i21).min(i18 + i20)),
        ([1.0, 1.0, 1.0], (i15 + i21).min(i17 + i20)),
    ]
}
