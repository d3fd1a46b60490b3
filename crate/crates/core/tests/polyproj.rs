use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zchan_core::polyproj::*;

const NAMES: [&str; 5] = ["x0", "x1", "x2", "x3", "x4"];
const BOX: i64 = 4;

/// Random system over `n` variables: box |xi| <= 4 plus a few rows with
/// integer coefficients in [-3, 3] and nonnegative integer rhs.
fn random_system(rng: &mut ChaCha8Rng, n: usize) -> LinearSystem<Rational> {
    let r = |x: i64| <Rational as Scalar>::from_f64(x as f64);
    let mut sys = LinearSystem::new(NAMES[..n].iter().copied());
    for name in &NAMES[..n] {
        sys.le(&[(name, r(1))], r(BOX)).unwrap();
        sys.ge(&[(name, r(1))], r(-BOX)).unwrap();
    }
    for _ in 0..rng.gen_range(2..=6) {
        let terms: Vec<(&str, Rational)> = NAMES[..n].iter().map(|v| (*v, r(rng.gen_range(-3..=3)))).collect();
        sys.le(&terms, r(rng.gen_range(0..=6))).unwrap();
    }
    sys
}

/// Rows of `sys` with the first `k` variables fixed to `x`.
fn restrict<T: Scalar>(sys: &LinearSystem<T>, x: &[T]) -> Vec<Row<T>> {
    let k = x.len();
    sys.expanded()
        .into_iter()
        .map(|row| {
            let fixed = row.coeffs[..k].iter().zip(x).fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
            Row::le(row.coeffs[k..].to_vec(), row.rhs - fixed)
        })
        .collect()
}

fn grid_points(k: usize) -> Vec<Vec<f64>> {
    let step = [0.0, 0.25, 0.5, 1.0][k];
    let m = (2.0 * (BOX as f64 + 1.0) / step) as i64;
    let axis: Vec<f64> = (0..=m).map(|i| -(BOX as f64 + 1.0) + i as f64 * step).collect();
    let mut pts = vec![vec![]];
    for _ in 0..k {
        pts = pts.iter().flat_map(|p| axis.iter().map(move |a| [p.clone(), vec![*a]].concat())).collect();
    }
    pts
}

#[test]
fn projection_is_sound_and_complete_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=n.min(3));
        let sys = random_system(&mut rng, n);
        let proj = project(&sys, &NAMES[..k]).unwrap();
        assert_eq!(proj.vars(), &NAMES[..k]);
        for p in grid_points(k) {
            let x: Vec<Rational> = p.iter().map(|v| <Rational as Scalar>::from_f64(*v)).collect();
            let inside = proj.contains(&x, &Rational::from_integer(0.into()));
            let rows = restrict(&sys, &x);
            let extends = if k == n { rows.iter().all(|r| r.rhs >= Rational::from_integer(0.into())) } else {
                is_feasible(n - k, &rows).unwrap()
            };
            assert_eq!(inside, extends, "case {case}, point {p:?}");
        }
    }
}

#[test]
fn projection_is_sound_and_complete_in_floats() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..100 {
        let n = rng.gen_range(2..=5);
        let k = rng.gen_range(1..=n.min(3));
        let sys = random_system(&mut rng, n).to_float();
        let proj = project(&sys, &NAMES[..k]).unwrap();
        for p in grid_points(k) {
            let inside = proj.contains(&p, &1e-9);
            let rows = restrict(&sys, &p);
            let extends = if k == n { rows.iter().all(|r| r.rhs >= -1e-9) } else {
                is_feasible(n - k, &rows).unwrap()
            };
            assert_eq!(inside, extends, "case {case}, point {p:?}");
        }
    }
}

#[test]
fn redundancy_removal_preserves_the_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for case in 0..50 {
        let n = rng.gen_range(1..=3);
        let sys = random_system(&mut rng, n);
        let reduced = remove_redundant(&sys, &Rational::from_integer(0.into())).unwrap();
        assert!(reduced.rows().len() <= sys.rows().len());
        let zero = Rational::from_integer(0.into());
        for p in grid_points(n) {
            let x: Vec<Rational> = p.iter().map(|v| <Rational as Scalar>::from_f64(*v)).collect();
            assert_eq!(sys.contains(&x, &zero), reduced.contains(&x, &zero), "case {case} {p:?}");
        }
    }
}

fn float_vertices(sys: &LinearSystem<Rational>) -> Vec<Vec<f64>> {
    enumerate_vertices(sys)
        .unwrap()
        .into_iter()
        .map(|v| v.iter().map(Scalar::to_f64).collect())
        .collect()
}

#[test]
fn elimination_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let zero = Rational::from_integer(0.into());
    for case in 0..40 {
        let sys = random_system(&mut rng, 5);
        let keep = &NAMES[..3];
        let forward = ["x3", "x4"].iter().fold(sys.clone(), |s, v| fme_eliminate(&s, v).unwrap());
        let backward = ["x4", "x3"].iter().fold(sys.clone(), |s, v| fme_eliminate(&s, v).unwrap());
        let (f, b) = (remove_redundant(&forward, &zero), remove_redundant(&backward, &zero));
        let heuristic = project(&sys, keep);
        match (f, b, heuristic) {
            (Ok(f), Ok(b), Ok(h)) => {
                let (vf, vb, vh) = (float_vertices(&f), float_vertices(&b), float_vertices(&h));
                assert!(same_vertices(&vf, &vb, 1e-9), "case {case}");
                assert!(same_vertices(&vf, &vh, 1e-9), "case {case}");
            }
            (Err(_), Err(_), Err(_)) => {}
            other => panic!("case {case}: inconsistent feasibility {other:?}"),
        }
    }
}

#[test]
fn infeasible_projection_is_reported() {
    let mut sys = LinearSystem::<f64>::new(["x", "y"]);
    sys.le(&[("x", 1.0), ("y", 1.0)], -1.0).unwrap();
    sys.ge(&[("x", 1.0)], 0.0).unwrap();
    sys.ge(&[("y", 1.0)], 0.0).unwrap();
    assert!(matches!(project(&sys, &["x"]), Err(zchan_core::Error::Infeasible)));
}

#[test]
fn json_round_trip_keeps_exact_values() {
    let v = serde_json::json!({
        "vars": ["x", "y"],
        "rows": [
            {"a": ["1", "1"], "rel": "<=", "b": "7/3"},
            {"a": ["1", "0"], "rel": ">=", "b": "0"},
            {"a": ["0", "1"], "rel": "=", "b": "1/2"}
        ],
        "mode": "rational"
    });
    let sys = AnySystem::from_json(&v).unwrap();
    let back = AnySystem::from_json(&sys.to_json()).unwrap();
    assert_eq!(sys, back);
    let AnySystem::Rational(r) = &sys else { panic!("expected rational mode") };
    let p = project(r, &["x"]).unwrap();
    let verts = enumerate_vertices(&p).unwrap();
    assert_eq!(verts.len(), 2);
    assert_eq!(verts[1][0], parse_rational("11/6").unwrap());
}

#[test]
fn float_json_defaults() {
    let v = serde_json::json!({"vars": ["x"], "rows": [{"a": [2.0], "rel": "<=", "b": 3.0}]});
    let sys = AnySystem::from_json(&v).unwrap();
    assert!(matches!(sys, AnySystem::Float(_)));
    assert_eq!(sys.vars(), ["x"]);
    let bad = serde_json::json!({"vars": ["x"], "rows": [{"a": [1.0, 2.0], "rel": "<=", "b": 3.0}]});
    assert!(AnySystem::from_json(&bad).is_err());
}

#[test]
fn pareto_and_hull() {
    let pts = vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.4, 0.4], vec![0.6, 0.6], vec![0.5, 0.5]];
    let front = pareto_front(&pts);
    assert_eq!(front.len(), 3);
    let hull = down_closed_hull(&pts, 1e-12).unwrap();
    assert_eq!(hull, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.6, 0.6]]);
    assert!(convex_dominates(&hull, &[0.5, 0.5], 1e-12).unwrap());
    assert!(!convex_dominates(&hull, &[0.7, 0.7], 1e-12).unwrap());
}
