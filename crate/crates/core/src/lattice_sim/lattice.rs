/// Reduces `x` into the half-open cell `[-delta/2, delta/2)` of `delta·Z`.
pub fn mod_lattice(x: f64, delta: f64) -> f64 {
    debug_assert!(delta > 0.0);
    let half = 0.5 * delta;
    let mut r = x - delta * (x / delta + 0.5).floor();
    if r >= half {
        r -= delta;
    } else if r < -half {
        r += delta;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_and_ties() {
        assert_eq!(mod_lattice(0.75, 1.0), -0.25);
        assert_eq!(mod_lattice(0.5, 1.0), -0.5);
        assert_eq!(mod_lattice(-0.5, 1.0), -0.5);
        assert!((mod_lattice(7.0 * 0.3 + 0.1, 0.3) - 0.1).abs() < 1e-12);
        assert!((mod_lattice(-4.0 * 2.5 - 1.2, 2.5) + 1.2).abs() < 1e-12);
        for i in 0..1000 {
            let x = (i as f64 - 500.0) * 0.0137;
            let r = mod_lattice(x, 0.37);
            assert!((-0.185..0.185).contains(&r));
        }
    }
}
