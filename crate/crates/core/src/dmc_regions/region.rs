use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polyproj::{enumerate_vertices, LinearSystem, Row, Scalar};

/// Halfspace `a·R <= b` with a human-readable origin label.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace {
    pub a: Vec<f64>,
    pub b: f64,
    pub label: String,
}

/// Polytope of rate tuples given by halfspaces, nonnegativity included.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    coords: Vec<String>,
    halfspaces: Vec<Halfspace>,
}

impl RateRegion {
    /// Empty region description holding only `R >= 0` for each coordinate.
    pub fn nonnegative(coords: &[&str]) -> Self {
        let n = coords.len();
        let halfspaces = (0..n)
            .map(|i| {
                let mut a = vec![0.0; n];
                a[i] = -1.0;
                Halfspace { a, b: 0.0, label: format!("{}>=0", coords[i]) }
            })
            .collect();
        RateRegion { coords: coords.iter().map(|s| s.to_string()).collect(), halfspaces }
    }

    /// Adds `a·R <= max(b, 0)`.
    pub fn bound(&mut self, a: &[f64], b: f64, label: impl Into<String>) {
        assert_eq!(a.len(), self.coords.len(), "halfspace width");
        self.halfspaces.push(Halfspace { a: a.to_vec(), b: b.max(0.0), label: label.into() });
    }

    /// Wraps an arbitrary system over the same coordinates; rows are labelled
    /// `prefix[i]` and right-hand sides are kept as they are.
    pub fn from_system<T: Scalar>(sys: &LinearSystem<T>, prefix: &str) -> Self {
        let halfspaces = sys
            .expanded()
            .iter()
            .enumerate()
            .map(|(i, r)| Halfspace {
                a: r.coeffs.iter().map(Scalar::to_f64).collect(),
                b: r.rhs.to_f64(),
                label: format!("{prefix}[{i}]"),
            })
            .collect();
        RateRegion { coords: sys.vars().to_vec(), halfspaces }
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    /// Right-hand side of the halfspace with the given label.
    pub fn rhs(&self, label: &str) -> Option<f64> {
        self.halfspaces.iter().find(|h| h.label == label).map(|h| h.b)
    }

    pub fn to_system(&self) -> LinearSystem<f64> {
        let rows = self.halfspaces.iter().map(|h| Row::le(h.a.clone(), h.b)).collect();
        LinearSystem::from_rows(self.coords.clone(), rows)
    }

    pub fn contains_point(&self, x: &[f64], tol: f64) -> bool {
        self.halfspaces.iter().all(|h| h.a.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() <= h.b + tol)
    }

    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        enumerate_vertices(&self.to_system())
    }

    pub fn to_json(&self) -> Result<Value> {
        let halfspaces: Vec<Value> = self
            .halfspaces
            .iter()
            .map(|h| json!({ "a": h.a, "b": h.b, "label": h.label }))
            .collect();
        Ok(json!({
            "coords": self.coords,
            "halfspaces": halfspaces,
            "vertices": self.vertices()?,
        }))
    }
}

/// True iff every vertex of `inner` satisfies every halfspace of `outer`
/// within `tol`.
pub fn region_contains(outer: &RateRegion, inner: &RateRegion, tol: f64) -> Result<bool> {
    if outer.coords != inner.coords {
        return Err(Error::input(format!(
            "coordinate mismatch: {:?} vs {:?}",
            outer.coords, inner.coords
        )));
    }
    Ok(inner.vertices()?.iter().all(|v| outer.contains_point(v, tol)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(b: f64) -> RateRegion {
        let mut r = RateRegion::nonnegative(&["R1", "R2"]);
        r.bound(&[1.0, 0.0], b, "R1");
        r.bound(&[0.0, 1.0], b, "R2");
        r
    }

    #[test]
    fn containment() {
        let small = boxed(1.0);
        let big = boxed(2.0);
        assert!(region_contains(&big, &small, 1e-9).unwrap());
        assert!(!region_contains(&small, &big, 1e-9).unwrap());
        assert!(region_contains(&small, &small, 1e-9).unwrap());
        assert!(region_contains(&small, &boxed(-1.0), 1e-9).unwrap());
        let other = RateRegion::nonnegative(&["R1", "R3"]);
        assert!(region_contains(&small, &other, 1e-9).is_err());
    }

    #[test]
    fn clamps_and_serializes() {
        let r = boxed(-0.5);
        assert_eq!(r.rhs("R1"), Some(0.0));
        let v = r.to_json().unwrap();
        assert_eq!(v["vertices"], json!([[0.0, 0.0]]));
        assert_eq!(v["halfspaces"][0]["label"], "R1>=0");
    }
}
