//! Linear inequality systems, Fourier–Motzkin projection and small-dimensional
//! vertex enumeration, in floating-point or exact rational arithmetic.

mod fme;
mod hull;
mod scalar;
mod simplex;
mod system;
mod vertices;

pub use fme::{fme_eliminate, fme_eliminate_with, project, project_with, remove_redundant};
pub use hull::{convex_dominates, down_closed_hull, pareto_front};
pub use scalar::{parse_rational, Rational, Scalar};
pub use simplex::{is_feasible, maximize, maximize_nonneg, LpOutcome};
pub use system::{AnySystem, LinearSystem, Relation, Row};
pub use vertices::{enumerate_vertices, same_vertices, VERTEX_TOL};
