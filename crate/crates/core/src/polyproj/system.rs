use std::fmt;

use serde_json::{Map, Value};

use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

impl Relation {
    fn as_str(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row<T> {
    pub coeffs: Vec<T>,
    pub rel: Relation,
    pub rhs: T,
}

impl<T: Scalar> Row<T> {
    pub fn le(coeffs: Vec<T>, rhs: T) -> Self {
        Row { coeffs, rel: Relation::Le, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero_tol)
    }

    pub fn dot(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (a, v)| acc + a.clone() * v.clone())
    }

    /// Positive rescaling so that the largest |coefficient| is one.
    pub(crate) fn normalized(&self) -> Row<T> {
        let scale = self
            .coeffs
            .iter()
            .map(Scalar::abs)
            .fold(T::zero(), |m, a| if a > m { a } else { m });
        if scale.is_zero_tol() {
            return self.clone();
        }
        Row {
            coeffs: self.coeffs.iter().map(|a| a.clone() / scale.clone()).collect(),
            rel: self.rel,
            rhs: self.rhs.clone() / scale,
        }
    }
}

/// Named-variable linear system `A x (<= | =) b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<T> {
    vars: Vec<String>,
    rows: Vec<Row<T>>,
}

impl<T: Scalar> LinearSystem<T> {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        LinearSystem {
            vars: vars.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::input(format!("unknown variable {name:?}")))
    }

    pub fn push(&mut self, row: Row<T>) -> Result<()> {
        if row.coeffs.len() != self.vars.len() {
            return Err(Error::input(format!(
                "row has {} coefficients for {} variables",
                row.coeffs.len(),
                self.vars.len()
            )));
        }
        let finite = row
            .coeffs
            .iter()
            .chain(std::iter::once(&row.rhs))
            .all(|x| x.to_f64().is_finite());
        if !finite {
            return Err(Error::input("row contains NaN or infinite values"));
        }
        self.rows.push(row);
        Ok(())
    }

    fn sparse(&self, terms: &[(&str, T)]) -> Result<Vec<T>> {
        let mut coeffs = vec![T::zero(); self.vars.len()];
        for (name, c) in terms {
            let i = self.var_index(name)?;
            coeffs[i] = coeffs[i].clone() + c.clone();
        }
        Ok(coeffs)
    }

    /// Adds `Σ c·var <= rhs` from named terms.
    pub fn le(&mut self, terms: &[(&str, T)], rhs: T) -> Result<()> {
        let coeffs = self.sparse(terms)?;
        self.push(Row::le(coeffs, rhs))
    }

    /// Adds `Σ c·var >= rhs`, stored negated.
    pub fn ge(&mut self, terms: &[(&str, T)], rhs: T) -> Result<()> {
        let coeffs = self.sparse(terms)?.into_iter().map(|c| -c).collect();
        self.push(Row::le(coeffs, -rhs))
    }

    pub fn equal(&mut self, terms: &[(&str, T)], rhs: T) -> Result<()> {
        let coeffs = self.sparse(terms)?;
        self.push(Row { coeffs, rel: Relation::Eq, rhs })
    }

    pub(crate) fn from_rows(vars: Vec<String>, rows: Vec<Row<T>>) -> Self {
        LinearSystem { vars, rows }
    }

    /// All rows as `<=`, each equality split into two opposite inequalities.
    pub fn expanded(&self) -> Vec<Row<T>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            match r.rel {
                Relation::Le => out.push(r.clone()),
                Relation::Eq => {
                    out.push(Row::le(r.coeffs.clone(), r.rhs.clone()));
                    out.push(Row::le(
                        r.coeffs.iter().map(|c| -c.clone()).collect(),
                        -r.rhs.clone(),
                    ));
                }
            }
        }
        out
    }

    /// True when `x` satisfies every row up to `tol`.
    pub fn contains(&self, x: &[T], tol: &T) -> bool {
        self.rows.iter().all(|r| {
            let lhs = r.dot(x);
            match r.rel {
                Relation::Le => lhs <= r.rhs.clone() + tol.clone(),
                Relation::Eq => (lhs - r.rhs.clone()).abs() <= *tol,
            }
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> LinearSystem<U> {
        LinearSystem {
            vars: self.vars.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    coeffs: r.coeffs.iter().map(&f).collect(),
                    rel: r.rel,
                    rhs: f(&r.rhs),
                })
                .collect(),
        }
    }

    pub fn to_float(&self) -> LinearSystem<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn to_rational(&self) -> LinearSystem<Rational> {
        self.map(|x| <Rational as Scalar>::from_f64(x.to_f64()))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("a".into(), Value::Array(r.coeffs.iter().map(Scalar::to_json).collect()));
                m.insert("rel".into(), Value::from(r.rel.as_str()));
                m.insert("b".into(), r.rhs.to_json());
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("vars".into(), Value::from(self.vars.clone()));
        m.insert("rows".into(), Value::Array(rows));
        m.insert("mode".into(), Value::from(T::MODE));
        Value::Object(m)
    }

    fn from_json_rows(v: &Value) -> Result<Self> {
        let vars: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing \"vars\" array"))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::input("variable names must be strings"))
            })
            .collect::<Result<_>>()?;
        let mut sys = LinearSystem::new(vars);
        let rows = v
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("missing \"rows\" array"))?;
        for r in rows {
            let coeffs: Vec<T> = r
                .get("a")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::input("row without \"a\""))?
                .iter()
                .map(T::from_json)
                .collect::<Result<_>>()?;
            let rhs = T::from_json(r.get("b").ok_or_else(|| Error::input("row without \"b\""))?)?;
            let rel = r.get("rel").and_then(Value::as_str).unwrap_or("<=");
            let row = match rel {
                "<=" => Row::le(coeffs, rhs),
                ">=" => Row::le(coeffs.into_iter().map(|c| -c).collect(), -rhs),
                "=" | "==" => Row { coeffs, rel: Relation::Eq, rhs },
                other => return Err(Error::input(format!("unknown relation {other:?}"))),
            };
            sys.push(row)?;
        }
        Ok(sys)
    }
}

impl<T: Scalar> fmt::Display for LinearSystem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let terms: Vec<String> = r
                .coeffs
                .iter()
                .zip(&self.vars)
                .filter(|(c, _)| !c.is_zero_tol())
                .map(|(c, v)| format!("{:+}*{v}", c.to_f64()))
                .collect();
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" ") };
            writeln!(f, "{lhs} {} {}", r.rel.as_str(), r.rhs.to_f64())?;
        }
        Ok(())
    }
}

/// A system in either arithmetic mode, as read from JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySystem {
    Float(LinearSystem<f64>),
    Rational(LinearSystem<Rational>),
}

impl AnySystem {
    /// Reads `{ "vars": [..], "rows": [..], "mode": "rational" | "float" }`;
    /// mode defaults to float.
    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("mode").and_then(Value::as_str).unwrap_or("float") {
            "float" => Ok(AnySystem::Float(LinearSystem::from_json_rows(v)?)),
            "rational" => Ok(AnySystem::Rational(LinearSystem::from_json_rows(v)?)),
            other => Err(Error::input(format!("unknown arithmetic mode {other:?}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnySystem::Float(s) => s.to_json(),
            AnySystem::Rational(s) => s.to_json(),
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            AnySystem::Float(s) => s.vars(),
            AnySystem::Rational(s) => s.vars(),
        }
    }
}
