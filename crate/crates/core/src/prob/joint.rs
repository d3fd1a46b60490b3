use serde_json::{Map, Value};

use super::vars::{Var, VarSet};
use super::{clamp_round_off, LogBase};
use crate::error::{Error, Result};

/// Largest alphabet accepted for any single variable.
pub const MAX_ALPHABET: usize = 4;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const MI_ROUND_OFF: f64 = 1e-12;

/// Alphabet sizes of the nine variables, indexed by [`Var`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabets([usize; 9]);

impl Alphabets {
    pub fn new(sizes: [usize; 9]) -> Result<Self> {
        for (v, &n) in Var::ALL.iter().zip(&sizes) {
            if n == 0 || n > MAX_ALPHABET {
                return Err(Error::input(format!(
                    "alphabet size of {v} must lie in [1, {MAX_ALPHABET}], got {n}"
                )));
            }
        }
        Ok(Alphabets(sizes))
    }

    /// Every variable gets the same alphabet size.
    pub fn uniform(n: usize) -> Result<Self> {
        Alphabets::new([n; 9])
    }

    pub fn with(self, v: Var, n: usize) -> Result<Self> {
        let mut sizes = self.0;
        sizes[v.index()] = n;
        Alphabets::new(sizes)
    }

    pub fn get(&self, v: Var) -> usize {
        self.0[v.index()]
    }

    pub fn sizes(&self) -> [usize; 9] {
        self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    fn to_json(self) -> Value {
        let map: Map<String, Value> = Var::ALL
            .iter()
            .map(|v| (v.name().to_string(), Value::from(self.get(*v))))
            .collect();
        Value::Object(map)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::input("\"alphabets\" must be an object"))?;
        let mut sizes = [1usize; 9];
        for (name, n) in obj {
            let var: Var = name.parse()?;
            let n = n
                .as_u64()
                .ok_or_else(|| Error::input(format!("alphabet size of {name} is not an integer")))?;
            sizes[var.index()] = n as usize;
        }
        Alphabets::new(sizes)
    }
}

/// One conditional factor of the product law: axes are listed with the
/// conditioning variables first and the `conditioned` target variables last.
#[derive(Debug, Clone, Copy)]
pub struct FactorSpec {
    pub name: &'static str,
    pub axes: &'static [Var],
    pub conditioned: usize,
}

impl FactorSpec {
    fn shape(&self, alph: &Alphabets) -> Vec<usize> {
        self.axes.iter().map(|v| alph.get(*v)).collect()
    }

    fn len(&self, alph: &Alphabets) -> usize {
        self.shape(alph).iter().product()
    }

    fn context_len(&self, alph: &Alphabets) -> usize {
        self.shape(alph)[..self.axes.len() - self.conditioned]
            .iter()
            .product()
    }
}

use Var::*;

/// p(s) p(w|s) p(x1|w,s) p(u|s) p(u1|u,s) p(u2|u,s) p(x2|u,u1,u2,s) p(y1,y2|x1,x2,s)
pub const FACTOR_LAYOUT: [FactorSpec; 8] = [
    FactorSpec { name: "s", axes: &[S], conditioned: 1 },
    FactorSpec { name: "w|s", axes: &[S, W], conditioned: 1 },
    FactorSpec { name: "x1|w,s", axes: &[W, S, X1], conditioned: 1 },
    FactorSpec { name: "u|s", axes: &[S, U], conditioned: 1 },
    FactorSpec { name: "u1|u,s", axes: &[U, S, U1], conditioned: 1 },
    FactorSpec { name: "u2|u,s", axes: &[U, S, U2], conditioned: 1 },
    FactorSpec { name: "x2|u,u1,u2,s", axes: &[U, U1, U2, S, X2], conditioned: 1 },
    FactorSpec { name: "y1,y2|x1,x2,s", axes: &[X1, X2, S, Y1, Y2], conditioned: 2 },
];

const X1_FACTOR: usize = 2;
const X2_FACTOR: usize = 6;
const CHANNEL_FACTOR: usize = 7;

/// Flat (row-major, layout axis order) tables for the eight factors.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet {
    pub tables: [Vec<f64>; 8],
}

impl FactorSet {
    pub fn table(&self, name: &str) -> Option<&[f64]> {
        FACTOR_LAYOUT
            .iter()
            .position(|f| f.name == name)
            .map(|i| self.tables[i].as_slice())
    }
}

/// Maps a full nine-variable multi-index onto a row-major sub-tensor index.
#[derive(Debug, Clone, Copy)]
struct Projection {
    strides: [usize; 9],
}

impl Projection {
    /// Sub-tensor over `axes` in the given axis order.
    fn along(alph: &Alphabets, axes: &[Var]) -> Self {
        let mut strides = [0usize; 9];
        let mut stride = 1;
        for v in axes.iter().rev() {
            strides[v.index()] = stride;
            stride *= alph.get(*v);
        }
        Projection { strides }
    }

    fn of_set(alph: &Alphabets, set: VarSet) -> Self {
        let axes: Vec<Var> = set.iter().collect();
        Projection::along(alph, &axes)
    }

    #[inline]
    fn index(&self, mi: &[usize; 9]) -> usize {
        mi.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }
}

/// Visits every multi-index of the full tensor in row-major order.
fn for_each_index(alph: &Alphabets, mut f: impl FnMut(usize, &[usize; 9])) {
    let sizes = alph.sizes();
    let mut mi = [0usize; 9];
    for flat in 0..alph.total() {
        f(flat, &mi);
        for d in (0..9).rev() {
            mi[d] += 1;
            if mi[d] < sizes[d] {
                break;
            }
            mi[d] = 0;
        }
    }
}

/// Dense joint law over (S, W, X1, U, U1, U2, X2, Y1, Y2).
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    alphabets: Alphabets,
    probs: Vec<f64>,
    tolerance: f64,
}

impl JointDistribution {
    /// Wraps a dense tensor (row-major, variables in [`Var::ALL`] order) and
    /// checks every invariant of the product law.
    pub fn from_tensor(alphabets: Alphabets, probs: Vec<f64>, tolerance: f64) -> Result<Self> {
        if probs.len() != alphabets.total() {
            return Err(Error::input(format!(
                "tensor has {} entries, alphabets require {}",
                probs.len(),
                alphabets.total()
            )));
        }
        let dist = JointDistribution {
            alphabets,
            probs,
            tolerance,
        };
        dist.validate()?;
        Ok(dist)
    }

    /// Materialises the tensor from the eight conditional factors.
    pub fn from_factors(alphabets: Alphabets, factors: &FactorSet, tolerance: f64) -> Result<Self> {
        for (spec, table) in FACTOR_LAYOUT.iter().zip(&factors.tables) {
            let want = spec.len(&alphabets);
            if table.len() != want {
                return Err(Error::input(format!(
                    "factor {:?} has {} entries, expected {}",
                    spec.name,
                    table.len(),
                    want
                )));
            }
        }
        let probs = materialize(&alphabets, factors);
        JointDistribution::from_tensor(alphabets, probs, tolerance)
    }

    pub fn alphabets(&self) -> Alphabets {
        self.alphabets
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn validate(&self) -> Result<()> {
        let tol = self.tolerance;
        if let Some(p) = self.probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::validation(
                "nonnegativity",
                format!("tensor contains entry {p}"),
            ));
        }
        let mass: f64 = self.probs.iter().sum();
        if (mass - 1.0).abs() > tol {
            return Err(Error::validation(
                "mass",
                format!("total probability mass {} is not within {tol:e} of 1", short(mass)),
            ));
        }
        let residual = self.factorization_residual();
        if residual > tol {
            return Err(Error::validation(
                "factorization",
                format!("tensor deviates from the product law by {residual:e}"),
            ));
        }
        for idx in [X1_FACTOR, X2_FACTOR] {
            if let Some(p) = self.nondeterministic_entry(idx) {
                return Err(Error::validation(
                    "determinism",
                    format!(
                        "conditional {:?} has entry {p} outside {{0,1}}",
                        FACTOR_LAYOUT[idx].name
                    ),
                ));
            }
        }
        Ok(())
    }

    /// Marginal over `set`, row-major with variables in [`Var::ALL`] order.
    pub fn marginal(&self, set: VarSet) -> Vec<f64> {
        let proj = Projection::of_set(&self.alphabets, set);
        self.marginal_along(proj, set.iter().map(|v| self.alphabets.get(v)).product())
    }

    fn marginal_along(&self, proj: Projection, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for_each_index(&self.alphabets, |flat, mi| {
            out[proj.index(mi)] += self.probs[flat];
        });
        out
    }

    /// Joint entropy H(set) in bits.
    pub fn entropy(&self, set: VarSet) -> f64 {
        self.entropy_in(set, LogBase::Bits)
    }

    pub fn entropy_in(&self, set: VarSet, base: LogBase) -> f64 {
        if set.is_empty() {
            return 0.0;
        }
        let nats: f64 = self
            .marginal(set)
            .iter()
            .filter(|p| **p > 0.0)
            .map(|p| -p * p.ln())
            .sum();
        base.from_nats(nats).max(0.0)
    }

    /// I(a; b | c) in bits.
    pub fn mutual_information(&self, a: VarSet, b: VarSet, c: VarSet) -> Result<f64> {
        self.mutual_information_in(a, b, c, LogBase::Bits)
    }

    pub fn mutual_information_in(
        &self,
        a: VarSet,
        b: VarSet,
        c: VarSet,
        base: LogBase,
    ) -> Result<f64> {
        if a.intersects(b) || a.intersects(c) || b.intersects(c) {
            return Err(Error::input(format!(
                "mutual information sets must be disjoint: {{{a}}}, {{{b}}}, {{{c}}}"
            )));
        }
        if a.is_empty() || b.is_empty() {
            return Ok(0.0);
        }
        let h = |s: VarSet| self.entropy_in(s, base);
        let v = h(a | c) + h(b | c) - h(a | b | c) - h(c);
        Ok(clamp_round_off(v, MI_ROUND_OFF))
    }

    /// The eight conditionals recovered from the tensor. Conditioning
    /// contexts of zero mass get a uniform conditional.
    pub fn factors(&self) -> FactorSet {
        let tables = FACTOR_LAYOUT.map(|spec| self.extract_factor(&spec));
        FactorSet { tables }
    }

    fn extract_factor(&self, spec: &FactorSpec) -> Vec<f64> {
        let alph = &self.alphabets;
        let joint = self.marginal_along(Projection::along(alph, spec.axes), spec.len(alph));
        let n_ctx = spec.context_len(alph);
        let n_target = joint.len() / n_ctx;
        let mut out = Vec::with_capacity(joint.len());
        for ctx in joint.chunks(n_target) {
            let mass: f64 = ctx.iter().sum();
            if mass > 0.0 {
                out.extend(ctx.iter().map(|p| p / mass));
            } else {
                out.extend(std::iter::repeat_n(1.0 / n_target as f64, n_target));
            }
        }
        out
    }

    /// Max-abs gap between the tensor and the product of its own conditionals.
    pub fn factorization_residual(&self) -> f64 {
        let rebuilt = materialize(&self.alphabets, &self.factors());
        self.probs
            .iter()
            .zip(&rebuilt)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    fn nondeterministic_entry(&self, factor: usize) -> Option<f64> {
        let spec = &FACTOR_LAYOUT[factor];
        let alph = &self.alphabets;
        let ctx_mass = self.marginal_along(
            Projection::along(alph, &spec.axes[..spec.axes.len() - spec.conditioned]),
            spec.context_len(alph),
        );
        let cond = self.extract_factor(spec);
        let n_target = cond.len() / ctx_mass.len();
        ctx_mass
            .iter()
            .zip(cond.chunks(n_target))
            .filter(|(m, _)| **m > self.tolerance)
            .flat_map(|(_, row)| row.iter().copied())
            .find(|p| p.abs() > self.tolerance && (p - 1.0).abs() > self.tolerance)
    }

    /// True when the marginal of `v` is a point mass.
    pub fn is_degenerate(&self, v: Var) -> bool {
        self.marginal(v.into())
            .iter()
            .any(|p| (p - 1.0).abs() <= self.tolerance)
    }

    /// True when U1 copies U: equal alphabets and p(u1|u,s) is the identity
    /// on every context of positive mass.
    pub fn u1_is_identity(&self) -> bool {
        let alph = &self.alphabets;
        if alph.get(U1) != alph.get(U) {
            return false;
        }
        let m = self.marginal(U | U1);
        let n = alph.get(U);
        (0..n).all(|u| (0..n).all(|u1| u == u1 || m[u * n + u1] <= self.tolerance))
    }

    /// Checks p(y1,y2|x1,x2,s) = p(y2|x2,s) p(y1|x1,y2,s) within tolerance.
    pub fn is_degraded(&self) -> bool {
        let alph = &self.alphabets;
        let ch = Projection::along(alph, FACTOR_LAYOUT[CHANNEL_FACTOR].axes);
        let channel = self.extract_factor(&FACTOR_LAYOUT[CHANNEL_FACTOR]);
        let ctx = Projection::of_set(alph, X1 | X2 | S);
        let ctx_mass = self.marginal(X1 | X2 | S);
        let y2_spec = FactorSpec { name: "y2|x2,s", axes: &[X2, S, Y2], conditioned: 1 };
        let y1_spec = FactorSpec { name: "y1|x1,y2,s", axes: &[X1, Y2, S, Y1], conditioned: 1 };
        let p_y2 = self.extract_factor(&y2_spec);
        let p_y1 = self.extract_factor(&y1_spec);
        let py2 = Projection::along(alph, y2_spec.axes);
        let py1 = Projection::along(alph, y1_spec.axes);
        let mut ok = true;
        for_each_index(alph, |_, mi| {
            if ctx_mass[ctx.index(mi)] <= self.tolerance {
                return;
            }
            let lhs = channel[ch.index(mi)];
            let rhs = p_y2[py2.index(mi)] * p_y1[py1.index(mi)];
            if (lhs - rhs).abs() > 1e-7 {
                ok = false;
            }
        });
        ok
    }

    pub fn to_json(&self) -> Value {
        let factors = self.factors();
        let mut fmap = Map::new();
        for (spec, table) in FACTOR_LAYOUT.iter().zip(&factors.tables) {
            fmap.insert(spec.name.to_string(), nest(table, &spec.shape(&self.alphabets)));
        }
        let mut obj = Map::new();
        obj.insert("alphabets".into(), self.alphabets.to_json());
        obj.insert("factors".into(), Value::Object(fmap));
        obj.insert("tolerance".into(), Value::from(self.tolerance));
        Value::Object(obj)
    }

    /// Loads the `{ "alphabets": {...}, "factors": {...} }` file format.
    /// A factor may be omitted when all its target variables are constant.
    pub fn from_json(v: &Value) -> Result<Self> {
        let alph = Alphabets::from_json(
            v.get("alphabets")
                .ok_or_else(|| Error::input("missing \"alphabets\""))?,
        )?;
        let fobj = v
            .get("factors")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::input("missing \"factors\" object"))?;
        for key in fobj.keys() {
            if !FACTOR_LAYOUT.iter().any(|f| f.name == key) {
                return Err(Error::input(format!("unknown factor {key:?}")));
            }
        }
        let mut tables: [Vec<f64>; 8] = Default::default();
        for (i, spec) in FACTOR_LAYOUT.iter().enumerate() {
            let shape = spec.shape(&alph);
            tables[i] = match fobj.get(spec.name) {
                Some(val) => {
                    let mut flat = Vec::new();
                    flatten(val, &shape, spec.name, &mut flat)?;
                    flat
                }
                None if shape[shape.len() - spec.conditioned..].iter().all(|n| *n == 1) => {
                    vec![1.0; spec.len(&alph)]
                }
                None => return Err(Error::input(format!("missing factor {:?}", spec.name))),
            };
        }
        let tol = v
            .get("tolerance")
            .and_then(Value::as_f64)
            .unwrap_or(DEFAULT_TOLERANCE);
        JointDistribution::from_factors(alph, &FactorSet { tables }, tol)
    }
}

/// H(vars) in bits.
pub fn entropy(dist: &JointDistribution, vars: VarSet) -> Result<f64> {
    if vars.is_empty() {
        return Err(Error::input("entropy needs a nonempty variable set"));
    }
    Ok(dist.entropy(vars))
}

/// I(a; b | c) in bits.
pub fn conditional_mutual_information(
    dist: &JointDistribution,
    a: VarSet,
    b: VarSet,
    c: VarSet,
) -> Result<f64> {
    dist.mutual_information(a, b, c)
}

fn materialize(alph: &Alphabets, factors: &FactorSet) -> Vec<f64> {
    let projs: Vec<Projection> = FACTOR_LAYOUT
        .iter()
        .map(|f| Projection::along(alph, f.axes))
        .collect();
    let mut probs = vec![0.0; alph.total()];
    for_each_index(alph, |flat, mi| {
        probs[flat] = projs
            .iter()
            .zip(&factors.tables)
            .map(|(p, t)| t[p.index(mi)])
            .product();
    });
    probs
}

fn nest(flat: &[f64], shape: &[usize]) -> Value {
    match shape {
        [] => Value::from(flat[0]),
        [_] => Value::from(flat.to_vec()),
        [n, rest @ ..] => {
            let chunk = flat.len() / n;
            Value::Array(flat.chunks(chunk).map(|c| nest(c, rest)).collect())
        }
    }
}

fn flatten(v: &Value, shape: &[usize], name: &str, out: &mut Vec<f64>) -> Result<()> {
    match shape {
        [] => {
            let x = v
                .as_f64()
                .ok_or_else(|| Error::input(format!("factor {name:?}: expected a number")))?;
            out.push(x);
            Ok(())
        }
        [n, rest @ ..] => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == *n)
                .ok_or_else(|| Error::input(format!("factor {name:?}: expected an array of length {n}")))?;
            arr.iter().try_for_each(|x| flatten(x, rest, name, out))
        }
    }
}

/// Formats a number with at most nine significant digits and no trailing zeros.
fn short(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::binary_entropy;

    /// Builds a law where only the listed factors deviate from point masses
    /// at symbol 0; sizes default to 1.
    fn point_factors(alph: &Alphabets) -> FactorSet {
        let tables = FACTOR_LAYOUT.map(|spec| {
            let n_target: usize = spec.shape(alph)[spec.axes.len() - spec.conditioned..]
                .iter()
                .product();
            let mut t = vec![0.0; spec.len(alph)];
            for ctx in t.chunks_mut(n_target) {
                ctx[0] = 1.0;
            }
            t
        });
        FactorSet { tables }
    }

    fn table_mut<'a>(f: &'a mut FactorSet, name: &str) -> &'a mut Vec<f64> {
        let i = FACTOR_LAYOUT.iter().position(|s| s.name == name).unwrap();
        &mut f.tables[i]
    }

    /// W uniform binary, X1 = W, Y1 through a BSC(eps) from X1.
    fn bsc_law(eps: f64) -> JointDistribution {
        let alph = Alphabets::uniform(1)
            .unwrap()
            .with(W, 2)
            .unwrap()
            .with(X1, 2)
            .unwrap()
            .with(Y1, 2)
            .unwrap();
        let mut f = point_factors(&alph);
        *table_mut(&mut f, "w|s") = vec![0.5, 0.5];
        *table_mut(&mut f, "x1|w,s") = vec![1.0, 0.0, 0.0, 1.0];
        *table_mut(&mut f, "y1,y2|x1,x2,s") = vec![1.0 - eps, eps, eps, 1.0 - eps];
        JointDistribution::from_factors(alph, &f, DEFAULT_TOLERANCE).unwrap()
    }

    #[test]
    fn uniform_binary_has_one_bit() {
        let d = bsc_law(0.0);
        assert!((entropy(&d, W.into()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_mass_has_zero_entropy() {
        let d = bsc_law(0.1);
        assert_eq!(entropy(&d, U.into()).unwrap(), 0.0);
        assert_eq!(entropy(&d, S.into()).unwrap(), 0.0);
    }

    #[test]
    fn uniform_over_eight_values_has_three_bits() {
        let alph = Alphabets::uniform(1)
            .unwrap()
            .with(W, 2)
            .unwrap()
            .with(U, 4)
            .unwrap();
        let mut f = point_factors(&alph);
        *table_mut(&mut f, "w|s") = vec![0.5; 2];
        *table_mut(&mut f, "u|s") = vec![0.25; 4];
        let d = JointDistribution::from_factors(alph, &f, DEFAULT_TOLERANCE).unwrap();
        assert!((d.entropy(W | U) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn noiseless_bit_and_bsc() {
        let d = bsc_law(0.0);
        let i = conditional_mutual_information(&d, X1.into(), Y1.into(), VarSet::EMPTY).unwrap();
        assert!((i - 1.0).abs() < 1e-14);

        let d = bsc_law(0.11);
        let i = d.mutual_information(X1.into(), Y1.into(), VarSet::EMPTY).unwrap();
        assert!((i - (1.0 - binary_entropy(0.11))).abs() < 1e-12);
    }

    #[test]
    fn independent_sets_have_zero_information() {
        let d = bsc_law(0.2);
        let i = d.mutual_information(W.into(), U.into(), VarSet::EMPTY).unwrap();
        assert_eq!(i, 0.0);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let d = bsc_law(0.2);
        let err = d.mutual_information(W | X1, X1.into(), VarSet::EMPTY);
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn mass_violation_names_the_mass() {
        let alph = Alphabets::uniform(1).unwrap().with(S, 2).unwrap();
        let mut f = point_factors(&alph);
        *table_mut(&mut f, "s") = vec![0.45, 0.45];
        let err = JointDistribution::from_factors(alph, &f, DEFAULT_TOLERANCE).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mass 0.9"), "{msg}");
    }

    #[test]
    fn stochastic_encoder_is_rejected() {
        let alph = Alphabets::uniform(1)
            .unwrap()
            .with(W, 2)
            .unwrap()
            .with(X1, 2)
            .unwrap();
        let mut f = point_factors(&alph);
        *table_mut(&mut f, "w|s") = vec![0.5, 0.5];
        *table_mut(&mut f, "x1|w,s") = vec![0.5, 0.5, 0.0, 1.0];
        let err = JointDistribution::from_factors(alph, &f, DEFAULT_TOLERANCE).unwrap_err();
        assert!(matches!(err, Error::Validation { invariant: "determinism", .. }));
    }

    #[test]
    fn dependent_tensor_fails_factorization() {
        // W and U perfectly correlated without a common state: not of product form.
        let alph = Alphabets::uniform(1)
            .unwrap()
            .with(W, 2)
            .unwrap()
            .with(U, 2)
            .unwrap();
        let mut probs = vec![0.0; alph.total()];
        let proj = Projection::of_set(&alph, W | U);
        for_each_index(&alph, |flat, mi| {
            let k = proj.index(mi);
            if k == 0 || k == 3 {
                probs[flat] = 0.5;
            }
        });
        let err = JointDistribution::from_tensor(alph, probs, DEFAULT_TOLERANCE).unwrap_err();
        assert!(matches!(err, Error::Validation { invariant: "factorization", .. }));
    }

    #[test]
    fn json_round_trip_preserves_tensor() {
        let d = bsc_law(0.3);
        let back = JointDistribution::from_json(&d.to_json()).unwrap();
        assert_eq!(back.alphabets(), d.alphabets());
        for (p, q) in back.probs().iter().zip(d.probs()) {
            assert!((p - q).abs() < 1e-15);
        }
    }

    #[test]
    fn json_allows_omitting_constant_factors() {
        let v = serde_json::json!({
            "alphabets": {"W": 2, "X1": 2, "Y1": 2},
            "factors": {
                "w|s": [[0.5, 0.5]],
                "x1|w,s": [[[1.0, 0.0]], [[0.0, 1.0]]],
                "y1,y2|x1,x2,s": [[[[[1.0], [0.0]]]], [[[[0.0], [1.0]]]]]
            }
        });
        let d = JointDistribution::from_json(&v).unwrap();
        let i = d.mutual_information(W.into(), Y1.into(), VarSet::EMPTY).unwrap();
        assert!((i - 1.0).abs() < 1e-14);
    }

    #[test]
    fn json_rejects_bad_shape() {
        let v = serde_json::json!({
            "alphabets": {"S": 2},
            "factors": {"s": [1.0]}
        });
        assert!(matches!(JointDistribution::from_json(&v), Err(Error::Input(_))));
    }
}
