use serde::Serialize;

/// Running sums of `x`, `x²` and `x·s` for several tracked variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub n: u64,
    pub sum: Vec<f64>,
    pub sum_sq: Vec<f64>,
    pub sum_xs: Vec<f64>,
}

impl Moments {
    pub fn new(k: usize) -> Self {
        Moments { n: 0, sum: vec![0.0; k], sum_sq: vec![0.0; k], sum_xs: vec![0.0; k] }
    }

    /// Adds one sample; `s` is the reference variable for correlations.
    pub fn push(&mut self, xs: &[f64], s: f64) {
        self.n += 1;
        for (i, &x) in xs.iter().enumerate() {
            self.sum[i] += x;
            self.sum_sq[i] += x * x;
            self.sum_xs[i] += x * s;
        }
    }

    pub fn merge(&mut self, other: &Moments) {
        self.n += other.n;
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
            self.sum_xs[i] += other.sum_xs[i];
        }
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.sum[i] / self.n as f64
    }

    pub fn second_moment(&self, i: usize) -> f64 {
        self.sum_sq[i] / self.n as f64
    }

    pub fn variance(&self, i: usize) -> f64 {
        let m = self.mean(i);
        (self.second_moment(i) - m * m).max(0.0)
    }

    /// Pearson correlation of variable `i` with the reference variable
    /// tracked at index `s`.
    pub fn corr_with(&self, i: usize, s: usize) -> f64 {
        let n = self.n as f64;
        let cov = self.sum_xs[i] / n - self.mean(i) * self.mean(s);
        let den = (self.variance(i) * self.variance(s)).sqrt();
        if den == 0.0 {
            0.0
        } else {
            cov / den
        }
    }
}

/// Kolmogorov–Smirnov statistic of samples against Uniform[lo, hi) and its
/// asymptotic p-value.
pub fn ks_uniform(samples: &mut [f64], lo: f64, hi: f64) -> (f64, f64) {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    (d, kolmogorov_pvalue(d, n))
}

/// `P(D_n > d)` via the Kolmogorov series with Stephens' small-sample
/// correction.
pub fn kolmogorov_pvalue(d: f64, n: f64) -> f64 {
    let sn = n.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut p = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = (-2.0 * k * k * lambda * lambda).exp();
        p += if k as u64 % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * p).clamp(0.0, 1.0)
}

/// Predicted against empirical value of one tracked quantity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioCheck {
    pub name: String,
    pub predicted: f64,
    pub empirical: f64,
    pub ratio: f64,
    pub pass: bool,
}

impl RatioCheck {
    pub fn new(name: &str, predicted: f64, empirical: f64, band: f64) -> Self {
        let ratio = empirical / predicted;
        RatioCheck {
            name: name.to_string(),
            predicted,
            empirical,
            ratio,
            pass: ratio.is_finite() && (ratio - 1.0).abs() <= band,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl BoundCheck {
    /// Passes when `|value| < bound`.
    pub fn below(name: &str, value: f64, bound: f64) -> Self {
        BoundCheck { name: name.to_string(), value, bound, pass: value.abs() < bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsCheck {
    pub name: String,
    pub statistic: f64,
    pub p_value: f64,
    pub significance: f64,
    pub pass: bool,
}
