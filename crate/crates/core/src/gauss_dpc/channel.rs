use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian Z channel with state in its original gains and noise levels:
/// `Y1* = a11 X1* + a21 X2* + (a11 + a21) S + Z1*`, `Y2* = a22 X2* + a22 S + Z2*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawChannel {
    pub a11: f64,
    pub a21: f64,
    pub a22: f64,
    #[serde(rename = "N1")]
    pub n1: f64,
    #[serde(rename = "N2")]
    pub n2: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    #[serde(rename = "P1star")]
    pub p1_star: f64,
    #[serde(rename = "P2star")]
    pub p2_star: f64,
}

/// Unit-noise form `Y1 = X1 + a X2 + a1 S + Z1`, `Y2 = X2 + a2 S + Z2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardChannel {
    pub a: f64,
    pub a1: f64,
    pub a2: f64,
    #[serde(rename = "P1")]
    pub p1: f64,
    #[serde(rename = "P2")]
    pub p2: f64,
    #[serde(rename = "Q")]
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianZChannel {
    pub raw: RawChannel,
    pub standard: StandardChannel,
}

/// Channel description as stored in JSON, tagged by `"form"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum ChannelSpec {
    Raw(RawChannel),
    Standard(StandardChannel),
}

fn check(name: &str, v: f64, nonneg: bool) -> Result<()> {
    if !v.is_finite() || (nonneg && v < 0.0) {
        let want = if nonneg { "a finite nonnegative number" } else { "finite" };
        return Err(Error::validation("channel parameters", format!("{name} = {v} must be {want}")));
    }
    Ok(())
}

impl StandardChannel {
    pub fn validate(&self) -> Result<()> {
        check("a", self.a, false)?;
        check("a1", self.a1, false)?;
        check("a2", self.a2, false)?;
        check("P1", self.p1, true)?;
        check("P2", self.p2, true)?;
        check("Q", self.q, true)
    }

    /// Raw channel with unit noises and `a22 = a2` that standardizes back to `self`.
    pub fn as_raw(&self) -> Result<RawChannel> {
        self.validate()?;
        let a22 = self.a2;
        let a21 = self.a * self.a2;
        let a11 = self.a1 - a21;
        let star = |p: f64, g: f64, name: &str| {
            if p == 0.0 {
                Ok(0.0)
            } else if g == 0.0 {
                Err(Error::input(format!("{name} is zero, so power cannot be carried back to the raw form")))
            } else {
                Ok(p / (g * g))
            }
        };
        Ok(RawChannel {
            a11,
            a21,
            a22,
            n1: 1.0,
            n2: 1.0,
            q: self.q,
            p1_star: star(self.p1, a11, "a11")?,
            p2_star: star(self.p2, a22, "a22")?,
        })
    }
}

/// Normalizes the raw channel to unit noise variances.
pub fn standardize(raw: &RawChannel) -> Result<GaussianZChannel> {
    for (n, v) in [("a11", raw.a11), ("a21", raw.a21), ("a22", raw.a22)] {
        check(n, v, false)?;
    }
    for (n, v) in [("N1", raw.n1), ("N2", raw.n2), ("Q", raw.q), ("P1star", raw.p1_star), ("P2star", raw.p2_star)] {
        check(n, v, true)?;
    }
    if raw.n1 <= 0.0 || raw.n2 <= 0.0 {
        return Err(Error::validation("channel parameters", "noise variances N1, N2 must be positive"));
    }
    if raw.a22 == 0.0 {
        return Err(Error::validation(
            "channel parameters",
            "a22 = 0 leaves the crossover gain a = a21/a22 undefined",
        ));
    }
    let (s1, s2) = (raw.n1.sqrt(), raw.n2.sqrt());
    let standard = StandardChannel {
        a: raw.a21 / raw.a22 * (raw.n2 / raw.n1).sqrt(),
        a1: (raw.a11 + raw.a21) / s1,
        a2: raw.a22 / s2,
        p1: raw.a11 * raw.a11 * raw.p1_star / raw.n1,
        p2: raw.a22 * raw.a22 * raw.p2_star / raw.n2,
        q: raw.q,
    };
    Ok(GaussianZChannel { raw: *raw, standard })
}

impl ChannelSpec {
    pub fn resolve(&self) -> Result<GaussianZChannel> {
        match self {
            ChannelSpec::Raw(r) => standardize(r),
            ChannelSpec::Standard(s) => {
                s.validate()?;
                Ok(GaussianZChannel { raw: s.as_raw()?, standard: *s })
            }
        }
    }
}
