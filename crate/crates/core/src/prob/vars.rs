use std::fmt;
use std::ops::BitOr;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The nine random variables of the state-dependent Z channel law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    W,
    X1,
    U,
    U1,
    U2,
    X2,
    Y1,
    Y2,
}

impl Var {
    pub const ALL: [Var; 9] = [
        Var::S,
        Var::W,
        Var::X1,
        Var::U,
        Var::U1,
        Var::U2,
        Var::X2,
        Var::Y1,
        Var::Y2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::S => "S",
            Var::W => "W",
            Var::X1 => "X1",
            Var::U => "U",
            Var::U1 => "U1",
            Var::U2 => "U2",
            Var::X2 => "X2",
            Var::Y1 => "Y1",
            Var::Y2 => "Y2",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::input(format!("unknown variable name {s:?}")))
    }
}

/// A set of variables, stored as a bitmask over [`Var::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u16);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersects(self, other: VarSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    /// Parses a comma- or whitespace-separated list such as `"W, U1"`.
    pub fn parse(s: &str) -> Result<VarSet> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(Var::from_str)
            .try_fold(VarSet::EMPTY, |acc, v| Ok(acc | v?))
    }
}

impl From<Var> for VarSet {
    fn from(v: Var) -> Self {
        VarSet(1 << v.index())
    }
}

impl<const N: usize> From<[Var; N]> for VarSet {
    fn from(vs: [Var; N]) -> Self {
        vs.into_iter().fold(VarSet::EMPTY, |acc, v| acc | v)
    }
}

impl BitOr<Var> for VarSet {
    type Output = VarSet;
    fn bitor(self, v: Var) -> VarSet {
        self.union(v.into())
    }
}

impl BitOr<VarSet> for VarSet {
    type Output = VarSet;
    fn bitor(self, other: VarSet) -> VarSet {
        self.union(other)
    }
}

impl BitOr<Var> for Var {
    type Output = VarSet;
    fn bitor(self, v: Var) -> VarSet {
        VarSet::from(self) | v
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(Var::name).collect();
        f.write_str(&names.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_mixed_separators() {
        let set = VarSet::parse("W, u1 Y1").unwrap();
        assert_eq!(set, Var::W | Var::U1 | Var::Y1);
        assert_eq!(set.to_string(), "WU1Y1");
    }

    #[test]
    fn parse_rejects_unknown_name() {
        assert!(matches!(VarSet::parse("W,Z3"), Err(Error::Input(_))));
    }
}
