//! Point labels: `INT{.INT}[_INT]` for finite points, `infN` for fixed points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::AbelianGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PointLabel {
    Finite { coords: Vec<u32>, copy: Option<u32> },
    Infinite(u32),
}

pub use PointLabel::{Finite, Infinite};

impl PointLabel {
    pub fn int(x: u32) -> Self {
        Finite { coords: vec![x], copy: None }
    }

    pub fn sub(x: u32, copy: u32) -> Self {
        Finite { coords: vec![x], copy: Some(copy) }
    }

    pub fn vec(coords: Vec<u32>, copy: Option<u32>) -> Self {
        Finite { coords, copy }
    }

    pub fn inf(i: u32) -> Self {
        Infinite(i)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinite(_))
    }

    pub fn copy(&self) -> Option<u32> {
        match self {
            Finite { copy, .. } => *copy,
            Infinite(_) => None,
        }
    }

    pub fn coords(&self) -> Option<&[u32]> {
        match self {
            Finite { coords, .. } => Some(coords),
            Infinite(_) => None,
        }
    }

    /// The group element a finite point names in `g`, or `None` for
    /// infinite points. A copy index is read as the last coordinate when
    /// the group has one more factor than the label has coordinates.
    pub fn element(&self, g: &AbelianGroup) -> Result<Option<Vec<u32>>> {
        match self {
            Infinite(_) => Ok(None),
            Finite { coords, copy } => {
                if coords.len() == g.arity() && g.contains(coords) {
                    Ok(Some(coords.clone()))
                } else if let (Some(c), true) = (copy, coords.len() + 1 == g.arity()) {
                    let mut e = coords.clone();
                    e.push(*c);
                    if g.contains(&e) {
                        Ok(Some(e))
                    } else {
                        Err(Error::GroupMismatch(self.to_string()))
                    }
                } else {
                    Err(Error::GroupMismatch(self.to_string()))
                }
            }
        }
    }

    pub fn translate(&self, g: &AbelianGroup, gamma: &[u32]) -> Result<PointLabel> {
        if gamma.len() != g.arity() {
            return Err(Error::GroupMismatch(format!("{gamma:?}")));
        }
        match self {
            Infinite(_) => Ok(self.clone()),
            Finite { coords, copy } => {
                if coords.len() == g.arity() {
                    if !g.contains(coords) {
                        return Err(Error::GroupMismatch(self.to_string()));
                    }
                    Ok(Finite { coords: g.add(coords, gamma), copy: *copy })
                } else {
                    let e = self.element(g)?.expect("finite");
                    let mut s = g.add(&e, gamma);
                    let c = s.pop();
                    Ok(Finite { coords: s, copy: c })
                }
            }
        }
    }
}

impl Ord for PointLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite { coords: a, copy: ca }, Finite { coords: b, copy: cb }) => {
                a.cmp(b).then(ca.cmp(cb))
            }
            (Finite { .. }, Infinite(_)) => Ordering::Less,
            (Infinite(_), Finite { .. }) => Ordering::Greater,
            (Infinite(a), Infinite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PointLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infinite(i) => write!(f, "inf{i}"),
            Finite { coords, copy } => {
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{c}")?;
                }
                if let Some(c) = copy {
                    write!(f, "_{c}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for PointLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLabel(s.to_string());
        let num = |t: &str| -> Result<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        if let Some(rest) = s.strip_prefix("inf") {
            return Ok(Infinite(num(rest)?));
        }
        let (body, copy) = match s.split_once('_') {
            Some((b, c)) => (b, Some(num(c)?)),
            None => (s, None),
        };
        let coords = body.split('.').map(num).collect::<Result<Vec<_>>>()?;
        Ok(Finite { coords, copy })
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PointLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse a label, panicking on malformed input. For literals in code and tests.
pub fn pl(s: &str) -> PointLabel {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_round_trip() {
        for s in ["3_1", "2.7", "inf4", "0", "12.0.5_2"] {
            assert_eq!(pl(s).to_string(), s);
        }
        for s in ["", "inf", "a", "3_", "_1", "1..2", "inf-1", "3_1_2"] {
            assert!(s.parse::<PointLabel>().is_err(), "{s}");
        }
    }

    #[test]
    fn order_finite_before_infinite() {
        let mut v = vec![pl("inf0"), pl("2_1"), pl("2_0"), pl("10"), pl("2")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["2", "2_0", "2_1", "10", "inf0"]);
    }

    #[test]
    fn translate_copy_as_coordinate() {
        let g = AbelianGroup::new(vec![3, 8]);
        assert_eq!(pl("2_7").translate(&g, &[1, 0]).unwrap(), pl("0_7"));
        assert_eq!(pl("2_7").translate(&g, &[0, 2]).unwrap(), pl("2_1"));
        assert_eq!(pl("inf7").translate(&g, &[1, 0]).unwrap(), pl("inf7"));
        let z = AbelianGroup::cyclic(5);
        assert_eq!(pl("4_2").translate(&z, &[3]).unwrap(), pl("2_2"));
        assert!(pl("4").translate(&g, &[1, 0]).is_err());
    }
}
