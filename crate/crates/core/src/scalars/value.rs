use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value of a discrete valuation: an integer or the top element `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl Val {
    pub fn is_finite(self) -> bool {
        matches!(self, Val::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinity => None,
        }
    }
}

impl From<i64> for Val {
    fn from(v: i64) -> Self {
        Val::Finite(v)
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite(_), Val::Infinity) => Ordering::Less,
            (Val::Infinity, Val::Finite(_)) => Ordering::Greater,
            (Val::Infinity, Val::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl Add<i64> for Val {
    type Output = Val;
    fn add(self, rhs: i64) -> Val {
        self + Val::Finite(rhs)
    }
}

impl Sub<i64> for Val {
    type Output = Val;
    fn sub(self, rhs: i64) -> Val {
        self + Val::Finite(-rhs)
    }
}

/// Negation is only meaningful for finite values; `-∞` is not representable.
impl Neg for Val {
    type Output = Option<Val>;
    fn neg(self) -> Option<Val> {
        self.finite().map(|v| Val::Finite(-v))
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Val::Finite(v) => s.serialize_i64(*v),
            Val::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Val {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Val::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Val::Infinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_and_orders() {
        assert_eq!(Val::Infinity + Val::Finite(3), Val::Infinity);
        assert_eq!(Val::Finite(2) + Val::Finite(3), Val::Finite(5));
        assert_eq!(Val::Infinity.min(Val::Finite(-7)), Val::Finite(-7));
        assert!(Val::Finite(i64::MAX) < Val::Infinity);
        assert_eq!(serde_json::to_string(&Val::Infinity).unwrap(), "\"inf\"");
        let v: Val = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, Val::Infinity);
    }
}
