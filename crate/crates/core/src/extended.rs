//! Extended reals `ℝ ∪ {+∞}` with an explicit infinity flag.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value in `ℝ ∪ {+∞}`.
///
/// `+∞` is a variant, never `f64::INFINITY`, so indicator arithmetic stays exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Extended {
    Finite(f64),
    PosInf,
}

impl Extended {
    pub const ZERO: Extended = Extended::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::PosInf)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::PosInf => None,
        }
    }

    /// Lossy conversion for plotting and norms: `+∞` maps to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Extended::Finite(v) => v,
            Extended::PosInf => f64::INFINITY,
        }
    }

    /// Converts a float, mapping `+inf` to [`Extended::PosInf`].
    /// NaN and `-inf` are rejected.
    pub fn from_f64(v: f64) -> Option<Extended> {
        if v.is_finite() {
            Some(Extended::Finite(v))
        } else if v == f64::INFINITY {
            Some(Extended::PosInf)
        } else {
            None
        }
    }

    pub fn max(self, other: Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.max(b)),
            _ => Extended::PosInf,
        }
    }

    pub fn min(self, other: Extended) -> Extended {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.min(b)),
            (Extended::Finite(a), Extended::PosInf) | (Extended::PosInf, Extended::Finite(a)) => {
                Extended::Finite(a)
            }
            _ => Extended::PosInf,
        }
    }

    /// `self ≤ other + tol` in the extended order (`+∞ ≤ +∞` holds).
    pub fn le_tol(self, other: Extended, tol: f64) -> bool {
        match (self, other) {
            (_, Extended::PosInf) => true,
            (Extended::PosInf, Extended::Finite(_)) => false,
            (Extended::Finite(a), Extended::Finite(b)) => a <= b + tol,
        }
    }
}

impl From<f64> for Extended {
    fn from(v: f64) -> Self {
        debug_assert!(v.is_finite(), "use Extended::PosInf for infinite values");
        Extended::Finite(v)
    }
}

impl Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::PosInf,
        }
    }
}

impl Add<f64> for Extended {
    type Output = Extended;
    fn add(self, rhs: f64) -> Extended {
        match self {
            Extended::Finite(a) => Extended::Finite(a + rhs),
            Extended::PosInf => Extended::PosInf,
        }
    }
}

impl Sub<f64> for Extended {
    type Output = Extended;
    fn sub(self, rhs: f64) -> Extended {
        match self {
            Extended::Finite(a) => Extended::Finite(a - rhs),
            Extended::PosInf => Extended::PosInf,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            Extended::PosInf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) if v.is_finite() => Ok(Extended::Finite(v)),
            Raw::Str(s) if s == "inf" || s == "+inf" => Ok(Extended::PosInf),
            Raw::Num(v) => Err(serde::de::Error::custom(format!("non-finite number {v}"))),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"inf\", found {s:?}"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_absorbs_sums() {
        let a = Extended::Finite(1.0);
        assert_eq!(a + Extended::PosInf, Extended::PosInf);
        assert_eq!(a + 2.0, Extended::Finite(3.0));
        assert_eq!(Extended::PosInf - 5.0, Extended::PosInf);
    }

    #[test]
    fn ordering_with_tolerance() {
        assert!(Extended::Finite(1.0).le_tol(Extended::PosInf, 0.0));
        assert!(!Extended::PosInf.le_tol(Extended::Finite(1e300), 0.0));
        assert!(Extended::Finite(1.0 + 1e-12).le_tol(Extended::Finite(1.0), 1e-9));
    }

    #[test]
    fn json_uses_inf_token() {
        let v = vec![Extended::Finite(0.5), Extended::PosInf];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[0.5,"inf"]"#);
        let back: Vec<Extended> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
