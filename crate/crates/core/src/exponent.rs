use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Result, WickError};

/// A Lebesgue exponent in `[1, ∞]`, with `∞` carried symbolically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinite,
}

impl Exponent {
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(k) => k,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// `1/k`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(k) => 1.0 / k,
            Exponent::Infinite => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(k) => Some(k),
            Exponent::Infinite => None,
        }
    }

    /// `k' = k/(k−1)` for `k > 1` and `∞' = 1`; rejects `k <= 1`.
    pub fn conjugate(self) -> Result<Exponent> {
        match self {
            Exponent::Infinite => Ok(Exponent::Finite(1.0)),
            Exponent::Finite(k) if k > 1.0 && k.is_finite() => Ok(Exponent::Finite(k / (k - 1.0))),
            Exponent::Finite(k) => Err(WickError::InvalidExponent(format!(
                "conjugate requires k > 1, got {k}"
            ))),
        }
    }

    /// Like [`Exponent::conjugate`] but also maps `1 ↦ ∞`.
    pub fn conjugate_with_one(self) -> Result<Exponent> {
        match self {
            Exponent::Finite(k) if k == 1.0 => Ok(Exponent::Infinite),
            other => other.conjugate(),
        }
    }

    /// `k^{1/k}`, extended by its limits `1` at `k = 1` and `k = ∞`.
    pub fn self_power(self) -> f64 {
        match self {
            Exponent::Finite(k) => k.powf(1.0 / k),
            Exponent::Infinite => 1.0,
        }
    }
}

impl From<f64> for Exponent {
    fn from(k: f64) -> Self {
        if k.is_infinite() {
            Exponent::Infinite
        } else {
            Exponent::Finite(k)
        }
    }
}

/// `k' = k/(k−1)` with `∞ ↦ 1`; `k <= 1` is rejected.
pub fn conjugate_exponent(k: Exponent) -> Result<Exponent> {
    k.conjugate()
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(k) => serializer.serialize_f64(*k),
            Exponent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ExponentVisitor;

        impl Visitor<'_> for ExponentVisitor {
            type Value = Exponent;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Exponent, E> {
                Ok(Exponent::from(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Exponent, E> {
                Ok(Exponent::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Exponent, E> {
                Ok(Exponent::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Exponent, E> {
                match v.trim().to_ascii_lowercase().as_str() {
                    "inf" | "infinity" | "∞" => Ok(Exponent::Infinite),
                    other => other
                        .parse::<f64>()
                        .map(Exponent::from)
                        .map_err(|_| E::custom(format!("bad exponent {v:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ExponentVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_exponent(Exponent::Finite(2.0)).unwrap(), Exponent::Finite(2.0));
        let c = conjugate_exponent(Exponent::Finite(4.0)).unwrap().value();
        assert!((c - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(conjugate_exponent(Exponent::Infinite).unwrap(), Exponent::Finite(1.0));
        assert!(conjugate_exponent(Exponent::Finite(1.0)).is_err());
        assert!(conjugate_exponent(Exponent::Finite(0.5)).is_err());
        assert_eq!(Exponent::Finite(1.0).conjugate_with_one().unwrap(), Exponent::Infinite);
    }

    #[test]
    fn involution() {
        for k in [1.25, 1.5, 2.0, 3.0, 7.5] {
            let back = Exponent::Finite(k).conjugate().unwrap().conjugate().unwrap();
            assert!((back.value() - k).abs() < 1e-12);
        }
    }

    #[test]
    fn serde_infinity() {
        let parsed: Vec<Exponent> = serde_json::from_str(r#"[2, 1.5, "inf"]"#).unwrap();
        assert_eq!(parsed, vec![Exponent::Finite(2.0), Exponent::Finite(1.5), Exponent::Infinite]);
        assert_eq!(serde_json::to_string(&parsed).unwrap(), r#"[2.0,1.5,"inf"]"#);
    }
}
