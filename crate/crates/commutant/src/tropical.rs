//! The max-plus (tropical) semiring over exact rationals.
//!
//! Elements are `-inf` or a reduced `i64` rational; addition is `max`,
//! multiplication is rational `+` with `-inf` absorbing. No floating point
//! anywhere, so every comparison downstream is exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TropicalScalar {
    NegInf,
    Finite(Rational64),
}

impl TropicalScalar {
    pub fn finite(numer: i64, denom: i64) -> TropicalScalar {
        TropicalScalar::Finite(Rational64::new(numer, denom))
    }

    pub fn integer(v: i64) -> TropicalScalar {
        TropicalScalar::Finite(Rational64::from_integer(v))
    }

    /// Additive identity (`-inf`).
    pub fn zero() -> TropicalScalar {
        TropicalScalar::NegInf
    }

    /// Multiplicative identity (rational 0).
    pub fn one() -> TropicalScalar {
        TropicalScalar::integer(0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, TropicalScalar::Finite(_))
    }

    /// Tropical addition: maximum, with `-inf` as the least element.
    pub fn add(self, other: TropicalScalar) -> TropicalScalar {
        self.max(other)
    }

    /// Tropical multiplication: rational addition, `-inf` absorbing.
    pub fn mul(self, other: TropicalScalar) -> TropicalScalar {
        match (self, other) {
            (TropicalScalar::Finite(a), TropicalScalar::Finite(b)) => {
                TropicalScalar::Finite(a + b)
            }
            _ => TropicalScalar::NegInf,
        }
    }

    /// Rational difference of two finite values; `None` if either is `-inf`.
    pub fn finite_sub(self, other: TropicalScalar) -> Option<TropicalScalar> {
        match (self, other) {
            (TropicalScalar::Finite(a), TropicalScalar::Finite(b)) => {
                Some(TropicalScalar::Finite(a - b))
            }
            _ => None,
        }
    }
}

impl Ord for TropicalScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropicalScalar::NegInf, TropicalScalar::NegInf) => Ordering::Equal,
            (TropicalScalar::NegInf, _) => Ordering::Less,
            (_, TropicalScalar::NegInf) => Ordering::Greater,
            (TropicalScalar::Finite(a), TropicalScalar::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for TropicalScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TropicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalScalar::NegInf => write!(f, "-inf"),
            TropicalScalar::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for TropicalScalar {
    type Err = Error;

    /// Accepts `-inf`, integers, and `p/q` rationals.
    fn from_str(s: &str) -> Result<TropicalScalar> {
        if s == "-inf" {
            return Ok(TropicalScalar::NegInf);
        }
        let r = Rational64::from_str(s)
            .map_err(|e| Error::Domain(format!("invalid tropical scalar {s:?}: {e}")))?;
        Ok(TropicalScalar::Finite(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities() {
        let x = TropicalScalar::finite(3, 2);
        assert_eq!(TropicalScalar::zero().add(x), x);
        assert_eq!(TropicalScalar::one().mul(x), x);
        assert_eq!(TropicalScalar::zero().mul(x), TropicalScalar::zero());
    }

    #[test]
    fn max_plus_arithmetic() {
        let a = TropicalScalar::finite(1, 2);
        let b = TropicalScalar::integer(-1);
        assert_eq!(a.add(b), a);
        assert_eq!(a.mul(b), TropicalScalar::finite(-1, 2));
    }

    #[test]
    fn ordering_puts_neginf_first() {
        assert!(TropicalScalar::NegInf < TropicalScalar::integer(-1_000_000));
        assert!(TropicalScalar::finite(1, 3) < TropicalScalar::finite(1, 2));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["-inf", "0", "7", "-3", "3/4", "-9/7"] {
            let v: TropicalScalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        // Rationals reduce on construction.
        let v: TropicalScalar = "6/8".parse().unwrap();
        assert_eq!(v.to_string(), "3/4");
        assert!("1/0".parse::<TropicalScalar>().is_err());
        assert!("inf".parse::<TropicalScalar>().is_err());
    }
}
