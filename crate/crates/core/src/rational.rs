//! Exact rational scalars and their `"p/q"` string encoding.
//!
//! Every quantity in this crate that is not a plain integer is a
//! [`Rational`]. JSON I/O writes rationals as strings (`"3"`, `"-1/4"`)
//! and accepts either such strings or plain JSON integers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0` (test/construction helper).
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"`, `"p/q"`, or surrounding-whitespace variants.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_owned());
    match s.split_once('/') {
        None => {
            let p = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
        Some((num, den)) => {
            let p = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats as `"p"` when integral, `"p/q"` otherwise (always reduced).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Approximate `f64` rendering, for reports only.
pub fn to_f64(r: &Rational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Exact for small values; falls back to a quotient of approximations.
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(nf), Ok(df)) => nf / df,
        _ => {
            if r.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Serde adapter for a single [`Rational`] field.
pub mod serde_ratio {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(rat_int(n)),
            Repr::Str(s) => parse_rational(&s).map_err(D::Error::custom),
        }
    }
}

/// Serde adapter for `Vec<Rational>` fields.
pub mod serde_ratio_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| format_rational(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        let raw = Vec::<Repr>::deserialize(d)?;
        raw.into_iter()
            .map(|e| match e {
                Repr::Int(n) => Ok(rat_int(n)),
                Repr::Str(s) => parse_rational(&s).map_err(D::Error::custom),
            })
            .collect()
    }
}

/// Serde adapter for matrices (`Vec<Vec<Rational>>`).
pub mod serde_ratio_mat {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            m.iter()
                .map(|row| row.iter().map(|r| format_rational(r)).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        let raw = Vec::<Vec<Repr>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| match e {
                        Repr::Int(n) => Ok(rat_int(n)),
                        Repr::Str(s) => parse_rational(&s).map_err(D::Error::custom),
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-1/4", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-6/3").unwrap()), "-2");
        assert_eq!(format_rational(&parse_rational("4/-8").unwrap()), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/").is_err());
    }
}
