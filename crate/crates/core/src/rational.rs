//! Exact rational scalars.
//!
//! All coordinates in the crate are [`Rational`]s (arbitrary precision,
//! always reduced, denominator positive). Textual form is `p/q` in lowest
//! terms, or `p` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Structure(format!("malformed rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn half() -> Rational {
    ratio(1, 2)
}

pub fn min_positive<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values
        .into_iter()
        .filter(|v| v.is_positive())
        .min()
        .cloned()
}

/// Smallest rational `r >= sqrt(x)` with denominator `2^bits`.
pub fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative());
    let scale = BigInt::one() << bits;
    // floor(sqrt(x * 4^bits)) computed on integers
    let scaled = x * Rational::from_integer(&scale * &scale);
    let floor = scaled.floor().to_integer();
    let mut root = floor.sqrt();
    if &root * &root < floor || Rational::from_integer(&root * &root) < scaled {
        root += 1;
    }
    Rational::new(root, scale)
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub mod serde_str {
    //! Serialize rationals as their canonical string.
    use super::{format, parse, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse(s).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let raw: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(format).collect()).collect();
            serde::Serialize::serialize(&raw, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let raw = Vec::<Vec<String>>::deserialize(d)?;
            raw.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse(s).map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_are_canonical() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("-4/2").unwrap()), "-2");
        assert_eq!(format(&parse("3/-6").unwrap()), "-1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn sqrt_upper_bounds() {
        let x = ratio(2, 1);
        let r = sqrt_upper(&x, 20);
        assert!(&r * &r >= x);
        let step = Rational::new(BigInt::one(), BigInt::one() << 20);
        let lower = &r - &step;
        assert!(&lower * &lower < x);
        assert_eq!(sqrt_upper(&ratio(9, 4), 4), ratio(3, 2));
    }
}
