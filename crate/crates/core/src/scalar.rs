//! Scalar abstraction shared by the exact and floating-point code paths.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use num::Integer;

/// A field element usable by the polyhedral, Coxeter and majorization code.
///
/// Exact types compare against zero exactly; floating types use an absolute
/// threshold given by [`Scalar::zero_tolerance`].
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Absolute threshold below which a value is treated as zero.
    fn zero_tolerance() -> Self;

    fn is_exact() -> bool;

    fn approx_zero(&self) -> bool {
        self.abs() <= Self::zero_tolerance()
    }

    fn is_pos(&self) -> bool {
        *self > Self::zero_tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::zero_tolerance()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).approx_zero()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer fits every scalar type")
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Rescales a nonzero direction to a canonical representative of its ray.
    fn normalize_direction(v: &mut [Self]);
}

impl Scalar for BigRational {
    fn zero_tolerance() -> Self {
        BigRational::zero()
    }

    fn is_exact() -> bool {
        true
    }

    fn approx_zero(&self) -> bool {
        self.is_zero()
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    /// Primitive integer vector: denominators cleared, gcd of numerators divided out.
    fn normalize_direction(v: &mut [Self]) {
        if v.iter().all(Zero::is_zero) {
            return;
        }
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (slot, int) in v.iter_mut().zip(ints) {
            *slot = BigRational::from_integer(int / &gcd);
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn zero_tolerance() -> Self {
                $tol
            }

            fn is_exact() -> bool {
                false
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            /// Max-abs normalization.
            fn normalize_direction(v: &mut [Self]) {
                let m = v.iter().fold(0.0, |m: $t, x| m.max(x.abs()));
                if m > 0.0 {
                    for x in v.iter_mut() {
                        *x /= m;
                    }
                }
            }
        }
    };
}

float_scalar!(f64, 1e-12);
float_scalar!(f32, 1e-5);

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a rational number")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"`, an integer, or a decimal literal (`"-1.25"`, `"3e-2"`) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&all_digits).map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num::pow(ten, scale as usize);
    } else {
        value /= num::pow(ten, (-scale) as usize);
    }
    Ok(if negative { -value } else { value })
}

/// Formats a rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational from a finite `f64` (every finite double is a dyadic rational).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Nearest rational with denominator `denominator`.
pub fn rationalize(x: f64, denominator: i64) -> BigRational {
    let n = (x * denominator as f64).round() as i64;
    BigRational::new(BigInt::from(n), BigInt::from(denominator))
}

/// Serde helpers for `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = RawRational::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts either a string or a JSON number.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawRational {
        Str(String),
        Int(i64),
        Float(f64),
    }

    impl RawRational {
        pub(crate) fn into_rational(self) -> Result<BigRational, ParseRationalError> {
            match self {
                RawRational::Str(s) => parse_rational(&s),
                RawRational::Int(i) => Ok(BigRational::from_integer(BigInt::from(i))),
                RawRational::Float(f) => parse_rational(&f.to_string()),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let raw = Vec::<RawRational>::deserialize(d)?;
            raw.into_iter()
                .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod vecvec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                let row: Vec<String> = row.iter().map(format_rational).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<BigRational>>, D::Error> {
            let raw = Vec::<Vec<RawRational>>::deserialize(d)?;
            raw.into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_round_trip() {
        for r in [q(3, 4), q(-5, 1), q(0, 1), q(-7, 3)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
    }

    #[test]
    fn rational_directions_become_primitive() {
        let mut v = vec![q(1, 2), q(-3, 4), q(0, 1)];
        BigRational::normalize_direction(&mut v);
        assert_eq!(v, vec![q(2, 1), q(-3, 1), q(0, 1)]);
    }
}
