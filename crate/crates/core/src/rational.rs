//! Exact rational scalars, the extended exponent type `ℚ ∪ {−∞}`, and
//! their lossless string encodings (`"p/q"`, `"-inf"`).

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;
pub type QVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

/// Largest power of `p` dividing `r`, as a signed exponent. Zero has none.
pub fn padic_valuation(r: &Rat, p: u32) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut k = 0i64;
        loop {
            let (q, rem) = n.div_rem(&p);
            if !rem.is_zero() {
                return k;
            }
            n = q;
            k += 1;
        }
    };
    Some(count(r.numer().abs()) - count(r.denom().abs()))
}

/// `log_p |r|_p` in exponent form: `−v_p(r)`, or `−∞` for zero.
pub fn padic_log_abs(r: &Rat, p: u32) -> ExtRat {
    match padic_valuation(r, p) {
        None => ExtRat::NegInf,
        Some(v) => ExtRat::Finite(rat(-v)),
    }
}

/// An element of `ℚ ∪ {−∞}`: the base-`q` logarithm of a non-negative real
/// in `q^ℚ ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::NegInf => None,
        }
    }

    pub fn shift(&self, by: &Rat) -> Self {
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r + by),
            ExtRat::NegInf => ExtRat::NegInf,
        }
    }

    pub fn scale(&self, k: u32) -> Self {
        match self {
            _ if k == 0 => ExtRat::zero(),
            ExtRat::Finite(r) => ExtRat::Finite(r * rat(k as i64)),
            ExtRat::NegInf => ExtRat::NegInf,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(ExtRat::NegInf),
            other => parse_rat(other).map(ExtRat::Finite),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRat::Finite(r) => to_f64(r),
            ExtRat::NegInf => f64::NEG_INFINITY,
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::NegInf, ExtRat::NegInf) => Ordering::Equal,
            (ExtRat::NegInf, _) => Ordering::Less,
            (_, ExtRat::NegInf) => Ordering::Greater,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Finite(a), ExtRat::Finite(b)) => ExtRat::Finite(a + b),
            _ => ExtRat::NegInf,
        }
    }
}

/// Serde adapters encoding rationals as `"p/q"` strings and `−∞` as `"-inf"`.
pub mod serde_q {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let raw = RawScalar::deserialize(d)?;
        raw.into_rat().map_err(D::Error::custom)
    }

    /// Accepts `"3/4"`, `"-2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawScalar {
        Int(i64),
        Str(String),
    }

    impl RawScalar {
        pub(crate) fn into_rat(self) -> Result<Rat> {
            match self {
                RawScalar::Int(i) => Ok(rat(i)),
                RawScalar::Str(s) => parse_rat(&s),
            }
        }

        pub(crate) fn into_ext(self) -> Result<ExtRat> {
            match self {
                RawScalar::Int(i) => Ok(ExtRat::Finite(rat(i))),
                RawScalar::Str(s) => ExtRat::parse(&s),
            }
        }
    }
}

pub mod serde_qvec {
    use super::serde_q::RawScalar;
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QVec, D::Error> {
        let raw = Vec::<RawScalar>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rat().map_err(D::Error::custom))
            .collect()
    }
}

pub mod serde_qmat {
    use super::serde_q::RawScalar;
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[QVec], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let row: Vec<String> = row.iter().map(format_rat).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<QVec>, D::Error> {
        let raw = Vec::<Vec<RawScalar>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rat().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

pub mod serde_ext {
    use super::serde_q::RawScalar;
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &ExtRat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExtRat, D::Error> {
        RawScalar::deserialize(d)?.into_ext().map_err(D::Error::custom)
    }
}

pub mod serde_extvec {
    use super::serde_q::RawScalar;
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[ExtRat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<ExtRat>, D::Error> {
        let raw = Vec::<RawScalar>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_ext().map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), rat(-4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&frac(-2, 4)), "-1/2");
        assert_eq!(ExtRat::parse("-inf").unwrap(), ExtRat::NegInf);
    }

    #[test]
    fn ext_order() {
        let a = ExtRat::Finite(rat(-1000));
        assert!(ExtRat::NegInf < a);
        assert!(a < ExtRat::zero());
        assert_eq!(&a + &ExtRat::NegInf, ExtRat::NegInf);
    }

    #[test]
    fn padic() {
        assert_eq!(padic_valuation(&frac(12, 5), 2), Some(2));
        assert_eq!(padic_valuation(&frac(3, 8), 2), Some(-3));
        assert_eq!(padic_log_abs(&rat(0), 2), ExtRat::NegInf);
        assert_eq!(padic_log_abs(&rat(4), 2), ExtRat::Finite(rat(-2)));
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil(&frac(1, 2)), BigInt::from(1));
        assert_eq!(ceil(&rat(2)), BigInt::from(2));
        assert_eq!(ceil(&frac(-1, 2)), BigInt::from(0));
    }
}
