//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Always `p/q`, also for integers.
pub fn fmt_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p`, `-p`, `p/q`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn pow2(e: i64) -> Rat {
    let p = Rat::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub fn powi(r: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= r;
    }
    out
}

/// Rising factorial (a)_m.
pub fn poch(a: &Rat, m: u32) -> Rat {
    let mut out = Rat::one();
    let mut x = a.clone();
    for _ in 0..m {
        out *= &x;
        x += Rat::one();
    }
    out
}

pub fn factorial(n: u32) -> Rat {
    poch(&Rat::one(), n)
}

pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Returns the value as i64 if it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer().clone()).ok()
}

pub fn is_nonneg_int(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3").unwrap(), int(-3));
        assert_eq!(fmt_rat(&int(3)), "3/1");
        assert_eq!(fmt_rat(&rat(-2, 6)), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn pochhammer() {
        assert_eq!(poch(&int(3), 2), int(12));
        assert_eq!(poch(&half(), 3), rat(15, 8));
        assert_eq!(poch(&int(-2), 0), int(1));
        assert_eq!(factorial(5), int(120));
        assert_eq!(pow2(-3), rat(1, 8));
    }
}
