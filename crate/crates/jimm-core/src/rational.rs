//! Arbitrary-precision rationals on the projective line.
//!
//! `BigRational` is always stored with `gcd(num, den) = 1` and `den >= 0`.
//! The single point at infinity is `1/0`; it compares above every finite
//! value, which is the ordering the Farey-interval machinery wants for the
//! positive sector `[0, ∞]`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigRational {
    num: BigInt,
    den: BigInt,
}

impl BigRational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        if den.is_zero() {
            assert!(!num.is_zero(), "0/0 is not a projective point");
            return Self::infinity();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        BigRational { num, den }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        BigRational { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        BigRational { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Projective reciprocal; total (1/0 = ∞, 1/∞ = 0).
    pub fn recip(&self) -> Self {
        if self.num.is_zero() {
            return Self::infinity();
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Floor of a finite rational (also exact for negatives).
    pub fn floor(&self) -> BigInt {
        assert!(!self.is_infinite(), "floor of infinity");
        self.num.div_floor(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            return f64::INFINITY;
        }
        // rescale so both parts fit in f64 when the integers are huge
        let bits = self.num.bits().max(self.den.bits());
        if bits > 500 {
            let shift = bits - 500;
            let n = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        } else {
            self.num.to_f64().unwrap_or(f64::NAN) / self.den.to_f64().unwrap_or(f64::NAN)
        }
    }
}

impl Add for &BigRational {
    type Output = BigRational;
    fn add(self, rhs: &BigRational) -> BigRational {
        if self.is_infinite() || rhs.is_infinite() {
            assert!(
                !(self.is_infinite() && rhs.is_infinite()),
                "∞ + ∞ is fine projectively, but flag ∞ - ∞ misuse early"
            );
            return BigRational::infinity();
        }
        BigRational::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &BigRational {
    type Output = BigRational;
    fn sub(self, rhs: &BigRational) -> BigRational {
        self + &(-rhs)
    }
}

impl Mul for &BigRational {
    type Output = BigRational;
    fn mul(self, rhs: &BigRational) -> BigRational {
        if self.is_infinite() || rhs.is_infinite() {
            assert!(!self.is_zero() && !rhs.is_zero(), "0 * ∞ is indeterminate");
            return BigRational::infinity();
        }
        BigRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &BigRational {
    type Output = BigRational;
    fn div(self, rhs: &BigRational) -> BigRational {
        self * &rhs.recip()
    }
}

impl Neg for &BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        if self.is_infinite() {
            return BigRational::infinity();
        }
        BigRational { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for BigRational {
            type Output = BigRational;
            fn $m(self, rhs: BigRational) -> BigRational { $trait::$m(&self, &rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for BigRational {
    type Output = BigRational;
    fn neg(self) -> BigRational {
        -&self
    }
}

impl Ord for BigRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            // den > 0 on both sides, cross-multiplication is safe
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for BigRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for BigRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for BigRational {
    type Err = Error;

    /// Grammar: `num/den`, a bare integer, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Self::infinity());
        }
        let parts: Vec<&str> = s.split('/').collect();
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format_parse(s)))
        };
        match parts.as_slice() {
            [n] => Ok(Self::from_int(parse_int(n)?)),
            [n, d] => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".to_string()));
                }
                Ok(Self::new(parse_int(n)?, den))
            }
            _ => Err(Error::Parse(format_parse(s))),
        }
    }
}

fn format_parse(s: &str) -> String {
    let mut m = String::from("bad rational literal: ");
    m.push_str(s);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-3, -6), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert!(q(3, -6).is_negative());
    }

    #[test]
    fn infinity_is_top() {
        let inf = BigRational::infinity();
        assert!(inf > q(1 << 60, 1));
        assert!(inf > q(-5, 3));
        assert_eq!(inf, BigRational::new((-7).into(), 0.into()));
        assert_eq!(inf.recip(), BigRational::zero());
        assert_eq!(BigRational::zero().recip(), inf);
    }

    #[test]
    fn floor_negative() {
        assert_eq!(q(-3, 8).floor(), BigInt::from(-1));
        assert_eq!(q(7, 2).floor(), BigInt::from(3));
        assert_eq!(q(-8, 2).floor(), BigInt::from(-4));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["22/7", "-3/8", "5", "inf", "355/113"] {
            let v: BigRational = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<BigRational>().unwrap(), v);
        }
        assert!("1/0".parse::<BigRational>().is_err());
        assert_eq!("4/-8".parse::<BigRational>().unwrap(), q(-1, 2));
    }
}
