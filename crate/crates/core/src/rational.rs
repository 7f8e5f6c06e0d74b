//! Arbitrary-precision rationals with an inline `i64` fast path.
//!
//! Almost every coefficient the engine touches is a small integer or a
//! fraction like `1/16`, so values stay in the `Small` variant and only
//! spill into `BigRational` when a checked operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational number. `Small(n, d)` always has `d > 0` and `gcd(n, d) = 1`;
/// `Big` is only used when the reduced value does not fit in `i64`.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rat {
    pub const ZERO: Rat = Rat::Small(0, 1);
    pub const ONE: Rat = Rat::Small(1, 1);

    pub fn int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    /// `n / d`, reduced. Panics on `d == 0`.
    pub fn frac(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rat::Small(n, d),
            _ => Rat::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Rat::Small(n, d);
        }
        Rat::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(b) => b.is_integer(),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) => Rat::Small(s, 1),
                None => Self::from_i128(*a as i128 + *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Self::from_i128(a * d + c * b, b * d)
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, 1), Rat::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) => Rat::Small(p, 1),
                None => Self::from_i128(*a as i128 * *c as i128, 1),
            },
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    pub fn mul_int(&self, k: i64) -> Rat {
        self.mul(&Rat::int(k))
    }

    pub fn neg(&self) -> Rat {
        match self {
            Rat::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat::Small(m, *d),
                None => Self::from_i128(-(*n as i128), *d as i128),
            },
            Rat::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    pub fn inv(&self) -> Result<Rat, Error> {
        match self {
            Rat::Small(0, _) => Err(Error::DivisionByZero),
            Rat::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Rat::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn div(&self, o: &Rat) -> Result<Rat, Error> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rat::Small(n, _) => n.signum() as i32,
            Rat::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Rat {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(x), Rat::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl std::hash::Hash for Rat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Rat::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Rat::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(n, 1) => write!(f, "{n}"),
            Rat::Small(n, d) => write!(f, "{n}/{d}"),
            Rat::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rat::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat::from_big(BigRational::new(n, d)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(Rat::frac(2, -4), Rat::frac(-1, 2));
        assert_eq!(Rat::frac(0, -7), Rat::ZERO);
        assert_eq!(Rat::frac(6, 3).to_string(), "2");
    }

    #[test]
    fn overflow_spills_to_big_and_back() {
        let big = Rat::int(i64::MAX).mul(&Rat::int(4));
        assert!(matches!(big, Rat::Big(_)));
        let back = big.mul(&Rat::frac(1, 4));
        assert_eq!(back, Rat::int(i64::MAX));
        assert!(matches!(back, Rat::Small(..)));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3/7", "123456789012345678901234567891/2"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn ordering_matches_values() {
        assert!(Rat::frac(1, 3) < Rat::frac(1, 2));
        assert!(Rat::frac(-1, 2) < Rat::ZERO);
    }
}
