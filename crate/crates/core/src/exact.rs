//! Exact arithmetic for angular momentum quantum numbers.
//!
//! Quantum numbers L, S, J, M and their projections are half-integers.
//! [`HalfInt`] stores twice the logical value so that all arithmetic and
//! comparisons stay in integers; g-factors are exact [`Rational`]s.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Exact rational number (reduced, positive denominator).
pub type Rational = Ratio<i64>;

/// A half-integer stored as twice its value: `HalfInt { twice: 3 }` is 3/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    /// Construct from twice the value.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    /// Construct from an integer value.
    pub const fn from_int(v: i64) -> Self {
        HalfInt { twice: 2 * v }
    }

    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// Twice the value.
    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// Integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.twice, 2)
    }

    pub fn abs(self) -> HalfInt {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    pub fn min(self, other: HalfInt) -> HalfInt {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// The exact value of v(v+1), as in L(L+1).
    pub fn times_self_plus_one(self) -> Rational {
        // (t/2)(t/2 + 1) = t(t+2)/4
        Rational::new(self.twice * (self.twice + 2), 4)
    }

    /// Iterate `self, self-1, ..., lo` in unit steps (descending).
    pub fn ladder_down(self, lo: HalfInt) -> impl Iterator<Item = HalfInt> {
        let hi = self.twice;
        let lo = lo.twice;
        (0..)
            .map(move |k| HalfInt::from_twice(hi - 2 * k))
            .take_while(move |h| h.twice >= lo)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `"2"`, `"3/2"`, and `"1.5"`.
impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
            let d: i64 = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::from_twice(n)),
                _ => Err(format!("{s:?}: denominator must be 1 or 2")),
            };
        }
        if let Some(int_part) = s.strip_suffix(".5") {
            let sign = if int_part.starts_with('-') { -1 } else { 1 };
            let n: i64 = if int_part.is_empty() || int_part == "-" {
                0
            } else {
                int_part.parse().map_err(|_| format!("bad half-integer {s:?}"))?
            };
            return Ok(HalfInt::from_twice(2 * n + sign));
        }
        let n: i64 = s.parse().map_err(|_| format!("bad half-integer {s:?}"))?;
        Ok(HalfInt::from_int(n))
    }
}

/// Render a rational as `"4/3"` (or `"2"` when integral), for display and JSON.
pub fn rational_str(q: &Rational) -> String {
    if q.is_integer() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `serialize_with` hook serializing a rational as its `rational_str` form.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_str(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = HalfInt::from_twice(3); // 3/2
        let b = HalfInt::from_int(2);
        assert_eq!((a + b).twice(), 7);
        assert_eq!((b - a).twice(), 1);
        assert_eq!((-a).twice(), -3);
        assert_eq!(a.to_f64(), 1.5);
    }

    #[test]
    fn times_self_plus_one_matches_hand_values() {
        // 3/2 * 5/2 = 15/4
        assert_eq!(
            HalfInt::from_twice(3).times_self_plus_one(),
            Rational::new(15, 4)
        );
        assert_eq!(HalfInt::from_int(2).times_self_plus_one(), Rational::from(6));
        assert_eq!(HalfInt::ZERO.times_self_plus_one(), Rational::from(0));
    }

    #[test]
    fn ladder_down_counts() {
        let vals: Vec<_> = HalfInt::from_twice(3)
            .ladder_down(HalfInt::from_twice(-3))
            .collect();
        assert_eq!(vals.len(), 4);
        assert_eq!(vals[0].twice(), 3);
        assert_eq!(vals[3].twice(), -3);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "2", "-3", "1/2", "-3/2", "5/2"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("-0.5".parse::<HalfInt>().unwrap().twice(), -1);
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert!("1/3".parse::<HalfInt>().is_err());
    }
}
