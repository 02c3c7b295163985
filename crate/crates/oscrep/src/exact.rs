//! Exact scalar arithmetic.
//!
//! * [`Int`] and [`Rat`] are arbitrary precision; nothing in this crate
//!   touches floating point.
//! * [`HalfInt`] stores twice its value, so ordering, integrality tests, and
//!   arithmetic are exact for weights like `3/2`.
//! * [`binom`] is the binomial coefficient extended by zero: it vanishes
//!   whenever the top argument is negative or smaller than the bottom.
//!
//! # Examples
//!
//! ```
//! use oscrep::exact::{binom, rat, HalfInt, Int};
//! use std::str::FromStr;
//!
//! let h = HalfInt::from_str("3/2").unwrap();
//! assert_eq!(h.twice(), &Int::from(3));
//! assert_eq!(h.to_rat(), rat(3, 2));
//! assert!(!h.is_integer());
//!
//! // Out-of-range binomials vanish instead of erroring.
//! assert_eq!(binom(&Int::from(2), 5), Int::from(0));
//! assert_eq!(binom(&Int::from(5), 2), Int::from(10));
//! assert_eq!(binom(&Int::from(-1), 3), Int::from(0));
//! ```

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

/// Small-integer constructor.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Small-rational constructor; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Binomial coefficient with the zero extension: `binom(p, q) = 0` whenever
/// `p < q`, including negative `p`. `binom(p, 0) = 1` for every `p >= 0`.
pub fn binom(p: &Int, q: u32) -> Int {
    let qi = Int::from(q);
    if p < &qi {
        return Int::zero();
    }
    // Here 0 <= q <= p. Multiply/divide incrementally; each prefix product
    // of k consecutive integers is divisible by k!.
    let mut acc = Int::one();
    let mut top = p.clone();
    for k in 1..=q {
        acc = acc * &top / Int::from(k);
        top -= 1;
    }
    acc
}

/// A number of the form `k/2` with `k` an exact integer.
///
/// The representation stores `k`, i.e. twice the value, which keeps equality,
/// ordering, and hashing exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: Int,
}

impl HalfInt {
    /// Builds the half-integer `twice / 2`.
    pub fn from_twice(twice: Int) -> Self {
        HalfInt { twice }
    }

    /// Builds an integral half-integer.
    pub fn from_int(v: impl Into<Int>) -> Self {
        HalfInt {
            twice: v.into() * 2,
        }
    }

    pub fn zero() -> Self {
        HalfInt { twice: Int::zero() }
    }

    /// Twice the value; always exact.
    pub fn twice(&self) -> &Int {
        &self.twice
    }

    pub fn is_zero(&self) -> bool {
        self.twice.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        (&self.twice % 2i32).is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.twice.is_negative()
    }

    /// The integer value, or an error when the value is a strict half.
    pub fn to_int(&self) -> Result<Int> {
        if self.is_integer() {
            Ok(&self.twice / 2i32)
        } else {
            Err(Error::NotAnInteger(self.to_string()))
        }
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.twice.clone(), Int::from(2))
    }

    pub fn abs(&self) -> HalfInt {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// Adds an integer.
    pub fn plus_int(&self, k: i64) -> HalfInt {
        HalfInt {
            twice: &self.twice + Int::from(2 * k),
        }
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for &HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: &HalfInt) -> HalfInt {
        HalfInt {
            twice: &self.twice + &rhs.twice,
        }
    }
}

impl Sub for &HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: &HalfInt) -> HalfInt {
        HalfInt {
            twice: &self.twice - &rhs.twice,
        }
    }
}

impl Neg for &HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt {
            twice: -&self.twice,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", &self.twice / 2i32)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `k` or `a/b` with `b` in `{1, 2}`, e.g. `3`, `-2`, `3/2`,
    /// `-1/2`, `4/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidWeight(format!("cannot parse `{s}` as an exact half-integer"));
        match s.split_once('/') {
            None => {
                let v = Int::from_str(s.trim()).map_err(|_| bad())?;
                Ok(HalfInt::from_int(v))
            }
            Some((a, b)) => {
                let num = Int::from_str(a.trim()).map_err(|_| bad())?;
                let den = Int::from_str(b.trim()).map_err(|_| bad())?;
                if den == Int::from(1) {
                    Ok(HalfInt::from_int(num))
                } else if den == Int::from(2) {
                    Ok(HalfInt::from_twice(num))
                } else {
                    Err(bad())
                }
            }
        }
    }
}
