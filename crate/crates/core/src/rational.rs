//! Exact rationals over `i64`.
//!
//! Values are always kept in lowest terms with a positive denominator.
//! Intermediate products are formed in `i128` and narrowed back; a result
//! that does not fit in `i64` is an error from the `checked_*` methods and a
//! panic from the operator impls. Nothing ever wraps.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{DofError, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        Self::from_i128(num as i128, den as i128, "new")
    }

    pub const fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    fn from_i128(num: i128, den: i128, op: &'static str) -> Result<Self> {
        if den == 0 {
            return Err(DofError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        let num = i64::try_from(n).map_err(|_| DofError::Overflow(op))?;
        let den = i64::try_from(d).map_err(|_| DofError::Overflow(op))?;
        Ok(Rational { num, den })
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let n = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        let d = self.den as i128 * rhs.den as i128;
        Self::from_i128(n, d, "add")
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        let n = self.num as i128 * rhs.den as i128 - rhs.num as i128 * self.den as i128;
        let d = self.den as i128 * rhs.den as i128;
        Self::from_i128(n, d, "sub")
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let n = self.num as i128 * rhs.num as i128;
        let d = self.den as i128 * rhs.den as i128;
        Self::from_i128(n, d, "mul")
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.num == 0 {
            return Err(DofError::ZeroDenominator);
        }
        let n = self.num as i128 * rhs.den as i128;
        let d = self.den as i128 * rhs.num as i128;
        Self::from_i128(n, d, "div")
    }

    pub fn recip(self) -> Result<Self> {
        Rational::ONE.checked_div(self)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Canonical `num/den` rendering, used wherever the value must survive a
    /// round trip (JSON, CSV).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

fn expect<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        expect(self.checked_add(rhs))
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        expect(self.checked_sub(rhs))
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        expect(self.checked_mul(rhs))
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Self) -> Self {
        expect(self.checked_div(rhs))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Self {
        Rational {
            num: self.num.checked_neg().expect("rational overflow in neg"),
            den: self.den,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::integer(n as i64)
    }
}

impl From<u32> for Rational {
    fn from(n: u32) -> Self {
        Rational::integer(n as i64)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `n`, `n/d`, and optional surrounding whitespace.
impl FromStr for Rational {
    type Err = DofError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || DofError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => t.parse::<i64>().map(Rational::integer).map_err(|_| bad()),
        }
    }
}

/// Shorthand used throughout the tests and region formulas.
pub fn q(num: i64, den: i64) -> Rational {
    expect(Rational::new(num, den))
}
