//! Arbitrary-precision rational numbers.
//!
//! Every quantity in the recursion modules is a [`Rational`]: the recursions
//! are polynomial in their inputs, so staying exact costs nothing and removes
//! every tolerance question from the energy series. Floating point only
//! appears in the independent eigenvalue solver.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact signed fraction in canonical form: positive denominator and
/// gcd(|numerator|, denominator) = 1 after every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`, rejecting a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    /// `numer / denom` for small constants known to be well formed.
    ///
    /// Panics if `denom == 0`; reserved for literals in formulas.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Division with an explicit zero-divisor error instead of a panic.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Integer power; a negative exponent of zero is a division by zero.
    pub fn pow(&self, exp: i64) -> Result<Self, Error> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = i32::try_from(exp)
            .map_err(|_| Error::InvalidParameter(format!("exponent {exp} out of range")))?;
        Ok(Rational(self.0.pow(e)))
    }

    /// Exact nonnegative square root.
    ///
    /// Defined only when the canonical numerator and denominator are both
    /// perfect squares; anything else means the inputs left the
    /// exact-arithmetic regime and is reported as an error.
    pub fn sqrt_exact(&self) -> Result<Self, Error> {
        if self.is_negative() {
            return Err(Error::NotAPerfectSquare {
                value: self.to_string(),
            });
        }
        let numer_root = self.numer().sqrt();
        let denom_root = self.denom().sqrt();
        if &(&numer_root * &numer_root) == self.numer()
            && &(&denom_root * &denom_root) == self.denom()
        {
            Ok(Rational(BigRational::new(numer_root, denom_root)))
        } else {
            Err(Error::NotAPerfectSquare {
                value: self.to_string(),
            })
        }
    }

    /// Fixed-precision decimal rendering with `digits` places after the
    /// point, rounded half-to-even at the last place.
    pub fn to_decimal(&self, digits: usize) -> String {
        let ten = BigInt::from(10);
        let scale = ten.pow(digits as u32);
        let scaled = self.numer().abs() * &scale;
        let (mut quot, rem) = scaled.div_rem(self.denom());
        match (&rem + &rem).cmp(self.denom()) {
            Ordering::Greater => quot += 1,
            Ordering::Equal => {
                if quot.is_odd() {
                    quot += 1;
                }
            }
            Ordering::Less => {}
        }
        let (int_part, frac_part) = quot.div_rem(&scale);
        let sign = if self.is_negative() && !quot.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part,
                width = digits
            )
        }
    }

    /// Nearest double; the oracle hands off through this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<u32> for Rational {
    fn from(value: u32) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational(BigRational::from_integer(value))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"-3"`, `"7/4"` and exact decimal strings such as `"0.04"`.
/// Binary floating point never enters: `"0.04"` parses to 1/25 exactly.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || Error::ParseRational(s.to_string());
        let t = s.trim();
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        if body.is_empty() {
            return Err(err());
        }
        let magnitude = if let Some((numer, denom)) = body.split_once('/') {
            let n = parse_digits(numer).ok_or_else(err)?;
            let d = parse_digits(denom).ok_or_else(err)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(n, d)
        } else if let Some((int_part, frac_part)) = body.split_once('.') {
            let int_digits = if int_part.is_empty() { "0" } else { int_part };
            let n = parse_digits(int_digits).ok_or_else(err)?;
            if frac_part.is_empty() {
                BigRational::from_integer(n)
            } else {
                let f = parse_digits(frac_part).ok_or_else(err)?;
                let scale = BigInt::from(10).pow(frac_part.len() as u32);
                BigRational::new(n * &scale + f, scale)
            }
        } else {
            BigRational::from_integer(parse_digits(body).ok_or_else(err)?)
        };
        Ok(Rational(if negative { -magnitude } else { magnitude }))
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

macro_rules! binary_op {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);
binary_op!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}
