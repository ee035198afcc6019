//! Exact scalars in the quadratic field Q(sqrt2).
//!
//! Every element is stored as `rat + surd*sqrt(2)` with both components
//! arbitrary-precision rationals. Since sqrt(2) is irrational the
//! representation is unique, so equality is componentwise and all
//! arithmetic is exact.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ArithmeticError;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

/// Shorthand for a rational from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element `rat + surd*sqrt(2)` of Q(sqrt2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: Rational,
    surd: Rational,
}

impl Scalar {
    pub fn new(rat: Rational, surd: Rational) -> Self {
        Scalar { rat, surd }
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(Rational::one(), Rational::zero())
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(rat(n, 1), Rational::zero())
    }

    /// Rational scalar `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(rat(num, den), Rational::zero())
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar::new(r, Rational::zero())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Field conjugate `rat - surd*sqrt(2)`.
    pub fn conjugate(&self) -> Self {
        Scalar::new(self.rat.clone(), -self.surd.clone())
    }

    /// Multiplication by a rational, componentwise (cheaper than a full
    /// field multiplication).
    pub fn mul_rational(&self, r: &Rational) -> Self {
        Scalar::new(&self.rat * r, &self.surd * r)
    }

    /// Field norm `rat^2 - 2*surd^2`; zero exactly for the zero element.
    fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from(BigInt::from(2)) * &self.surd * &self.surd
    }

    /// Exact multiplicative inverse.
    pub fn inv(&self) -> Result<Self, ArithmeticError> {
        if self.is_zero() {
            return Err(ArithmeticError::DivisionByZero);
        }
        let n = self.norm();
        debug_assert!(!n.is_zero(), "nonzero element of Q(sqrt2) has nonzero norm");
        Ok(Scalar::new(&self.rat / &n, -&self.surd / &n))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ArithmeticError> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact integer power. Errors on `0^n` with `n < 0`.
    pub fn pow(&self, n: i64) -> Result<Self, ArithmeticError> {
        if n < 0 {
            if self.is_zero() {
                return Err(ArithmeticError::ZeroToNegativePower);
            }
            return self.inv()?.pow(-n);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rat.clone(), -self.surd.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.rat, -self.surd)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rat + &rhs.rat, &self.surd + &rhs.surd)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.rat - &rhs.rat, &self.surd - &rhs.surd)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + b*s)(c + d*s) = (ac + 2bd) + (ad + bc)*s with s^2 = 2.
        let two = Rational::from(BigInt::from(2));
        Scalar::new(
            &self.rat * &rhs.rat + two * &self.surd * &rhs.surd,
            &self.rat * &rhs.surd + &self.surd * &rhs.rat,
        )
    }
}

/// Exact division. Panics on a zero divisor; use [`Scalar::checked_div`]
/// where the divisor is not known to be nonzero.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero Scalar")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders the canonical grammar form: `0`, `3/2`, `sqrt2`, `1/2*sqrt2`,
/// `1 + sqrt2`, `3/2 - 1/2*sqrt2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let surd_term = |mag: &Rational| -> String {
            if mag.is_one() {
                "sqrt2".to_string()
            } else {
                format!("{}*sqrt2", fmt_rational(mag))
            }
        };
        if self.surd.is_zero() {
            write!(f, "{}", fmt_rational(&self.rat))
        } else if self.rat.is_zero() {
            if self.surd.is_negative() {
                write!(f, "-{}", surd_term(&-self.surd.clone()))
            } else {
                write!(f, "{}", surd_term(&self.surd))
            }
        } else {
            let sign = if self.surd.is_negative() { "-" } else { "+" };
            write!(
                f,
                "{} {} {}",
                fmt_rational(&self.rat),
                sign,
                surd_term(&self.surd.abs())
            )
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}
