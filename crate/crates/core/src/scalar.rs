//! Gaussian rational scalars.
//!
//! Every coefficient in the crate lives in Q(i): pairs of arbitrary-precision
//! rationals (real and imaginary part) with exact arithmetic and exact
//! equality. Irrational numbers are deliberately unrepresentable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// An element of Q(i), stored as `re + im * i` in lowest terms.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    /// `num/den` as a real rational. Panics if `den` is zero.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            Rat::new(BigInt::from(num), BigInt::from(den)),
            Rat::zero(),
        )
    }

    pub fn from_rat(re: Rat) -> Self {
        Scalar::new(re, Rat::zero())
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True for elements of Z (real with denominator 1).
    pub fn is_integer(&self) -> bool {
        self.is_real() && self.re.is_integer()
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// True for real positive integers.
    pub fn is_positive_integer(&self) -> bool {
        self.is_integer() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar::new(&self.re / &norm, -(&self.im / &norm)))
    }

    /// Fractional part of the real component, in [0, 1).
    pub fn re_fract(&self) -> Rat {
        &self.re - self.re.floor()
    }

    /// Exact comparison of real scalars; None if either has an imaginary part.
    pub fn cmp_real(&self, other: &Scalar) -> Option<Ordering> {
        if self.is_real() && other.is_real() {
            Some(self.re.cmp(&other.re))
        } else {
            None
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Scalar::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| Scalar::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
forward_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("scalar division by zero");
    a * &inv
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

// Structural order (re, then im), used for canonical storage in maps.
// This is not a claim that Q(i) is an ordered field.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical rendering: "a", "b*i", "i", "a+b*i", "a-b*i"; "0" for zero.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rat(&self.re));
        }
        if !self.im.is_zero() {
            let mag = self.im.abs();
            let sign = if self.im.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if self.im.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if mag.is_one() {
                out.push('i');
            } else {
                out.push_str(&fmt_rat(&mag));
                out.push_str("*i");
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = Scalar::from_ratio(1, 2) + Scalar::i() * Scalar::from_int(3);
        let b = a.inv().unwrap();
        assert!((a * b).is_one());
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn conjugation() {
        let a = Scalar::from_int(2) + Scalar::i();
        assert_eq!(a.conj() + &a, Scalar::from_int(4));
        assert_eq!((a.conj() * &a), Scalar::from_int(5));
    }

    #[test]
    fn integrality() {
        assert!(Scalar::from_int(7).is_positive_integer());
        assert!(!Scalar::from_ratio(1, 2).is_integer());
        assert!(!Scalar::i().is_integer());
        assert_eq!(Scalar::from_int(-3).as_i64(), Some(-3));
    }

    #[test]
    fn fract() {
        assert_eq!(
            Scalar::from_ratio(-1, 2).re_fract(),
            Scalar::from_ratio(1, 2).re().clone()
        );
        assert_eq!(Scalar::from_int(3).re_fract(), Rat::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        let z = Scalar::from_int(1) - Scalar::i() * Scalar::from_ratio(2, 3);
        assert_eq!(z.to_string(), "1-2/3*i");
    }
}
