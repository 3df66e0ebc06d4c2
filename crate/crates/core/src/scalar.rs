//! Exact arithmetic in the quadratic field Q(sqrt 2).

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The number `a + b*sqrt(2)` with `a`, `b` rational.
///
/// Both parts are kept in lowest terms with positive denominators, so the
/// derived equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    /// `p/q + (s/t)*sqrt 2` from machine integers.
    ///
    /// # Panics
    /// If a denominator is zero.
    pub fn from_parts(p: i64, q: i64, s: i64, t: i64) -> Self {
        Scalar {
            a: BigRational::new(BigInt::from(p), BigInt::from(q)),
            b: BigRational::new(BigInt::from(s), BigInt::from(t)),
        }
    }

    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero() }
    }

    pub fn sqrt2() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::one() }
    }

    /// Rational part.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of sqrt 2.
    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Field conjugate `a - b*sqrt 2`.
    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a^2 - 2 b^2`, zero only for zero.
    pub fn norm(&self) -> BigRational {
        let two = BigRational::from_integer(BigInt::from(2));
        &self.a * &self.a - two * &self.b * &self.b
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Scalar { a: c.a / &n, b: c.b / n })
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar { a: self.a + o.a, b: self.b + o.b }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone() }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        // (a + b r)(c + d r) with r^2 = 2
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar { a: &self.a * &o.a, b: BigRational::zero() };
        }
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar { a: &self.a * &o.a + two * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical rendering: `a`, `b√2`, or `a+b√2` / `a-b√2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = |q: &BigRational| -> String {
            if q.is_one() {
                String::from("√2")
            } else if (-q).is_one() {
                String::from("-√2")
            } else {
                format!("{}√2", fmt_rational(q))
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}", root(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { "" } else { "+" };
                write!(f, "{}{}{}", fmt_rational(&self.a), sign, root(&self.b))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn sqrt2_squares_to_two() {
        let r = Scalar::sqrt2();
        assert_eq!(&r * &r, Scalar::from_int(2));
    }

    #[test]
    fn product_formula() {
        // (1 + 2r)(3 - r) = 3 - r + 6r - 4 = -1 + 5r
        let x = Scalar::from_parts(1, 1, 2, 1);
        let y = Scalar::from_parts(3, 1, -1, 1);
        assert_eq!(&x * &y, Scalar::from_parts(-1, 1, 5, 1));
    }

    #[test]
    fn inverse_of_unit() {
        let x = Scalar::from_parts(1, 1, 1, 1);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, Scalar::from_parts(-1, 1, 1, 1));
        assert!((&x * &inv).is_one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(Scalar::from_parts(2, 4, 0, 1), Scalar::from_parts(1, 2, 0, 1));
        assert_eq!(Scalar::from_parts(1, -2, 0, 1), Scalar::from_parts(-1, 2, 0, 1));
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(Scalar::from_int(-3).to_string(), "-3");
        assert_eq!(Scalar::sqrt2().to_string(), "√2");
        assert_eq!((-Scalar::sqrt2()).to_string(), "-√2");
        assert_eq!(Scalar::from_parts(1, 2, -3, 4).to_string(), "1/2-3/4√2");
        assert_eq!(Scalar::from_parts(1, 1, 1, 1).to_string(), "1+√2");
    }
}
