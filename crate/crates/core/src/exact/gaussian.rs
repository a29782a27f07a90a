//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

pub type GQ = GaussianRational;

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(int(n))
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `a² + b²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        Self::real(q)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &r.re, im: &self.im + &r.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, r: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &r.re, im: &self.im - &r.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, r: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && r.im.is_zero() {
            return GaussianRational::real(&self.re * &r.re);
        }
        GaussianRational {
            re: &self.re * &r.re - &self.im * &r.im,
            im: &self.re * &r.im + &self.im * &r.re,
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        &self + &r
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, r: &GaussianRational) {
        self.re += &r.re;
        self.im += &r.im;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        &self - &r
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        &self * &r
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im < Rational::zero() { "-" } else { "+" };
                let im = if self.im < Rational::zero() { -self.im.clone() } else { self.im.clone() };
                write!(f, "{} {} {}i", fmt_rational(&self.re), sign, fmt_rational(&im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn g(a: Rational, b: Rational) -> GQ {
        GQ::new(a, b)
    }

    #[test]
    fn norm_of_one_plus_i() {
        let a = g(int(1), int(1));
        assert_eq!(&a * &a.conj(), GQ::from_int(2));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&GQ::i() * &GQ::i(), GQ::from_int(-1));
    }

    #[test]
    fn half_plus_half_i_squared() {
        let a = g(rat(1, 2), rat(1, 2));
        // (a+bi)^2 = a^2 - b^2 + 2ab i
        let oracle = g(rat(1, 4) - rat(1, 4), rat(2, 4));
        assert_eq!(&a * &a, oracle);
        assert_eq!(&a * &a, g(int(0), rat(1, 2)));
    }

    #[test]
    fn division() {
        let a = g(int(3), int(-2));
        let b = g(rat(1, 3), int(5));
        assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
        assert_eq!(a.checked_div(&GQ::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn display() {
        assert_eq!(g(rat(1, 2), rat(-3, 4)).to_string(), "1/2 - 3/4i");
        assert_eq!(g(int(0), int(2)).to_string(), "2i");
    }
}
