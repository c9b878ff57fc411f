//! Gaussian rationals a + bi with exact rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub const ZERO: GaussRat = GaussRat { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: GaussRat = GaussRat { re: Rational::ONE, im: Rational::ZERO };
    pub const I: GaussRat = GaussRat { re: Rational::ZERO, im: Rational::ONE };

    pub fn new(re: Rational, im: Rational) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> GaussRat {
        GaussRat { re, im: Rational::ZERO }
    }

    pub fn int(n: i64) -> GaussRat {
        GaussRat::real(Rational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> GaussRat {
        GaussRat::real(Rational::new(n, d))
    }

    pub fn imag(im: Rational) -> GaussRat {
        GaussRat { re: Rational::ZERO, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> GaussRat {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "reciprocal of zero");
        GaussRat { re: &self.re / &n, im: &(-&self.im) / &n }
    }

    pub fn scale(&self, k: &Rational) -> GaussRat {
        GaussRat { re: &self.re * k, im: &self.im * k }
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> GaussRat {
        GaussRat { re: -&self.im, im: self.re.clone() }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        if self.re.is_zero() && rhs.re.is_zero() {
            return GaussRat::real(-&(&self.im * &rhs.im));
        }
        GaussRat {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        &self + &rhs
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        &self - &rhs
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        &self * &rhs
    }
}

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        self.re = &self.re + &rhs.re;
        if !rhs.im.is_zero() {
            self.im = &self.im + &rhs.im;
        }
    }
}

impl From<Rational> for GaussRat {
    fn from(r: Rational) -> Self {
        GaussRat::real(r)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => write!(f, "i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.signum() < 0 { "-" } else { "+" };
                write!(f, "({} {} {}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&GaussRat::I * &GaussRat::I, GaussRat::int(-1));
        assert_eq!(GaussRat::I.mul_i(), GaussRat::int(-1));
    }

    #[test]
    fn reciprocal() {
        let z = GaussRat::new(Rational::from_int(3), Rational::from_int(4));
        assert_eq!(&z * &z.recip(), GaussRat::ONE);
    }
}
