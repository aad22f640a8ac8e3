//! Exact Gaussian integers `a + b i`, enough ring structure for character
//! sums over `Z_4` (where `zeta_4 = i`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn real(re: impl Into<BigInt>) -> Self {
        Self::new(re, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    /// `i^k` for a residue `k` modulo 4.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Exact division by an integer, `None` if either part leaves a remainder.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let (qr, rr) = self.re.div_rem(d);
        let (qi, ri) = self.im.div_rem(d);
        (rr.is_zero() && ri.is_zero()).then_some(Self { re: qr, im: qi })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im < BigInt::zero() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        Self::new(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        &self + &rhs
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Mul<&BigInt> for &GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &BigInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * rhs,
            im: &self.im * rhs,
        }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_i_cycle() {
        let i = GaussianInt::i();
        for k in 0..12u32 {
            assert_eq!(i.pow(k), GaussianInt::i_pow(k as usize));
        }
        assert_eq!(&i * &i, GaussianInt::real(-1));
    }

    #[test]
    fn exact_division() {
        let z = GaussianInt::new(6, -4);
        assert_eq!(z.div_exact(&BigInt::from(2)), Some(GaussianInt::new(3, -2)));
        assert_eq!(z.div_exact(&BigInt::from(4)), None);
    }

    #[test]
    fn display() {
        assert_eq!(GaussianInt::new(3, -2).to_string(), "3-2i");
        assert_eq!(GaussianInt::new(0, 5).to_string(), "0+5i");
        assert_eq!(GaussianInt::real(-7).to_string(), "-7");
    }
}
