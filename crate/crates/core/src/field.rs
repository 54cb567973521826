//! Scalar abstraction for coefficient arithmetic.
//!
//! Rank computations and polynomial algebra are generic over [`Scalar`] so
//! the same elimination code runs over the rationals and over a prime field.
//! Concrete aliases live at the crate root (`Rat`, `F32003`).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Field scalar: exact, clonable, with total arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

/// Prime field `Z/P` with `P` a const-generic prime.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        let p = P as i64;
        Fp(v.rem_euclid(p) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn inv(self) -> Self {
        assert!(self.0 != 0, "division by zero in Fp");
        // extended Euclid on (P, value)
        let (mut r0, mut r1) = (P as i64, self.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let d = r0 / r1;
            (r0, r1) = (r1, r0 - d * r1);
            (s0, s1) = (s1, s0 - d * s1);
        }
        debug_assert_eq!(r0, 1);
        Fp::new(s0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
}
