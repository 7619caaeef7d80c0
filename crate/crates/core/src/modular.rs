//! Exact arithmetic in Z/p for a small odd prime p.
//!
//! Residues are always stored in canonical form `0 <= value < p`, so derived
//! equality, ordering and hashing agree with equality in the field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An odd prime, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: i64) -> Result<Self> {
        if p < 3 || p > u32::MAX as i64 || !is_prime(p as u64) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `(p - 1) / 2`, the number of residues up to sign.
    #[inline]
    pub fn half_units(self) -> u32 {
        (self.0 - 1) / 2
    }

    pub fn zero(self) -> Fp {
        Fp {
            value: 0,
            modulus: self,
        }
    }

    pub fn one(self) -> Fp {
        Fp {
            value: 1,
            modulus: self,
        }
    }

    pub fn elem(self, value: i64) -> Fp {
        Fp::new(value, self)
    }

    /// All of Z/p in increasing order.
    pub fn elements(self) -> impl Iterator<Item = Fp> + Clone {
        (0..self.0).map(move |value| Fp { value, modulus: self })
    }

    /// The unit group (Z/p)^x in increasing order.
    pub fn units(self) -> impl Iterator<Item = Fp> + Clone {
        (1..self.0).map(move |value| Fp { value, modulus: self })
    }
}

impl TryFrom<i64> for Prime {
    type Error = Error;

    fn try_from(p: i64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp {
    value: u32,
    modulus: Prime,
}

impl Fp {
    /// Reduces any integer into canonical form.
    pub fn new(value: i64, modulus: Prime) -> Self {
        let value = value.rem_euclid(modulus.0 as i64) as u32;
        Fp { value, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Prime {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: Fp) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.0, other.modulus.0));
        }
        Ok(())
    }

    pub fn try_add(self, other: Fp) -> Result<Fp> {
        self.same_modulus(other)?;
        let p = self.modulus.0 as u64;
        let value = ((self.value as u64 + other.value as u64) % p) as u32;
        Ok(Fp {
            value,
            modulus: self.modulus,
        })
    }

    pub fn try_sub(self, other: Fp) -> Result<Fp> {
        self.try_add(-other)
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp> {
        self.same_modulus(other)?;
        let p = self.modulus.0 as u64;
        let value = ((self.value as u64 * other.value as u64) % p) as u32;
        Ok(Fp {
            value,
            modulus: self.modulus,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.modulus.0 as i64, self.value as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(Fp::new(s0, self.modulus))
    }

    /// The unique `b` with `2 * b = self`. Since p is odd this is
    /// `(a + p) / 2` when `a` is odd and `a / 2` otherwise.
    pub fn halve(self) -> Fp {
        let value = if self.value.is_multiple_of(2) {
            self.value / 2
        } else {
            ((self.value as u64 + self.modulus.0 as u64) / 2) as u32
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }

    /// Representative of `{self, -self}` in `0..=(p-1)/2`.
    #[inline]
    pub fn fold_sign(self) -> u32 {
        self.value.min(self.modulus.0 - self.value)
    }

    /// Integer lift in `0..p`.
    #[inline]
    pub fn lift(self) -> i64 {
        self.value as i64
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// The operator forms panic on a modulus mismatch; use the `try_*` methods
// where operands come from different sources.

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.try_add(rhs).expect("Fp addition across moduli")
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.try_sub(rhs).expect("Fp subtraction across moduli")
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.try_mul(rhs).expect("Fp multiplication across moduli")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        let value = if self.value == 0 {
            0
        } else {
            self.modulus.0 - self.value
        };
        Fp {
            value,
            modulus: self.modulus,
        }
    }
}

impl std::iter::Sum for Fp {
    fn sum<I: Iterator<Item = Fp>>(iter: I) -> Fp {
        let mut iter = iter.peekable();
        let first = *iter.peek().expect("sum of an empty Fp iterator has no modulus");
        iter.fold(first.modulus.zero(), |acc, x| acc + x)
    }
}
