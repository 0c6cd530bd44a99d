//! Exact arithmetic in Z/mZ and the order functions that the size
//! conditions of the balance theorems depend on.
//!
//! Residues are always stored canonically in `[0, m-1]`; negative
//! expressions are normalized on construction. Products go through 64-bit
//! intermediates so every modulus up to `2^32 - 1` is handled bit-exactly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::{Error, Result};

/// The order m of the finite cyclic group Z/mZ, with 1 <= m <= 2^32 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            Err(Error::ZeroModulus)
        } else {
            Ok(Modulus(m))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Canonical residue of an arbitrary signed integer.
    pub fn residue(self, value: i128) -> Residue {
        let m = self.0 as i128;
        Residue {
            value: value.rem_euclid(m) as u32,
            modulus: self,
        }
    }

    pub fn zero(self) -> Residue {
        Residue { value: 0, modulus: self }
    }

    pub fn one(self) -> Residue {
        self.residue(1)
    }

    /// All residues 0, 1, ..., m-1.
    pub fn residues(self) -> impl Iterator<Item = Residue> {
        (0..self.0).map(move |value| Residue { value, modulus: self })
    }

    /// Largest u with 2^u dividing m.
    pub fn v2(self) -> u32 {
        self.0.trailing_zeros()
    }

    /// Euclidean division of s by m as (quotient, remainder).
    pub fn split(self, s: u64) -> (u64, u64) {
        (s / self.0 as u64, s % self.0 as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z/mZ, canonical in `[0, m-1]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// gcd of (a representative of) the class with m.
    pub fn gcd_with_modulus(self) -> u32 {
        if self.value == 0 {
            self.modulus.0
        } else {
            self.value.gcd(&self.modulus.0)
        }
    }

    pub fn is_invertible(self) -> bool {
        self.gcd_with_modulus() == 1
    }

    fn not_invertible(self) -> Error {
        Error::NotInvertible {
            value: self.value,
            modulus: self.modulus.0,
            gcd: self.gcd_with_modulus(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Residue> {
        let m = self.modulus.0 as i64;
        if m == 1 {
            return Ok(self.modulus.zero());
        }
        let (mut r0, mut r1) = (m, self.value as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(self.not_invertible());
        }
        Ok(self.modulus.residue(t0 as i128))
    }

    /// x^e by binary exponentiation (x^0 = 1, also for x = 0).
    pub fn pow(self, mut e: u64) -> Residue {
        let m = self.modulus.0 as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Residue { value: acc as u32, modulus: self.modulus }
    }

    /// k * x for a signed scalar k.
    pub fn scale(self, k: i128) -> Residue {
        let m = self.modulus.0 as i128;
        self.modulus.residue(k.rem_euclid(m) * self.value as i128)
    }

    /// Multiplicative order: smallest k >= 1 with x^k = 1. Bounded iteration,
    /// at most m steps; no factorization.
    pub fn ord(self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(self.not_invertible());
        }
        let m = self.modulus.0 as u64;
        let one = 1 % m;
        let mut acc = self.value as u64;
        for k in 1..=m {
            if acc == one {
                return Ok(k);
            }
            acc = acc * self.value as u64 % m;
        }
        unreachable!("order of a unit divides phi(m) < m")
    }

    /// Order in (Z/mZ)*/{-1,1}: smallest k >= 1 with x^k = +-1.
    pub fn pord(self) -> Result<u64> {
        if !self.is_invertible() {
            return Err(self.not_invertible());
        }
        let m = self.modulus.0 as u64;
        let one = 1 % m;
        let minus_one = (m - 1) % m;
        let mut acc = self.value as u64;
        for k in 1..=m {
            if acc == one || acc == minus_one {
                return Ok(k);
            }
            acc = acc * self.value as u64 % m;
        }
        unreachable!("pord divides ord")
    }
}

/// lcm(ord_m(sigma), m): the period of the admissible-size congruences of the
/// orbit theorems. Equal to ord_m(sigma^m) * m.
pub fn size_period(sigma: Residue) -> Result<u64> {
    let ord = sigma.ord()?;
    Ok(ord.lcm(&(sigma.modulus().get() as u64)))
}

fn assert_same_modulus(a: Residue, b: Residue) {
    assert_eq!(
        a.modulus, b.modulus,
        "mixed moduli: {} vs {}",
        a.modulus, b.modulus
    );
}

impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        assert_same_modulus(self, rhs);
        let m = self.modulus.0 as u64;
        Residue {
            value: ((self.value as u64 + rhs.value as u64) % m) as u32,
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        assert_same_modulus(self, rhs);
        let m = self.modulus.0 as u64;
        Residue {
            value: ((self.value as u64 + m - rhs.value as u64) % m) as u32,
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        assert_same_modulus(self, rhs);
        let m = self.modulus.0 as u64;
        Residue {
            value: (self.value as u64 * rhs.value as u64 % m) as u32,
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        let m = self.modulus.0 as u64;
        Residue {
            value: ((m - self.value as u64) % m) as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
