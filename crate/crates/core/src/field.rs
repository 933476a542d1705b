//! Exact scalar types: prime fields and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Ring operations needed by the dense matrix code.
///
/// Constants come from an existing value, which carries the modulus for
/// prime-field elements.
pub trait Scalar: Clone + PartialEq + Eq + Hash + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64_like(&self, v: i64) -> Self;
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Element of the prime field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    v: u16,
    p: u16,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Fp {
        let m = p as i64;
        Fp {
            v: v.rem_euclid(m) as u16,
            p: p as u16,
        }
    }

    pub fn zero(p: u32) -> Fp {
        Fp::new(0, p)
    }

    pub fn one(p: u32) -> Fp {
        Fp::new(1, p)
    }

    pub fn value(self) -> u32 {
        self.v as u32
    }

    pub fn modulus(self) -> u32 {
        self.p as u32
    }

    /// Representative in `(-p/2, p/2]`, used for readable output.
    pub fn signed(self) -> i64 {
        let v = self.v as i64;
        let p = self.p as i64;
        if 2 * v > p {
            v - p
        } else {
            v
        }
    }

    pub fn elements(p: u32) -> impl Iterator<Item = Fp> {
        (0..p).map(move |v| Fp::new(v as i64, p))
    }

    pub fn units(p: u32) -> impl Iterator<Item = Fp> {
        (1..p).map(move |v| Fp::new(v as i64, p))
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::one(self.p as u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &base);
            }
            base = Scalar::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Serialize for Fp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(self.v as u32)
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: ((self.v as u32 + o.v as u32) % self.p as u32) as u16,
            p: self.p,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: ((self.v as u32 + self.p as u32 - o.v as u32) % self.p as u32) as u16,
            p: self.p,
        }
    }
    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        Fp {
            v: ((self.v as u32 * o.v as u32) % self.p as u32) as u16,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            v: ((self.p - self.v) % self.p),
            p: self.p,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            None
        } else {
            Some(self.pow(self.p as u64 - 2))
        }
    }
    fn from_i64_like(&self, v: i64) -> Self {
        Fp::new(v, self.p as u32)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce a rational with denominator prime to `p` into `F_p`.
pub fn reduce_mod(q: &BigRational, p: u32) -> Option<Fp> {
    let pm = BigInt::from(p);
    let num = (q.numer() % &pm + &pm) % &pm;
    let den = (q.denom() % &pm + &pm) % &pm;
    let num: i64 = num.try_into().ok()?;
    let den: i64 = den.try_into().ok()?;
    let den = Fp::new(den, p).inv()?;
    Some(Scalar::mul(&Fp::new(num, p), &den))
}

/// Whether the rational is an integer.
pub fn is_integral(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}
