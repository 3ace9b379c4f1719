//! Exact scalar types.
//!
//! Everything in this crate is exact: integers are arbitrary precision, fields
//! are either the prime fields `Z/p` or the rationals. Linear algebra is written
//! against the [`Scalar`] and [`Field`] traits so the same elimination code runs
//! over every coefficient choice.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A commutative ring element that can be built from a small integer.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
}

/// A field of known characteristic.
pub trait Field: Scalar + Div<Output = Self> {
    /// `0` for the rationals.
    const CHARACTERISTIC: u32;

    fn coefficients() -> Coefficients {
        match Self::CHARACTERISTIC {
            0 => Coefficients::Rationals,
            p => Coefficients::Prime(p),
        }
    }

    fn inverse(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {
    const CHARACTERISTIC: u32 = 0;
}

/// An element of the prime field `Z/P`.
///
/// `P` must be prime; this is asserted when the first element is built in
/// debug builds and is guaranteed for every alias exported by the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Zp<const P: u32>(u32);

impl<const P: u32> Zp<P> {
    pub fn new(v: i64) -> Self {
        debug_assert!(P >= 2);
        Zp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u32> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Zp((s % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let s = self.0 as u64 + P as u64 - rhs.0 as u64;
        Zp((s % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp((P - self.0) % P)
    }
}

impl<const P: u32> Div for Zp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in Z/{P}");
        // Fermat inverse.
        self * rhs.pow(P as u64 - 2)
    }
}

impl<const P: u32> Rem for Zp<P> {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "remainder by zero in Z/{P}");
        Zp(0)
    }
}

impl<const P: u32> AddAssign for Zp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Zp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Zp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}

impl<const P: u32> Num for Zp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Self::new)
    }
}

impl<const P: u32> Scalar for Zp<P> {
    fn from_i64(v: i64) -> Self {
        Self::new(v)
    }
}

impl<const P: u32> Field for Zp<P> {
    const CHARACTERISTIC: u32 = P;
}

/// Primes for which a compiled prime field is available at runtime.
pub const SUPPORTED_PRIMES: &[u32] = &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Dispatches a generic expression over the field named by a [`Coefficients`]
/// value. The identifier is bound to the concrete field type inside `$body`.
/// `Integers` falls through to `$integers`.
#[macro_export]
macro_rules! with_field {
    ($coeff:expr, $F:ident => $body:expr, integers => $integers:expr) => {{
        use $crate::scalar::Coefficients as __C;
        match $coeff {
            __C::Integers => $integers,
            __C::Rationals => {
                type $F = $crate::Rational;
                $body
            }
            __C::Prime(p) => $crate::with_field!(@prime p, $F => $body;
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47),
        }
    }};
    (@prime $p:expr, $F:ident => $body:expr; $($q:literal),*) => {
        match $p {
            $(
                $q => {
                    type $F = $crate::scalar::Zp<$q>;
                    $body
                }
            )*
            other => Err($crate::Error::UnsupportedCoefficients(format!("F{other}"))),
        }
    };
}

/// Coefficient ring tag carried alongside homology and cohomology data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u32),
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Coefficients::Integers | Coefficients::Rationals => 0,
            Coefficients::Prime(p) => p,
        }
    }

    /// Checks that a compiled field exists for this tag.
    pub fn check_supported(self) -> Result<Self> {
        match self {
            Coefficients::Prime(p) if !SUPPORTED_PRIMES.contains(&p) => {
                Err(Error::UnsupportedCoefficients(self.to_string()))
            }
            _ => Ok(self),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "Z" | "z" | "integers" => Ok(Coefficients::Integers),
            "Q" | "q" | "rationals" => Ok(Coefficients::Rationals),
            _ => {
                let digits = t
                    .strip_prefix('F')
                    .or_else(|| t.strip_prefix('f'))
                    .or_else(|| t.strip_prefix("Z/"))
                    .unwrap_or(t);
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::UnsupportedCoefficients(s.to_string()))?;
                Coefficients::Prime(p).check_supported()
            }
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Modular exponentiation on machine words; `m` must be nonzero.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128 % m128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
