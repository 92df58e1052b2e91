//! Truncated p-adic integers.
//!
//! A [`PadicApprox`] is an element of `Z_p` known modulo `p^N`: the canonical
//! residue in `[0, p^N)` together with the prime and the number `N` of base-`p`
//! digits retained. Residues are stored as big integers; digit views are
//! computed on demand.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of base-`p` digits accepted unless a caller asks for more.
pub const DEFAULT_MAX_PRECISION: u32 = 64;

/// A prime below `2^32`, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime_u32(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^n` as a `u64`, or `None` on overflow.
    pub fn checked_pow(self, n: u32) -> Option<u64> {
        self.0.checked_pow(n)
    }

    pub fn pow_big(self, n: u32) -> BigUint {
        BigUint::from(self.0).pow(n)
    }

    /// The level used by the finite decision procedure: minimality on `Z_p`
    /// is equivalent to a full cycle modulo `p^delta`.
    pub fn delta(self) -> u32 {
        if self.0 <= 3 {
            3
        } else {
            2
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Trial division is deterministic and cheap for p < 2^32 (at most 2^15 odd divisors).
fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a truncated value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    /// `p^v` divides the residue and `p^(v+1)` does not.
    Exact(u32),
    /// The residue is zero: the valuation is at least the working precision.
    AtLeastPrecision(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationResult {
    pub valuation: Valuation,
}

impl ValuationResult {
    pub fn exact(&self) -> Option<u32> {
        match self.valuation {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeastPrecision(_) => None,
        }
    }

    /// Exponent `e` such that `|x|_p = p^e`. `None` for the zero residue.
    pub fn norm_exponent(&self) -> Option<i64> {
        self.exact().map(|v| -i64::from(v))
    }
}

/// An element of `Z_p` modulo `p^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    prime: Prime,
    precision: u32,
    value: BigUint,
}

/// Reduces a signed integer to its canonical residue modulo `p^N`.
pub fn canonicalize(i: &BigInt, p: u64, precision: u32) -> Result<PadicApprox> {
    PadicApprox::from_int(Prime::new(p)?, precision, i)
}

impl PadicApprox {
    /// Canonical residue of `i` mod `p^precision`, with the default precision cap.
    pub fn from_int(prime: Prime, precision: u32, i: &BigInt) -> Result<Self> {
        Self::from_int_capped(prime, precision, i, DEFAULT_MAX_PRECISION)
    }

    pub fn from_int_capped(prime: Prime, precision: u32, i: &BigInt, max_precision: u32) -> Result<Self> {
        if precision < 1 || precision > max_precision {
            return Err(Error::InvalidPrecision { precision, max: max_precision });
        }
        let modulus = BigInt::from(prime.pow_big(precision));
        let r = i.mod_floor(&modulus);
        Ok(PadicApprox { prime, precision, value: r.to_biguint().expect("mod_floor is nonnegative") })
    }

    pub fn from_u64(prime: Prime, precision: u32, v: u64) -> Result<Self> {
        Self::from_int(prime, precision, &BigInt::from(v))
    }

    pub fn zero(prime: Prime, precision: u32) -> Result<Self> {
        Self::from_u64(prime, precision, 0)
    }

    pub fn one(prime: Prime, precision: u32) -> Result<Self> {
        Self::from_u64(prime, precision, 1)
    }

    /// Builds from a residue already known to lie in `[0, p^precision)`.
    pub(crate) fn from_residue(prime: Prime, precision: u32, value: BigUint) -> Self {
        debug_assert!(value < prime.pow_big(precision));
        PadicApprox { prime, precision, value }
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// The residue as a `u64`, when it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    /// The residue as a `u64`; panics if it does not fit. For small moduli.
    pub fn as_small(&self) -> u64 {
        self.value.to_u64().expect("residue fits in u64")
    }

    pub fn modulus(&self) -> BigUint {
        self.prime.pow_big(self.precision)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        !(&self.value % self.prime.get()).is_zero()
    }

    /// Base-`p` digits, least significant first; always `precision` entries.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigUint::from(self.prime.get());
        let mut rest = self.value.clone();
        let mut out = Vec::with_capacity(self.precision as usize);
        for _ in 0..self.precision {
            let (q, r) = rest.div_rem(&p);
            out.push(r.to_u64().expect("digit below p"));
            rest = q;
        }
        out
    }

    /// Little-endian digits joined by dots, e.g. `2.0.1` for 11 at p = 3, N = 3.
    pub fn digit_string(&self) -> String {
        self.digits().iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }

    /// Projection onto `Z/p^m Z`.
    pub fn reduce_precision(&self, m: u32) -> Result<Self> {
        if m < 1 || m > self.precision {
            return Err(Error::PrecisionOutOfRange { requested: m, available: self.precision });
        }
        if m == self.precision {
            return Ok(self.clone());
        }
        let value = &self.value % self.prime.pow_big(m);
        Ok(PadicApprox { prime: self.prime, precision: m, value })
    }

    pub fn valuation(&self) -> ValuationResult {
        if self.value.is_zero() {
            return ValuationResult { valuation: Valuation::AtLeastPrecision(self.precision) };
        }
        let p = BigUint::from(self.prime.get());
        let mut v = 0;
        let mut rest = self.value.clone();
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            v += 1;
            rest = q;
        }
        ValuationResult { valuation: Valuation::Exact(v) }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch { left: self.prime.get(), right: other.prime.get() });
        }
        if self.precision != other.precision {
            return Err(Error::PrecisionMismatch { left: self.precision, right: other.precision });
        }
        Ok(())
    }

    fn with_value(&self, value: BigUint) -> Self {
        PadicApprox { prime: self.prime, precision: self.precision, value }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_value((&self.value + &other.value) % self.modulus()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let m = self.modulus();
        Ok(self.with_value((&self.value + &m - &other.value) % m))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_value((&self.value * &other.value) % self.modulus()))
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus();
        self.with_value((&m - &self.value) % m)
    }

    pub fn pow(&self, exponent: &BigUint) -> Self {
        self.with_value(self.value.modpow(exponent, &self.modulus()))
    }

    /// Inverse modulo `p^N`; fails when `p` divides the residue.
    pub fn mod_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit { value: self.value.to_string(), prime: self.prime.get() });
        }
        let m = BigInt::from(self.modulus());
        let a = BigInt::from(self.value.clone());
        let eg = a.extended_gcd(&m);
        debug_assert!(eg.gcd.is_one());
        let inv = eg.x.mod_floor(&m);
        Ok(self.with_value(inv.to_biguint().expect("nonnegative")))
    }

    /// Signed representative in `(-p^N/2, p^N/2]`.
    pub fn to_signed(&self) -> BigInt {
        let m = self.modulus();
        if &self.value * 2u32 > m {
            BigInt::from_biguint(Sign::Minus, &m - &self.value)
        } else {
            BigInt::from(self.value.clone())
        }
    }
}

impl fmt::Display for PadicApprox {
    /// `{:#}` appends the digit string: `11 [2.0.1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            write!(f, "{} [{}]", self.value, self.digit_string())
        } else {
            write!(f, "{}", self.value)
        }
    }
}
