//! Integer polynomials viewed as maps on `Z_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{PadicApprox, Prime};

/// A dense polynomial with integer coefficients, constant term first.
///
/// Unlike [`IntPolynomial`] this may be constant or zero; it is what
/// formal differentiation produces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    /// Coefficients without trailing zeros; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: u32) -> ZPoly {
        (0..order).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Exact evaluation over `Z`.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    /// Evaluation modulo `m`, result in `[0, m)`.
    pub fn eval_mod(&self, x: &BigUint, m: &BigUint) -> BigUint {
        horner_big(&self.reduced_coeffs(m), x, m)
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduced_coeffs(&self, m: &BigUint) -> Vec<BigUint> {
        let mi = BigInt::from(m.clone());
        self.coeffs
            .iter()
            .map(|a| a.mod_floor(&mi).to_biguint().expect("nonnegative"))
            .collect()
    }
}

fn horner_big(coeffs: &[BigUint], x: &BigUint, m: &BigUint) -> BigUint {
    coeffs.iter().rev().fold(BigUint::zero(), |acc, a| (acc * x + a) % m)
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "x")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A polynomial map `f: Z_p -> Z_p` with integer coefficients and degree at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    prime: Prime,
    poly: ZPoly,
}

impl IntPolynomial {
    /// Trailing zero coefficients are dropped; constants are rejected.
    pub fn new(prime: Prime, coeffs: Vec<BigInt>) -> Result<Self> {
        let poly = ZPoly::new(coeffs);
        match poly.degree() {
            Some(d) if d >= 1 => Ok(IntPolynomial { prime, poly }),
            _ => Err(Error::DegeneratePolynomial),
        }
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Result<Self> {
        Self::new(Prime::new(p)?, coeffs.iter().copied().map(BigInt::from).collect())
    }

    /// Parses the comma-separated, constant-first format (`"1,3,0,2"` is `1 + 3x + 2x^3`).
    pub fn parse(p: u64, text: &str) -> Result<Self> {
        let coeffs = parse_coefficients(text)?;
        Self::new(Prime::new(p)?, coeffs)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn poly(&self) -> &ZPoly {
        &self.poly
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.poly.coeffs()
    }

    /// `a_i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.poly.coeff(i)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("degree >= 1 by construction")
    }

    pub fn constant_term(&self) -> &BigInt {
        &self.poly.coeffs()[0]
    }

    /// Same comma-separated format accepted by [`IntPolynomial::parse`].
    pub fn to_coeff_string(&self) -> String {
        self.coeffs().iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn evaluate(&self, x: &PadicApprox) -> Result<PadicApprox> {
        if x.prime() != self.prime {
            return Err(Error::PrimeMismatch { left: self.prime.get(), right: x.prime().get() });
        }
        let value = self.poly.eval_mod(x.value(), &x.modulus());
        Ok(PadicApprox::from_residue(self.prime, x.precision(), value))
    }

    /// Formal derivative applied `order` times.
    pub fn derivative(&self, order: u32) -> ZPoly {
        self.poly.nth_derivative(order)
    }

    /// `f^k(x)` at the precision of `x`.
    pub fn iterate(&self, x: &PadicApprox, k: u64) -> Result<PadicApprox> {
        if x.prime() != self.prime {
            return Err(Error::PrimeMismatch { left: self.prime.get(), right: x.prime().get() });
        }
        let m = x.modulus();
        let reduced = self.reduced_coeffs_big(&m);
        let mut v = x.value().clone();
        for _ in 0..k {
            v = horner_big(&reduced, &v, &m);
        }
        Ok(PadicApprox::from_residue(self.prime, x.precision(), v))
    }

    pub(crate) fn reduced_coeffs_big(&self, m: &BigUint) -> Vec<BigUint> {
        self.poly.reduced_coeffs(m)
    }

    /// Coefficients reduced into `[0, m)`.
    pub(crate) fn reduced_coeffs_u64(&self, m: u64) -> Vec<u64> {
        let mi = BigInt::from(m);
        self.coeffs()
            .iter()
            .map(|a| a.mod_floor(&mi).to_u64().expect("residue below m"))
            .collect()
    }

    /// The conjugate `g(x) = f(a_0 x) / a_0`, with coefficients
    /// `a_i a_0^(i-1)` reduced mod `p^precision`. `g(0) = 1`.
    pub fn normalize_unit_constant(&self, precision: u32) -> Result<IntPolynomial> {
        let a0 = PadicApprox::from_int(self.prime, precision, self.constant_term())?;
        if !a0.is_unit() {
            return Err(Error::ConstantTermNotUnit { prime: self.prime.get() });
        }
        let m = a0.modulus();
        let inv = a0.mod_inverse()?;
        let mut coeffs = Vec::with_capacity(self.coeffs().len());
        // weight = a_0^(i-1), starting from a_0^(-1)
        let mut weight = inv.value().clone();
        for (i, a) in self.reduced_coeffs_big(&m).into_iter().enumerate() {
            coeffs.push(BigInt::from(if i == 0 { BigUint::one() } else { a * &weight % &m }));
            weight = weight * a0.value() % &m;
        }
        IntPolynomial::new(self.prime, coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

pub fn parse_coefficients(text: &str) -> Result<Vec<BigInt>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            BigInt::from_str(tok).map_err(|_| Error::Parse(format!("`{tok}` is not a decimal integer")))
        })
        .collect()
}

/// `f` reduced to a fixed modulus below `2^64`, for fast table and orbit work.
#[derive(Debug, Clone)]
pub(crate) struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub(crate) fn new(f: &IntPolynomial, modulus: u64) -> Self {
        ModPoly { modulus, coeffs: f.reduced_coeffs_u64(modulus) }
    }

    #[inline]
    pub(crate) fn eval(&self, x: u64) -> u64 {
        let m = u128::from(self.modulus);
        let x = u128::from(x);
        let mut acc = 0u128;
        for &a in self.coeffs.iter().rev() {
            acc = (acc * x + u128::from(a)) % m;
        }
        acc as u64
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.modulus
    }
}
