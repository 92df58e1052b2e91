//! Minimality deciders.
//!
//! Closed-form coefficient criteria exist for `p = 2` ([`minimal_z2`],
//! [`minimal_z2_larin_form`]) and `p = 3` ([`minimal_z3`],
//! [`minimal_degree5_z3`]). For every prime, [`minimal_general`] decides by
//! checking for a full cycle at the single level `delta`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::CycleWitness;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

mod general;
mod z2;
mod z3;

pub use general::{analyze, cross_validate, minimal_general, Analysis, CrossValidation};
pub use z2::{minimal_z2, minimal_z2_larin_form};
pub use z3::{minimal_degree5_z3, minimal_z3};

/// Even/odd coefficient sums of `f`, plain or index-weighted.
///
/// With `c_i = a_i` (plain) or `c_i = a_i a_0^(i-1)` (primed):
/// `even = sum c_i` over even `i > 0`, `odd = sum c_i` over odd `i`,
/// and the `*_weighted` sums use `i c_i`. Primed sums are residues mod `p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSums {
    pub even: BigInt,
    pub odd: BigInt,
    pub even_weighted: BigInt,
    pub odd_weighted: BigInt,
    pub primed: bool,
}

/// Plain sums, exact over `Z`.
pub fn coefficient_sums(f: &IntPolynomial) -> CoefficientSums {
    sums_of(&effective_coeffs(f, None), false)
}

/// Sums of `a_i a_0^(i-1)`, reduced mod `p^precision`. Requires `a_0` to be a unit.
pub fn primed_coefficient_sums(f: &IntPolynomial, precision: u32) -> Result<CoefficientSums> {
    let p = f.prime().get();
    if f.constant_term().mod_floor(&BigInt::from(p)).is_zero() {
        return Err(Error::ConstantTermNotUnit { prime: p });
    }
    let m = BigInt::from(p).pow(precision);
    let mut s = sums_of(&effective_coeffs(f, Some(&m)), true);
    for v in [&mut s.even, &mut s.odd, &mut s.even_weighted, &mut s.odd_weighted] {
        *v = v.mod_floor(&m);
    }
    Ok(s)
}

/// `c_i = a_i a_0^(i-1)` for `i >= 1` (index 0 holds zero); reduced mod `m`
/// when given, else the plain `a_i`.
pub(crate) fn effective_coeffs(f: &IntPolynomial, modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.degree() + 1];
    match modulus {
        None => {
            for (i, a) in f.coeffs().iter().enumerate().skip(1) {
                out[i] = a.clone();
            }
        }
        Some(m) => {
            let a0 = f.constant_term().mod_floor(m);
            let mut weight = BigInt::one();
            for (i, a) in f.coeffs().iter().enumerate().skip(1) {
                out[i] = (a * &weight).mod_floor(m);
                weight = (weight * &a0).mod_floor(m);
            }
        }
    }
    out
}

fn sums_of(c: &[BigInt], primed: bool) -> CoefficientSums {
    let mut s = CoefficientSums {
        even: BigInt::zero(),
        odd: BigInt::zero(),
        even_weighted: BigInt::zero(),
        odd_weighted: BigInt::zero(),
        primed,
    };
    for (i, ci) in c.iter().enumerate().skip(1) {
        let weighted = ci * BigInt::from(i);
        if i % 2 == 0 {
            s.even += ci;
            s.even_weighted += weighted;
        } else {
            s.odd += ci;
            s.odd_weighted += weighted;
        }
    }
    s
}

pub(crate) fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedFormP2,
    ClosedFormP2Larin,
    ClosedFormP3,
    ClosedFormP3Deg5,
    DeltaRule,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedFormP2 => "closed-form-p2",
            Method::ClosedFormP2Larin => "closed-form-p2-larin",
            Method::ClosedFormP3 => "closed-form-p3",
            Method::ClosedFormP3Deg5 => "closed-form-p3-deg5",
            Method::DeltaRule => "delta-rule",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked congruence. `residue` is the tested quantity mod `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub residue: u64,
    pub modulus: u64,
    pub pass: bool,
    /// Level `n` whose full cycle this condition controls.
    pub level: u32,
}

impl Condition {
    pub(crate) fn new(name: impl Into<String>, level: u32, residue: u64, modulus: u64, pass: bool) -> Self {
        Condition { name: name.into(), residue, modulus, pass, level }
    }

    pub(crate) fn equals(name: impl Into<String>, level: u32, value: &BigInt, modulus: u64, target: u64) -> Self {
        let r = residue(value, modulus);
        Self::new(name, level, r, modulus, r == target)
    }

    pub(crate) fn nonzero(name: impl Into<String>, level: u32, value: &BigInt, modulus: u64) -> Self {
        let r = residue(value, modulus);
        Self::new(name, level, r, modulus, r != 0)
    }
}

/// A decision with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    pub method: Method,
    /// Matched row (1-4) of the `p = 3` tables.
    pub case: Option<u8>,
    pub conditions: Vec<Condition>,
    /// For the delta rule: the cycle through which the first failing level breaks.
    pub witness: Option<CycleWitness>,
    /// First level `n` at which `f_{/n}` has no full cycle, when known.
    pub stage: Option<u32>,
    pub reason: Option<String>,
}

impl MinimalityVerdict {
    pub(crate) fn from_conditions(method: Method, case: Option<u8>, conditions: Vec<Condition>, reason: Option<String>) -> Self {
        let minimal = conditions.iter().all(|c| c.pass) && reason.is_none();
        let stage = conditions.iter().filter(|c| !c.pass).map(|c| c.level).min();
        MinimalityVerdict { minimal, method, case, conditions, witness: None, stage, reason }
    }

    pub fn failed(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for MinimalityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "method:  {}", self.method)?;
        writeln!(f, "minimal: {}", if self.minimal { "yes" } else { "no" })?;
        if let Some(case) = self.case {
            writeln!(f, "case:    ({case})")?;
        }
        if let Some(stage) = self.stage {
            writeln!(f, "first failing level: {stage}")?;
        }
        if let Some(reason) = &self.reason {
            writeln!(f, "reason:  {reason}")?;
        }
        for c in &self.conditions {
            writeln!(
                f,
                "  [{}] level {}: {}  (residue {} mod {})",
                if c.pass { "pass" } else { "FAIL" },
                c.level,
                c.name,
                c.residue,
                c.modulus
            )?;
        }
        if let Some(w) = &self.witness {
            let listed: Vec<String> = w.cycle.iter().map(u64::to_string).collect();
            let more = if (w.cycle.len() as u64) < w.length { ",..." } else { "" };
            writeln!(f, "  witness: cycle of length {} mod p^{}: ({}{more})", w.length, w.level, listed.join(","))?;
        }
        Ok(())
    }
}
