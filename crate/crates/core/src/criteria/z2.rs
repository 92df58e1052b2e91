//! Closed-form minimality on `Z_2`.
//!
//! For `a_0` odd, `f` is minimal iff
//!
//! ```text
//! a_1 = 1 (mod 2),  A_1 = 1 (mod 2),  A_0 + A_1 = 1 (mod 4),  2 a_2 a_0 + a_1 A_1 = 1 (mod 4)
//! ```
//!
//! where the sums are the primed ones (`a_i a_0^(i-1)`) unless `a_0 = 1`.
//! The conditions are staged by the level whose full cycle they control:
//! `A_0 + A_1` odd is exactly a full cycle mod 2, the next three a full cycle
//! mod 4, and the last one the lift to mod 8 (hence to every level).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{coefficient_sums, primed_coefficient_sums, residue, Condition, Method, MinimalityVerdict};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

pub(crate) fn require_prime(f: &IntPolynomial, p: u64) -> Result<()> {
    if f.prime().get() != p {
        return Err(Error::WrongPrime { expected: p, found: f.prime().get() });
    }
    Ok(())
}

/// Verdict for `a_0 = 0 mod p`: 0 is then a fixed point of `f_{/1}`.
pub(crate) fn fixed_point_verdict(method: Method, f: &IntPolynomial) -> MinimalityVerdict {
    let p = f.prime().get();
    let cond = Condition::new("a0 != 0 mod p", 1, residue(f.constant_term(), p), p, false);
    MinimalityVerdict::from_conditions(method, None, vec![cond], Some("fixed point mod p".into()))
}

pub fn minimal_z2(f: &IntPolynomial) -> Result<MinimalityVerdict> {
    require_prime(f, 2)?;
    let a0 = f.constant_term();
    if a0.is_even() {
        return Ok(fixed_point_verdict(Method::ClosedFormP2, f));
    }
    let primed = !a0.is_one();
    let s = if primed { primed_coefficient_sums(f, 2)? } else { coefficient_sums(f) };
    let (ea, oa) = if primed { ("A0'", "A1'") } else { ("A0", "A1") };
    let a1 = f.coeff(1);
    let a2 = f.coeff(2);
    let total = &s.even + &s.odd;
    let lift = BigInt::from(2) * &a2 * a0 + &a1 * &s.odd;
    let lift_name = if primed { format!("2a2a0+a1{oa} = 1 mod 4") } else { format!("2a2+a1{oa} = 1 mod 4") };

    let conditions = vec![
        Condition::equals(format!("{ea}+{oa} = 1 mod 2"), 1, &total, 2, 1),
        Condition::equals("a1 = 1 mod 2", 2, &a1, 2, 1),
        Condition::equals(format!("{oa} = 1 mod 2"), 2, &s.odd, 2, 1),
        Condition::equals(format!("{ea}+{oa} = 1 mod 4"), 2, &total, 4, 1),
        Condition::equals(lift_name, 3, &lift, 4, 1),
    ];
    Ok(MinimalityVerdict::from_conditions(Method::ClosedFormP2, None, conditions, None))
}

/// The equivalent three-congruence form for `a_0 = 1`:
/// `a_1 = 1 (mod 2)`, `A_1 - a_1 = 2a_2 (mod 4)`, `A_0 - a_2 = a_1 + a_2 - 1 (mod 4)`.
pub fn minimal_z2_larin_form(f: &IntPolynomial) -> Result<MinimalityVerdict> {
    require_prime(f, 2)?;
    if !f.constant_term().is_one() {
        return Err(Error::Unsupported("the three-congruence form needs a0 = 1".into()));
    }
    let s = coefficient_sums(f);
    let a1 = f.coeff(1);
    let a2 = f.coeff(2);
    let second = &s.odd - &a1 - BigInt::from(2) * &a2;
    let third = &s.even - &a2 - (&a1 + &a2 - 1);
    let conditions = vec![
        Condition::equals("a1 = 1 mod 2", 3, &a1, 2, 1),
        Condition::equals("A1-a1-2a2 = 0 mod 4", 3, &second, 4, 0),
        Condition::equals("A0-a2-(a1+a2-1) = 0 mod 4", 3, &third, 4, 0),
    ];
    let mut verdict = MinimalityVerdict::from_conditions(Method::ClosedFormP2Larin, None, conditions, None);
    verdict.stage = None;
    Ok(verdict)
}
