//! Closed-form minimality on `Z_3`.
//!
//! With `c_i = a_i a_0^(i-1)`, `A_0 = sum c_i` over even `i > 0`,
//! `A_1 = sum c_i` over odd `i`, and `D_0`, `D_1` their index-weighted
//! versions, `f` (with `a_0` a unit) is minimal iff `A_0 = 0`, `A_1 = 1
//! (mod 3)` and `(D_0, D_1, a_1) mod 3` matches one of
//!
//! | case | pattern   | both required (mod 9)                         |
//! |------|-----------|-----------------------------------------------|
//! | 1    | (0, 2, 1) | `A_1 + 5 != 0`, `A_1 + 5 != 3c_2 + 3S_5`      |
//! | 2    | (0, 1, 1) | `A_0 + 6 != 0`, `A_0 + 6 != 6c_2 + 3S_2`      |
//! | 3    | (1, 0, 2) | `A_1 + 5 != 0`, `A_1 + 5 != 6c_2 + 3S_5`      |
//! | 4    | (2, 0, 2) | `A_0 + 6 != 0`, `A_0 + 6 != 3c_2 + 3S_2`      |
//!
//! where `S_k = sum_j c_(k+6j)`. The four patterns are exactly the ways to
//! get `a_1 (D_1^2 - D_0^2) = 1 (mod 3)`, the multiplier of `f^3` at 0.

use num_bigint::BigInt;
use num_traits::One;

use super::z2::{fixed_point_verdict, require_prime};
use super::{effective_coeffs, residue, Condition, Method, MinimalityVerdict};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

fn strided_sum(c: &[BigInt], start: usize) -> BigInt {
    c.iter().skip(start).step_by(6).sum()
}

pub fn minimal_z3(f: &IntPolynomial) -> Result<MinimalityVerdict> {
    require_prime(f, 3)?;
    if residue(f.constant_term(), 3) == 0 {
        return Ok(fixed_point_verdict(Method::ClosedFormP3, f));
    }
    let primed = !f.constant_term().is_one();
    let c = effective_coeffs(f, primed.then(|| BigInt::from(9)).as_ref());
    let (mut a0s, mut a1s, mut d0, mut d1) = (BigInt::default(), BigInt::default(), BigInt::default(), BigInt::default());
    for (i, ci) in c.iter().enumerate().skip(1) {
        let w = ci * BigInt::from(i);
        if i % 2 == 0 {
            a0s += ci;
            d0 += w;
        } else {
            a1s += ci;
            d1 += w;
        }
    }
    let p = if primed { "'" } else { "" };
    let a1 = &c[1];
    let c2 = c.get(2).cloned().unwrap_or_default();
    let s2 = strided_sum(&c, 2);
    let s5 = strided_sum(&c, 5);

    let mut conditions = vec![
        Condition::equals(format!("A0{p} = 0 mod 3"), 1, &a0s, 3, 0),
        Condition::equals(format!("A1{p} = 1 mod 3"), 1, &a1s, 3, 1),
    ];

    let pattern = (residue(&d0, 3), residue(&d1, 3), residue(a1, 3));
    let multiplier = a1 * (&d1 * &d1 - &d0 * &d0);
    conditions.push(Condition::equals(format!("a1(D1{p}^2-D0{p}^2) = 1 mod 3"), 2, &multiplier, 3, 1));

    let case = match pattern {
        (0, 2, 1) => 1,
        (0, 1, 1) => 2,
        (1, 0, 2) => 3,
        (2, 0, 2) => 4,
        _ => {
            let reason = Some("derivative-pattern mismatch".to_string());
            return Ok(MinimalityVerdict::from_conditions(Method::ClosedFormP3, None, conditions, reason));
        }
    };
    let a2 = if primed { "a2a0" } else { "a2" };
    let (lhs, lhs_name, rhs, rhs_name) = match case {
        1 => (&a1s + 5, format!("A1{p}+5"), 3 * &c2 + 3 * &s5, format!("3{a2}+3S5{p}")),
        2 => (&a0s + 6, format!("A0{p}+6"), 6 * &c2 + 3 * &s2, format!("6{a2}+3S2{p}")),
        3 => (&a1s + 5, format!("A1{p}+5"), 6 * &c2 + 3 * &s5, format!("6{a2}+3S5{p}")),
        _ => (&a0s + 6, format!("A0{p}+6"), 3 * &c2 + 3 * &s2, format!("3{a2}+3S2{p}")),
    };
    conditions.push(Condition::nonzero(format!("{lhs_name} != 0 mod 9"), 2, &lhs, 9));
    conditions.push(Condition::nonzero(format!("{lhs_name} != {rhs_name} mod 9"), 3, &(&lhs - &rhs), 9));
    Ok(MinimalityVerdict::from_conditions(Method::ClosedFormP3, Some(case), conditions, None))
}

/// Pattern table for `a_0 = 1`, degree at most 5, on `(a_1, ..., a_5) mod 3`.
const DEGREE5_PATTERNS: [[u64; 5]; 4] = [[1, 0, 1, 0, 2], [1, 0, 0, 0, 0], [2, 1, 0, 2, 2], [2, 2, 0, 1, 2]];

/// The coefficient-only form for `f = 1 + a_1 x + ... + a_5 x^5` over `Z_3`.
pub fn minimal_degree5_z3(f: &IntPolynomial) -> Result<MinimalityVerdict> {
    require_prime(f, 3)?;
    if !f.constant_term().is_one() || f.degree() > 5 {
        return Err(Error::Unsupported("the degree-5 form needs a0 = 1 and degree at most 5".into()));
    }
    let a: Vec<BigInt> = (1..=5).map(|i| f.coeff(i)).collect();
    let pattern: Vec<u64> = a.iter().map(|x| residue(x, 3)).collect();
    let code = pattern.iter().rev().fold(0, |acc, d| acc * 3 + d);
    let shown: Vec<String> = pattern.iter().map(u64::to_string).collect();
    let matched = DEGREE5_PATTERNS.iter().position(|row| row[..] == pattern[..]);

    let mut conditions = vec![Condition::new(
        format!("(a1..a5) mod 3 = ({}) is a listed pattern", shown.join(",")),
        3,
        code,
        243,
        matched.is_some(),
    )];
    let Some(row) = matched else {
        let reason = Some("derivative-pattern mismatch".to_string());
        return Ok(degree5_verdict(None, conditions, reason));
    };
    let odd = &a[0] + &a[2] + &a[4];
    let even = &a[1] + &a[3];
    let check = match row {
        0 => Condition::equals("a1+a3+a5 = 7 mod 9", 3, &odd, 9, 7),
        1 => {
            let r = residue(&even, 9);
            Condition::new("a2+a4 = 0 or 6 mod 9", 3, r, 9, r == 0 || r == 6)
        }
        2 => Condition::equals("a1+a3+a5 = 1 mod 9", 3, &odd, 9, 1),
        _ => Condition::equals("a2+a4 = 0 mod 9", 3, &even, 9, 0),
    };
    conditions.push(check);
    Ok(degree5_verdict(Some(row as u8 + 1), conditions, None))
}

fn degree5_verdict(case: Option<u8>, conditions: Vec<Condition>, reason: Option<String>) -> MinimalityVerdict {
    let mut v = MinimalityVerdict::from_conditions(Method::ClosedFormP3Deg5, case, conditions, reason);
    v.stage = None;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(3, c).unwrap()
    }

    // brute-force oracle: orbit of 0 mod 3^n
    fn full_cycle(c: &[i64], n: u32) -> bool {
        let m = 3i64.pow(n);
        let f = |x: i64| c.iter().rev().fold(0i64, |acc, &a| (acc * x + a).rem_euclid(m));
        let mut x = 0;
        for k in 1..=m {
            x = f(x);
            if x == 0 {
                return k == m;
            }
        }
        false
    }

    fn first_fail(c: &[i64]) -> Option<u32> {
        (1..=3).find(|&n| !full_cycle(c, n))
    }

    #[test]
    fn degree_five_example_fails_second_condition_of_case_one() {
        let c = [1, 4, 0, 4, 0, 2];
        let v = minimal_z3(&poly(&c)).unwrap();
        assert!(!v.minimal);
        assert_eq!(v.case, Some(1));
        assert_eq!(v.stage, Some(3));
        let failed: Vec<_> = v.failed().collect();
        assert_eq!(failed.len(), 1);
        // A1 + 5 = 15 and 3a2 + 3S5 = 6 agree mod 9
        assert_eq!(failed[0].name, "A1+5 != 3a2+3S5 mod 9");
        assert_eq!(failed[0].residue, 0);
        assert!(full_cycle(&c, 2) && !full_cycle(&c, 3));
        let d = minimal_degree5_z3(&poly(&c)).unwrap();
        assert!(!d.minimal);
        assert_eq!(d.case, Some(1));
    }

    #[test]
    fn translation_is_case_two() {
        let v = minimal_z3(&poly(&[1, 1])).unwrap();
        assert!(v.minimal);
        assert_eq!(v.case, Some(2));
        assert_eq!(minimal_degree5_z3(&poly(&[1, 1])).unwrap().case, Some(2));
    }

    #[test]
    fn quadratic_case_two() {
        let c = [1, 1, 6];
        let v = minimal_z3(&poly(&c)).unwrap();
        assert!(v.minimal);
        assert_eq!(v.case, Some(2));
        let residues: Vec<u64> = v.conditions.iter().skip(3).map(|c| c.residue).collect();
        // A0 + 6 = 12 = 3, and 3 - 6*6 = -33 = 3 mod 9
        assert_eq!(residues, vec![3, 3]);
        assert!(full_cycle(&c, 4));
    }

    #[test]
    fn residues_mod_nine_determine_the_verdict() {
        let c = [1i64, 4, 0, 4, 0, 2];
        for i in 1..6 {
            let mut shifted = c;
            shifted[i] += 9;
            assert_eq!(minimal_z3(&poly(&shifted)).unwrap().minimal, full_cycle(&shifted, 3));
            assert_eq!(minimal_z3(&poly(&shifted)).unwrap().minimal, minimal_z3(&poly(&c)).unwrap().minimal);
        }
    }

    #[test]
    fn cycle_mod_three_that_does_not_lift() {
        let c = [1, 1, 3];
        let v = minimal_z3(&poly(&c)).unwrap();
        assert!(!v.minimal);
        assert_eq!(v.stage, first_fail(&c));
        assert!(full_cycle(&c, 1));
    }

    #[test]
    fn pattern_mismatch_is_reported() {
        // A0 = 0, A1 = 1 mod 3 but a1 = 0: no pattern
        let c = [1, 0, 3, 1];
        let v = minimal_z3(&poly(&c)).unwrap();
        assert!(!v.minimal);
        assert_eq!(v.case, None);
        assert_eq!(v.reason.as_deref(), Some("derivative-pattern mismatch"));
        assert_eq!(v.stage, Some(2));
        assert_eq!(first_fail(&c), Some(2));
    }

    #[test]
    fn constant_divisible_by_three() {
        let v = minimal_z3(&poly(&[3, 1])).unwrap();
        assert!(!v.minimal);
        assert_eq!(v.reason.as_deref(), Some("fixed point mod p"));
    }

    #[test]
    fn degree5_domain() {
        assert!(matches!(minimal_degree5_z3(&poly(&[2, 1])), Err(Error::Unsupported(_))));
        assert!(matches!(minimal_degree5_z3(&poly(&[1, 1, 0, 0, 0, 0, 1])), Err(Error::Unsupported(_))));
        let f = IntPolynomial::from_i64(2, &[1, 1]).unwrap();
        assert!(matches!(minimal_z3(&f), Err(Error::WrongPrime { .. })));
    }

    #[test]
    fn corrected_case_three_row() {
        // pattern (2,1,0,2,2) with a1+a3+a5 = 10 = 1 mod 9
        let c = [1, 2, 1, 0, 8, 8];
        let d = minimal_degree5_z3(&poly(&c)).unwrap();
        assert_eq!(d.case, Some(3));
        assert!(d.minimal);
        assert!(full_cycle(&c, 3));
    }

    #[test]
    fn exhaustive_degree5_box_matches_oracle() {
        let mut minimal = 0;
        for code in 0..9u32.pow(5) {
            let mut c = vec![1i64];
            let mut k = code;
            for _ in 0..5 {
                c.push((k % 9) as i64);
                k /= 9;
            }
            let Ok(f) = IntPolynomial::from_i64(3, &c) else { continue };
            let oracle = full_cycle(&c, 3);
            minimal += oracle as u32;
            let v = minimal_z3(&f).unwrap();
            assert_eq!(v.minimal, oracle, "{f}");
            assert_eq!(v.stage, first_fail(&c), "{f}");
            assert_eq!(minimal_degree5_z3(&f).unwrap().minimal, oracle, "{f}");
        }
        assert_eq!(minimal, 405);
    }

    #[test]
    fn primed_form_matches_oracle() {
        for a0 in [-4i64, -1, 2, 4, 5, 7, 8, 10] {
            for code in 0..9u32.pow(3) {
                let c = [a0, (code % 9) as i64, (code / 9 % 9) as i64, (code / 81) as i64];
                let Ok(f) = IntPolynomial::from_i64(3, &c) else { continue };
                let v = minimal_z3(&f).unwrap();
                assert_eq!(v.minimal, full_cycle(&c, 3), "{f}");
                assert_eq!(v.stage, first_fail(&c), "{f}");
            }
        }
    }
}
