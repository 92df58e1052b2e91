//! The level-`delta` rule and cross-checks between deciders.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{minimal_degree5_z3, minimal_z2, minimal_z2_larin_form, minimal_z3, Condition, Method, MinimalityVerdict};
use crate::dynamics::Limits;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Decide minimality for any prime: `f` is minimal iff `f_{/delta}` is a
/// full cycle, with `delta = 3` for `p` in {2, 3} and 2 otherwise.
///
/// One condition is reported per level `1..=delta`: the length of the cycle
/// reached from 0, against the level size `p^n`. On failure the witness is
/// that cycle at the first failing level.
///
/// ```
/// use padic_minimality::{minimal_general, IntPolynomial, Limits};
///
/// let f = IntPolynomial::from_i64(5, &[1, 1, 1]).unwrap();
/// let v = minimal_general(&f, &Limits::default()).unwrap();
/// assert!(!v.minimal);
/// assert_eq!(v.stage, Some(1));
/// assert_eq!(v.witness.unwrap().cycle, vec![3]);
/// ```
pub fn minimal_general(f: &IntPolynomial, limits: &Limits) -> Result<MinimalityVerdict> {
    let delta = f.prime().delta();
    let mut conditions = Vec::new();
    let mut witness = None;
    for level in 1..=delta {
        let full = f.is_full_cycle(level, limits)?.full;
        let cycle = f.cycle_from_zero(level, limits)?;
        let size = f.prime().checked_pow(level).expect("level size fits after the full-cycle check");
        debug_assert_eq!(full, cycle.length == size);
        conditions.push(Condition::new(format!("cycle reached from 0 has length p^{level}"), level, cycle.length, size, full));
        if !full && witness.is_none() {
            witness = Some(cycle);
        }
    }
    let mut verdict = MinimalityVerdict::from_conditions(Method::DeltaRule, None, conditions, None);
    verdict.witness = witness;
    Ok(verdict)
}

/// Every applicable decider run on one polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub closed_form: Vec<MinimalityVerdict>,
    pub delta_rule: MinimalityVerdict,
    pub agreement: bool,
}

impl Analysis {
    /// The closed form when one applies, else the delta rule.
    pub fn primary(&self) -> &MinimalityVerdict {
        self.closed_form.first().unwrap_or(&self.delta_rule)
    }

    pub fn minimal(&self) -> bool {
        self.delta_rule.minimal
    }
}

pub fn analyze(f: &IntPolynomial, limits: &Limits) -> Result<Analysis> {
    let mut closed_form = Vec::new();
    let unit_one = f.constant_term().is_one();
    match f.prime().get() {
        2 => {
            closed_form.push(minimal_z2(f)?);
            if unit_one {
                closed_form.push(minimal_z2_larin_form(f)?);
            }
        }
        3 => {
            closed_form.push(minimal_z3(f)?);
            if unit_one && f.degree() <= 5 {
                closed_form.push(minimal_degree5_z3(f)?);
            }
        }
        _ => {}
    }
    let delta_rule = minimal_general(f, limits)?;
    let agreement = closed_form.iter().all(|v| v.minimal == delta_rule.minimal);
    Ok(Analysis { closed_form, delta_rule, agreement })
}

/// All deciders plus a brute-force full-cycle scan of levels `1..=n_max`
/// (at least `delta`), with every disagreement spelled out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub analysis: Analysis,
    /// `(level, full cycle)` for each scanned level.
    pub levels: Vec<(u32, bool)>,
    pub issues: Vec<String>,
}

impl CrossValidation {
    pub fn consistent(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn ensure_consistent(&self) -> Result<()> {
        if self.consistent() {
            Ok(())
        } else {
            Err(Error::Inconsistent(self.issues.join("; ")))
        }
    }
}

pub fn cross_validate(f: &IntPolynomial, n_max: u32, limits: &Limits) -> Result<CrossValidation> {
    let analysis = analyze(f, limits)?;
    let top = n_max.max(f.prime().delta());
    let mut levels = Vec::with_capacity(top as usize);
    for level in 1..=top {
        levels.push((level, f.is_full_cycle(level, limits)?.full));
    }
    let first_fail = levels.iter().find(|(_, full)| !full).map(|&(n, _)| n);
    let mut issues = Vec::new();

    for v in &analysis.closed_form {
        if v.minimal != analysis.delta_rule.minimal {
            issues.push(format!("{} says minimal={}, delta rule says {}", v.method, v.minimal, analysis.delta_rule.minimal));
        }
        if v.stage.is_some() && v.stage != first_fail {
            issues.push(format!("{} places the first failure at {:?}, brute force at {:?}", v.method, v.stage, first_fail));
        }
    }
    if analysis.delta_rule.stage != first_fail.filter(|&n| n <= f.prime().delta()) {
        issues.push(format!("delta rule fails at {:?}, brute force at {:?}", analysis.delta_rule.stage, first_fail));
    }
    if analysis.delta_rule.minimal && first_fail.is_some() {
        issues.push(format!("minimal but level {} is not a full cycle", first_fail.unwrap_or_default()));
    }
    if let Some(n) = first_fail {
        if let Some(&(m, _)) = levels.iter().find(|&&(m, full)| m > n && full) {
            issues.push(format!("level {n} fails but level {m} is a full cycle"));
        }
    }
    Ok(CrossValidation { analysis, levels, issues })
}
