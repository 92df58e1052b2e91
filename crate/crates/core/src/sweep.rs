//! Cross-validation over boxes of coefficient tuples.
//!
//! Each tuple `(a_1, ..., a_d)` with entries in `[0, bound)` gives the
//! polynomial `a_0 + a_1 x + ... + a_d x^d` for a fixed `a_0`. Tuples are
//! numbered lexicographically with `a_1` most significant. Every polynomial
//! goes through [`cross_validate`]; the work is spread over the rayon pool
//! and merged so the report does not depend on the number of threads.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::cross_validate;
use crate::dynamics::Limits;
use crate::error::{Error, Result};
use crate::padic::Prime;
use crate::poly::IntPolynomial;

/// Default work budget, in full-cycle checks.
pub const DEFAULT_WORK_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientBox {
    pub prime: Prime,
    pub constant: i64,
    pub degree: usize,
    pub bound: u64,
}

impl CoefficientBox {
    pub fn new(prime: Prime, constant: i64, degree: usize, bound: u64) -> Result<Self> {
        if degree == 0 || bound == 0 {
            return Err(Error::Unsupported("a sweep box needs degree >= 1 and bound >= 1".into()));
        }
        Ok(CoefficientBox { prime, constant, degree, bound })
    }

    /// Number of tuples, if it fits in a `u64`.
    pub fn len(&self) -> Option<u64> {
        self.bound.checked_pow(u32::try_from(self.degree).ok()?)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// The full coefficient list (constant first) of tuple number `index`.
    pub fn coeffs_at(&self, mut index: u64) -> Vec<i64> {
        let mut out = vec![0i64; self.degree + 1];
        out[0] = self.constant;
        for slot in out[1..].iter_mut().rev() {
            *slot = (index % self.bound) as i64;
            index /= self.bound;
        }
        out
    }

    /// Uniform random tuple from `rng`.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<i64> {
        let mut out = vec![self.constant];
        out.extend((0..self.degree).map(|_| rng.gen_range(0..self.bound) as i64));
        out
    }

    /// Polynomials of the box in order, with constant tuples skipped.
    pub fn polynomials(&self) -> impl Iterator<Item = IntPolynomial> + '_ {
        let n = self.len().expect("box size fits in u64");
        (0..n).filter_map(move |i| self.polynomial(&self.coeffs_at(i)))
    }

    fn polynomial(&self, coeffs: &[i64]) -> Option<IntPolynomial> {
        IntPolynomial::new(self.prime, coeffs.iter().map(|&a| BigInt::from(a)).collect()).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SweepMode {
    Exhaustive,
    /// `samples` tuples; sample `i` is drawn from ChaCha8 seeded with `seed`
    /// on stream `i`.
    Sampled { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub coeff_box: CoefficientBox,
    pub mode: SweepMode,
    /// Levels scanned by brute force (at least `delta`).
    pub n_max: u32,
    pub budget: u64,
}

impl SweepSpec {
    pub fn levels(&self) -> u32 {
        self.n_max.max(self.coeff_box.prime.delta())
    }

    /// Full-cycle checks this spec asks for, or `None` on overflow.
    pub fn work(&self) -> Option<u64> {
        let tuples = match self.mode {
            SweepMode::Exhaustive => self.coeff_box.len()?,
            SweepMode::Sampled { samples, .. } => samples,
        };
        tuples.checked_mul(u64::from(self.levels()))
    }

    /// Samples that fit in the budget.
    pub fn affordable_samples(&self) -> u64 {
        self.budget / u64::from(self.levels())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub coeffs: Vec<i64>,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub prime: u64,
    pub mode: SweepMode,
    pub total: u64,
    /// Constant tuples, which are not polynomials of positive degree.
    pub degenerate: u64,
    pub agree_minimal: u64,
    pub agree_nonminimal: u64,
    pub disagreements: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl SweepReport {
    fn empty(prime: u64, mode: SweepMode) -> Self {
        SweepReport {
            prime,
            mode,
            total: 0,
            degenerate: 0,
            agree_minimal: 0,
            agree_nonminimal: 0,
            disagreements: 0,
            first_counterexample: None,
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.degenerate += other.degenerate;
        self.agree_minimal += other.agree_minimal;
        self.agree_nonminimal += other.agree_nonminimal;
        self.disagreements += other.disagreements;
        self.first_counterexample = match (self.first_counterexample, other.first_counterexample) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

pub fn run_sweep(spec: &SweepSpec, limits: &Limits) -> Result<SweepReport> {
    let work = spec.work().unwrap_or(u64::MAX);
    if work > spec.budget {
        return Err(Error::BudgetExceeded { requested: work, budget: spec.budget });
    }
    let b = &spec.coeff_box;
    let tuples = match spec.mode {
        SweepMode::Exhaustive => b.len().unwrap_or(u64::MAX),
        SweepMode::Sampled { samples, .. } => samples,
    };
    let coeffs_for = |i: u64| match spec.mode {
        SweepMode::Exhaustive => b.coeffs_at(i),
        SweepMode::Sampled { seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            b.sample(&mut rng)
        }
    };
    let n_max = spec.n_max;
    let prime = b.prime.get();
    (0..tuples)
        .into_par_iter()
        .map(|i| -> Result<SweepReport> {
            let mut r = SweepReport::empty(prime, spec.mode);
            r.total = 1;
            let coeffs = coeffs_for(i);
            let Some(f) = b.polynomial(&coeffs) else {
                r.degenerate = 1;
                return Ok(r);
            };
            let cv = cross_validate(&f, n_max, limits)?;
            if !cv.consistent() {
                r.disagreements = 1;
                r.first_counterexample = Some(Counterexample { index: i, coeffs, issues: cv.issues });
            } else if cv.analysis.minimal() {
                r.agree_minimal = 1;
            } else {
                r.agree_nonminimal = 1;
            }
            Ok(r)
        })
        .try_reduce(|| SweepReport::empty(prime, spec.mode), |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(p: u64, degree: usize, bound: u64) -> CoefficientBox {
        CoefficientBox::new(Prime::new(p).unwrap(), 1, degree, bound).unwrap()
    }

    #[test]
    fn lexicographic_order_with_a1_most_significant() {
        let b = bx(2, 3, 4);
        assert_eq!(b.len(), Some(64));
        assert_eq!(b.coeffs_at(0), vec![1, 0, 0, 0]);
        assert_eq!(b.coeffs_at(1), vec![1, 0, 0, 1]);
        assert_eq!(b.coeffs_at(4), vec![1, 0, 1, 0]);
        assert_eq!(b.coeffs_at(63), vec![1, 3, 3, 3]);
        assert_eq!(b.polynomials().count(), 63);
    }

    #[test]
    fn small_exhaustive_sweep() {
        let spec = SweepSpec { coeff_box: bx(2, 3, 8), mode: SweepMode::Exhaustive, n_max: 3, budget: DEFAULT_WORK_BUDGET };
        let r = run_sweep(&spec, &Limits::default()).unwrap();
        assert_eq!(r.total, 512);
        assert_eq!(r.degenerate, 1);
        assert_eq!(r.disagreements, 0, "{:?}", r.first_counterexample);
        assert_eq!(r.agree_minimal + r.agree_nonminimal + 1, 512);
        assert!(r.agree_minimal > 0);
    }

    #[test]
    fn budget_is_enforced() {
        let spec = SweepSpec { coeff_box: bx(3, 5, 9), mode: SweepMode::Exhaustive, n_max: 3, budget: 1000 };
        assert_eq!(spec.work(), Some(59049 * 3));
        assert_eq!(run_sweep(&spec, &Limits::default()), Err(Error::BudgetExceeded { requested: 177147, budget: 1000 }));
        assert_eq!(spec.affordable_samples(), 333);
    }

    #[test]
    fn sampling_is_deterministic_across_pools() {
        let spec = SweepSpec {
            coeff_box: bx(5, 4, 625),
            mode: SweepMode::Sampled { seed: 7, samples: 200 },
            n_max: 3,
            budget: DEFAULT_WORK_BUDGET,
        };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| run_sweep(&spec, &Limits::default())).unwrap();
        let b = four.install(|| run_sweep(&spec, &Limits::default())).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 200);
        assert_eq!(a.disagreements, 0);
    }

    #[test]
    fn merge_keeps_earliest_counterexample() {
        let mk = |index| {
            let mut r = SweepReport::empty(2, SweepMode::Exhaustive);
            r.disagreements = 1;
            r.first_counterexample = Some(Counterexample { index, coeffs: vec![], issues: vec![] });
            r
        };
        let merged = mk(9).merge(mk(3));
        assert_eq!(merged.disagreements, 2);
        assert_eq!(merged.first_counterexample.unwrap().index, 3);
    }
}
