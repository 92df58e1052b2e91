//! Minimality of polynomial dynamics on the `p`-adic integers.
//!
//! A polynomial `f` with integer coefficients is *minimal* on `Z_p` when
//! every orbit is dense; equivalently, `f mod p^n` is a single cycle of
//! length `p^n` for every `n`. This crate decides minimality in two
//! independent ways and checks them against each other:
//!
//! - closed-form coefficient criteria for `p = 2` ([`minimal_z2`]) and
//!   `p = 3` ([`minimal_z3`]);
//! - for any prime, a full-cycle test at the single level `delta`
//!   ([`minimal_general`]).
//!
//! Around these sit truncated `p`-adic arithmetic ([`padic`]), reduced maps
//! and cycle structure ([`dynamics`]), the lifting test ([`taylor`]),
//! conjugacies to `x -> x + 1` and full-period streams ([`conjugacy`]), and
//! coefficient sweeps ([`sweep`]).
//!
//! ```
//! use padic_minimality::{analyze, IntPolynomial, Limits};
//!
//! let f = IntPolynomial::parse(2, "1,3,0,2").unwrap();
//! let a = analyze(&f, &Limits::default()).unwrap();
//! assert!(!a.minimal() && a.agreement);
//! assert_eq!(a.delta_rule.witness.unwrap().cycle, vec![0, 1, 6, 3]);
//! ```

pub mod conjugacy;
pub mod criteria;
pub mod dynamics;
pub mod error;
pub mod padic;
pub mod poly;
pub mod sweep;
pub mod taylor;

pub use conjugacy::{Certificate, ConjugacyTable, FullCycleStream, TowerLevel, TowerReport};
pub use criteria::{
    analyze, coefficient_sums, cross_validate, minimal_degree5_z3, minimal_general, minimal_z2, minimal_z2_larin_form,
    minimal_z3, primed_coefficient_sums, Analysis, CoefficientSums, Condition, CrossValidation, Method, MinimalityVerdict,
};
pub use dynamics::{Bijectivity, CycleDecomposition, CycleWitness, FullCycleCheck, FullCycleStrategy, Limits, ReducedMapTable};
pub use error::{Error, Result};
pub use padic::{canonicalize, PadicApprox, Prime, Valuation, ValuationResult};
pub use poly::{parse_coefficients, IntPolynomial, ZPoly};
pub use sweep::{run_sweep, CoefficientBox, Counterexample, SweepMode, SweepReport, SweepSpec, DEFAULT_WORK_BUDGET};
pub use taylor::{LiftReport, TaylorData};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/residues.md")]
    struct Residues;
    #[doc = include_str!("../../../book/src/reduced-maps.md")]
    struct ReducedMaps;
    #[doc = include_str!("../../../book/src/lifting.md")]
    struct Lifting;
    #[doc = include_str!("../../../book/src/criteria.md")]
    struct Criteria;
    #[doc = include_str!("../../../book/src/conjugacy.md")]
    struct Conjugacy;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
    #[doc = include_str!("../../../README.md")]
    struct Readme;
}
