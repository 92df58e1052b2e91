//! First- and second-order data of `g_n = f^(p^n)` at a periodic base point,
//! and the one-level lifting test built on it.
//!
//! When `f_{/n}` has a full cycle through `x0`, `g_n(x0) = x0 + p^n beta` and
//!
//! ```text
//! g_n(x0 + p^n z) = x0 + p^n (alpha z + beta)   mod p^(2n)
//! ```
//!
//! with `alpha = g_n'(x0)`. The affine map `z -> alpha z + beta` on `Z/pZ`
//! decides whether the cycle survives at level `n + 1`: it must be a
//! translation by a unit, i.e. `alpha = 1` and `beta != 0` mod p.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dynamics::Limits;
use crate::error::{Error, Result};
use crate::padic::PadicApprox;
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorData {
    pub base_point: PadicApprox,
    pub level: u32,
    pub precision: u32,
    /// `(f^(p^n))'(x0)` mod `p^precision`.
    pub alpha: PadicApprox,
    /// `(f^(p^n)(x0) - x0) / p^n` mod `p^precision`.
    pub beta: PadicApprox,
    /// `(f^(p^n))''(x0) / 2` mod `p^precision`; `None` if the halving failed.
    pub gamma: Option<PadicApprox>,
}

impl TaylorData {
    /// The affine fibre map `z -> alpha z + beta`.
    pub fn phi(&self, z: &PadicApprox) -> Result<PadicApprox> {
        self.alpha.mul(z)?.add(&self.beta)
    }
}

/// Value, first and second derivative of `f^k` at a point, tracked mod `m`.
struct Jet {
    value: BigUint,
    d1: BigUint,
    d2: BigUint,
}

fn iterate_jet(f: &IntPolynomial, x0: &BigUint, steps: u64, m: &BigUint) -> Jet {
    let c0 = f.reduced_coeffs_big(m);
    let c1 = f.derivative(1).reduced_coeffs(m);
    let c2 = f.derivative(2).reduced_coeffs(m);
    let eval = |c: &[BigUint], x: &BigUint| c.iter().rev().fold(BigUint::zero(), |acc, a| (acc * x + a) % m);

    let mut jet = Jet { value: x0 % m, d1: BigUint::from(1u32) % m, d2: BigUint::zero() };
    for _ in 0..steps {
        let f1 = eval(&c1, &jet.value);
        let f2 = eval(&c2, &jet.value);
        // (f o h)'' = f''(h) h'^2 + f'(h) h''
        let d2 = (&f2 * &jet.d1 % m * &jet.d1 + &f1 * &jet.d2) % m;
        let d1 = &f1 * &jet.d1 % m;
        jet = Jet { value: eval(&c0, &jet.value), d1, d2 };
    }
    jet
}

impl IntPolynomial {
    /// Taylor data of `f^(p^level)` at `x0`, reported to `precision` digits.
    ///
    /// Internally works modulo `p^(level + precision)`, one extra digit for
    /// `p = 2` so the second derivative can be halved.
    pub fn taylor_data(&self, level: u32, x0: &PadicApprox, precision: u32) -> Result<TaylorData> {
        let prime = self.prime();
        if x0.prime() != prime {
            return Err(Error::PrimeMismatch { left: prime.get(), right: x0.prime().get() });
        }
        if level == 0 || precision == 0 {
            return Err(Error::Unsupported("level and precision must be at least 1".into()));
        }
        let steps = prime
            .checked_pow(level)
            .ok_or_else(|| Error::Unsupported(format!("{prime}^{level} iterations do not fit in 64 bits")))?;
        let extra = u32::from(prime.get() == 2);
        let work = prime.pow_big(level + precision + extra);
        let p_n = prime.pow_big(level);
        let out_mod = prime.pow_big(precision);

        let start = x0.value() % &work;
        let jet = iterate_jet(self, &start, steps, &work);

        let diff = (&jet.value + &work - &start) % &work;
        let (beta, rem) = diff.div_rem(&p_n);
        if !rem.is_zero() {
            return Err(Error::NotPeriodic { level });
        }
        let beta = PadicApprox::from_residue(prime, precision, beta % &out_mod);
        let alpha = PadicApprox::from_residue(prime, precision, &jet.d1 % &out_mod);
        let gamma = if prime.get() == 2 {
            if jet.d2.is_even() {
                Some(PadicApprox::from_residue(prime, precision, (&jet.d2 >> 1u32) % &out_mod))
            } else {
                None
            }
        } else {
            let d2 = PadicApprox::from_residue(prime, precision, &jet.d2 % &out_mod);
            let half = PadicApprox::from_u64(prime, precision, 2)?.mod_inverse()?;
            Some(d2.mul(&half)?)
        };
        Ok(TaylorData { base_point: x0.clone(), level, precision, alpha, beta, gamma })
    }

    /// Decides whether a full cycle of `f_{/n}` lifts to `f_{/n+1}` from the
    /// Taylor data at 0: it does iff `beta(0) != 0` and `alpha(0) = 1` mod p.
    ///
    /// The full cycle at level `n` is re-verified when the table fits.
    pub fn lift_check(&self, level: u32, limits: &Limits) -> Result<LiftReport> {
        match self.is_full_cycle(level, limits) {
            Ok(check) if !check.full => return Err(Error::NotFullCycle { level }),
            Ok(_) | Err(Error::TableBoundExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        let zero = PadicApprox::zero(self.prime(), 1)?;
        let data = self.taylor_data(level, &zero, 1).map_err(|e| match e {
            Error::NotPeriodic { level } => Error::NotFullCycle { level },
            other => other,
        })?;
        let beta = data.beta.as_small();
        let alpha = data.alpha.as_small();
        Ok(LiftReport { level, beta_residue: beta, alpha_residue: alpha, lifts: beta != 0 && alpha == 1 })
    }
}

/// Outcome of [`IntPolynomial::lift_check`]; residues are mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub level: u32,
    pub beta_residue: u64,
    pub alpha_residue: u64,
    /// `f_{/level+1}` has a full cycle.
    pub lifts: bool,
}
