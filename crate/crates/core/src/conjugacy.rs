//! Finite-level conjugacies to the odometer `x -> x + 1`, and full-cycle
//! streams.
//!
//! When `f_{/n}` is one cycle of length `p^n`, numbering the orbit of 0 gives
//! a permutation `psi` with `psi(f(x)) = psi(x) + 1 mod p^n`. The tables for
//! successive levels are compatible under reduction mod `p^n`.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::criteria::minimal_general;
use crate::dynamics::Limits;
use crate::error::{Error, Result};
use crate::padic::Prime;
use crate::poly::{IntPolynomial, ModPoly};

/// `psi[f^k(0)] = k` on `Z/p^n Z`, with its inverse (the orbit of 0 itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyTable {
    prime: Prime,
    level: u32,
    psi: Vec<u64>,
    psi_inverse: Vec<u64>,
}

impl ConjugacyTable {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn modulus(&self) -> u64 {
        self.psi.len() as u64
    }

    pub fn psi(&self) -> &[u64] {
        &self.psi
    }

    /// `psi_inverse[k] = f^k(0)`.
    pub fn psi_inverse(&self) -> &[u64] {
        &self.psi_inverse
    }

    /// Whether `psi(f(x)) = psi(x) + 1` for every residue, with `f` evaluated afresh.
    pub fn conjugates(&self, f: &IntPolynomial) -> bool {
        let m = self.modulus();
        let g = ModPoly::new(f, m);
        (0..m).all(|x| self.psi[g.eval(x) as usize] == (self.psi[x as usize] + 1) % m)
    }

    /// Whether this table reduces to `lower`: `psi_n(x mod p^n) = psi_(n+1)(x) mod p^n`.
    pub fn refines(&self, lower: &ConjugacyTable) -> bool {
        let m = lower.modulus();
        self.psi.iter().enumerate().all(|(x, &k)| lower.psi[x % m as usize] == k % m)
    }

    /// Two-column text, one `x psi[x]` pair per line.
    pub fn write_text(&self, mut w: impl Write) -> io::Result<()> {
        for (x, k) in self.psi.iter().enumerate() {
            writeln!(w, "{x} {k}")?;
        }
        Ok(())
    }
}

impl IntPolynomial {
    /// ```
    /// use padic_minimality::{IntPolynomial, Limits};
    ///
    /// let f = IntPolynomial::from_i64(3, &[1, 1, 6]).unwrap();
    /// let t = f.build_psi(2, &Limits::default()).unwrap();
    /// assert_eq!(t.psi_inverse(), &[0, 1, 8, 6, 7, 5, 3, 4, 2]);
    /// assert_eq!(t.psi()[8], 2);
    /// ```
    pub fn build_psi(&self, level: u32, limits: &Limits) -> Result<ConjugacyTable> {
        if level == 0 {
            return Err(Error::Unsupported("level must be at least 1".into()));
        }
        let size = limits.table_size(self.prime(), level)?;
        let f = ModPoly::new(self, size);
        let mut psi = vec![u64::MAX; size as usize];
        let mut psi_inverse = Vec::with_capacity(size as usize);
        let mut x = 0u64;
        for k in 0..size {
            if psi[x as usize] != u64::MAX {
                return Err(Error::NotFullCycle { level });
            }
            psi[x as usize] = k;
            psi_inverse.push(x);
            x = f.eval(x);
        }
        if x != 0 {
            return Err(Error::NotFullCycle { level });
        }
        Ok(ConjugacyTable { prime: self.prime(), level, psi, psi_inverse })
    }

    /// Build `psi` at levels `1..=n_max` and check the conjugation identity at
    /// each level and compatibility between neighbours.
    pub fn verify_conjugacy_tower(&self, n_max: u32, limits: &Limits) -> Result<TowerReport> {
        let mut levels = Vec::with_capacity(n_max as usize);
        let mut previous: Option<ConjugacyTable> = None;
        for level in 1..=n_max {
            let table = self.build_psi(level, limits)?;
            levels.push(TowerLevel {
                level,
                conjugates: table.conjugates(self),
                compatible: previous.as_ref().map(|lower| table.refines(lower)),
            });
            previous = Some(table);
        }
        Ok(TowerReport { levels })
    }

    /// The orbit of `seed` under `f_{/n}`, `count` values long.
    ///
    /// The stream needs proof that `f_{/n}` is one cycle: a minimality verdict
    /// from the level-`delta` rule when it holds (cheap, and valid at every
    /// level), otherwise an explicit full-cycle check at `level`.
    pub fn full_cycle_stream(&self, level: u32, seed: u64, count: u64, limits: &Limits) -> Result<FullCycleStream> {
        let modulus = self
            .prime()
            .checked_pow(level)
            .filter(|_| level > 0)
            .ok_or_else(|| Error::Unsupported(format!("streams need 1 <= p^n < 2^64, got level {level}")))?;
        let certificate = if minimal_general(self, limits)?.minimal {
            Certificate::Minimal
        } else if self.is_full_cycle(level, limits)?.full {
            Certificate::FullCycle
        } else {
            return Err(Error::NotFullCycle { level });
        };
        let seed = seed % modulus;
        Ok(FullCycleStream {
            map: ModPoly::new(self, modulus),
            prime: self.prime(),
            level,
            seed,
            next: seed,
            count,
            remaining: count,
            certificate,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub level: u32,
    pub conjugates: bool,
    /// Agreement with the level below; `None` at level 1.
    pub compatible: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerReport {
    pub levels: Vec<TowerLevel>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.conjugates && l.compatible != Some(false))
    }
}

/// Why a stream is known to have period `p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    Minimal,
    FullCycle,
}

/// Lazy iterator over `seed, f(seed), f(f(seed)), ...` mod `p^n`.
#[derive(Debug, Clone)]
pub struct FullCycleStream {
    map: ModPoly,
    prime: Prime,
    level: u32,
    seed: u64,
    next: u64,
    count: u64,
    remaining: u64,
    certificate: Certificate,
}

impl FullCycleStream {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn period(&self) -> u64 {
        self.map.modulus()
    }

    /// One decimal residue per line.
    pub fn write_decimal(self, mut w: impl Write) -> io::Result<()> {
        for x in self {
            writeln!(w, "{x}")?;
        }
        Ok(())
    }

    /// Header `p n count seed`, then each residue as its `n` base-`p` digits,
    /// least significant first. Digits are run together for `p <= 10` and
    /// separated by `.` otherwise.
    ///
    /// ```
    /// use padic_minimality::{IntPolynomial, Limits};
    ///
    /// let f = IntPolynomial::from_i64(2, &[1, 1]).unwrap();
    /// let s = f.full_cycle_stream(3, 0, 4, &Limits::default()).unwrap();
    /// let mut out = Vec::new();
    /// s.write_packed(&mut out).unwrap();
    /// assert_eq!(String::from_utf8(out).unwrap(), "2 3 4 0\n000\n100\n010\n110\n");
    /// ```
    pub fn write_packed(self, mut w: impl Write) -> io::Result<()> {
        let (p, n) = (self.prime.get(), self.level);
        writeln!(w, "{p} {n} {} {}", self.count, self.seed)?;
        let sep = if p <= 10 { "" } else { "." };
        let mut digits = Vec::with_capacity(n as usize);
        for mut x in self {
            digits.clear();
            for _ in 0..n {
                digits.push((x % p).to_string());
                x /= p;
            }
            writeln!(w, "{}", digits.join(sep))?;
        }
        Ok(())
    }
}

impl Iterator for FullCycleStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let x = self.next;
        self.next = self.map.eval(x);
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, usize::try_from(self.remaining).ok())
    }
}
