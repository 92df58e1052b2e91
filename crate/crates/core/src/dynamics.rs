//! Reduced maps `f_{/n}` on `Z/p^n Z`: tables, bijectivity, cycle structure
//! and the full-cycle test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::Prime;
use crate::poly::{IntPolynomial, ModPoly};

/// Default cap on materialized tables (entries).
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 24;
/// Default cap on orbit walks used once tables are out of reach.
pub const DEFAULT_WALK_BOUND: u64 = 1 << 32;

/// Size limits for exhaustive work on `Z/p^n Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub table_bound: u64,
    pub walk_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { table_bound: DEFAULT_TABLE_BOUND, walk_bound: DEFAULT_WALK_BOUND }
    }
}

impl Limits {
    pub fn with_table_bound(table_bound: u64) -> Self {
        Limits { table_bound, ..Limits::default() }
    }

    /// `p^n` if a table of that size is allowed.
    pub fn table_size(&self, prime: Prime, level: u32) -> Result<u64> {
        match prime.checked_pow(level) {
            Some(size) if size <= self.table_bound => Ok(size),
            _ => Err(Error::TableBoundExceeded { prime: prime.get(), level, bound: self.table_bound }),
        }
    }

    fn walk_size(&self, prime: Prime, level: u32) -> Result<u64> {
        match prime.checked_pow(level) {
            Some(size) if size <= self.walk_bound => Ok(size),
            _ => Err(Error::TableBoundExceeded { prime: prime.get(), level, bound: self.walk_bound }),
        }
    }
}

/// The values of `f_{/n}` on `0..p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMapTable {
    prime: Prime,
    level: u32,
    table: Vec<u64>,
}

impl ReducedMapTable {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn entries(&self) -> &[u64] {
        &self.table
    }

    pub fn modulus(&self) -> u64 {
        self.table.len() as u64
    }

    #[inline]
    pub fn get(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    /// The table one level down, obtained by reducing inputs and outputs
    /// mod `p^(n-1)`. Equal to `f_{/n-1}` for any polynomial.
    pub fn project(&self) -> Option<ReducedMapTable> {
        if self.level <= 1 {
            return None;
        }
        let m = self.modulus() / self.prime.get();
        let table = (0..m).map(|x| self.table[x as usize] % m).collect();
        Some(ReducedMapTable { prime: self.prime, level: self.level - 1, table })
    }

    /// For every class `i mod p^m`, the number of residues mod `p^n` whose
    /// image lies in that class.
    pub fn preimage_counts(&self, m: u32) -> Vec<u64> {
        let classes = self.prime.get().pow(m.min(self.level));
        let mut counts = vec![0u64; classes as usize];
        for &y in &self.table {
            counts[(y % classes) as usize] += 1;
        }
        counts
    }

    pub fn bijectivity(&self) -> Bijectivity {
        let mut first = vec![u64::MAX; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            let slot = &mut first[y as usize];
            if *slot != u64::MAX {
                return Bijectivity::Collision { x: *slot, y: x as u64, image: y };
            }
            *slot = x as u64;
        }
        Bijectivity::Bijective
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        decompose(self.level, &self.table)
    }
}

/// Outcome of [`IntPolynomial::is_bijective_mod`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bijectivity {
    Bijective,
    /// `x < y` with `f_{/n}(x) = f_{/n}(y) = image`.
    Collision { x: u64, y: u64, image: u64 },
}

impl Bijectivity {
    pub fn is_bijective(&self) -> bool {
        matches!(self, Bijectivity::Bijective)
    }
}

/// Cycles of `f_{/n}`, each starting at its least element, sorted by that element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition {
    pub level: u32,
    pub bijective: bool,
    pub cycles: Vec<Vec<u64>>,
    /// Residues that are not on any cycle.
    pub non_periodic_count: u64,
}

impl CycleDecomposition {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_full_cycle(&self) -> bool {
        self.bijective && self.cycles.len() == 1
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn cycle_containing(&self, x: u64) -> Option<&[u64]> {
        self.cycles.iter().find(|c| c.contains(&x)).map(Vec::as_slice)
    }
}

fn decompose(level: u32, table: &[u64]) -> CycleDecomposition {
    const UNSEEN: u32 = 0;
    let size = table.len();
    // mark[x] = 1 + index of the sweep that first reached x
    let mut mark = vec![UNSEEN; size];
    let mut cycles = Vec::new();
    let mut on_cycle = 0u64;
    let mut has_preimage = vec![false; size];
    for &y in table {
        has_preimage[y as usize] = true;
    }
    let bijective = has_preimage.iter().all(|&b| b);

    let mut sweep = 0u32;
    for start in 0..size {
        if mark[start] != UNSEEN {
            continue;
        }
        sweep += 1;
        let mut x = start;
        while mark[x] == UNSEEN {
            mark[x] = sweep;
            x = table[x] as usize;
        }
        if mark[x] == sweep {
            // x lies on a cycle first discovered in this sweep
            let mut cycle = vec![x as u64];
            let mut y = table[x] as usize;
            while y != x {
                cycle.push(y as u64);
                y = table[y] as usize;
            }
            let min_pos = cycle.iter().enumerate().min_by_key(|&(_, v)| v).map(|(i, _)| i).unwrap_or(0);
            cycle.rotate_left(min_pos);
            on_cycle += cycle.len() as u64;
            cycles.push(cycle);
        }
    }
    cycles.sort_by_key(|c| c[0]);
    CycleDecomposition { level, bijective, cycles, non_periodic_count: size as u64 - on_cycle }
}

/// How [`IntPolynomial::is_full_cycle`] reached its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FullCycleStrategy {
    Table,
    OrbitWalk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FullCycleCheck {
    pub full: bool,
    pub strategy: FullCycleStrategy,
}

/// Steps until the orbit of `start` first returns to `start`, if within `max` steps.
pub(crate) fn first_return(step: impl Fn(u64) -> u64, start: u64, max: u64) -> Option<u64> {
    let mut x = start;
    for k in 1..=max {
        x = step(x);
        if x == start {
            return Some(k);
        }
    }
    None
}

impl IntPolynomial {
    pub fn reduced_map_table(&self, level: u32, limits: &Limits) -> Result<ReducedMapTable> {
        if level == 0 {
            return Err(Error::Unsupported("level must be at least 1".into()));
        }
        let size = limits.table_size(self.prime(), level)?;
        let f = ModPoly::new(self, size);
        let table = (0..size).map(|x| f.eval(x)).collect();
        Ok(ReducedMapTable { prime: self.prime(), level, table })
    }

    pub fn is_bijective_mod(&self, level: u32, limits: &Limits) -> Result<Bijectivity> {
        Ok(self.reduced_map_table(level, limits)?.bijectivity())
    }

    pub fn cycle_decomposition(&self, level: u32, limits: &Limits) -> Result<CycleDecomposition> {
        Ok(self.reduced_map_table(level, limits)?.cycle_decomposition())
    }

    /// Whether `f_{/n}` is a single cycle of length `p^n`.
    ///
    /// Within the table bound the answer is read off the table. Above it,
    /// the orbit of 0 is followed with a step counter; the orbit returns to 0
    /// after exactly `p^n` steps iff it is a full cycle. A bijectivity check
    /// at the largest level that fits the table bound runs first.
    pub fn is_full_cycle(&self, level: u32, limits: &Limits) -> Result<FullCycleCheck> {
        if level == 0 {
            return Err(Error::Unsupported("level must be at least 1".into()));
        }
        if let Ok(table) = self.reduced_map_table(level, limits) {
            let size = table.modulus();
            let full = first_return(|x| table.get(x), 0, size) == Some(size);
            return Ok(FullCycleCheck { full, strategy: FullCycleStrategy::Table });
        }
        let size = limits.walk_size(self.prime(), level)?;
        let spot_level = (1..level).rev().find(|&k| limits.table_size(self.prime(), k).is_ok());
        if let Some(k) = spot_level {
            let lower = self.reduced_map_table(k, limits)?;
            if !lower.bijectivity().is_bijective() || first_return(|x| lower.get(x), 0, lower.modulus()) != Some(lower.modulus()) {
                return Ok(FullCycleCheck { full: false, strategy: FullCycleStrategy::OrbitWalk });
            }
        }
        let f = ModPoly::new(self, size);
        debug_assert_eq!(f.modulus(), size);
        let full = first_return(|x| f.eval(x), 0, size) == Some(size);
        Ok(FullCycleCheck { full, strategy: FullCycleStrategy::OrbitWalk })
    }

    /// The first `count` points of the orbit of `start` under `f_{/n}`.
    pub fn orbit_mod(&self, level: u32, start: u64, count: usize, limits: &Limits) -> Result<Vec<u64>> {
        let size = limits.walk_size(self.prime(), level)?;
        let f = ModPoly::new(self, size);
        let mut x = start % size;
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(x);
            x = f.eval(x);
        }
        Ok(out)
    }

    /// The cycle that the orbit of 0 falls into at `level`, found with
    /// Brent's algorithm so no table is needed.
    pub fn cycle_from_zero(&self, level: u32, limits: &Limits) -> Result<CycleWitness> {
        let size = limits.walk_size(self.prime(), level)?;
        let f = ModPoly::new(self, size);
        let (mut power, mut length) = (1u64, 1u64);
        let mut tortoise = 0u64;
        let mut hare = f.eval(0);
        while tortoise != hare {
            if power == length {
                tortoise = hare;
                power *= 2;
                length = 0;
            }
            hare = f.eval(hare);
            length += 1;
        }
        let mut least = hare;
        let mut x = hare;
        for _ in 0..length {
            x = f.eval(x);
            least = least.min(x);
        }
        let listed = length.min(WITNESS_LISTING_CAP as u64) as usize;
        let mut cycle = Vec::with_capacity(listed);
        let mut x = least;
        for _ in 0..listed {
            cycle.push(x);
            x = f.eval(x);
        }
        Ok(CycleWitness { level, length, cycle })
    }
}

/// Longest cycle listed in full inside a [`CycleWitness`].
pub const WITNESS_LISTING_CAP: usize = 4096;

/// A cycle of `f_{/n}`, listed from its least element (truncated past
/// [`WITNESS_LISTING_CAP`] entries).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub level: u32,
    pub length: u64,
    pub cycle: Vec<u64>,
}
