//! Output records. Each renders as text via `Display` and as JSON via serde;
//! the JSON field names are part of the command-line interface.

use std::fmt;

use padic_minimality::{
    Analysis, Certificate, ConjugacyTable, CycleDecomposition, FullCycleStream, IntPolynomial, MinimalityVerdict,
    SweepReport, SweepSpec, TowerLevel, TowerReport,
};
use serde::{Deserialize, Serialize};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeRecord {
    pub prime: u64,
    pub coeffs: String,
    pub polynomial: String,
    pub minimal: bool,
    /// Whether every closed form agrees with the delta rule.
    pub agreement: bool,
    /// Closed-form verdicts first, the delta rule last.
    pub verdicts: Vec<MinimalityVerdict>,
}

impl AnalyzeRecord {
    pub fn new(f: &IntPolynomial, analysis: Analysis) -> Self {
        let minimal = analysis.minimal();
        let mut verdicts = analysis.closed_form;
        verdicts.push(analysis.delta_rule);
        AnalyzeRecord {
            prime: f.prime().get(),
            coeffs: f.to_coeff_string(),
            polynomial: f.to_string(),
            minimal,
            agreement: analysis.agreement,
            verdicts,
        }
    }
}

impl fmt::Display for AnalyzeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {} over Z_{}", self.polynomial, self.prime)?;
        for v in &self.verdicts {
            writeln!(f)?;
            write!(f, "{v}")?;
        }
        writeln!(f)?;
        writeln!(f, "agreement: {}", yes_no(self.agreement))?;
        writeln!(f, "verdict: {}", if self.minimal { "minimal" } else { "not minimal" })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclesRecord {
    pub prime: u64,
    pub coeffs: String,
    pub level: u32,
    pub bijective: bool,
    pub full_cycle: bool,
    pub cycle_count: usize,
    pub non_periodic: u64,
    pub cycles: Vec<Vec<u64>>,
}

impl CyclesRecord {
    pub fn new(f: &IntPolynomial, d: &CycleDecomposition) -> Self {
        CyclesRecord {
            prime: f.prime().get(),
            coeffs: f.to_coeff_string(),
            level: d.level,
            bijective: d.bijective,
            full_cycle: d.is_full_cycle(),
            cycle_count: d.cycle_count(),
            non_periodic: d.non_periodic_count,
            cycles: d.cycles.clone(),
        }
    }
}

impl fmt::Display for CyclesRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "level {} (mod {}^{})", self.level, self.prime, self.level)?;
        writeln!(f, "bijective: {}", yes_no(self.bijective))?;
        writeln!(f, "full cycle: {}", yes_no(self.full_cycle))?;
        writeln!(f, "cycles: {}", self.cycle_count)?;
        if !self.bijective {
            writeln!(f, "not on a cycle: {}", self.non_periodic)?;
        }
        for c in &self.cycles {
            let items: Vec<String> = c.iter().map(u64::to_string).collect();
            writeln!(f, "  length {}: ({})", c.len(), items.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRecord {
    pub prime: u64,
    pub coeffs: String,
    pub level: u32,
    /// `psi[x]` for `x` in `0..p^level`.
    pub psi: Vec<u64>,
}

impl PsiRecord {
    pub fn new(f: &IntPolynomial, t: &ConjugacyTable) -> Self {
        PsiRecord { prime: f.prime().get(), coeffs: f.to_coeff_string(), level: t.level(), psi: t.psi().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRecord {
    pub prime: u64,
    pub coeffs: String,
    pub passed: bool,
    pub levels: Vec<TowerLevel>,
}

impl TowerRecord {
    pub fn new(f: &IntPolynomial, r: TowerReport) -> Self {
        TowerRecord { prime: f.prime().get(), coeffs: f.to_coeff_string(), passed: r.passed(), levels: r.levels }
    }
}

impl fmt::Display for TowerRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ok = |b: bool| if b { "pass" } else { "FAIL" };
        for l in &self.levels {
            write!(f, "level {}: conjugation {}", l.level, ok(l.conjugates))?;
            match l.compatible {
                Some(c) => writeln!(f, ", compatible with level {}: {}", l.level - 1, ok(c))?,
                None => writeln!(f)?,
            }
        }
        writeln!(f, "tower: {}", ok(self.passed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreamRecord {
    pub prime: u64,
    pub level: u32,
    pub seed: u64,
    pub count: u64,
    pub certificate: Certificate,
    pub values: Vec<u64>,
}

impl StreamRecord {
    pub fn new(f: &IntPolynomial, level: u32, stream: FullCycleStream) -> Self {
        let (seed, certificate) = (stream.seed(), stream.certificate());
        let values: Vec<u64> = stream.collect();
        StreamRecord { prime: f.prime().get(), level, seed, count: values.len() as u64, certificate, values }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub constant: i64,
    pub degree: usize,
    pub bound: u64,
    pub levels: u32,
    pub report: SweepReport,
}

impl SweepRecord {
    pub fn new(spec: &SweepSpec, report: SweepReport) -> Self {
        let b = &spec.coeff_box;
        SweepRecord { constant: b.constant, degree: b.degree, bound: b.bound, levels: spec.levels(), report }
    }
}

impl fmt::Display for SweepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.report;
        write!(
            f,
            "sweep over Z_{}: a0 = {}, degree <= {}, coefficients in [0,{}), levels 1..={}, ",
            r.prime, self.constant, self.degree, self.bound, self.levels
        )?;
        match r.mode {
            padic_minimality::SweepMode::Exhaustive => writeln!(f, "exhaustive")?,
            padic_minimality::SweepMode::Sampled { seed, samples } => writeln!(f, "{samples} samples, seed {seed}")?,
        }
        writeln!(f, "tuples:              {}", r.total)?;
        writeln!(f, "constant (skipped):  {}", r.degenerate)?;
        writeln!(f, "agree, minimal:      {}", r.agree_minimal)?;
        writeln!(f, "agree, not minimal:  {}", r.agree_nonminimal)?;
        writeln!(f, "disagreements:       {}", r.disagreements)?;
        if let Some(c) = &r.first_counterexample {
            let coeffs: Vec<String> = c.coeffs.iter().map(i64::to_string).collect();
            writeln!(f, "first counterexample: #{} coeffs {}", c.index, coeffs.join(","))?;
            for issue in &c.issues {
                writeln!(f, "  {issue}")?;
            }
        }
        Ok(())
    }
}
