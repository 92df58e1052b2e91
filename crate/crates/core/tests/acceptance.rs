//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::panic;
use std::time::{Duration, Instant};

use padic_minimality::{
    minimal_degree5_z3, minimal_general, minimal_z2, minimal_z2_larin_form, minimal_z3, CoefficientBox, IntPolynomial,
    Limits, PadicApprox, Prime,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WITNESS_TIME: Duration = Duration::from_millis(1);
const WITNESS_RUNS: usize = 10;
const P2_SWEEP_TIME: Duration = Duration::from_secs(1);
const P3_SWEEP_TIME: Duration = Duration::from_secs(30);
const RANDOM_SAMPLES: usize = 500;
const FILTERED_SAMPLES: usize = 500;
const SAMPLING_SEED: u64 = 0x5eed_2024;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn limits() -> Limits {
    Limits::default()
}

fn poly(p: u64, c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(p, c).unwrap()
}

/// Independent oracle: does the orbit of 0 under `c` mod `p^n` return after exactly `p^n` steps?
fn oracle_full_cycle(p: i64, c: &[i64], n: u32) -> bool {
    let m = p.pow(n);
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

fn box_tuples(p: u64, degree: usize, bound: u64) -> (CoefficientBox, u64) {
    let b = CoefficientBox::new(Prime::new(p).unwrap(), 1, degree, bound).unwrap();
    let n = b.len().unwrap();
    (b, n)
}

fn minimal_in_box(p: u64, degree: usize, bound: u64) -> Vec<IntPolynomial> {
    let (b, _) = box_tuples(p, degree, bound);
    b.polynomials().filter(|f| minimal_general(f, &limits()).unwrap().minimal).collect()
}

/// `want` entries spread evenly over `items`.
fn spread<T: Clone>(items: &[T], want: usize) -> Vec<T> {
    assert!(items.len() >= want, "only {} candidates for {want}", items.len());
    (0..want).map(|i| items[i * items.len() / want].clone()).collect()
}

fn witnesses(p: u64, coeffs: &[i64], level2: &[u64], level3: &[u64]) -> Outcome {
    let l = limits();
    let mut best = Duration::MAX;
    let mut ok = true;
    for _ in 0..WITNESS_RUNS {
        let start = Instant::now();
        let f = poly(p, coeffs);
        let d2 = f.cycle_decomposition(2, &l).unwrap();
        let d3 = f.cycle_decomposition(3, &l).unwrap();
        let closed = if p == 2 { minimal_z2(&f).unwrap() } else { minimal_z3(&f).unwrap() };
        let delta = minimal_general(&f, &l).unwrap();
        best = best.min(start.elapsed());
        ok &= d2.is_full_cycle() && d2.cycles[0] == level2;
        ok &= d3.cycles.iter().any(|c| c == level3);
        ok &= !closed.minimal && !delta.minimal;
    }
    outcome(
        ok && best < WITNESS_TIME,
        format!("cycles and verdicts match: {ok}; best of {WITNESS_RUNS} runs {best:?} (limit {WITNESS_TIME:?})"),
    )
}

fn criterion_1() -> Outcome {
    witnesses(2, &[1, 3, 0, 2], &[0, 1, 2, 3], &[0, 1, 6, 3])
}

fn criterion_2() -> Outcome {
    witnesses(3, &[1, 4, 0, 4, 0, 2], &[0, 1, 2, 6, 7, 5, 3, 4, 8], &[0, 1, 11, 15, 7, 23, 3, 13, 17])
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let (b, n) = box_tuples(2, 4, 8);
    let (mut disagreements, mut constant, mut minimal) = (0u64, 0u64, 0u64);
    for i in 0..n {
        let c = b.coeffs_at(i);
        let oracle = oracle_full_cycle(2, &c, 3);
        let Ok(f) = IntPolynomial::from_i64(2, &c) else {
            // the constant map 1 has no full cycle
            constant += 1;
            disagreements += u64::from(oracle);
            continue;
        };
        let theorem = minimal_z2(&f).unwrap().minimal;
        let larin = minimal_z2_larin_form(&f).unwrap().minimal;
        let table = f.is_full_cycle(3, &limits()).unwrap().full;
        minimal += u64::from(oracle);
        disagreements += u64::from(!(theorem == larin && larin == table && table == oracle));
    }
    let t = start.elapsed();
    outcome(
        disagreements == 0 && t < P2_SWEEP_TIME,
        format!("{n} tuples ({constant} constant), {minimal} minimal, {disagreements} disagreements, {t:.2?} (limit {P2_SWEEP_TIME:?})"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (b, n) = box_tuples(3, 5, 9);
    let (mut disagreements, mut constant, mut minimal) = (0u64, 0u64, 0u64);
    for i in 0..n {
        let c = b.coeffs_at(i);
        let oracle = oracle_full_cycle(3, &c, 3);
        let Ok(f) = IntPolynomial::from_i64(3, &c) else {
            constant += 1;
            disagreements += u64::from(oracle);
            continue;
        };
        let theorem = minimal_z3(&f).unwrap().minimal;
        let corollary = minimal_degree5_z3(&f).unwrap().minimal;
        let table = f.is_full_cycle(3, &limits()).unwrap().full;
        minimal += u64::from(oracle);
        disagreements += u64::from(!(theorem == corollary && corollary == table && table == oracle));
    }
    let t = start.elapsed();
    outcome(
        disagreements == 0 && t < P3_SWEEP_TIME,
        format!(
            "{n} tuples ({constant} constant), {minimal} minimal, {disagreements} disagreements, {t:.2?} single-threaded (limit {P3_SWEEP_TIME:?})"
        ),
    )
}

/// Random polynomial of degree at most 4 with coefficients in `[0, p^4)`.
fn random_quartic(p: u64, rng: &mut ChaCha8Rng) -> IntPolynomial {
    loop {
        let c: Vec<i64> = (0..5).map(|_| rng.gen_range(0..p.pow(4)) as i64).collect();
        if let Ok(f) = IntPolynomial::from_i64(p, &c) {
            return f;
        }
    }
}

/// Random quartic with a full cycle mod `p^2`: pick a tuple mod `p` that is
/// already a full cycle mod `p`, then lift digits at random until level 2 is full.
fn random_full_quartic(p: u64, base: &[Vec<i64>], rng: &mut ChaCha8Rng) -> IntPolynomial {
    loop {
        let residues = &base[rng.gen_range(0..base.len())];
        let c: Vec<i64> = residues.iter().map(|&r| r + p as i64 * rng.gen_range(0..p.pow(3)) as i64).collect();
        let f = poly(p, &c);
        if f.is_full_cycle(2, &limits()).unwrap().full {
            return f;
        }
    }
}

fn delta_consistency(f: &IntPolynomial) -> bool {
    let l = limits();
    let full = |n| f.is_full_cycle(n, &l).unwrap().full;
    let verdict = minimal_general(f, &l).unwrap().minimal;
    verdict == full(2) && full(3) == full(2) && full(4) == full(2)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    let mut details = Vec::new();
    let mut violations = 0;
    for p in [5u64, 7] {
        let mut full_random = 0;
        for _ in 0..RANDOM_SAMPLES {
            let f = random_quartic(p, &mut rng);
            full_random += usize::from(f.is_full_cycle(2, &limits()).unwrap().full);
            violations += usize::from(!delta_consistency(&f));
        }
        let pi = p as i64;
        let base: Vec<Vec<i64>> = (0..pi.pow(5))
            .map(|code| (0..5).map(|i| code / pi.pow(i) % pi).collect::<Vec<i64>>())
            .filter(|c| c[1..].iter().any(|&a| a != 0) && oracle_full_cycle(pi, c, 1))
            .collect();
        for _ in 0..FILTERED_SAMPLES {
            let f = random_full_quartic(p, &base, &mut rng);
            violations += usize::from(!delta_consistency(&f));
        }
        details.push(format!("p={p}: {RANDOM_SAMPLES} random ({full_random} full mod p^2) + {FILTERED_SAMPLES} full mod p^2"));
    }
    outcome(violations == 0, format!("{}; {violations} violations, seed {SAMPLING_SEED:#x}", details.join("; ")))
}

fn criterion_6() -> Outcome {
    let l = limits();
    let (b, _) = box_tuples(3, 5, 9);
    let mut checks = [0u64; 3];
    let mut disagreements = 0;
    for f in b.polynomials() {
        for n in 1..=3u32 {
            if !f.is_full_cycle(n, &l).unwrap().full {
                break;
            }
            checks[n as usize - 1] += 1;
            let lifts = f.lift_check(n, &l).unwrap().lifts;
            disagreements += u64::from(lifts != f.is_full_cycle(n + 1, &l).unwrap().full);
        }
    }
    outcome(
        disagreements == 0,
        format!("checks at n=1,2,3: {:?}; {disagreements} disagreements", checks),
    )
}

fn criterion_7() -> Outcome {
    let prime = Prime::new(3).unwrap();
    let chosen = spread(&minimal_in_box(3, 5, 9), 100);
    let mut violations = 0;
    for f in &chosen {
        let fp0 = f.derivative(1).coeff(0);
        for n in 1..=2u32 {
            let zero = PadicApprox::zero(prime, n).unwrap();
            let image = f.evaluate(&zero).unwrap();
            let at_zero = f.taylor_data(n, &zero, n).unwrap().beta;
            let at_image = f.taylor_data(n, &image, n).unwrap().beta;
            let slope = PadicApprox::from_int(prime, n, &fp0).unwrap();
            violations += usize::from(at_image != at_zero.mul(&slope).unwrap());
        }
    }
    outcome(violations == 0, format!("{} polynomials, levels 1 and 2, {violations} violations", chosen.len()))
}

fn criterion_8() -> Outcome {
    let l = limits();
    let mut failures = 0;
    let mut details = Vec::new();
    for (p, degree, bound, n_max) in [(2u64, 4, 8, 6u32), (3, 5, 9, 4)] {
        let chosen = spread(&minimal_in_box(p, degree, bound), 50);
        for f in &chosen {
            let report = f.verify_conjugacy_tower(n_max, &l).unwrap();
            failures += usize::from(!report.passed() || report.levels.len() != n_max as usize);
        }
        details.push(format!("p={p}: {} polynomials to level {n_max}", chosen.len()));
    }
    outcome(failures == 0, format!("{}; {failures} failures", details.join(", ")))
}

fn criterion_9() -> Outcome {
    let l = limits();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
    let mut violations = 0;
    let mut streams = 0;
    for (p, degree, bound, n) in [(2u64, 4, 8, 10u32), (3, 5, 9, 6)] {
        let period = p.pow(n);
        for f in spread(&minimal_in_box(p, degree, bound), 4) {
            for seed in [0, rng.gen_range(0..period)] {
                streams += 1;
                let values: Vec<u64> = f.full_cycle_stream(n, seed, period + 1, &l).unwrap().collect();
                let first_return = values[1..].iter().position(|&x| x == seed).map(|i| i as u64 + 1);
                violations += usize::from(first_return != Some(period));
                for m in 1..=n {
                    let classes = p.pow(m);
                    let mut counts = vec![0u64; classes as usize];
                    for &x in &values[..period as usize] {
                        counts[(x % classes) as usize] += 1;
                    }
                    violations += usize::from(counts.iter().any(|&c| c != p.pow(n - m)));
                }
            }
        }
    }
    outcome(violations == 0, format!("{streams} streams at (2,10) and (3,6); {violations} violations"))
}

fn valuation(d: u64, p: u64, cap: u32) -> u32 {
    if d == 0 {
        return cap;
    }
    let mut v = 0;
    let mut d = d;
    while d.is_multiple_of(p) {
        d /= p;
        v += 1;
    }
    v
}

fn criterion_10() -> Outcome {
    let l = limits();
    let mut bijective = 0u64;
    let mut violations = 0u64;
    for (p, degree, bound) in [(2u64, 4usize, 8u64), (3, 5, 9)] {
        let (b, _) = box_tuples(p, degree, bound);
        for f in b.polynomials() {
            let table = f.reduced_map_table(3, &l).unwrap();
            if !table.bijectivity().is_bijective() {
                continue;
            }
            bijective += 1;
            let m = table.modulus();
            for x in 0..m {
                for y in x + 1..m {
                    let dy = (table.get(x) + m - table.get(y)) % m;
                    violations += u64::from(valuation(dy, p, 3) != valuation(y - x, p, 3));
                }
            }
            for level in 1..=3 {
                let expected = p.pow(3 - level);
                violations += u64::from(table.preimage_counts(level).iter().any(|&c| c != expected));
            }
        }
    }
    outcome(violations == 0, format!("{bijective} bijective maps at level 3; {violations} violations"))
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    let mut failed = 0;
    for (i, run) in criteria.into_iter().enumerate() {
        let result = panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked"));
        println!("criterion {}: {} {}", i + 1, if result.pass { "PASS" } else { "FAIL" }, result.detail);
        failed += usize::from(!result.pass);
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
}
