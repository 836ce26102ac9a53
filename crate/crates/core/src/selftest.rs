//! Randomized invariant suite behind the `selftest` subcommand.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alexander::AlexanderPoly;
use crate::exactmath::{gcd, Rational};
use crate::exec::Execution;
use crate::surgery::{
    conjugate_label, has_short_support, s_column_signed, s_diff_simplified, torsion_sum,
    SurgerySlope,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2003;
pub const DEFAULT_CASES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfTestConfig {
    pub seed: u64,
    pub cases: usize,
    pub exec: Execution,
    /// Negative control: flips the sign of the torsion term in the `S` formula.
    #[doc(hidden)]
    pub inject_fault: bool,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            seed: DEFAULT_SEED,
            cases: DEFAULT_CASES,
            exec: Execution::default(),
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfTestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures == 0 && s.checks > 0)
    }
}

impl fmt::Display for SelfTestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "selftest seed={}", self.seed)?;
        for s in &self.suites {
            let status = if s.failures == 0 && s.checks > 0 { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<16} cases={} checks={} failures={}",
                s.name, s.cases, s.checks, s.failures
            )?;
        }
        let verdict = if self.all_passed() { "all suites passed" } else { "FAILED" };
        writeln!(f, "{verdict}")
    }
}

/// A random knot polynomial with `Delta(1) = 1` and degree `1..=max_degree`.
pub fn random_knot(rng: &mut impl Rng, max_degree: usize) -> AlexanderPoly {
    let g = rng.gen_range(1..=max_degree);
    let mut coeffs = vec![0i64; g + 1];
    for a in coeffs.iter_mut().skip(1) {
        *a = rng.gen_range(-4..=4);
    }
    if coeffs[g] == 0 {
        coeffs[g] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    coeffs[0] = 1 - 2 * coeffs[1..].iter().sum::<i64>();
    AlexanderPoly::new(coeffs).expect("normalized by construction")
}

/// A random slope with `2g < p <= max_p` and `1 <= |q| <= max_q`.
pub fn random_slope(rng: &mut impl Rng, g: usize, max_p: i64, max_q: i64) -> SurgerySlope {
    loop {
        let p = rng.gen_range((2 * g as i64 + 1)..=max_p);
        let q = rng.gen_range(1..=max_q) * if rng.gen_bool(0.5) { 1 } else { -1 };
        if gcd(p, q) == 1 {
            return SurgerySlope::new(p, q).expect("coprime");
        }
    }
}

#[derive(Default)]
struct Tally {
    equivalence: SuiteResult,
    recurrence: SuiteResult,
    sum_rule: SuiteResult,
    conjugation: SuiteResult,
}

pub fn run_selftest(config: &SelfTestConfig) -> SelfTestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let cases: Vec<(AlexanderPoly, SurgerySlope)> = (0..config.cases)
        .map(|_| {
            let knot = random_knot(&mut rng, 5);
            let slope = random_slope(&mut rng, knot.degree(), 200, 7);
            (knot, slope)
        })
        .collect();
    let sign = if config.inject_fault { -1 } else { 1 };

    let per_case = config.exec.map_slice(&cases, |(knot, slope)| {
        let mut t = Tally::default();
        let p = slope.p();
        let s = s_column_signed(knot, slope, sign, Execution::Sequential);
        let at = |l: i64| &s[slope.label(l) as usize];

        if has_short_support(knot, slope) {
            t.equivalence.cases = 1;
            for l in 0..p {
                t.equivalence.checks += 1;
                if s_diff_simplified(knot, slope, l).ok().as_ref() != Some(at(l)) {
                    t.equivalence.failures += 1;
                }
            }
        }

        t.recurrence.cases = 1;
        for i in 0..p {
            t.recurrence.checks += 1;
            let lhs = at(i + slope.x()) - at(i);
            if lhs != Rational::from(torsion_sum(knot, slope, i)) {
                t.recurrence.failures += 1;
            }
        }

        t.sum_rule.cases = 1;
        t.sum_rule.checks = 1;
        let total: Rational = s.iter().sum();
        if total != Rational::from(i128::from(slope.q()) * knot.second_moment()) {
            t.sum_rule.failures = 1;
        }

        if p % 2 == 1 {
            t.conjugation.cases = 1;
            for l in 0..p {
                t.conjugation.checks += 1;
                let c = conjugate_label(slope, l).expect("odd p");
                if at(c) != at(l) {
                    t.conjugation.failures += 1;
                }
            }
        }
        t
    });

    let mut total = Tally {
        equivalence: SuiteResult { name: "direct-simple", ..Default::default() },
        recurrence: SuiteResult { name: "recurrence", ..Default::default() },
        sum_rule: SuiteResult { name: "sum-rule", ..Default::default() },
        conjugation: SuiteResult { name: "conjugation", ..Default::default() },
    };
    for t in per_case {
        for (acc, part) in [
            (&mut total.equivalence, t.equivalence),
            (&mut total.recurrence, t.recurrence),
            (&mut total.sum_rule, t.sum_rule),
            (&mut total.conjugation, t.conjugation),
        ] {
            acc.cases += part.cases;
            acc.checks += part.checks;
            acc.failures += part.failures;
        }
    }
    SelfTestReport {
        seed: config.seed,
        suites: vec![total.equivalence, total.recurrence, total.sum_rule, total.conjugation],
    }
}
