//! Checks of the torsion-coefficient symmetry satisfied by surgeries on knots,
//! and the resulting L-space surgery obstruction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::alexander::AlexanderPoly;
use crate::error::{Error, Result};
use crate::exactmath::{modulo, Rational};
use crate::exec::Execution;
use crate::lens::LensTable;
use crate::surgery::{s_column_signed, EulTable, SurgerySlope};

/// Largest `w` with `|i| <= p/(2q)` for all `|i| <= w`. Requires `q > 0`.
pub fn window_radius(slope: &SurgerySlope) -> i64 {
    slope.p() / (2 * slope.q())
}

fn require_large_slope(slope: &SurgerySlope) -> Result<()> {
    if slope.q() > 0 && slope.p() > slope.q() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "slope must satisfy p/q > 1, got {}/{}",
            slope.p(),
            slope.q()
        )))
    }
}

/// The base label `r = ceil(pn/q - 1) mod p` of the `n`-th window.
pub fn window_center(slope: &SurgerySlope, n: i64) -> i64 {
    let value = Rational::new(
        BigInt::from(slope.p()) * BigInt::from(n) - BigInt::from(slope.q()),
        slope.q(),
    )
    .expect("q != 0");
    let p = BigInt::from(slope.p());
    let r = crate::exactmath::ceil_q(&value) % &p;
    let r = (r + &p) % &p;
    r.to_i64().expect("residue below p")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowCheck {
    pub i: i64,
    pub label: i64,
    /// `t_i(K)`
    pub expected: i128,
    /// `S_{r+i}`
    pub actual: Rational,
}

impl WindowCheck {
    pub fn holds(&self) -> bool {
        self.actual == Rational::from(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: i64,
    pub r: i64,
    pub checks: Vec<WindowCheck>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(WindowCheck::holds)
    }
}

/// Checks `S_{r+i} = t_i` for all `|i| <= p/(2q)` where `r = ceil(pn/q - 1)`.
///
/// Requires `p/q > 1` and `a_j = 0` for `j > p/(2q) + 1`.
pub fn verify_theorem12(knot: &AlexanderPoly, slope: &SurgerySlope, n: i64) -> Result<TheoremReport> {
    require_large_slope(slope)?;
    // a_g != 0, so the support hypothesis is 2q (g - 1) <= p
    let g = knot.degree() as i128;
    if g > 1 && 2 * i128::from(slope.q()) * (g - 1) > i128::from(slope.p()) {
        return Err(Error::Precondition(format!(
            "need a_j = 0 for j > p/(2q) + 1, but a_{g} != 0 with p/q = {}/{}",
            slope.p(),
            slope.q()
        )));
    }
    let s = s_column_signed(knot, slope, 1, Execution::Sequential);
    let r = window_center(slope, n);
    let w = window_radius(slope);
    let checks = (-w..=w)
        .map(|i| {
            let label = slope.label(r + i);
            WindowCheck {
                i,
                label,
                expected: knot.t_coeff(i),
                actual: s[label as usize].clone(),
            }
        })
        .collect();
    Ok(TheoremReport { n, r, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallSlopeReport {
    /// `ceil(q/p) a_1`
    pub expected: BigInt,
    pub s_column: Vec<Rational>,
    /// Labels where `S_l` is nonzero.
    pub nonzero_labels: Vec<i64>,
    /// Whether `S_{p-1}` carries the expected value.
    pub at_minus_one: bool,
    /// Whether every `S_l` is `floor(q/p) a_1` or `ceil(q/p) a_1`.
    pub floor_or_ceil: bool,
    pub passed: bool,
}

/// For `p/q <= 1` and `a_j = 0` for `j > 1`: checks that the `S` column is
/// `ceil(q/p) a_1` at exactly one label and zero elsewhere.
pub fn small_slope_check(knot: &AlexanderPoly, slope: &SurgerySlope) -> Result<SmallSlopeReport> {
    if slope.q() > 0 && slope.p() > slope.q() {
        return Err(Error::Precondition(format!(
            "slope must satisfy p/q <= 1, got {}/{}",
            slope.p(),
            slope.q()
        )));
    }
    if knot.degree() > 1 {
        return Err(Error::Precondition(format!(
            "need a_j = 0 for j > 1, but the degree is {}",
            knot.degree()
        )));
    }
    let a1 = BigInt::from(knot.coeff(1));
    let ratio = Rational::new(slope.q(), slope.p()).expect("p >= 1");
    let expected = ratio.ceil() * &a1;
    let floor_value = Rational::from(ratio.floor() * &a1);
    let expected_q = Rational::from(expected.clone());
    let s_column = s_column_signed(knot, slope, 1, Execution::Sequential);
    let nonzero_labels: Vec<i64> = s_column
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(l, _)| l as i64)
        .collect();
    let last = (slope.p() - 1) as usize;
    let at_minus_one = s_column[last] == expected_q;
    let floor_or_ceil = s_column
        .iter()
        .all(|s| *s == floor_value || *s == expected_q);
    let passed = if expected_q.is_zero() {
        nonzero_labels.is_empty()
    } else {
        nonzero_labels.len() == 1 && s_column[nonzero_labels[0] as usize] == expected_q
    };
    Ok(SmallSlopeReport {
        expected,
        s_column,
        nonzero_labels,
        at_minus_one,
        floor_or_ceil,
        passed,
    })
}

/// An affine relabeling `l -> shift + l` or, when reflected, `l -> shift - l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identification {
    pub shift: i64,
    pub reflected: bool,
}

impl Identification {
    pub fn apply(&self, l: i64, p: i64) -> i64 {
        if self.reflected {
            modulo(self.shift - l, p)
        } else {
            modulo(self.shift + l, p)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// Extracted `t_i` is not an integer.
    NonInteger,
    /// `t_i != t_{-i}`.
    Asymmetric,
    /// Extracted `t_i < 0` (strict mode only).
    Negative,
    /// Label disagrees with the table predicted from the extracted `t_i`.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub label: i64,
    pub kind: ViolationKind,
    pub expected: Option<Rational>,
    pub actual: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// Outcome of [`lspace_obstruction`]. On a pass, `identification` is the
/// witness; on a failure, it is the identification with the fewest violations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub verdict: Verdict,
    pub identification: Identification,
    /// `|i| -> t_i` for `|i| <= p/(2q)`; all larger `t_i` are zero.
    pub t_sequence: BTreeMap<u64, Rational>,
    pub violations: Vec<Violation>,
    /// Alexander polynomial rebuilt from `t_sequence`, when it could be formed.
    pub reconstructed: Option<AlexanderPoly>,
}

impl ObstructionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn witness_shift(&self) -> Option<i64> {
        self.passed().then_some(self.identification.shift)
    }

    pub fn reflected(&self) -> bool {
        self.identification.reflected
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ObstructionOptions {
    /// Also require every extracted `t_i` to be nonnegative.
    pub strict: bool,
    pub exec: Execution,
}

/// Correction terms of an L-space with the given table, `d = -2 Eul`.
pub fn lspace_d_values(table: &EulTable) -> Vec<Rational> {
    table
        .rows()
        .iter()
        .map(|row| -(row.eul_knot.clone() * Rational::from(2)))
        .collect()
}

/// Tests whether `d_candidate` (indexed by label `0..p`) can be the correction
/// terms of an L-space obtained by `p/q` surgery on a knot, under some affine
/// identification of labels.
///
/// For each identification the differences
/// `t_i = -(d(i - 1) - d_lens(i - 1))/2`, `|i| <= p/(2q)`, must be integers
/// depending only on `|i|`. Setting all further `t_i` to zero determines the
/// Alexander polynomial, and the full predicted table must match every label.
pub fn lspace_obstruction(
    d_candidate: &[Rational],
    slope: &SurgerySlope,
    options: ObstructionOptions,
) -> Result<ObstructionReport> {
    require_large_slope(slope)?;
    let p = slope.p();
    if d_candidate.len() != p as usize {
        return Err(Error::InvalidInput(format!(
            "expected {p} correction terms, got {}",
            d_candidate.len()
        )));
    }
    let lens = LensTable::new(slope.lens_params());
    let candidates: Vec<Identification> = (0..p)
        .flat_map(|shift| {
            [false, true].map(|reflected| Identification { shift, reflected })
        })
        .collect();
    let reports = options.exec.map_slice(&candidates, |ident| {
        examine(d_candidate, slope, &lens, *ident, options.strict)
    });
    let chosen = reports
        .iter()
        .find(|r| r.passed())
        .or_else(|| reports.iter().min_by_key(|r| r.violations.len()))
        .expect("at least one identification");
    Ok(chosen.clone())
}

fn examine(
    d_candidate: &[Rational],
    slope: &SurgerySlope,
    lens: &LensTable,
    ident: Identification,
    strict: bool,
) -> ObstructionReport {
    let p = slope.p();
    let half = Rational::new(1, 2).expect("constant");
    let diff = |l: i64| -> Rational {
        let l = modulo(l, p);
        -((&d_candidate[ident.apply(l, p) as usize] - lens.d(l)) * &half)
    };
    let w = window_radius(slope);
    let mut violations = Vec::new();
    let mut t_sequence = BTreeMap::new();

    for i in -w..=w {
        let value = diff(i - 1);
        if !value.is_integer() {
            violations.push(Violation {
                label: modulo(i - 1, p),
                kind: ViolationKind::NonInteger,
                expected: None,
                actual: value.clone(),
            });
        }
        if i >= 0 {
            if strict && value.is_negative() {
                violations.push(Violation {
                    label: modulo(i - 1, p),
                    kind: ViolationKind::Negative,
                    expected: None,
                    actual: value.clone(),
                });
            }
            t_sequence.insert(i as u64, value);
        }
    }
    for i in 1..=w {
        let plus = &t_sequence[&(i as u64)];
        let minus = diff(-i - 1);
        if &minus != plus {
            violations.push(Violation {
                label: modulo(-i - 1, p),
                kind: ViolationKind::Asymmetric,
                expected: Some(plus.clone()),
                actual: minus,
            });
        }
    }

    let mut reconstructed = None;
    if violations.is_empty() {
        let t: Option<Vec<i128>> = t_sequence
            .values()
            .map(|v| v.to_integer().and_then(|n| n.to_i128()))
            .collect();
        match t.and_then(|t| AlexanderPoly::from_torsion_coefficients(&t).ok()) {
            Some(knot) => {
                let predicted = s_column_signed(&knot, slope, 1, Execution::Sequential);
                for (l, expected) in predicted.into_iter().enumerate() {
                    let actual = diff(l as i64);
                    if actual != expected {
                        violations.push(Violation {
                            label: l as i64,
                            kind: ViolationKind::Mismatch,
                            expected: Some(expected),
                            actual,
                        });
                    }
                }
                reconstructed = Some(knot);
            }
            None => violations.push(Violation {
                label: modulo(-1, p),
                kind: ViolationKind::Mismatch,
                expected: None,
                actual: t_sequence[&0].clone(),
            }),
        }
    }

    ObstructionReport {
        verdict: if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
        identification: ident,
        t_sequence,
        violations,
        reconstructed,
    }
}
