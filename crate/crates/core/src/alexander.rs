//! Knot-side inputs: the symmetrized Alexander polynomial, the torsion
//! coefficients `t_i` and the Turaev torsion of the knot exterior.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactmath::gcd;

/// Symmetrized Alexander polynomial `a_0 + sum_{j>0} a_j (T^j + T^-j)`,
/// stored as the nonnegative half `a_0, ..., a_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPoly {
    coeffs: Vec<i64>,
}

impl AlexanderPoly {
    /// Validates a coefficient list `a_0..a_g`. Trailing zeros are stripped and
    /// `Delta(1) = 1` is required.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let poly = Self::new_unchecked(coeffs)?;
        let value = poly.eval_at_one();
        if value != 1 {
            return Err(Error::Normalization { value });
        }
        Ok(poly)
    }

    /// Like [`AlexanderPoly::new`] without the `Delta(1) = 1` check, for
    /// experimenting with arbitrary sequences.
    pub fn new_unchecked(mut coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("empty coefficient list".into()));
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(AlexanderPoly { coeffs })
    }

    pub fn unknot() -> Self {
        AlexanderPoly { coeffs: vec![1] }
    }

    pub fn trefoil() -> Self {
        AlexanderPoly { coeffs: vec![-1, 1] }
    }

    pub fn figure_eight() -> Self {
        AlexanderPoly { coeffs: vec![3, -1] }
    }

    /// Alexander polynomial of the `(a, b)` torus knot,
    /// `(t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`, by exact polynomial division.
    pub fn torus_knot(a: i64, b: i64) -> Result<Self> {
        if a < 2 || b < 2 || gcd(a, b) != 1 {
            return Err(Error::InvalidInput(format!(
                "torus knot parameters must be coprime integers >= 2, got ({a}, {b})"
            )));
        }
        let ab = usize::try_from(a * b)
            .map_err(|_| Error::InvalidInput("torus knot parameters too large".into()))?;
        // (t^{ab} - 1)(t - 1) = t^{ab+1} - t^{ab} - t + 1
        let mut numer = vec![0i64; ab + 2];
        numer[ab + 1] += 1;
        numer[ab] -= 1;
        numer[1] -= 1;
        numer[0] += 1;
        let quotient = divide_by_binomial(&divide_by_binomial(&numer, a as usize)?, b as usize)?;
        let g = ((a - 1) * (b - 1) / 2) as usize;
        debug_assert_eq!(quotient.len(), 2 * g + 1);
        debug_assert!((0..=g).all(|j| quotient[g + j] == quotient[g - j]));
        AlexanderPoly::new(quotient[g..].to_vec())
    }

    /// Degree `g`, the largest `j` with `a_j != 0` (0 for constants).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `a_j` for any integer `j`, using `a_{-j} = a_j`.
    pub fn coeff(&self, j: i64) -> i64 {
        usize::try_from(j.unsigned_abs())
            .ok()
            .and_then(|j| self.coeffs.get(j).copied())
            .unwrap_or(0)
    }

    /// `Delta(1) = a_0 + 2 sum_{j>=1} a_j`.
    pub fn eval_at_one(&self) -> i128 {
        let tail: i128 = self.coeffs[1..].iter().map(|&a| i128::from(a)).sum();
        i128::from(self.coeffs[0]) + 2 * tail
    }

    /// `t_i = sum_{j>=1} j a_{|i|+j}`.
    pub fn t_coeff(&self, i: i64) -> i128 {
        let start = i.unsigned_abs() as usize;
        self.coeffs
            .iter()
            .enumerate()
            .skip(start + 1)
            .map(|(idx, &a)| (idx - start) as i128 * i128::from(a))
            .sum()
    }

    /// `sum_{j >= from} a_j` for `from >= 1`, zero when `from > g`.
    pub fn tail_sum(&self, from: usize) -> i128 {
        self.coeffs.iter().skip(from).map(|&a| i128::from(a)).sum()
    }

    /// Turaev torsion of the knot exterior on the relative Spin^c structure
    /// labelled by the odd integer `k`: `sign(k) sum_{j >= (|k|+1)/2} a_j`.
    pub fn rel_torsion(&self, k: i64) -> Result<i128> {
        if k % 2 == 0 {
            return Err(Error::InvalidLabel(k));
        }
        let from = k.unsigned_abs().div_ceil(2) as usize;
        Ok(k.signum() as i128 * self.tail_sum(from))
    }

    /// `sum_{j>=1} j^2 a_j`, the knot's contribution to the Casson-Walker
    /// surgery formula.
    pub fn second_moment(&self) -> i128 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &a)| (j as i128) * (j as i128) * i128::from(a))
            .sum()
    }

    /// Rebuilds the polynomial whose torsion coefficients are
    /// `t_0, t_1, ..., t_m` followed by zeros, via `a_j = t_{j-1} - 2 t_j + t_{j+1}`
    /// and `a_0` from the normalization.
    pub fn from_torsion_coefficients(t: &[i128]) -> Result<Self> {
        let at = |i: usize| t.get(i).copied().unwrap_or(0);
        let overflow = || Error::InvalidInput("torsion coefficients too large".into());
        let mut coeffs = vec![0i64; t.len() + 1];
        let mut tail = 0i128;
        for (j, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let a = at(j - 1) - 2 * at(j) + at(j + 1);
            *slot = i64::try_from(a).map_err(|_| overflow())?;
            tail += a;
        }
        coeffs[0] = i64::try_from(1 - 2 * tail).map_err(|_| overflow())?;
        AlexanderPoly::new(coeffs)
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for AlexanderPoly {
    type Err = Error;

    /// Parses a comma-separated list `a0,a1,...,ag` and validates it.
    fn from_str(s: &str) -> Result<Self> {
        AlexanderPoly::new(parse_coeff_list(s)?)
    }
}

/// Parses `a0,a1,...` without validating the normalization.
pub fn parse_coeff_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad Alexander coefficient {part:?}")))
        })
        .collect()
}

/// Exact division of an integer polynomial (ascending coefficients) by
/// `t^n - 1`.
fn divide_by_binomial(numer: &[i64], n: usize) -> Result<Vec<i64>> {
    let mut rem = numer.to_vec();
    let deg = rem.len() - 1;
    if deg < n {
        return Err(Error::InvalidInput("polynomial division degree mismatch".into()));
    }
    let mut quotient = vec![0i64; deg - n + 1];
    for i in (0..=deg - n).rev() {
        let c = rem[i + n];
        quotient[i] = c;
        rem[i + n] -= c;
        rem[i] += c;
    }
    if rem.iter().any(|&r| r != 0) {
        return Err(Error::InvalidInput("polynomial division left a remainder".into()));
    }
    Ok(quotient)
}
