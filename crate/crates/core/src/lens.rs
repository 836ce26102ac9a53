//! Correction terms of lens spaces, i.e. of `p/q` surgery on the unknot.
//!
//! Values come from the recursion
//!
//! ```text
//! d(p, q, i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(q, p mod q, i mod q),   d(1, 0, 0) = 0
//! ```
//!
//! indexed by its own "recursion index" `i`. The surgery module labels
//! Spin^c structures by `l`, where the relative structure `2l + 1` of the knot
//! exterior extends. The two labelings are related by
//! `i = q (l + LABEL_SHIFT) mod p`; see [`recursion_index`].

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::{gcd, modulo, Rational};

/// Overall sign applied to the recursion. With `+1` the recursion gives
/// `d(S^3_{p/q}(U))` directly: `p = 3, q = 1` yields `{1/2, -1/6, -1/6}`,
/// the negation of the values for the negative definite `-3` disk bundle.
pub const RECURSION_SIGN: i64 = 1;

/// Surgery label `l` sits at recursion index `q (l + LABEL_SHIFT) mod p`.
/// Pinned by matching `d_lens - 2 S` against the rational surgery formula for
/// L-space knots, `d(L(p,q), i) - 2 max(V_{floor(i/q)}, V_{floor((p+q-1-i)/q)})`,
/// on torus knots; the multiplier `q` makes consecutive surgery labels step
/// through the torsion coefficients one at a time.
pub const LABEL_SHIFT: i64 = 1;

/// Validated lens space parameters `(p, q)`, `p >= 1`, `gcd(p, |q|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensParams {
    p: i64,
    q: i64,
}

impl LensParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        Ok(LensParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `q mod p`, in `(0, p)` for `p > 1` and `0` for `p = 1`.
    pub fn reduced_q(&self) -> i64 {
        modulo(self.q, self.p)
    }
}

/// Recursion index of the surgery label `l`.
pub fn recursion_index(params: LensParams, l: i64) -> i64 {
    let p = i128::from(params.p);
    let idx = i128::from(params.reduced_q()) * (i128::from(l) + i128::from(LABEL_SHIFT));
    idx.rem_euclid(p) as i64
}

fn step_term(p: i64, q: i64, i: i64) -> Rational {
    let (p, q, i) = (BigInt::from(p), BigInt::from(q), BigInt::from(i));
    let shifted = BigInt::from(2) * &i + 1 - &p - &q;
    let numer = &shifted * &shifted - &p * &q;
    Rational::new(numer, BigInt::from(4) * p * q).expect("p, q > 0")
}

/// Recursion value at a single index, walking the Euclidean chain once.
/// `p >= 1`, `0 <= q < p`, `0 <= i < p`.
fn d_recursive(mut p: i64, mut q: i64, mut i: i64) -> Rational {
    let mut acc = Rational::zero();
    let mut sign = 1i64;
    while p > 1 {
        let term = step_term(p, q, i);
        if sign > 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
        sign = -sign;
        (p, q, i) = (q, p % q, i % q);
    }
    acc
}

/// The whole recursion table for `(p, q)`, each level computed once.
fn d_recursive_table(p: i64, q: i64) -> Vec<Rational> {
    if p == 1 {
        return vec![Rational::zero()];
    }
    let sub = d_recursive_table(q, p % q);
    (0..p)
        .map(|i| step_term(p, q, i) - &sub[(i % q) as usize])
        .collect()
}

fn signed(value: Rational) -> Rational {
    if RECURSION_SIGN > 0 {
        value
    } else {
        -value
    }
}

/// Correction term of `S^3_{p/q}(U)` at surgery label `l` (taken mod `p`).
pub fn d_lens(p: i64, q: i64, l: i64) -> Result<Rational> {
    let params = LensParams::new(p, q)?;
    let idx = recursion_index(params, l);
    Ok(signed(d_recursive(p, params.reduced_q(), idx)))
}

/// `Eul(S^3_{p/q}(U), l) = -d/2`; lens spaces have no reduced Floer homology.
pub fn eul_unknot(p: i64, q: i64, l: i64) -> Result<Rational> {
    Ok(-d_lens(p, q, l)?.div_int(2)?)
}

/// Normalized Casson-Walker invariant of `S^3_{p/q}(U)`, as the sum of
/// `eul_unknot` over all labels.
pub fn lambda_prime_unknot(p: i64, q: i64) -> Result<Rational> {
    Ok(LensTable::new(LensParams::new(p, q)?).lambda_prime())
}

/// All correction terms of `S^3_{p/q}(U)`, indexed by surgery label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensTable {
    params: LensParams,
    d: Vec<Rational>,
}

impl LensTable {
    pub fn new(params: LensParams) -> Self {
        let natural = d_recursive_table(params.p, params.reduced_q());
        let d = (0..params.p)
            .map(|l| signed(natural[recursion_index(params, l) as usize].clone()))
            .collect();
        LensTable { params, d }
    }

    pub fn params(&self) -> LensParams {
        self.params
    }

    /// `d` at label `l` (taken mod `p`).
    pub fn d(&self, l: i64) -> &Rational {
        &self.d[modulo(l, self.params.p) as usize]
    }

    pub fn eul(&self, l: i64) -> Rational {
        -self.d(l).div_int(2).expect("nonzero divisor")
    }

    /// `d` values in label order `0..p`.
    pub fn values(&self) -> &[Rational] {
        &self.d
    }

    pub fn lambda_prime(&self) -> Rational {
        let total: Rational = self.d.iter().sum();
        -total.div_int(2).expect("nonzero divisor")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surgery::{conjugate_label, SurgerySlope};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
        v.sort();
        v
    }

    #[test]
    fn three_sphere() {
        assert_eq!(d_lens(1, 1, 0).unwrap(), Rational::zero());
        for q in [-5, -1, 1, 2, 17] {
            assert_eq!(d_lens(1, q, 0).unwrap(), Rational::zero());
            assert_eq!(lambda_prime_unknot(1, q).unwrap(), Rational::zero());
        }
        assert_eq!(eul_unknot(1, 1, 0).unwrap(), Rational::zero());
    }

    #[test]
    fn p_two() {
        let d = sorted((0..2).map(|l| d_lens(2, 1, l).unwrap()).collect());
        assert_eq!(d, vec![r(-1, 4), r(1, 4)]);
        let e = sorted((0..2).map(|l| eul_unknot(2, 1, l).unwrap()).collect());
        assert_eq!(e, vec![r(-1, 8), r(1, 8)]);
    }

    #[test]
    fn plus_three_surgery_matches_definite_form_bound() {
        let d = sorted(LensTable::new(LensParams::new(3, 1).unwrap()).values().to_vec());
        assert_eq!(d, vec![r(-1, 6), r(-1, 6), r(1, 2)]);
    }

    #[test]
    fn five_halves_table() {
        let table = LensTable::new(LensParams::new(5, 2).unwrap());
        let expected = [r(-2, 5), r(-2, 5), r(2, 5), Rational::zero(), r(2, 5)];
        assert_eq!(table.values(), &expected);
        let slope = SurgerySlope::new(5, 2).unwrap();
        for l in 0..5 {
            let c = conjugate_label(&slope, l).unwrap();
            assert_eq!(table.d(l), table.d(c));
        }
        // regression constant
        assert_eq!(lambda_prime_unknot(5, 2).unwrap(), Rational::zero());
        assert_eq!(lambda_prime_unknot(3, 1).unwrap(), r(-1, 12));
        assert_eq!(lambda_prime_unknot(7, 3).unwrap(), r(1, 4));
    }

    #[test]
    fn single_and_table_agree() {
        for p in 1..40 {
            for q in -9..=9 {
                let Ok(params) = LensParams::new(p, q) else { continue };
                let table = LensTable::new(params);
                for l in 0..p {
                    assert_eq!(&d_lens(p, q, l).unwrap(), table.d(l), "p={p} q={q} l={l}");
                }
            }
        }
    }

    #[test]
    fn denominators_divide_4p() {
        for p in 1..60 {
            for q in 1..p.max(2) {
                let Ok(params) = LensParams::new(p, q) else { continue };
                for d in LensTable::new(params).values() {
                    assert!((d.clone() * Rational::from(4 * p)).is_integer());
                }
            }
        }
    }

    #[test]
    fn q_enters_only_mod_p() {
        for (p, q) in [(5, 2), (7, 3), (9, 4)] {
            let base = LensTable::new(LensParams::new(p, q).unwrap());
            for shift in [-2, -1, 1, 3] {
                let other = LensTable::new(LensParams::new(p, q + shift * p).unwrap());
                assert_eq!(base.values(), other.values());
            }
        }
    }

    #[test]
    fn label_is_taken_mod_p() {
        assert_eq!(d_lens(5, 2, 7).unwrap(), d_lens(5, 2, 2).unwrap());
        assert_eq!(d_lens(5, 2, -1).unwrap(), d_lens(5, 2, 4).unwrap());
    }

    #[test]
    fn invalid_params() {
        assert_eq!(d_lens(4, 2, 0), Err(Error::InvalidSlope { p: 4, q: 2 }));
        assert!(d_lens(0, 1, 0).is_err());
        assert!(d_lens(3, 0, 0).is_err());
    }
}
