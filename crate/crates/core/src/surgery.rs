//! Torsion sums, the differences `S_l = Eul(S^3_{p/q}(K), l) - Eul(S^3_{p/q}(U), l)`
//! and the full table of renormalized Euler characteristics.
//!
//! Labels are residues `0..p` in the identification where the relative Spin^c
//! structure `k` (an odd integer) of the knot exterior extends to `(k - 1)/2 mod p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::alexander::AlexanderPoly;
use crate::error::{Error, Result};
use crate::exactmath::{gcd, mod_inv_neg, modulo, Rational};
use crate::exec::Execution;
use crate::lens::{LensParams, LensTable};

/// A surgery slope `p/q` with `p >= 1`, `gcd(p, |q|) = 1`, together with the
/// residue `x` satisfying `q x = -1 (mod p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurgerySlope {
    p: i64,
    q: i64,
    x: i64,
}

impl SurgerySlope {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q == 0 || gcd(p, q) != 1 {
            return Err(Error::InvalidSlope { p, q });
        }
        let x = mod_inv_neg(q, p)?;
        Ok(SurgerySlope { p, q, x })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    /// `p/q` as an exact rational.
    pub fn value(&self) -> Rational {
        Rational::new(self.p, self.q).expect("q != 0")
    }

    /// Canonical residue of a label.
    pub fn label(&self, l: i64) -> i64 {
        modulo(l, self.p)
    }

    pub fn lens_params(&self) -> LensParams {
        LensParams::new(self.p, self.q).expect("validated slope")
    }

    fn residue(&self, v: i128) -> i64 {
        v.rem_euclid(i128::from(self.p)) as i64
    }
}

/// Nonzero torsion sums `T_m`, keyed by label. At most `2g` entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseTorsion {
    entries: Vec<(i64, i128)>,
}

impl SparseTorsion {
    pub fn new(knot: &AlexanderPoly, slope: &SurgerySlope) -> Self {
        let g = knot.degree() as i64;
        let mut acc: BTreeMap<i64, i128> = BTreeMap::new();
        let mut k = -(2 * g - 1);
        while k < 2 * g {
            let tau = knot.rel_torsion(k).expect("odd k");
            if tau != 0 {
                *acc.entry(slope.label((k - 1) / 2)).or_default() += tau;
            }
            k += 2;
        }
        SparseTorsion {
            entries: acc.into_iter().filter(|&(_, t)| t != 0).collect(),
        }
    }

    pub fn entries(&self) -> &[(i64, i128)] {
        &self.entries
    }

    pub fn get(&self, label: i64) -> i128 {
        self.entries
            .binary_search_by_key(&label, |&(m, _)| m)
            .map(|idx| self.entries[idx].1)
            .unwrap_or(0)
    }

    /// Dense table indexed by label.
    pub fn to_dense(&self, p: i64) -> Vec<i128> {
        let mut dense = vec![0i128; p as usize];
        for &(m, t) in &self.entries {
            dense[m as usize] = t;
        }
        dense
    }
}

/// `T_i`: sum of the exterior torsion over all odd `k` with `(k - 1)/2 = i (mod p)`.
pub fn torsion_sum(knot: &AlexanderPoly, slope: &SurgerySlope, i: i64) -> i128 {
    let g = knot.degree() as i128;
    if g == 0 {
        return 0;
    }
    let p = i128::from(slope.p);
    let base = 2 * i128::from(slope.label(i)) + 1;
    // k = base + 2pm with |k| <= 2g - 1
    let lo = (-(2 * g - 1) - base).div_euclid(2 * p) - 1;
    let hi = (2 * g - 1 - base).div_euclid(2 * p) + 1;
    (lo..=hi)
        .map(|m| base + 2 * p * m)
        .filter(|k| k.abs() < 2 * g)
        .map(|k| knot.rel_torsion(k as i64).expect("odd k"))
        .sum()
}

/// Whether `a_j = 0` for every `j >= p/2`, the hypothesis under which the
/// closed forms for `T_i` and the simplified formula for `S_l` hold.
pub fn has_short_support(knot: &AlexanderPoly, slope: &SurgerySlope) -> bool {
    2 * (knot.degree() as i128) < i128::from(slope.p)
}

fn require_short_support(knot: &AlexanderPoly, slope: &SurgerySlope) -> Result<()> {
    if has_short_support(knot, slope) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "need a_j = 0 for j >= p/2, but degree {} >= {}/2",
            knot.degree(),
            slope.p
        )))
    }
}

/// Closed form of `T_i` valid when `a_j = 0` for `j >= p/2`.
pub fn torsion_sum_closed(knot: &AlexanderPoly, slope: &SurgerySlope, i: i64) -> Result<i128> {
    require_short_support(knot, slope)?;
    let i = slope.label(i);
    if 2 * i < slope.p {
        Ok(knot.tail_sum(i as usize + 1))
    } else {
        Ok(-knot.tail_sum((slope.p - i) as usize))
    }
}

/// `p S_l` from the sparse torsion table:
/// `q sum j^2 a_j - sign * sum_j (p - j - 1) T_{l + jx}`.
///
/// The label `l + jx` equals `m` exactly when `j = (l - m) q mod p`, so only
/// the nonzero `T_m` contribute.
fn scaled_s(moment: &BigInt, slope: &SurgerySlope, torsion: &SparseTorsion, l: i64, sign: i64) -> BigInt {
    let p = i128::from(slope.p);
    let q = i128::from(slope.q);
    let l = i128::from(l);
    let mut weighted = BigInt::from(0);
    for &(m, t) in torsion.entries() {
        let j = (l - i128::from(m)) * q;
        let j = j.rem_euclid(p);
        weighted += BigInt::from(p - j - 1) * BigInt::from(t);
    }
    BigInt::from(slope.q) * moment - BigInt::from(sign) * weighted
}

pub(crate) fn s_column_signed(
    knot: &AlexanderPoly,
    slope: &SurgerySlope,
    sign: i64,
    exec: Execution,
) -> Vec<Rational> {
    let torsion = SparseTorsion::new(knot, slope);
    let moment = BigInt::from(knot.second_moment());
    exec.map_indices(slope.p as usize, |l| {
        let numer = scaled_s(&moment, slope, &torsion, l as i64, sign);
        Rational::new(numer, slope.p).expect("p >= 1")
    })
}

/// `S_l` from the torsion sums, valid for every knot and slope.
pub fn s_diff_direct(knot: &AlexanderPoly, slope: &SurgerySlope, l: i64) -> Rational {
    let torsion = SparseTorsion::new(knot, slope);
    let moment = BigInt::from(knot.second_moment());
    let numer = scaled_s(&moment, slope, &torsion, slope.label(l), 1);
    Rational::new(numer, slope.p).expect("p >= 1")
}

/// `S_l = (1/p) sum_{i>=1} (q i^2 + c_i) a_i`, valid when `a_j = 0` for `j >= p/2`.
pub fn s_diff_simplified(knot: &AlexanderPoly, slope: &SurgerySlope, l: i64) -> Result<Rational> {
    require_short_support(knot, slope)?;
    let g = knot.degree();
    let c = c_values(slope, l, g);
    let q = BigInt::from(slope.q);
    let mut numer = BigInt::from(0);
    for (idx, &a) in knot.coeffs().iter().enumerate().skip(1) {
        let i = BigInt::from(idx);
        numer += (&q * &i * &i + BigInt::from(c[idx - 1])) * BigInt::from(a);
    }
    Rational::new(numer, slope.p)
}

/// `c_1, ..., c_{i_max}` with
/// `c_i = p sum_{j=1}^{i} ({q(l+1-j)/p} - {q(l+j)/p})`.
///
/// `p {n/p}` is `n mod p`, so the sum is evaluated on integer residues.
pub fn c_values(slope: &SurgerySlope, l: i64, i_max: usize) -> Vec<i128> {
    let q = i128::from(slope.q);
    let l = i128::from(l);
    let mut acc = 0i128;
    (1..=i_max as i128)
        .map(|j| {
            let u = i128::from(slope.residue(q * (l + 1 - j)));
            let v = i128::from(slope.residue(q * (l + j)));
            acc += u - v;
            acc
        })
        .collect()
}

/// The residues behind `c_i`: `l + u_j x = j - 1` and `l + v_j x = -j (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDebug {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub c: Vec<i128>,
}

/// Solves the defining congruences for `u_j`, `v_j` directly (through `x^{-1}`)
/// and accumulates `c_i = sum (u_j - v_j)`.
pub fn c_values_debug(slope: &SurgerySlope, l: i64, i_max: usize) -> CDebug {
    let p = slope.p;
    // x * y = -1, so x^{-1} = -y
    let x_inv = if p == 1 {
        0
    } else {
        modulo(-mod_inv_neg(slope.x, p).expect("x is a unit"), p)
    };
    let solve = |target: i64| slope.residue(i128::from(target - l) * i128::from(x_inv));
    let u: Vec<i64> = (1..=i_max as i64).map(|j| solve(j - 1)).collect();
    let v: Vec<i64> = (1..=i_max as i64).map(|j| solve(-j)).collect();
    let mut acc = 0i128;
    let c = u
        .iter()
        .zip(&v)
        .map(|(&a, &b)| {
            acc += i128::from(a - b);
            acc
        })
        .collect();
    CDebug { u, v, c }
}

/// Label of the unique Spin structure, `(p - 1)(1 - x)/2 mod p`, for odd `p`.
pub fn spin_label(slope: &SurgerySlope) -> Result<i64> {
    if slope.p % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "Spin structure labeling is only defined for odd p (p = {})",
            slope.p
        )));
    }
    let half = i128::from((slope.p - 1) / 2);
    Ok(slope.residue(half * (1 - i128::from(slope.x))))
}

/// The conjugation involution `l -> 2 spin_label - l (mod p)`, for odd `p`.
pub fn conjugate_label(slope: &SurgerySlope, l: i64) -> Result<i64> {
    let spin = spin_label(slope)?;
    Ok(slope.residue(2 * i128::from(spin) - i128::from(l)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulRow {
    pub label: i64,
    /// `T_l`
    pub torsion: i128,
    /// `S_l`
    pub s: Rational,
    pub eul_unknot: Rational,
    pub eul_knot: Rational,
}

/// Renormalized Euler characteristics of `S^3_{p/q}(K)` for every label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulTable {
    slope: SurgerySlope,
    knot: AlexanderPoly,
    rows: Vec<EulRow>,
    lambda_prime_unknot: Rational,
    lambda_prime_knot: Rational,
    spin_label: Option<i64>,
}

impl EulTable {
    pub fn slope(&self) -> &SurgerySlope {
        &self.slope
    }

    pub fn knot(&self) -> &AlexanderPoly {
        &self.knot
    }

    pub fn rows(&self) -> &[EulRow] {
        &self.rows
    }

    pub fn row(&self, l: i64) -> &EulRow {
        &self.rows[self.slope.label(l) as usize]
    }

    pub fn s_column(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r.s.clone()).collect()
    }

    pub fn torsion_column(&self) -> Vec<i128> {
        self.rows.iter().map(|r| r.torsion).collect()
    }

    pub fn lambda_prime_unknot(&self) -> &Rational {
        &self.lambda_prime_unknot
    }

    /// `|H_1| lambda` of `S^3_{p/q}(K)`.
    pub fn lambda_prime_knot(&self) -> &Rational {
        &self.lambda_prime_knot
    }

    pub fn spin_label(&self) -> Option<i64> {
        self.spin_label
    }

    /// Casson-Walker invariant `lambda = lambda' / p`.
    pub fn lambda(&self) -> Rational {
        self.lambda_prime_knot.div_int(self.slope.p).expect("p >= 1")
    }

    /// Turaev torsion of the surgered manifold, recovered as `lambda - Eul`.
    pub fn closed_torsion(&self, l: i64) -> Rational {
        self.lambda() - &self.row(l).eul_knot
    }
}

pub fn eul_table(knot: &AlexanderPoly, slope: &SurgerySlope) -> EulTable {
    eul_table_with(knot, slope, Execution::default())
}

pub fn eul_table_with(knot: &AlexanderPoly, slope: &SurgerySlope, exec: Execution) -> EulTable {
    let s = s_column_signed(knot, slope, 1, exec);
    if cfg!(debug_assertions) && has_short_support(knot, slope) {
        for (l, value) in s.iter().enumerate() {
            debug_assert_eq!(
                &s_diff_simplified(knot, slope, l as i64).expect("short support"),
                value,
                "direct and simplified S formulas disagree at label {l}"
            );
        }
    }
    let torsion = SparseTorsion::new(knot, slope);
    let lens = LensTable::new(slope.lens_params());
    let rows = s
        .into_iter()
        .enumerate()
        .map(|(l, s)| {
            let label = l as i64;
            let eul_unknot = lens.eul(label);
            let eul_knot = &eul_unknot + &s;
            EulRow {
                label,
                torsion: torsion.get(label),
                s,
                eul_unknot,
                eul_knot,
            }
        })
        .collect();
    let lambda_prime_unknot = lens.lambda_prime();
    let lambda_prime_knot =
        &lambda_prime_unknot + &Rational::from(i128::from(slope.q) * knot.second_moment());
    EulTable {
        slope: *slope,
        knot: knot.clone(),
        rows,
        lambda_prime_unknot,
        lambda_prime_knot,
        spin_label: spin_label(slope).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn slope(p: i64, q: i64) -> SurgerySlope {
        SurgerySlope::new(p, q).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| Rational::from(n)).collect()
    }

    #[test]
    fn slope_validation() {
        assert_eq!(slope(5, 2).x(), 2);
        assert_eq!(slope(5, -2).x(), 3);
        assert_eq!(slope(1, 7).x(), 0);
        assert_eq!(SurgerySlope::new(4, 6), Err(Error::InvalidSlope { p: 4, q: 6 }));
        assert!(SurgerySlope::new(0, 1).is_err());
        assert!(SurgerySlope::new(3, 0).is_err());
        assert!(SurgerySlope::new(-3, 1).is_err());
    }

    #[test]
    fn torsion_sum_examples() {
        let k = AlexanderPoly::trefoil();
        let s = slope(5, 2);
        let t: Vec<i128> = (0..5).map(|i| torsion_sum(&k, &s, i)).collect();
        assert_eq!(t, vec![1, 0, 0, 0, -1]);
        assert_eq!(SparseTorsion::new(&k, &s).to_dense(5), t);
        for i in 0..7 {
            assert_eq!(torsion_sum(&AlexanderPoly::unknot(), &slope(7, 3), i), 0);
        }
        // p = 1 collapses everything onto one label
        assert_eq!(torsion_sum(&k, &slope(1, 1), 0), 0);
    }

    #[test]
    fn torsion_sum_wraps_for_small_p() {
        let k = AlexanderPoly::torus_knot(2, 7).unwrap(); // 1,-1,1,-1 ... g = 3
        let s = slope(2, 1);
        let dense = SparseTorsion::new(&k, &s).to_dense(2);
        assert_eq!(dense, vec![torsion_sum(&k, &s, 0), torsion_sum(&k, &s, 1)]);
        assert_eq!(dense.iter().sum::<i128>(), 0);
    }

    #[test]
    fn torsion_sum_closed_examples() {
        let k = AlexanderPoly::trefoil();
        let s = slope(5, 2);
        assert_eq!(torsion_sum_closed(&k, &s, 0).unwrap(), 1);
        assert_eq!(torsion_sum_closed(&k, &s, 4).unwrap(), -1);
        for i in 0..5 {
            assert_eq!(torsion_sum_closed(&k, &s, i).unwrap(), torsion_sum(&k, &s, i));
        }
        assert!(matches!(
            torsion_sum_closed(&k, &slope(2, 1), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn s_direct_examples() {
        let k = AlexanderPoly::trefoil();
        let s = slope(5, 2);
        let col: Vec<Rational> = (0..5).map(|l| s_diff_direct(&k, &s, l)).collect();
        assert_eq!(col, ints(&[0, 0, 1, 0, 1]));
        assert_eq!(s_diff_direct(&k, &slope(1, 1), 0), Rational::from(1));
        for l in 0..7 {
            assert!(s_diff_direct(&AlexanderPoly::unknot(), &slope(7, -3), l).is_zero());
        }
    }

    #[test]
    fn s_simplified_examples() {
        let k = AlexanderPoly::trefoil();
        let s = slope(5, 2);
        assert_eq!(c_values(&s, 2, 1), vec![3]);
        assert_eq!(s_diff_simplified(&k, &s, 2).unwrap(), Rational::from(1));
        assert_eq!(c_values(&s, 0, 1), vec![-2]);
        assert_eq!(s_diff_simplified(&k, &s, 0).unwrap(), Rational::zero());
        assert!(s_diff_simplified(&k, &slope(2, 1), 0).is_err());
    }

    #[test]
    fn c_values_examples() {
        let s = slope(5, 2);
        assert_eq!(c_values(&s, 4, 1), vec![3]);
        assert_eq!(c_values(&s, 1, 1), vec![-2]);
        for l in 0..5 {
            let dbg = c_values_debug(&s, l, 4);
            assert_eq!(dbg.c, c_values(&s, l, 4));
            for j in 1..=4i64 {
                let (u, v) = (dbg.u[j as usize - 1], dbg.v[j as usize - 1]);
                assert_eq!(modulo(l + u * s.x(), 5), modulo(j - 1, 5));
                assert_eq!(modulo(l + v * s.x(), 5), modulo(-j, 5));
            }
        }
    }

    #[test]
    fn spin_and_conjugation() {
        assert_eq!(spin_label(&slope(5, 2)).unwrap(), 3);
        assert_eq!(spin_label(&slope(1, 4)).unwrap(), 0);
        assert_eq!(spin_label(&slope(3, 1)).unwrap(), 2);
        assert!(matches!(spin_label(&slope(4, 1)), Err(Error::Unsupported(_))));
        let s = slope(5, 2);
        assert_eq!(conjugate_label(&s, 2).unwrap(), 4);
        assert_eq!(conjugate_label(&s, 3).unwrap(), 3);
        for l in 0..5 {
            assert_eq!(conjugate_label(&s, conjugate_label(&s, l).unwrap()).unwrap(), l);
        }
        assert!(conjugate_label(&slope(6, 1), 0).is_err());
    }

    #[test]
    fn table_for_trefoil_five_halves() {
        let table = eul_table(&AlexanderPoly::trefoil(), &slope(5, 2));
        assert_eq!(table.s_column(), ints(&[0, 0, 1, 0, 1]));
        assert_eq!(table.torsion_column(), vec![1, 0, 0, 0, -1]);
        assert_eq!(table.spin_label(), Some(3));
        assert_eq!(
            table.lambda_prime_knot() - table.lambda_prime_unknot(),
            Rational::from(2)
        );
        for row in table.rows() {
            assert_eq!(row.eul_knot, &row.eul_unknot + &row.s);
        }
    }

    #[test]
    fn table_for_unknot_is_the_lens_space() {
        let table = eul_table(&AlexanderPoly::unknot(), &slope(9, 4));
        for row in table.rows() {
            assert_eq!(row.eul_knot, row.eul_unknot);
        }
        assert_eq!(table.lambda_prime_knot(), table.lambda_prime_unknot());
    }

    #[test]
    fn table_sum_rule_torus_2_5() {
        let table = eul_table(&AlexanderPoly::torus_knot(2, 5).unwrap(), &slope(7, 1));
        let total: Rational = table.s_column().iter().sum();
        assert_eq!(total, Rational::from(3));
    }

    #[test]
    fn closed_torsion_sums_to_zero() {
        for (p, q) in [(5, 2), (7, -3), (6, 1), (1, 3)] {
            let table = eul_table(&AlexanderPoly::torus_knot(3, 4).unwrap(), &slope(p, q));
            let total: Rational = (0..p).map(|l| table.closed_torsion(l)).sum();
            assert!(total.is_zero());
        }
    }

    #[test]
    fn single_row_for_p_one() {
        let table = eul_table(&AlexanderPoly::trefoil(), &slope(1, 1));
        assert_eq!(table.rows().len(), 1);
        assert_eq!(table.row(0).eul_knot, Rational::from(1));
        assert_eq!(table.spin_label(), Some(0));
    }

    #[test]
    fn sequential_and_parallel_tables_match() {
        let k = AlexanderPoly::torus_knot(3, 7).unwrap();
        let s = slope(101, 5);
        assert_eq!(
            eul_table_with(&k, &s, Execution::Sequential),
            eul_table_with(&k, &s, Execution::Parallel)
        );
    }
}
