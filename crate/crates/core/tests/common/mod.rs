//! Independent reference computations for the integration tests. Nothing here
//! calls into the crate's formula code; values are converted at the boundary.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use surgeul_core::Rational;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(r: &Rational) -> Q {
    Q::new(r.numer().clone(), r.denom().clone())
}

pub fn coeff(a: &[i64], j: i64) -> i64 {
    a.get(j.unsigned_abs() as usize).copied().unwrap_or(0)
}

/// `sign(k) sum_{j >= (|k|+1)/2} a_j`
pub fn tau(a: &[i64], k: i64) -> i64 {
    let from = (k.abs() + 1) / 2;
    k.signum() * (from..a.len() as i64).map(|j| coeff(a, j)).sum::<i64>()
}

/// `sum_{j>=1} j a_{|i|+j}`
pub fn t_coeff(a: &[i64], i: i64) -> i64 {
    (1..=a.len() as i64).map(|j| j * coeff(a, i.abs() + j)).sum()
}

/// x in [0, p) with q x = -1 mod p, by search.
pub fn x_of(p: i64, q: i64) -> i64 {
    (0..p).find(|x| (q * x + 1).rem_euclid(p) == 0).expect("coprime")
}

/// Dense `T_i` by scanning every odd `k` in the support.
pub fn t_table(a: &[i64], p: i64) -> Vec<i64> {
    let g = a.len() as i64 - 1;
    let mut t = vec![0i64; p as usize];
    for k in -(2 * g + 1)..=(2 * g + 1) {
        if k % 2 != 0 {
            t[((k - 1) / 2).rem_euclid(p) as usize] += tau(a, k);
        }
    }
    t
}

/// `S_l` by the literal double sum, `O(p^2)`.
pub fn s_column(a: &[i64], p: i64, qq: i64) -> Vec<Q> {
    let x = x_of(p, qq);
    let t = t_table(a, p);
    let moment: i64 = (1..a.len() as i64).map(|j| j * j * coeff(a, j)).sum();
    (0..p)
        .map(|l| {
            let mut acc = BigInt::from(qq) * BigInt::from(moment);
            for j in 0..p {
                acc -= BigInt::from(p - j - 1) * BigInt::from(t[(l + j * x).rem_euclid(p) as usize]);
            }
            Q::new(acc, BigInt::from(p))
        })
        .collect()
}

/// Lens recursion in its own index, `0 < q < p` or `p = 1`.
pub fn d_rec(p: i64, q: i64, i: i64) -> Q {
    if p == 1 {
        return Q::zero();
    }
    let top = BigInt::from((2 * i + 1 - p - q).pow(2) - p * q);
    Q::new(top, BigInt::from(4 * p * q)) - d_rec(q, p % q, i % q)
}

/// Correction terms of `p/q` surgery (p, q > 0) on an L-space knot in the
/// recursion index, `d(L(p,q), i) - 2 max(V_{floor(i/q)}, V_{floor((p+q-1-i)/q)})`
/// with `V_k = t_k`.
pub fn d_lspace_surgery(a: &[i64], p: i64, qq: i64, i: i64) -> Q {
    let v = |k: i64| t_coeff(a, k);
    let m = v(i.div_euclid(qq)).max(v((p + qq - 1 - i).div_euclid(qq)));
    d_rec(p, qq.rem_euclid(p), i) - Q::from_integer(BigInt::from(2 * m))
}

/// Dedekind sum `s(h, k)`.
pub fn dedekind(h: i64, k: i64) -> Q {
    let saw = |x: Q| -> Q {
        if x.is_integer() {
            Q::zero()
        } else {
            x.clone() - x.floor() - q(1, 2)
        }
    };
    (1..k).map(|i| saw(q(i, k)) * saw(q(h * i, k))).fold(Q::zero(), |a, b| a + b)
}

/// Casson-Walker of `p/q` surgery on the unknot, normalized by `p`:
/// `-(p/2) s(q, p)`.
pub fn lambda_prime_lens(p: i64, qq: i64) -> Q {
    if p == 1 {
        return Q::zero();
    }
    -(q(p, 2) * dedekind(qq, p))
}

/// Torus knot polynomial from its semigroup: `Delta = sum_{s in <a,b>} (t^s - t^{s+1})`,
/// truncated at `2g`.
pub fn torus(a: i64, b: i64) -> Vec<i64> {
    let g2 = (a - 1) * (b - 1);
    let in_semigroup = |s: i64| (0..=s / a).any(|m| (s - m * a) % b == 0);
    let mut full = vec![0i64; g2 as usize + 1];
    for s in 0..g2 {
        if in_semigroup(s) {
            full[s as usize] += 1;
            full[s as usize + 1] -= 1;
        }
    }
    full[g2 as usize] += 1;
    let g = (g2 / 2) as usize;
    full[g..].to_vec()
}

pub fn one() -> Q {
    Q::one()
}
