//! Rank modulo the prime `2^61 - 1`.
//!
//! Reduction mod a prime can only lower the rank, so a mod-`ℓ` rank is a
//! certified lower bound for the rank over Q. Together with an upper bound
//! (for instance `d∘d = 0` plus dimension counts) it certifies exactness of a
//! complex without rational elimination on large matrices.

use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub const ELL: u64 = (1 << 61) - 1;

fn mulm(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % ELL as u128) as u64
}

fn powm(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b);
        }
        b = mulm(b, b);
        e >>= 1;
    }
    acc
}

fn reduce_int(x: &BigInt) -> u64 {
    let m = BigInt::from(ELL);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().unwrap()
}

/// `x mod ℓ`, or `None` when the denominator is divisible by `ℓ`.
pub fn reduce(x: &Q) -> Option<u64> {
    let d = reduce_int(x.denom());
    if d == 0 {
        return None;
    }
    Some(mulm(reduce_int(x.numer()), powm(d, ELL - 2)))
}

pub fn reduce_i64(x: i64) -> u64 {
    x.rem_euclid(ELL as i64) as u64
}

/// Rank of a sparse matrix given as rows of `(column, value mod ℓ)`.
pub fn rank_sparse(rows: &[Vec<(usize, u64)>], ncols: usize) -> usize {
    // Dense elimination over u64; rows are densified one at a time against
    // the pivot rows found so far.
    let mut pivots: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut v = vec![0u64; ncols];
    for row in rows {
        for &(c, x) in row {
            v[c] = (v[c] + x) % ELL;
        }
        let mut c = 0;
        while c < ncols {
            if v[c] == 0 {
                c += 1;
                continue;
            }
            match pivot_of_col[c] {
                Some(pi) => {
                    let f = v[c];
                    for &(j, x) in &pivots[pi] {
                        v[j] = (v[j] + ELL - mulm(f, x)) % ELL;
                    }
                }
                None => {
                    let inv = powm(v[c], ELL - 2);
                    let sparse: Vec<(usize, u64)> =
                        (c..ncols).filter(|&j| v[j] != 0).map(|j| (j, mulm(v[j], inv))).collect();
                    pivot_of_col[c] = Some(pivots.len());
                    pivots.push(sparse);
                    break;
                }
            }
        }
        v.iter_mut().for_each(|x| *x = 0);
    }
    pivots.len()
}

/// Rank mod `ℓ` of rational sparse rows; `None` if some entry has a
/// denominator divisible by `ℓ`.
pub fn rank_sparse_q(rows: &[Vec<(usize, Q)>], ncols: usize) -> Option<usize> {
    let red: Option<Vec<Vec<(usize, u64)>>> = rows
        .iter()
        .map(|r| r.iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| reduce(x).map(|v| (*c, v))).collect())
        .collect();
    Some(rank_sparse(&red?, ncols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::rational::{q, q_frac};
    use proptest::prelude::*;

    #[test]
    fn reduce_fractions() {
        let h = reduce(&q_frac(1, 2)).unwrap();
        assert_eq!(mulm(h, 2), 1);
        assert_eq!(reduce(&q(-1)).unwrap(), ELL - 1);
    }

    proptest! {
        #[test]
        fn agrees_with_rational_rank_on_small_entries(entries in proptest::collection::vec(-4i64..5, 20)) {
            let m: Vec<Vec<Q>> = (0..4).map(|i| (0..5).map(|j| q(entries[i * 5 + j])).collect()).collect();
            let sparse: Vec<Vec<(usize, Q)>> = m.iter().map(|r| r.iter().cloned().enumerate().collect()).collect();
            prop_assert_eq!(rank_sparse_q(&sparse, 5).unwrap(), rank(&m, 5));
        }
    }
}
