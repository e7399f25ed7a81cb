//! Sparse linear solves over a prime field, used to find integer solutions that
//! are known to exist and be unique. Results are lifted symmetrically and must
//! be verified exactly by the caller.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::sparse::SparseIntMatrix;

/// The Mersenne prime `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r < BigInt::from(0) { r + BigInt::from(p) } else { r };
    r.to_u64().expect("reduced value fits")
}

/// Symmetric lift of a residue to `(-p/2, p/2]`.
pub fn lift(v: u64, p: u64) -> BigInt {
    if v > p / 2 {
        BigInt::from(v) - BigInt::from(p)
    } else {
        BigInt::from(v)
    }
}

/// Solves `a x = b_j` for every right-hand side column `b_j` of `b`, modulo `p`,
/// setting free variables to zero. Returns `None` if some system is inconsistent.
pub fn solve_mod_p(a: &SparseIntMatrix, b: &SparseIntMatrix, p: u64) -> Option<Vec<Vec<u64>>> {
    assert_eq!(a.rows(), b.rows());
    let n = a.cols();
    let k = b.cols();
    // augmented rows: columns 0..n are unknowns, n..n+k are right-hand sides
    let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); a.rows()];
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (r, c, v) in a.iter() {
        let x = reduce(v, p);
        if x != 0 {
            rows[r].insert(c, x);
            cols[c].insert(r);
        }
    }
    for (r, c, v) in b.iter() {
        let x = reduce(v, p);
        if x != 0 {
            rows[r].insert(n + c, x);
        }
    }
    let mut by_len: BTreeSet<(usize, usize)> =
        (0..n).filter(|&c| !cols[c].is_empty()).map(|c| (cols[c].len(), c)).collect();
    let mut pivots: Vec<(usize, BTreeMap<usize, u64>)> = Vec::new();
    while let Some(&(len, c)) = by_len.iter().next() {
        by_len.remove(&(len, c));
        let &p_row = cols[c].iter().min_by_key(|&&r| (rows[r].len(), r)).expect("nonempty column");
        let pivot_row = std::mem::take(&mut rows[p_row]);
        let inv = inv_mod(pivot_row[&c], p);
        let pivot_row: BTreeMap<usize, u64> = pivot_row.into_iter().map(|(cc, v)| (cc, mul_mod(v, inv, p))).collect();
        let mut touched = BTreeSet::new();
        for &cc in pivot_row.keys() {
            if cc < n {
                if cc != c {
                    by_len.remove(&(cols[cc].len(), cc));
                    touched.insert(cc);
                }
                cols[cc].remove(&p_row);
            }
        }
        let others: Vec<usize> = cols[c].iter().copied().collect();
        for i in others {
            let f = rows[i][&c];
            for (&cc, &pv) in &pivot_row {
                let cur = rows[i].get(&cc).copied().unwrap_or(0);
                let nv = (cur + p - mul_mod(f, pv, p)) % p;
                if nv == 0 {
                    rows[i].remove(&cc);
                    if cc < n {
                        cols[cc].remove(&i);
                    }
                } else {
                    rows[i].insert(cc, nv);
                    if cc < n {
                        cols[cc].insert(i);
                    }
                }
            }
        }
        for cc in touched {
            if !cols[cc].is_empty() {
                by_len.insert((cols[cc].len(), cc));
            }
        }
        pivots.push((c, pivot_row));
    }
    // leftover rows have no unknowns; their right-hand sides must vanish
    if rows.iter().any(|r| !r.is_empty()) {
        return None;
    }
    let mut x = vec![vec![0u64; n]; k];
    for (c, row) in pivots.iter().rev() {
        for (j, xj) in x.iter_mut().enumerate() {
            let mut acc = row.get(&(n + j)).copied().unwrap_or(0);
            for (&cc, &v) in row.range(..n) {
                if cc != *c && xj[cc] != 0 {
                    acc = (acc + p - mul_mod(v, xj[cc], p)) % p;
                }
            }
            xj[*c] = acc;
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = -1  =>  x = 1, y = 2
        let a = SparseIntMatrix::from_triplets(2, 2, [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, -1)]);
        let b = SparseIntMatrix::from_triplets(2, 1, [(0, 0, 3), (1, 0, -1)]);
        let x = solve_mod_p(&a, &b, MERSENNE_61).unwrap();
        assert_eq!(lift(x[0][0], MERSENNE_61), BigInt::from(1));
        assert_eq!(lift(x[0][1], MERSENNE_61), BigInt::from(2));
    }

    #[test]
    fn detects_inconsistency() {
        let a = SparseIntMatrix::from_triplets(2, 1, [(0, 0, 1), (1, 0, 1)]);
        let b = SparseIntMatrix::from_triplets(2, 1, [(0, 0, 1), (1, 0, 2)]);
        assert!(solve_mod_p(&a, &b, MERSENNE_61).is_none());
    }

    #[test]
    fn negative_lift() {
        let a = SparseIntMatrix::from_triplets(1, 1, [(0, 0, 2)]);
        let b = SparseIntMatrix::from_triplets(1, 1, [(0, 0, -6)]);
        let x = solve_mod_p(&a, &b, MERSENNE_61).unwrap();
        assert_eq!(lift(x[0][0], MERSENNE_61), BigInt::from(-3));
    }
}
