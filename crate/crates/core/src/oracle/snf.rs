//! Smith normal form invariants of sparse integer matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank and the non-unit diagonal entries of a diagonal form of the matrix.
///
/// `cols[j]` lists the nonzero entries `(row, value)` of column `j`.
/// The multiset of prime-power factors of the returned entries is the torsion
/// of the cokernel.
pub fn elementary_divisors(nrows: usize, cols: &[Vec<(usize, i64)>]) -> (usize, Vec<BigUint>) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); nrows];
    let mut colsets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols.len()];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            if v != 0 {
                *rows[i].entry(j).or_insert_with(BigInt::zero) += v;
            }
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row.retain(|_, v| !v.is_zero());
        for &j in row.keys() {
            colsets[j].insert(i);
        }
    }
    let mut rank = 0;
    while let Some((pr, pc)) = unit_pivot(&rows, &colsets) {
        let pivot_row = std::mem::take(&mut rows[pr]);
        let pv = pivot_row[&pc].clone();
        let others: Vec<usize> = colsets[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = &rows[r][&pc] * &pv;
            for (c, v) in &pivot_row {
                let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    colsets[*c].remove(&r);
                } else {
                    colsets[*c].insert(r);
                }
            }
        }
        for c in pivot_row.keys() {
            colsets[*c].remove(&pr);
        }
        rank += 1;
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len())
        .filter(|&j| !colsets[j].is_empty())
        .collect();
    let col_pos: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (k, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            dense[k][col_pos[j]] = v.clone();
        }
    }
    let diag = diagonalize(dense);
    rank += diag.len();
    let divisors = diag.into_iter().filter(|d| !d.is_one()).collect();
    (rank, divisors)
}

/// A `+-1` entry with the smallest fill-in estimate.
fn unit_pivot(
    rows: &[BTreeMap<usize, BigInt>],
    colsets: &[BTreeSet<usize>],
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            if v.abs().is_one() {
                let cost = (row.len() - 1) * (colsets[*j].len() - 1);
                if best.is_none_or(|b| cost < b.2) {
                    best = Some((i, *j, cost));
                    if cost == 0 {
                        return Some((i, *j));
                    }
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Absolute values of the nonzero diagonal entries after row and column reduction.
fn diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigUint> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..n].iter_mut().zip(&top[t][t..n]) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        out.push(a[t][t].abs().to_biguint().expect("absolute value"));
        t += 1;
    }
    out
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() {
                let av = v.abs();
                if best.as_ref().is_none_or(|b| av < b.2) {
                    best = Some((i, j, av));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_cols(m: &[&[i64]]) -> (usize, Vec<Vec<(usize, i64)>>) {
        let nrows = m.len();
        let ncols = if nrows == 0 { 0 } else { m[0].len() };
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| m[i][j] != 0)
                    .map(|i| (i, m[i][j]))
                    .collect()
            })
            .collect();
        (nrows, cols)
    }

    fn divs(m: &[&[i64]]) -> (usize, Vec<u64>) {
        let (r, c) = dense_cols(m);
        let (rank, d) = elementary_divisors(r, &c);
        let mut v: Vec<u64> = d.iter().map(|x| x.try_into().unwrap()).collect();
        v.sort();
        (rank, v)
    }

    #[test]
    fn klein_boundary() {
        assert_eq!(divs(&[&[0], &[2]]), (1, vec![2]));
    }

    #[test]
    fn no_unit_entries() {
        assert_eq!(divs(&[&[2, 4], &[6, 8]]), (2, vec![2, 4]));
        assert_eq!(divs(&[&[4, 6]]), (1, vec![2]));
        assert_eq!(divs(&[&[6, 0], &[0, 4]]), (2, vec![4, 6]));
    }

    #[test]
    fn mixed() {
        assert_eq!(divs(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]), (2, vec![3]));
        assert_eq!(divs(&[&[0, 0], &[0, 0]]), (0, vec![]));
        assert_eq!(divs(&[]), (0, vec![]));
    }
}
