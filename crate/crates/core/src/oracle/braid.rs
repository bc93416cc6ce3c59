use super::complex::FinChainComplex;

/// Gaussian binomial coefficient `[n choose k]_q` at `q = -1`.
fn gauss_binomial_neg1(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    if n.is_multiple_of(2) && k % 2 == 1 {
        return 0;
    }
    binomial(n / 2, k / 2)
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Signed count of minimal coset representatives of `W_{G \ s}` in `W_G`.
///
/// `G` is a set of simple transpositions of the symmetric group, as a bitmask.
pub(crate) fn coset_coefficient(g: u32, s: usize) -> i64 {
    let mut lo = s;
    while lo > 0 && g & (1 << (lo - 1)) != 0 {
        lo -= 1;
    }
    let mut hi = s;
    while g & (1 << (hi + 1)) != 0 {
        hi += 1;
    }
    let block = hi - lo + 1;
    gauss_binomial_neg1(block + 1, s - lo + 1)
}

/// Trivial-coefficient Salvetti complex of the braid group on `n` strands.
///
/// One cell per subset of the `n - 1` standard generators, in degree its size.
pub fn braid_group_complex(n: usize) -> FinChainComplex {
    let gens = n.saturating_sub(1);
    let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); gens + 1];
    for g in 0u32..(1 << gens) {
        by_degree[g.count_ones() as usize].push(g);
    }
    let index = |g: u32| -> usize {
        by_degree[g.count_ones() as usize]
            .binary_search(&g)
            .unwrap()
    };
    let ranks: Vec<usize> = by_degree.iter().map(|v| v.len()).collect();
    let mut boundaries = vec![Vec::new()];
    for cells in by_degree.iter().skip(1) {
        let cols = cells
            .iter()
            .map(|&g| {
                let mut col = Vec::new();
                let mut pos = 0;
                for s in 0..gens {
                    if g & (1 << s) == 0 {
                        continue;
                    }
                    let c = coset_coefficient(g, s);
                    if c != 0 {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        col.push((index(g & !(1 << s)), sign * c));
                    }
                    pos += 1;
                }
                col
            })
            .collect();
        boundaries.push(cols);
    }
    FinChainComplex::from_sparse(ranks, boundaries).expect("Salvetti boundary squares to zero")
}
