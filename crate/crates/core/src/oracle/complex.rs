use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::snf::elementary_divisors;
use crate::error::{Error, Result};
use crate::graded::{prime_power_factors, AbGroup, GradedAb};

/// Sparse integer matrix stored by columns: `cols[j]` lists `(row, value)`.
pub type SparseCols = Vec<Vec<(usize, i64)>>;

/// Finite chain complex of free abelian groups with chosen bases.
///
/// `boundary(d)` is the matrix of `C_d -> C_{d-1}`; degree 0 has the zero boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseCols>,
}

impl FinChainComplex {
    /// Builds a complex from dense row-major boundary matrices `d_1, d_2, ...`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if boundaries.len() + 1 != ranks.len().max(1) {
            return Err(Error::MalformedComplex(format!(
                "{} degrees need {} boundary matrices, found {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        let mut sparse = vec![Vec::new()];
        for (k, m) in boundaries.iter().enumerate() {
            let d = k + 1;
            let (rows, cols) = (ranks[d - 1], ranks[d]);
            if m.len() != rows || m.iter().any(|r| r.len() != cols) {
                return Err(Error::MalformedComplex(format!(
                    "boundary in degree {d} must be {rows}x{cols}"
                )));
            }
            let sc = (0..cols)
                .map(|j| {
                    (0..rows)
                        .filter(|&i| m[i][j] != 0)
                        .map(|i| (i, m[i][j]))
                        .collect()
                })
                .collect();
            sparse.push(sc);
        }
        Self::from_sparse(ranks, sparse)
    }

    /// Builds a complex from sparse column boundaries, index 0 being ignored.
    pub fn from_sparse(ranks: Vec<usize>, mut boundaries: Vec<SparseCols>) -> Result<Self> {
        boundaries.resize(ranks.len().max(1), Vec::new());
        boundaries[0] = vec![Vec::new(); ranks.first().copied().unwrap_or(0)];
        for d in 1..ranks.len() {
            if boundaries[d].len() != ranks[d] {
                return Err(Error::MalformedComplex(format!(
                    "boundary in degree {d} has {} columns, expected {}",
                    boundaries[d].len(),
                    ranks[d]
                )));
            }
            if boundaries[d]
                .iter()
                .flatten()
                .any(|&(i, _)| i >= ranks[d - 1])
            {
                return Err(Error::MalformedComplex(format!(
                    "row index out of range in degree {d}"
                )));
            }
        }
        let c = FinChainComplex { ranks, boundaries };
        for d in 2..c.ranks.len() {
            for col in &c.boundaries[d] {
                let mut acc: HashMap<usize, i128> = HashMap::new();
                for &(i, v) in col {
                    for &(k, w) in &c.boundaries[d - 1][i] {
                        *acc.entry(k).or_insert(0) += v as i128 * w as i128;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return Err(Error::NonZeroComposite(d));
                }
            }
        }
        Ok(c)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Highest degree plus one.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn total_cells(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn boundary(&self, d: usize) -> &SparseCols {
        &self.boundaries[d]
    }

    /// Dense row-major boundary of degree `d >= 1`.
    pub fn dense_boundary(&self, d: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.ranks[d]]; self.ranks[d - 1]];
        for (j, col) in self.boundaries[d].iter().enumerate() {
            for &(i, v) in col {
                m[i][j] += v;
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::MalformedComplex(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<i64>>>,
}

impl Serialize for FinChainComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            ranks: self.ranks.clone(),
            boundaries: (1..self.ranks.len())
                .map(|d| self.dense_boundary(d))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinChainComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ComplexJson::deserialize(d)?;
        FinChainComplex::new(j.ranks, j.boundaries).map_err(serde::de::Error::custom)
    }
}

/// Integral homology by Smith normal form of every boundary matrix.
///
/// Fails only when a torsion order does not fit in 64 bits.
pub fn homology_znf(c: &FinChainComplex) -> Result<GradedAb> {
    let n = c.len();
    let mut ranks = vec![0usize; n + 1];
    let mut torsion: Vec<Vec<BigUint>> = vec![Vec::new(); n + 1];
    for d in 1..n {
        let (r, divs) = elementary_divisors(c.ranks[d - 1], &c.boundaries[d]);
        ranks[d] = r;
        torsion[d - 1] = divs;
    }
    let mut groups = Vec::with_capacity(n.max(1));
    for d in 0..n {
        let free = c.ranks[d] - ranks[d] - ranks[d + 1];
        let mut tors = Vec::new();
        for t in &torsion[d] {
            tors.extend(prime_power_factors(t)?);
        }
        groups.push(AbGroup::new(free, tors));
    }
    if groups.is_empty() {
        groups.push(AbGroup::zero());
    }
    Ok(GradedAb::from_groups(groups))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_bottle() {
        let c = FinChainComplex::new(
            vec![1, 2, 1],
            vec![vec![vec![0, 0]], vec![vec![0], vec![2]]],
        )
        .unwrap();
        let h = homology_znf(&c).unwrap();
        assert_eq!(h.degree(0).to_string(), "Z");
        assert_eq!(h.degree(1).to_string(), "Z + Z/2");
        assert!(h.degree(2).is_zero());
    }

    #[test]
    fn composite_checked() {
        let e = FinChainComplex::new(vec![1, 1, 1], vec![vec![vec![1]], vec![vec![1]]]);
        assert!(matches!(e, Err(Error::NonZeroComposite(2))));
        let e = FinChainComplex::new(vec![1, 1], vec![vec![vec![1, 1]]]);
        assert!(matches!(e, Err(Error::MalformedComplex(_))));
    }

    #[test]
    fn json_round_trip() {
        let c = FinChainComplex::new(vec![2, 2], vec![vec![vec![-1, 1], vec![1, -1]]]).unwrap();
        let j = c.to_json();
        assert_eq!(
            j,
            serde_json::json!({"ranks": [2, 2], "boundaries": [[[-1, 1], [1, -1]]]})
        );
        assert_eq!(FinChainComplex::from_json(&j).unwrap(), c);
        let h = homology_znf(&c).unwrap();
        assert_eq!(h.degree(0).to_string(), "Z");
        assert_eq!(h.degree(1).to_string(), "Z");
    }
}
