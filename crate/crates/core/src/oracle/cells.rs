use std::collections::HashMap;

use super::complex::FinChainComplex;
use crate::error::{Error, Result};

/// A degree-preserving signed permutation of cells: cell `i` goes to `sign * image[i].0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedMap {
    pub image: Vec<(usize, i64)>,
}

impl SignedMap {
    pub fn identity(n: usize) -> Self {
        SignedMap {
            image: (0..n).map(|i| (i, 1)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SignedMap) -> SignedMap {
        SignedMap {
            image: other
                .image
                .iter()
                .map(|&(j, s)| {
                    let (k, t) = self.image[j];
                    (k, s * t)
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SignedMap {
        let mut out = SignedMap::identity(self.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &(j, s))| i == j && s == 1)
    }

    /// Smallest `k >= 1` with `self^k` the identity.
    pub fn order(&self) -> u32 {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Tensor product of maps on the factors of a product model.
    pub fn tensor(&self, other: &SignedMap) -> SignedMap {
        let n = other.len();
        let mut image = Vec::with_capacity(self.len() * n);
        for &(a, s) in &self.image {
            for &(b, t) in &other.image {
                image.push((a * n + b, s * t));
            }
        }
        SignedMap { image }
    }
}

/// A finite based chain complex whose basis elements are cells.
///
/// Cells are numbered globally; `boundary[i]` lists `(cell, coefficient)`
/// in degree one less. Optional cellular involution and rotation actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellModel {
    degrees: Vec<usize>,
    boundary: Vec<Vec<(usize, i64)>>,
    involution: Option<SignedMap>,
    rotation: Option<SignedMap>,
}

impl CellModel {
    /// Validates degrees and the composite boundary.
    pub fn new(degrees: Vec<usize>, boundary: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        if degrees.len() != boundary.len() {
            return Err(Error::MalformedComplex(
                "one boundary per cell expected".into(),
            ));
        }
        for (i, b) in boundary.iter().enumerate() {
            if b.iter()
                .any(|&(j, _)| j >= degrees.len() || degrees[j] + 1 != degrees[i])
            {
                return Err(Error::MalformedComplex(format!(
                    "cell {i} has a bad boundary"
                )));
            }
        }
        let m = CellModel {
            degrees,
            boundary,
            involution: None,
            rotation: None,
        };
        for i in 0..m.len() {
            if !m.apply_boundary(&m.boundary[i]).is_empty() {
                return Err(Error::NonZeroComposite(m.degrees[i]));
            }
        }
        Ok(m)
    }

    pub fn point() -> Self {
        CellModel {
            degrees: vec![0],
            boundary: vec![Vec::new()],
            involution: Some(SignedMap::identity(1)),
            rotation: Some(SignedMap::identity(1)),
        }
    }

    /// `k` disjoint points.
    pub fn points(k: usize) -> Self {
        CellModel {
            degrees: vec![0; k],
            boundary: vec![Vec::new(); k],
            involution: None,
            rotation: None,
        }
    }

    /// Circle with vertices `v0, v1` and edges `e0: v0 -> v1`, `e1: v1 -> v0`.
    ///
    /// Rotation by a half turn swaps the vertices and the edges. Reflection
    /// fixes the vertices and sends `e0` to `-e1`.
    pub fn circle() -> Self {
        CellModel {
            degrees: vec![0, 0, 1, 1],
            boundary: vec![vec![], vec![], vec![(1, 1), (0, -1)], vec![(0, 1), (1, -1)]],
            involution: Some(SignedMap {
                image: vec![(0, 1), (1, 1), (3, -1), (2, -1)],
            }),
            rotation: Some(SignedMap {
                image: vec![(1, 1), (0, 1), (3, 1), (2, 1)],
            }),
        }
    }

    /// Circle with one vertex and one edge; reflection negates the edge.
    pub fn minimal_circle() -> Self {
        CellModel {
            degrees: vec![0, 1],
            boundary: vec![vec![], vec![]],
            involution: Some(SignedMap {
                image: vec![(0, 1), (1, -1)],
            }),
            rotation: Some(SignedMap::identity(2)),
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, cell: usize) -> usize {
        self.degrees[cell]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn boundary_of(&self, cell: usize) -> &[(usize, i64)] {
        &self.boundary[cell]
    }

    pub fn involution(&self) -> Option<&SignedMap> {
        self.involution.as_ref()
    }

    pub fn rotation(&self) -> Option<&SignedMap> {
        self.rotation.as_ref()
    }

    /// Attaches an involution after checking it is a chain map of order dividing 2.
    pub fn with_involution(mut self, map: SignedMap) -> Result<Self> {
        self.check_action(&map, 2)?;
        self.involution = Some(map);
        Ok(self)
    }

    pub fn with_rotation(mut self, map: SignedMap, order: u32) -> Result<Self> {
        self.check_action(&map, order)?;
        self.rotation = Some(map);
        Ok(self)
    }

    pub fn without_actions(mut self) -> Self {
        self.involution = None;
        self.rotation = None;
        self
    }

    /// Errors unless `map` is a degree-preserving chain map with `map^order = id`.
    pub fn check_action(&self, map: &SignedMap, order: u32) -> Result<()> {
        if map.len() != self.len()
            || map.image.iter().enumerate().any(|(i, &(j, s))| {
                j >= self.len() || self.degrees[j] != self.degrees[i] || s.abs() != 1
            })
        {
            return Err(Error::MalformedComplex(
                "action is not a signed cell permutation".into(),
            ));
        }
        if !self.is_chain_map(map) {
            return Err(Error::MalformedComplex(
                "action does not commute with the boundary".into(),
            ));
        }
        if !map.pow(order).is_identity() {
            return Err(Error::ActionOrderMismatch(order));
        }
        Ok(())
    }

    /// Whether `map` commutes with the boundary.
    pub fn is_chain_map(&self, map: &SignedMap) -> bool {
        (0..self.len()).all(|i| {
            let (j, s) = map.image[i];
            let lhs: Vec<(usize, i64)> =
                self.boundary[j].iter().map(|&(k, v)| (k, v * s)).collect();
            let rhs: Vec<(usize, i64)> = self.boundary[i]
                .iter()
                .map(|&(k, v)| {
                    let (k2, t) = map.image[k];
                    (k2, v * t)
                })
                .collect();
            normalize(&lhs) == normalize(&rhs)
        })
    }

    fn apply_boundary(&self, chain: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc = Vec::new();
        for &(i, v) in chain {
            for &(k, w) in &self.boundary[i] {
                acc.push((k, v * w));
            }
        }
        normalize(&acc)
    }

    /// Cellular product with the Koszul sign on the boundary; actions tensor when both exist.
    pub fn product(&self, other: &CellModel) -> CellModel {
        let n = other.len();
        let mut degrees = Vec::with_capacity(self.len() * n);
        let mut boundary = Vec::with_capacity(self.len() * n);
        for a in 0..self.len() {
            for b in 0..n {
                degrees.push(self.degrees[a] + other.degrees[b]);
                let mut d = Vec::new();
                for &(a2, v) in &self.boundary[a] {
                    d.push((a2 * n + b, v));
                }
                let sign = if self.degrees[a].is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                for &(b2, v) in &other.boundary[b] {
                    d.push((a * n + b2, sign * v));
                }
                boundary.push(d);
            }
        }
        let tensor = |x: &Option<SignedMap>, y: &Option<SignedMap>| match (x, y) {
            (Some(f), Some(g)) => Some(f.tensor(g)),
            _ => None,
        };
        CellModel {
            degrees,
            boundary,
            involution: tensor(&self.involution, &other.involution),
            rotation: tensor(&self.rotation, &other.rotation),
        }
    }

    /// Product of a list of models, a point when empty.
    pub fn product_all<'a>(factors: impl IntoIterator<Item = &'a CellModel>) -> CellModel {
        factors
            .into_iter()
            .fold(CellModel::point(), |acc, f| acc.product(f))
    }

    /// Chain complex with cells grouped by degree in increasing cell order.
    pub fn to_complex(&self) -> FinChainComplex {
        let top = self.degrees.iter().copied().max().map_or(0, |d| d + 1);
        let mut ranks = vec![0usize; top];
        let mut local = vec![0usize; self.len()];
        for (i, &d) in self.degrees.iter().enumerate() {
            local[i] = ranks[d];
            ranks[d] += 1;
        }
        let mut bds: Vec<Vec<Vec<(usize, i64)>>> =
            ranks.iter().map(|&r| vec![Vec::new(); r]).collect();
        for (i, &d) in self.degrees.iter().enumerate() {
            bds[d][local[i]] = normalize(
                &self.boundary[i]
                    .iter()
                    .map(|&(k, v)| (local[k], v))
                    .collect::<Vec<_>>(),
            );
        }
        FinChainComplex::from_sparse(ranks, bds).expect("cell model is a complex")
    }
}

/// Merges repeated cells and drops zero coefficients, sorted by cell.
pub(crate) fn normalize(chain: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for &(i, v) in chain {
        *acc.entry(i).or_insert(0) += v;
    }
    let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
    out.sort_unstable();
    out
}
