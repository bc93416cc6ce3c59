use serde::{Deserialize, Serialize};

use super::cells::{normalize, CellModel, SignedMap};
use super::complex::FinChainComplex;
use crate::error::{Error, Result};

/// Which attached action twists a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Involution,
    Rotation,
}

/// How a basis orbit of the cyclic action contributes to the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrbitKind {
    /// Trivial stabiliser: a free module.
    Free,
    /// Nontrivial stabiliser acting by `+1`.
    Trivial,
    /// Nontrivial stabiliser acting by `-1`.
    Sign,
}

/// One orbit of basis cells under the cyclic generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisOrbit {
    pub degree: usize,
    pub length: u32,
    pub kind: OrbitKind,
}

/// A based complex with a signed cellular action of a cyclic group of order `m`.
#[derive(Debug, Clone)]
pub struct CyclicAction {
    pub model: CellModel,
    pub generator: SignedMap,
    pub order: u32,
}

impl CyclicAction {
    /// Checks that `generator` is a chain map with `generator^order = id`.
    pub fn new(model: CellModel, generator: SignedMap, order: u32) -> Result<Self> {
        model.check_action(&generator, order)?;
        Ok(CyclicAction {
            model,
            generator,
            order,
        })
    }

    /// Orbits of basis cells with their stabiliser signs.
    pub fn orbits(&self) -> Vec<BasisOrbit> {
        let n = self.model.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut sign = 1;
            let mut i = start;
            loop {
                seen[i] = true;
                let (j, s) = self.generator.image[i];
                sign *= s;
                len += 1;
                i = j;
                if i == start {
                    break;
                }
            }
            let kind = if len == self.order {
                OrbitKind::Free
            } else if sign == 1 {
                OrbitKind::Trivial
            } else {
                OrbitKind::Sign
            };
            out.push(BasisOrbit {
                degree: self.model.degree(start),
                length: len,
                kind,
            });
        }
        out
    }

    /// Two-term free resolution over the group tensored with the complex.
    ///
    /// Cells `(0, b)` and `(1, b)` with `d(1, b) = (0, b) - (0, g b) - (1, d b)`.
    pub fn quotient_model(&self) -> CellModel {
        mapping_torus(&self.model, &self.generator)
    }

    pub fn complex(&self) -> FinChainComplex {
        self.quotient_model().to_complex()
    }
}

/// Algebraic mapping torus of a cellular chain map.
pub fn mapping_torus(model: &CellModel, map: &SignedMap) -> CellModel {
    let n = model.len();
    let mut degrees = Vec::with_capacity(2 * n);
    let mut boundary = Vec::with_capacity(2 * n);
    for b in 0..n {
        degrees.push(model.degree(b));
        boundary.push(model.boundary_of(b).to_vec());
    }
    for b in 0..n {
        degrees.push(model.degree(b) + 1);
        let (tb, s) = map.image[b];
        let mut d = vec![(b, 1), (tb, -s)];
        for &(k, v) in model.boundary_of(b) {
            d.push((n + k, -v));
        }
        boundary.push(normalize(&d));
    }
    CellModel::new(degrees, boundary).expect("mapping torus of a chain map")
}

/// Product of `factors` with the generator moving factor `i` to slot `perm[i]`.
///
/// Factor `i` is first acted on by `twists[i]` when present. Odd cells passing
/// each other contribute the Koszul sign.
pub fn twisted_power(
    factors: &[&CellModel],
    perm: &[usize],
    twists: &[Option<&SignedMap>],
) -> Result<(CellModel, SignedMap)> {
    let k = factors.len();
    if perm.len() != k || twists.len() != k {
        return Err(Error::MalformedComplex(
            "one slot and twist per factor expected".into(),
        ));
    }
    for i in 0..k {
        let (a, b) = (factors[i], factors[perm[i]]);
        if a.degrees() != b.degrees() || (0..a.len()).any(|c| a.boundary_of(c) != b.boundary_of(c))
        {
            return Err(Error::MalformedComplex(format!(
                "factor {i} differs from its image"
            )));
        }
    }
    let model = CellModel::product_all(factors.iter().copied()).without_actions();
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let mut image = Vec::with_capacity(model.len());
    let mut digits = vec![0usize; k];
    for cell in 0..model.len() {
        let mut rest = cell;
        for i in (0..k).rev() {
            digits[i] = rest % sizes[i];
            rest /= sizes[i];
        }
        let mut out = vec![0usize; k];
        let mut sign = 1i64;
        for i in 0..k {
            let (c, s) = match twists[i] {
                Some(g) => g.image[digits[i]],
                None => (digits[i], 1),
            };
            out[perm[i]] = c;
            sign *= s;
        }
        for i in 0..k {
            for j in i + 1..k {
                if perm[i] > perm[j]
                    && factors[i].degree(digits[i]) % 2 == 1
                    && factors[j].degree(digits[j]) % 2 == 1
                {
                    sign = -sign;
                }
            }
        }
        let idx = out.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c);
        image.push((idx, sign));
    }
    let g = SignedMap { image };
    if !model.is_chain_map(&g) {
        return Err(Error::MalformedComplex(
            "twisted permutation is not a chain map".into(),
        ));
    }
    Ok((model, g))
}

/// Cyclic shift of `power` copies of `x`, the wrapping factor twisted by `twist`.
pub fn cyclic_action(
    x: &CellModel,
    m: u32,
    power: usize,
    twist: Option<Twist>,
) -> Result<CyclicAction> {
    let g = match twist {
        None => None,
        Some(Twist::Involution) => Some(
            x.involution()
                .ok_or_else(|| Error::NotEvaluable("model has no involution".into()))?,
        ),
        Some(Twist::Rotation) => Some(
            x.rotation()
                .ok_or_else(|| Error::NotEvaluable("model has no rotation".into()))?,
        ),
    };
    let factors = vec![x; power];
    let perm: Vec<usize> = (0..power).map(|i| (i + 1) % power).collect();
    let mut twists = vec![None; power];
    if power > 0 {
        twists[power - 1] = g;
    }
    let (model, gen) = twisted_power(&factors, &perm, &twists)?;
    if !gen.pow(m).is_identity() {
        return Err(Error::ActionOrderMismatch(m));
    }
    CyclicAction::new(model, gen, m)
}

/// Chains on the quotient of the circle times `power` copies of `x` by the cyclic group of order `m`.
pub fn cyclic_quotient_complex(
    x: &CellModel,
    m: u32,
    power: usize,
    twist: Option<Twist>,
) -> Result<FinChainComplex> {
    Ok(cyclic_action(x, m, power, twist)?.complex())
}

/// Unordered pairs in the plane labelled by `x`: the free antipodal circle over the swap of `x^2`.
pub fn e2_model(x: &CellModel) -> CellModel {
    let (model, swap) =
        twisted_power(&[x, x], &[1, 0], &[None, None]).expect("swap of equal factors");
    mapping_torus(&model, &swap)
}

pub fn e2_complex(x: &CellModel) -> FinChainComplex {
    e2_model(x).to_complex()
}
