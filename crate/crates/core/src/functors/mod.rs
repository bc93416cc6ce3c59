//! Graded dimensions of free Lie algebras, free restricted Lie algebras,
//! symmetric algebras and the homology of the free little 2-cubes object.
//!
//! Over `F_2` the free Lie algebra is taken ungraded (every class even, `[x,x] = 0`)
//! before the restriction towers are added; see [`free_lie_dims_even`].

mod multi;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{FieldSpec, PoincarePoly};
use multi::{desuspend, expand, solve_lie, towers, Dense, Factor, Pbw, Region};

/// Largest total weight any weighted computation accepts.
pub const WEIGHT_BOUND: u32 = 16;

/// Dimensions of a graded vector space in degrees `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedDims {
    dims: Vec<BigUint>,
}

impl GradedDims {
    /// `dims[d]` is the dimension in degree `d`; entries above `cutoff` are dropped.
    pub fn new(cutoff: usize, dims: &[u64]) -> Self {
        let mut v = vec![BigUint::zero(); cutoff + 1];
        for (d, &x) in dims.iter().enumerate().take(cutoff + 1) {
            v[d] = BigUint::from(x);
        }
        GradedDims { dims: v }
    }

    pub fn from_biguint(dims: Vec<BigUint>) -> Self {
        assert!(!dims.is_empty());
        GradedDims { dims }
    }

    pub fn cutoff(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, d: usize) -> BigUint {
        self.dims.get(d).cloned().unwrap_or_default()
    }

    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.dims.iter().map(|c| c.to_u64()).collect()
    }

    fn dense(&self, region: &Arc<Region>) -> Dense {
        let mut out = Dense::zero(region);
        for (d, c) in self.dims.iter().enumerate().take(region.max_degree + 1) {
            *out.get_mut(d, 0) = BigInt::from(c.clone());
        }
        out
    }

    fn from_dense(x: &Dense, cutoff: usize) -> Self {
        GradedDims {
            dims: (0..=cutoff)
                .map(|d| {
                    x.get(d, 0)
                        .to_biguint()
                        .expect("dimensions are non-negative")
                })
                .collect(),
        }
    }
}

/// Which PBW identity a set of Lie dimensions satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieConvention {
    /// Graded: `prod_{odd}(1+t^n)^{L_n} prod_{even}(1-t^n)^{-L_n} = 1/(1-h_W)`.
    Super,
    /// Ungraded, characteristic 2: `prod(1-t^n)^{-L_n} = 1/(1-h_W)`.
    Even,
}

/// Dimensions of a free (possibly restricted) Lie algebra per degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieDims {
    pub dims: GradedDims,
    pub convention: LieConvention,
}

impl LieDims {
    pub fn dim(&self, d: usize) -> BigUint {
        self.dims.dim(d)
    }
    pub fn cutoff(&self) -> usize {
        self.dims.cutoff()
    }
}

fn unweighted(cutoff: usize) -> Arc<Region> {
    Region::new(cutoff, &[], None)
}

/// Free graded Lie algebra dimensions on `w`, from the graded PBW identity.
pub fn free_lie_dims(w: &GradedDims, cutoff: usize) -> Result<LieDims> {
    let region = unweighted(cutoff);
    let lie = solve_lie(&w.dense(&region), Pbw::Super)?;
    Ok(LieDims {
        dims: GradedDims::from_dense(&lie, cutoff),
        convention: LieConvention::Super,
    })
}

/// Free Lie algebra dimensions over `F_2`, where every class is even.
pub fn free_lie_dims_even(w: &GradedDims, cutoff: usize) -> Result<LieDims> {
    let region = unweighted(cutoff);
    let lie = solve_lie(&w.dense(&region), Pbw::Even)?;
    Ok(LieDims {
        dims: GradedDims::from_dense(&lie, cutoff),
        convention: LieConvention::Even,
    })
}

/// Hilbert series of the generators, recovered from Lie dimensions by PBW re-expansion.
pub fn generators_from_lie(l: &LieDims, cutoff: usize) -> GradedDims {
    let region = unweighted(cutoff);
    let pbw = match l.convention {
        LieConvention::Super => Pbw::Super,
        LieConvention::Even => Pbw::Even,
    };
    let envelope = expand(&l.dims.dense(&region), |d| pbw.factor(d));
    // envelope = 1/(1-h), so h = 1 - 1/envelope
    let mut h = Dense::zero(&region);
    let mut inv = Dense::one(&region);
    for d in 1..=cutoff {
        let mut acc = BigInt::zero();
        for k in 1..=d {
            acc += envelope.get(k, 0) * inv.get(d - k, 0);
        }
        *inv.get_mut(d, 0) = -acc;
    }
    for d in 1..=cutoff {
        *h.get_mut(d, 0) = -inv.get(d, 0).clone();
    }
    GradedDims::from_dense(&h, cutoff)
}

/// Free restricted Lie algebra `Lp` and its tower part `Wp` over `F_p`.
///
/// For odd `p` the towers sit on even classes of the graded algebra `l`.
/// For `p = 2` the generators are recovered from `l`, the ungraded algebra is
/// solved, and towers sit on every class; `Wp` then holds the towers.
pub fn restricted_extension(l: &LieDims, p: u64, cutoff: usize) -> Result<(LieDims, LieDims)> {
    if !crate::graded::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let region = unweighted(cutoff);
    let (base, on_even_only) = if p == 2 {
        let base = match l.convention {
            LieConvention::Even => l.clone(),
            LieConvention::Super => free_lie_dims_even(&generators_from_lie(l, cutoff), cutoff)?,
        };
        (base, false)
    } else {
        (l.clone(), true)
    };
    let dense = base.dims.dense(&region);
    let tw = towers(&dense, p, |d| !on_even_only || d % 2 == 0);
    let mut lp = dense.clone();
    for (a, b) in lp.c.iter_mut().zip(&tw.c) {
        *a += b;
    }
    Ok((
        LieDims {
            dims: GradedDims::from_dense(&lp, cutoff),
            convention: base.convention,
        },
        LieDims {
            dims: GradedDims::from_dense(&tw, cutoff),
            convention: base.convention,
        },
    ))
}

fn field_factor(field: FieldSpec) -> impl Fn(usize) -> Factor {
    move |d| match field {
        FieldSpec::Prime(2) => Factor::Polynomial,
        _ if d % 2 == 1 => Factor::Exterior,
        _ => Factor::Polynomial,
    }
}

/// Poincaré series of the free graded-commutative algebra on `v`.
pub fn symmetric_series(v: &GradedDims, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly> {
    if !v.dim(0).is_zero() {
        return Err(Error::DegreeZeroGenerator);
    }
    let region = unweighted(cutoff);
    let s = expand(&v.dense(&region), field_factor(field));
    Ok(PoincarePoly::from_coeffs(
        (0..=cutoff)
            .map(|d| s.get(d, 0).to_biguint().expect("non-negative"))
            .collect(),
    ))
}

/// Graded dimensions refined by a weight vector, one coordinate per generator class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDims {
    pub weight_vars: Vec<String>,
    classes: BTreeMap<(usize, Vec<u32>), BigUint>,
}

impl WeightedDims {
    pub fn new(weight_vars: Vec<String>) -> Self {
        WeightedDims {
            weight_vars,
            classes: BTreeMap::new(),
        }
    }

    /// Adds `count` classes in `degree` with the given weight vector.
    pub fn add(&mut self, degree: usize, weight: Vec<u32>, count: BigUint) {
        assert_eq!(weight.len(), self.weight_vars.len(), "weight vector length");
        if count.is_zero() {
            return;
        }
        *self.classes.entry((degree, weight)).or_default() += count;
    }

    /// Adds the coefficients of `series` as classes of weight `e_var`.
    pub fn add_series(&mut self, var: usize, series: &PoincarePoly) {
        let mut w = vec![0; self.weight_vars.len()];
        w[var] = 1;
        for (d, c) in series.coeffs().iter().enumerate() {
            self.add(d, w.clone(), c.clone());
        }
    }

    /// Reduced homology of `vars.len()` disjoint points, one per weight variable.
    pub fn points(vars: &[&str]) -> Self {
        let mut v = WeightedDims::new(vars.iter().map(|s| s.to_string()).collect());
        for i in 0..vars.len() {
            let mut w = vec![0; vars.len()];
            w[i] = 1;
            v.add(0, w, BigUint::from(1u32));
        }
        v
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &[u32], &BigUint)> {
        self.classes.iter().map(|((d, w), c)| (*d, w.as_slice(), c))
    }

    fn suspended_dense(&self, region: &Arc<Region>) -> Result<Dense> {
        let mut out = Dense::zero(region);
        for ((d, w), c) in &self.classes {
            if d + 1 > region.max_degree {
                continue;
            }
            if *d == 0 && w.iter().all(|&x| x == 0) {
                return Err(Error::DegreeZeroGenerator);
            }
            if let Some(wi) = region.weight_index(w) {
                *out.get_mut(d + 1, wi) += BigInt::from(c.clone());
            }
        }
        Ok(out)
    }
}

/// Series in degree and weight, truncated at `cutoff` and at the weight region it was computed on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedSeries {
    pub cutoff: usize,
    pub weight_vars: Vec<String>,
    terms: BTreeMap<(usize, Vec<u32>), BigUint>,
}

impl WeightedSeries {
    /// Coefficient at `(degree, weight)`.
    pub fn coeff(&self, degree: usize, weight: &[u32]) -> BigUint {
        self.terms
            .get(&(degree, weight.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// The Poincaré series of one weight slice.
    pub fn slice(&self, weight: &[u32]) -> PoincarePoly {
        PoincarePoly::from_coeffs((0..=self.cutoff).map(|d| self.coeff(d, weight)).collect())
    }

    /// All weight variables set to 1.
    pub fn total(&self) -> PoincarePoly {
        let mut c = vec![BigUint::zero(); self.cutoff + 1];
        for ((d, _), x) in &self.terms {
            c[*d] += x;
        }
        PoincarePoly::from_coeffs(c)
    }

    /// Sum of the slices whose total weight is `n`.
    pub fn total_weight(&self, n: u32) -> PoincarePoly {
        let mut c = vec![BigUint::zero(); self.cutoff + 1];
        for ((d, w), x) in &self.terms {
            if w.iter().sum::<u32>() == n {
                c[*d] += x;
            }
        }
        PoincarePoly::from_coeffs(c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &[u32], &BigUint)> {
        self.terms.iter().map(|((d, w), c)| (*d, w.as_slice(), c))
    }

    fn from_dense(x: &Dense, cutoff: usize, weight_vars: Vec<String>) -> Self {
        let mut terms = BTreeMap::new();
        for (d, w, c) in x.terms() {
            if d <= cutoff {
                terms.insert(
                    (d, x.region.weights[w].clone()),
                    c.to_biguint().expect("non-negative"),
                );
            }
        }
        WeightedSeries {
            cutoff,
            weight_vars,
            terms,
        }
    }
}

impl fmt::Display for WeightedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut weights: Vec<&Vec<u32>> = self.terms.keys().map(|(_, w)| w).collect();
        weights.sort();
        weights.dedup();
        for w in weights {
            writeln!(f, "{w:?}: {}", self.slice(w))?;
        }
        Ok(())
    }
}

fn c2_on_region(
    v: &WeightedDims,
    field: FieldSpec,
    cutoff: usize,
    caps: &[u32],
    max_total: Option<u32>,
) -> Result<WeightedSeries> {
    if v.weight_vars.is_empty() && v.classes.keys().any(|(d, _)| *d == 0) {
        return Err(Error::DegreeZeroGenerator);
    }
    let region = Region::new(cutoff + 2, caps, max_total);
    let w = v.suspended_dense(&region)?;
    let gens = match field {
        FieldSpec::Rational => desuspend(&solve_lie(&w, Pbw::Super)?, 1),
        FieldSpec::Prime(2) => {
            let lie = solve_lie(&w, Pbw::Even)?;
            let mut lp = towers(&lie, 2, |_| true);
            for (a, b) in lp.c.iter_mut().zip(&lie.c) {
                *a += b;
            }
            desuspend(&lp, 1)
        }
        FieldSpec::Prime(p) => {
            let lie = solve_lie(&w, Pbw::Super)?;
            let tw = towers(&lie, p, |d| d % 2 == 0);
            let mut lp = tw.clone();
            for (a, b) in lp.c.iter_mut().zip(&lie.c) {
                *a += b;
            }
            let mut g = desuspend(&lp, 1);
            let extra = desuspend(&tw, 2);
            for (a, b) in g.c.iter_mut().zip(&extra.c) {
                *a += b;
            }
            g
        }
    };
    let s = expand(&gens, field_factor(field));
    Ok(WeightedSeries::from_dense(
        &s,
        cutoff,
        v.weight_vars.clone(),
    ))
}

fn check_weight(total: u32) -> Result<()> {
    if total > WEIGHT_BOUND {
        Err(Error::WeightTooLarge {
            total,
            bound: WEIGHT_BOUND,
        })
    } else {
        Ok(())
    }
}

/// Homology of the free little 2-cubes object on `v`, in all weights of total at most `max_weight`.
///
/// `v` is the reduced homology of `X` plus one degree-0 class per component,
/// each class weighted by its generator class. The coefficient at
/// `(d, w)` is the dimension of `H_d` of the labelled configuration space of weight `w`.
pub fn c2_series(
    v: &WeightedDims,
    field: FieldSpec,
    cutoff: usize,
    max_weight: u32,
) -> Result<WeightedSeries> {
    check_weight(max_weight)?;
    let caps = vec![max_weight; v.weight_vars.len()];
    c2_on_region(v, field, cutoff, &caps, Some(max_weight))
}

/// The single weight slice of [`c2_series`] at `weight`.
pub fn c2_slice(
    v: &WeightedDims,
    field: FieldSpec,
    cutoff: usize,
    weight: &[u32],
) -> Result<PoincarePoly> {
    assert_eq!(weight.len(), v.weight_vars.len(), "weight vector length");
    check_weight(weight.iter().sum())?;
    let s = c2_on_region(v, field, cutoff, weight, None)?;
    Ok(s.slice(weight))
}

/// [`c2_series`] without the unit and without the weight-1 part.
pub fn gamma_series(
    v: &WeightedDims,
    field: FieldSpec,
    cutoff: usize,
    max_weight: u32,
) -> Result<WeightedSeries> {
    let mut s = c2_series(v, field, cutoff, max_weight)?;
    s.terms.retain(|(_, w), _| w.iter().sum::<u32>() >= 2);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: &GradedDims) -> Vec<u64> {
        x.to_u64().unwrap()
    }

    #[test]
    fn lie_examples() {
        let l = free_lie_dims(&GradedDims::new(6, &[0, 0, 1]), 6).unwrap();
        assert_eq!(u(&l.dims), vec![0, 0, 1, 0, 0, 0, 0]);
        let l = free_lie_dims(&GradedDims::new(6, &[0, 1]), 6).unwrap();
        assert_eq!(u(&l.dims), vec![0, 1, 1, 0, 0, 0, 0]);
        let l = free_lie_dims(&GradedDims::new(4, &[0, 2]), 4).unwrap();
        assert_eq!(l.dim(2), BigUint::from(3u32));
        assert_eq!(
            free_lie_dims(&GradedDims::new(4, &[1]), 4),
            Err(Error::DegreeZeroGenerator)
        );
    }

    #[test]
    fn restricted_odd() {
        let l = LieDims {
            dims: GradedDims::new(20, &[0, 0, 1]),
            convention: LieConvention::Super,
        };
        let (lp, wp) = restricted_extension(&l, 3, 20).unwrap();
        let mut want = vec![0; 21];
        want[2] = 1;
        want[6] = 1;
        want[18] = 1;
        assert_eq!(u(&lp.dims), want);
        want[2] = 0;
        assert_eq!(u(&wp.dims), want);
        let odd = LieDims {
            dims: GradedDims::new(9, &[0, 1, 0, 2]),
            convention: LieConvention::Super,
        };
        let (lp, wp) = restricted_extension(&odd, 5, 9).unwrap();
        assert_eq!(lp.dims, odd.dims);
        assert!(wp.dims.dims().iter().all(Zero::is_zero));
    }

    #[test]
    fn restricted_two() {
        let l = LieDims {
            dims: GradedDims::new(9, &[0, 1, 1]),
            convention: LieConvention::Super,
        };
        let (lp, _) = restricted_extension(&l, 2, 9).unwrap();
        assert_eq!(u(&lp.dims), vec![0, 1, 1, 0, 1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn generators_recovered() {
        let w = GradedDims::new(8, &[0, 2, 1, 0, 3]);
        let l = free_lie_dims(&w, 8).unwrap();
        assert_eq!(generators_from_lie(&l, 8), w);
    }

    #[test]
    fn symmetric_examples() {
        let q = FieldSpec::Rational;
        let f2 = FieldSpec::Prime(2);
        let odd = GradedDims::new(5, &[0, 1]);
        assert_eq!(
            symmetric_series(&odd, q, 5).unwrap().to_u64().unwrap(),
            vec![1, 1, 0, 0, 0, 0]
        );
        assert_eq!(
            symmetric_series(&odd, f2, 5).unwrap().to_u64().unwrap(),
            vec![1; 6]
        );
        let even = GradedDims::new(5, &[0, 0, 1]);
        assert_eq!(
            symmetric_series(&even, q, 5).unwrap().to_u64().unwrap(),
            vec![1, 0, 1, 0, 1, 0]
        );
    }

    #[test]
    fn point_configurations() {
        let v = WeightedDims::points(&["x"]);
        let s = c2_series(&v, FieldSpec::Rational, 5, 4).unwrap();
        assert_eq!(s.slice(&[1]).to_u64().unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(s.slice(&[2]).to_u64().unwrap(), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(s.slice(&[3]).to_u64().unwrap(), vec![1, 1, 0, 0, 0, 0]);
        let s2 = c2_series(&v, FieldSpec::Prime(2), 5, 4).unwrap();
        // braid groups mod 2: B_2 circle, B_4 has H_2 = Z/2
        assert_eq!(s2.slice(&[2]).to_u64().unwrap(), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(s2.slice(&[4]).to_u64().unwrap(), vec![1, 1, 1, 1, 0, 0]);
    }

    #[test]
    fn circle_mod_two() {
        let mut v = WeightedDims::new(vec!["x".into()]);
        v.add_series(0, &PoincarePoly::from_u64(6, &[1, 1]));
        let s = c2_slice(&v, FieldSpec::Prime(2), 6, &[2]).unwrap();
        assert_eq!(s.to_u64().unwrap(), vec![1, 2, 2, 1, 0, 0, 0]);
        let q = c2_slice(&v, FieldSpec::Rational, 6, &[2]).unwrap();
        assert_eq!(q.to_u64().unwrap(), vec![1, 2, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn gamma_drops_low_weights() {
        let v = WeightedDims::points(&["x"]);
        let g = gamma_series(&v, FieldSpec::Rational, 4, 3).unwrap();
        assert!(g.slice(&[1]).coeffs().iter().all(Zero::is_zero));
        assert!(g.slice(&[0]).coeffs().iter().all(Zero::is_zero));
        assert_eq!(g.slice(&[2]).to_u64().unwrap(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn weight_bound() {
        let v = WeightedDims::points(&["x"]);
        assert!(matches!(
            c2_series(&v, FieldSpec::Rational, 2, 17),
            Err(Error::WeightTooLarge { .. })
        ));
    }
}
