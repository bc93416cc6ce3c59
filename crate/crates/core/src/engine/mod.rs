//! Field-coefficient Poincaré series of components of long knots.

mod model;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub use model::{component_model, Model};

use crate::error::{Error, Result};
use crate::functors::{c2_series, c2_slice, WeightedDims, WeightedSeries};
use crate::graded::{mod_p_betti, FieldSpec, GradedAb, PoincarePoly};
use crate::knot::{KnotExpr, SymmetryData};
use crate::oracle::{oracle_homology, DEFAULT_CELL_BUDGET};

type CacheKey = (String, FieldSpec, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, PoincarePoly>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, PoincarePoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Poincaré series of the component of `e` in degrees `0..=cutoff`.
///
/// Results are memoised on the canonical form of `e`.
pub fn component_series(e: &KnotExpr, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly> {
    let canon = e.canonicalize();
    let key = (canon.to_string(), field, cutoff);
    if let Some(p) = cache().read().expect("series cache").get(&key) {
        return Ok(p.clone());
    }
    let p = model_series(&component_model(&canon), field, cutoff)?;
    cache()
        .write()
        .expect("series cache")
        .insert(key, p.clone());
    Ok(p)
}

/// Poincaré series of a model.
pub fn model_series(model: &Model, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly> {
    match model {
        Model::Point => Ok(PoincarePoly::one(cutoff)),
        Model::Circle => Ok(PoincarePoly::circle(cutoff)),
        Model::Product { factors } => factors
            .iter()
            .try_fold(PoincarePoly::one(cutoff), |acc, f| {
                Ok(acc.mul(&model_series(f, field, cutoff)?))
            }),
        Model::EPiece { children, .. } => {
            let vars: Vec<String> = (0..children.len()).map(|i| format!("x{i}")).collect();
            let mut v = WeightedDims::new(vars);
            for (i, (child, _)) in children.iter().enumerate() {
                v.add_series(i, &model_series(child, field, cutoff)?);
            }
            let weight: Vec<u32> = children.iter().map(|(_, k)| *k as u32).collect();
            c2_slice(&v, field, cutoff, &weight)
        }
        Model::CyclicTwist {
            order,
            factors,
            perm,
            reversed,
        } => twist_series(model, *order, factors, perm, reversed, field, cutoff),
        Model::Opaque { name } => Err(Error::UnsupportedSymmetry(format!(
            "symmetry data of `{name}` is needed"
        ))),
    }
}

fn twist_series(
    model: &Model,
    order: u32,
    factors: &[Model],
    perm: &[usize],
    reversed: &[bool],
    field: FieldSpec,
    cutoff: usize,
) -> Result<PoincarePoly> {
    let identity = perm.iter().enumerate().all(|(i, &j)| i == j);
    let any_rev = reversed.iter().any(|&r| r);
    let p = field.characteristic();
    if identity && !any_rev {
        return model_series(
            &Model::Product {
                factors: std::iter::once(Model::Circle)
                    .chain(factors.iter().cloned())
                    .collect(),
            },
            field,
            cutoff,
        );
    }
    if !any_rev && (p == 0 || !(order as u64).is_multiple_of(p)) {
        let series = factors
            .iter()
            .map(|f| model_series(f, field, cutoff))
            .collect::<Result<Vec<_>>>()?;
        let fixed = invariant_series(&series, perm, order, cutoff)?;
        return Ok(PoincarePoly::circle(cutoff).mul(&fixed));
    }
    if factors.iter().all(Model::is_circle_product) {
        let h = oracle_homology(model, DEFAULT_CELL_BUDGET)?;
        return field_series(&h, field, cutoff);
    }
    Err(Error::UnsupportedSymmetry(format!(
        "cyclic action of order {order} on {} children{} over {field}",
        factors.len(),
        if any_rev { " with reversals" } else { "" }
    )))
}

/// Dimensions of the invariants of the factor permutation action, by averaging traces.
fn invariant_series(
    series: &[PoincarePoly],
    perm: &[usize],
    order: u32,
    cutoff: usize,
) -> Result<PoincarePoly> {
    let mut total = vec![BigInt::zero(); cutoff + 1];
    let orbits = SymmetryData {
        order,
        perm: perm.to_vec(),
        reversals: vec![false; perm.len()],
    }
    .orbits();
    for j in 0..order as usize {
        let mut trace = vec![BigInt::zero(); cutoff + 1];
        trace[0] = BigInt::from(1);
        for orbit in &orbits {
            let c = orbit.len();
            let cycles = j.gcd(&c);
            let len = c / cycles;
            let h = &series[orbit[0]];
            let mut cyc = vec![BigInt::zero(); cutoff + 1];
            for d in 0..=cutoff {
                if d * len > cutoff {
                    break;
                }
                let mut x = BigInt::from(h.coeff(d).clone());
                if d % 2 == 1 && len % 2 == 0 {
                    x = -x;
                }
                cyc[d * len] += x;
            }
            for _ in 0..cycles {
                trace = mul_int(&trace, &cyc, cutoff);
            }
        }
        for d in 0..=cutoff {
            total[d] += &trace[d];
        }
    }
    let m = BigInt::from(order);
    let coeffs = total
        .into_iter()
        .enumerate()
        .map(|(d, x)| {
            let (q, r) = x.div_rem(&m);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "trace average not integral in degree {d}"
                )));
            }
            Ok(q.to_biguint().expect("non-negative"))
        })
        .collect::<Result<Vec<BigUint>>>()?;
    Ok(PoincarePoly::from_coeffs(coeffs))
}

fn mul_int(a: &[BigInt], b: &[BigInt], cutoff: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); cutoff + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cutoff + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Field Betti numbers of an integral graded group, padded with zeros up to `cutoff`.
pub fn field_series(h: &GradedAb, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly> {
    let betti = match field {
        FieldSpec::Rational => h.rational_betti(),
        FieldSpec::Prime(p) => mod_p_betti(h, p)?,
    };
    let coeffs = (0..=cutoff)
        .map(|d| {
            if d <= betti.cutoff() {
                betti.coeff(d).clone()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    Ok(PoincarePoly::from_coeffs(coeffs))
}

/// Homology of the union of all components built from the generators by connected sum.
///
/// Generators sharing a weight class share a weight variable; variables are
/// ordered by first appearance.
pub fn total_series(
    generators: &[(KnotExpr, String)],
    field: FieldSpec,
    cutoff: usize,
    max_weight: u32,
) -> Result<WeightedSeries> {
    let mut vars: Vec<String> = Vec::new();
    for (_, class) in generators {
        if !vars.contains(class) {
            vars.push(class.clone());
        }
    }
    let mut v = WeightedDims::new(vars.clone());
    for (e, class) in generators {
        if !e.is_prime() {
            return Err(Error::Inconsistent(format!("generator {e} is not prime")));
        }
        let var = vars.iter().position(|c| c == class).expect("class listed");
        v.add_series(var, &component_series(e, field, cutoff)?);
    }
    c2_series(&v, field, cutoff, max_weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse;

    fn series(s: &str, field: FieldSpec, cutoff: usize) -> Vec<u64> {
        component_series(&parse(s).unwrap(), field, cutoff)
            .unwrap()
            .to_u64()
            .unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rational;
    const F2: FieldSpec = FieldSpec::Prime(2);

    #[test]
    fn spec_series() {
        assert_eq!(series("T(3,2)", Q, 3), vec![1, 1, 0, 0]);
        assert_eq!(series("T(3,2)", F2, 3), vec![1, 1, 0, 0]);
        assert_eq!(series("cable(17,2; T(-3,2))", Q, 3), vec![1, 2, 1, 0]);
        assert_eq!(
            series("hyp(W; m=2; rev=yes; T(3,2))", F2, 4),
            vec![1, 3, 3, 1, 0]
        );
        assert_eq!(series("U", Q, 2), vec![1, 0, 0]);
        assert_eq!(series("hyp(F8)", Q, 3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn twisted_cases() {
        let swap = "hyp(B; m=2; perm=(1 2); T(3,2), T(3,2))";
        assert_eq!(series(swap, Q, 4), vec![1, 3, 3, 1, 0]);
        assert_eq!(series(swap, FieldSpec::Prime(3), 4), vec![1, 3, 3, 1, 0]);
        let f2 = series(swap, F2, 4);
        let oracle = oracle_homology(&component_model(&parse(swap).unwrap()), 2000).unwrap();
        assert_eq!(f2, field_series(&oracle, F2, 4).unwrap().to_u64().unwrap());
        assert_eq!(
            series("hyp(W; m=2; rev=yes; T(3,2))", Q, 3),
            vec![1, 2, 1, 0]
        );
    }

    #[test]
    fn unsupported() {
        let e = parse("hyp(B; m=2; perm=(1 2); sum(T(3,2),T(5,2)), sum(T(3,2),T(5,2)))").unwrap();
        assert!(matches!(
            component_series(&e, F2, 3),
            Err(Error::UnsupportedSymmetry(_))
        ));
        let e = parse("hyp(W; T(3,2))").unwrap();
        assert!(matches!(
            component_series(&e, Q, 3),
            Err(Error::UnsupportedSymmetry(_))
        ));
    }

    #[test]
    fn sums() {
        assert_eq!(series("sum(T(3,2), T(3,2))", Q, 3), vec![1, 2, 1, 0]);
        assert_eq!(series("sum(T(3,2), T(3,2))", F2, 3), vec![1, 2, 2, 1]);
        assert_eq!(series("sum(T(3,2), T(5,2))", Q, 3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn total_matches_components() {
        let gens = vec![
            (KnotExpr::torus(3, 2), "a".to_string()),
            (KnotExpr::torus(5, 2), "b".to_string()),
        ];
        let t = total_series(&gens, Q, 4, 2).unwrap();
        assert_eq!(
            t.slice(&[1, 1]),
            component_series(&parse("sum(T(3,2),T(5,2))").unwrap(), Q, 4).unwrap()
        );
        assert_eq!(
            t.slice(&[2, 0]),
            component_series(&parse("sum(T(3,2),T(3,2))").unwrap(), Q, 4).unwrap()
        );
        let empty = total_series(&[], Q, 3, 2).unwrap();
        assert_eq!(empty.total().to_u64().unwrap(), vec![1, 0, 0, 0]);
    }
}
