use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::h1::h1_integral;
use super::witness::torsion_witnesses;
use crate::engine::{component_model, component_series};
use crate::error::{Error, Result};
use crate::graded::{kunneth_integral, AbGroup, FieldSpec, GradedAb, PoincarePoly, PrimePower};
use crate::knot::KnotExpr;
use crate::oracle::{oracle_homology, DEFAULT_CELL_BUDGET};

/// Highest degree `reconstruct_low_degrees` covers.
pub const LOW_DEGREE_LIMIT: usize = 3;

fn coeff(p: &PoincarePoly, d: usize) -> Result<usize> {
    p.coeff(d)
        .to_usize()
        .ok_or_else(|| Error::Overflow(format!("Betti number {}", p.coeff(d))))
}

/// Integral homology in degrees `0..=up_to <= 3` from field series, `H_1` and witnesses.
///
/// Counts of `p`-primary summands follow from the universal coefficient theorem.
/// A degree whose 2-primary orders are not pinned down is flagged as a lower bound.
pub fn reconstruct_low_degrees(e: &KnotExpr, up_to: usize) -> Result<GradedAb> {
    if up_to > LOW_DEGREE_LIMIT {
        return Err(Error::UnsupportedClass(format!(
            "reconstruction covers degrees <= {LOW_DEGREE_LIMIT}, asked for {up_to}"
        )));
    }
    let q = component_series(e, FieldSpec::Rational, up_to)?;
    let f2 = component_series(e, FieldSpec::Prime(2), up_to)?;
    let f3 = component_series(e, FieldSpec::Prime(3), up_to)?;
    let h1 = h1_integral(e)?;
    let witnesses = torsion_witnesses(e, 2, up_to)?;
    let mut groups = vec![AbGroup::free(1)];
    if coeff(&q, 0)? != 1 {
        return Err(Error::Inconsistent("component is not connected".into()));
    }
    let mut prev = [0usize, 0usize];
    for n in 1..=up_to {
        let rank = coeff(&q, n)?;
        let mut counts = [0usize; 2];
        for (k, (series, p)) in [(&f2, 2u64), (&f3, 3u64)].into_iter().enumerate() {
            let b = coeff(series, n)?;
            counts[k] = b.checked_sub(rank + prev[k]).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "mod-{p} Betti number below the rational one in degree {n}"
                ))
            })?;
        }
        let group = if n == 1 {
            if h1.rank() != rank || h1.t2 != counts[0] || counts[1] != 0 {
                return Err(Error::Inconsistent(format!(
                    "H_1 = {h1} disagrees with Betti numbers ({rank}, {}, {})",
                    coeff(&f2, 1)?,
                    coeff(&f3, 1)?
                )));
            }
            h1.group()
        } else {
            let mut torsion = vec![PrimePower::new(2, 1); counts[0]];
            torsion.extend(vec![PrimePower::new(3, 1); counts[1]]);
            let pinned = witnesses.iter().find(|w| w.degree == n).map(|w| w.order);
            if let (Some(order), true) = (pinned, counts[0] > 0) {
                torsion[0] = order;
            }
            let mut g = AbGroup::new(rank, torsion);
            g.exact = counts[0] == 0 || (counts[0] == 1 && pinned.is_some());
            g.exact &= counts[1] == 0;
            g
        };
        prev = counts;
        groups.push(group);
    }
    Ok(GradedAb::from_groups(groups))
}

/// Result of comparing mod-p and rational Betti numbers below `2p - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionFloorReport {
    pub prime: u64,
    /// Degrees `0..below` were compared.
    pub below: usize,
    pub pass: bool,
    pub first_failure: Option<usize>,
}

/// Checks that mod-p and rational Betti numbers agree in every degree below `2p - 2`.
pub fn check_low_degree_torsion_free(e: &KnotExpr, p: u64) -> Result<TorsionFloorReport> {
    if p == 2 || !crate::graded::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let below = 2 * p as usize - 2;
    let cutoff = below - 1;
    let q = component_series(e, FieldSpec::Rational, cutoff)?;
    let fp = component_series(e, FieldSpec::Prime(p), cutoff)?;
    let first_failure = (0..below).find(|&d| q.coeff(d) != fp.coeff(d));
    Ok(TorsionFloorReport {
        prime: p,
        below,
        pass: first_failure.is_none(),
        first_failure,
    })
}

/// Pads with zero groups or truncates to degrees `0..=cutoff`.
fn fit(h: GradedAb, cutoff: usize) -> Result<GradedAb> {
    if h.cutoff() >= cutoff {
        return h.truncate(cutoff);
    }
    let mut groups = h.groups().to_vec();
    groups.resize(cutoff + 1, AbGroup::zero());
    Ok(GradedAb::from_groups(groups))
}

/// Integral homology of `Conf(R^2, n)`, with Poincaré polynomial `prod (1 + k t)`.
pub fn configuration_homology(n: usize, cutoff: usize) -> GradedAb {
    let mut ranks = vec![1usize];
    for k in 1..n {
        let mut next = vec![0; ranks.len() + 1];
        for (d, r) in ranks.iter().enumerate() {
            next[d] += r;
            next[d + 1] += r * k;
        }
        ranks = next;
    }
    GradedAb::free(cutoff, &ranks)
}

fn structural(e: &KnotExpr, cutoff: usize) -> Result<GradedAb> {
    let circle = GradedAb::free(cutoff, &[1, 1]);
    let product = |parts: Vec<GradedAb>| -> Result<GradedAb> {
        parts.iter().try_fold(GradedAb::point(cutoff), |acc, h| {
            kunneth_integral(&acc, h, cutoff)
        })
    };
    match e {
        KnotExpr::Unknot => Ok(GradedAb::point(cutoff)),
        KnotExpr::Torus { .. } => Ok(circle),
        KnotExpr::Cable { child, .. } => {
            product(vec![circle, component_homology_integral(child, cutoff)?])
        }
        KnotExpr::Sum { children } if KnotExpr::young_orbits(children).len() == children.len() => {
            let mut parts = vec![configuration_homology(children.len(), cutoff)];
            for c in children {
                parts.push(component_homology_integral(c, cutoff)?);
            }
            product(parts)
        }
        KnotExpr::HypSplice {
            symmetry, children, ..
        } if children.is_empty()
            || symmetry
                .as_ref()
                .is_some_and(|s| s.is_identity_perm() && s.reversals.iter().all(|r| !r)) =>
        {
            let mut parts = vec![circle.clone(), circle];
            for c in children {
                parts.push(component_homology_integral(c, cutoff)?);
            }
            product(parts)
        }
        _ => Err(Error::UnsupportedClass(format!(
            "no product decomposition for {e}"
        ))),
    }
}

/// Integral homology of the component of `e` in degrees `0..=cutoff`.
///
/// Tries the product decompositions, then the cell oracle, then low-degree
/// reconstruction. The result may carry lower-bound flags from the last step.
pub fn component_homology_integral(e: &KnotExpr, cutoff: usize) -> Result<GradedAb> {
    if let Ok(h) = structural(e, cutoff) {
        return Ok(h);
    }
    if let Ok(h) = oracle_homology(&component_model(&e.canonicalize()), DEFAULT_CELL_BUDGET) {
        return fit(h, cutoff);
    }
    if cutoff <= LOW_DEGREE_LIMIT {
        return reconstruct_low_degrees(e, cutoff);
    }
    Err(Error::UnsupportedClass(format!(
        "integral homology of {e} through degree {cutoff}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse;

    fn low(s: &str, n: usize) -> Vec<String> {
        reconstruct_low_degrees(&parse(s).unwrap(), n)
            .unwrap()
            .groups()
            .iter()
            .map(|g| format!("{g}{}", if g.exact { "" } else { "?" }))
            .collect()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(low("U", 3), vec!["Z", "0", "0", "0"]);
        assert_eq!(low("T(3,2)", 3), vec!["Z", "Z", "0", "0"]);
        assert_eq!(
            low("sum(T(3,2), T(3,2))", 3),
            vec!["Z", "Z^2", "Z + Z/2", "0"]
        );
        assert_eq!(
            low("hyp(W; m=2; rev=yes; T(3,2))", 3),
            vec!["Z", "Z^2 + Z/2", "Z + Z/2?", "0"]
        );
    }

    #[test]
    fn four_equal_summands() {
        let g = low("sum(T(3,2), T(3,2), T(3,2), T(3,2))", 3);
        assert_eq!(g[2], "Z^2 + (Z/2)^2?");
        assert_eq!(g[3], "Z^3 + (Z/2)^2?");
    }

    #[test]
    fn torsion_floor() {
        let r = check_low_degree_torsion_free(&KnotExpr::torus(3, 2), 5).unwrap();
        assert!(r.pass);
        assert_eq!(r.below, 8);
        let e = parse("sum(T(3,2), T(3,2), T(3,2))").unwrap();
        assert!(check_low_degree_torsion_free(&e, 3).unwrap().pass);
    }

    #[test]
    fn integral_paths() {
        let h = component_homology_integral(&parse("sum(T(3,2), T(5,2))").unwrap(), 4).unwrap();
        assert_eq!(h.rational_betti().to_u64().unwrap(), vec![1, 3, 3, 1, 0]);
        let h = component_homology_integral(&parse("hyp(W; m=2; rev=yes; T(3,2))").unwrap(), 4)
            .unwrap();
        assert_eq!(h.degree(1).to_string(), "Z^2 + Z/2");
        assert!(h.is_exact());
        let h =
            component_homology_integral(&parse("sum(T(3,2), T(3,2), T(3,2))").unwrap(), 3).unwrap();
        assert_eq!(h.degree(1).to_string(), "Z^2");
    }
}
