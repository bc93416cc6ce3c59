use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::h1::h1_integral;
use crate::engine::component_series;
use crate::error::{Error, Result};
use crate::graded::{is_prime, FieldSpec, PrimePower};
use crate::knot::KnotExpr;
use crate::oracle::{braid_group_complex, homology_znf};

/// Rule that produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `#_p g` with nonzero mod-p Betti number of `g` in odd degree `2t-1`.
    R1,
    /// `#_{p^r} g` with a witness of `g` in odd degree.
    R2,
    /// Cable: same degree and one degree higher.
    R3,
    /// Two-torsion of the first homology.
    R4,
    /// Torsion of the braid group for a sum of equal summands.
    R5,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One derivation of a torsion summand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    /// Path of the vertex where the rule fired.
    pub path: Vec<usize>,
    /// The subtree at that vertex.
    pub node: String,
    pub degree: usize,
    pub order: PrimePower,
    pub detail: String,
    pub premises: Vec<Derivation>,
}

/// A summand `Z/p^s` of `H_degree` of the component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorsionWitness {
    pub degree: usize,
    pub order: PrimePower,
    /// Every derivation found for this degree and prime, largest order first.
    pub provenance: Vec<Derivation>,
}

impl fmt::Display for TorsionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H_{} has a Z/{} summand",
            self.degree,
            self.order.order()
        )
    }
}

/// Certified `p`-primary torsion summands of the component of `e` in degrees `<= max_degree`.
///
/// Sorted by degree. Per degree the largest certified order is reported.
pub fn torsion_witnesses(e: &KnotExpr, p: u64, max_degree: usize) -> Result<Vec<TorsionWitness>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ds = derive(e, p, max_degree, &mut Vec::new())?;
    Ok(collect(ds))
}

fn collect(ds: Vec<Derivation>) -> Vec<TorsionWitness> {
    let mut by_degree: BTreeMap<usize, Vec<Derivation>> = BTreeMap::new();
    for d in ds {
        by_degree.entry(d.degree).or_default().push(d);
    }
    by_degree
        .into_iter()
        .map(|(degree, mut ds)| {
            ds.sort_by(|a, b| {
                b.order
                    .exponent
                    .cmp(&a.order.exponent)
                    .then_with(|| a.cmp(b))
            });
            ds.dedup();
            TorsionWitness {
                degree,
                order: ds[0].order,
                provenance: ds,
            }
        })
        .collect()
}

/// Power `r` with `n = p^r`, if any.
fn log_p(n: usize, p: u64) -> Option<u32> {
    let mut m = n as u64;
    let mut r = 0;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
        r += 1;
    }
    (m == 1 && r > 0).then_some(r)
}

fn derive(
    e: &KnotExpr,
    p: u64,
    max_degree: usize,
    path: &mut Vec<usize>,
) -> Result<Vec<Derivation>> {
    let node = e.to_string();
    let here = path.clone();
    let mut out = Vec::new();
    let make = |rule, degree, order, detail: String, premises| Derivation {
        rule,
        path: here.clone(),
        node: node.clone(),
        degree,
        order,
        detail,
        premises,
    };
    if p == 2 {
        let h = h1_integral(e)?;
        if h.t2 > 0 && max_degree >= 1 {
            out.push(make(
                Rule::R4,
                1,
                PrimePower::new(2, 1),
                format!("H_1 = {h}"),
                Vec::new(),
            ));
        }
    }
    match e {
        KnotExpr::Unknot | KnotExpr::Torus { .. } | KnotExpr::HypSplice { .. } => {}
        KnotExpr::Cable { child, .. } => {
            path.push(0);
            let below = derive(child, p, max_degree, path)?;
            path.pop();
            for w in below {
                let shifted = w.degree + 1;
                out.push(make(
                    Rule::R3,
                    w.degree,
                    w.order,
                    "times the cable circle".into(),
                    vec![w.clone()],
                ));
                if shifted <= max_degree {
                    out.push(make(
                        Rule::R3,
                        shifted,
                        w.order,
                        "times the cable circle, shifted".into(),
                        vec![w],
                    ));
                }
            }
        }
        KnotExpr::Sum { children } => {
            let orbits = KnotExpr::young_orbits(children);
            let n = children.len();
            if orbits.len() == 1 {
                let g = &children[0];
                if n as u64 == p {
                    let cutoff = (max_degree + 2) / (2 * p as usize);
                    let cutoff = cutoff.saturating_mul(2).saturating_sub(1);
                    if cutoff >= 1 {
                        let betti = component_series(g, FieldSpec::Prime(p), cutoff)?;
                        for t in 1..=cutoff.div_ceil(2) {
                            let b = betti.coeff(2 * t - 1);
                            let degree = 2 * p as usize * t - 2;
                            if *b != 0u32.into() && degree <= max_degree {
                                out.push(make(
                                    Rule::R1,
                                    degree,
                                    PrimePower::new(p, 1),
                                    format!(
                                        "mod-{p} Betti number {b} of the summand in degree {}",
                                        2 * t - 1
                                    ),
                                    Vec::new(),
                                ));
                            }
                        }
                    }
                }
                if let Some(r) = log_p(n, p) {
                    path.push(0);
                    let below = derive(g, p, max_degree, path)?;
                    path.pop();
                    for w in below {
                        if w.degree % 2 == 1 {
                            let t = w.degree.div_ceil(2);
                            let degree = 2 * t * (p as usize).pow(r) - 1;
                            if degree <= max_degree {
                                let order = PrimePower::new(p, w.order.exponent + r);
                                out.push(make(
                                    Rule::R2,
                                    degree,
                                    order,
                                    format!("{n} equal summands"),
                                    vec![w],
                                ));
                            }
                        }
                    }
                }
                if n >= 2 {
                    let h = homology_znf(&braid_group_complex(n))?;
                    for (d, grp) in h.groups().iter().enumerate().take(max_degree + 1) {
                        for t in grp.torsion.iter().filter(|t| t.prime == p) {
                            out.push(make(
                                Rule::R5,
                                d,
                                *t,
                                format!("H_{d}(B_{n}) = {grp}"),
                                Vec::new(),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
