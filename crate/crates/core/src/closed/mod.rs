//! Components of the closed embedding spaces `Emb(S^1, S^3)`, `Emb_*(S^1, S^3)` and `Emb(S^1, R^3)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::engine::component_series;
use crate::error::{Error, Result};
use crate::graded::{kunneth_integral, AbGroup, FieldSpec, GradedAb, PoincarePoly};
use crate::integral::{component_homology_integral, configuration_homology, h1_integral};
use crate::knot::KnotExpr;

/// Which closed embedding space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedSpace {
    /// `Emb(S^1, S^3)`.
    EmbS3,
    /// Embeddings fixing a point and a tangent direction.
    EmbStar,
    /// `Emb(S^1, R^3)`.
    EmbR3,
}

impl fmt::Display for ClosedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosedSpace::EmbS3 => "s3",
            ClosedSpace::EmbStar => "star",
            ClosedSpace::EmbR3 => "r3",
        })
    }
}

impl FromStr for ClosedSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s3" => Ok(ClosedSpace::EmbS3),
            "star" => Ok(ClosedSpace::EmbStar),
            "r3" => Ok(ClosedSpace::EmbR3),
            _ => Err(Error::Syntax {
                pos: 0,
                msg: format!("unknown space `{s}`, expected s3, star or r3"),
            }),
        }
    }
}

impl Serialize for ClosedSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClosedSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Coefficients of a closed-space computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Field(FieldSpec),
    Integral,
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Field(k) => write!(f, "{k}"),
            Coefficients::Integral => f.write_str("z"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    /// Accepts `z` or `int` for the integers, otherwise a field.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "int" | "integral" => Ok(Coefficients::Integral),
            _ => Ok(Coefficients::Field(s.parse()?)),
        }
    }
}

/// Homology of a closed component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedHomology {
    Integral(GradedAb),
    Field(PoincarePoly),
}

/// Result of `closed_component_homology`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedReport {
    pub space: ClosedSpace,
    pub coefficients: String,
    pub homology: ClosedHomology,
    /// Product factors, outermost first.
    pub factors: Vec<String>,
    /// Stated constants the result depends on.
    pub engine_constants: Vec<String>,
}

enum Class<'a> {
    Unknot,
    Prime,
    DistinctSum(&'a [KnotExpr]),
}

fn classify(e: &KnotExpr) -> Result<Class<'_>> {
    match e {
        KnotExpr::Unknot => Ok(Class::Unknot),
        KnotExpr::Sum { children } => {
            if KnotExpr::young_orbits(children).len() != children.len() {
                return Err(Error::UnsupportedClass(format!(
                    "closed model of {e}: repeated summands"
                )));
            }
            if let Some(c) = children.iter().find(|c| !c.is_prime()) {
                return Err(Error::UnsupportedClass(format!(
                    "closed model of {e}: summand {c} is not prime"
                )));
            }
            Ok(Class::DistinctSum(children))
        }
        _ if e.is_prime() => Ok(Class::Prime),
        _ => Err(Error::UnsupportedClass(format!("closed model of {e}"))),
    }
}

fn padded(groups: Vec<AbGroup>, cutoff: usize) -> GradedAb {
    let mut groups = groups;
    groups.resize(cutoff + 1, AbGroup::zero());
    groups.truncate(cutoff + 1);
    GradedAb::from_groups(groups)
}

/// Integral homology of `SO(3)`.
pub fn so3_homology(cutoff: usize) -> GradedAb {
    padded(
        vec![
            AbGroup::free(1),
            AbGroup::cyclic(2, 1),
            AbGroup::zero(),
            AbGroup::free(1),
        ],
        cutoff,
    )
}

fn so3_series(field: FieldSpec, cutoff: usize) -> PoincarePoly {
    let ranks: &[u64] = if field.characteristic() == 2 {
        &[1, 1, 1, 1]
    } else {
        &[1, 0, 0, 1]
    };
    PoincarePoly::from_u64(cutoff, ranks)
}

fn sphere(dim: usize, cutoff: usize) -> GradedAb {
    let mut ranks = vec![0; dim + 1];
    ranks[0] = 1;
    ranks[dim] = 1;
    GradedAb::free(cutoff, &ranks)
}

fn product(parts: &[GradedAb], cutoff: usize) -> Result<GradedAb> {
    parts.iter().try_fold(GradedAb::point(cutoff), |acc, h| {
        kunneth_integral(&acc, h, cutoff)
    })
}

fn torus(k: usize, cutoff: usize) -> GradedAb {
    let ranks: Vec<usize> = (0..=k).map(|i| binomial(k, i)).collect();
    GradedAb::free(cutoff, &ranks)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Integral homology of `X(f)`, the component with its rotation circle split off.
fn x_integral(e: &KnotExpr, cutoff: usize) -> Result<GradedAb> {
    match classify(e)? {
        Class::Unknot => Err(Error::UnsupportedClass(
            "the unknot has no split circle".into(),
        )),
        Class::Prime => component_homology_integral(e, cutoff)?.divide_circle(),
        Class::DistinctSum(children) => {
            let n = children.len();
            let mut parts = vec![configuration_homology(n, cutoff), torus(n - 1, cutoff)];
            for c in children {
                parts.push(x_integral(c, cutoff)?);
            }
            product(&parts, cutoff)
        }
    }
}

fn x_series(e: &KnotExpr, field: FieldSpec, cutoff: usize) -> Result<PoincarePoly> {
    match classify(e)? {
        Class::Unknot => Err(Error::UnsupportedClass(
            "the unknot has no split circle".into(),
        )),
        Class::Prime => component_series(e, field, cutoff)?.div_one_plus_t(),
        Class::DistinctSum(children) => {
            let n = children.len();
            let mut acc = PoincarePoly::one(cutoff);
            for k in 1..n as u64 {
                acc = acc.mul(&PoincarePoly::from_u64(cutoff, &[1, k]));
            }
            for _ in 1..n {
                acc = acc.mul(&PoincarePoly::circle(cutoff));
            }
            for c in children {
                acc = acc.mul(&x_series(c, field, cutoff)?);
            }
            Ok(acc)
        }
    }
}

fn engine_constants(e: &KnotExpr) -> Vec<String> {
    let mut out = Vec::new();
    collect_constants(e, &mut out);
    out.sort();
    out.dedup();
    out
}

fn collect_constants(e: &KnotExpr, out: &mut Vec<String>) {
    if let KnotExpr::Sum { children } = e {
        if children.len() >= 3 {
            out.push(format!(
                "H(Conf(R^2, {})) has ranks prod_(k<{}) (1 + k t)",
                children.len(),
                children.len()
            ));
        }
    }
    for c in e.children() {
        collect_constants(c, out);
    }
}

/// Homology of the closed component of `e` in degrees `0..=cutoff`.
///
/// Supported: the unknot, prime expressions, and sums of pairwise distinct primes.
pub fn closed_component_homology(
    e: &KnotExpr,
    space: ClosedSpace,
    coeff: Coefficients,
    cutoff: usize,
) -> Result<ClosedReport> {
    let class = classify(e)?;
    let factors: Vec<&str> = match (&class, space) {
        (Class::Unknot, ClosedSpace::EmbS3) => vec!["S^3", "S^2"],
        (Class::Unknot, ClosedSpace::EmbStar) => vec!["S^2"],
        (Class::Unknot, ClosedSpace::EmbR3) => vec!["SO(3)"],
        (_, ClosedSpace::EmbS3) => vec!["S^3", "SO(3)", "X"],
        (_, ClosedSpace::EmbStar) => vec!["SO(3)", "X"],
        (_, ClosedSpace::EmbR3) => vec!["SO(3)", "K"],
    };
    let homology = match coeff {
        Coefficients::Integral => {
            let parts = factors
                .iter()
                .map(|f| match *f {
                    "S^3" => Ok(sphere(3, cutoff)),
                    "S^2" => Ok(sphere(2, cutoff)),
                    "SO(3)" => Ok(so3_homology(cutoff)),
                    "X" => x_integral(e, cutoff),
                    _ => component_homology_integral(e, cutoff),
                })
                .collect::<Result<Vec<_>>>()?;
            ClosedHomology::Integral(product(&parts, cutoff)?)
        }
        Coefficients::Field(field) => {
            let mut acc = PoincarePoly::one(cutoff);
            for f in &factors {
                let p = match *f {
                    "S^3" => PoincarePoly::from_u64(cutoff, &[1, 0, 0, 1]),
                    "S^2" => PoincarePoly::from_u64(cutoff, &[1, 0, 1]),
                    "SO(3)" => so3_series(field, cutoff),
                    "X" => x_series(e, field, cutoff)?,
                    _ => component_series(e, field, cutoff)?,
                };
                acc = acc.mul(&p);
            }
            ClosedHomology::Field(acc)
        }
    };
    let x_name = match class {
        Class::DistinctSum(c) => format!(
            "Conf(R^2, {n}) x T^{m} x prod X(f_i)",
            n = c.len(),
            m = c.len() - 1
        ),
        _ => format!("X({e})"),
    };
    Ok(ClosedReport {
        space,
        coefficients: coeff.to_string(),
        homology,
        factors: factors
            .iter()
            .map(|f| match *f {
                "X" => x_name.clone(),
                "K" => format!("K({e})"),
                other => other.to_string(),
            })
            .collect(),
        engine_constants: engine_constants(e),
    })
}

/// Summand of `H(S^1 x X)`: `Alpha0(d)` is `a_0 (x) H_d X` in degree `d`, `Alpha1(d)` is `a_1 (x) H_d X` in degree `d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KappaSummand {
    Alpha0(usize),
    Alpha1(usize),
    /// All of `H_d K` when no circle splits off.
    Whole(usize),
}

/// The rotation operator `kappa_n : H_{n-1} K -> H_n K` on the split basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaData {
    pub cutoff: usize,
    /// `H(K)`.
    pub component: GradedAb,
    /// `H(X)` with `K = S^1 x X`, absent when `kappa = 0` without a split circle.
    pub split: Option<GradedAb>,
}

impl KappaData {
    /// Kappa data of the component of `e` through degree `cutoff`.
    pub fn for_expr(e: &KnotExpr, cutoff: usize) -> Result<Self> {
        let (component, split) = match classify(e)? {
            Class::Unknot => (GradedAb::point(cutoff), None),
            _ => {
                let x = x_integral(e, cutoff)?;
                let k = kunneth_integral(&sphere(1, cutoff), &x, cutoff)?;
                (k, Some(x))
            }
        };
        Ok(KappaData {
            cutoff,
            component,
            split,
        })
    }

    /// Summands of `H_n K`.
    pub fn summands(&self, n: usize) -> Vec<KappaSummand> {
        match &self.split {
            None => vec![KappaSummand::Whole(n)],
            Some(_) if n == 0 => vec![KappaSummand::Alpha0(0)],
            Some(_) => vec![KappaSummand::Alpha0(n), KappaSummand::Alpha1(n - 1)],
        }
    }

    /// Image of a summand under `kappa`, an isomorphism onto its image or zero.
    pub fn kappa(&self, s: KappaSummand) -> Option<KappaSummand> {
        match s {
            KappaSummand::Alpha0(d) => Some(KappaSummand::Alpha1(d)),
            KappaSummand::Alpha1(_) | KappaSummand::Whole(_) => None,
        }
    }

    pub fn group(&self, s: KappaSummand) -> AbGroup {
        let pick = |g: &GradedAb, d: usize| {
            if d <= g.cutoff() {
                g.degree(d).clone()
            } else {
                AbGroup::zero()
            }
        };
        match (s, &self.split) {
            (KappaSummand::Whole(d), _) => pick(&self.component, d),
            (KappaSummand::Alpha0(d) | KappaSummand::Alpha1(d), Some(x)) => pick(x, d),
            (_, None) => AbGroup::zero(),
        }
    }

    /// `H_n K / 2 kappa_n(H_{n-1} K)`.
    pub fn coker_doubled(&self, n: usize) -> AbGroup {
        let images: Vec<KappaSummand> = if n == 0 {
            Vec::new()
        } else {
            self.summands(n - 1)
                .into_iter()
                .filter_map(|s| self.kappa(s))
                .collect()
        };
        self.summands(n)
            .into_iter()
            .fold(AbGroup::zero(), |acc, t| {
                let g = self.group(t);
                acc.direct_sum(&if images.contains(&t) { g.mod_p(2) } else { g })
            })
    }

    /// Kernel of `2 kappa_n` on `H_{n-1} K`.
    pub fn ker_doubled(&self, n: usize) -> AbGroup {
        if n == 0 {
            return AbGroup::zero();
        }
        self.summands(n - 1)
            .into_iter()
            .fold(AbGroup::zero(), |acc, s| {
                let g = self.group(s);
                acc.direct_sum(&if self.kappa(s).is_some() {
                    g.p_torsion(2)
                } else {
                    g
                })
            })
    }
}

/// The short exact sequence `0 -> coker -> H_n -> ker -> 0` for a closed component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaSes {
    pub space: ClosedSpace,
    pub degree: usize,
    pub coker: AbGroup,
    pub ker: AbGroup,
    /// `coker + ker`; exact only when the sequence splits.
    pub middle: AbGroup,
    pub exact: bool,
}

/// The kappa sequence for `H_n` of the closed component of `e`.
///
/// For `star` the ends are `coker(2 kappa_n)` and `ker(2 kappa_{n-1})`. For `r3`
/// they are `H_{n-1}K/2 + H_n K` and `H_{n-3} K + tau_2 H_{n-2} K`.
pub fn kappa_ses(e: &KnotExpr, space: ClosedSpace, n: usize) -> Result<KappaSes> {
    let data = KappaData::for_expr(e, n)?;
    let k = |d: isize| -> AbGroup {
        if d < 0 {
            AbGroup::zero()
        } else {
            data.component.degree(d as usize).clone()
        }
    };
    let n_i = n as isize;
    let (coker, ker) = match space {
        ClosedSpace::EmbStar => (data.coker_doubled(n), data.ker_doubled(n.saturating_sub(1))),
        ClosedSpace::EmbR3 => (
            k(n_i - 1).mod_p(2).direct_sum(&k(n_i)),
            k(n_i - 3).direct_sum(&k(n_i - 2).p_torsion(2)),
        ),
        ClosedSpace::EmbS3 => {
            return Err(Error::UnsupportedClass(
                "the kappa sequence is stated for the star and r3 spaces".into(),
            ))
        }
    };
    let splits = ker.is_zero() || coker.is_zero() || ker.torsion.is_empty();
    let exact = splits && coker.exact && ker.exact;
    let mut middle = coker.direct_sum(&ker);
    middle.exact = exact;
    Ok(KappaSes {
        space,
        degree: n,
        coker,
        ker,
        middle,
        exact,
    })
}

/// Homological unknot tests; each field is `true` when the test reports the unknot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknotDetectors {
    /// `H_1` of the `Emb(S^1, S^3)` component has no 2-torsion.
    pub s3_h1_no_two_torsion: bool,
    /// `H_1` of the `Emb(S^1, R^3)` component is torsion.
    pub r3_h1_torsion: bool,
    /// `H_2` of the `Emb(S^1, R^3)` component vanishes.
    pub r3_h2_trivial: bool,
    /// `H_1` of the long-knot component vanishes.
    pub long_h1_trivial: bool,
    pub is_unknot: bool,
}

impl UnknotDetectors {
    /// All four tests agree with `is_unknot`.
    pub fn agree(&self) -> bool {
        [
            self.s3_h1_no_two_torsion,
            self.r3_h1_torsion,
            self.r3_h2_trivial,
            self.long_h1_trivial,
        ]
        .iter()
        .all(|&b| b == self.is_unknot)
    }
}

/// Evaluates the unknot tests on the components of `e`.
pub fn unknot_detectors(e: &KnotExpr) -> Result<UnknotDetectors> {
    let star1 = kappa_ses(e, ClosedSpace::EmbStar, 1)?;
    let r1 = kappa_ses(e, ClosedSpace::EmbR3, 1)?;
    let r2 = kappa_ses(e, ClosedSpace::EmbR3, 2)?;
    let h1 = h1_integral(e)?;
    Ok(UnknotDetectors {
        s3_h1_no_two_torsion: star1.middle.p_count(2) == 0,
        r3_h1_torsion: r1.middle.rank == 0,
        r3_h2_trivial: r2.middle.is_zero(),
        long_h1_trivial: h1.group().is_zero(),
        is_unknot: e.is_unknot(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse;

    fn integral(s: &str, space: ClosedSpace, cutoff: usize) -> Vec<String> {
        let r =
            closed_component_homology(&parse(s).unwrap(), space, Coefficients::Integral, cutoff)
                .unwrap();
        match r.homology {
            ClosedHomology::Integral(h) => h.groups().iter().map(|g| g.to_string()).collect(),
            ClosedHomology::Field(_) => unreachable!(),
        }
    }

    #[test]
    fn fixtures() {
        assert_eq!(
            integral("U", ClosedSpace::EmbS3, 5),
            vec!["Z", "0", "Z", "Z", "0", "Z"]
        );
        assert_eq!(integral("T(3,2)", ClosedSpace::EmbS3, 3)[1], "Z/2");
        assert_eq!(
            integral("U", ClosedSpace::EmbR3, 3),
            vec!["Z", "Z/2", "0", "Z"]
        );
        assert_eq!(
            integral("T(3,2)", ClosedSpace::EmbR3, 2),
            vec!["Z", "Z + Z/2", "Z/2"]
        );
    }

    #[test]
    fn distinct_sums() {
        let r = closed_component_homology(
            &parse("sum(T(3,2), T(5,2), T(7,2))").unwrap(),
            ClosedSpace::EmbStar,
            Coefficients::Field(FieldSpec::Rational),
            3,
        )
        .unwrap();
        assert_eq!(r.engine_constants.len(), 1);
        let e = parse("sum(T(3,2), T(3,2))").unwrap();
        assert!(matches!(
            closed_component_homology(&e, ClosedSpace::EmbS3, Coefficients::Integral, 3),
            Err(Error::UnsupportedClass(_))
        ));
    }

    #[test]
    fn kappa_squares_to_zero() {
        let d = KappaData::for_expr(&parse("cable(3,2; T(5,2))").unwrap(), 4).unwrap();
        for n in 0..=4 {
            for s in d.summands(n) {
                assert_eq!(d.kappa(s).and_then(|t| d.kappa(t)), None);
            }
        }
    }

    #[test]
    fn sequences() {
        let t = KnotExpr::torus(3, 2);
        let s = kappa_ses(&t, ClosedSpace::EmbStar, 1).unwrap();
        assert_eq!(s.coker.to_string(), "Z/2");
        let u = kappa_ses(&KnotExpr::Unknot, ClosedSpace::EmbR3, 1).unwrap();
        assert_eq!(u.middle.rank, 0);
        let u3 = kappa_ses(&KnotExpr::Unknot, ClosedSpace::EmbR3, 3).unwrap();
        assert_eq!(u3.middle.to_string(), "Z");
        assert!(u3.exact);
    }

    #[test]
    fn detectors() {
        for (s, unknot) in [
            ("U", true),
            ("T(3,2)", false),
            ("cable(17,2; T(-3,2))", false),
        ] {
            let d = unknot_detectors(&parse(s).unwrap()).unwrap();
            assert!(d.agree(), "{s}");
            assert_eq!(d.is_unknot, unknot);
        }
    }
}
