use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::is_prime;
use super::poly::PoincarePoly;
use crate::error::{Error, Result};

/// A cyclic group of prime-power order `prime^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Self {
        debug_assert!(is_prime(prime) && exponent >= 1);
        PrimePower { prime, exponent }
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.prime).pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.prime, self.exponent)
    }
}

impl Serialize for PrimePower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PrimePower {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for PrimePower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Syntax {
            pos: 0,
            msg: format!("`{s}` is not of the form p^k"),
        };
        let (p, k) = s.split_once('^').ok_or_else(bad)?;
        let prime: u64 = p.trim().parse().map_err(|_| bad())?;
        let exponent: u32 = k.trim().parse().map_err(|_| bad())?;
        if !is_prime(prime) || exponent == 0 {
            return Err(bad());
        }
        Ok(PrimePower { prime, exponent })
    }
}

/// Splits a positive integer `n > 1` into its prime-power cyclic factors.
pub fn prime_power_factors(n: &BigUint) -> Result<Vec<PrimePower>> {
    let mut m = n
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("torsion order {n}")))?;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k > 0 {
            out.push(PrimePower::new(p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push(PrimePower::new(m, 1));
    }
    Ok(out)
}

/// A finitely generated abelian group `Z^rank + torsion`, with an exactness flag.
///
/// When `exact` is false the torsion list is only a lower bound: the summands
/// listed are present, the group may hold more.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<PrimePower>,
    pub exact: bool,
}

impl Default for AbGroup {
    fn default() -> Self {
        AbGroup::zero()
    }
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup {
            rank: 0,
            torsion: Vec::new(),
            exact: true,
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            rank,
            ..AbGroup::zero()
        }
    }

    pub fn new(rank: usize, mut torsion: Vec<PrimePower>) -> Self {
        torsion.sort();
        AbGroup {
            rank,
            torsion,
            exact: true,
        }
    }

    /// `Z/p^k`.
    pub fn cyclic(prime: u64, exponent: u32) -> Self {
        AbGroup::new(0, vec![PrimePower::new(prime, exponent)])
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands of order a power of `p`.
    pub fn p_count(&self, p: u64) -> usize {
        self.torsion.iter().filter(|t| t.prime == p).count()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        torsion.sort();
        AbGroup {
            rank: self.rank + other.rank,
            torsion,
            exact: self.exact && other.exact,
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut torsion = Vec::new();
        for _ in 0..self.rank {
            torsion.extend_from_slice(&other.torsion);
        }
        for _ in 0..other.rank {
            torsion.extend_from_slice(&self.torsion);
        }
        for a in &self.torsion {
            for b in &other.torsion {
                if a.prime == b.prime {
                    torsion.push(PrimePower::new(a.prime, a.exponent.min(b.exponent)));
                }
            }
        }
        torsion.sort();
        AbGroup {
            rank: self.rank * other.rank,
            torsion,
            exact: self.exact && other.exact,
        }
    }

    pub fn tor(&self, other: &Self) -> Self {
        let mut torsion = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                if a.prime == b.prime {
                    torsion.push(PrimePower::new(a.prime, a.exponent.min(b.exponent)));
                }
            }
        }
        torsion.sort();
        AbGroup {
            rank: 0,
            torsion,
            exact: self.exact && other.exact,
        }
    }

    /// `A / pA`.
    pub fn mod_p(&self, p: u64) -> Self {
        self.tensor(&AbGroup::cyclic(p, 1))
    }

    /// `{a : pa = 0}`.
    pub fn p_torsion(&self, p: u64) -> Self {
        self.tor(&AbGroup::cyclic(p, 1))
    }

    /// The group `B` with `B + other = self`, if `other` is a summand of `self`.
    pub fn complement(&self, other: &Self) -> Option<Self> {
        let rank = self.rank.checked_sub(other.rank)?;
        let mut torsion = self.torsion.clone();
        for t in &other.torsion {
            let i = torsion.iter().position(|x| x == t)?;
            torsion.remove(i);
        }
        Some(AbGroup {
            rank,
            torsion,
            exact: self.exact && other.exact,
        })
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == t {
                j += 1;
            }
            let name = format!("Z/{}", t.order());
            if j - i == 1 {
                parts.push(name);
            } else {
                parts.push(format!("({name})^{}", j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral graded abelian group in degrees `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedAb {
    groups: Vec<AbGroup>,
}

impl GradedAb {
    pub fn zero(cutoff: usize) -> Self {
        GradedAb {
            groups: vec![AbGroup::zero(); cutoff + 1],
        }
    }

    /// Homology of a point.
    pub fn point(cutoff: usize) -> Self {
        let mut g = Self::zero(cutoff);
        g.groups[0] = AbGroup::free(1);
        g
    }

    /// Torsion-free with the given ranks, zero above them.
    pub fn free(cutoff: usize, ranks: &[usize]) -> Self {
        let mut g = Self::zero(cutoff);
        for (d, &r) in ranks.iter().enumerate().take(cutoff + 1) {
            g.groups[d] = AbGroup::free(r);
        }
        g
    }

    /// Torsion-free group whose ranks are the coefficients of `p`.
    pub fn free_from_series(p: &PoincarePoly) -> Result<Self> {
        let ranks = p
            .coeffs()
            .iter()
            .map(|c| {
                c.to_usize()
                    .ok_or_else(|| Error::Overflow(format!("rank {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::free(p.cutoff(), &ranks))
    }

    pub fn from_groups(groups: Vec<AbGroup>) -> Self {
        assert!(!groups.is_empty(), "graded group needs degree 0");
        GradedAb { groups }
    }

    pub fn cutoff(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn degree(&self, d: usize) -> &AbGroup {
        &self.groups[d]
    }

    pub fn degree_mut(&mut self, d: usize) -> &mut AbGroup {
        &mut self.groups[d]
    }

    pub fn groups(&self) -> &[AbGroup] {
        &self.groups
    }

    pub fn is_exact(&self) -> bool {
        self.groups.iter().all(|g| g.exact)
    }

    pub fn truncate(&self, cutoff: usize) -> Result<Self> {
        if cutoff > self.cutoff() {
            return Err(Error::CutoffTooSmall {
                needed: cutoff,
                available: self.cutoff(),
            });
        }
        Ok(GradedAb {
            groups: self.groups[..=cutoff].to_vec(),
        })
    }

    /// Ranks as a series.
    pub fn rational_betti(&self) -> PoincarePoly {
        PoincarePoly::from_coeffs(self.groups.iter().map(|g| BigUint::from(g.rank)).collect())
    }

    /// `X` with `H(S^1) (x) X = self`, degree by degree.
    pub fn divide_circle(&self) -> Result<Self> {
        let mut out: Vec<AbGroup> = Vec::with_capacity(self.groups.len());
        for (d, g) in self.groups.iter().enumerate() {
            let x = match out.last() {
                None => g.clone(),
                Some(prev) => g.complement(prev).ok_or(Error::NotDivisible(d))?,
            };
            out.push(x);
        }
        Ok(GradedAb { groups: out })
    }
}

/// Künneth formula over the integers, truncated at `cutoff`.
pub fn kunneth_integral(a: &GradedAb, b: &GradedAb, cutoff: usize) -> Result<GradedAb> {
    for g in [a, b] {
        if g.cutoff() < cutoff {
            return Err(Error::CutoffTooSmall {
                needed: cutoff,
                available: g.cutoff(),
            });
        }
        if let Some(d) = (0..=cutoff).find(|&d| !g.groups[d].exact) {
            return Err(Error::Inexact(d));
        }
    }
    let mut out = GradedAb::zero(cutoff);
    for n in 0..=cutoff {
        let mut acc = AbGroup::zero();
        for i in 0..=n {
            acc = acc.direct_sum(&a.groups[i].tensor(&b.groups[n - i]));
        }
        if n > 0 {
            for i in 0..n {
                acc = acc.direct_sum(&a.groups[i].tor(&b.groups[n - 1 - i]));
            }
        }
        out.groups[n] = acc;
    }
    Ok(out)
}

/// Universal-coefficient Betti numbers over `F_p`.
pub fn mod_p_betti(a: &GradedAb, p: u64) -> Result<PoincarePoly> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if let Some(d) = (0..=a.cutoff()).find(|&d| !a.groups[d].exact) {
        return Err(Error::Inexact(d));
    }
    let coeffs = (0..=a.cutoff())
        .map(|n| {
            let below = if n > 0 { a.groups[n - 1].p_count(p) } else { 0 };
            BigUint::from(a.groups[n].rank + a.groups[n].p_count(p) + below)
        })
        .collect();
    Ok(PoincarePoly::from_coeffs(coeffs))
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    degree: usize,
    rank: usize,
    torsion: Vec<String>,
    exact: bool,
}

#[derive(Serialize)]
struct GroupJson {
    rank: usize,
    torsion: Vec<String>,
    exact: bool,
}

impl Serialize for AbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            rank: self.rank,
            torsion: self.torsion.iter().map(|t| t.to_string()).collect(),
            exact: self.exact,
        }
        .serialize(s)
    }
}

impl Serialize for GradedAb {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<DegreeJson> = self
            .groups
            .iter()
            .enumerate()
            .map(|(d, g)| DegreeJson {
                degree: d,
                rank: g.rank,
                torsion: g.torsion.iter().map(|t| t.to_string()).collect(),
                exact: g.exact,
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedAb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<DegreeJson>::deserialize(d)?;
        if rows.is_empty() {
            return Err(D::Error::custom("graded group needs degree 0"));
        }
        let mut groups = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.degree != i {
                return Err(D::Error::custom(format!(
                    "expected degree {i}, found {}",
                    row.degree
                )));
            }
            let mut torsion = row
                .torsion
                .iter()
                .map(|t| t.parse::<PrimePower>())
                .collect::<Result<Vec<_>>>()
                .map_err(D::Error::custom)?;
            torsion.sort();
            groups.push(AbGroup {
                rank: row.rank,
                torsion,
                exact: row.exact,
            });
        }
        Ok(GradedAb { groups })
    }
}

impl fmt::Display for GradedAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, g) in self.groups.iter().enumerate() {
            let flag = if g.exact { "" } else { " (lower bound)" };
            writeln!(f, "H_{d} = {g}{flag}")?;
        }
        Ok(())
    }
}

/// `Z/n` as prime-power summands, `0` for `n = 1`.
pub fn cyclic_group(n: u64) -> Result<AbGroup> {
    if n == 0 {
        return Ok(AbGroup::free(1));
    }
    let n = BigUint::from(n);
    if n.is_one() {
        return Ok(AbGroup::zero());
    }
    Ok(AbGroup::new(0, prime_power_factors(&n)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> GradedAb {
        GradedAb::from_groups(vec![
            AbGroup::free(1),
            AbGroup::cyclic(2, 1),
            AbGroup::zero(),
            AbGroup::free(1),
        ])
    }

    #[test]
    fn factors() {
        let f = prime_power_factors(&BigUint::from(12u32)).unwrap();
        assert_eq!(f, vec![PrimePower::new(2, 2), PrimePower::new(3, 1)]);
        assert_eq!(cyclic_group(6).unwrap().to_string(), "Z/2 + Z/3");
    }

    #[test]
    fn point_is_identity() {
        let b = so3();
        assert_eq!(kunneth_integral(&GradedAb::point(3), &b, 3).unwrap(), b);
    }

    #[test]
    fn torus() {
        let c = GradedAb::free(3, &[1, 1]);
        let t = kunneth_integral(&c, &c, 3).unwrap();
        assert_eq!(t, GradedAb::free(3, &[1, 2, 1]));
    }

    #[test]
    fn so3_times_circle() {
        let c = GradedAb::free(4, &[1, 1]);
        let a = so3().truncate(3).unwrap();
        let a4 = GradedAb::from_groups({
            let mut g = a.groups().to_vec();
            g.push(AbGroup::zero());
            g
        });
        let k = kunneth_integral(&a4, &c, 4).unwrap();
        assert_eq!(k.degree(1).to_string(), "Z + Z/2");
        assert_eq!(k.degree(2).to_string(), "Z/2");
    }

    #[test]
    fn so3_mod2() {
        assert_eq!(
            mod_p_betti(&so3(), 2).unwrap().to_u64().unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            mod_p_betti(&so3(), 3).unwrap().to_u64().unwrap(),
            vec![1, 0, 0, 1]
        );
    }

    #[test]
    fn inexact_refused() {
        let mut g = so3();
        g.degree_mut(1).exact = false;
        assert_eq!(mod_p_betti(&g, 2), Err(Error::Inexact(1)));
        assert_eq!(
            kunneth_integral(&g, &GradedAb::point(3), 3),
            Err(Error::Inexact(1))
        );
        assert!(matches!(
            kunneth_integral(&so3(), &GradedAb::point(2), 3),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn display_groups() {
        let g = AbGroup::new(2, vec![PrimePower::new(2, 1)]);
        assert_eq!(g.to_string(), "Z^2 + Z/2");
        let h = AbGroup::new(0, vec![PrimePower::new(2, 1), PrimePower::new(2, 1)]);
        assert_eq!(h.to_string(), "(Z/2)^2");
        assert_eq!(AbGroup::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let g = GradedAb::from_groups(vec![
            AbGroup::free(1),
            AbGroup::new(0, vec![PrimePower::new(2, 1), PrimePower::new(3, 2)]),
        ]);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"[{"degree":0,"rank":1,"torsion":[],"exact":true},{"degree":1,"rank":0,"torsion":["2^1","3^2"],"exact":true}]"#
        );
        let back: GradedAb = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn circle_division() {
        let k = GradedAb::free(3, &[1, 3, 3, 1]);
        assert_eq!(k.divide_circle().unwrap(), GradedAb::free(3, &[1, 2, 1]));
        let kb = GradedAb::from_groups(vec![
            AbGroup::free(1),
            AbGroup::new(1, vec![PrimePower::new(2, 1)]),
            AbGroup::cyclic(2, 1),
        ]);
        let x = kb.divide_circle().unwrap();
        assert_eq!(x.degree(1).to_string(), "Z/2");
        assert!(x.degree(2).is_zero());
    }

    #[test]
    fn zero_order_is_free() {
        assert!(cyclic_group(1).unwrap().is_zero());
        assert_eq!(cyclic_group(0).unwrap(), AbGroup::free(1));
    }
}
