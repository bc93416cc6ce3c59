//! Dense truncated power series in one degree variable and several weight variables.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Monomials `t^d w^a` with `d <= max_degree` and `a` in a downward-closed set of weight vectors.
#[derive(Debug)]
pub(crate) struct Region {
    pub max_degree: usize,
    pub weights: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    add: Vec<Vec<Option<usize>>>,
}

impl Region {
    /// Weight vectors bounded by `caps` componentwise and, if given, by `max_total` in total.
    pub fn new(max_degree: usize, caps: &[u32], max_total: Option<u32>) -> Arc<Region> {
        let mut weights = vec![Vec::new()];
        for &cap in caps {
            let mut next = Vec::new();
            for w in &weights {
                let used: u32 = w.iter().sum();
                for a in 0..=cap {
                    if max_total.is_some_and(|m| used + a > m) {
                        break;
                    }
                    let mut v = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            weights = next;
        }
        weights.sort_by(|a, b| {
            let ta: u32 = a.iter().sum();
            let tb: u32 = b.iter().sum();
            ta.cmp(&tb).then_with(|| a.cmp(b))
        });
        let index: HashMap<Vec<u32>, usize> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let add = weights
            .iter()
            .map(|a| {
                weights
                    .iter()
                    .map(|b| {
                        let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        index.get(&s).copied()
                    })
                    .collect()
            })
            .collect();
        Arc::new(Region {
            max_degree,
            weights,
            index,
            add,
        })
    }

    pub fn nw(&self) -> usize {
        self.weights.len()
    }

    pub fn len(&self) -> usize {
        (self.max_degree + 1) * self.nw()
    }

    pub fn weight_index(&self, w: &[u32]) -> Option<usize> {
        self.index.get(w).copied()
    }

    fn flat(&self, d: usize, wi: usize) -> usize {
        d * self.nw() + wi
    }

    /// `(d1, w1) + (d2, w2)` if it lies in the region.
    fn add_mono(&self, a: (usize, usize), b: (usize, usize)) -> Option<(usize, usize)> {
        let d = a.0 + b.0;
        if d > self.max_degree {
            return None;
        }
        self.add[a.1][b.1].map(|w| (d, w))
    }

    /// `k * (d, w)` if it lies in the region.
    pub fn scale_mono(&self, m: (usize, usize), k: u32) -> Option<(usize, usize)> {
        let d = m.0.checked_mul(k as usize)?;
        if d > self.max_degree {
            return None;
        }
        let w: Vec<u32> = self.weights[m.1].iter().map(|x| x * k).collect();
        self.weight_index(&w).map(|wi| (d, wi))
    }
}

/// How a generator of a given parity contributes to a product formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Factor {
    /// `(1 + m)^e`.
    Exterior,
    /// `(1 - m)^(-e)`.
    Polynomial,
}

#[derive(Debug, Clone)]
pub(crate) struct Dense {
    pub region: Arc<Region>,
    pub c: Vec<BigInt>,
}

impl Dense {
    pub fn zero(region: &Arc<Region>) -> Self {
        Dense {
            region: region.clone(),
            c: vec![BigInt::zero(); region.len()],
        }
    }

    pub fn one(region: &Arc<Region>) -> Self {
        let mut s = Self::zero(region);
        s.c[0] = BigInt::one();
        s
    }

    pub fn get(&self, d: usize, wi: usize) -> &BigInt {
        &self.c[self.region.flat(d, wi)]
    }

    pub fn get_mut(&mut self, d: usize, wi: usize) -> &mut BigInt {
        let i = self.region.flat(d, wi);
        &mut self.c[i]
    }

    /// Nonzero monomials as `(degree, weight index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        let nw = self.region.nw();
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / nw, i % nw, c))
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let mut out = Dense::zero(&self.region);
        let b: Vec<(usize, usize, &BigInt)> = other.terms().collect();
        for (d, w, x) in self.terms() {
            for &(e, v, y) in &b {
                if let Some((s, u)) = self.region.add_mono((d, w), (e, v)) {
                    *out.get_mut(s, u) += x * y;
                }
            }
        }
        out
    }

    /// `1 / (1 - self)`; requires a zero constant term.
    pub fn geometric(&self) -> Dense {
        debug_assert!(self.c[0].is_zero());
        let mut acc = Dense::one(&self.region);
        let mut power = Dense::one(&self.region);
        loop {
            power = power.mul(self);
            if power.c.iter().all(Zero::is_zero) {
                return acc;
            }
            for (a, p) in acc.c.iter_mut().zip(&power.c) {
                *a += p;
            }
        }
    }

    /// Multiplies in place by `(1 + m)^e` or `(1 - m)^(-e)` for the monomial `m`.
    pub fn mul_factor(&mut self, m: (usize, usize), e: &BigInt, kind: Factor) {
        if e.is_zero() || (m.0 == 0 && m.1 == 0) {
            return;
        }
        let mut coeffs = vec![BigInt::one()];
        let mut k = 1u32;
        while self.region.scale_mono(m, k).is_some() {
            let prev = coeffs.last().expect("nonempty").clone();
            let num = match kind {
                Factor::Exterior => e - (k - 1),
                Factor::Polynomial => e + (k - 1),
            };
            let c = prev * num / k;
            if c.is_zero() {
                break;
            }
            coeffs.push(c);
            k += 1;
        }
        if coeffs.len() == 1 {
            return;
        }
        let src: Vec<(usize, usize, BigInt)> =
            self.terms().map(|(d, w, c)| (d, w, c.clone())).collect();
        for (d, w, x) in src {
            let mut pos = (d, w);
            for c in &coeffs[1..] {
                match self.region.add_mono(pos, m) {
                    Some(p) => pos = p,
                    None => break,
                }
                *self.get_mut(pos.0, pos.1) += &x * c;
            }
        }
    }
}

/// Parity convention for the Poincaré-Birkhoff-Witt identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Pbw {
    /// Odd classes exterior, even classes polynomial.
    Super,
    /// Every class polynomial.
    Even,
}

impl Pbw {
    pub fn factor(self, degree: usize) -> Factor {
        match self {
            Pbw::Super if degree % 2 == 1 => Factor::Exterior,
            _ => Factor::Polynomial,
        }
    }
}

/// Expands `prod factor(m)^(gens[m])` over the region.
pub(crate) fn expand(gens: &Dense, kind: impl Fn(usize) -> Factor) -> Dense {
    let mut p = Dense::one(&gens.region);
    let list: Vec<(usize, usize, BigInt)> =
        gens.terms().map(|(d, w, c)| (d, w, c.clone())).collect();
    for (d, w, e) in list {
        p.mul_factor((d, w), &e, kind(d));
    }
    p
}

/// Solves `prod factor(m)^(L[m]) = 1/(1 - h)` degree by degree.
///
/// `h` must vanish in degree 0.
pub(crate) fn solve_lie(h: &Dense, pbw: Pbw) -> Result<Dense> {
    let region = h.region.clone();
    if (0..region.nw()).any(|w| !h.get(0, w).is_zero()) {
        return Err(Error::DegreeZeroGenerator);
    }
    let target = h.geometric();
    let mut running = Dense::one(&region);
    let mut lie = Dense::zero(&region);
    for d in 1..=region.max_degree {
        for w in 0..region.nw() {
            let e = target.get(d, w) - running.get(d, w);
            if e.is_negative() {
                return Err(Error::NonIntegralSolution(d));
            }
            if !e.is_zero() {
                running.mul_factor((d, w), &e, pbw.factor(d));
                *lie.get_mut(d, w) = e;
            }
        }
    }
    Ok(lie)
}

/// Restricted towers: `(d, w) -> (p^k d, p^k w)` for `k >= 1`, on classes selected by `on`.
pub(crate) fn towers(lie: &Dense, p: u64, on: impl Fn(usize) -> bool) -> Dense {
    let region = lie.region.clone();
    let mut out = Dense::zero(&region);
    for (d, w, c) in lie.terms() {
        if !on(d) {
            continue;
        }
        let mut k = p;
        while let Some((e, v)) = u32::try_from(k)
            .ok()
            .and_then(|k| region.scale_mono((d, w), k))
        {
            *out.get_mut(e, v) += c;
            k = match k.checked_mul(p) {
                Some(k) => k,
                None => break,
            };
        }
    }
    out
}

/// Shifts degrees down by `s`, dropping classes that would go negative.
pub(crate) fn desuspend(x: &Dense, s: usize) -> Dense {
    let mut out = Dense::zero(&x.region);
    for (d, w, c) in x.terms() {
        if d >= s {
            *out.get_mut(d - s, w) += c;
        }
    }
    out
}
