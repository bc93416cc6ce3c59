use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Truncated Poincaré series with coefficients in degrees `0..=cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoincarePoly {
    coeffs: Vec<BigUint>,
}

impl PoincarePoly {
    pub fn zero(cutoff: usize) -> Self {
        PoincarePoly {
            coeffs: vec![BigUint::zero(); cutoff + 1],
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut p = Self::zero(cutoff);
        p.coeffs[0] = BigUint::one();
        p
    }

    /// `1 + t`, the series of a circle.
    pub fn circle(cutoff: usize) -> Self {
        Self::from_u64(cutoff, &[1, 1])
    }

    /// Pads with zeros or drops entries above the cutoff.
    pub fn from_u64(cutoff: usize, coeffs: &[u64]) -> Self {
        let mut p = Self::zero(cutoff);
        for (d, &c) in coeffs.iter().enumerate().take(cutoff + 1) {
            p.coeffs[d] = BigUint::from(c);
        }
        p
    }

    /// Cutoff is `coeffs.len() - 1`; an empty vector is treated as cutoff 0.
    pub fn from_coeffs(mut coeffs: Vec<BigUint>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        PoincarePoly { coeffs }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient in degree `d`; panics above the cutoff.
    pub fn coeff(&self, d: usize) -> &BigUint {
        assert!(
            d <= self.cutoff(),
            "degree {d} above cutoff {}",
            self.cutoff()
        );
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn to_u64(&self) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.to_u64()).collect()
    }

    pub fn truncate(&self, cutoff: usize) -> Result<Self> {
        if cutoff > self.cutoff() {
            return Err(Error::CutoffTooSmall {
                needed: cutoff,
                available: self.cutoff(),
            });
        }
        Ok(PoincarePoly {
            coeffs: self.coeffs[..=cutoff].to_vec(),
        })
    }

    /// Product truncated at the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff().min(other.cutoff());
        let mut out = Self::zero(cutoff);
        for (i, a) in self.coeffs.iter().enumerate().take(cutoff + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cutoff + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Sum truncated at the smaller cutoff.
    pub fn add(&self, other: &Self) -> Self {
        let cutoff = self.cutoff().min(other.cutoff());
        PoincarePoly {
            coeffs: (0..=cutoff)
                .map(|d| &self.coeffs[d] + &other.coeffs[d])
                .collect(),
        }
    }

    /// Shifts degrees up by `k`, keeping the cutoff.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = Self::zero(self.cutoff());
        for d in k..=self.cutoff() {
            out.coeffs[d] = self.coeffs[d - k].clone();
        }
        out
    }

    /// Exact division by `1 + t`; fails if a coefficient of the quotient goes negative.
    pub fn div_one_plus_t(&self) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut prev = BigInt::zero();
        for (d, c) in self.coeffs.iter().enumerate() {
            let q = BigInt::from(c.clone()) - &prev;
            if q.is_negative() {
                return Err(Error::NotDivisible(d));
            }
            prev = q.clone();
            out.push(q.to_biguint().expect("non-negative"));
        }
        Ok(PoincarePoly { coeffs: out })
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_one() && d > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match d {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{d}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub(crate) fn biguint_to_number(n: &BigUint) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("decimal digits form a JSON number")
}

pub(crate) fn number_to_biguint(n: &serde_json::Number) -> std::result::Result<BigUint, String> {
    n.to_string()
        .parse()
        .map_err(|_| format!("`{n}` is not a non-negative integer"))
}

impl Serialize for PoincarePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = self.coeffs.iter().map(biguint_to_number).collect();
        nums.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PoincarePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        if nums.is_empty() {
            return Err(serde::de::Error::custom("empty coefficient array"));
        }
        let coeffs = nums
            .iter()
            .map(number_to_biguint)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PoincarePoly { coeffs })
    }
}
