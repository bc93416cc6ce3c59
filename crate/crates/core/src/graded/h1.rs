use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{AbGroup, PrimePower};

/// First homology `Z^(r_plus + r_minus) + (Z/2)^t2` with the inversion action:
/// trivial on `r_plus` summands, negation on `r_minus` summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct InvolutionH1 {
    pub r_plus: usize,
    pub r_minus: usize,
    pub t2: usize,
}

impl InvolutionH1 {
    pub const ZERO: InvolutionH1 = InvolutionH1 {
        r_plus: 0,
        r_minus: 0,
        t2: 0,
    };

    pub fn new(r_plus: usize, r_minus: usize, t2: usize) -> Self {
        InvolutionH1 {
            r_plus,
            r_minus,
            t2,
        }
    }

    pub fn rank(&self) -> usize {
        self.r_plus + self.r_minus
    }

    pub fn add(&self, other: &Self) -> Self {
        InvolutionH1 {
            r_plus: self.r_plus + other.r_plus,
            r_minus: self.r_minus + other.r_minus,
            t2: self.t2 + other.t2,
        }
    }

    pub fn group(&self) -> AbGroup {
        AbGroup::new(self.rank(), vec![PrimePower::new(2, 1); self.t2])
    }
}

/// Coinvariants under the involution: each negated `Z` becomes `Z/2`.
pub fn coinvariants_h1(h: InvolutionH1) -> InvolutionH1 {
    InvolutionH1 {
        r_plus: h.r_plus,
        r_minus: 0,
        t2: h.t2 + h.r_minus,
    }
}

impl fmt::Display for InvolutionH1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group())
    }
}
