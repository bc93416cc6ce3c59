use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::atoms::AtomRegistry;
use super::expr::{orbits_of, KnotExpr};

/// What is wrong at a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ViolationKind {
    /// `q >= 2` fails for a torus knot.
    TorusQ,
    /// `|p| >= 2` fails: the torus knot is trivial.
    TorusTrivial,
    TorusGcd,
    CableBeta,
    CableGcd,
    SumArity,
    /// A connected sum has a connected sum as a summand.
    SumOfSum,
    /// The unknot appears below the root.
    UnknotNotRoot,
    UnknownAtom {
        name: String,
    },
    HypArity {
        expected: usize,
        found: usize,
    },
    SymmetryOrder,
    PermShape,
    PermOrder,
    ReversalShape,
    ReversalNotOrbitConstant,
    /// A reversed orbit of length `c` needs `m / c` even.
    ReversalOrder,
    /// Children permuted into each other differ.
    OrbitUnequal,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::TorusQ => write!(f, "torus knot needs q >= 2"),
            ViolationKind::TorusTrivial => write!(f, "torus knot needs |p| >= 2"),
            ViolationKind::TorusGcd => write!(f, "torus knot needs gcd(p,q) = 1"),
            ViolationKind::CableBeta => write!(f, "cable needs beta >= 1"),
            ViolationKind::CableGcd => write!(f, "cable needs gcd(alpha,beta) = 1"),
            ViolationKind::SumArity => write!(f, "sum needs at least two summands"),
            ViolationKind::SumOfSum => write!(f, "keychain child of keychain"),
            ViolationKind::UnknotNotRoot => write!(f, "unknot below the root"),
            ViolationKind::UnknownAtom { name } => write!(f, "unknown hyperbolic atom `{name}`"),
            ViolationKind::HypArity { expected, found } => {
                write!(
                    f,
                    "hyperbolic splice expects {expected} children, found {found}"
                )
            }
            ViolationKind::SymmetryOrder => write!(f, "symmetry order must be >= 1"),
            ViolationKind::PermShape => write!(f, "perm is not a permutation of the children"),
            ViolationKind::PermOrder => write!(f, "perm^m is not the identity"),
            ViolationKind::ReversalShape => write!(f, "one reversal flag per child expected"),
            ViolationKind::ReversalNotOrbitConstant => write!(f, "reversal flags vary on an orbit"),
            ViolationKind::ReversalOrder => {
                write!(f, "reversed orbit of length c needs m/c even")
            }
            ViolationKind::OrbitUnequal => write!(f, "children in one orbit differ"),
        }
    }
}

/// A violated admissibility rule and the path of the offending vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub path: Vec<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {}", self.path, self.kind)
    }
}

/// Every violated admissibility rule, using the predeclared atoms.
pub fn validate(e: &KnotExpr) -> Vec<Violation> {
    validate_with(e, &AtomRegistry::default())
}

pub fn validate_with(e: &KnotExpr, atoms: &AtomRegistry) -> Vec<Violation> {
    let mut out = Vec::new();
    e.walk(&mut Vec::new(), &mut |path, node| {
        let mut push = |kind| {
            out.push(Violation {
                path: path.to_vec(),
                kind,
            })
        };
        if node.is_unknot() && !path.is_empty() {
            push(ViolationKind::UnknotNotRoot);
        }
        match node {
            KnotExpr::Unknot => {}
            KnotExpr::Torus { p, q } => {
                if *q < 2 {
                    push(ViolationKind::TorusQ);
                }
                if p.abs() < 2 {
                    push(ViolationKind::TorusTrivial);
                }
                if p.gcd(q) != 1 {
                    push(ViolationKind::TorusGcd);
                }
            }
            KnotExpr::Cable { alpha, beta, .. } => {
                if *beta < 1 {
                    push(ViolationKind::CableBeta);
                }
                if alpha.gcd(beta) != 1 {
                    push(ViolationKind::CableGcd);
                }
            }
            KnotExpr::Sum { children } => {
                if children.len() < 2 {
                    push(ViolationKind::SumArity);
                }
                if children.iter().any(|c| matches!(c, KnotExpr::Sum { .. })) {
                    push(ViolationKind::SumOfSum);
                }
            }
            KnotExpr::HypSplice {
                name,
                symmetry,
                children,
            } => {
                match atoms.components(name) {
                    None => push(ViolationKind::UnknownAtom { name: name.clone() }),
                    Some(n) if n != children.len() + 1 => push(ViolationKind::HypArity {
                        expected: n - 1,
                        found: children.len(),
                    }),
                    Some(_) => {}
                }
                if let Some(s) = symmetry {
                    let n = children.len();
                    if s.order == 0 {
                        push(ViolationKind::SymmetryOrder);
                    }
                    let mut seen = vec![false; n];
                    let is_perm = s.perm.len() == n
                        && s.perm
                            .iter()
                            .all(|&j| j < n && !std::mem::replace(&mut seen[j], true));
                    if !is_perm {
                        push(ViolationKind::PermShape);
                    }
                    if s.reversals.len() != n {
                        push(ViolationKind::ReversalShape);
                    }
                    if is_perm && s.order > 0 {
                        let orbits = orbits_of(&s.perm);
                        if orbits
                            .iter()
                            .any(|o| !(s.order as usize).is_multiple_of(o.len()))
                        {
                            push(ViolationKind::PermOrder);
                        }
                        if s.reversals.len() == n {
                            if orbits
                                .iter()
                                .any(|o| o.iter().any(|&i| s.reversals[i] != s.reversals[o[0]]))
                            {
                                push(ViolationKind::ReversalNotOrbitConstant);
                            } else if orbits.iter().any(|o| {
                                s.reversals[o[0]]
                                    && (s.order as usize).is_multiple_of(o.len())
                                    && (s.order as usize / o.len()) % 2 == 1
                            }) {
                                push(ViolationKind::ReversalOrder);
                            }
                        }
                        if orbits.iter().any(|o| {
                            let first = children[o[0]].canonicalize();
                            o.iter().any(|&i| children[i].canonicalize() != first)
                        }) {
                            push(ViolationKind::OrbitUnequal);
                        }
                    }
                }
            }
        }
    });
    out
}
