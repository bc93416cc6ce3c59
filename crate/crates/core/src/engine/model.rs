use std::fmt;

use serde::{Deserialize, Serialize};

use crate::knot::{KnotExpr, SymmetryData};

/// Symbolic homotopy model of a component, mirroring the recursion that built it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Point,
    Circle,
    Product {
        factors: Vec<Model>,
    },
    /// Little 2-cubes with `n` points labelled by the children, each with a multiplicity.
    EPiece {
        n: usize,
        children: Vec<(Model, usize)>,
    },
    /// The circle times the factors, divided by a cyclic group of order `order`.
    ///
    /// The generator rotates the circle by `1/order` of a turn and sends factor
    /// `i` to slot `perm[i]`; reversed orbits are composed with the inversion.
    CyclicTwist {
        order: u32,
        factors: Vec<Model>,
        perm: Vec<usize>,
        reversed: Vec<bool>,
    },
    /// A hyperbolic splice whose symmetry data was not given.
    Opaque {
        name: String,
    },
}

impl Model {
    /// Built only from points, circles and products.
    pub fn is_circle_product(&self) -> bool {
        match self {
            Model::Point | Model::Circle => true,
            Model::Product { factors } => factors.iter().all(Model::is_circle_product),
            _ => false,
        }
    }

    /// Number of circle factors of a circle product.
    pub fn circle_count(&self) -> Option<usize> {
        match self {
            Model::Point => Some(0),
            Model::Circle => Some(1),
            Model::Product { factors } => factors.iter().map(Model::circle_count).sum(),
            _ => None,
        }
    }
}

/// The model of the component of `e`.
pub fn component_model(e: &KnotExpr) -> Model {
    match e {
        KnotExpr::Unknot => Model::Point,
        KnotExpr::Torus { .. } => Model::Circle,
        KnotExpr::Cable { child, .. } => Model::Product {
            factors: vec![Model::Circle, component_model(child)],
        },
        KnotExpr::Sum { children } => Model::EPiece {
            n: children.len(),
            children: KnotExpr::young_orbits(children)
                .iter()
                .map(|(c, k)| (component_model(c), *k))
                .collect(),
        },
        KnotExpr::HypSplice {
            name,
            symmetry,
            children,
        } => {
            if children.is_empty() {
                return Model::Product {
                    factors: vec![Model::Circle, Model::Circle],
                };
            }
            let twist = match symmetry {
                None => Model::Opaque { name: name.clone() },
                Some(SymmetryData {
                    order,
                    perm,
                    reversals,
                }) => Model::CyclicTwist {
                    order: *order,
                    factors: children.iter().map(component_model).collect(),
                    perm: perm.clone(),
                    reversed: reversals.clone(),
                },
            };
            Model::Product {
                factors: vec![Model::Circle, twist],
            }
        }
    }
}

fn write_list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl IntoIterator<Item = T>,
) -> fmt::Result {
    for (i, x) in items.into_iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Point => write!(f, "Point"),
            Model::Circle => write!(f, "Circle"),
            Model::Product { factors } => {
                write!(f, "Product(")?;
                write_list(f, factors)?;
                write!(f, ")")
            }
            Model::EPiece { n, children } => {
                write!(f, "EPiece({n}, {{")?;
                write_list(f, children.iter().map(|(m, k)| format!("{m}:{k}")))?;
                write!(f, "}})")
            }
            Model::CyclicTwist {
                order,
                factors,
                perm,
                reversed,
            } => {
                write!(f, "CyclicTwist({order}, ")?;
                write_list(f, factors)?;
                if perm.iter().enumerate().any(|(i, &j)| i != j) {
                    let s = SymmetryData {
                        order: *order,
                        perm: perm.clone(),
                        reversals: vec![false; perm.len()],
                    };
                    let text = s.to_string();
                    write!(f, ", {}", text.split("; ").nth(1).unwrap_or_default())?;
                }
                if !reversed.is_empty() && reversed.iter().all(|&r| r) {
                    write!(f, ", reversal")?;
                } else if reversed.iter().any(|&r| r) {
                    let flags: Vec<&str> = reversed
                        .iter()
                        .map(|&r| if r { "yes" } else { "no" })
                        .collect();
                    write!(f, ", rev={}", flags.join(","))?;
                }
                write!(f, ")")
            }
            Model::Opaque { name } => write!(f, "Opaque({name})"),
        }
    }
}
