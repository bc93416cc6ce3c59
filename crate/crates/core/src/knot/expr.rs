use std::fmt;

use serde::{Deserialize, Serialize};

/// Action of the cyclic symmetry group of a hyperbolic splice on its children.
///
/// `perm[i]` is the image of child `i` under the generator. `reversals[i]` is true
/// when the stabiliser of child `i` reverses its orientation; it is constant on orbits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryData {
    pub order: u32,
    pub perm: Vec<usize>,
    pub reversals: Vec<bool>,
}

impl SymmetryData {
    /// Trivial group acting on `n` children.
    pub fn trivial(n: usize) -> Self {
        SymmetryData {
            order: 1,
            perm: (0..n).collect(),
            reversals: vec![false; n],
        }
    }

    /// Cycles of `perm`, each starting at its smallest element, ordered by that element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(&self.perm)
    }

    pub fn is_identity_perm(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }
}

pub(crate) fn orbits_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while i < perm.len() && !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        out.push(cycle);
    }
    out
}

/// Companionship tree of a knot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KnotExpr {
    Unknot,
    Torus {
        p: i64,
        q: i64,
    },
    Cable {
        alpha: i64,
        beta: i64,
        child: Box<KnotExpr>,
    },
    Sum {
        children: Vec<KnotExpr>,
    },
    #[serde(rename = "hyp")]
    HypSplice {
        name: String,
        symmetry: Option<SymmetryData>,
        children: Vec<KnotExpr>,
    },
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus { p, q }
    }

    pub fn cable(alpha: i64, beta: i64, child: KnotExpr) -> Self {
        KnotExpr::Cable {
            alpha,
            beta,
            child: Box::new(child),
        }
    }

    pub fn sum(children: Vec<KnotExpr>) -> Self {
        KnotExpr::Sum { children }
    }

    /// Connected sum of `n` copies of `e`.
    pub fn sum_of_copies(e: &KnotExpr, n: usize) -> Self {
        KnotExpr::Sum {
            children: vec![e.clone(); n],
        }
    }

    /// A hyperbolic knot or satellite with no symmetry data.
    pub fn hyp(name: &str, children: Vec<KnotExpr>) -> Self {
        KnotExpr::HypSplice {
            name: name.to_string(),
            symmetry: None,
            children,
        }
    }

    pub fn hyp_with(name: &str, symmetry: SymmetryData, children: Vec<KnotExpr>) -> Self {
        KnotExpr::HypSplice {
            name: name.to_string(),
            symmetry: Some(symmetry),
            children,
        }
    }

    pub fn is_unknot(&self) -> bool {
        matches!(self, KnotExpr::Unknot)
    }

    /// Not a connected sum and not the unknot.
    pub fn is_prime(&self) -> bool {
        !matches!(self, KnotExpr::Unknot | KnotExpr::Sum { .. })
    }

    pub fn children(&self) -> Vec<&KnotExpr> {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } => Vec::new(),
            KnotExpr::Cable { child, .. } => vec![child],
            KnotExpr::Sum { children } | KnotExpr::HypSplice { children, .. } => {
                children.iter().collect()
            }
        }
    }

    /// Number of vertices of the tree.
    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    /// Vertices that have children.
    pub fn internal_count(&self) -> usize {
        let kids = self.children();
        if kids.is_empty() {
            0
        } else {
            1 + kids.iter().map(|c| c.internal_count()).sum::<usize>()
        }
    }

    /// Subtree at `path`, following child indices from the root.
    pub fn at(&self, path: &[usize]) -> Option<&KnotExpr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at(rest),
        }
    }

    /// Sum children sorted under the derived total order, recursively.
    pub fn canonicalize(&self) -> KnotExpr {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } => self.clone(),
            KnotExpr::Cable { alpha, beta, child } => KnotExpr::Cable {
                alpha: *alpha,
                beta: *beta,
                child: Box::new(child.canonicalize()),
            },
            KnotExpr::Sum { children } => {
                let mut c: Vec<KnotExpr> = children.iter().map(|c| c.canonicalize()).collect();
                c.sort();
                KnotExpr::Sum { children: c }
            }
            KnotExpr::HypSplice {
                name,
                symmetry,
                children,
            } => KnotExpr::HypSplice {
                name: name.clone(),
                symmetry: symmetry.clone(),
                children: children.iter().map(|c| c.canonicalize()).collect(),
            },
        }
    }

    /// Every vertex with its path from the root, in preorder.
    pub fn companions(&self) -> Vec<(Vec<usize>, KnotExpr)> {
        let mut out = Vec::new();
        self.walk(&mut Vec::new(), &mut |p, e| {
            out.push((p.to_vec(), e.clone()))
        });
        out
    }

    pub(crate) fn walk(&self, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], &KnotExpr)) {
        f(path, self);
        for (i, c) in self.children().into_iter().enumerate() {
            path.push(i);
            c.walk(path, f);
            path.pop();
        }
    }

    /// Distinct canonical children of a Sum with their multiplicities, in canonical order.
    pub fn young_orbits(children: &[KnotExpr]) -> Vec<(KnotExpr, usize)> {
        let mut c: Vec<KnotExpr> = children.iter().map(|c| c.canonicalize()).collect();
        c.sort();
        let mut out: Vec<(KnotExpr, usize)> = Vec::new();
        for x in c {
            match out.last_mut() {
                Some((y, n)) if *y == x => *n += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[KnotExpr]) -> fmt::Result {
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for SymmetryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}", self.order)?;
        if !self.is_identity_perm() {
            write!(f, "; perm=")?;
            for cycle in self.orbits().into_iter().filter(|c| c.len() > 1) {
                let items: Vec<String> = cycle.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "({})", items.join(" "))?;
            }
        }
        if self.reversals.iter().any(|&r| r) {
            let flags: Vec<&str> = self
                .orbits()
                .iter()
                .map(|o| if self.reversals[o[0]] { "yes" } else { "no" })
                .collect();
            write!(f, "; rev={}", flags.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for KnotExpr {
    /// The textual grammar; `parse` inverts it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus { p, q } => write!(f, "T({p},{q})"),
            KnotExpr::Cable { alpha, beta, child } => write!(f, "cable({alpha},{beta}; {child})"),
            KnotExpr::Sum { children } => {
                write!(f, "sum(")?;
                write_list(f, children)?;
                write!(f, ")")
            }
            KnotExpr::HypSplice {
                name,
                symmetry,
                children,
            } => {
                write!(f, "hyp({name}")?;
                if let Some(s) = symmetry {
                    write!(f, "; {s}")?;
                }
                if !children.is_empty() {
                    write!(f, "; ")?;
                    write_list(f, children)?;
                }
                write!(f, ")")
            }
        }
    }
}
