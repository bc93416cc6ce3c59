use crate::error::{Error, Result};
use crate::graded::{coinvariants_h1, InvolutionH1};
use crate::knot::KnotExpr;

/// First integral homology of the component of `e` with the inversion action.
pub fn h1_integral(e: &KnotExpr) -> Result<InvolutionH1> {
    let mut missing = Vec::new();
    let h = h1_at(e, &mut Vec::new(), &mut missing);
    if missing.is_empty() {
        Ok(h)
    } else {
        Err(Error::MissingSymmetryData(
            missing.into_iter().next().unwrap_or_default(),
        ))
    }
}

fn h1_at(e: &KnotExpr, path: &mut Vec<usize>, missing: &mut Vec<Vec<usize>>) -> InvolutionH1 {
    let mut child = |i: usize, c: &KnotExpr, missing: &mut Vec<Vec<usize>>| {
        path.push(i);
        let h = h1_at(c, path, missing);
        path.pop();
        h
    };
    match e {
        KnotExpr::Unknot => InvolutionH1::ZERO,
        KnotExpr::Torus { .. } => InvolutionH1::new(0, 1, 0),
        KnotExpr::Cable { child: c, .. } => InvolutionH1::new(0, 1, 0).add(&child(0, c, missing)),
        KnotExpr::Sum { children } => {
            let canon: Vec<KnotExpr> = children.iter().map(|c| c.canonicalize()).collect();
            let orbits = KnotExpr::young_orbits(children);
            let k = orbits.len();
            let l = orbits.iter().filter(|(_, n)| *n > 1).count();
            let mut h = InvolutionH1::new(0, l + k * (k - 1) / 2, 0);
            for (g, _) in &orbits {
                let i = canon.iter().position(|c| c == g).expect("orbit member");
                h = h.add(&child(i, &children[i], missing));
            }
            h
        }
        KnotExpr::HypSplice {
            symmetry, children, ..
        } => {
            let mut h = InvolutionH1::new(0, 2, 0);
            if children.is_empty() {
                return h;
            }
            let Some(s) = symmetry else {
                missing.push(path.clone());
                return h;
            };
            for orbit in s.orbits() {
                let i = orbit[0];
                let c = child(i, &children[i], missing);
                h = h.add(&if s.reversals[i] {
                    coinvariants_h1(c)
                } else {
                    c
                });
            }
            h
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::parse;

    fn h1(s: &str) -> String {
        h1_integral(&parse(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(h1("T(3,2)"), "Z");
        assert_eq!(h1("hyp(F8; m=1)"), "Z^2");
        assert_eq!(h1("hyp(W; m=2; rev=yes; T(3,2))"), "Z^2 + Z/2");
        assert_eq!(h1("U"), "0");
    }

    #[test]
    fn sums_and_cables() {
        assert_eq!(h1("sum(T(3,2), T(3,2))"), "Z^2");
        assert_eq!(h1("sum(T(3,2), T(5,2))"), "Z^3");
        assert_eq!(h1("sum(T(3,2), T(3,2), T(5,2))"), "Z^4");
        assert_eq!(h1("cable(3,2; hyp(W; m=2; rev=yes; T(3,2)))"), "Z^3 + Z/2");
    }

    #[test]
    fn missing_symmetry() {
        let e = parse("cable(3,2; hyp(W; T(3,2)))").unwrap();
        assert!(matches!(h1_integral(&e), Err(Error::MissingSymmetryData(p)) if p == vec![0]));
    }
}
