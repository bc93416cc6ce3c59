#![allow(dead_code)]

use knotspace::knot::{parse, KnotExpr, SymmetryData};
use proptest::prelude::*;

const TORI: [&str; 8] = [
    "T(3,2)", "T(5,2)", "T(-3,2)", "T(7,2)", "T(-5,2)", "T(4,3)", "T(5,3)", "T(3,4)",
];

const CABLES: [&str; 6] = [
    "cable(3,2; T(3,2))",
    "cable(17,2; T(-3,2))",
    "cable(-5,3; T(5,2))",
    "cable(2,1; T(4,3))",
    "cable(5,2; T(3,4))",
    "cable(1,2; hyp(F8))",
];

const SUMMANDS: [&str; 6] = [
    "T(3,2)",
    "T(5,2)",
    "T(-3,2)",
    "hyp(F8)",
    "cable(3,2; T(3,2))",
    "hyp(W; m=2; rev=yes; T(3,2))",
];

/// Torus knots, single cables, reversed `W` satellites and sums of at most two primes.
pub fn oracle_family() -> Vec<KnotExpr> {
    let mut out: Vec<String> = TORI.iter().chain(&CABLES).map(|s| s.to_string()).collect();
    out.extend(
        ["T(3,2)", "T(5,2)", "T(4,3)", "T(-3,2)"].map(|t| format!("hyp(W; m=2; rev=yes; {t})")),
    );
    for (i, a) in SUMMANDS.iter().enumerate() {
        for b in &SUMMANDS[i..] {
            out.push(format!("sum({a}, {b})"));
        }
    }
    out.iter()
        .map(|s| parse(s).expect("fixture parses"))
        .collect()
}

pub fn leaf() -> impl Strategy<Value = KnotExpr> {
    prop_oneof![
        prop::sample::select(vec![
            (3i64, 2i64),
            (5, 2),
            (-3, 2),
            (7, 2),
            (4, 3),
            (5, 3),
            (3, 4)
        ])
        .prop_map(|(p, q)| KnotExpr::torus(p, q)),
        Just(KnotExpr::hyp("F8", vec![])),
    ]
}

/// Makes a sum child prime by cabling it.
pub fn primed(e: KnotExpr) -> KnotExpr {
    match e {
        KnotExpr::Sum { .. } => KnotExpr::cable(3, 2, e),
        e => e,
    }
}

/// Admissible expressions the series engine evaluates in every characteristic.
pub fn supported() -> impl Strategy<Value = KnotExpr> {
    leaf().prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            (
                prop::sample::select(vec![(3i64, 2i64), (-5, 3), (2, 1), (17, 2)]),
                inner.clone()
            )
                .prop_map(|((a, b), c)| KnotExpr::cable(a, b, c)),
            prop::collection::vec(inner, 2..4)
                .prop_map(|cs| KnotExpr::sum(cs.into_iter().map(primed).collect())),
        ]
    })
}

/// Adds Whitehead satellites, with or without a reversal.
pub fn general() -> impl Strategy<Value = KnotExpr> {
    supported().prop_recursive(1, 8, 3, |inner| {
        prop_oneof![
            (inner.clone(), any::<bool>()).prop_map(|(c, rev)| {
                let s = SymmetryData {
                    order: 2,
                    perm: vec![0],
                    reversals: vec![rev],
                };
                KnotExpr::hyp_with("W", s, vec![primed(c)])
            }),
            prop::collection::vec(inner, 2..3)
                .prop_map(|cs| KnotExpr::sum(cs.into_iter().map(primed).collect())),
        ]
    })
}
