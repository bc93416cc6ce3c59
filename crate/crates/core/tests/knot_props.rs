mod common;

use knotspace::engine::component_series;
use knotspace::functors::{c2_slice, WeightedDims};
use knotspace::graded::{FieldSpec, PoincarePoly};
use knotspace::integral::{check_low_degree_torsion_free, h1_integral, torsion_witnesses};
use knotspace::knot::{parse, validate, KnotExpr, ViolationKind};
use proptest::prelude::*;

use common::{general, primed, supported};

const CUTOFF: usize = 6;

fn has_reversal(e: &KnotExpr) -> bool {
    e.companions().iter().any(|(_, c)| {
        matches!(c, KnotExpr::HypSplice { symmetry: Some(s), .. } if s.reversals.iter().any(|&r| r))
    })
}

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn f(p: u64) -> FieldSpec {
    FieldSpec::Prime(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_expressions_are_admissible(e in general()) {
        prop_assert!(validate(&e).is_empty(), "{}", e);
    }

    #[test]
    fn parse_inverts_display(e in general()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e.clone());
        let canon = e.canonicalize();
        prop_assert_eq!(parse(&canon.to_string()).unwrap().canonicalize().to_string(), canon.to_string());
    }

    #[test]
    fn canonicalize_is_idempotent(e in general()) {
        let c = e.canonicalize();
        prop_assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn sums_ignore_summand_order(cs in prop::collection::vec(supported(), 2..4)) {
        let cs: Vec<KnotExpr> = cs.into_iter().map(primed).collect();
        let mut rev = cs.clone();
        rev.reverse();
        prop_assert_eq!(KnotExpr::sum(cs).canonicalize(), KnotExpr::sum(rev).canonicalize());
    }

    #[test]
    fn one_companion_per_vertex(e in general()) {
        let edges: usize = e.companions().iter().map(|(_, c)| c.children().len()).sum();
        prop_assert_eq!(e.companions().len(), e.node_count());
        prop_assert_eq!(e.node_count(), 1 + edges);
    }

    #[test]
    fn cable_multiplies_by_circle(e in supported(), p in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let field = if p == 0 { q() } else { f(p) };
        let base = component_series(&e, field, CUTOFF).unwrap();
        let cabled = component_series(&KnotExpr::cable(3, 2, e.clone()), field, CUTOFF).unwrap();
        prop_assert_eq!(cabled, base.mul(&PoincarePoly::circle(CUTOFF)));
    }

    #[test]
    fn components_are_connected(e in supported(), p in prop::sample::select(vec![0u64, 2, 3])) {
        let field = if p == 0 { q() } else { f(p) };
        let s = component_series(&e, field, CUTOFF).unwrap();
        prop_assert_eq!(s.coeff(0), &1u32.into());
    }

    #[test]
    fn copies_give_the_weight_slice(e in supported(), n in 2usize..4, p in prop::sample::select(vec![0u64, 2, 3])) {
        let e = primed(e);
        let field = if p == 0 { q() } else { f(p) };
        let mut v = WeightedDims::new(vec!["x".into()]);
        v.add_series(0, &component_series(&e, field, CUTOFF).unwrap());
        let slice = c2_slice(&v, field, CUTOFF, &[n as u32]).unwrap();
        prop_assert_eq!(component_series(&KnotExpr::sum_of_copies(&e, n), field, CUTOFF).unwrap(), slice);
    }

    #[test]
    fn odd_torsion_starts_late(e in supported(), p in prop::sample::select(vec![3u64, 5])) {
        let r = check_low_degree_torsion_free(&e, p).unwrap();
        prop_assert!(r.pass, "{} fails at {:?}", e, r.first_failure);
    }

    #[test]
    fn first_homology_matches_series(e in general()) {
        let h = h1_integral(&e).unwrap();
        prop_assert!(h.group().torsion.iter().all(|t| t.prime == 2 && t.exponent == 1));
        if h.t2 > 0 {
            prop_assert!(has_reversal(&e), "{}", e);
        }
        let (Ok(bq), Ok(b2)) = (component_series(&e, q(), 1), component_series(&e, f(2), 1)) else {
            return Ok(());
        };
        let bq: usize = bq.to_u64().unwrap()[1] as usize;
        let b2: usize = b2.to_u64().unwrap()[1] as usize;
        prop_assert_eq!(h.rank(), bq);
        prop_assert_eq!(h.t2, b2 - bq);
    }

    #[test]
    fn witnesses_show_in_betti_numbers(e in supported(), p in prop::sample::select(vec![2u64, 3])) {
        let ws = torsion_witnesses(&e, p, CUTOFF).unwrap();
        let bq = component_series(&e, q(), CUTOFF + 1).unwrap();
        let bp = component_series(&e, f(p), CUTOFF + 1).unwrap();
        for w in ws {
            let n = w.degree;
            prop_assert!(bp.coeff(n) > bq.coeff(n) || bp.coeff(n + 1) > bq.coeff(n + 1), "{} at {}", e, n);
        }
    }

    #[test]
    fn witnesses_ignore_summand_order(cs in prop::collection::vec(supported(), 2..4), p in prop::sample::select(vec![2u64, 3])) {
        let cs: Vec<KnotExpr> = cs.into_iter().map(primed).collect();
        let mut rev = cs.clone();
        rev.reverse();
        let a = torsion_witnesses(&KnotExpr::sum(cs), p, CUTOFF).unwrap();
        let b = torsion_witnesses(&KnotExpr::sum(rev), p, CUTOFF).unwrap();
        let key = |ws: &[knotspace::integral::TorsionWitness]| ws.iter().map(|w| (w.degree, w.order)).collect::<Vec<_>>();
        prop_assert_eq!(key(&a), key(&b));
    }
}

fn kinds(text: &str) -> Vec<ViolationKind> {
    validate(&parse(text).unwrap())
        .into_iter()
        .map(|v| v.kind)
        .collect()
}

#[test]
fn each_rule_has_a_counterexample() {
    assert_eq!(kinds("T(3,1)"), vec![ViolationKind::TorusQ]);
    assert_eq!(kinds("T(1,2)"), vec![ViolationKind::TorusTrivial]);
    assert_eq!(kinds("T(6,4)"), vec![ViolationKind::TorusGcd]);
    assert_eq!(kinds("cable(1,0; T(3,2))"), vec![ViolationKind::CableBeta]);
    assert_eq!(kinds("cable(4,2; T(3,2))"), vec![ViolationKind::CableGcd]);
    assert_eq!(
        kinds("sum(sum(T(3,2), T(5,2)), T(7,2))"),
        vec![ViolationKind::SumOfSum]
    );
    assert_eq!(kinds("cable(3,2; U)"), vec![ViolationKind::UnknotNotRoot]);
    assert_eq!(
        kinds("hyp(W; m=1; rev=yes; T(3,2))"),
        vec![ViolationKind::ReversalOrder]
    );
    let single = KnotExpr::sum(vec![KnotExpr::torus(3, 2)]);
    assert_eq!(validate(&single)[0].kind, ViolationKind::SumArity);
}

#[test]
fn figure_five_knot() {
    let e = parse("cable(-17,2; sum(T(3,2), hyp(F8; m=1)))").unwrap();
    assert!(validate(&e).is_empty());
    assert_eq!(e.companions().len(), 4);
}

#[test]
fn two_trefoils() {
    let e = parse("sum(T(3,2), T(3,2))").unwrap();
    assert_eq!(
        component_series(&e, q(), 3).unwrap(),
        PoincarePoly::from_u64(3, &[1, 2, 1, 0])
    );
    assert_eq!(
        component_series(&e, f(2), 3).unwrap(),
        PoincarePoly::from_u64(3, &[1, 2, 2, 1])
    );
}

#[test]
fn reversed_whitehead_double_has_two_torsion() {
    let rev = h1_integral(&parse("hyp(W; m=2; rev=yes; T(3,2))").unwrap()).unwrap();
    let plain = h1_integral(&parse("hyp(W; m=2; rev=no; T(3,2))").unwrap()).unwrap();
    assert!(rev.t2 > 0);
    assert_eq!(plain.t2, 0);
}
