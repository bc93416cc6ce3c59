use knotspace::functors::{c2_series, c2_slice, gamma_series, WeightedDims};
use knotspace::graded::{mod_p_betti, FieldSpec, PoincarePoly};
use knotspace::oracle::{e2_complex, homology_znf, CellModel};
use num_bigint::BigUint;
use proptest::prelude::*;

const CUTOFF: usize = 6;

/// One weight variable: `c` degree-0 classes and random higher classes.
fn labels() -> impl Strategy<Value = (u64, Vec<u64>)> {
    (1u64..3, prop::collection::vec(0u64..3, 1..4))
}

fn weighted(c: u64, higher: &[u64]) -> WeightedDims {
    let mut coeffs = vec![c];
    coeffs.extend_from_slice(higher);
    let mut v = WeightedDims::new(vec!["x".into()]);
    v.add_series(0, &PoincarePoly::from_u64(CUTOFF, &coeffs));
    v
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![
        FieldSpec::Rational,
        FieldSpec::Prime(2),
        FieldSpec::Prime(3),
        FieldSpec::Prime(5),
    ])
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weight_one_is_the_input((c, higher) in labels(), f in field()) {
        let v = weighted(c, &higher);
        let mut coeffs = vec![c];
        coeffs.extend_from_slice(&higher);
        prop_assert_eq!(c2_slice(&v, f, CUTOFF, &[1]).unwrap(), PoincarePoly::from_u64(CUTOFF, &coeffs));
    }

    #[test]
    fn degree_zero_counts_monomials((c, higher) in labels(), w in 1u32..5, f in field()) {
        let v = weighted(c, &higher);
        let slice = c2_slice(&v, f, CUTOFF, &[w]).unwrap();
        let expected = binomial(c + w as u64 - 1, w as u64);
        prop_assert!(expected >= 1);
        prop_assert_eq!(slice.coeff(0), &BigUint::from(expected));
    }

    #[test]
    fn labelled_points_have_one_component(w in prop::collection::vec(0u32..3, 2)) {
        let v = WeightedDims::points(&["a", "b"]);
        let s = c2_series(&v, FieldSpec::Rational, CUTOFF, 4).unwrap();
        if w.iter().sum::<u32>() <= 4 {
            prop_assert_eq!(s.coeff(0, &w), BigUint::from(1u32));
        }
    }

    #[test]
    fn large_primes_agree_with_rationals((c, higher) in labels(), w in 1u32..5) {
        let v = weighted(c, &higher);
        let q = c2_series(&v, FieldSpec::Rational, CUTOFF, w).unwrap();
        let p = c2_series(&v, FieldSpec::Prime(101), CUTOFF, w).unwrap();
        prop_assert_eq!(q.total(), p.total());
    }

    #[test]
    fn gamma_drops_low_weights((c, higher) in labels(), f in field()) {
        let v = weighted(c, &higher);
        let all = c2_series(&v, f, CUTOFF, 3).unwrap();
        let g = gamma_series(&v, f, CUTOFF, 3).unwrap();
        prop_assert!(g.slice(&[1]).coeffs().iter().all(|x| *x == BigUint::from(0u32)));
        prop_assert_eq!(g.slice(&[3]), all.slice(&[3]));
    }
}

/// Moore space with `H_1 = Z/n`.
fn moore(n: i64) -> CellModel {
    CellModel::new(vec![0, 1, 2], vec![vec![], vec![], vec![(1, n)]]).unwrap()
}

#[test]
fn weight_two_matches_the_cell_oracle() {
    let spaces = [
        CellModel::point(),
        CellModel::points(2),
        CellModel::points(3),
        CellModel::minimal_circle(),
        CellModel::minimal_circle().product(&CellModel::minimal_circle()),
        moore(2),
        moore(3),
    ];
    for x in &spaces {
        let hx = homology_znf(&x.to_complex()).unwrap();
        let he = homology_znf(&e2_complex(x)).unwrap();
        for p in [2u64, 3, 5] {
            let mut v = WeightedDims::new(vec!["x".into()]);
            v.add_series(0, &mod_p_betti(&hx, p).unwrap());
            let top = he.cutoff();
            let slice = c2_slice(&v, FieldSpec::Prime(p), top, &[2]).unwrap();
            assert_eq!(slice, mod_p_betti(&he, p).unwrap(), "p = {p}, H(X) = {hx}");
        }
        let mut v = WeightedDims::new(vec!["x".into()]);
        v.add_series(0, &hx.rational_betti());
        let slice = c2_slice(&v, FieldSpec::Rational, he.cutoff(), &[2]).unwrap();
        assert_eq!(slice, he.rational_betti());
    }
}

#[test]
fn circle_examples() {
    let mut v = WeightedDims::new(vec!["x".into()]);
    v.add_series(0, &PoincarePoly::circle(4));
    assert_eq!(
        c2_slice(&v, FieldSpec::Rational, 4, &[2])
            .unwrap()
            .to_u64()
            .unwrap(),
        vec![1, 2, 1, 0, 0]
    );
    assert_eq!(
        c2_slice(&v, FieldSpec::Prime(2), 4, &[2])
            .unwrap()
            .to_u64()
            .unwrap(),
        vec![1, 2, 2, 1, 0]
    );
}
