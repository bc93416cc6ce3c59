use knotspace::graded::{kunneth_integral, AbGroup, GradedAb, PrimePower};
use knotspace::oracle::{
    braid_group_complex, cyclic_quotient_complex, e2_complex, homology_znf, CellModel,
    FinChainComplex, Twist,
};
use proptest::prelude::*;

/// Moore space with `H_1 = Z/n`.
fn moore(n: i64) -> CellModel {
    CellModel::new(vec![0, 1, 2], vec![vec![], vec![], vec![(1, n)]]).unwrap()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// A unimodular matrix and its inverse from elementary column operations `(i, j, c)`.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (mut p, mut inv) = (identity(n), identity(n));
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for row in p.iter_mut() {
            row[i] += c * row[j];
        }
        let src = inv[i].clone();
        for (x, y) in inv[j].iter_mut().zip(&src) {
            *x -= c * y;
        }
    }
    (p, inv)
}

/// Conjugates every boundary by per-degree changes of basis.
fn change_basis(c: &FinChainComplex, ops: &[Vec<(usize, usize, i64)>]) -> FinChainComplex {
    let ranks = c.ranks().to_vec();
    let bases: Vec<_> = ranks
        .iter()
        .enumerate()
        .map(|(d, &n)| unimodular(n, &ops[d % ops.len()]))
        .collect();
    let boundaries = (1..ranks.len())
        .map(|d| {
            let m = c.dense_boundary(d);
            let left = matmul(&bases[d - 1].1, &m, ranks[d - 1], ranks[d]);
            matmul(&left, &bases[d].0, ranks[d], ranks[d])
        })
        .collect();
    FinChainComplex::new(ranks, boundaries).unwrap()
}

fn spaces() -> Vec<CellModel> {
    vec![
        moore(2).product(&CellModel::minimal_circle()),
        moore(6),
        moore(2).product(&moore(3)),
        CellModel::circle().product(&CellModel::circle()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homology_ignores_the_basis(
        which in 0usize..4,
        ops in prop::collection::vec(prop::collection::vec((0usize..16, 0usize..16, -2i64..=2), 0..8), 1..4),
    ) {
        let c = spaces()[which].to_complex();
        prop_assert_eq!(homology_znf(&change_basis(&c, &ops)).unwrap(), homology_znf(&c).unwrap());
    }

    #[test]
    fn trivial_action_is_a_product(which in 0usize..3) {
        let x = [CellModel::point(), CellModel::minimal_circle(), moore(2)][which].clone();
        let got = homology_znf(&cyclic_quotient_complex(&x, 1, 1, None).unwrap()).unwrap();
        let hx = homology_znf(&x.to_complex()).unwrap();
        let cutoff = got.cutoff();
        let pad = |h: &GradedAb| {
            let mut g = h.groups().to_vec();
            g.resize(cutoff + 1, AbGroup::zero());
            GradedAb::from_groups(g)
        };
        let expected = kunneth_integral(&GradedAb::free(cutoff, &[1, 1]), &pad(&hx), cutoff).unwrap();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn odd_cyclic_quotients_stay_torsion_free() {
    for p in [3u32, 5] {
        for x in [CellModel::minimal_circle(), moore(2)] {
            let c = cyclic_quotient_complex(&x, p, p as usize, None).unwrap();
            let h = homology_znf(&c).unwrap();
            assert!(
                h.groups().iter().all(|g| g.p_count(p as u64) == 0),
                "p = {p}: {h}"
            );
        }
    }
    let c = cyclic_quotient_complex(&CellModel::circle(), 3, 3, None).unwrap();
    assert!(homology_znf(&c)
        .unwrap()
        .groups()
        .iter()
        .all(|g| g.p_count(3) == 0));
}

#[test]
fn klein_bottle() {
    let c = FinChainComplex::new(
        vec![1, 2, 1],
        vec![vec![vec![0, 0]], vec![vec![0], vec![2]]],
    )
    .unwrap();
    let h = homology_znf(&c).unwrap();
    assert_eq!(h.degree(1), &AbGroup::new(1, vec![PrimePower::new(2, 1)]));
    assert!(h.degree(2).is_zero());
    let q = cyclic_quotient_complex(&CellModel::circle(), 2, 1, Some(Twist::Involution)).unwrap();
    assert_eq!(homology_znf(&q).unwrap(), h);
}

#[test]
fn small_examples() {
    assert_eq!(
        homology_znf(&CellModel::circle().to_complex()).unwrap(),
        GradedAb::free(1, &[1, 1])
    );
    let torus = CellModel::circle().product(&CellModel::circle());
    assert_eq!(
        homology_znf(&torus.to_complex()).unwrap(),
        GradedAb::free(2, &[1, 2, 1])
    );
    for m in 1..5 {
        let c = cyclic_quotient_complex(&CellModel::point(), m, 1, None).unwrap();
        assert_eq!(homology_znf(&c).unwrap(), GradedAb::free(1, &[1, 1]));
    }
    assert_eq!(
        homology_znf(&e2_complex(&CellModel::point())).unwrap(),
        GradedAb::free(1, &[1, 1])
    );
    assert_eq!(
        homology_znf(&e2_complex(&CellModel::points(2)))
            .unwrap()
            .degree(0)
            .rank,
        3
    );
}

#[test]
fn braid_groups() {
    let h = homology_znf(&braid_group_complex(4)).unwrap();
    assert_eq!(h.degree(1), &AbGroup::free(1));
    assert_eq!(h.degree(2), &AbGroup::cyclic(2, 1));
    let h3 = homology_znf(&braid_group_complex(3)).unwrap();
    assert_eq!(h3.degree(1), &AbGroup::free(1));
    assert_eq!(h3.degree(2), &AbGroup::zero());
}
