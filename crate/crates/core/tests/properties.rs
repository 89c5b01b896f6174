use proptest::prelude::*;

use ttstar_core::chebyshev::chebyshev_u_trig;
use ttstar_core::fusion::{apply_c, fusion_product, pairing, reduce_u, FusionElement};
use ttstar_core::potential::{
    build_gauge_ladder, c_minus, c_plus, gauge, ladder_steps, permutation_block_split, smyth_equivalent, LaurentPoly, LoopMatrix,
    SmythPotential,
};
use ttstar_core::rational::int;
use ttstar_core::rep::{
    data_to_rep, irreps_equivalent, projections_equivalent, project_to_fusion, rep_to_data, HolomorphicData,
    Representation,
};

fn element(k: usize) -> impl Strategy<Value = FusionElement> {
    prop::collection::vec(-4i64..=4, k + 1).prop_map(move |c| FusionElement::new(k, c.into_iter().map(int).collect()).unwrap())
}

fn elements() -> impl Strategy<Value = (FusionElement, FusionElement, FusionElement)> {
    (1usize..=6).prop_flat_map(|k| (element(k), element(k), element(k)))
}

fn mono(c: i64, z: i64, l: i64) -> LaurentPoly {
    LaurentPoly::monomial(int(c), z, l)
}

/// Invertible 2x2 loop matrices with unit-monomial determinant.
fn gauge_factor() -> impl Strategy<Value = LoopMatrix> {
    prop_oneof![
        (-6i64..=6).prop_map(c_minus),
        (1usize..=4, -6i64..=6).prop_map(|(k, j)| c_plus(k, j)),
        (-3i64..=3, -2i64..=2).prop_map(|(a, b)| LoopMatrix::from_rows(vec![
            vec![mono(1, a, b), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), mono(1, -a, -b)],
        ])
        .unwrap()),
        (-3i64..=3, -3i64..=3, -2i64..=2).prop_map(|(c, a, b)| LoopMatrix::from_rows(vec![
            vec![LaurentPoly::one(), mono(c, a, b)],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ])
        .unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fusion_ring_axioms((a, b, c) in elements()) {
        let ab = fusion_product(&a, &b).unwrap();
        prop_assert_eq!(&ab, &fusion_product(&b, &a).unwrap());
        let bc = fusion_product(&b, &c).unwrap();
        prop_assert_eq!(fusion_product(&ab, &c).unwrap(), fusion_product(&a, &bc).unwrap());
        let left = fusion_product(&a, &b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(left, ab.add(&fusion_product(&a, &c).unwrap()).unwrap());
        prop_assert_eq!(pairing(&ab, &c).unwrap(), pairing(&a, &bc).unwrap());
    }

    #[test]
    fn c_is_an_involution((a, b, _) in elements()) {
        let k = a.level();
        let cc = apply_c(&apply_c(&a));
        prop_assert_eq!(&cc, &a);
        // C(ab) = C(a)·b since C is multiplication by a fixed element
        prop_assert_eq!(apply_c(&fusion_product(&a, &b).unwrap()), fusion_product(&apply_c(&a), &b).unwrap());
        prop_assert_eq!(apply_c(&a).level(), k);
    }

    #[test]
    fn reduction_is_periodic_and_matches_nodes(k in 1usize..=12, n in 0u64..=1000) {
        let p = (k + 2) as u64;
        prop_assert_eq!(reduce_u(k, n), reduce_u(k, n + 2 * p));
        for (idx, v) in reduce_u(k, n).node_values().iter().enumerate() {
            let theta = (idx + 1) as f64 * std::f64::consts::PI / p as f64;
            prop_assert!((v - chebyshev_u_trig(n, theta)).abs() < 1e-9);
        }
    }

    #[test]
    fn gauge_is_a_right_action(k in 1usize..=4, j in -5i64..=8, c1 in gauge_factor(), c2 in gauge_factor()) {
        let xi = SmythPotential::pair(k, j).to_matrix();
        let once = gauge(&xi, &(&c1 * &c2)).unwrap();
        let twice = gauge(&gauge(&xi, &c1).unwrap(), &c2).unwrap();
        prop_assert!(once.same_entries(&twice));
    }

    #[test]
    fn ladder_steps_reach_their_target(k in 1usize..=5, j in -12i64..=12, target in -40i64..=40) {
        prop_assert_eq!(ladder_steps(k, j, target).is_ok(), smyth_equivalent(k, j, target));
        if let Ok(ladder) = build_gauge_ladder(k, j, target) {
            let got = gauge(&SmythPotential::pair(k, j).to_matrix(), &ladder.product).unwrap();
            prop_assert!(got.same_entries(&SmythPotential::pair(k, target).to_matrix()));
        }
    }

    #[test]
    fn split_preserves_exponents(l in (1usize..=7).prop_flat_map(|k| prop::collection::vec(-3i64..=9, k + 1))) {
        let k = l.len() - 1;
        let split = permutation_block_split(&SmythPotential::full(k, l.clone()).unwrap()).unwrap();
        let mut got: Vec<i64> = split.blocks.iter().flat_map(|&(a, b)| [a, b]).chain(split.singleton).collect();
        let mut want = l;
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn rep_round_trip(k in 1usize..=6, weights in prop::collection::vec(0u64..=6, 1..6)) {
        let weights: Vec<u64> = weights.into_iter().map(|w| w % (k as u64 + 1)).collect();
        let rep = Representation::from_weights(&weights);
        let d = rep_to_data(&rep, k).unwrap();
        prop_assert_eq!(data_to_rep(&d).unwrap(), rep);
    }

    #[test]
    fn equivalence_notions_agree(k in 1usize..=8, a in 0u64..=200, b in 0u64..=200) {
        let w = irreps_equivalent(k, a, b);
        prop_assert_eq!(w, irreps_equivalent(k, b, a));
        prop_assert_eq!(w, smyth_equivalent(k, a as i64, b as i64));
        if let Some(p) = projections_equivalent(k, a, b) {
            prop_assert_eq!(p, w);
        }
        if w {
            // equivalent irreps project to the same class up to sign
            let pa = project_to_fusion(&Representation::irrep(a), k);
            let pb = project_to_fusion(&Representation::irrep(b), k);
            prop_assert!(pa == pb || pa == pb.scale(&int(-1)));
        }
    }

    #[test]
    fn holomorphic_data_json_round_trip(l in prop::collection::vec(0i64..=9, 2..8)) {
        let d = HolomorphicData::from_integers(l.len() - 1, &l).unwrap();
        let back: HolomorphicData = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        prop_assert_eq!(back, d);
    }
}
