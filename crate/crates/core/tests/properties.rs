mod common;

use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use quiverpoly::linalg::rank_i64;
use quiverpoly::lp::SolverOptions;
use quiverpoly::polytope::{dual_vertices, f_vector_oracle, max_neighborliness_hull};
use quiverpoly::quiver::edge_connectivity;
use quiverpoly::sensing::{build_sensing_matrix, lp_min_l1_nonneg, L1Outcome};
use quiverpoly::stability::{
    a4_lower_bound, arrow_partition, is_generic, is_tight, stability, successor_closed_sets,
    unstable_codim, GenericityMode, Limits, Status, SubquiverMask,
};
use quiverpoly::{canonical_weight, incidence, CycleBasis, Quiver, Weight};

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn weights(q: &Quiver, seed: u64) -> [Weight; 2] {
    [canonical_weight(q), random_weight(seed, q.vertex_count())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn circulations_lie_in_the_kernel(seed in any::<u64>(), coeffs in prop::collection::vec(-3i64..=3, 0..8)) {
        let q = random_quiver(seed, 8, 14);
        let basis = CycleBasis::new(&q, None).unwrap();
        let mut f = vec![0i64; q.arrow_count()];
        for (c, circ) in coeffs.iter().zip(basis.circulations()) {
            for (x, y) in f.iter_mut().zip(circ.values()) {
                *x += c * y;
            }
        }
        let f: Vec<BigRational> = f.into_iter().map(r).collect();
        prop_assert!(incidence(&q, &f).unwrap().is_zero());
    }

    #[test]
    fn basis_has_full_rank(seed in any::<u64>(), tree_seed in prop::option::of(any::<u64>())) {
        let q = random_quiver(seed, 8, 14);
        let basis = CycleBasis::new(&q, tree_seed).unwrap();
        let d = q.arrow_count() + 1 - q.vertex_count();
        prop_assert_eq!(basis.dimension(), d);
        let rows: Vec<Vec<i64>> = basis.circulations().iter().map(|c| c.values().to_vec()).collect();
        prop_assert_eq!(rank_i64(&rows), d);
        for c in basis.circulations() {
            prop_assert!(c.values().iter().all(|x| (-1..=1).contains(x)));
        }
    }

    #[test]
    fn canonical_weight_is_incidence_of_ones(seed in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        let ones = vec![r(1); q.arrow_count()];
        prop_assert_eq!(incidence(&q, &ones).unwrap(), canonical_weight(&q));
    }

    #[test]
    fn closed_sets_match_direct_check(seed in any::<u64>(), mask in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        let m = q.arrow_count();
        let mask = mask & ((1 << m) - 1);
        let got: Vec<u32> = successor_closed_sets(&q, SubquiverMask::from_bits(mask as u128, m))
            .unwrap()
            .into_iter()
            .map(|v| v.0)
            .collect();
        prop_assert_eq!(got, closed_sets(&q, &kept_from_mask(m, mask)));
    }

    #[test]
    fn verdicts_match_direct_check(seed in any::<u64>(), mask in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        let m = q.arrow_count();
        let mask = mask & ((1 << m) - 1);
        for theta in weights(&q, seed) {
            let v = stability(&q, SubquiverMask::from_bits(mask as u128, m), &theta).unwrap();
            let expected = match naive_status(&q, &kept_from_mask(m, mask), &theta) {
                Naive::Stable => Status::Stable,
                Naive::Semistable => Status::StrictlySemistable,
                Naive::Unstable => Status::Unstable,
            };
            prop_assert_eq!(v.status, expected);
            if let Some(w) = &v.witness {
                prop_assert!(is_closed(&q, &kept_from_mask(m, mask), w.vertices.0));
                prop_assert_eq!(&w.sum, &subset_sum(&theta, w.vertices.0));
                // Removing the arrows leaving the witness closes it in the full quiver.
                let leaving = arrow_partition(&q, w.vertices).leaving;
                prop_assert_eq!(a4_lower_bound(&q, w.vertices).unwrap(), leaving.len());
                let closed = successor_closed_sets(&q, SubquiverMask::without(m, &leaving)).unwrap();
                prop_assert!(closed.contains(&w.vertices));
            }
        }
    }

    #[test]
    fn fast_generic_implies_exhaustive(seed in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        for theta in weights(&q, seed) {
            let fast = is_generic(&q, &theta, GenericityMode::Fast).unwrap().generic;
            let exhaustive = is_generic(&q, &theta, GenericityMode::Exhaustive).unwrap().generic;
            prop_assert!(!fast || exhaustive);
        }
    }

    #[test]
    fn codim_matches_cut_formula(seed in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        for theta in weights(&q, seed) {
            match naive_codim(&q, &theta) {
                None => prop_assert!(unstable_codim(&q, &theta).is_err()),
                Some(c) => {
                    let cert = unstable_codim(&q, &theta).unwrap();
                    prop_assert_eq!(cert.codim, c);
                    prop_assert_eq!(cert.witness_removal.len(), c);
                    let v = stability(&q, SubquiverMask::without(q.arrow_count(), &cert.witness_removal), &theta).unwrap();
                    prop_assert_eq!(v.status, Status::Unstable);
                }
            }
        }
    }

    #[test]
    fn generic_and_codim_two_imply_tight(seed in any::<u64>()) {
        let q = random_quiver(seed, 8, 14);
        for theta in weights(&q, seed) {
            if theta.is_zero() {
                continue;
            }
            let generic = is_generic(&q, &theta, GenericityMode::Exhaustive).unwrap().generic;
            let codim = unstable_codim(&q, &theta).unwrap().codim;
            let tight = is_tight(&q, &theta).unwrap().tight;
            prop_assert_eq!(tight, naive_tight(&q, &theta));
            if generic && codim >= 2 {
                prop_assert!(tight);
            }
        }
    }

    #[test]
    fn edge_connectivity_matches_brute_force(seed in any::<u64>()) {
        let q = random_quiver(seed, 7, 12);
        prop_assert_eq!(edge_connectivity(&q), naive_edge_connectivity(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // Small quivers only: the oracle scans all 2^|Q1| subquivers.
    #[test]
    fn exhaustive_genericity_matches_mask_scan(seed in any::<u64>()) {
        let q = random_quiver(seed, 6, 10);
        for theta in weights(&q, seed) {
            let report = is_generic(&q, &theta, GenericityMode::Exhaustive).unwrap();
            let naive = naive_nongeneric_mask(&q, &theta);
            prop_assert_eq!(report.generic, naive.is_none());
            if let Some(w) = report.witness {
                let kept: Vec<bool> = (0..q.arrow_count()).map(|i| w.contains(i)).collect();
                prop_assert_eq!(naive_status(&q, &kept, &theta), Naive::Semistable);
            }
        }
    }

    #[test]
    fn recovery_is_scale_covariant(
        support in prop::sample::subsequence((0..12).collect::<Vec<usize>>(), 1..=2),
        nums in prop::collection::vec(1i64..=100, 2),
        scale in (1i64..=50, 1i64..=50),
    ) {
        let q = Quiver::bipartite(3, 4).unwrap();
        let a = build_sensing_matrix(&q, &CycleBasis::new(&q, None).unwrap(), &Limits::default()).unwrap();
        let c = BigRational::new(scale.0.into(), scale.1.into());
        let mut x_star = vec![r(0); 12];
        for (&j, &n) in support.iter().zip(&nums) {
            x_star[j] = BigRational::new(n.into(), 7.into());
        }
        let y = a.apply(&x_star);
        let scaled_y: Vec<BigRational> = y.iter().map(|v| v * &c).collect();
        let solve = |y: &[BigRational]| match lp_min_l1_nonneg(&a, y, SolverOptions::default()).unwrap() {
            L1Outcome::Optimal { x, value, .. } => (x, value),
            L1Outcome::Infeasible(_) => panic!("measurement is feasible"),
        };
        let (x, value) = solve(&y);
        let (sx, svalue) = solve(&scaled_y);
        let total: BigRational = x_star.iter().sum();
        prop_assert!(value <= total);
        prop_assert_eq!(&x, &x_star);
        prop_assert_eq!(svalue, value * &c);
        let expected: Vec<BigRational> = x_star.iter().map(|v| v * &c).collect();
        prop_assert_eq!(sx, expected);
    }
}

#[test]
fn face_counts_do_not_depend_on_the_tree() {
    let q = Quiver::bipartite(3, 4).unwrap();
    let mut seen = Vec::new();
    for seed in [1, 2, 3] {
        let basis = CycleBasis::new(&q, Some(seed)).unwrap();
        let v = dual_vertices(&q, &basis).unwrap();
        assert_eq!(rank_i64(&v.points), 6);
        let f = f_vector_oracle(&v, 3).unwrap();
        let k = max_neighborliness_hull(&v).unwrap().k_max;
        seen.push((basis.tree_arrows().to_vec(), f, k));
    }
    assert!(seen.iter().all(|(_, f, k)| *f == seen[0].1 && *k == 2));
    assert_eq!(seen[0].1[..2], [12, 66]);
    // The seeds really do change the coordinates.
    assert!(seen.iter().any(|(t, _, _)| *t != seen[0].0));
}

#[test]
fn q22_witness_is_found_by_both_scans() {
    let q = Quiver::bipartite(2, 2).unwrap();
    let d = canonical_weight(&q);
    let naive = naive_nongeneric_mask(&q, &d).unwrap();
    let report = is_generic(&q, &d, GenericityMode::Exhaustive).unwrap();
    assert!(!report.generic);
    let kept: Vec<bool> = (0..4).map(|i| report.witness.unwrap().contains(i)).collect();
    assert_eq!(naive_status(&q, &kept, &d), Naive::Semistable);
    assert_eq!(naive_status(&q, &kept_from_mask(4, naive), &d), Naive::Semistable);
}
