use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use mazurcj::laurent::Laurent;
use mazurcj::IntPoly;

type R = Rational64;

fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((-40i64..40, -9i64..10), 0..7)
        .prop_map(|t| Laurent::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn rat_poly() -> impl Strategy<Value = Laurent<BigRational>> {
    prop::collection::vec((-40i64..40, -9i64..10, 1i64..7), 0..7).prop_map(|t| {
        Laurent::from_terms(t.into_iter().map(|(e, n, d)| (e, BigRational::new(n.into(), d.into()))))
    })
}

fn small_rational(den: i64) -> impl Strategy<Value = R> {
    (-60i64..60, 1..=den).prop_map(|(n, d)| R::new(n, d))
}

mod laurent {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_laws(f in int_poly(), g in int_poly(), h in int_poly()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }

        #[test]
        fn rational_ring_laws(f in rat_poly(), g in rat_poly(), h in rat_poly()) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn degrees_add(f in int_poly(), g in int_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (df, dg) = (f.degree_bounds().unwrap(), g.degree_bounds().unwrap());
            let d = (&f * &g).degree_bounds().unwrap();
            prop_assert_eq!(d.d_plus, df.d_plus + dg.d_plus);
            prop_assert_eq!(d.d_minus, df.d_minus + dg.d_minus);
        }

        #[test]
        fn render_parse_round_trip(f in int_poly(), g in rat_poly()) {
            prop_assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
            prop_assert_eq!(g.to_string().parse::<Laurent<BigRational>>().unwrap(), g);
        }

        #[test]
        fn exact_division_inverts_product(f in int_poly(), g in int_poly()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!((&f * &g).div_exact(&g).unwrap(), f);
        }
    }
}

mod symbols {
    use mazurcj::symbols::{theta, twist_delta, tet, AdmissibleTriple, TetLabels};

    #[test]
    fn theta_permutation_invariant() {
        for s in 0..=12 {
            for t in 0..=12 {
                for u in 0..=12 {
                    let Ok(tri) = AdmissibleTriple::new(s, t, u) else { continue };
                    let base = theta(tri);
                    for (a, b, c) in [(s, u, t), (t, s, u), (t, u, s), (u, s, t), (u, t, s)] {
                        assert_eq!(theta(AdmissibleTriple::new(a, b, c).unwrap()), base, "({s},{t},{u})");
                    }
                }
            }
        }
    }

    #[test]
    fn tet_row_symmetry() {
        let e = 0..=8u32;
        let mut checked = 0;
        for a in e.clone() {
            for b in e.clone() {
                for c in e.clone() {
                    for d in e.clone() {
                        for f in e.clone() {
                            for g in e.clone() {
                                // Rows [A, B, E], [D, C, F] against [E, C, D], [F, B, A].
                                let Ok(l) = TetLabels::from_rows([a, b, c], [d, f, g]) else { continue };
                                let m = TetLabels::from_rows([c, f, d], [g, b, a]).unwrap();
                                assert_eq!(tet(&l), tet(&m), "{:?}", l.rows());
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 10_000);
    }

    #[test]
    fn twist_is_a_monomial() {
        for s in 0..=8 {
            for t in 0..=8 {
                for u in 0..=16 {
                    if let Ok(p) = twist_delta(u, s, t) {
                        assert_eq!(p.len(), 1);
                        let b = p.degree_bounds().unwrap();
                        assert_eq!(b.d_plus, b.d_minus);
                    }
                }
            }
        }
    }
}

mod knots {
    use super::*;
    use mazurcj::bracket::{braid_closure, jones_at_n1, kauffman_bracket};
    use mazurcj::knotdata::{adequate_min_profile, DiagramStats, KnotProfile};

    #[test]
    fn providers_match_bracket() {
        let knots = [
            KnotProfile::unknot(),
            KnotProfile::trefoil(),
            KnotProfile::figure_eight(),
            KnotProfile::torus(2, 5).unwrap(),
            KnotProfile::torus(-2, 3).unwrap(),
            KnotProfile::torus(2, -7).unwrap(),
        ];
        for k in knots {
            let d = k.diagram.as_ref().unwrap();
            assert_eq!(jones_at_n1(d).unwrap(), *k.eval(1).unwrap(), "{}", k.name);
        }
    }

    fn word() -> impl Strategy<Value = Vec<i32>> {
        // Leading `1, 2` keeps every strand in a crossing.
        prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..6)
            .prop_map(|w| [1, 2].into_iter().chain(w).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adequate_profile_sums_to_zero(p in 0u32..20, m in 0u32..20, va in 1u32..30, vb in 1u32..30) {
            prop_assume!(p + m > 0);
            let stats = DiagramStats::new(p, m, va, vb);
            let prof = adequate_min_profile(Some(&stats)).unwrap();
            prop_assert_eq!(prof.coefficient_sum, R::from(0));
            prop_assert!(prof.doubled_leading_integral);
        }

        #[test]
        fn braid_reidemeister_two(w1 in word(), w2 in word(), g in 1i32..3, sign in prop::bool::ANY) {
            let g = if sign { g } else { -g };
            let plain: Vec<i32> = w1.iter().chain(&w2).copied().collect();
            let padded: Vec<i32> = w1.iter().copied().chain([g, -g]).chain(w2.iter().copied()).collect();
            let a = kauffman_bracket(&braid_closure(3, &plain).unwrap()).unwrap();
            let b = kauffman_bracket(&braid_closure(3, &padded).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn braid_reidemeister_three(w1 in word(), w2 in word(), sign in prop::bool::ANY) {
            let s = if sign { 1 } else { -1 };
            let left: Vec<i32> = w1.iter().copied().chain([s, 2 * s, s]).chain(w2.iter().copied()).collect();
            let right: Vec<i32> = w1.iter().copied().chain([2 * s, s, 2 * s]).chain(w2.iter().copied()).collect();
            let a = kauffman_bracket(&braid_closure(3, &left).unwrap()).unwrap();
            let b = kauffman_bracket(&braid_closure(3, &right).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}

mod mazur {
    use super::*;
    use mazurcj::knotdata::KnotProfile;
    use mazurcj::mazur::{mazur_from_terms, mazur_normalized_cj, Framing, MazurTermIndex};

    #[test]
    fn unknot_collapses() {
        for n in 0..=6 {
            assert!(mazur_normalized_cj(&KnotProfile::unknot(), n).unwrap().is_one(), "n = {n}");
        }
    }

    #[test]
    fn divisible_for_every_tested_knot() {
        for k in [KnotProfile::trefoil(), KnotProfile::figure_eight(), KnotProfile::torus(2, 5).unwrap()] {
            for n in 0..=5 {
                mazur_normalized_cj(&k, n).unwrap();
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn term_order_is_irrelevant(n in 1u32..4, which in 0usize..2, seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let knot = [KnotProfile::trefoil(), KnotProfile::figure_eight()][which].clone();
            let mut idx = MazurTermIndex::all(n);
            idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = mazur_from_terms(&knot, &idx, Framing::Corrected).unwrap();
            prop_assert_eq!(shuffled, mazur_normalized_cj(&knot, n).unwrap());
        }
    }
}

mod degrees {
    use super::*;
    use mazurcj::degrees::{fit_knot_degrees, fit_quasi, mirror_profile, QuasiQuadratic};
    use mazurcj::knotdata::KnotProfile;

    fn class() -> impl Strategy<Value = [R; 3]> {
        [small_rational(12), small_rational(4), small_rational(4)]
    }

    fn quasi() -> impl Strategy<Value = QuasiQuadratic<R>> {
        prop_oneof![
            class().prop_map(|[a, b, c]| QuasiQuadratic::uniform(a, b, c)),
            (class(), class()).prop_map(|(e, o)| QuasiQuadratic::by_parity(e, o)),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn fit_round_trip(q in quasi(), start in 0u32..4) {
            let samples: Vec<(u32, R)> = (start..start + 12).map(|n| (n, q.eval(n as i64))).collect();
            let fit = fit_quasi(&samples, q.period()).unwrap();
            prop_assert_eq!(fit.period(), q.period());
            for i in 0..q.period() {
                prop_assert_eq!(fit.class(i), q.class(i));
            }
        }

        #[test]
        fn mirror_is_an_involution(max in quasi(), min in quasi()) {
            let (m1, m2) = mirror_profile(&max, &min);
            prop_assert_eq!(mirror_profile(&m1, &m2), (max, min));
        }
    }

    #[test]
    fn mirror_knot_degrees() {
        let right = fit_knot_degrees(&KnotProfile::torus(2, 3).unwrap(), 16).unwrap();
        let left = fit_knot_degrees(&KnotProfile::torus(-2, 3).unwrap(), 16).unwrap();
        let (max, min) = mirror_profile(&right.max, &right.min);
        for i in 0..2 {
            assert_eq!(left.max.class(i), max.class(i));
            assert_eq!(left.min.class(i), min.class(i));
        }
    }
}

mod surfaces {
    use super::*;
    use mazurcj::mazur::Side;
    use mazurcj::surfaces::{catalog_eval, glue, solve_weights, verify_ss, JonesSurfaceCertificate, PathId, Slope, SurfaceCase};

    fn slope_of(case: SurfaceCase, a: R) -> R {
        match case {
            SurfaceCase::MaxSteepWide | SurfaceCase::MaxSteepNarrow => a * 36,
            SurfaceCase::MaxFlat | SurfaceCase::MaxBelowQuarter => a * 4,
            SurfaceCase::MinSteep => a * 36 - 2,
            SurfaceCase::MinFlat => R::from(-5),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn homogeneity(p in 1u8..=7, alpha in 0i64..60, beta in 0i64..60, k in 1i64..9) {
            prop_assume!(alpha + beta > 0);
            let p = PathId::new(p).unwrap();
            let base = catalog_eval(p, alpha, beta).unwrap();
            let big = catalog_eval(p, k * alpha, k * beta).unwrap();
            prop_assert_eq!(big.chi, k * base.chi);
            prop_assert_eq!(big.counts, base.counts.map(|c| k * c));
            prop_assert_eq!(big.slopes, base.slopes);
        }

        #[test]
        fn weights_reproduce_slopes(a in small_rational(36), max in prop::bool::ANY) {
            let side = if max { Side::Max } else { Side::Min };
            prop_assume!(side == Side::Min || a >= R::new(-1, 4));
            let sol = solve_weights(a, side).unwrap();
            prop_assert_eq!(sol.satellite_slope(), Slope::Finite(slope_of(sol.case, a)));
            if sol.case != SurfaceCase::MinFlat {
                prop_assert_eq!(sol.companion_slope(), Slope::Finite(a * 4));
            }
        }

        #[test]
        fn ratio_survives_scaling(a in small_rational(36), b in small_rational(4), max in prop::bool::ANY, k in 1i64..7) {
            let side = if max { Side::Max } else { Side::Min };
            prop_assume!(side == Side::Min || a >= R::new(-1, 4));
            let own = if max { b * 2 } else { -b * 2 };
            let cert = JonesSurfaceCertificate::synthetic(a, own, side, 0);
            let g = glue(&cert, &solve_weights(a, side).unwrap()).unwrap();
            prop_assert_eq!(g.scaled(k).ratio(), g.ratio());
            prop_assert!(verify_ss(a, b, side, 0).unwrap().pass);
        }
    }
}

mod crossing {
    use super::*;
    use mazurcj::crossing::diameter_and_bounds;
    use mazurcj::degrees::QuasiQuadratic;
    use mazurcj::knotdata::{DiagramStats, KnotProfile, Provider};

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn bounds_are_ordered(p in 0u32..15, m in 0u32..15, a in small_rational(4), s in small_rational(4)) {
            prop_assume!(p + m > 0);
            let mut k = KnotProfile::new("synthetic", Provider::Unknot);
            k.stats = Some(DiagramStats::new(p, m, 1, 1));
            k.max_degree = Some(QuasiQuadratic::uniform(a, R::from(0), R::from(0)));
            k.min_degree = Some(QuasiQuadratic::uniform(s, R::from(0), R::from(0)));
            let rep = diameter_and_bounds(&k).unwrap();
            prop_assert!(rep.lower <= rep.upper);
            prop_assert_eq!(rep.dj_m, rep.dj_k * 9 + 2);
            if p == m {
                prop_assert_eq!(rep.candidates().unwrap().len(), 2);
            } else {
                prop_assert!(rep.candidates().is_none());
            }
        }
    }
}
