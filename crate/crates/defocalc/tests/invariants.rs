//! Cross-module invariants: exhaustive small sweeps for the closed-form
//! calculators, and randomized property checks for the algebraic machinery.

use proptest::prelude::*;

use defocalc::artin::ArtinRing;
use defocalc::cohom::{
    contraction_map, kunneth, proj_cohomology, proj_tangent_cohomology, torus_cohomology,
    AhBundle, Hermitian,
};
use defocalc::commvar::{commuting_ideal, hilbert_function, irreducibility_bound};
use defocalc::defo::{
    def_equations, gauge_transform, kuranishi, mc_residual, McElement, PolyVec, SplittingData,
};
use defocalc::dgla::{build_sl, sixdim_with_differential, tensor_with_algebra};
use defocalc::graded::exterior;
use defocalc::matrix::Matrix;
use defocalc::models::quotient_model;
use defocalc::poly::Polynomial;
use defocalc::rational::{rat, rat_frac, Rat};

fn signed_sum(v: &[u64]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
        .sum()
}

/// chi(O(d)) on P^n as the exact polynomial (d+1)(d+2)...(d+n)/n!.
fn chi_line(n: usize, d: i64) -> i64 {
    let num: i64 = (1..=n as i64).map(|j| d + j).product();
    let den: i64 = (1..=n as i64).product();
    num / den
}

#[test]
fn serre_duality_on_projective_space() {
    for n in 1usize..=6 {
        for d in -12i64..=12 {
            let a = proj_cohomology(n, d);
            let b = proj_cohomology(n, -d - n as i64 - 1);
            for i in 0..=n {
                assert_eq!(a[i], b[n - i], "n={n}, d={d}, i={i}");
            }
        }
    }
}

#[test]
fn euler_characteristics_match_closed_forms() {
    for n in 1usize..=5 {
        for d in -12i64..=12 {
            assert_eq!(signed_sum(&proj_cohomology(n, d)), chi_line(n, d), "chi(O({d})) on P^{n}");
            let t = proj_tangent_cohomology(n, d).unwrap();
            assert_eq!(
                signed_sum(&t),
                (n as i64 + 1) * chi_line(n, d + 1) - chi_line(n, d),
                "chi(T({d})) on P^{n}"
            );
        }
    }
}

#[test]
fn torus_alternating_sums() {
    for q in 1usize..=6 {
        for s in 0..=q {
            for p in 1u64..=4 {
                for character in [Vec::new(), vec![1]] {
                    let b = AhBundle {
                        character,
                        hermitian: Hermitian::Nondegenerate {
                            negative_eigenvalues: s,
                            pfaffian: p,
                        },
                    };
                    let v = torus_cohomology(q, &b).unwrap();
                    let want = if s % 2 == 0 { p as i64 } else { -(p as i64) };
                    assert_eq!(signed_sum(&v), want, "q={q}, s={s}, P={p}");
                }
            }
        }
        assert_eq!(signed_sum(&torus_cohomology(q, &AhBundle::trivial()).unwrap()), 0);
        assert_eq!(signed_sum(&torus_cohomology(q, &AhBundle::flat(vec![1])).unwrap()), 0);
    }
}

#[test]
fn splitting_homotopy_identity_holds() {
    for l in [
        sixdim_with_differential(),
        tensor_with_algebra(&build_sl(2).unwrap(), &exterior(2)),
        quotient_model(2, 1).unwrap().reduced,
    ] {
        let s = SplittingData::new(&l);
        assert!(s.verify_homotopy_identity(&l));
    }
}

#[test]
fn transfer_map_truncations_are_coherent() {
    // raising the order refines the map without rewriting lower orders
    let l = sixdim_with_differential();
    let full = kuranishi(&l, 5).unwrap();
    for order in 2usize..=4 {
        let partial = kuranishi(&l, order).unwrap();
        assert_eq!(partial.map.coordinates, full.map.coordinates);
        for (a, b) in partial.map.components.iter().zip(&full.map.components) {
            assert!(a.sub(&b.truncate_above(order)).is_zero(), "order {order}");
        }
    }
}

#[test]
fn commuting_hilbert_function_is_cut_down_by_the_equations() {
    // one slot imposes nothing; two slots cut strictly below the free count
    // from degree 2 on
    let free = |nv: u64, d: u64| {
        let mut binom = 1u64;
        for j in 1..=d {
            binom = binom * (nv - 1 + j) / j;
        }
        binom
    };
    let sl2 = build_sl(2).unwrap();
    let one = hilbert_function(&commuting_ideal(1, &sl2).unwrap(), 4).unwrap();
    let two = hilbert_function(&commuting_ideal(2, &sl2).unwrap(), 4).unwrap();
    for d in 0..=4usize {
        assert_eq!(one[d], free(3, d as u64), "free count at degree {d}");
        assert_eq!(two[d] == free(6, d as u64), d < 2, "cut at degree {d}");
    }
}

#[test]
fn unbounded_ranks_never_fail_the_necessary_condition() {
    for n in [2usize, 3] {
        for q in 1usize..=50 {
            let rep = irreducibility_bound(q, n).unwrap();
            assert!(rep.bound.is_none());
            assert!(rep.necessary_condition_holds && rep.proof_inequality_holds);
        }
    }
}

#[test]
fn necessary_condition_is_monotone_in_q() {
    for n in 4usize..=12 {
        let mut seen_failure = false;
        for q in 1usize..=30 {
            let holds = irreducibility_bound(q, n).unwrap().necessary_condition_holds;
            assert!(!(seen_failure && holds), "condition recovered at (q={q}, n={n})");
            seen_failure |= !holds;
        }
        assert!(seen_failure, "no failure up to q=30 at n={n}");
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat_frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kunneth_is_commutative_and_associative(
        u in prop::collection::vec(0u64..9, 0..5),
        v in prop::collection::vec(0u64..9, 0..5),
        w in prop::collection::vec(0u64..9, 0..5),
    ) {
        prop_assert_eq!(kunneth(&u, &v), kunneth(&v, &u));
        prop_assert_eq!(kunneth(&kunneth(&u, &v), &w), kunneth(&u, &kunneth(&v, &w)));
    }

    #[test]
    fn gauge_orbits_stay_maurer_cartan(
        c1 in small_rat(), c2 in small_rat(),
        a1 in small_rat(), a2 in small_rat(), a3 in small_rat(),
    ) {
        // the span of E12@z1, E12@z2 squares to zero, so any combination
        // solves the Maurer-Cartan equation; gauging by degree 0 must
        // preserve that
        let l = tensor_with_algebra(&build_sl(2).unwrap(), &exterior(2));
        let ring = ArtinRing::jet_line(4);
        let t = Polynomial::var(1, 0);
        let at = |name: &str| l.basis().index_of(name).unwrap();
        let x = McElement::new(
            &l,
            &ring,
            PolyVec::from([(at("E12*z1"), t.scale(&c1)), (at("E12*z2"), t.scale(&c2))]),
        )
        .unwrap();
        prop_assert!(mc_residual(&l, &ring, &x).is_empty());
        let gauge = PolyVec::from([
            (at("E12"), t.scale(&a1)),
            (at("E21"), t.scale(&a2)),
            (at("H1"), t.scale(&a3)),
        ]);
        let y = gauge_transform(&l, &ring, &gauge, &x).unwrap();
        prop_assert!(mc_residual(&l, &ring, &y).is_empty());
    }

    #[test]
    fn equations_evaluate_to_residuals_at_any_point(
        cu in small_rat(), cv in small_rat(),
    ) {
        let l = sixdim_with_differential();
        let ideal = def_equations(&l).unwrap();
        let ring = ArtinRing::jet_line(2);
        let t = Polynomial::var(1, 0);
        let x = McElement::new(
            &l,
            &ring,
            PolyVec::from([
                (l.basis().index_of("u").unwrap(), t.scale(&cu)),
                (l.basis().index_of("v").unwrap(), t.scale(&cv)),
            ]),
        )
        .unwrap();
        let residual = mc_residual(&l, &ring, &x);
        let one = rat(1);
        for (p, &g) in l.basis().indices_of_degree(2).iter().enumerate() {
            let symbolic = ideal.generators[p].evaluate(&[cu.clone(), cv.clone()]);
            let numeric = residual
                .get(&g)
                .map(|poly| poly.evaluate(std::slice::from_ref(&one)))
                .unwrap_or_else(|| rat(0));
            prop_assert_eq!(&symbolic, &numeric);
        }
    }

    #[test]
    fn invertible_hermitian_forms_give_surjective_contractions(
        q in 2usize..=3,
        entries in prop::collection::vec(-5i64..=5, 9),
    ) {
        let mut h = Matrix::zeros(q, q);
        for i in 0..q {
            for j in 0..q {
                h.set(i, j, rat(entries[i * q + j]));
            }
        }
        prop_assume!(h.rank() == q);
        prop_assert!(contraction_map(&h).unwrap().surjective);
    }
}
