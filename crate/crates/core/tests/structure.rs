//! Unfolding, groupoid and K-theory across a family of domains.

use std::f64::consts::TAU;

use conelayer_core::geometry::{Point2, PolygonalDomain};
use conelayer_core::groupoid::{build_abstract_groupoid, build_groupoid, BoundaryGroupoid, ConeBaseRecord};
use conelayer_core::ktheory::{
    k_boundary_algebra, k_indicial, k_straight_cone, solve_six_term, KPair, KTheoryError, MapFact, SixTermData,
};
use conelayer_core::mellin::{fredholm_for_boundary, FredholmParams};
use conelayer_core::unfold::{desingularize, desingularize_with, unfold, CollarPolicy};
use proptest::prelude::*;

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn regular(n: usize) -> PolygonalDomain {
    PolygonalDomain::polygon((0..n).map(|i| Point2::from_polar(1.0, TAU * i as f64 / n as f64)).collect())
}

fn cracked_square() -> PolygonalDomain {
    PolygonalDomain::unit_square().with_crack(vec![p(0.5, 0.0), p(0.5, 0.5)])
}

fn cross() -> PolygonalDomain {
    PolygonalDomain::unit_square()
        .with_crack(vec![p(0.2, 0.5), p(0.8, 0.5)])
        .with_crack(vec![p(0.5, 0.2), p(0.5, 0.8)])
}

fn family() -> Vec<PolygonalDomain> {
    vec![
        PolygonalDomain::unit_square(),
        PolygonalDomain::l_shape(),
        regular(3),
        regular(5),
        regular(6),
        PolygonalDomain::unit_disk(40),
        PolygonalDomain::slit_disk(40),
        cracked_square(),
        cross(),
        PolygonalDomain::unit_square().with_hole(vec![p(0.3, 0.3), p(0.3, 0.6), p(0.6, 0.6), p(0.6, 0.3)]),
    ]
}

fn groupoid(d: &PolygonalDomain) -> BoundaryGroupoid {
    build_groupoid(&desingularize(&unfold(d).unwrap()).unwrap())
}

/// Number of sides from which `q` is reached, by walking a small circle and
/// counting inside runs separated by the boundary or a crack.
fn sides_by_walk(d: &PolygonalDomain, q: Point2) -> usize {
    let n = 2000;
    let r = 1e-4;
    let orient = |a: Point2, b: Point2, c: Point2| (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    let crosses = |a: Point2, b: Point2| {
        let segs = d.cracks.iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1])));
        let edges = std::iter::once(&d.outer_boundary).chain(d.holes.iter()).flat_map(|c| {
            (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()]))
        });
        segs.chain(edges).any(|(c0, c1)| orient(a, b, c0) * orient(a, b, c1) < 0.0 && orient(c0, c1, a) * orient(c0, c1, b) < 0.0)
    };
    let inside = |s: Point2| {
        let mut w = false;
        for c in std::iter::once(&d.outer_boundary).chain(d.holes.iter()) {
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                if (a.y > s.y) != (b.y > s.y) && a.x + (s.y - a.y) * (b.x - a.x) / (b.y - a.y) > s.x {
                    w = !w;
                }
            }
        }
        w
    };
    let pts: Vec<Point2> =
        (0..n).map(|i| Point2::from_polar(r, TAU * (i as f64 + 0.5) / n as f64)).map(|v| p(q.x + v.x, q.y + v.y)).collect();
    (0..n).filter(|&i| inside(pts[i]) && crosses(pts[(i + n - 1) % n], pts[i])).count().max(1)
}

#[test]
fn covering_multiplicity_matches_circle_walk() {
    let cases = vec![
        (cracked_square(), vec![p(0.5, 0.25), p(0.5, 0.5), p(0.25, 0.0), p(1.0, 0.5)]),
        (cross(), vec![p(0.35, 0.5), p(0.5, 0.65), p(0.8, 0.5)]),
        (PolygonalDomain::slit_disk(64), vec![p(0.5, 0.0), p(0.0, 0.0)]),
        (PolygonalDomain::l_shape(), vec![p(1.5, 1.0), p(0.0, 0.5)]),
    ];
    for (d, pts) in cases {
        let u = unfold(&d).unwrap();
        for q in pts {
            let is_vertex = u.vertices.iter().any(|v| v.base_point.distance(q) < 1e-9);
            if is_vertex {
                continue;
            }
            assert_eq!(u.covering_multiplicity(q).unwrap(), sides_by_walk(&d, q), "{q:?}");
        }
        assert_eq!(u.remaining_crack_points(), 0);
    }
}

#[test]
fn cross_center_is_covered_four_times() {
    let u = unfold(&cross()).unwrap();
    assert_eq!(u.covering_multiplicity(p(0.5, 0.5)).unwrap(), 4);
}

#[test]
fn k_theory_suite() {
    let expect = [
        (PolygonalDomain::unit_square(), 4, 3),
        (PolygonalDomain::l_shape(), 6, 5),
        (PolygonalDomain::slit_disk(64), 3, 2),
    ];
    for (d, n, rank) in expect {
        let g = groupoid(&d);
        assert_eq!(k_indicial(&g), KPair::new(0, n));
        let b = k_boundary_algebra(&g);
        assert_eq!(b.k, KPair::new(0, rank));
        assert!(!b.smooth_case);
    }
    for k in 2..=10 {
        assert_eq!(k_straight_cone(k, false), KPair::new(0, 0));
        assert_eq!(k_straight_cone(k, true), KPair::new(0, 0));
    }
    for d in family() {
        let g = groupoid(&d);
        let n = g.vertex_count();
        assert_eq!(k_indicial(&g).k1.rank, n);
        if n >= 1 {
            assert_eq!(k_boundary_algebra(&g).k.k1.rank + 1, n);
        }
    }
}

#[test]
fn equivalence_is_an_equivalence_relation() {
    let gs: Vec<BoundaryGroupoid> = family().iter().map(groupoid).collect();
    assert_eq!(gs.len(), 10);
    for a in &gs {
        assert!(a.equivalent(a));
        for b in &gs {
            assert_eq!(a.equivalent(b), b.equivalent(a));
            for c in &gs {
                if a.equivalent(b) && b.equivalent(c) {
                    assert!(a.equivalent(c));
                }
            }
        }
    }
    // the square and the slit disk differ (4 vs 3 vertices), the triangle and the slit disk agree
    assert!(!gs[0].equivalent(&gs[6]));
    assert!(gs[2].equivalent(&gs[6]));
}

#[test]
fn b_groupoid_predicate() {
    for d in family() {
        let g = groupoid(&d);
        if g.vertex_count() > 0 {
            assert!(!g.is_b_groupoid());
        }
    }
    let r = ConeBaseRecord::new(1, 1, true).unwrap();
    assert!(build_abstract_groupoid(&[r]).is_b_groupoid());
    let split = ConeBaseRecord::new(1, 2, true).unwrap();
    assert!(!build_abstract_groupoid(&[r, split]).is_b_groupoid());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn collar_choice_is_invisible(f in 0.05f64..1.0, which in 0usize..4) {
        let d = [PolygonalDomain::unit_square(), PolygonalDomain::l_shape(), regular(5), cracked_square()][which].clone();
        let u = unfold(&d).unwrap();
        let m1 = desingularize(&u).unwrap();
        let m2 = desingularize_with(&u, CollarPolicy::Scaled(f)).unwrap();
        prop_assert!(m1.collars.iter().zip(&m2.collars).any(|(a, b)| a.epsilon != b.epsilon) || f == 1.0);
        let (g1, g2) = (build_groupoid(&m1), build_groupoid(&m2));
        prop_assert_eq!(&g1.vertex_strata, &g2.vertex_strata);
        prop_assert_eq!(g1.indicial_summands(), g2.indicial_summands());
        prop_assert_eq!(k_boundary_algebra(&g1), k_boundary_algebra(&g2));
        let params = FredholmParams { xi_steps: 41, ..FredholmParams::default() };
        prop_assert_eq!(fredholm_for_boundary(&m1, true, &params), fredholm_for_boundary(&m2, true, &params));
    }

    /// Random ranks with explicit image ranks; the middle groups must make
    /// the hexagon exact, checked through the kernel/image ranks at every node.
    #[test]
    fn six_term_exactness(i0 in 0usize..6, i1 in 0usize..6, q0 in 0usize..6, q1 in 0usize..6, a in 0usize..6, b in 0usize..6) {
        let rd = a.min(q1).min(i0);
        let re = b.min(q0).min(i1);
        let d = SixTermData::from_flags(KPair::new(i0, i1), KPair::new(q0, q1), false, true)
            .with_delta(MapFact::Rank(rd))
            .with_exponential(MapFact::Rank(re), true);
        let s = solve_six_term(&d).unwrap();
        prop_assert_eq!(s.alternating_sum(&d), 0);
        // K0(I) → K0(A): kernel = im δ, so its image has rank i0 − rd;
        // K0(A) → K0(Q): image = ker exp of rank q0 − re; exactness at K0(A)
        let (m0, m1) = (s.middle.k0.rank, s.middle.k1.rank);
        prop_assert_eq!(m0, (i0 - rd) + (q0 - re));
        prop_assert_eq!(m1, (i1 - re) + (q1 - rd));
    }

    #[test]
    fn inconsistent_rejected(q1 in 0usize..5, extra in 1usize..5) {
        let d = SixTermData::from_flags(KPair::new(q1 + extra, 0), KPair::new(0, q1), true, true);
        prop_assert!(matches!(solve_six_term(&d), Err(KTheoryError::Inconsistent(_))));
        let d = SixTermData::from_flags(KPair::new(1, 0), KPair::new(0, q1), false, true)
            .with_delta(MapFact::Rank(q1 + extra));
        prop_assert!(matches!(solve_six_term(&d), Err(KTheoryError::Inconsistent(_))));
    }
}
