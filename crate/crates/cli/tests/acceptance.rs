//! Acceptance criteria 1–7. Each prints one PASS/FAIL line with its runtime;
//! the process fails if any criterion fails.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use conelayer_cli::{emit_report, parse_domain_file, read_json_report, run, serialize_domain_file, Format};
use conelayer_core::geometry::{classify_point, split_conical_crack, vertex_census, Point2, PointKind, PolygonalDomain, SectorSet};
use conelayer_core::groupoid::{build_abstract_groupoid, build_groupoid, BoundaryGroupoid, ConeBaseRecord};
use conelayer_core::ktheory::{k_boundary_algebra, k_indicial, k_straight_cone, solve_six_term, KPair, MapFact, SixTermData};
use conelayer_core::linalg::scaled_identity;
use conelayer_core::mellin::{
    fredholm_for_boundary, fredholm_verdict, invertibility_scan, mellin_transform, symbols_on_line, symmetric_grid,
    wedge_operator, DecayCertificate, Dilated, ExpKernel, FredholmParams, Indicator, KernelRef, MellinSymbolSample,
    MultiplicativeConvolution, OverallVerdict, RayPairKernel, ScanOptions, TransformOptions, VertexVerdict,
};
use conelayer_core::unfold::{desingularize, desingularize_with, unfold, CollarPolicy};
use conelayer_core::Execution;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

fn within(elapsed: Duration, limit_ms: f64, what: &str) {
    let ms = elapsed.as_secs_f64() * 1e3;
    assert!(ms < limit_ms, "{what} took {ms:.1} ms, limit {limit_ms} ms");
}

// ---------------------------------------------------------------------------
// 1

fn ramification_example() {
    let start = Instant::now();
    let q = FRAC_PI_4;
    let s = SectorSet::from_bounds(&[(0.0, q), (q, 2.0 * q), (PI, PI + q), (1.5 * PI, 1.75 * PI)]).unwrap();
    let class = classify_point(&s).unwrap();
    let split = split_conical_crack(&s).unwrap();
    within(start.elapsed(), 10.0, "ramification example");
    assert_eq!(class.kind, PointKind::ConicalCrack);
    assert_eq!(class.ramification, 3);
    assert_eq!(split.no_crack_part, SectorSet::from_bounds(&[(PI, PI + q), (1.5 * PI, 1.75 * PI)]).unwrap());
    assert_eq!(split.crack_part, SectorSet::from_bounds(&[(0.0, q), (q, 2.0 * q)]).unwrap());
}

// ---------------------------------------------------------------------------
// 2

fn regular(n: usize) -> PolygonalDomain {
    PolygonalDomain::polygon((0..n).map(|i| Point2::from_polar(1.0, TAU * i as f64 / n as f64)).collect())
}

fn cracked_square() -> PolygonalDomain {
    PolygonalDomain::unit_square().with_crack(vec![p(0.5, 0.0), p(0.5, 0.5)])
}

fn cross() -> PolygonalDomain {
    PolygonalDomain::unit_square().with_crack(vec![p(0.2, 0.5), p(0.8, 0.5)]).with_crack(vec![p(0.5, 0.2), p(0.5, 0.8)])
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

fn k_theory_suite() {
    let start = Instant::now();
    for (d, vertices, rank) in [
        (PolygonalDomain::unit_square(), 4, 3),
        (PolygonalDomain::l_shape(), 6, 5),
        (PolygonalDomain::slit_disk(64), 3, 2),
    ] {
        let g = groupoid(&d);
        assert_eq!(k_boundary_algebra(&g).k, KPair::new(0, rank));
        assert_eq!(k_indicial(&g), KPair::new(0, vertices));
    }
    for k in 2..=10 {
        for positive in [false, true] {
            assert_eq!(k_straight_cone(k, positive), KPair::new(0, 0));
        }
    }
    for d in family() {
        let g = groupoid(&d);
        let n = g.vertex_count();
        assert_eq!(n, vertex_census(&d).unwrap().unfolded_vertex_count());
        assert_eq!(k_indicial(&g).k1.rank, n);
        if n >= 1 {
            assert_eq!(k_boundary_algebra(&g).k.k1.rank, n - 1);
        }
    }
    within(start.elapsed(), 1000.0, "K-theory suite");
}

// ---------------------------------------------------------------------------
// 3

/// Rank over Q by fraction-free (Bareiss) elimination.
fn rank_over_q(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            for k in col + 1..cols {
                m[r][k] = (m[rank][col] * m[r][k] - m[r][col] * m[rank][k]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `a · b` for an `n × r` and `r × m` random integer pair; low inner
/// dimension forces rank deficiency.
fn random_product(rng: &mut StdRng, n: usize, m: usize) -> Vec<Vec<i128>> {
    let r = rng.random_range(0..=n.max(m) + 1);
    let a: Vec<Vec<i128>> = (0..n).map(|_| (0..r).map(|_| rng.random_range(-3..=3)).collect()).collect();
    let b: Vec<Vec<i128>> = (0..r).map(|_| (0..m).map(|_| rng.random_range(-3..=3)).collect()).collect();
    (0..n).map(|i| (0..m).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn six_term_solver() {
    let start = Instant::now();
    for l in 1..=20 {
        let s = solve_six_term(&SixTermData::layer_potential_preset(l)).unwrap();
        assert_eq!(s.middle, KPair::new(0, l - 1), "l = {l}");
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..1000 {
        let (i0, i1, q0, q1) =
            (rng.random_range(0..8), rng.random_range(0..8), rng.random_range(0..8), rng.random_range(0..8));
        // δ: K1(Q) → K0(I) and exp: K0(Q) → K1(I)
        let rd = rank_over_q(random_product(&mut rng, i0, q1));
        let re = rank_over_q(random_product(&mut rng, i1, q0));
        let d = SixTermData::from_flags(KPair::new(i0, i1), KPair::new(q0, q1), false, true)
            .with_delta(MapFact::Rank(rd))
            .with_exponential(MapFact::Rank(re), true);
        let s = solve_six_term(&d).unwrap();
        let (m0, m1) = (s.middle.k0.rank, s.middle.k1.rank);
        // exactness at K0(A) and K1(A) with free groups
        assert_eq!(m0, (i0 - rd) + (q0 - re));
        assert_eq!(m1, (i1 - re) + (q1 - rd));
        let alternating = i0 as i64 - m0 as i64 + q0 as i64 - i1 as i64 + m1 as i64 - q1 as i64;
        assert_eq!(alternating, 0);
        assert_eq!(s.alternating_sum(&d), 0);

        // a map cannot have rank above either dimension
        let bad = SixTermData::from_flags(KPair::new(i0, i1), KPair::new(q0, q1), false, true)
            .with_delta(MapFact::Rank(i0.min(q1) + 1));
        assert!(solve_six_term(&bad).is_err());
        // δ onto K0(I) needs rank K1(Q) ≥ rank K0(I)
        let extra = rng.random_range(1..4);
        let onto = SixTermData::from_flags(KPair::new(q1 + extra, 0), KPair::new(0, q1), true, true);
        assert!(solve_six_term(&onto).is_err());
    }
    within(start.elapsed(), 1000.0, "six-term solver");
}

// ---------------------------------------------------------------------------
// 4

/// `∫₀^∞ κ(t) t^{z−1} dt` by the trapezoidal rule after `t = exp(π/2 · sinh s)`.
fn exp_sinh(kappa: impl Fn(f64) -> f64, z: Complex64) -> Complex64 {
    let term = |s: f64| -> Complex64 {
        let x = 0.5 * PI * s.sinh();
        let t = x.exp();
        if !t.is_finite() || t == 0.0 {
            return c(0.0, 0.0);
        }
        let v = kappa(t);
        if v == 0.0 {
            return c(0.0, 0.0);
        }
        (z * x).exp() * v * 0.5 * PI * s.cosh()
    };
    let s_max = 6.5;
    let mut h = 0.25;
    let mut prev: Option<Complex64> = None;
    loop {
        let n = (s_max / h) as i64;
        let mut sum = term(0.0);
        for k in 1..=n {
            sum += term(k as f64 * h) + term(-(k as f64) * h);
        }
        let cur = sum * h;
        if let Some(p) = prev {
            if (cur - p).norm() < 1e-13 * (1.0 + cur.norm()) || h < 1e-4 {
                return cur;
            }
        }
        prev = Some(cur);
        h /= 2.0;
    }
}

fn gamma(z: Complex64) -> Complex64 {
    exp_sinh(|t| (-t).exp(), z)
}

fn mellin_quadrature() {
    let start = Instant::now();
    let half = c(0.5, 0.0);
    let v = mellin_transform(&ExpKernel, half).unwrap();
    assert!((v - PI.sqrt()).norm() < 1e-8, "{v}");

    let exp: KernelRef = Arc::new(ExpKernel);
    for lambda in [0.5, 2.0, 10.0] {
        let d = Dilated::new(exp.clone(), lambda).unwrap();
        for z in [half, c(0.5, 3.0), c(1.2, -1.0)] {
            let lhs = mellin_transform(&d, z).unwrap();
            // ∫ e^{−λt} t^{z−1} dt = λ^{−z} Γ(z)
            let rhs = c(lambda, 0.0).powc(-z) * gamma(z);
            assert!((lhs - rhs).norm() < 1e-8, "lambda={lambda} z={z}: {lhs} vs {rhs}");
        }
    }

    // e^{−t} ⋆ 1_[1,2] ↦ Γ(z)(2^z − 1)/z
    let ind: KernelRef = Arc::new(Indicator::new(1.0, 2.0).unwrap());
    let conv = MultiplicativeConvolution::new(exp.clone(), ind, DecayCertificate::new(1.51, 0.0, 2.0));
    for z in [half, c(0.5, 1.0)] {
        let lhs = mellin_transform(&conv, z).unwrap();
        let rhs = gamma(z) * (c(2.0, 0.0).powc(z) - 1.0) / z;
        assert!((lhs - rhs).norm() < 1e-6, "z={z}: {lhs} vs {rhs}");
    }
    // e^{−t} ⋆ wedge(π/2) ↦ Γ(z) / (4 cos(πz/2))
    let w: KernelRef = Arc::new(RayPairKernel::wedge(FRAC_PI_2).unwrap());
    let conv = MultiplicativeConvolution::new(exp, w, DecayCertificate::new(0.25, 0.0, 1.0));
    for z in [half, c(0.5, 1.0)] {
        let lhs = mellin_transform(&conv, z).unwrap();
        let rhs = gamma(z) / (4.0 * (z * PI / 2.0).cos());
        assert!((lhs - rhs).norm() < 1e-6, "z={z}: {lhs} vs {rhs}");
    }
    within(start.elapsed(), 5000.0, "Mellin quadrature");
}

// ---------------------------------------------------------------------------
// 5

fn wedge_scan() {
    let start = Instant::now();
    let params = FredholmParams::default();
    assert_eq!((params.line, params.xi_max, params.xi_steps), (0.5, 40.0, 4001));
    let grid = symmetric_grid(params.xi_max, params.xi_steps).unwrap();
    let op = wedge_operator(FRAC_PI_2).unwrap();
    let samples = symbols_on_line(&[&op], 0.5, &grid, &TransformOptions::default(), Execution::default()).unwrap();
    let zero = grid.iter().position(|&x| x == 0.0).expect("grid contains 0");
    let sampled = samples[0].values[zero][(0, 1)];
    // double-layer kernel between perpendicular rays: t / (2π(1 + t²))
    let oracle = exp_sinh(|t| t / (2.0 * PI * (1.0 + t * t)), c(0.5, 0.0));
    assert!((sampled - oracle).norm() < 1e-6, "{sampled} vs {oracle}");
    assert!((oracle.re - 0.353_553_4).abs() < 1e-6);

    let report = fredholm_verdict(true, &["p1".into()], &samples, None, &params.scan).unwrap();
    let v = &report.per_vertex[0];
    assert!(v.scan.min_singular_value > 0.1, "{:?}", v.scan);
    assert_eq!(v.verdict, VertexVerdict::Invertible);
    assert_eq!(report.overall, OverallVerdict::Fredholm);

    let synthetic = MellinSymbolSample::from_fn(0.5, grid, scaled_identity(2, c(0.0, 0.0)), |x| {
        let z = c(0.0, x);
        scaled_identity(2, z / (1.0 + z))
    })
    .unwrap();
    let scan = invertibility_scan(&synthetic, 1e-8);
    assert!(scan.min_singular_value < 1e-8 && scan.argmin_xi.abs() < 1e-4, "{scan:?}");
    let report = fredholm_verdict(true, &["p1".into()], &[synthetic], None, &ScanOptions::default()).unwrap();
    assert_eq!(report.per_vertex[0].verdict, VertexVerdict::CertifiedZero);
    assert_eq!(report.overall, OverallVerdict::NotFredholm);
    within(start.elapsed(), 10_000.0, "wedge scan");
}

// ---------------------------------------------------------------------------
// 6

fn census_key(d: &PolygonalDomain) -> (usize, usize, usize, usize, Vec<String>) {
    let c = vertex_census(d).unwrap();
    let mut kinds: Vec<String> = c.singular_cracks.iter().map(|s| format!("{}:{}", s.class.kind, s.cover_count)).collect();
    kinds.sort();
    (c.l(), c.m(), c.m_prime(), c.alpha(), kinds)
}

fn invariance_battery() {
    let start = Instant::now();
    let params = FredholmParams { xi_steps: 201, ..FredholmParams::default() };
    for d in [PolygonalDomain::unit_square(), PolygonalDomain::l_shape(), regular(5), cracked_square()] {
        let u = unfold(&d).unwrap();
        let m1 = desingularize(&u).unwrap();
        let m2 = desingularize_with(&u, CollarPolicy::Scaled(0.3)).unwrap();
        assert!(m1.collars.iter().zip(&m2.collars).any(|(a, b)| a.epsilon != b.epsilon));
        let (g1, g2) = (build_groupoid(&m1), build_groupoid(&m2));
        assert_eq!(g1.vertex_strata, g2.vertex_strata);
        assert_eq!(g1.indicial_summands(), g2.indicial_summands());
        assert_eq!(k_boundary_algebra(&g1), k_boundary_algebra(&g2));
        assert_eq!(k_indicial(&g1), k_indicial(&g2));
        assert_eq!(fredholm_for_boundary(&m1, true, &params), fredholm_for_boundary(&m2, true, &params));
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let shapes = [PolygonalDomain::unit_square(), PolygonalDomain::l_shape(), cracked_square(), cross(), PolygonalDomain::slit_disk(48)];
    for d in &shapes {
        let key = census_key(d);
        for _ in 0..8 {
            let (angle, dx, dy) = (rng.random_range(0.0..TAU), rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let moved = d.map_points(|q| {
                let r = q.rotated(angle);
                p(r.x + dx, r.y + dy)
            });
            assert_eq!(census_key(&moved), key);
        }
    }

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

    for g in &gs {
        if g.vertex_count() > 0 {
            assert!(!g.is_b_groupoid());
        }
    }
    let connected = ConeBaseRecord::new(1, 1, true).unwrap();
    assert!(build_abstract_groupoid(&[connected]).is_b_groupoid());
    within(start.elapsed(), 1000.0, "invariance battery");
}

// ---------------------------------------------------------------------------
// 7

fn shipped_examples() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../domains");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "dom"))
        .collect();
    files.sort();
    files
}

fn cli_determinism() {
    let start = Instant::now();
    let files = shipped_examples();
    assert!(files.len() >= 8, "{files:?}");
    for f in &files {
        let path = f.to_str().unwrap();
        let text = std::fs::read_to_string(f).unwrap();
        let parsed = parse_domain_file(&text).unwrap();
        let canonical = serialize_domain_file(&parsed);
        assert_eq!(parse_domain_file(&canonical).unwrap(), parsed, "{path}");
        assert_eq!(serialize_domain_file(&parse_domain_file(&canonical).unwrap()), canonical, "{path}");

        let mut runs: Vec<Vec<&str>> = vec![vec!["conelayer", "ktheory", path], vec!["conelayer", "ktheory", path, "--format", "json"]];
        if vertex_census(&parsed.domain).unwrap().m() == 0 {
            runs.push(vec!["conelayer", "fredholm", path, "--elliptic", "true", "--xi-steps", "101"]);
        }
        for argv in runs {
            let first = run(&argv);
            assert_eq!(first.code, 0, "{argv:?}: {}", first.stderr);
            for _ in 0..2 {
                assert_eq!(run(&argv), first, "{argv:?}");
            }
            if argv.contains(&"json") {
                let back = read_json_report(&first.stdout).unwrap();
                assert_eq!(emit_report(&back, Format::Json), first.stdout);
            }
        }
    }
    within(start.elapsed(), 1000.0, "CLI determinism");
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn()); 7] = [
        ("1 ramification example", ramification_example),
        ("2 K-theory suite", k_theory_suite),
        ("3 six-term solver", six_term_solver),
        ("4 Mellin quadrature", mellin_quadrature),
        ("5 wedge scan", wedge_scan),
        ("6 invariance battery", invariance_battery),
        ("7 CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(()) => println!("criterion {name}: PASS ({ms:.1} ms)"),
            Err(_) => {
                failed += 1;
                println!("criterion {name}: FAIL ({ms:.1} ms)");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
