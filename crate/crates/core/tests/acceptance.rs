//! Acceptance suite: one test per criterion, each printing a pass line with
//! its observed worst residual. The grid covers r ∈ {1,2,3} with two real
//! parameter sets (c = 0.3 and c = 0.5) and one fully complex set for the
//! second-kind Meixner family.

use angelesco::analysis::zero_location_check;
use angelesco::constructors::{
    classical_hypergeometric, explicit_series, raising_cascade, remark_identity_check,
    rodrigues_polynomial, RaisingOp,
};
use angelesco::measures::{
    compute_moment_table, compute_moment_table_fixed_k, moment_table_for, pearson_check,
};
use angelesco::multi_index::MultiIndex;
use angelesco::oracle::{max_orthogonality_residual, oracle_b, oracle_d, solve_monic};
use angelesco::params::ModelParams;
use angelesco::poly::PolyW;
use angelesco::precision::{c_abs, c_dist, PrecisionContext};
use angelesco::recurrence::{
    closed_form_coeffs, generate, generate_with_cache, single_ray_ladder_check, ClosedFormProvider,
    OracleProvider, WalkCache,
};
use angelesco::report::Verdict;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::Float;
use std::time::Instant;

fn ctx50() -> PrecisionContext {
    PrecisionContext::new(50).unwrap()
}

const REAL_BETAS: [f64; 3] = [0.7, 1.9, 3.1];
const COMPLEX_BETAS: [(f64, f64); 3] = [(0.6, 0.3), (1.4, -0.2), (2.3, 0.5)];

/// The three Meixner second-kind parameter sets at star order `r`.
fn grid_sets(r: usize, ctx: &PrecisionContext) -> Vec<(String, ModelParams)> {
    let real = |c: f64| {
        ModelParams::meixner_second(
            REAL_BETAS[..r].iter().map(|&b| ctx.complex(b)).collect(),
            ctx.complex(c),
            ctx.clone(),
        )
        .unwrap()
    };
    let complex_set = ModelParams::meixner_second(
        COMPLEX_BETAS[..r].iter().map(|&p| ctx.complex(p)).collect(),
        ctx.complex((0.3, 0.2)),
        ctx.clone(),
    )
    .unwrap();
    vec![
        (format!("r{r}/real_c0.3"), real(0.3)),
        (format!("r{r}/real_c0.5"), real(0.5)),
        (format!("r{r}/complex"), complex_set),
    ]
}

fn track(worst: &mut Float, cand: Float) {
    if cand > *worst {
        *worst = cand;
    }
}

/// All five construction routes at one index, oracle first.
fn all_routes(
    params: &ModelParams,
    n: &MultiIndex,
    moments: &angelesco::measures::MomentTable,
    cache: &mut WalkCache,
) -> Vec<PolyW> {
    let provider = ClosedFormProvider { params };
    let (oracle, cert) = solve_monic(params, n, moments).unwrap();
    assert!(cert.normal, "index {n} not normal");
    vec![
        oracle,
        explicit_series(params, n).unwrap(),
        raising_cascade(params, n, None).unwrap(),
        rodrigues_polynomial(params, n).unwrap(),
        generate_with_cache(params, n, None, &provider, cache).unwrap(),
    ]
}

#[test]
fn criterion_1_route_equivalence() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol = ctx.pow10(-25);
    let mut worst = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let moments = moment_table_for(&params, 6).unwrap();
            let mut cache = WalkCache::new(&params);
            for n in MultiIndex::indices_up_to(r, 6) {
                let polys = all_routes(&params, &n, &moments, &mut cache);
                for i in 0..polys.len() {
                    for j in (i + 1)..polys.len() {
                        let dev = PolyW::rel_deviation(&polys[i], &polys[j], &ctx);
                        assert!(
                            dev <= tol,
                            "{label} n={n}: routes {i} and {j} deviate by {dev}"
                        );
                        track(&mut worst, dev);
                    }
                }
            }
        }
    }
    println!(
        "criterion 1 (route equivalence, |n| <= 6): PASS, worst rel dev {:.3e}, {:?}",
        worst.to_f64(),
        started.elapsed()
    );
    assert!(started.elapsed().as_secs() < 120, "route grid exceeded 2 minutes");
}

#[test]
fn criterion_2_orthogonality_residuals() {
    let started = Instant::now();
    let ctx = ctx50();
    let scale_tol = ctx.pow10(-25);
    let mut worst = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let moments = moment_table_for(&params, 6).unwrap();
            let moment_norm = moments.max_norm(&ctx);
            let mut cache = WalkCache::new(&params);
            for n in MultiIndex::indices_up_to(r, 6) {
                for p in all_routes(&params, &n, &moments, &mut cache) {
                    let resid = max_orthogonality_residual(&params, &n, &p, &moments).unwrap();
                    let rel = resid / (p.max_norm(&ctx) * &moment_norm);
                    assert!(rel <= scale_tol, "{label} n={n}: residual {rel}");
                    track(&mut worst, rel);
                }
            }
        }
    }
    println!(
        "criterion 2 (orthogonality residuals): PASS, worst scaled residual {:.3e}, {:?}",
        worst.to_f64(),
        started.elapsed()
    );
}

#[test]
fn criterion_3_recurrence_coefficients_closed_vs_oracle() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol = ctx.pow10(-20);
    let mut worst = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let moments = moment_table_for(&params, 6).unwrap();
            for n in MultiIndex::indices_up_to(r, 5) {
                let closed = closed_form_coeffs(&params, &n).unwrap();
                for ray in 0..r {
                    let bo = oracle_b(&params, &n, ray, &moments).unwrap();
                    let db = c_dist(&closed.b[ray], &bo, &ctx)
                        / (ctx.float(1) + c_abs(&closed.b[ray]));
                    assert!(db <= tol, "{label} n={n} ray={ray}: b deviates {db}");
                    track(&mut worst, db);
                    if n.get(ray) >= 1 {
                        let do_ = oracle_d(&params, &n, ray, &moments).unwrap();
                        let dd = c_dist(&closed.d[ray], &do_, &ctx)
                            / (ctx.float(1) + c_abs(&closed.d[ray]));
                        assert!(dd <= tol, "{label} n={n} ray={ray}: d deviates {dd}");
                        track(&mut worst, dd);
                    }
                }
            }
        }
    }
    println!(
        "criterion 3 (closed-form vs oracle recurrence coefficients): PASS, worst {:.3e}, {:?}",
        worst.to_f64(),
        started.elapsed()
    );
}

#[test]
fn criterion_4_path_independence() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol = ctx.pow10(-20);
    let mut rng = StdRng::seed_from_u64(0xACCE_0004);
    let mut worst = ctx.float(0);
    for r in 2..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let provider = ClosedFormProvider { params: &params };
            for n in MultiIndex::indices_up_to(r, 5) {
                if n.total() < 2 {
                    continue;
                }
                let reference = generate(&params, &n, None, &provider).unwrap();
                let paths: Vec<Vec<usize>> = if r == 2 {
                    n.all_paths()
                } else {
                    (0..20).map(|_| n.random_path(&mut rng)).collect()
                };
                for path in paths {
                    let p = generate(&params, &n, Some(&path), &provider).unwrap();
                    let dev = PolyW::rel_deviation(&p, &reference, &ctx);
                    assert!(dev <= tol, "{label} n={n} path {path:?}: {dev}");
                    track(&mut worst, dev);
                }
            }
        }
    }
    println!(
        "criterion 4 (path independence, |n| <= 5): PASS, worst rel dev {:.3e}, {:?}",
        worst.to_f64(),
        started.elapsed()
    );
}

#[test]
fn criterion_5_classical_regression_r1() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol = ctx.pow10(-30);
    let mut worst = ctx.float(0);

    // Meixner at five parameter points: engine closed forms against the
    // classical three-term values b_n = (n+(β+n)c)/(1-c),
    // a_n = c n (β+n-1)/(1-c)^2, and polynomials against the terminating
    // hypergeometric expansion.
    let meixner_points: [(f64, f64); 5] =
        [(1.0, 0.5), (2.0, 0.3), (0.7, 0.25), (3.2, 0.6), (1.5, 0.4)];
    for (beta, c) in meixner_points {
        let params = ModelParams::meixner_second(
            vec![ctx.complex(beta)],
            ctx.complex(c),
            ctx.clone(),
        )
        .unwrap();
        let cf = ctx.float(c);
        let bf = ctx.float(beta);
        let one_minus_c = ctx.float(1) - &cf;
        let moments = moment_table_for(&params, 11).unwrap();
        for n in 0..=10u32 {
            let idx = MultiIndex::new(vec![n]);
            let coeffs = closed_form_coeffs(&params, &idx).unwrap();
            let b_ref = (ctx.float(n) + (bf.clone() + ctx.float(n)) * &cf) / &one_minus_c;
            track(
                &mut worst,
                c_dist(&coeffs.b[0], &ctx.complex(b_ref), &ctx),
            );
            if n >= 1 {
                let a_ref = cf.clone() * ctx.float(n) * (bf.clone() + ctx.float(n) - 1u32)
                    / one_minus_c.clone().square();
                track(
                    &mut worst,
                    c_dist(&coeffs.d[0], &ctx.complex(a_ref), &ctx),
                );
            }
            if n <= 8 {
                let hyper = classical_hypergeometric(&params, n).unwrap();
                let (oracle, _) = solve_monic(&params, &idx, &moments).unwrap();
                track(&mut worst, PolyW::rel_deviation(&hyper, &oracle, &ctx));
                let cascade = raising_cascade(&params, &idx, None).unwrap();
                track(&mut worst, PolyW::rel_deviation(&hyper, &cascade, &ctx));
            }
        }
    }

    // Charlier at five parameter points: oracle-extracted coefficients
    // against b_n = a + n, a_n = a n.
    let charlier_points: [f64; 5] = [1.0, 2.0, 0.5, 3.7, 2.5];
    for a in charlier_points {
        let params = ModelParams::charlier(vec![ctx.complex(a)], ctx.clone()).unwrap();
        let moments = moment_table_for(&params, 11).unwrap();
        let af = ctx.float(a);
        for n in 0..=10u32 {
            let idx = MultiIndex::new(vec![n]);
            let bo = oracle_b(&params, &idx, 0, &moments).unwrap();
            let b_ref = af.clone() + ctx.float(n);
            track(&mut worst, c_dist(&bo, &ctx.complex(b_ref), &ctx));
            if n >= 1 {
                let do_ = oracle_d(&params, &idx, 0, &moments).unwrap();
                let a_ref = af.clone() * ctx.float(n);
                track(&mut worst, c_dist(&do_, &ctx.complex(a_ref), &ctx));
            }
            if n <= 8 {
                let hyper = classical_hypergeometric(&params, n).unwrap();
                let (oracle, _) = solve_monic(&params, &idx, &moments).unwrap();
                track(&mut worst, PolyW::rel_deviation(&hyper, &oracle, &ctx));
            }
        }
    }

    assert!(worst <= ctx.pow10(-30), "worst classical deviation {worst}");
    let _ = tol;
    println!(
        "criterion 5 (classical r=1 regression): PASS, worst deviation {:.3e}, {:?}",
        worst.to_f64(),
        started.elapsed()
    );
}

#[test]
fn criterion_6_operator_properties() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol = ctx.pow10(-25);
    let mut rng = StdRng::seed_from_u64(0xACCE_0006);

    // raising-step commutativity on 50 random (β_i, β_j, p) triples
    let mut worst_comm = ctx.float(0);
    let c = ctx.complex((0.3, 0.2));
    for _ in 0..50 {
        let deg = rng.random_range(1..=6usize);
        let p = PolyW::from_coeffs(
            (0..=deg)
                .map(|_| {
                    ctx.complex((rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
                })
                .collect(),
        );
        let bi = ctx.complex((rng.random_range(-3.0..3.0), rng.random_range(-1.5..1.5)));
        let bj = ctx.complex((rng.random_range(-3.0..3.0), rng.random_range(-1.5..1.5)));
        let oi = RaisingOp::meixner(c.clone(), bi);
        let oj = RaisingOp::meixner(c.clone(), bj);
        let ab = oi.apply(&oj.apply(&p, &ctx), &ctx);
        let ba = oj.apply(&oi.apply(&p, &ctx), &ctx);
        let dev = PolyW::rel_deviation(&ab, &ba, &ctx);
        assert!(dev <= tol, "commutativity deviation {dev}");
        track(&mut worst_comm, dev);
    }

    // mixed-argument identity across the grid, |n| <= 4, every ray
    let mut worst_remark = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            for ray in 0..r {
                let lowered = params.with_beta_shifted(ray, -1).unwrap();
                let lowered_moments = moment_table_for(&lowered, 5).unwrap();
                for n in MultiIndex::indices_up_to(r, 4) {
                    let res =
                        remark_identity_check(&params, &n, ray, Some(&lowered_moments), &tol)
                            .unwrap();
                    assert_eq!(
                        res.verdict,
                        Verdict::Pass,
                        "{label} n={n} ray={ray}: {res:?}"
                    );
                    track(&mut worst_remark, res.residual.unwrap());
                }
            }
        }
    }

    // single-ray three-term ladder to n = 8
    let mut worst_ladder = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            for ray in 0..r {
                let res = single_ray_ladder_check(&params, ray, 8, &tol).unwrap();
                assert_eq!(res.verdict, Verdict::Pass, "{label} ray={ray}: {res:?}");
                track(&mut worst_ladder, res.residual.unwrap());
            }
        }
    }

    println!(
        "criterion 6 (operator properties): PASS, commutativity {:.3e}, remark {:.3e}, ladder {:.3e}, {:?}",
        worst_comm.to_f64(),
        worst_remark.to_f64(),
        worst_ladder.to_f64(),
        started.elapsed()
    );
}

#[test]
fn criterion_7_zero_location_diagonal() {
    let started = Instant::now();
    let ctx = ctx50();
    for r in 2..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let classical = params.is_classical_real();
            for t in 1..=5u32 {
                let (check, zeros) = zero_location_check(&params, t).unwrap();
                if classical {
                    assert_eq!(check.verdict, Verdict::Pass, "{label} t={t}: {check:?}");
                    // simple, real, positive roots with separated pairs
                    let floor = zeros.tol_root.clone() * 10u32;
                    assert!(
                        zeros.min_pair_separation > floor,
                        "{label} t={t}: separation {}",
                        zeros.min_pair_separation
                    );
                } else {
                    assert_eq!(check.verdict, Verdict::Info, "{label} t={t}");
                }
                assert_eq!(zeros.w_roots.len(), (r as u32 * t) as usize);
                assert_eq!(zeros.z_roots.len(), zeros.w_roots.len() * r);
            }
        }
    }
    println!(
        "criterion 7 (diagonal zero location, t <= 5, r in {{2,3}}): PASS, {:?}",
        started.elapsed()
    );
}

#[test]
fn criterion_8_moment_certification_and_pearson() {
    let started = Instant::now();
    let ctx = ctx50();
    let tol_abs = ctx.pow10(-40);
    let mut worst_moment = ctx.float(0);
    for r in 1..=3usize {
        for (label, params) in grid_sets(r, &ctx) {
            let certified = compute_moment_table(&params, 4, 6, &tol_abs).unwrap();
            assert!(certified.tail_bound() < &tol_abs);
            let doubled = compute_moment_table_fixed_k(
                &params,
                4,
                6,
                certified.truncation_k() * 2,
            )
            .unwrap();
            for ray in 0..r {
                for j in 0..=4usize {
                    for m in 0..=6usize {
                        let dev =
                            c_dist(certified.get(ray, j, m), doubled.get(ray, j, m), &ctx);
                        assert!(dev <= tol_abs, "{label} [{ray}][{j}][{m}]: {dev}");
                        track(&mut worst_moment, dev);
                    }
                }
            }
        }
    }

    let pearson_tol = ctx.pow10(-45);
    let mut worst_pearson = ctx.float(0);
    for (label, params) in grid_sets(1, &ctx) {
        let res = pearson_check(&params, 20, &pearson_tol).unwrap();
        assert_eq!(res.verdict, Verdict::Pass, "{label}: {res:?}");
        track(&mut worst_pearson, res.residual.unwrap());
    }
    for a in [1.0f64, 2.0] {
        let params = ModelParams::charlier(vec![ctx.complex(a)], ctx.clone()).unwrap();
        let res = pearson_check(&params, 20, &pearson_tol).unwrap();
        assert_eq!(res.verdict, Verdict::Pass, "charlier a={a}: {res:?}");
        track(&mut worst_pearson, res.residual.unwrap());
    }

    println!(
        "criterion 8 (moment tail certification + Pearson): PASS, worst moment shift {:.3e}, worst Pearson residual {:.3e}, {:?}",
        worst_moment.to_f64(),
        worst_pearson.to_f64(),
        started.elapsed()
    );
}

/// The oracle provider and the closed-form provider generate identical
/// polynomials along full walks.
#[test]
fn providers_agree_along_walks() {
    let ctx = ctx50();
    for (label, params) in grid_sets(2, &ctx) {
        let moments = moment_table_for(&params, 5).unwrap();
        let closed = ClosedFormProvider { params: &params };
        let oracle = OracleProvider {
            params: &params,
            moments: &moments,
        };
        for n in [MultiIndex::new(vec![2, 2]), MultiIndex::new(vec![3, 1])] {
            let a = generate(&params, &n, None, &closed).unwrap();
            let b = generate(&params, &n, None, &oracle).unwrap();
            let dev = PolyW::rel_deviation(&a, &b, &ctx);
            assert!(dev <= ctx.pow10(-25), "{label} n={n}: {dev}");
        }
    }
}

/// The tolerances derive from the context, so the cross-checks must keep
/// passing when the precision is raised well past the default.
#[test]
fn precision_scales_beyond_default() {
    let ctx = PrecisionContext::new(80).unwrap();
    let params = ModelParams::meixner_second(
        vec![ctx.complex((0.6, 0.3)), ctx.complex((1.4, -0.2))],
        ctx.complex((0.3, 0.2)),
        ctx.clone(),
    )
    .unwrap();
    let moments = moment_table_for(&params, 4).unwrap();
    let tol = ctx.pow10(-55);
    let mut cache = WalkCache::new(&params);
    for n in MultiIndex::indices_up_to(2, 4) {
        let polys = all_routes(&params, &n, &moments, &mut cache);
        for i in 1..polys.len() {
            let dev = PolyW::rel_deviation(&polys[0], &polys[i], &ctx);
            assert!(dev <= tol, "digits=80 n={n} route {i}: {dev}");
        }
    }
}

/// Value semantics end to end: independent threads share one immutable
/// moment table and solve concurrently.
#[test]
fn concurrent_solves_share_the_moment_table() {
    let ctx = ctx50();
    let params = ModelParams::meixner_second(
        vec![ctx.complex(1), ctx.complex(2.5)],
        ctx.complex(0.5),
        ctx.clone(),
    )
    .unwrap();
    let moments = std::sync::Arc::new(moment_table_for(&params, 4).unwrap());
    let params = std::sync::Arc::new(params);
    let reference: Vec<PolyW> = MultiIndex::indices_up_to(2, 4)
        .iter()
        .map(|n| solve_monic(&params, n, &moments).unwrap().0)
        .collect();

    let handles: Vec<_> = (0..4)
        .map(|_| {
            let params = params.clone();
            let moments = moments.clone();
            std::thread::spawn(move || {
                MultiIndex::indices_up_to(2, 4)
                    .iter()
                    .map(|n| solve_monic(&params, n, &moments).unwrap().0)
                    .collect::<Vec<PolyW>>()
            })
        })
        .collect();
    for handle in handles {
        let polys = handle.join().unwrap();
        for (a, b) in reference.iter().zip(&polys) {
            assert!(PolyW::abs_deviation(a, b, params.ctx()).is_zero());
        }
    }
}
