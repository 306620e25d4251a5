//! Zero computation in `w` with fan-out to the star, zero-location checks
//! for diagonal indices, and the aggregated verification driver.

use crate::constructors::{
    classical_hypergeometric, explicit_series, raising_cascade, remark_identity_check,
    rodrigues_polynomial, RaisingOp,
};
use crate::error::{Error, Result};
use crate::measures::{
    compute_moment_table_fixed_k, moment_table_for, omega_symmetry_check, pearson_check,
};
use crate::multi_index::MultiIndex;
use crate::oracle::{max_orthogonality_residual, oracle_b, oracle_d, solve_monic};
use crate::params::{Family, FamilyParams, ModelParams};
use crate::poly::PolyW;
use crate::precision::{c_abs, c_dist, cdiv, root_of_unity, PrecisionContext};
use crate::recurrence::{
    closed_form_coeffs, default_provider, generate, single_ray_ladder_check, ClosedFormProvider,
    OracleProvider,
};
use crate::report::{CheckResult, VerificationReport};
use rug::float::Special;
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// One fan-out root on the star: the `j`-th r-th root of a `w`-root.
#[derive(Clone, Debug)]
pub struct ZRoot {
    pub ray_index: usize,
    pub z: Complex,
}

/// Roots of a `PolyW` together with their star fan-out and quality data.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub w_roots: Vec<Complex>,
    pub z_roots: Vec<ZRoot>,
    /// `|p(w_i)|` per root, in `w_roots` order.
    pub residuals: Vec<Float>,
    pub max_residual: Float,
    pub min_pair_separation: Float,
    /// Absolute residual tolerance: `10^-(digits-12)` scaled by the
    /// coefficient max-norm.
    pub tol_root: Float,
}

impl ZeroSet {
    /// CSV rows: first one `w` row per root (`w_re,w_im,residual`), then one
    /// `z` row per fan-out root (`z_re,z_im,ray_index`).
    pub fn to_csv(&self, ctx: &PrecisionContext) -> String {
        let mut out = String::from("type,w_re,w_im,residual,z_re,z_im,ray_index\n");
        for (i, w) in self.w_roots.iter().enumerate() {
            let (re, im) = ctx.format_complex(w);
            let resid = &self.residuals[i];
            out.push_str(&format!("w,{re},{im},{},,,\n", ctx.format_float(resid)));
        }
        for zr in &self.z_roots {
            let (re, im) = ctx.format_complex(&zr.z);
            out.push_str(&format!("z,,,,{re},{im},{}\n", zr.ray_index));
        }
        out
    }
}

/// Simultaneous root iteration for the polynomial in `w`, then explicit
/// r-th-root fan-out to the star.
///
/// Initial guesses sit equally spaced on a circle of radius
/// `1 + max|coeff|`; iteration stops once the largest relative update falls
/// below `10^-(digits-12)`.
pub fn find_roots(p: &PolyW, r: usize, ctx: &PrecisionContext) -> Result<ZeroSet> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::ParamDomain(
                "root finding needs degree >= 1".into(),
            ))
        }
    };
    let lead = p.leading().expect("degree checked").clone();
    let monic = PolyW::from_coeffs(
        p.coeffs().iter().map(|c| cdiv(c, &lead, ctx)).collect(),
    );
    let deriv = monic.derivative(ctx);
    let norm = p.max_norm(ctx);
    // all roots of the monic polynomial lie inside |w| <= 1 + max|coeff|
    let radius = ctx.float(1) + monic.max_norm(ctx);
    let tol_rel = ctx.pow10(-(ctx.digits() as i32 - 12));
    let tol_root = {
        let mut scale = norm.clone();
        if scale < 1u32 {
            scale = ctx.float(1);
        }
        (&tol_rel * &scale).complete(ctx.prec())
    };

    let mut roots: Vec<Complex> = (0..degree)
        .map(|i| {
            let theta = ctx.pi() * 2u32 * (ctx.float(i as u32) + ctx.float(0.25))
                / ctx.float(degree as u32);
            let (s, c) = theta.sin_cos(Float::new(ctx.prec()));
            Complex::with_val(ctx.prec(), (c, s)) * &radius
        })
        .collect();

    let mut converged = false;
    let mut last_update = ctx.float(0);
    for _iter in 0..500 {
        let mut max_update = ctx.float(0);
        for i in 0..degree {
            let zi = roots[i].clone();
            let pv = monic.eval(&zi, ctx);
            if pv.is_zero() {
                continue;
            }
            let pd = deriv.eval(&zi, ctx);
            if pd.is_zero() {
                // sitting on a critical point: nudge off and retry next sweep
                roots[i] += Complex::with_val(ctx.prec(), (1e-3, 1e-3)) * &radius;
                max_update = Float::with_val(ctx.prec(), Special::Infinity);
                continue;
            }
            let newton = cdiv(&pv, &pd, ctx);
            let mut pair_sum = ctx.complex_zero();
            for (j, zj) in roots.iter().enumerate() {
                if j == i {
                    continue;
                }
                let diff = (&zi - zj).complete(ctx.cprec());
                if diff.is_zero() {
                    continue;
                }
                pair_sum += cdiv(&ctx.complex_one(), &diff, ctx);
            }
            let denom = ctx.complex_one() - (&newton * &pair_sum).complete(ctx.cprec());
            let delta = if c_abs(&denom).is_zero() {
                newton
            } else {
                cdiv(&newton, &denom, ctx)
            };
            roots[i] -= &delta;
            let rel = c_abs(&delta) / (ctx.float(1) + c_abs(&roots[i]));
            if rel > max_update {
                max_update = rel;
            }
        }
        last_update = max_update.clone();
        if max_update < tol_rel {
            converged = true;
            break;
        }
    }

    let residuals: Vec<Float> = roots.iter().map(|z| c_abs(&p.eval(z, ctx))).collect();
    let mut max_residual = ctx.float(0);
    for res in &residuals {
        if *res > max_residual {
            max_residual = res.clone();
        }
    }
    if !converged || max_residual > (&tol_root * 100u32).complete(ctx.prec()) {
        return Err(Error::NoConvergence(format!(
            "after 500 sweeps: last update {:.3e}, best residual {:.3e}",
            last_update.to_f64(),
            max_residual.to_f64()
        )));
    }

    let mut min_sep = Float::with_val(ctx.prec(), Special::Infinity);
    for i in 0..degree {
        for j in (i + 1)..degree {
            let d = c_dist(&roots[i], &roots[j], ctx);
            if d < min_sep {
                min_sep = d;
            }
        }
    }

    let mut z_roots = Vec::with_capacity(degree * r);
    for w in &roots {
        let mag = c_abs(w).root(r as u32);
        let base_arg = w.clone().arg().into_real_imag().0 / ctx.float(r as u32);
        for j in 0..r {
            let theta =
                base_arg.clone() + ctx.pi() * 2u32 * ctx.float(j as u32) / ctx.float(r as u32);
            let (s, c) = theta.sin_cos(Float::new(ctx.prec()));
            let z = Complex::with_val(ctx.prec(), (c, s)) * &mag;
            z_roots.push(ZRoot { ray_index: j, z });
        }
    }

    Ok(ZeroSet {
        w_roots: roots,
        z_roots,
        residuals,
        max_residual,
        min_pair_separation: min_sep,
        tol_root,
    })
}

/// Tolerances used by the verification driver, anchored to the context's
/// digit count (at 50 digits: route 1e-25, coefficients/paths 1e-20,
/// classical reduction 1e-30, operators 1e-25, moments 1e-40, Pearson
/// 1e-45).
#[derive(Clone, Debug)]
pub struct Tolerances {
    pub route_rel: Float,
    pub orthogonality_scale: Float,
    pub coeff_rel: Float,
    pub path_rel: Float,
    pub classical_rel: Float,
    pub operator_rel: Float,
    pub moment_abs: Float,
    pub pearson_rel: Float,
}

impl Tolerances {
    pub fn for_context(ctx: &PrecisionContext) -> Self {
        let d = ctx.digits() as i32;
        Tolerances {
            route_rel: ctx.pow10(-(d - 25)),
            orthogonality_scale: ctx.pow10(-(d - 25)),
            coeff_rel: ctx.pow10(-(d - 30)),
            path_rel: ctx.pow10(-(d - 30)),
            classical_rel: ctx.pow10(-(d - 20)),
            operator_rel: ctx.pow10(-(d - 25)),
            moment_abs: ctx.pow10(-(d - 10)),
            pearson_rel: ctx.pow10(-(d - 5)),
        }
    }

    /// One tolerance for every equality check (CLI override path).
    pub fn uniform(tol: Float) -> Self {
        Tolerances {
            route_rel: tol.clone(),
            orthogonality_scale: tol.clone(),
            coeff_rel: tol.clone(),
            path_rel: tol.clone(),
            classical_rel: tol.clone(),
            operator_rel: tol.clone(),
            moment_abs: tol.clone(),
            pearson_rel: tol,
        }
    }
}

/// Build the diagonal polynomial `(t, …, t)` by the family's natural route
/// and check the zero-location statement: for real classical parameters all
/// `w`-roots must be real, positive, and simple, with the star fan-out
/// invariant under rotation; for complex parameters the deviations are
/// measured and reported without assertion.
pub fn zero_location_check(params: &ModelParams, t: u32) -> Result<(CheckResult, ZeroSet)> {
    let ctx = params.ctx();
    let r = params.r();
    let n = MultiIndex::diagonal(r, t);
    let p = diagonal_polynomial(params, &n)?;
    let zeros = find_roots(&p, r, ctx)?;
    let name = format!("zero_location_diagonal t={t}");

    // worst deviation of a w-root from the positive real half-line
    let mut worst_imag = ctx.float(0);
    let mut worst_neg = ctx.float(0);
    for w in &zeros.w_roots {
        let im_rel = w.imag().clone().abs() / (ctx.float(1) + c_abs(w));
        if im_rel > worst_imag {
            worst_imag = im_rel;
        }
        let neg = (-w.real().clone()).max(&ctx.float(0));
        if neg > worst_neg {
            worst_neg = neg;
        }
    }
    // rotation invariance of the fan-out multiset
    let omega = root_of_unity(1, r, ctx);
    let mut worst_rot = ctx.float(0);
    for zr in &zeros.z_roots {
        let rotated = (&zr.z * &omega).complete(ctx.cprec());
        let mut best = Float::with_val(ctx.prec(), Special::Infinity);
        for other in &zeros.z_roots {
            let d = c_dist(&rotated, &other.z, ctx);
            if d < best {
                best = d;
            }
        }
        if best > worst_rot {
            worst_rot = best;
        }
    }

    let sep_floor = (&zeros.tol_root * 10u32).complete(ctx.prec());
    let check = if params.is_classical_real() {
        let ray_tol = ctx.pow10(-(ctx.digits() as i32 - 12));
        let located = worst_imag <= ray_tol && worst_neg <= ray_tol;
        let simple = t == 0 || zeros.min_pair_separation > sep_floor;
        let rotation_ok = worst_rot <= sep_floor;
        CheckResult::boolean(
            name,
            located && simple && rotation_ok,
            format!(
                "max |Im w|/(1+|w|) = {:.3e}, min separation = {:.3e}, rotation deviation = {:.3e}",
                worst_imag.to_f64(),
                zeros.min_pair_separation.to_f64(),
                worst_rot.to_f64()
            ),
        )
    } else {
        CheckResult::info(
            name,
            Some(worst_imag.clone()),
            format!(
                "complex parameters: measured max |Im w|/(1+|w|) = {:.3e}, min separation = {:.3e}",
                worst_imag.to_f64(),
                zeros.min_pair_separation.to_f64()
            ),
        )
    };
    Ok((check, zeros))
}

fn diagonal_polynomial(params: &ModelParams, n: &MultiIndex) -> Result<PolyW> {
    match params.family() {
        Family::MeixnerSecond => generate(params, n, None, &ClosedFormProvider { params }),
        _ => {
            let moments = moment_table_for(params, n.total())?;
            generate(params, n, None, &OracleProvider { params, moments: &moments })
        }
    }
}

/// Everything at once: route equivalence, orthogonality, recurrence
/// coefficients, path independence, operator identities, classical
/// reductions, zero location, and moment certification, with one
/// [`CheckResult`] per verification kind.
///
/// Never errors on a failing computation: a section that cannot complete
/// (for example a recurrence-coefficient pole at flagged parameters) is
/// recorded as a failed entry and the remaining sections still run.
pub fn full_verify(
    params: &ModelParams,
    n_max: u32,
    tol: &Tolerances,
    seed: u64,
) -> Result<VerificationReport> {
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    let ctx = params.ctx();
    let r = params.r();
    let family = params.family();
    let mut report = VerificationReport::new();
    let mut rng = StdRng::seed_from_u64(seed);

    if !params.warnings().is_empty() {
        report.push(CheckResult::info(
            "parameter_warnings",
            None,
            params.warnings().join("; "),
        ));
    }

    let moments = match moment_table_for(params, n_max) {
        Ok(m) => m,
        Err(e) => {
            report.push(CheckResult::boolean(
                "moment_table",
                false,
                format!("aborted: {e}"),
            ));
            return Ok(report);
        }
    };
    let indices = MultiIndex::indices_up_to(r, n_max);

    // --- route equivalence + orthogonality + normality ------------------
    section(&mut report, "route_equivalence", || {
        let mut out = Vec::new();
        let mut worst_cascade = ctx.float(0);
        let mut worst_series = ctx.float(0);
        let mut worst_rodrigues = ctx.float(0);
        let mut worst_recurrence = ctx.float(0);
        let mut worst_orth = ctx.float(0);
        let mut all_normal = true;
        let mut worst_cond = ctx.float(0);
        let provider = default_provider(params, &moments);
        let moment_norm = moments.max_norm(ctx);

        for n in &indices {
            let (po, cert) = solve_monic(params, n, &moments)?;
            if !cert.normal {
                all_normal = false;
            }
            if cert.condition_estimate > worst_cond {
                worst_cond = cert.condition_estimate.clone();
            }
            let mut polys: Vec<PolyW> = vec![po.clone()];

            let pc = raising_cascade(params, n, None)?;
            track_max(&mut worst_cascade, PolyW::rel_deviation(&pc, &po, ctx));
            polys.push(pc);

            if family == Family::MeixnerSecond {
                let ps = explicit_series(params, n)?;
                track_max(&mut worst_series, PolyW::rel_deviation(&ps, &po, ctx));
                polys.push(ps);
            }

            let pg = rodrigues_polynomial(params, n)?;
            track_max(&mut worst_rodrigues, PolyW::rel_deviation(&pg, &po, ctx));
            polys.push(pg);

            let pr = generate(params, n, None, provider.as_ref())?;
            track_max(&mut worst_recurrence, PolyW::rel_deviation(&pr, &po, ctx));
            polys.push(pr);

            for p in &polys {
                let resid = max_orthogonality_residual(params, n, p, &moments)?;
                let scale = (p.max_norm(ctx) * &moment_norm).max(&ctx.float(1e-300));
                track_max(&mut worst_orth, resid / scale);
            }
        }

        out.push(CheckResult::pass_fail(
            "route_equivalence/cascade",
            worst_cascade,
            tol.route_rel.clone(),
        ));
        if family == Family::MeixnerSecond {
            out.push(CheckResult::pass_fail(
                "route_equivalence/series",
                worst_series,
                tol.route_rel.clone(),
            ));
        } else {
            out.push(CheckResult::not_applicable(
                "route_equivalence/series",
                "explicit series exists for the meixner2 family",
            ));
        }
        out.push(CheckResult::pass_fail(
            "route_equivalence/rodrigues",
            worst_rodrigues,
            tol.route_rel.clone(),
        ));
        out.push(CheckResult::pass_fail(
            "route_equivalence/recurrence",
            worst_recurrence,
            tol.route_rel.clone(),
        ));
        out.push(CheckResult::pass_fail(
            "orthogonality_residuals",
            worst_orth,
            tol.orthogonality_scale.clone(),
        ));
        out.push(CheckResult::boolean(
            "normality_certificates",
            all_normal,
            format!("worst condition estimate {:.3e}", worst_cond.to_f64()),
        ));
        Ok(out)
    });

    // --- closed-form vs oracle recurrence coefficients ------------------
    if family == Family::MeixnerSecond {
        section(
            &mut report,
            "recurrence_coefficients_closed_vs_oracle",
            || {
                let mut worst = ctx.float(0);
                for n in &indices {
                    let closed = closed_form_coeffs(params, n)?;
                    for ray in 0..r {
                        let bo = oracle_b(params, n, ray, &moments)?;
                        let db = c_dist(&closed.b[ray], &bo, ctx)
                            / (ctx.float(1) + c_abs(&closed.b[ray]));
                        track_max(&mut worst, db);
                        if n.get(ray) >= 1 {
                            let do_ = oracle_d(params, n, ray, &moments)?;
                            let dd = c_dist(&closed.d[ray], &do_, ctx)
                                / (ctx.float(1) + c_abs(&closed.d[ray]));
                            track_max(&mut worst, dd);
                        }
                    }
                }
                Ok(vec![CheckResult::pass_fail(
                    "recurrence_coefficients_closed_vs_oracle",
                    worst,
                    tol.coeff_rel.clone(),
                )])
            },
        );
    } else {
        report.push(CheckResult::not_applicable(
            "recurrence_coefficients_closed_vs_oracle",
            "closed forms are implemented for the meixner2 family",
        ));
    }

    // --- path independence ----------------------------------------------
    if r == 1 {
        report.push(CheckResult::not_applicable(
            "path_independence",
            "single ray has a single path",
        ));
    } else {
        let rng_paths = &mut rng;
        section(&mut report, "path_independence", || {
            let provider = default_provider(params, &moments);
            let mut worst = ctx.float(0);
            for n in &indices {
                if n.total() < 2 {
                    continue;
                }
                let reference = generate(params, n, None, provider.as_ref())?;
                let paths: Vec<Vec<usize>> = if r == 2 {
                    n.all_paths()
                } else {
                    (0..20).map(|_| n.random_path(rng_paths)).collect()
                };
                for path in paths {
                    let p = generate(params, n, Some(&path), provider.as_ref())?;
                    track_max(&mut worst, PolyW::rel_deviation(&p, &reference, ctx));
                }
            }
            Ok(vec![CheckResult::pass_fail(
                "path_independence",
                worst,
                tol.path_rel.clone(),
            )])
        });
    }

    // --- raising-operator commutativity ----------------------------------
    {
        let mut worst = ctx.float(0);
        for _ in 0..50 {
            let p = random_poly(&mut rng, 6, ctx);
            track_max(&mut worst, commutativity_deviation(params, &p, &mut rng, ctx));
        }
        report.push(CheckResult::pass_fail(
            "raising_commutativity",
            worst,
            tol.operator_rel.clone(),
        ));
    }

    // --- mixed-argument raising identity (meixner2) ----------------------
    if family == Family::MeixnerSecond {
        section(&mut report, "remark_identity", || {
            let mut worst = ctx.float(0);
            let mut any_na = false;
            for ray in 0..r {
                let lowered_table = match params.with_beta_shifted(ray, -1) {
                    Ok(lowered) => Some(moment_table_for(&lowered, n_max + 1)?),
                    Err(_) => None,
                };
                for n in &indices {
                    let res = remark_identity_check(
                        params,
                        n,
                        ray,
                        lowered_table.as_ref(),
                        &tol.operator_rel,
                    )?;
                    match res.residual {
                        Some(resid) => track_max(&mut worst, resid),
                        None => any_na = true,
                    }
                }
            }
            let mut check = CheckResult::pass_fail(
                "remark_identity",
                worst,
                tol.operator_rel.clone(),
            );
            if any_na {
                check = check.with_detail("some lowered-parameter systems left the domain");
            }
            Ok(vec![check])
        });

        section(&mut report, "single_ray_ladder", || {
            let mut worst_ladder = ctx.float(0);
            for ray in 0..r {
                let res = single_ray_ladder_check(params, ray, 8, &tol.operator_rel)?;
                if let Some(resid) = res.residual {
                    track_max(&mut worst_ladder, resid);
                }
            }
            Ok(vec![CheckResult::pass_fail(
                "single_ray_ladder",
                worst_ladder,
                tol.operator_rel.clone(),
            )])
        });
    } else {
        report.push(CheckResult::not_applicable(
            "remark_identity",
            "mixed-argument identity is stated for the meixner2 family",
        ));
        report.push(CheckResult::not_applicable(
            "single_ray_ladder",
            "closed-form ladder is stated for the meixner2 family",
        ));
    }

    // --- classical reduction at r = 1 -------------------------------------
    if r == 1 {
        section(&mut report, "classical_r1", || {
            let mut out = vec![pearson_check(params, 20, &tol.pearson_rel)?];
            let mut worst = ctx.float(0);
            for n in 0..=n_max.min(8) {
                let hyper = classical_hypergeometric(params, n)?;
                let idx = MultiIndex::new(vec![n]);
                let (po, _) = solve_monic(params, &idx, &moments)?;
                track_max(&mut worst, PolyW::rel_deviation(&hyper, &po, ctx));
            }
            out.push(CheckResult::pass_fail(
                "classical_hypergeometric_r1",
                worst,
                tol.classical_rel.clone(),
            ));
            Ok(out)
        });
    } else {
        report.push(CheckResult::not_applicable(
            "pearson_r1",
            "difference identity is checked in the single-ray reduction",
        ));
        report.push(CheckResult::not_applicable(
            "classical_hypergeometric_r1",
            "hypergeometric closed forms live at r = 1",
        ));
    }

    // --- weight rotation symmetry ----------------------------------------
    section(&mut report, "omega_symmetry", || {
        let samples = vec![
            ctx.complex((1.5, 0.0)),
            ctx.complex((0.8, 0.4)),
            ctx.complex((-0.3, 1.1)),
        ];
        let sym_tol = ctx.epsilon() * 1000u32;
        Ok(vec![omega_symmetry_check(params, &samples, &sym_tol)?])
    });

    // --- zero location on the diagonal ------------------------------------
    section(&mut report, "zero_location_diagonal", || {
        let mut out = Vec::new();
        let t_max = (n_max / r as u32).max(1);
        let mut prev_roots: Option<Vec<Float>> = None;
        for t in 1..=t_max {
            let (check, zeros) = zero_location_check(params, t)?;
            out.push(check);
            if params.is_classical_real() {
                let mut reals: Vec<Float> =
                    zeros.w_roots.iter().map(|w| w.real().clone()).collect();
                reals.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
                if let Some(prev) = &prev_roots {
                    let interlaces = interlace_strictly(prev, &reals);
                    out.push(CheckResult::info(
                        format!("interlacing_diagonal t={}..{}", t - 1, t),
                        None,
                        format!("strict interlacing observed: {interlaces}"),
                    ));
                }
                prev_roots = Some(reals);
            }
        }
        Ok(out)
    });

    // --- moment tail certification ----------------------------------------
    section(&mut report, "moment_tail_certification", || {
        let doubled = compute_moment_table_fixed_k(
            params,
            moments.jmax(),
            moments.mmax(),
            moments.truncation_k() * 2,
        )?;
        let mut worst = ctx.float(0);
        for ray in 0..r {
            for j in 0..=moments.jmax() {
                for m in 0..=moments.mmax() {
                    track_max(
                        &mut worst,
                        c_dist(moments.get(ray, j, m), doubled.get(ray, j, m), ctx),
                    );
                }
            }
        }
        Ok(vec![CheckResult::pass_fail(
            "moment_tail_certification",
            worst,
            tol.moment_abs.clone(),
        )])
    });

    Ok(report)
}

/// Run one verification section; a section that cannot complete becomes a
/// failed entry instead of aborting the report.
fn section<F>(report: &mut VerificationReport, name: &str, f: F)
where
    F: FnOnce() -> Result<Vec<CheckResult>>,
{
    match f() {
        Ok(results) => {
            for r in results {
                report.push(r);
            }
        }
        Err(e) => report.push(CheckResult::boolean(name, false, format!("aborted: {e}"))),
    }
}

fn track_max(worst: &mut Float, candidate: Float) {
    if candidate > *worst {
        *worst = candidate;
    }
}

/// Loose interlacing between consecutive diagonal levels: every root of the
/// coarser polynomial lies strictly inside the hull of the finer one, and
/// consecutive coarse roots are separated by at least one fine root.
fn interlace_strictly(coarse: &[Float], fine: &[Float]) -> bool {
    if coarse.is_empty() || fine.len() <= coarse.len() {
        return false;
    }
    let lo = &fine[0];
    let hi = &fine[fine.len() - 1];
    if coarse.iter().any(|c| c <= lo || c >= hi) {
        return false;
    }
    for pair in coarse.windows(2) {
        if !fine.iter().any(|f| pair[0] < *f && *f < pair[1]) {
            return false;
        }
    }
    true
}

fn random_poly<R: rand::Rng>(rng: &mut R, max_deg: usize, ctx: &PrecisionContext) -> PolyW {
    let deg = rng.random_range(1..=max_deg);
    let mut coeffs: Vec<Complex> = (0..=deg)
        .map(|_| ctx.complex((rng.random_range(-2.0f64..2.0), rng.random_range(-2.0f64..2.0))))
        .collect();
    if c_abs(&coeffs[deg]) < 0.1 {
        coeffs[deg] = ctx.complex_one();
    }
    PolyW::from_coeffs(coeffs)
}

/// Deviation between the two orders of a commuting raising pair. For the
/// second kind the bare operators commute (two β-shifts at shared `c`);
/// likewise two Charlier `a`-steps. For the first kind the reorderable
/// object is the matched β-ladder with the per-ray `c` values swapped:
/// `Op(c_j, β) ∘ Op(c_i, β+1) = Op(c_i, β) ∘ Op(c_j, β+1)`.
fn commutativity_deviation<R: rand::Rng>(
    params: &ModelParams,
    p: &PolyW,
    rng: &mut R,
    ctx: &PrecisionContext,
) -> Float {
    let random_beta = |rng: &mut R| {
        ctx.complex((rng.random_range(-2.5f64..2.5), rng.random_range(-2.5f64..2.5)))
    };
    match params.payload() {
        FamilyParams::MeixnerSecond { c, .. } => {
            let op_i = RaisingOp::meixner(c.clone(), random_beta(rng));
            let op_j = RaisingOp::meixner(c.clone(), random_beta(rng));
            let ab = op_i.apply(&op_j.apply(p, ctx), ctx);
            let ba = op_j.apply(&op_i.apply(p, ctx), ctx);
            PolyW::rel_deviation(&ab, &ba, ctx)
        }
        FamilyParams::Charlier { .. } => {
            let a1 = ctx.complex((rng.random_range(0.2f64..3.0), rng.random_range(-1.0f64..1.0)));
            let a2 = ctx.complex((rng.random_range(0.2f64..3.0), rng.random_range(-1.0f64..1.0)));
            let op_i = RaisingOp::charlier(a1);
            let op_j = RaisingOp::charlier(a2);
            let ab = op_i.apply(&op_j.apply(p, ctx), ctx);
            let ba = op_j.apply(&op_i.apply(p, ctx), ctx);
            PolyW::rel_deviation(&ab, &ba, ctx)
        }
        FamilyParams::MeixnerFirst { c, beta } => {
            let ci = c[rng.random_range(0..c.len())].clone();
            let cj = ctx.complex((rng.random_range(0.1f64..0.9), rng.random_range(-0.3f64..0.3)));
            let b_hi = (beta + 1u32).complete(ctx.cprec());
            let first = RaisingOp::meixner(cj.clone(), beta.clone())
                .apply(&RaisingOp::meixner(ci.clone(), b_hi.clone()).apply(p, ctx), ctx);
            let second = RaisingOp::meixner(ci, beta.clone())
                .apply(&RaisingOp::meixner(cj, b_hi).apply(p, ctx), ctx);
            PolyW::rel_deviation(&first, &second, ctx)
        }
    }
}
