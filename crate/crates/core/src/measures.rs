//! Weight evaluation on the lattice and truncated mixed-moment tables with
//! certified tails.
//!
//! Everything is computed in the integer variable `w = k`; the map to the
//! complex mass points lives in [`crate::params::MassPoint`]. Complex powers
//! use the principal logarithm throughout.

use crate::error::{Error, Result};
use crate::gamma::log_gamma;
use crate::params::{Family, FamilyParams, ModelParams};
use crate::precision::{c_abs, cmul, PrecisionContext};
use crate::report::CheckResult;
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// Weight `w_ℓ(k)` at the lattice point `k` on ray `ℓ`, evaluated through
/// `exp(log Γ(…) + k log(…) - log Γ(k+1))` with principal logarithms.
pub fn weight_at(params: &ModelParams, ray: usize, k: u32) -> Result<Complex> {
    let ctx = params.ctx();
    weight_at_w(params, ray, &ctx.complex(k))
}

/// Weight on ray `ray` as a function of a complex point `z` (through
/// `w = z^r`); used by the rotation-symmetry check.
pub fn weight_at_z(params: &ModelParams, ray: usize, z: &Complex) -> Result<Complex> {
    use rug::ops::Pow;
    let w = z.clone().pow(params.r() as u32);
    weight_at_w(params, ray, &w)
}

fn weight_at_w(params: &ModelParams, ray: usize, w: &Complex) -> Result<Complex> {
    let ctx = params.ctx();
    let gamma_or_domain = |z: &Complex| -> Result<Complex> {
        log_gamma(z, ctx).map_err(|e| Error::ParamDomain(format!("gamma pole in weight: {e}")))
    };
    let lg_w1 = gamma_or_domain(&(w + 1u32).complete(ctx.cprec()))?;
    let log = match params.payload() {
        FamilyParams::Charlier { a } => cmul(w, &a[ray].clone().ln(), ctx) - lg_w1,
        FamilyParams::MeixnerFirst { c, beta } => {
            let lg_b = gamma_or_domain(&(w + beta).complete(ctx.cprec()))?;
            lg_b + cmul(w, &c[ray].clone().ln(), ctx) - lg_w1
        }
        FamilyParams::MeixnerSecond { beta, c } => {
            let lg_b = gamma_or_domain(&(w + &beta[ray]).complete(ctx.cprec()))?;
            lg_b + cmul(w, &c.clone().ln(), ctx) - lg_w1
        }
    };
    Ok(log.exp())
}

/// Weights `w_ℓ(0), …, w_ℓ(upto)` by the term ratio
/// `w(k+1)/w(k)`; one gamma evaluation per ray. Agrees with
/// [`weight_at`] to working precision (covered by tests).
pub fn weight_sequence(params: &ModelParams, ray: usize, upto: u32) -> Result<Vec<Complex>> {
    let ctx = params.ctx();
    let mut out = Vec::with_capacity(upto as usize + 1);
    let mut w = match params.payload() {
        FamilyParams::Charlier { .. } => ctx.complex_one(),
        FamilyParams::MeixnerFirst { beta, .. } => crate::gamma::gamma(beta, ctx)
            .map_err(|e| Error::ParamDomain(format!("gamma pole in weight: {e}")))?,
        FamilyParams::MeixnerSecond { beta, .. } => crate::gamma::gamma(&beta[ray], ctx)
            .map_err(|e| Error::ParamDomain(format!("gamma pole in weight: {e}")))?,
    };
    out.push(w.clone());
    for k in 0..upto {
        let ratio = match params.payload() {
            FamilyParams::Charlier { a } => {
                (&a[ray] / ctx.float(k + 1)).complete(ctx.cprec())
            }
            FamilyParams::MeixnerFirst { c, beta } => {
                let num = cmul(&c[ray], &(beta + ctx.float(k)).complete(ctx.cprec()), ctx);
                num / ctx.float(k + 1)
            }
            FamilyParams::MeixnerSecond { beta, c } => {
                let num = cmul(c, &(&beta[ray] + ctx.float(k)).complete(ctx.cprec()), ctx);
                num / ctx.float(k + 1)
            }
        };
        w = cmul(&w, &ratio, ctx);
        out.push(w.clone());
    }
    Ok(out)
}

/// Mixed moments `M[ℓ][j][m] = Σ_k (-k)_j k^m w_ℓ(k)` for `j <= jmax`,
/// `m <= mmax`, truncated with a certified geometric tail bound.
#[derive(Clone, Debug)]
pub struct MomentTable {
    family: Family,
    r: usize,
    jmax: usize,
    mmax: usize,
    tol_abs: Float,
    entries: Vec<Vec<Vec<Complex>>>,
    truncation_k: u32,
    tail_bound: Float,
}

impl MomentTable {
    pub fn get(&self, ray: usize, j: usize, m: usize) -> &Complex {
        &self.entries[ray][j][m]
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn mmax(&self) -> usize {
        self.mmax
    }

    pub fn tol_abs(&self) -> &Float {
        &self.tol_abs
    }

    pub fn truncation_k(&self) -> u32 {
        self.truncation_k
    }

    pub fn tail_bound(&self) -> &Float {
        &self.tail_bound
    }

    /// Largest entry magnitude; used to scale orthogonality tolerances.
    pub fn max_norm(&self, ctx: &PrecisionContext) -> Float {
        let mut m = ctx.float(0);
        for ray in &self.entries {
            for row in ray {
                for e in row {
                    let a = c_abs(e);
                    if a > m {
                        m = a;
                    }
                }
            }
        }
        m
    }

    /// Multiply every entry of one ray by a constant. Orthogonality
    /// conditions are homogeneous per ray, so monic solves must not move.
    pub fn scale_ray(&mut self, ray: usize, factor: &Complex, ctx: &PrecisionContext) {
        for row in &mut self.entries[ray] {
            for e in row.iter_mut() {
                *e = cmul(e, factor, ctx);
            }
        }
    }

    pub fn to_json(&self, params: &ModelParams) -> serde_json::Value {
        let ctx = params.ctx();
        let mut entries = Vec::new();
        for (ell, ray) in self.entries.iter().enumerate() {
            for (j, row) in ray.iter().enumerate() {
                for (m, e) in row.iter().enumerate() {
                    let (re, im) = ctx.format_complex(e);
                    entries.push(serde_json::json!({
                        "ell": ell, "j": j, "m": m, "re": re, "im": im,
                    }));
                }
            }
        }
        serde_json::json!({
            "family": self.family.name(),
            "r": self.r,
            "params": params.params_json(),
            "jmax": self.jmax,
            "mmax": self.mmax,
            "tol_abs": ctx.format_float(&self.tol_abs),
            "tail_bound": ctx.format_float(&self.tail_bound),
            "entries": entries,
            "truncation_K": self.truncation_k,
        })
    }
}

enum Truncation<'a> {
    /// Stop each entry once its observed-ratio geometric tail bound with
    /// safety factor 4 drops below the tolerance.
    Certified { tol_abs: &'a Float },
    /// Unconditionally sum to the fixed index (diagnostic path used by the
    /// tail-certification tests).
    Fixed { k_last: u32 },
}

const K_HARD: u32 = 1_000_000;
const SAFETY: u32 = 4;

/// Build the moment table with certified absolute tails `<= tol_abs`.
pub fn compute_moment_table(
    params: &ModelParams,
    jmax: usize,
    mmax: usize,
    tol_abs: &Float,
) -> Result<MomentTable> {
    compute_table(params, jmax, mmax, Truncation::Certified { tol_abs })
}

/// Diagnostic: sum every entry to exactly `k_last` with no certification.
pub fn compute_moment_table_fixed_k(
    params: &ModelParams,
    jmax: usize,
    mmax: usize,
    k_last: u32,
) -> Result<MomentTable> {
    compute_table(params, jmax, mmax, Truncation::Fixed { k_last })
}

fn compute_table(
    params: &ModelParams,
    jmax: usize,
    mmax: usize,
    trunc: Truncation,
) -> Result<MomentTable> {
    let ctx = params.ctx().clone();
    let r = params.r();
    let k_min = 20
        + jmax as u32
        + mmax as u32
        + params.max_abs_beta().ceil().to_f64() as u32;
    let tol_abs = match &trunc {
        Truncation::Certified { tol_abs } => (*tol_abs).clone(),
        Truncation::Fixed { .. } => ctx.float(0),
    };

    let mut entries = Vec::with_capacity(r);
    let mut truncation_k = 0u32;
    let mut tail_bound = ctx.float(0);

    for ray in 0..r {
        let mut acc = vec![vec![ctx.complex_zero(); mmax + 1]; jmax + 1];
        let mut last_mag = vec![vec![ctx.float(0); mmax + 1]; jmax + 1];
        let mut done = vec![vec![false; mmax + 1]; jmax + 1];
        let mut open = (jmax + 1) * (mmax + 1);

        let mut weights = weight_sequence(params, ray, k_min + 16)?;
        let mut k = 0u32;
        loop {
            if k as usize >= weights.len() {
                let grown = weight_sequence(params, ray, weights.len() as u32 * 2)?;
                weights = grown;
            }
            let wk = &weights[k as usize];
            // (-k)_j and k^m factors, built incrementally (all real)
            let kf = ctx.float(k);
            let mut poch = ctx.float(1);
            let mut fac_j: Vec<Float> = Vec::with_capacity(jmax + 1);
            for j in 0..=jmax {
                fac_j.push(poch.clone());
                poch *= ctx.float(j as u32) - &kf;
            }
            let mut pw = ctx.float(1);
            let mut fac_m: Vec<Float> = Vec::with_capacity(mmax + 1);
            for _ in 0..=mmax {
                fac_m.push(pw.clone());
                pw *= &kf;
            }

            for j in 0..=jmax {
                for m in 0..=mmax {
                    if done[j][m] {
                        continue;
                    }
                    let fac = (&fac_j[j] * &fac_m[m]).complete(ctx.prec());
                    let term = (wk * &fac).complete(ctx.cprec());
                    acc[j][m] += &term;
                    let mag = c_abs(&term);
                    match &trunc {
                        Truncation::Certified { .. } => {
                            if k >= k_min && !last_mag[j][m].is_zero() && mag < last_mag[j][m] {
                                let q = (&mag / &last_mag[j][m]).complete(ctx.prec());
                                let one_minus_q = (1u32 - &q).complete(ctx.prec());
                                let bound =
                                    (&mag * &q).complete(ctx.prec()) / one_minus_q * SAFETY;
                                if bound <= tol_abs {
                                    done[j][m] = true;
                                    open -= 1;
                                    if k > truncation_k {
                                        truncation_k = k;
                                    }
                                    if bound > tail_bound {
                                        tail_bound = bound;
                                    }
                                }
                            }
                        }
                        Truncation::Fixed { k_last } => {
                            if k == *k_last {
                                done[j][m] = true;
                                open -= 1;
                            }
                        }
                    }
                    last_mag[j][m] = mag;
                }
            }
            if open == 0 {
                break;
            }
            k += 1;
            if k > K_HARD {
                return Err(Error::Convergence(format!(
                    "moment series on ray {ray} not certified after {K_HARD} terms \
                     (term ratio never dropped below 1)"
                )));
            }
        }
        entries.push(acc);
    }

    if let Truncation::Fixed { k_last } = trunc {
        truncation_k = k_last;
    }

    Ok(MomentTable {
        family: params.family(),
        r,
        jmax,
        mmax,
        tol_abs,
        entries,
        truncation_k,
        tail_bound,
    })
}

/// Default tolerance and shape for a table sized to handle solves,
/// residuals, and coefficient ratios up to total degree `max_total`.
pub fn moment_table_for(params: &ModelParams, max_total: u32) -> Result<MomentTable> {
    let ctx = params.ctx();
    let tol = ctx.pow10(-(ctx.digits() as i32) + 10);
    compute_moment_table(
        params,
        max_total as usize,
        max_total as usize + 2,
        &tol,
    )
}

/// First-order difference identity for the classical single-ray weights at
/// `r = 1`: `Δ(σρ)(x) = τ(x)ρ(x)` with `σ(x) = x` and the family's linear
/// `τ`. Returns the largest relative residual over `x = 0..=x_max`.
pub fn pearson_check(params: &ModelParams, x_max: u32, tol: &Float) -> Result<CheckResult> {
    if params.r() != 1 {
        return Err(Error::ParamDomain(
            "the Pearson difference identity applies to the single-ray case r = 1".into(),
        ));
    }
    let ctx = params.ctx();
    let tau = |x: u32| -> Complex {
        let xf = ctx.float(x);
        match params.payload() {
            FamilyParams::Charlier { a } => (&a[0] - &xf).complete(ctx.cprec()),
            FamilyParams::MeixnerFirst { c, beta } => {
                let cm1 = (&c[0] - 1u32).complete(ctx.cprec());
                cmul(&cm1, &ctx.complex(xf), ctx) + cmul(beta, &c[0], ctx)
            }
            FamilyParams::MeixnerSecond { beta, c } => {
                let cm1 = (c - 1u32).complete(ctx.cprec());
                cmul(&cm1, &ctx.complex(xf), ctx) + cmul(&beta[0], c, ctx)
            }
        }
    };
    let weights = weight_sequence(params, 0, x_max + 1)?;
    let mut worst = ctx.float(0);
    for x in 0..=x_max {
        let rho_x = &weights[x as usize];
        let rho_x1 = &weights[x as usize + 1];
        let sigma_rho_x1 = (rho_x1 * ctx.float(x + 1)).complete(ctx.cprec());
        let sigma_rho_x = (rho_x * ctx.float(x)).complete(ctx.cprec());
        let lhs = sigma_rho_x1 - sigma_rho_x;
        let rhs = cmul(&tau(x), rho_x, ctx);
        let resid = c_abs(&(lhs - rhs)) / c_abs(rho_x);
        if resid > worst {
            worst = resid;
        }
    }
    Ok(CheckResult::pass_fail("pearson_r1", worst, tol.clone()))
}

/// Rotation symmetry of the weights: `ρ_j(ω^q z) = ρ_j(z)` for every ray
/// and rotation power, since weights depend on `z` only through `z^r`.
pub fn omega_symmetry_check(
    params: &ModelParams,
    samples: &[Complex],
    tol: &Float,
) -> Result<CheckResult> {
    let ctx = params.ctx();
    let r = params.r();
    let mut worst = ctx.float(0);
    for z in samples {
        for ray in 0..r {
            let base = weight_at_z(params, ray, z)?;
            let base_mag = c_abs(&base);
            for q in 1..r {
                let omega_q = crate::precision::root_of_unity(q, r, ctx);
                let rotated = cmul(&omega_q, z, ctx);
                let val = weight_at_z(params, ray, &rotated)?;
                let resid = c_abs(&(val - &base)) / base_mag.clone().max(&ctx.float(1e-300));
                if resid > worst {
                    worst = resid;
                }
            }
        }
    }
    Ok(CheckResult::pass_fail(
        "omega_symmetry",
        worst,
        tol.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::c_dist;

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    fn meixner2_r1(beta: f64, c: f64, ctx: &PrecisionContext) -> ModelParams {
        ModelParams::meixner_second(vec![ctx.complex(beta)], ctx.complex(c), ctx.clone()).unwrap()
    }

    #[test]
    fn weight_examples() {
        let ctx = ctx();
        // Meixner2, beta = 1, c = 1/2, k = 3: Γ(4)/3! * (1/8) = 1/8
        let p = meixner2_r1(1.0, 0.5, &ctx);
        let w = weight_at(&p, 0, 3).unwrap();
        let dev = c_dist(&w, &ctx.complex(0.125), &ctx);
        assert!(dev < ctx.pow10(-45));

        // Charlier, a = 2, k = 2: 2^2/2! = 2
        let p = ModelParams::charlier(vec![ctx.complex(2)], ctx.clone()).unwrap();
        let w = weight_at(&p, 0, 2).unwrap();
        assert!(c_dist(&w, &ctx.complex(2), &ctx) < ctx.pow10(-45));

        // Meixner2, beta = 2, c = 1/2, k = 2: Γ(4)/2! * 1/4 = 3/4
        let p = meixner2_r1(2.0, 0.5, &ctx);
        let w = weight_at(&p, 0, 2).unwrap();
        assert!(c_dist(&w, &ctx.complex(0.75), &ctx) < ctx.pow10(-45));
    }

    #[test]
    fn weight_sequence_matches_pointwise_route() {
        let ctx = ctx();
        let params = ModelParams::meixner_second(
            vec![ctx.complex((0.6, 0.3)), ctx.complex((1.4, -0.2))],
            ctx.complex((0.3, 0.2)),
            ctx.clone(),
        )
        .unwrap();
        for ray in 0..2 {
            let seq = weight_sequence(&params, ray, 30).unwrap();
            for k in [0u32, 1, 7, 30] {
                let direct = weight_at(&params, ray, k).unwrap();
                let rel = c_dist(&seq[k as usize], &direct, &ctx) / c_abs(&direct);
                assert!(rel < ctx.epsilon() * 1000u32, "ray={ray} k={k} rel={rel}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        let ctx = ctx();
        let tol = ctx.pow10(-40);
        // geometric series: beta = 1, c = 1/2 => M[0][0][0] = 2
        let p = meixner2_r1(1.0, 0.5, &ctx);
        let t = compute_moment_table(&p, 1, 2, &tol).unwrap();
        assert!(c_dist(t.get(0, 0, 0), &ctx.complex(2), &ctx) < ctx.pow10(-38));
        // arithmetic-geometric: M[0][0][1] = sum k 2^-k = 2
        assert!(c_dist(t.get(0, 0, 1), &ctx.complex(2), &ctx) < ctx.pow10(-38));
        // binomial series: beta = 2, c = 1/2 => Γ(2)(1-c)^-2 = 4
        let p2 = meixner2_r1(2.0, 0.5, &ctx);
        let t2 = compute_moment_table(&p2, 0, 0, &tol).unwrap();
        assert!(c_dist(t2.get(0, 0, 0), &ctx.complex(4), &ctx) < ctx.pow10(-38));
    }

    #[test]
    fn pochhammer_expansion_identity() {
        // (-k)_{j+1} = (-k)_j (j - k) pushes through the sums:
        // M[j+1][m] = j*M[j][m] - M[j][m+1]
        let ctx = ctx();
        let tol = ctx.pow10(-40);
        let params = ModelParams::meixner_second(
            vec![ctx.complex((0.7, 0.0)), ctx.complex((1.9, 0.0))],
            ctx.complex(0.3),
            ctx.clone(),
        )
        .unwrap();
        let t = compute_moment_table(&params, 4, 5, &tol).unwrap();
        for ray in 0..2 {
            for j in 0..4usize {
                for m in 0..5usize {
                    let lhs = t.get(ray, j + 1, m);
                    let rhs = (t.get(ray, j, m) * ctx.float(j as u32)).complete(ctx.cprec())
                        - t.get(ray, j, m + 1);
                    let dev = c_dist(lhs, &rhs, &ctx);
                    let bound = (&tol * 10u32).complete(ctx.prec());
                    assert!(dev <= bound, "ray={ray} j={j} m={m} dev={dev}");
                }
            }
        }
    }

    #[test]
    fn doubling_certified_truncation() {
        let ctx = ctx();
        let tol = ctx.pow10(-40);
        let params = ModelParams::meixner_second(
            vec![ctx.complex((0.6, 0.3)), ctx.complex((1.4, -0.2)), ctx.complex((2.3, 0.5))],
            ctx.complex((0.3, 0.2)),
            ctx.clone(),
        )
        .unwrap();
        let certified = compute_moment_table(&params, 3, 4, &tol).unwrap();
        assert!(certified.tail_bound() < &tol);
        let doubled =
            compute_moment_table_fixed_k(&params, 3, 4, certified.truncation_k() * 2).unwrap();
        for ray in 0..3 {
            for j in 0..=3usize {
                for m in 0..=4usize {
                    let dev = c_dist(certified.get(ray, j, m), doubled.get(ray, j, m), &ctx);
                    assert!(dev <= tol, "ray={ray} j={j} m={m} dev={dev}");
                }
            }
        }
    }

    #[test]
    fn charlier_moments_factorial_decay() {
        let ctx = ctx();
        let tol = ctx.pow10(-40);
        let params =
            ModelParams::charlier(vec![ctx.complex(1), ctx.complex(2)], ctx.clone()).unwrap();
        let t = compute_moment_table(&params, 2, 3, &tol).unwrap();
        // M[0][0][0] = e for a = 1
        let e = ctx.float(1).exp();
        assert!(c_dist(t.get(0, 0, 0), &ctx.complex(e), &ctx) < ctx.pow10(-38));
    }

    #[test]
    fn pearson_identity_classical_weights() {
        let ctx = ctx();
        let tol = ctx.epsilon() * 1000u32;
        // Charlier a = 1
        let p = ModelParams::charlier(vec![ctx.complex(1)], ctx.clone()).unwrap();
        let r = pearson_check(&p, 20, &tol).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Pass, "{:?}", r.residual);
        // Meixner beta = 1, c = 1/2
        let p = meixner2_r1(1.0, 0.5, &ctx);
        let r = pearson_check(&p, 20, &tol).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Pass);
        // identically for complex parameters
        let p = ModelParams::meixner_second(
            vec![ctx.complex((3.0, 0.0))],
            ctx.complex((0.3, 0.2)),
            ctx.clone(),
        )
        .unwrap();
        let r = pearson_check(&p, 20, &tol).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Pass);
    }

    #[test]
    fn omega_symmetry_across_families() {
        let ctx = ctx();
        let tol = ctx.epsilon() * 1000u32;
        let samples = vec![
            ctx.complex((1.5, 0.0)),
            ctx.complex((0.8, 0.4)),
            ctx.complex((-0.3, 1.1)),
        ];
        for r in [2usize, 3, 4] {
            let betas: Vec<Complex> = (0..r).map(|l| ctx.complex((0.6 + l as f64, 0.2))).collect();
            let params =
                ModelParams::meixner_second(betas, ctx.complex((0.3, 0.1)), ctx.clone()).unwrap();
            let res = omega_symmetry_check(&params, &samples, &tol).unwrap();
            assert_eq!(res.verdict, crate::report::Verdict::Pass, "r={r}");
        }
    }

    #[test]
    fn scale_ray_rewrites_entries() {
        let ctx = ctx();
        let tol = ctx.pow10(-40);
        let params = meixner2_r1(1.0, 0.5, &ctx);
        let mut t = compute_moment_table(&params, 1, 1, &tol).unwrap();
        let factor = ctx.complex((3, 1));
        let before = t.get(0, 0, 0).clone();
        t.scale_ray(0, &factor, &ctx);
        let after = t.get(0, 0, 0).clone();
        assert!(c_dist(&after, &cmul(&before, &factor, &ctx), &ctx) < ctx.epsilon());
    }
}
