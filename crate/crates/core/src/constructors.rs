//! Closed-form constructors: first-order raising operators and their
//! cascades, the explicit multi-sum series, backward-difference grid values,
//! and the terminating hypergeometric forms at `r = 1`.
//!
//! All constructors work on polynomials in `w = z^r` and produce monic
//! output of degree `|n|`; agreement between them (and with the moment
//! oracle) is the engine's central cross-check.

use crate::error::{Error, Result};
use crate::gamma::{binomial, gamma, pochhammer};
use crate::measures::{moment_table_for, MomentTable};
use crate::multi_index::MultiIndex;
use crate::oracle::solve_monic;
use crate::params::{FamilyParams, ModelParams};
use crate::poly::{newton_interpolate, PolyW};
use crate::precision::{cdiv, cmul, PrecisionContext};
use crate::report::CheckResult;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

/// Tolerance for the monicity assertion on constructor output.
const MONIC_REL_TOL: f64 = 1e-5;

/// One first-order raising step in closed polynomial form.
///
/// Meixner-type (shared or per-ray `c`, source parameter `β`):
/// `Q(w) ↦ (c/(c-1)) ((w+β-1) Q(w) - (w/c) Q(w-1))`.
/// Charlier-type: `Q(w) ↦ -a Q(w) + w Q(w-1)`.
///
/// Both raise the degree by exactly one and send monic input to monic
/// output (up to one rounding, removed by the cascade's final
/// normalization).
#[derive(Clone, Debug)]
pub enum RaisingOp {
    Meixner { c: Complex, beta_src: Complex },
    Charlier { a: Complex },
}

impl RaisingOp {
    pub fn meixner(c: Complex, beta_src: Complex) -> Self {
        RaisingOp::Meixner { c, beta_src }
    }

    pub fn charlier(a: Complex) -> Self {
        RaisingOp::Charlier { a }
    }

    /// Apply the operator to an arbitrary polynomial (linear action; no
    /// re-normalization).
    pub fn apply(&self, p: &PolyW, ctx: &PrecisionContext) -> PolyW {
        let minus_one = ctx.complex((-1, 0));
        let shifted = p.shift_arg(&minus_one, ctx); // Q(w-1)
        match self {
            RaisingOp::Meixner { c, beta_src } => {
                let c_minus_1 = (c - 1u32).complete(ctx.cprec());
                let front = cdiv(c, &c_minus_1, ctx);
                let lin = PolyW::linear((beta_src - 1u32).complete(ctx.cprec()), ctx);
                let main = p.mul(&lin, ctx).scale(&front, ctx);
                let tail = shifted
                    .mul_w(ctx)
                    .scale(&cdiv(&ctx.complex_one(), &c_minus_1, ctx), ctx);
                main.sub(&tail, ctx)
            }
            RaisingOp::Charlier { a } => {
                let main = p.scale(&(-a.clone()), ctx);
                main.add(&shifted.mul_w(ctx), ctx)
            }
        }
    }
}

/// Build the monic polynomial at `n` by composing raising operators ray by
/// ray, starting from the constant 1. `order` selects the ray permutation
/// (default: increasing ray index); commuting the operators must not change
/// the result.
pub fn raising_cascade(
    params: &ModelParams,
    n: &MultiIndex,
    order: Option<&[usize]>,
) -> Result<PolyW> {
    let ctx = params.ctx();
    let r = params.r();
    let default_order: Vec<usize> = (0..r).collect();
    let order = match order {
        Some(o) => {
            let mut seen = vec![false; r];
            if o.len() != r || o.iter().any(|&ray| ray >= r || std::mem::replace(&mut seen[ray], true)) {
                return Err(Error::ParamDomain(format!(
                    "cascade order {o:?} is not a permutation of 0..{r}"
                )));
            }
            o.to_vec()
        }
        None => default_order,
    };

    let mut p = PolyW::one(ctx);
    match params.payload() {
        FamilyParams::MeixnerSecond { beta, c } => {
            for &ray in &order {
                for t in (1..=n.get(ray)).rev() {
                    let beta_src = (&beta[ray] + ctx.float(t)).complete(ctx.cprec());
                    p = RaisingOp::meixner(c.clone(), beta_src).apply(&p, ctx);
                }
            }
        }
        FamilyParams::MeixnerFirst { c, beta } => {
            // the shared β descends one step per application, whichever ray
            // takes the step
            let total = n.total();
            let mut applied = 0u32;
            for &ray in &order {
                for _ in 0..n.get(ray) {
                    let beta_src = (beta + ctx.float(total - applied)).complete(ctx.cprec());
                    p = RaisingOp::meixner(c[ray].clone(), beta_src).apply(&p, ctx);
                    applied += 1;
                }
            }
        }
        FamilyParams::Charlier { a } => {
            for &ray in &order {
                for _ in 0..n.get(ray) {
                    p = RaisingOp::charlier(a[ray].clone()).apply(&p, ctx);
                }
            }
        }
    }
    if n.total() == 0 {
        return Ok(p);
    }
    p.into_monic_checked(MONIC_REL_TOL, ctx)
}

/// Explicit multi-sum series for the Meixner second-kind family:
///
/// `(c/(c-1))^{|n|} Σ_k ∏_ℓ C(n_ℓ,k_ℓ) · (-w)_{|k|}/c^{|k|}
///   · ∏_m (w + β_m - Σ_{j<m} k_j)_{n_m - k_m}`.
pub fn explicit_series(params: &ModelParams, n: &MultiIndex) -> Result<PolyW> {
    let ctx = params.ctx();
    let (beta, c) = match params.payload() {
        FamilyParams::MeixnerSecond { beta, c } => (beta, c),
        _ => {
            return Err(Error::ParamDomain(
                "the explicit series applies to the meixner2 family".into(),
            ))
        }
    };
    let r = params.r();
    let total = n.total() as usize;

    // falling factors (-w)_q for q = 0..=|n|
    let mut falling = Vec::with_capacity(total + 1);
    falling.push(PolyW::one(ctx));
    for q in 0..total {
        let lin = PolyW::from_coeffs(vec![ctx.complex(q as u32), -ctx.complex_one()]);
        falling.push(falling[q].mul(&lin, ctx));
    }
    let inv_c = cdiv(&ctx.complex_one(), c, ctx);

    let mut acc = PolyW::zero();
    let mut kvec = vec![0u32; r];
    loop {
        let ksum: u32 = kvec.iter().sum();
        // scalar ∏ C(n_ℓ, k_ℓ) / c^{|k|}
        let mut scalar = ctx.complex_one();
        for ray in 0..r {
            scalar = cmul(
                &scalar,
                &ctx.complex(binomial(n.get(ray), kvec[ray])),
                ctx,
            );
        }
        scalar = cmul(&scalar, &inv_c.clone().pow(ksum), ctx);

        let mut term = falling[ksum as usize].scale(&scalar, ctx);
        let mut before = 0u32; // Σ_{j<m} k_j
        for m in 0..r {
            let count = n.get(m) - kvec[m];
            let shift = (&beta[m] - ctx.float(before)).complete(ctx.cprec());
            term = term.mul(&rising_poly(&shift, count, ctx), ctx);
            before += kvec[m];
        }
        acc = acc.add(&term, ctx);

        // odometer
        let mut pos = 0;
        loop {
            if pos == r {
                let c_minus_1 = (c - 1u32).complete(ctx.cprec());
                let prefactor = cdiv(c, &c_minus_1, ctx).pow(n.total());
                let out = acc.scale(&prefactor, ctx);
                if n.total() == 0 {
                    return Ok(out);
                }
                return out.into_monic_checked(MONIC_REL_TOL, ctx);
            }
            kvec[pos] += 1;
            if kvec[pos] <= n.get(pos) {
                break;
            }
            kvec[pos] = 0;
            pos += 1;
        }
    }
}

/// `(w + shift)(w + shift + 1) ⋯ (w + shift + count - 1)` as a polynomial.
fn rising_poly(shift: &Complex, count: u32, ctx: &PrecisionContext) -> PolyW {
    let mut p = PolyW::one(ctx);
    for s in 0..count {
        p = p.mul(
            &PolyW::linear((shift + ctx.float(s)).complete(ctx.cprec()), ctx),
            ctx,
        );
    }
    p
}

/// Values of the polynomial at the lattice points `w = 0..=kmax`, computed
/// through the weight-conjugated backward-difference product on the grid
/// (reciprocal-gamma zeros close the stencil left of `k = 0`).
pub fn rodrigues_grid_values(
    params: &ModelParams,
    n: &MultiIndex,
    kmax: u32,
) -> Result<Vec<Complex>> {
    let ctx = params.ctx();
    if (kmax as usize) < n.total() as usize {
        return Err(Error::ParamDomain(format!(
            "rodrigues grid needs kmax >= |n| (kmax = {kmax}, |n| = {})",
            n.total()
        )));
    }
    let r = params.r();
    let len = kmax as usize + 1;
    let gamma_dom =
        |z: &Complex| gamma(z, ctx).map_err(|e| Error::ParamDomain(format!("gamma ladder: {e}")));

    // factorials k! for the conjugating prefactors
    let mut factorial = Vec::with_capacity(len);
    factorial.push(ctx.float(1));
    for k in 1..len {
        factorial.push(ctx.float(k as u32) * &factorial[k - 1]);
    }

    // innermost function of the product, f_0
    let mut f: Vec<Complex> = match params.payload() {
        FamilyParams::MeixnerSecond { c, .. } => {
            let mut v = Vec::with_capacity(len);
            let mut cur = ctx.complex_one();
            for k in 0..len {
                if k > 0 {
                    cur = cdiv(&cmul(&cur, c, ctx), &ctx.complex(k as u32), ctx);
                }
                v.push(cur.clone());
            }
            v
        }
        FamilyParams::MeixnerFirst { beta, .. } => {
            let shift = (beta + ctx.float(n.total())).complete(ctx.cprec());
            let mut v = Vec::with_capacity(len);
            let mut cur = gamma_dom(&shift)?;
            for k in 0..len {
                if k > 0 {
                    let rise = (&shift + ctx.float(k as u32 - 1)).complete(ctx.cprec());
                    cur = cdiv(&cmul(&cur, &rise, ctx), &ctx.complex(k as u32), ctx);
                }
                v.push(cur.clone());
            }
            v
        }
        FamilyParams::Charlier { .. } => (0..len)
            .map(|k| cdiv(&ctx.complex_one(), &ctx.complex(factorial[k].clone()), ctx))
            .collect(),
    };

    // one backward-difference block per ray
    for ray in 0..r {
        let nj = n.get(ray);
        let mut next = Vec::with_capacity(len);
        match params.payload() {
            FamilyParams::MeixnerSecond { beta, .. } => {
                // Γ(k + β_ray + n_ray) and 1/Γ(k + β_ray) ladders
                let top_base = (&beta[ray] + ctx.float(nj)).complete(ctx.cprec());
                let mut top = Vec::with_capacity(len);
                let mut cur = gamma_dom(&top_base)?;
                for k in 0..len {
                    if k > 0 {
                        cur = cmul(
                            &cur,
                            &(&top_base + ctx.float(k as u32 - 1)).complete(ctx.cprec()),
                            ctx,
                        );
                    }
                    top.push(cur.clone());
                }
                let mut bottom = Vec::with_capacity(len);
                let mut cur = gamma_dom(&beta[ray])?;
                for k in 0..len {
                    if k > 0 {
                        cur = cmul(
                            &cur,
                            &(&beta[ray] + ctx.float(k as u32 - 1)).complete(ctx.cprec()),
                            ctx,
                        );
                    }
                    bottom.push(cur.clone());
                }
                for k in 0..len {
                    let mut acc = ctx.complex_zero();
                    for s in 0..=nj.min(k as u32) {
                        let idx = k - s as usize;
                        let sign = if s % 2 == 0 { 1i32 } else { -1i32 };
                        let cf = cmul(
                            &ctx.complex(binomial(nj, s)),
                            &ctx.complex(sign),
                            ctx,
                        );
                        let contrib = cmul(&cmul(&cf, &top[idx], ctx), &f[idx], ctx);
                        acc += contrib;
                    }
                    next.push(cdiv(&acc, &bottom[k], ctx));
                }
            }
            FamilyParams::MeixnerFirst { c, .. } => {
                let inv_c = cdiv(&ctx.complex_one(), &c[ray], ctx);
                for k in 0..len {
                    let mut acc = ctx.complex_zero();
                    let mut pw = ctx.complex_one();
                    for s in 0..=nj.min(k as u32) {
                        let idx = k - s as usize;
                        let sign = if s % 2 == 0 { 1i32 } else { -1i32 };
                        let cf = cmul(&ctx.complex(binomial(nj, s)), &ctx.complex(sign), ctx);
                        acc += cmul(&cmul(&cf, &pw, ctx), &f[idx], ctx);
                        pw = cmul(&pw, &inv_c, ctx);
                    }
                    next.push(acc);
                }
            }
            FamilyParams::Charlier { a } => {
                let inv_a = cdiv(&ctx.complex_one(), &a[ray], ctx);
                for k in 0..len {
                    let mut acc = ctx.complex_zero();
                    let mut pw = ctx.complex_one();
                    for s in 0..=nj.min(k as u32) {
                        let idx = k - s as usize;
                        let sign = if s % 2 == 0 { 1i32 } else { -1i32 };
                        let cf = cmul(&ctx.complex(binomial(nj, s)), &ctx.complex(sign), ctx);
                        acc += cmul(&cmul(&cf, &pw, ctx), &f[idx], ctx);
                        pw = cmul(&pw, &inv_a, ctx);
                    }
                    next.push(acc);
                }
            }
        }
        f = next;
    }

    // outer prefactor
    let mut out = Vec::with_capacity(len);
    match params.payload() {
        FamilyParams::MeixnerSecond { c, .. } => {
            let c_minus_1 = (c - 1u32).complete(ctx.cprec());
            let front = cdiv(c, &c_minus_1, ctx).pow(n.total());
            let inv_c = cdiv(&ctx.complex_one(), c, ctx);
            let mut inv_ck = ctx.complex_one();
            for k in 0..len {
                if k > 0 {
                    inv_ck = cmul(&inv_ck, &inv_c, ctx);
                }
                let v = cmul(&cmul(&front, &ctx.complex(factorial[k].clone()), ctx), &inv_ck, ctx);
                out.push(cmul(&v, &f[k], ctx));
            }
        }
        FamilyParams::MeixnerFirst { c, beta } => {
            let mut front = ctx.complex_one();
            for ray in 0..r {
                let cm1 = (&c[ray] - 1u32).complete(ctx.cprec());
                front = cmul(&front, &cdiv(&c[ray], &cm1, ctx).pow(n.get(ray)), ctx);
            }
            let mut gb = gamma_dom(beta)?; // Γ(k + β) ladder
            for k in 0..len {
                if k > 0 {
                    gb = cmul(&gb, &(beta + ctx.float(k as u32 - 1)).complete(ctx.cprec()), ctx);
                }
                let v = cdiv(&ctx.complex(factorial[k].clone()), &gb, ctx);
                out.push(cmul(&cmul(&front, &v, ctx), &f[k], ctx));
            }
        }
        FamilyParams::Charlier { a } => {
            let mut front = ctx.complex_one();
            for ray in 0..r {
                front = cmul(&front, &(-a[ray].clone()).pow(n.get(ray)), ctx);
            }
            for k in 0..len {
                let v = cmul(&front, &ctx.complex(factorial[k].clone()), ctx);
                out.push(cmul(&v, &f[k], ctx));
            }
        }
    }
    Ok(out)
}

/// Interpolate the grid values at `w = 0..=|n|` back to coefficients.
pub fn rodrigues_polynomial(params: &ModelParams, n: &MultiIndex) -> Result<PolyW> {
    let ctx = params.ctx();
    let total = n.total();
    let values = rodrigues_grid_values(params, n, total)?;
    let nodes: Vec<(i64, Complex)> = values
        .into_iter()
        .enumerate()
        .map(|(k, v)| (k as i64, v))
        .collect();
    newton_interpolate(&nodes, ctx)
}

/// Terminating hypergeometric expansions of the classical single-ray
/// polynomials at `r = 1`: Charlier `(-a)^n · 2F0(-n,-w;;-1/a)` and Meixner
/// `(c/(c-1))^n (β)_n · 2F1(-n,-w;β;1-1/c)`.
pub fn classical_hypergeometric(params: &ModelParams, n: u32) -> Result<PolyW> {
    let ctx = params.ctx();
    if params.r() != 1 {
        return Err(Error::ParamDomain(
            "hypergeometric closed forms apply to the single-ray case r = 1".into(),
        ));
    }
    let mut falling = PolyW::one(ctx); // (-w)_j
    let mut acc = PolyW::zero();
    match params.payload() {
        FamilyParams::Charlier { a } => {
            let z = cdiv(&ctx.complex((-1, 0)), &a[0], ctx);
            let mut s = ctx.complex_one(); // (-n)_j / j! * z^j
            for j in 0..=n {
                acc = acc.add(&falling.scale(&s, ctx), ctx);
                if j < n {
                    let up = cmul(&ctx.complex(j as i64 - n as i64), &z, ctx);
                    s = cdiv(&cmul(&s, &up, ctx), &ctx.complex(j + 1), ctx);
                    let lin = PolyW::from_coeffs(vec![ctx.complex(j), -ctx.complex_one()]);
                    falling = falling.mul(&lin, ctx);
                }
            }
            let front = (-a[0].clone()).pow(n);
            acc.scale(&front, ctx).into_monic_checked(MONIC_REL_TOL, ctx)
        }
        FamilyParams::MeixnerFirst { c, beta } => {
            meixner_2f1(&c[0], beta, n, &mut acc, &mut falling, ctx)
        }
        FamilyParams::MeixnerSecond { beta, c } => {
            meixner_2f1(c, &beta[0], n, &mut acc, &mut falling, ctx)
        }
    }
}

fn meixner_2f1(
    c: &Complex,
    beta: &Complex,
    n: u32,
    acc: &mut PolyW,
    falling: &mut PolyW,
    ctx: &PrecisionContext,
) -> Result<PolyW> {
    let one = ctx.complex_one();
    let z = ctx.complex_one() - cdiv(&one, c, ctx); // 1 - 1/c
    let mut s = ctx.complex_one(); // (-n)_j / ((β)_j j!) * z^j
    for j in 0..=n {
        *acc = acc.add(&falling.scale(&s, ctx), ctx);
        if j < n {
            let num = cmul(&ctx.complex(j as i64 - n as i64), &z, ctx);
            let den = cmul(
                &(beta + ctx.float(j)).complete(ctx.cprec()),
                &ctx.complex(j + 1),
                ctx,
            );
            s = cdiv(&cmul(&s, &num, ctx), &den, ctx);
            let lin = PolyW::from_coeffs(vec![ctx.complex(j), -ctx.complex_one()]);
            *falling = falling.mul(&lin, ctx);
        }
    }
    let cm1 = (c - 1u32).complete(ctx.cprec());
    let front = cmul(&cdiv(c, &cm1, ctx).pow(n), &pochhammer(beta, n, ctx), ctx);
    if n == 0 {
        return Ok(acc.scale(&front, ctx));
    }
    acc.scale(&front, ctx).into_monic_checked(MONIC_REL_TOL, ctx)
}

/// Mixed-argument three-term identity for the second-kind family: the
/// β-lowered polynomial at `n + e_ray` equals
/// `(c/(c-1)) ((w + β_ray - 1) M_n(w) - (w/c) M_n(w-1))`.
///
/// The left side is solved from the lowered weights' moments when those
/// stay inside the parameter domain, falling back to the operator cascade;
/// the right side applies the raising step to `M_n`.
pub fn remark_identity_check(
    params: &ModelParams,
    n: &MultiIndex,
    ray: usize,
    lowered_moments: Option<&MomentTable>,
    tol: &Float,
) -> Result<CheckResult> {
    let ctx = params.ctx();
    let c = params.meixner2_c()?.clone();
    let beta_src = params.meixner2_beta(ray)?.clone();
    let base = raising_cascade(params, n, None)?;
    let rhs = RaisingOp::meixner(c, beta_src)
        .apply(&base, ctx)
        .into_monic_checked(MONIC_REL_TOL, ctx)?;

    let target = n.raised(ray);
    let (lhs, route) = match params.with_beta_shifted(ray, -1) {
        Ok(lowered) => {
            let owned;
            let table = match lowered_moments {
                Some(t) => t,
                None => {
                    owned = moment_table_for(&lowered, target.total())?;
                    &owned
                }
            };
            match solve_monic(&lowered, &target, table) {
                Ok((p, _)) => (p, "oracle"),
                Err(_) => (raising_cascade(&lowered, &target, None)?, "cascade"),
            }
        }
        Err(_) => {
            return Ok(CheckResult::not_applicable(
                format!("remark_identity n={n} ray={ray}"),
                "lowered beta leaves the parameter domain",
            ))
        }
    };
    let dev = PolyW::rel_deviation(&lhs, &rhs, ctx);
    Ok(
        CheckResult::pass_fail(format!("remark_identity n={n} ray={ray}"), dev, tol.clone())
            .with_detail(format!("lhs route: {route}")),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{c_abs, c_dist};

    fn ctx() -> PrecisionContext {
        PrecisionContext::standard()
    }

    fn meixner2(betas: &[f64], c: f64, ctx: &PrecisionContext) -> ModelParams {
        ModelParams::meixner_second(
            betas.iter().map(|&b| ctx.complex(b)).collect(),
            ctx.complex(c),
            ctx.clone(),
        )
        .unwrap()
    }

    #[test]
    fn raising_on_constant_meixner() {
        // Ψ^β(1) = w + c(β-1)/(c-1); at β = 2, c = 1/2 this is w - 1
        let ctx = ctx();
        let op = RaisingOp::meixner(ctx.complex(0.5), ctx.complex(2));
        let p = op.apply(&PolyW::one(&ctx), &ctx);
        assert_eq!(p.degree(), Some(1));
        assert!(c_dist(&p.coeff(0, &ctx), &ctx.complex(-1), &ctx) < ctx.epsilon());
        assert!(c_dist(&p.coeff(1, &ctx), &ctx.complex_one(), &ctx) < ctx.epsilon());
    }

    #[test]
    fn raising_on_constant_charlier() {
        // Charlier step on 1 with a = 2: -a + w = w - 2
        let ctx = ctx();
        let op = RaisingOp::charlier(ctx.complex(2));
        let p = op.apply(&PolyW::one(&ctx), &ctx);
        assert!(c_dist(&p.coeff(0, &ctx), &ctx.complex(-2), &ctx) < ctx.epsilon());
        assert!(c_dist(&p.coeff(1, &ctx), &ctx.complex_one(), &ctx) < ctx.epsilon());
    }

    #[test]
    fn raising_degree_and_monicity() {
        let ctx = ctx();
        let op = RaisingOp::meixner(ctx.complex((0.3, 0.2)), ctx.complex((1.7, -0.4)));
        let mut p = PolyW::one(&ctx);
        for expected_deg in 1..=6usize {
            p = op.apply(&p, &ctx);
            assert_eq!(p.degree(), Some(expected_deg));
            let lead_dev = c_abs(&(p.leading().unwrap().clone() - 1u32));
            assert!(lead_dev < ctx.epsilon() * 100u32);
        }
    }

    #[test]
    fn cascade_matches_hand_computation() {
        // r=2, β=(1,2), c=1/2: P_(1,1) = w^2 - 5w + 2
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        let p = raising_cascade(&params, &MultiIndex::new(vec![1, 1]), None).unwrap();
        let expect = PolyW::from_coeffs(vec![
            ctx.complex(2),
            ctx.complex(-5),
            ctx.complex_one(),
        ]);
        assert!(PolyW::rel_deviation(&p, &expect, &ctx) < ctx.pow10(-45));
    }

    #[test]
    fn cascade_order_invariance() {
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        let n = MultiIndex::new(vec![1, 1]);
        let p01 = raising_cascade(&params, &n, Some(&[0, 1])).unwrap();
        let p10 = raising_cascade(&params, &n, Some(&[1, 0])).unwrap();
        assert!(PolyW::rel_deviation(&p01, &p10, &ctx) < ctx.pow10(-45));
        assert!(raising_cascade(&params, &n, Some(&[0, 0])).is_err());
    }

    #[test]
    fn cascade_order_invariance_meixner_first() {
        let ctx = ctx();
        let params = ModelParams::meixner_first(
            vec![ctx.complex(0.5), ctx.complex_one() / 3u32],
            ctx.complex(1),
            ctx.clone(),
        )
        .unwrap();
        let n = MultiIndex::new(vec![1, 1]);
        let p01 = raising_cascade(&params, &n, Some(&[0, 1])).unwrap();
        let p10 = raising_cascade(&params, &n, Some(&[1, 0])).unwrap();
        assert!(PolyW::rel_deviation(&p01, &p10, &ctx) < ctx.pow10(-45));
        // hand expansion for β=1, c=(1/2, 1/3): w^2 - 4w + 1
        let expect = PolyW::from_coeffs(vec![
            ctx.complex_one(),
            ctx.complex(-4),
            ctx.complex_one(),
        ]);
        assert!(PolyW::rel_deviation(&p01, &expect, &ctx) < ctx.pow10(-45));
    }

    #[test]
    fn operator_commutativity_meixner_second() {
        let ctx = ctx();
        let c = ctx.complex((0.3, 0.2));
        let bi = ctx.complex((1.7, 0.5));
        let bj = ctx.complex((0.4, -0.9));
        let p = PolyW::from_coeffs(vec![
            ctx.complex((1.0, -0.5)),
            ctx.complex((0.0, 2.0)),
            ctx.complex((-3.0, 0.25)),
            ctx.complex((0.5, 0.5)),
        ]);
        let oi = RaisingOp::meixner(c.clone(), bi);
        let oj = RaisingOp::meixner(c, bj);
        let ab = oi.apply(&oj.apply(&p, &ctx), &ctx);
        let ba = oj.apply(&oi.apply(&p, &ctx), &ctx);
        let dev = PolyW::rel_deviation(&ab, &ba, &ctx);
        assert!(dev < ctx.epsilon() * 1000u32, "dev = {dev}");
    }

    #[test]
    fn series_base_cases() {
        let ctx = ctx();
        let params = meixner2(&[1.0], 0.5, &ctx);
        let p0 = explicit_series(&params, &MultiIndex::zeros(1)).unwrap();
        assert_eq!(p0.degree(), Some(0));
        // r=1, n=1, β=1, c=1/2 -> w - 1
        let p1 = explicit_series(&params, &MultiIndex::new(vec![1])).unwrap();
        assert!(c_dist(&p1.coeff(0, &ctx), &ctx.complex(-1), &ctx) < ctx.pow10(-45));
    }

    #[test]
    fn series_equals_cascade_two_rays() {
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        for n in [
            MultiIndex::new(vec![1, 1]),
            MultiIndex::new(vec![2, 1]),
            MultiIndex::new(vec![2, 3]),
        ] {
            let s = explicit_series(&params, &n).unwrap();
            let c = raising_cascade(&params, &n, None).unwrap();
            let dev = PolyW::rel_deviation(&s, &c, &ctx);
            assert!(dev < ctx.pow10(-42), "n={n} dev={dev}");
        }
    }

    #[test]
    fn grid_values_linear_case() {
        // r=1, n=1, β=1, c=1/2: values at w = 0,1,2 are -1, 0, 1
        let ctx = ctx();
        let params = meixner2(&[1.0], 0.5, &ctx);
        let vals = rodrigues_grid_values(&params, &MultiIndex::new(vec![1]), 2).unwrap();
        assert!(c_dist(&vals[0], &ctx.complex(-1), &ctx) < ctx.pow10(-45));
        assert!(c_abs(&vals[1]) < ctx.pow10(-45));
        assert!(c_dist(&vals[2], &ctx.complex_one(), &ctx) < ctx.pow10(-45));
    }

    #[test]
    fn grid_needs_kmax_at_least_total() {
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        let err = rodrigues_grid_values(&params, &MultiIndex::new(vec![2, 1]), 2);
        assert!(matches!(err, Err(Error::ParamDomain(_))));
    }

    #[test]
    fn grid_zero_index_all_ones() {
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        let vals = rodrigues_grid_values(&params, &MultiIndex::zeros(2), 4).unwrap();
        for v in vals {
            assert!(c_dist(&v, &ctx.complex_one(), &ctx) < ctx.pow10(-45));
        }
    }

    #[test]
    fn grid_interpolation_matches_series() {
        let ctx = ctx();
        let params = meixner2(&[1.0, 2.0], 0.5, &ctx);
        let n = MultiIndex::new(vec![2, 1]);
        let p = rodrigues_polynomial(&params, &n).unwrap();
        let s = explicit_series(&params, &n).unwrap();
        let dev = PolyW::rel_deviation(&p, &s, &ctx);
        assert!(dev < ctx.pow10(-40), "dev={dev}");
    }

    #[test]
    fn grid_works_for_charlier_and_meixner_first() {
        let ctx = ctx();
        let charlier =
            ModelParams::charlier(vec![ctx.complex(1), ctx.complex(2)], ctx.clone()).unwrap();
        let p = rodrigues_polynomial(&charlier, &MultiIndex::new(vec![1, 1])).unwrap();
        let q = raising_cascade(&charlier, &MultiIndex::new(vec![1, 1]), None).unwrap();
        assert!(PolyW::rel_deviation(&p, &q, &ctx) < ctx.pow10(-42));

        let m1 = ModelParams::meixner_first(
            vec![ctx.complex(0.5), ctx.complex_one() / 3u32],
            ctx.complex(1),
            ctx.clone(),
        )
        .unwrap();
        let p = rodrigues_polynomial(&m1, &MultiIndex::new(vec![1, 1])).unwrap();
        let q = raising_cascade(&m1, &MultiIndex::new(vec![1, 1]), None).unwrap();
        assert!(PolyW::rel_deviation(&p, &q, &ctx) < ctx.pow10(-42));
    }

    #[test]
    fn hypergeometric_examples() {
        let ctx = ctx();
        // Charlier n=1, a=2 -> w - 2
        let charlier = ModelParams::charlier(vec![ctx.complex(2)], ctx.clone()).unwrap();
        let p = classical_hypergeometric(&charlier, 1).unwrap();
        assert!(c_dist(&p.coeff(0, &ctx), &ctx.complex(-2), &ctx) < ctx.pow10(-45));

        // Meixner n=1, β=1, c=1/2 -> w - 1
        let meixner = meixner2(&[1.0], 0.5, &ctx);
        let p = classical_hypergeometric(&meixner, 1).unwrap();
        assert!(c_dist(&p.coeff(0, &ctx), &ctx.complex(-1), &ctx) < ctx.pow10(-45));

        // Meixner n=3, β=2, c=1/3 equals the cascade at r=1
        let meixner = meixner2(&[2.0], 1.0 / 3.0, &ctx);
        let p = classical_hypergeometric(&meixner, 3).unwrap();
        let q = raising_cascade(&meixner, &MultiIndex::new(vec![3]), None).unwrap();
        assert!(PolyW::rel_deviation(&p, &q, &ctx) < ctx.pow10(-42));
    }

    #[test]
    fn remark_identity_small_cases() {
        let ctx = ctx();
        let tol = ctx.pow10(-25);
        // n = 0: both sides are w + c(β_ray - 1)/(c - 1)
        let params = meixner2(&[2.0, 3.5], 0.5, &ctx);
        let res =
            remark_identity_check(&params, &MultiIndex::zeros(2), 0, None, &tol).unwrap();
        assert_eq!(res.verdict, crate::report::Verdict::Pass, "{res:?}");

        // r=1, n=(1), β=2, c=1/2
        let params = meixner2(&[2.0], 0.5, &ctx);
        let res =
            remark_identity_check(&params, &MultiIndex::new(vec![1]), 0, None, &tol).unwrap();
        assert_eq!(res.verdict, crate::report::Verdict::Pass, "{res:?}");

        // r=2, n=(1,1), ray 0
        let params = meixner2(&[2.0, 3.5], 0.5, &ctx);
        let res =
            remark_identity_check(&params, &MultiIndex::new(vec![1, 1]), 0, None, &tol).unwrap();
        assert_eq!(res.verdict, crate::report::Verdict::Pass, "{res:?}");
    }
}
