//! Brute-force ground truth from first principles: assemble the
//! orthogonality conditions as a linear system over the moment table and
//! solve for the monic coefficients; extract recurrence coefficients from
//! coefficient differences and lattice-sum ratios.

use crate::error::{Error, Result};
use crate::measures::MomentTable;
use crate::multi_index::MultiIndex;
use crate::params::ModelParams;
use crate::poly::PolyW;
use crate::precision::{c_abs, cdiv, cmul, PrecisionContext};
use rug::ops::CompleteRound;
use rug::{Complex, Float};

/// Numerical normality evidence for one multi-index: the smallest pivot the
/// elimination saw, the matrix scale, and a crude condition estimate.
#[derive(Clone, Debug)]
pub struct NormalityCertificate {
    pub n: MultiIndex,
    pub min_pivot: Float,
    pub max_entry: Float,
    pub condition_estimate: Float,
    pub normal: bool,
}

impl NormalityCertificate {
    fn trivial(n: MultiIndex, ctx: &PrecisionContext) -> Self {
        NormalityCertificate {
            n,
            min_pivot: ctx.float(1),
            max_entry: ctx.float(1),
            condition_estimate: ctx.float(1),
            normal: true,
        }
    }

    pub fn to_json(&self, ctx: &PrecisionContext) -> serde_json::Value {
        serde_json::json!({
            "n": self.n.components(),
            "pivot": ctx.format_float(&self.min_pivot),
            "cond": ctx.format_float(&self.condition_estimate),
            "normal": self.normal,
        })
    }
}

fn check_coverage(n: &MultiIndex, moments: &MomentTable, need_m: usize) -> Result<()> {
    let need_j = n.components().iter().copied().max().unwrap_or(0) as usize;
    if need_j > 0 && moments.jmax() < need_j - 1 {
        return Err(Error::MomentRange(format!(
            "need j up to {} but table holds jmax = {}",
            need_j - 1,
            moments.jmax()
        )));
    }
    if moments.mmax() < need_m {
        return Err(Error::MomentRange(format!(
            "need m up to {need_m} but table holds mmax = {}",
            moments.mmax()
        )));
    }
    if moments.r() != n.r() {
        return Err(Error::MomentRange(format!(
            "table has {} rays, index has {}",
            moments.r(),
            n.r()
        )));
    }
    Ok(())
}

/// Rows of the orthogonality system for the monic polynomial at `n`:
/// one row per (ray, order j < n_ray), columns `m = 0..|n|-1`, with the
/// monic column moved to the right-hand side.
pub(crate) fn assemble_rows(
    n: &MultiIndex,
    moments: &MomentTable,
    ctx: &PrecisionContext,
) -> Result<(Vec<Vec<Complex>>, Vec<Complex>)> {
    let total = n.total() as usize;
    let mut rows = Vec::with_capacity(total);
    let mut rhs = Vec::with_capacity(total);
    for ray in 0..n.r() {
        for j in 0..n.get(ray) as usize {
            let row: Vec<Complex> = (0..total).map(|m| moments.get(ray, j, m).clone()).collect();
            rows.push(row);
            rhs.push((-moments.get(ray, j, total)).complete(ctx.cprec()));
        }
    }
    Ok((rows, rhs))
}

/// Row-pivoted Gaussian elimination. Returns the solution together with the
/// smallest selected pivot magnitude and the largest input entry.
fn solve_linear(
    mut a: Vec<Vec<Complex>>,
    mut rhs: Vec<Complex>,
    ctx: &PrecisionContext,
) -> (Vec<Complex>, Float, Float) {
    let n = a.len();
    let mut max_entry = ctx.float(0);
    for row in &a {
        for e in row {
            let m = c_abs(e);
            if m > max_entry {
                max_entry = m;
            }
        }
    }
    let mut min_pivot = Float::with_val(ctx.prec(), rug::float::Special::Infinity);
    for col in 0..n {
        let mut best = col;
        let mut best_mag = c_abs(&a[col][col]);
        for row in (col + 1)..n {
            let mag = c_abs(&a[row][col]);
            if mag > best_mag {
                best = row;
                best_mag = mag;
            }
        }
        if best != col {
            a.swap(col, best);
            rhs.swap(col, best);
        }
        if best_mag < min_pivot {
            min_pivot = best_mag.clone();
        }
        if best_mag.is_zero() {
            // singular; leave the zero pivot for the certificate to flag
            continue;
        }
        let pivot = a[col][col].clone();
        for row in (col + 1)..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = cdiv(&a[row][col], &pivot, ctx);
            for k in col..n {
                let sub = cmul(&factor, &a[col][k], ctx);
                a[row][k] -= sub;
            }
            let sub = cmul(&factor, &rhs[col], ctx);
            rhs[row] -= sub;
        }
    }
    // back substitution
    let mut x = vec![ctx.complex_zero(); n];
    for col in (0..n).rev() {
        let mut acc = rhs[col].clone();
        for k in (col + 1)..n {
            let sub = cmul(&a[col][k], &x[k], ctx);
            acc -= sub;
        }
        if !a[col][col].is_zero() {
            x[col] = cdiv(&acc, &a[col][col], ctx);
        }
    }
    (x, min_pivot, max_entry)
}

fn certificate_from(
    n: &MultiIndex,
    min_pivot: Float,
    max_entry: Float,
    ctx: &PrecisionContext,
) -> NormalityCertificate {
    let total = n.total();
    let threshold = ctx.epsilon() * 1000u32 * ctx.float(total.max(1)) * &max_entry;
    let normal = min_pivot > threshold;
    let condition_estimate = if min_pivot.is_zero() {
        Float::with_val(ctx.prec(), rug::float::Special::Infinity)
    } else {
        (&max_entry / &min_pivot).complete(ctx.prec())
    };
    NormalityCertificate {
        n: n.clone(),
        min_pivot,
        max_entry,
        condition_estimate,
        normal,
    }
}

/// Monic orthogonal polynomial at `n` by pivoted elimination on the moment
/// system, with a normality certificate. Errors with `NotNormal` when the
/// smallest pivot falls below the certificate threshold.
pub fn solve_monic(
    params: &ModelParams,
    n: &MultiIndex,
    moments: &MomentTable,
) -> Result<(PolyW, NormalityCertificate)> {
    let ctx = params.ctx();
    let total = n.total() as usize;
    if total == 0 {
        return Ok((
            PolyW::one(ctx),
            NormalityCertificate::trivial(n.clone(), ctx),
        ));
    }
    check_coverage(n, moments, total)?;
    let (rows, rhs) = assemble_rows(n, moments, ctx)?;
    let (x, min_pivot, max_entry) = solve_linear(rows, rhs, ctx);
    let cert = certificate_from(n, min_pivot, max_entry, ctx);
    if !cert.normal {
        return Err(Error::NotNormal(format!(
            "index {n}: smallest pivot {} vs matrix scale {}",
            cert.min_pivot.to_f64(),
            cert.max_entry.to_f64()
        )));
    }
    let mut coeffs = x;
    coeffs.push(ctx.complex_one());
    Ok((PolyW::from_coeffs(coeffs), cert))
}

/// Same solve with the equation rows visited in a caller-chosen order;
/// the solution of a normal system must not depend on it.
pub fn solve_monic_row_order(
    params: &ModelParams,
    n: &MultiIndex,
    moments: &MomentTable,
    order: &[usize],
) -> Result<PolyW> {
    let ctx = params.ctx();
    let total = n.total() as usize;
    if total == 0 {
        return Ok(PolyW::one(ctx));
    }
    check_coverage(n, moments, total)?;
    let (rows, rhs) = assemble_rows(n, moments, ctx)?;
    if order.len() != rows.len() {
        return Err(Error::ParamDomain(format!(
            "row order length {} != system size {}",
            order.len(),
            rows.len()
        )));
    }
    let rows: Vec<Vec<Complex>> = order.iter().map(|&i| rows[i].clone()).collect();
    let rhs: Vec<Complex> = order.iter().map(|&i| rhs[i].clone()).collect();
    let (x, _, _) = solve_linear(rows, rhs, ctx);
    let mut coeffs = x;
    coeffs.push(ctx.complex_one());
    Ok(PolyW::from_coeffs(coeffs))
}

/// Literal determinant-ratio construction, kept as a secondary cross-check
/// for small systems (`|n| <= 3`): expand the bordered moment matrix along
/// its polynomial row and divide by the leading minor.
pub fn solve_monic_determinant(
    params: &ModelParams,
    n: &MultiIndex,
    moments: &MomentTable,
) -> Result<PolyW> {
    let ctx = params.ctx();
    let total = n.total() as usize;
    if total == 0 {
        return Ok(PolyW::one(ctx));
    }
    if total > 3 {
        return Err(Error::ParamDomain(
            "determinant route is limited to |n| <= 3".into(),
        ));
    }
    check_coverage(n, moments, total)?;
    let (rows, _) = assemble_rows(n, moments, ctx)?;
    // rebuild the full |n| x (|n|+1) moment matrix (rhs column un-negated)
    let mut full = Vec::with_capacity(total);
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        let (ray, j) = row_position(n, idx);
        r.push(moments.get(ray, j, total).clone());
        full.push(r);
    }
    let mut coeffs = Vec::with_capacity(total + 1);
    for m in 0..=total {
        let minor: Vec<Vec<Complex>> = full
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != m)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let sign = if (total + m).is_multiple_of(2) { 1i32 } else { -1i32 };
        let det = determinant(&minor, ctx);
        coeffs.push(cmul(&det, &ctx.complex(sign), ctx));
    }
    let lead = coeffs[total].clone();
    if c_abs(&lead).is_zero() {
        return Err(Error::NotNormal(format!(
            "index {n}: leading minor determinant vanishes"
        )));
    }
    Ok(PolyW::from_coeffs(
        coeffs.iter().map(|c| cdiv(c, &lead, ctx)).collect(),
    ))
}

fn row_position(n: &MultiIndex, idx: usize) -> (usize, usize) {
    let mut left = idx;
    for ray in 0..n.r() {
        let count = n.get(ray) as usize;
        if left < count {
            return (ray, left);
        }
        left -= count;
    }
    unreachable!("row index out of range");
}

fn determinant(m: &[Vec<Complex>], ctx: &PrecisionContext) -> Complex {
    match m.len() {
        0 => ctx.complex_one(),
        1 => m[0][0].clone(),
        size => {
            let mut acc = ctx.complex_zero();
            for (col, e) in m[0].iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Complex>> = (1..size)
                    .map(|row| {
                        m[row]
                            .iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = cmul(e, &determinant(&minor, ctx), ctx);
                if col.is_multiple_of(2) {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Orthogonality residuals of `p` against every condition of `n`:
/// entry `(ray, j) = Σ_m α_m M[ray][j][m]`.
pub fn residual_matrix(
    params: &ModelParams,
    n: &MultiIndex,
    p: &PolyW,
    moments: &MomentTable,
) -> Result<Vec<Vec<Complex>>> {
    let ctx = params.ctx();
    let deg = p.degree().unwrap_or(0);
    check_coverage(n, moments, deg)?;
    let mut out = Vec::with_capacity(n.r());
    for ray in 0..n.r() {
        let mut row = Vec::with_capacity(n.get(ray) as usize);
        for j in 0..n.get(ray) as usize {
            let mut acc = ctx.complex_zero();
            for (m, alpha) in p.coeffs().iter().enumerate() {
                acc += cmul(alpha, moments.get(ray, j, m), ctx);
            }
            row.push(acc);
        }
        out.push(row);
    }
    Ok(out)
}

/// Largest orthogonality residual magnitude of `p` at `n`.
pub fn max_orthogonality_residual(
    params: &ModelParams,
    n: &MultiIndex,
    p: &PolyW,
    moments: &MomentTable,
) -> Result<Float> {
    let ctx = params.ctx();
    let mut worst = ctx.float(0);
    for row in residual_matrix(params, n, p, moments)? {
        for e in row {
            let m = c_abs(&e);
            if m > worst {
                worst = m;
            }
        }
    }
    Ok(worst)
}

/// Recurrence coefficient `b_{n,ray}` from first principles: the coefficient
/// difference `α_{|n|-1}(P_n) - α_{|n|}(P_{n+e_ray})`, each side a monic
/// solve (`α_{-1} := 0` at `n = 0`).
pub fn oracle_b(
    params: &ModelParams,
    n: &MultiIndex,
    ray: usize,
    moments: &MomentTable,
) -> Result<Complex> {
    let ctx = params.ctx();
    let total = n.total() as usize;
    let sub = if total == 0 {
        ctx.complex_zero()
    } else {
        let (pn, _) = solve_monic(params, n, moments)?;
        pn.coeff(total - 1, ctx)
    };
    let (pn1, _) = solve_monic(params, &n.raised(ray), moments)?;
    Ok(sub - pn1.coeff(total, ctx))
}

/// Recurrence coefficient `d_{n,ray}` from first principles: the ratio of
/// the lattice sums `Σ k P_n(k)(-k)_{n_ray-1} w_ray(k)` over
/// `Σ P_{n-e_ray}(k)(-k)_{n_ray-1} w_ray(k)`, both expanded through the
/// moment table.
pub fn oracle_d(
    params: &ModelParams,
    n: &MultiIndex,
    ray: usize,
    moments: &MomentTable,
) -> Result<Complex> {
    let ctx = params.ctx();
    if n.get(ray) == 0 {
        return Err(Error::ParamDomain(format!(
            "d coefficient needs n_{ray} >= 1 at {n}"
        )));
    }
    let j = n.get(ray) as usize - 1;
    let total = n.total() as usize;
    if moments.mmax() < total + 1 {
        return Err(Error::MomentRange(format!(
            "d coefficient needs m up to {} but table holds mmax = {}",
            total + 1,
            moments.mmax()
        )));
    }
    let (pn, _) = solve_monic(params, n, moments)?;
    let lower = n.lowered(ray).expect("component checked above");
    let (pl, _) = solve_monic(params, &lower, moments)?;
    let mut num = ctx.complex_zero();
    for (m, alpha) in pn.coeffs().iter().enumerate() {
        num += cmul(alpha, moments.get(ray, j, m + 1), ctx);
    }
    let mut den = ctx.complex_zero();
    for (m, alpha) in pl.coeffs().iter().enumerate() {
        den += cmul(alpha, moments.get(ray, j, m), ctx);
    }
    let den_mag = c_abs(&den);
    let floor = ctx.epsilon() * 1000u32 * (ctx.float(1) + c_abs(&num));
    if den_mag < floor {
        return Err(Error::DivisionByNearZero(format!(
            "d coefficient denominator |{}| at {n}, ray {ray}",
            den_mag.to_f64()
        )));
    }
    Ok(cdiv(&num, &den, ctx))
}
