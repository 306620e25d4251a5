//! Nearest-neighbor recurrence on the multi-index lattice:
//! `P_{n+e_ℓ}(w) = (w - b_{n,ℓ}) P_n(w) - Σ_j d_{n,j} P_{n-e_j}(w)`,
//! with closed-form coefficients for the Meixner second-kind family and an
//! oracle-backed provider for the others.

use crate::error::{Error, Result};
use crate::measures::MomentTable;
use crate::multi_index::MultiIndex;
use crate::oracle::{oracle_b, oracle_d};
use crate::params::{Family, ModelParams};
use crate::poly::PolyW;
use crate::precision::{cdiv, cmul, PrecisionContext};
use crate::report::CheckResult;
use rug::ops::CompleteRound;
use rug::{Complex, Float};
use std::collections::HashMap;

/// Recurrence data at one multi-index: `b[ℓ]` per raising ray and `d[j]`
/// per lowering ray (`d[j] = 0` whenever `n_j = 0`).
#[derive(Clone, Debug)]
pub struct NnrCoefficients {
    pub b: Vec<Complex>,
    pub d: Vec<Complex>,
}

/// Closed forms for the Meixner second-kind family:
///
/// `b_{n,ℓ} = (c(n_ℓ+β_ℓ)+|n|)/(1-c)`,
/// `d_{n,j} = c n_j (β_j+n_j-1)/(c-1)² · ∏_{i≠j, n_i≥1} (β_j+n_j-β_i)/(β_j+n_j-β_i-n_i)`.
///
/// The cross-ratio product over the other active rays is what couples the
/// rays; it collapses to 1 at single-ray indices (and at `r = 1`), where the
/// `d` coefficient reduces to the classical three-term value
/// `c n (β+n-1)/(1-c)²`. Both forms agree with the moment-oracle ratios to
/// working precision, which the verification suite asserts. A cross-ratio
/// denominator vanishes exactly when some `β_j - β_i` is an integer in the
/// coupling range, the same parameter set the weights exclude; that case
/// errors with `DivisionByNearZero`.
pub fn closed_form_coeffs(params: &ModelParams, n: &MultiIndex) -> Result<NnrCoefficients> {
    let ctx = params.ctx();
    let c = params.meixner2_c()?;
    let one_minus_c = (1u32 - c).complete(ctx.cprec());
    let c_minus_1_sq = (c - 1u32).complete(ctx.cprec()).square();
    let total = ctx.float(n.total());
    let mut b = Vec::with_capacity(params.r());
    let mut d = Vec::with_capacity(params.r());
    for ray in 0..params.r() {
        let beta = params.meixner2_beta(ray)?;
        let nl = ctx.float(n.get(ray));
        let num = cmul(c, &(beta + &nl).complete(ctx.cprec()), ctx) + &total;
        b.push(cdiv(&num, &one_minus_c, ctx));
        if n.get(ray) == 0 {
            d.push(ctx.complex_zero());
            continue;
        }
        let factor = (beta + &nl).complete(ctx.cprec()) - 1u32;
        let num = cmul(&cmul(c, &ctx.complex(nl.clone()), ctx), &factor, ctx);
        let mut val = cdiv(&num, &c_minus_1_sq, ctx);
        let top = (beta + &nl).complete(ctx.cprec());
        for other in 0..params.r() {
            if other == ray || n.get(other) == 0 {
                continue;
            }
            let beta_other = params.meixner2_beta(other)?;
            let cross_num = (&top - beta_other).complete(ctx.cprec());
            let cross_den = (&cross_num - ctx.float(n.get(other))).complete(ctx.cprec());
            let floor = ctx.epsilon() * 1000u32 * (ctx.float(1) + crate::precision::c_abs(&cross_num));
            if crate::precision::c_abs(&cross_den) < floor {
                return Err(Error::DivisionByNearZero(format!(
                    "nearest-neighbor d at {n}: beta_{ray} + n_{ray} - beta_{other} - n_{other} \
                     vanishes (integer beta difference)"
                )));
            }
            val = cmul(&val, &cdiv(&cross_num, &cross_den, ctx), ctx);
        }
        d.push(val);
    }
    Ok(NnrCoefficients { b, d })
}

/// Source of recurrence coefficients for a lattice walk.
pub trait CoeffProvider {
    fn coeffs(&self, n: &MultiIndex) -> Result<NnrCoefficients>;
}

/// Closed-form provider (Meixner second kind).
pub struct ClosedFormProvider<'a> {
    pub params: &'a ModelParams,
}

impl CoeffProvider for ClosedFormProvider<'_> {
    fn coeffs(&self, n: &MultiIndex) -> Result<NnrCoefficients> {
        closed_form_coeffs(self.params, n)
    }
}

/// First-principles provider: coefficient differences and lattice-sum
/// ratios over a moment table. Works for every family.
pub struct OracleProvider<'a> {
    pub params: &'a ModelParams,
    pub moments: &'a MomentTable,
}

impl CoeffProvider for OracleProvider<'_> {
    fn coeffs(&self, n: &MultiIndex) -> Result<NnrCoefficients> {
        let ctx = self.params.ctx();
        let mut b = Vec::with_capacity(n.r());
        let mut d = Vec::with_capacity(n.r());
        for ray in 0..n.r() {
            b.push(oracle_b(self.params, n, ray, self.moments)?);
            if n.get(ray) == 0 {
                d.push(ctx.complex_zero());
            } else {
                d.push(oracle_d(self.params, n, ray, self.moments)?);
            }
        }
        Ok(NnrCoefficients { b, d })
    }
}

/// The family's natural provider: closed forms for Meixner second kind,
/// the moment oracle otherwise.
pub fn default_provider<'a>(
    params: &'a ModelParams,
    moments: &'a MomentTable,
) -> Box<dyn CoeffProvider + 'a> {
    match params.family() {
        Family::MeixnerSecond => Box::new(ClosedFormProvider { params }),
        _ => Box::new(OracleProvider { params, moments }),
    }
}

/// Cache of generated polynomials along a walk. `P_0 = 1` is preloaded;
/// indices with a negative component are the zero polynomial by convention,
/// which silently removes `d`-terms at `n_j = 0`.
pub struct WalkCache {
    map: HashMap<MultiIndex, PolyW>,
}

impl WalkCache {
    pub fn new(params: &ModelParams) -> Self {
        let mut map = HashMap::new();
        map.insert(
            MultiIndex::zeros(params.r()),
            PolyW::one(params.ctx()),
        );
        WalkCache { map }
    }

    pub fn get(&self, n: &MultiIndex) -> Option<&PolyW> {
        self.map.get(n)
    }

    pub fn insert(&mut self, n: MultiIndex, p: PolyW) {
        self.map.insert(n, p);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// One recurrence step: from cached `P_n` (and its lower neighbors) to
/// `P_{n+e_ray}`, inserted into the cache and returned.
pub fn step(
    params: &ModelParams,
    n: &MultiIndex,
    ray: usize,
    cache: &mut WalkCache,
    provider: &dyn CoeffProvider,
) -> Result<PolyW> {
    let ctx = params.ctx();
    let pn = cache
        .get(n)
        .ok_or_else(|| Error::MissingNeighbor(format!("P at {n} not cached")))?
        .clone();
    let mut lowers: Vec<Option<PolyW>> = Vec::with_capacity(n.r());
    for j in 0..n.r() {
        match n.lowered(j) {
            Some(lower) => {
                let p = cache.get(&lower).ok_or_else(|| {
                    Error::MissingNeighbor(format!("P at {lower} not cached (needed from {n})"))
                })?;
                lowers.push(Some(p.clone()));
            }
            None => lowers.push(None),
        }
    }
    let coeffs = provider.coeffs(n)?;
    let lin = PolyW::linear(-coeffs.b[ray].clone(), ctx);
    let mut next = pn.mul(&lin, ctx);
    for (j, lower) in lowers.iter().enumerate() {
        if let Some(p) = lower {
            next = next.sub(&p.scale(&coeffs.d[j], ctx), ctx);
        }
    }
    cache.insert(n.raised(ray), next.clone());
    Ok(next)
}

/// Make sure `P_m` (and transitively everything its construction needs) is
/// cached, walking the default round-robin path toward `m`.
fn ensure(
    params: &ModelParams,
    m: &MultiIndex,
    cache: &mut WalkCache,
    provider: &dyn CoeffProvider,
) -> Result<()> {
    if cache.get(m).is_some() {
        return Ok(());
    }
    let path = m.round_robin_path();
    let last = *path.last().expect("nonzero index has a path");
    let prev = m.lowered(last).expect("last step is lowerable");
    ensure(params, &prev, cache, provider)?;
    for j in 0..prev.r() {
        if let Some(lower) = prev.lowered(j) {
            ensure(params, &lower, cache, provider)?;
        }
    }
    step(params, &prev, last, cache, provider)?;
    Ok(())
}

/// Generate `P_n` by walking the lattice along `path` (default:
/// round-robin over the rays). Off-path neighbor polynomials consumed by
/// the recurrence are generated on demand along their own default walks.
pub fn generate(
    params: &ModelParams,
    n: &MultiIndex,
    path: Option<&[usize]>,
    provider: &dyn CoeffProvider,
) -> Result<PolyW> {
    let mut cache = WalkCache::new(params);
    generate_with_cache(params, n, path, provider, &mut cache)
}

/// As [`generate`], reusing a caller-owned cache across calls.
pub fn generate_with_cache(
    params: &ModelParams,
    n: &MultiIndex,
    path: Option<&[usize]>,
    provider: &dyn CoeffProvider,
    cache: &mut WalkCache,
) -> Result<PolyW> {
    let ctx = params.ctx();
    let default_path;
    let path = match path {
        Some(p) => p,
        None => {
            default_path = n.round_robin_path();
            &default_path
        }
    };
    // the path must be a step ordering that reaches n
    let mut check = vec![0u32; n.r()];
    for &ray in path {
        if ray >= n.r() {
            return Err(Error::ParamDomain(format!("path ray {ray} out of range")));
        }
        check[ray] += 1;
    }
    if check != n.components() {
        return Err(Error::ParamDomain(format!(
            "path {path:?} does not reach {n}"
        )));
    }

    let mut cur = MultiIndex::zeros(n.r());
    for &ray in path {
        if cache.get(&cur.raised(ray)).is_some() {
            cur = cur.raised(ray);
            continue;
        }
        for j in 0..cur.r() {
            if let Some(lower) = cur.lowered(j) {
                ensure(params, &lower, cache, provider)?;
            }
        }
        step(params, &cur, ray, cache, provider)?;
        cur = cur.raised(ray);
    }
    let _ = ctx;
    Ok(cache.get(n).expect("walk reached the target").clone())
}

/// Three-term ladder along a single ray for the Meixner second-kind
/// family: checks
/// `M_{(t+1)e_ℓ} = (w - b) M_{t e_ℓ} - d M_{(t-1)e_ℓ}` coefficientwise for
/// `t <= n_max` with the closed-form `b`, `d`, all polynomials built by the
/// raising cascade.
pub fn single_ray_ladder_check(
    params: &ModelParams,
    ray: usize,
    n_max: u32,
    tol: &Float,
) -> Result<CheckResult> {
    let ctx = params.ctx();
    let _ = params.meixner2_c()?;
    let mut worst = ctx.float(0);
    let mut prev = PolyW::zero();
    let mut cur = PolyW::one(ctx);
    for t in 0..=n_max {
        let mut idx = vec![0u32; params.r()];
        idx[ray] = t + 1;
        let next = crate::constructors::raising_cascade(params, &MultiIndex::new(idx), None)?;
        let coeffs = closed_form_coeffs(params, &single_ray_index(params.r(), ray, t))?;
        let lin = PolyW::linear(-coeffs.b[ray].clone(), ctx);
        let mut rhs = cur.mul(&lin, ctx);
        if t > 0 {
            rhs = rhs.sub(&prev.scale(&coeffs.d[ray], ctx), ctx);
        }
        let dev = PolyW::rel_deviation(&next, &rhs, ctx);
        if dev > worst {
            worst = dev;
        }
        prev = cur;
        cur = next;
    }
    Ok(CheckResult::pass_fail(
        format!("single_ray_ladder ray={ray}"),
        worst,
        tol.clone(),
    ))
}

fn single_ray_index(r: usize, ray: usize, t: u32) -> MultiIndex {
    let mut v = vec![0u32; r];
    v[ray] = t;
    MultiIndex::new(v)
}

/// One exported recurrence row: the multi-index, the raising ray, `b`, and
/// all `d` values.
#[derive(Clone, Debug)]
pub struct RecurrenceRow {
    pub n: MultiIndex,
    pub ray: usize,
    pub b: Complex,
    pub d: Vec<Complex>,
}

/// Rows for every `|n| <= n_max` and every ray.
pub fn recurrence_table(
    params: &ModelParams,
    n_max: u32,
    provider: &dyn CoeffProvider,
) -> Result<Vec<RecurrenceRow>> {
    let mut rows = Vec::new();
    for n in MultiIndex::indices_up_to(params.r(), n_max) {
        let coeffs = provider.coeffs(&n)?;
        for ray in 0..params.r() {
            rows.push(RecurrenceRow {
                n: n.clone(),
                ray,
                b: coeffs.b[ray].clone(),
                d: coeffs.d.clone(),
            });
        }
    }
    Ok(rows)
}

/// CSV with columns `n_0..n_{r-1}, ray, b_re, b_im, d_0_re, d_0_im, …`.
pub fn recurrence_table_csv(rows: &[RecurrenceRow], r: usize, ctx: &PrecisionContext) -> String {
    let mut header: Vec<String> = (0..r).map(|i| format!("n_{i}")).collect();
    header.push("ray".into());
    header.push("b_re".into());
    header.push("b_im".into());
    for j in 0..r {
        header.push(format!("d_{j}_re"));
        header.push(format!("d_{j}_im"));
    }
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut fields: Vec<String> = row
            .n
            .components()
            .iter()
            .map(|c| c.to_string())
            .collect();
        fields.push(row.ray.to_string());
        let (re, im) = ctx.format_complex(&row.b);
        fields.push(re);
        fields.push(im);
        for d in &row.d {
            let (re, im) = ctx.format_complex(d);
            fields.push(re);
            fields.push(im);
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
