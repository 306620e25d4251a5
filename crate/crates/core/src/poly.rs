//! Dense polynomials in the variable `w = z^r`.
//!
//! `PolyW` stores complex coefficients in ascending degree order. The
//! representation is canonical: the vector is empty for the zero polynomial
//! and the highest-index coefficient is nonzero otherwise (trailing exact
//! zeros are trimmed; floating dust is never silently dropped).

use crate::error::{Error, Result};
use crate::precision::{c_abs, cdiv, cmul, PrecisionContext};
use rug::ops::CompleteRound;
use rug::{Complex, Float};
use std::fmt;

#[derive(Clone, Debug)]
pub struct PolyW {
    coeffs: Vec<Complex>,
}

impl PolyW {
    pub fn zero() -> Self {
        PolyW { coeffs: Vec::new() }
    }

    pub fn one(ctx: &PrecisionContext) -> Self {
        PolyW {
            coeffs: vec![ctx.complex_one()],
        }
    }

    pub fn constant(c: Complex) -> Self {
        let mut p = PolyW { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial `w`.
    pub fn w(ctx: &PrecisionContext) -> Self {
        PolyW {
            coeffs: vec![ctx.complex_zero(), ctx.complex_one()],
        }
    }

    /// The linear factor `w + shift`.
    pub fn linear(shift: Complex, ctx: &PrecisionContext) -> Self {
        PolyW {
            coeffs: vec![shift, ctx.complex_one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Complex>) -> Self {
        let mut p = PolyW { coeffs };
        p.normalize();
        p
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex], ctx: &PrecisionContext) -> Self {
        let mut p = PolyW::one(ctx);
        for root in roots {
            p = p.mul(&PolyW::linear(-root.clone(), ctx), ctx);
        }
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `w^m` (zero beyond the degree).
    pub fn coeff(&self, m: usize, ctx: &PrecisionContext) -> Complex {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| ctx.complex_zero())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Complex> {
        self.coeffs.last()
    }

    pub fn max_norm(&self, ctx: &PrecisionContext) -> Float {
        let mut m = ctx.float(0);
        for c in &self.coeffs {
            let a = c_abs(c);
            if a > m {
                m = a;
            }
        }
        m
    }

    pub fn add(&self, other: &PolyW, ctx: &PrecisionContext) -> PolyW {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i, ctx);
            let b = other.coeff(i, ctx);
            out.push(a + b);
        }
        PolyW::from_coeffs(out)
    }

    pub fn sub(&self, other: &PolyW, ctx: &PrecisionContext) -> PolyW {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i, ctx);
            let b = other.coeff(i, ctx);
            out.push(a - b);
        }
        PolyW::from_coeffs(out)
    }

    pub fn scale(&self, s: &Complex, ctx: &PrecisionContext) -> PolyW {
        PolyW::from_coeffs(self.coeffs.iter().map(|c| cmul(c, s, ctx)).collect())
    }

    pub fn neg(&self, ctx: &PrecisionContext) -> PolyW {
        self.scale(&-ctx.complex_one(), ctx)
    }

    pub fn mul(&self, other: &PolyW, ctx: &PrecisionContext) -> PolyW {
        if self.is_zero() || other.is_zero() {
            return PolyW::zero();
        }
        let mut out = vec![ctx.complex_zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += (a * b).complete(ctx.cprec());
            }
        }
        PolyW::from_coeffs(out)
    }

    /// Multiply by the monomial `w`.
    pub fn mul_w(&self, ctx: &PrecisionContext) -> PolyW {
        if self.is_zero() {
            return PolyW::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(ctx.complex_zero());
        out.extend(self.coeffs.iter().cloned());
        PolyW::from_coeffs(out)
    }

    /// Argument shift: returns `q` with `q(w) = p(w + t)` (Taylor shift).
    ///
    /// Degree-preserving and linear in `p`.
    pub fn shift_arg(&self, t: &Complex, ctx: &PrecisionContext) -> PolyW {
        if self.is_zero() {
            return PolyW::zero();
        }
        let d = self.coeffs.len() - 1;
        let mut b = self.coeffs.clone();
        for i in 0..d {
            for j in (i..d).rev() {
                let add = cmul(&b[j + 1], t, ctx);
                b[j] += add;
            }
        }
        PolyW::from_coeffs(b)
    }

    /// Horner evaluation at `w`.
    pub fn eval(&self, w: &Complex, ctx: &PrecisionContext) -> Complex {
        let mut acc = ctx.complex_zero();
        for c in self.coeffs.iter().rev() {
            acc = cmul(&acc, w, ctx) + c;
        }
        acc
    }

    pub fn derivative(&self, ctx: &PrecisionContext) -> PolyW {
        if self.coeffs.len() <= 1 {
            return PolyW::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, c)| (c * ctx.float(m as u32)).complete(ctx.cprec()))
            .collect();
        PolyW::from_coeffs(out)
    }

    /// Check the leading coefficient is within `rel_tol` of 1, then divide
    /// it out so the result is exactly monic.
    pub fn into_monic_checked(mut self, rel_tol: f64, ctx: &PrecisionContext) -> Result<PolyW> {
        let lead = match self.leading() {
            Some(l) => l.clone(),
            None => {
                return Err(Error::Monicity("zero polynomial cannot be monic".into()));
            }
        };
        let dev = c_abs(&(lead.clone() - 1u32));
        if dev > rel_tol {
            return Err(Error::Monicity(format!(
                "leading coefficient {lead} deviates from 1 by {dev}"
            )));
        }
        for c in &mut self.coeffs {
            *c = cdiv(c, &lead, ctx);
        }
        Ok(self)
    }

    /// max_i |a_i - b_i| over zero-padded coefficients.
    pub fn abs_deviation(a: &PolyW, b: &PolyW, ctx: &PrecisionContext) -> Float {
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut m = ctx.float(0);
        for i in 0..n {
            let d = c_abs(&(a.coeff(i, ctx) - b.coeff(i, ctx)));
            if d > m {
                m = d;
            }
        }
        m
    }

    /// Coefficientwise deviation relative to the larger max-norm of the pair.
    pub fn rel_deviation(a: &PolyW, b: &PolyW, ctx: &PrecisionContext) -> Float {
        let num = Self::abs_deviation(a, b, ctx);
        let mut den = a.max_norm(ctx);
        let bn = b.max_norm(ctx);
        if bn > den {
            den = bn;
        }
        if den.is_zero() {
            num
        } else {
            num / den
        }
    }
}

impl fmt::Display for PolyW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (m, c) in self.coeffs.iter().enumerate().rev() {
            if m + 1 < self.coeffs.len() {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({:.6}{:+.6}i)",
                c.real().to_f64(),
                c.imag().to_f64()
            )?;
            if m > 0 {
                write!(f, "*w^{m}")?;
            }
        }
        Ok(())
    }
}

/// Unique interpolating polynomial through `(node, value)` pairs with
/// distinct integer nodes, by divided differences.
pub fn newton_interpolate(values: &[(i64, Complex)], ctx: &PrecisionContext) -> Result<PolyW> {
    let n = values.len();
    if n == 0 {
        return Ok(PolyW::zero());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if values[i].0 == values[j].0 {
                return Err(Error::DuplicateNode(format!("node {} repeats", values[i].0)));
            }
        }
    }
    let nodes: Vec<Complex> = values.iter().map(|(k, _)| ctx.complex(*k)).collect();
    let mut dd: Vec<Complex> = values.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = (&dd[i] - &dd[i - 1]).complete(ctx.cprec());
            let den = (&nodes[i] - &nodes[i - level]).complete(ctx.cprec());
            dd[i] = num / den;
        }
    }
    // expand Newton form from the top
    let mut p = PolyW::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = PolyW::linear(-nodes[i].clone(), ctx);
        p = p.mul(&factor, ctx).add(&PolyW::constant(dd[i].clone()), ctx);
    }
    Ok(p)
}
