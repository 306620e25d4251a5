//! Precision-parameterized arithmetic context.
//!
//! Every operation in this crate threads a [`PrecisionContext`] instead of
//! relying on a global precision. The context fixes the number of requested
//! significant decimal digits, the derived MPFR bit precision (with guard
//! bits), and the unit roundoff `epsilon = 10^(1-digits)` used by tolerance
//! checks throughout.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Complex, Float};

const LOG2_10: f64 = std::f64::consts::LOG2_10;
/// Extra bits on top of the requested decimal digits.
const GUARD_BITS: u32 = 32;

/// Arithmetic context: requested decimal digits plus the derived binary
/// precision. Cheap to clone; all values produced through it carry the same
/// bit precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    prec: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 15;
    pub const DEFAULT_DIGITS: u32 = 50;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "digits must be >= {} (got {digits})",
                Self::MIN_DIGITS
            )));
        }
        let prec = (digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS;
        Ok(PrecisionContext { digits, prec })
    }

    /// Context at the default 50 decimal digits.
    pub fn standard() -> Self {
        Self::new(Self::DEFAULT_DIGITS).expect("default digits exceed the minimum")
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Precision pair for `Complex` completion.
    pub fn cprec(&self) -> (u32, u32) {
        (self.prec, self.prec)
    }

    /// Unit roundoff for tolerance scaling: `10^(1-digits)`.
    pub fn epsilon(&self) -> Float {
        Float::with_val(self.prec, 10u32).pow(1 - self.digits as i32)
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec, val)
    }

    pub fn complex<T>(&self, val: T) -> Complex
    where
        Complex: rug::Assign<T>,
    {
        Complex::with_val(self.prec, val)
    }

    pub fn complex_zero(&self) -> Complex {
        Complex::with_val(self.prec, 0)
    }

    pub fn complex_one(&self) -> Complex {
        Complex::with_val(self.prec, 1)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec, Constant::Pi)
    }

    /// `10^e` as a tolerance value.
    pub fn pow10(&self, e: i32) -> Float {
        Float::with_val(self.prec, 10u32).pow(e)
    }

    /// Parse a real decimal string at full context precision.
    pub fn parse_float(&self, s: &str) -> Result<Float> {
        Float::parse(s.trim())
            .map(|v| v.complete(self.prec))
            .map_err(|e| Error::Parse(format!("invalid real number {s:?}: {e}")))
    }

    /// Parse a complex number written as `re`, `imi`, or `re+imi`
    /// (e.g. `0.5`, `-2i`, `0.3+0.2i`, `1e-3-2.5e-2i`, `i`).
    pub fn parse_complex(&self, s: &str) -> Result<Complex> {
        let t = s.trim().replace(' ', "");
        if t.is_empty() {
            return Err(Error::Parse("empty complex literal".into()));
        }
        // Split before a '+'/'-' that is not an exponent sign and not leading.
        let bytes = t.as_bytes();
        let mut split = None;
        for i in 1..bytes.len() {
            let c = bytes[i] as char;
            if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
            }
        }
        let (re_part, im_part) = match split {
            Some(i) => {
                let (a, b) = t.split_at(i);
                if !b.ends_with('i') {
                    return Err(Error::Parse(format!(
                        "invalid complex literal {s:?}: expected imaginary part like 0.2i"
                    )));
                }
                (Some(a.to_string()), Some(b[..b.len() - 1].to_string()))
            }
            None => {
                if t.ends_with('i') {
                    (None, Some(t[..t.len() - 1].to_string()))
                } else {
                    (Some(t.clone()), None)
                }
            }
        };
        let re = match re_part {
            Some(p) => self.parse_float(&p)?,
            None => self.float(0),
        };
        let im = match im_part {
            Some(p) if p.is_empty() || p == "+" => self.float(1),
            Some(p) if p == "-" => self.float(-1),
            Some(p) => self.parse_float(&p)?,
            None => self.float(0),
        };
        Ok(Complex::with_val(self.prec, (re, im)))
    }

    /// Decimal rendering with the context's significant digits; exact `"0"`
    /// for zero so output files stay stable.
    pub fn format_float(&self, f: &Float) -> String {
        if f.is_zero() {
            "0".to_string()
        } else {
            f.to_string_radix(10, Some(self.digits as usize))
        }
    }

    /// (re, im) decimal strings for JSON/CSV export.
    pub fn format_complex(&self, z: &Complex) -> (String, String) {
        (self.format_float(z.real()), self.format_float(z.imag()))
    }
}

/// |z| as a `Float`.
pub fn c_abs(z: &Complex) -> Float {
    z.clone().abs().into_real_imag().0
}

/// |a - b| as a `Float`.
pub fn c_dist(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> Float {
    c_abs(&(a - b).complete(ctx.cprec()))
}

pub fn cadd(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> Complex {
    (a + b).complete(ctx.cprec())
}

pub fn csub(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> Complex {
    (a - b).complete(ctx.cprec())
}

pub fn cmul(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> Complex {
    (a * b).complete(ctx.cprec())
}

pub fn cdiv(a: &Complex, b: &Complex, ctx: &PrecisionContext) -> Complex {
    (a / b).complete(ctx.cprec())
}

/// True when `z` lies within `tol` of a nonpositive integer (a Γ pole).
pub fn is_nonpositive_integer(z: &Complex, tol: &Float) -> bool {
    if z.imag().clone().abs() > *tol {
        return false;
    }
    let re = z.real();
    let k = re.clone().round();
    if k > 0.5 {
        return false;
    }
    (re.clone() - k).abs() <= *tol
}

/// The r-th roots of unity `[1, ω, …, ω^{r-1}]`, `ω = e^{2πi/r}`.
///
/// Quarter-turn multiples come out exact; the rest carry one rounding of
/// sin/cos.
pub fn roots_of_unity(r: usize, ctx: &PrecisionContext) -> Vec<Complex> {
    assert!(r >= 1, "r must be at least 1");
    let mut out = Vec::with_capacity(r);
    for j in 0..r {
        out.push(root_of_unity(j, r, ctx));
    }
    out
}

/// `ω^j` for `ω = e^{2πi/r}`.
pub fn root_of_unity(j: usize, r: usize, ctx: &PrecisionContext) -> Complex {
    let j = j % r;
    if (4 * j).is_multiple_of(r) {
        // exact quarter turns
        return match 4 * j / r {
            0 => ctx.complex((1, 0)),
            1 => ctx.complex((0, 1)),
            2 => ctx.complex((-1, 0)),
            _ => ctx.complex((0, -1)),
        };
    }
    let theta = ctx.pi() * 2u32 * ctx.float(j as u32) / ctx.float(r as u32);
    let (s, c) = theta.sin_cos(Float::new(ctx.prec()));
    Complex::with_val(ctx.prec(), (c, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_floor_enforced() {
        assert!(PrecisionContext::new(14).is_err());
        assert!(PrecisionContext::new(15).is_ok());
    }

    #[test]
    fn epsilon_scale() {
        let ctx = PrecisionContext::standard();
        let eps = ctx.epsilon();
        assert!(eps.clone() / ctx.pow10(1 - 50) < 10.0);
        assert!(ctx.pow10(1 - 50) / eps < 10.0);
    }

    #[test]
    fn parse_complex_forms() {
        let ctx = PrecisionContext::standard();
        let cases = [
            ("1.5", (1.5, 0.0)),
            ("-2", (-2.0, 0.0)),
            ("2i", (0.0, 2.0)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("0.3+0.2i", (0.3, 0.2)),
            ("0.3-0.2i", (0.3, -0.2)),
            ("-1e-3+2.5e-2i", (-1e-3, 2.5e-2)),
            ("1.25e1-2i", (12.5, -2.0)),
        ];
        for (s, (re, im)) in cases {
            let z = ctx.parse_complex(s).unwrap();
            assert!((z.real().to_f64() - re).abs() < 1e-12, "{s}");
            assert!((z.imag().to_f64() - im).abs() < 1e-12, "{s}");
        }
        assert!(ctx.parse_complex("").is_err());
        assert!(ctx.parse_complex("1+2").is_err());
        assert!(ctx.parse_complex("abc").is_err());
    }

    #[test]
    fn format_round_trips() {
        let ctx = PrecisionContext::standard();
        let x = ctx.parse_float("0.3").unwrap();
        let s = ctx.format_float(&x);
        let y = ctx.parse_float(&s).unwrap();
        let diff = (x - y).abs();
        assert!(diff < ctx.pow10(-48));
    }

    #[test]
    fn unity_roots_small_orders() {
        let ctx = PrecisionContext::standard();
        assert_eq!(roots_of_unity(1, &ctx), vec![ctx.complex((1, 0))]);
        assert_eq!(
            roots_of_unity(2, &ctx),
            vec![ctx.complex((1, 0)), ctx.complex((-1, 0))]
        );
        assert_eq!(
            roots_of_unity(4, &ctx),
            vec![
                ctx.complex((1, 0)),
                ctx.complex((0, 1)),
                ctx.complex((-1, 0)),
                ctx.complex((0, -1)),
            ]
        );
    }

    #[test]
    fn unity_roots_modulus_one() {
        let ctx = PrecisionContext::standard();
        for r in [3usize, 5, 7] {
            for w in roots_of_unity(r, &ctx) {
                let dev = (c_abs(&w) - 1u32).abs();
                assert!(dev < ctx.epsilon(), "r={r}");
            }
        }
    }

    #[test]
    fn pole_detector() {
        let ctx = PrecisionContext::standard();
        let eps = ctx.epsilon();
        assert!(is_nonpositive_integer(&ctx.complex((0, 0)), &eps));
        assert!(is_nonpositive_integer(&ctx.complex((-3, 0)), &eps));
        assert!(!is_nonpositive_integer(&ctx.complex((2, 0)), &eps));
        assert!(!is_nonpositive_integer(&ctx.complex((-0.5, 0)), &eps));
        assert!(!is_nonpositive_integer(&ctx.complex((-1, 1)), &eps));
    }
}
