//! Exact constants and the two core comparators.
//!
//! A constant is either an exact rational (the normal case — integers,
//! fractions, and finite decimals all parse to one) or a certified enclosure
//! for a value only known to lie in an interval. Comparisons against a
//! rational go through big-integer cross-multiplication and can never be
//! `Undecided`: for `c = p/q`,
//!
//! ```text
//! base^exp > (p/q)^cexp    <=>    base^exp * q^cexp > p^cexp
//! ```
//!
//! Comparisons against an enclosure compare `exp * log(base)` with
//! `cexp * log(c)` using directed-rounded log enclosures and escalate the
//! working precision up to the configured cap before conceding `Undecided`.

use alloc::format;
use alloc::string::ToString;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::{
    e_cached, log_interval_cached, log_rational_cached, ConstCache, Interval, PrecisionCfg,
};

/// Hard ceiling on the bit length of any big-integer power formed by the
/// exact comparison path (~16 MiB per operand). Exponent pairs beyond this
/// are a sign the caller wants a scale this tool does not target.
const MAX_POW_BITS: u64 = 1 << 27;

/// Three-valued comparison outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Undecided => "Undecided",
        }
    }
}

/// Outcome of one inequality check.
///
/// `Holds`/`Fails` from the exact rational path are unconditional;
/// `Undecided` can only arise on the enclosure path, when the precision cap
/// is insufficient to separate the two sides. `margin` is a diagnostic
/// approximation of the gap (log-scale for power comparisons) and plays no
/// part in the verdict.
#[derive(Debug, Clone)]
pub struct CheckVerdict {
    pub status: Verdict,
    /// Working precision that settled the verdict, when the enclosure path
    /// was taken.
    pub precision_used: Option<u32>,
    pub margin: Option<f64>,
}

impl CheckVerdict {
    fn exact(status: Verdict, margin: Option<f64>) -> Self {
        CheckVerdict {
            status,
            precision_used: None,
            margin,
        }
    }
}

/// A real parameter, exactly rational or enclosed in a rational interval.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactConstant {
    Rational(BigRational),
    Enclosure {
        lo: BigRational,
        hi: BigRational,
        precision_bits: u32,
    },
}

impl ExactConstant {
    pub fn from_integer(v: u64) -> Self {
        ExactConstant::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn rational(r: BigRational) -> Self {
        ExactConstant::Rational(r)
    }

    pub fn enclosure(lo: BigRational, hi: BigRational, precision_bits: u32) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Domain(
                "enclosure bounds must satisfy lo < hi".to_string(),
            ));
        }
        Ok(ExactConstant::Enclosure {
            lo,
            hi,
            precision_bits,
        })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactConstant::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactConstant::Rational(r) => Some(r),
            ExactConstant::Enclosure { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactConstant::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactConstant::Enclosure { lo, hi, .. } => {
                Interval::new(lo.clone(), hi.clone()).to_f64()
            }
        }
    }

    /// Certified positivity, needed before taking logs.
    pub fn is_certainly_positive(&self) -> bool {
        match self {
            ExactConstant::Rational(r) => r.is_positive(),
            ExactConstant::Enclosure { lo, .. } => lo.is_positive(),
        }
    }

    pub(crate) fn log(&self, prec: u32, cache: &mut ConstCache) -> Result<Interval> {
        match self {
            ExactConstant::Rational(r) => log_rational_cached(r, prec, cache),
            ExactConstant::Enclosure { lo, hi, .. } => {
                log_interval_cached(&Interval::new(lo.clone(), hi.clone()), prec, cache)
            }
        }
    }

    /// Certify `1 < c < e`, the hypothesis under which the power and
    /// primorial inequalities eventually hold. Escalates the precision of
    /// the `e` enclosure as needed.
    pub fn validate_c(&self, cfg: &PrecisionCfg) -> Result<()> {
        let one = BigRational::one();
        let mut cache = ConstCache::new();
        match self {
            ExactConstant::Rational(r) => {
                if *r <= one {
                    return Err(Error::Domain(format!(
                        "c = {r} violates the hypothesis 1 < c < e"
                    )));
                }
                for prec in cfg.ladder() {
                    let e = e_cached(prec, &mut cache);
                    if r < e.lo() {
                        return Ok(());
                    }
                    if r > e.hi() {
                        return Err(Error::Domain(format!(
                            "c = {r} violates the hypothesis 1 < c < e"
                        )));
                    }
                }
                Err(Error::PrecisionExhausted(
                    "cannot separate c from e within the precision cap".to_string(),
                ))
            }
            ExactConstant::Enclosure { lo, hi, .. } => {
                if *lo <= one {
                    return Err(Error::Domain(
                        "enclosure lower bound must certify c > 1".to_string(),
                    ));
                }
                for prec in cfg.ladder() {
                    let e = e_cached(prec, &mut cache);
                    if hi < e.lo() {
                        return Ok(());
                    }
                    if lo > e.hi() {
                        return Err(Error::Domain(
                            "enclosure certifies c >= e, violating 1 < c < e".to_string(),
                        ));
                    }
                }
                Err(Error::PrecisionExhausted(
                    "enclosure for c overlaps e at every precision up to the cap".to_string(),
                ))
            }
        }
    }
}

/// Parse an integer, a fraction `p/q`, or a finite decimal (optionally with
/// an `e` exponent) into an exact rational. `"2.5"` means exactly `5/2`; no
/// binary floating-point round trip is involved.
pub fn parse_rational_text(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty numeric literal".to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad fraction denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }

    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            if exp.abs() > 9_999 {
                return Err(Error::Resource(format!("exponent out of range in {s:?}")));
            }
            (m, exp)
        }
        None => (s, 0),
    };

    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let (sign, int_digits) = match int_part.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
    };
    if int_digits.is_empty() && frac_part.is_empty() {
        return Err(Error::Parse(format!("no digits in {s:?}")));
    }
    if !int_digits.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("malformed numeric literal {s:?}")));
    }

    let digits = [int_digits, frac_part].concat();
    let mut num: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("malformed numeric literal {s:?}")))?;
    num *= sign;
    let scale = frac_part.len() as i32;
    let net_exp = exp10 - scale;
    let ten = BigInt::from(10u32);
    Ok(if net_exp >= 0 {
        BigRational::from_integer(num * ten.pow(net_exp as u32))
    } else {
        BigRational::new(num, ten.pow((-net_exp) as u32))
    })
}

/// Parse the inequality parameter `c` and certify `1 < c < e`; finite
/// decimals and fractions become exact rationals.
pub fn parse_constant(text: &str) -> Result<ExactConstant> {
    parse_constant_with(text, &PrecisionCfg::default())
}

pub fn parse_constant_with(text: &str, cfg: &PrecisionCfg) -> Result<ExactConstant> {
    let r = parse_rational_text(text)?;
    let c = ExactConstant::Rational(r);
    c.validate_c(cfg)?;
    Ok(c)
}

/// Certified enclosure of the natural log of a positive rational, with
/// width at most `2^(1-precision_bits) * max(1, |log x|)`.
pub fn log_enclosure(x: &BigRational, precision_bits: u32) -> Result<Interval> {
    let mut cache = ConstCache::new();
    log_rational_cached(x, precision_bits, &mut cache)
}

/// Decide `base^exp > c^cexp`.
///
/// Rational `c` takes the exact big-integer route and never returns
/// `Undecided`; equality of the two sides reports `Fails` (the predicates
/// served here are strict). Enclosure `c` compares log forms and escalates
/// precision up to `cfg.cap_bits`.
pub fn compare_power_vs_power(
    base: u64,
    exp: u64,
    c: &ExactConstant,
    cexp: u64,
    cfg: &PrecisionCfg,
) -> Result<CheckVerdict> {
    let mut cache = ConstCache::new();
    compare_power_cached(base, exp, c, cexp, cfg, &mut cache)
}

pub(crate) fn compare_power_cached(
    base: u64,
    exp: u64,
    c: &ExactConstant,
    cexp: u64,
    cfg: &PrecisionCfg,
    cache: &mut ConstCache,
) -> Result<CheckVerdict> {
    if base < 2 {
        return Err(Error::Domain(format!(
            "power base must be >= 2, got {base}"
        )));
    }
    match c {
        ExactConstant::Rational(r) => {
            let lhs = pow_checked(&BigUint::from(base), exp)?;
            let status = rational_cross_compare(&lhs, r, cexp)?;
            let margin = power_margin(base, exp, c, cexp, cache);
            Ok(CheckVerdict::exact(status, margin))
        }
        ExactConstant::Enclosure { .. } => {
            let base_rat = BigRational::from_integer(BigInt::from(base));
            let exp_rat = BigRational::from_integer(BigInt::from(exp));
            enclosure_log_compare(
                move |prec, cache| {
                    Ok(log_rational_cached(&base_rat, prec, cache)?.scale(&exp_rat))
                },
                c,
                cexp,
                cfg,
                cache,
            )
        }
    }
}

/// Decide `lhs > c^cexp` for an exact big integer `lhs >= 1`.
pub fn compare_bigint_vs_power(
    lhs: &BigUint,
    c: &ExactConstant,
    cexp: u64,
    cfg: &PrecisionCfg,
) -> Result<CheckVerdict> {
    let mut cache = ConstCache::new();
    compare_bigint_cached(lhs, c, cexp, cfg, &mut cache)
}

pub(crate) fn compare_bigint_cached(
    lhs: &BigUint,
    c: &ExactConstant,
    cexp: u64,
    cfg: &PrecisionCfg,
    cache: &mut ConstCache,
) -> Result<CheckVerdict> {
    if lhs.is_zero() {
        return Err(Error::Domain("left side must be >= 1".to_string()));
    }
    match c {
        ExactConstant::Rational(r) => {
            let status = rational_cross_compare(lhs, r, cexp)?;
            let margin = bigint_margin(lhs, c, cexp, cache);
            Ok(CheckVerdict::exact(status, margin))
        }
        ExactConstant::Enclosure { .. } => {
            let lhs_rat = BigRational::from_integer(BigInt::from(lhs.clone()));
            enclosure_log_compare(
                move |prec, cache| log_rational_cached(&lhs_rat, prec, cache),
                c,
                cexp,
                cfg,
                cache,
            )
        }
    }
}

/// Exact decision of `lhs > (p/q)^cexp` via `lhs * q^cexp ? p^cexp`.
fn rational_cross_compare(lhs: &BigUint, c: &BigRational, cexp: u64) -> Result<Verdict> {
    if !c.is_positive() {
        return Err(Error::Domain(
            "rational comparison base c must be positive".to_string(),
        ));
    }
    let p = c.numer().magnitude();
    let q = c.denom().magnitude();
    let left = lhs * pow_checked(q, cexp)?;
    let right = pow_checked(p, cexp)?;
    // Equality means the strict inequality fails.
    Ok(if left > right {
        Verdict::Holds
    } else {
        Verdict::Fails
    })
}

fn pow_checked(base: &BigUint, exp: u64) -> Result<BigUint> {
    if exp == 0 {
        return Ok(BigUint::one());
    }
    if base.is_one() {
        return Ok(BigUint::one());
    }
    let bits_estimate = base.bits().saturating_mul(exp);
    if bits_estimate > MAX_POW_BITS {
        return Err(Error::Resource(format!(
            "power of ~{bits_estimate} bits exceeds the {MAX_POW_BITS}-bit work budget"
        )));
    }
    let exp32 = u32::try_from(exp)
        .map_err(|_| Error::Resource(format!("exponent {exp} too large for exact path")))?;
    Ok(base.pow(exp32))
}

/// Log-form comparison for enclosure constants: sign of
/// `lhs_log - cexp * log c`, escalating until decided or capped.
fn enclosure_log_compare<F>(
    lhs_log: F,
    c: &ExactConstant,
    cexp: u64,
    cfg: &PrecisionCfg,
    cache: &mut ConstCache,
) -> Result<CheckVerdict>
where
    F: Fn(u32, &mut ConstCache) -> Result<Interval>,
{
    if !c.is_certainly_positive() {
        return Err(Error::Domain(
            "enclosure constant must be certifiably positive".to_string(),
        ));
    }
    let cexp_rat = BigRational::from_integer(BigInt::from(cexp));
    let mut last = None;
    for prec in cfg.ladder() {
        let left = lhs_log(prec, cache)?;
        let right = c.log(prec, cache)?.scale(&cexp_rat);
        let gap = left.sub(&right);
        last = Some(gap.to_f64());
        match gap.sign() {
            Some(core::cmp::Ordering::Greater) => {
                return Ok(CheckVerdict {
                    status: Verdict::Holds,
                    precision_used: Some(prec),
                    margin: last,
                })
            }
            Some(core::cmp::Ordering::Less) => {
                return Ok(CheckVerdict {
                    status: Verdict::Fails,
                    precision_used: Some(prec),
                    margin: last,
                })
            }
            _ => {}
        }
    }
    Ok(CheckVerdict {
        status: Verdict::Undecided,
        precision_used: Some(cfg.cap_bits),
        margin: last,
    })
}

/// Diagnostic log-scale gap `exp*log(base) - cexp*log(c)`.
fn power_margin(
    base: u64,
    exp: u64,
    c: &ExactConstant,
    cexp: u64,
    cache: &mut ConstCache,
) -> Option<f64> {
    let lb = log_rational_cached(&BigRational::from_integer(BigInt::from(base)), 53, cache).ok()?;
    let lc = c.log(53, cache).ok()?;
    let gap = lb
        .scale(&BigRational::from_integer(BigInt::from(exp)))
        .sub(&lc.scale(&BigRational::from_integer(BigInt::from(cexp))));
    Some(gap.to_f64())
}

/// Diagnostic log-scale gap `log(lhs) - cexp*log(c)`.
fn bigint_margin(
    lhs: &BigUint,
    c: &ExactConstant,
    cexp: u64,
    cache: &mut ConstCache,
) -> Option<f64> {
    let ll = log_rational_cached(
        &BigRational::from_integer(BigInt::from(lhs.clone())),
        53,
        cache,
    )
    .ok()?;
    let lc = c.log(53, cache).ok()?;
    let gap = ll.sub(&lc.scale(&BigRational::from_integer(BigInt::from(cexp))));
    Some(gap.to_f64())
}
