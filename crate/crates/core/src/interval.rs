//! Certified real arithmetic: intervals with exact rational endpoints and
//! directed-rounded enclosures of `log` and `exp`.
//!
//! Every enclosure returned here *contains* the true real value; rounding in
//! the series evaluations only ever widens the interval outward. Rational
//! interval operations (`add`, `mul`, ...) are exact, so soundness of a
//! computed sign reduces to soundness of the transcendental enclosures.
//!
//! Logarithms are natural throughout. `log(x)` is computed by reducing
//! `x = m * 2^s` with `m` in `[3/4, 3/2)`, so that
//! `log m = 2 atanh((m-1)/(m+1))` with `|t| <= 1/5`, and summing the atanh
//! series in fixed-point integer arithmetic with an explicit ulp error
//! budget. Inputs much wider than the working precision are first bracketed
//! by a dyadic mantissa, which keeps the cost of `log` independent of the
//! operand's bit length (primorials with hundreds of kilobits are fine).

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Escalation policy for enclosure-based decisions: start at `start_bits`
/// and double until `cap_bits`, then give up (`Undecided` or an error,
/// depending on the caller).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionCfg {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for PrecisionCfg {
    fn default() -> Self {
        PrecisionCfg {
            start_bits: 64,
            cap_bits: 4096,
        }
    }
}

impl PrecisionCfg {
    pub fn new(start_bits: u32, cap_bits: u32) -> Self {
        PrecisionCfg {
            start_bits: start_bits.max(8),
            cap_bits: cap_bits.max(start_bits.max(8)),
        }
    }

    /// Precision ladder: `start, 2*start, 4*start, ..., cap` (cap always
    /// included as the last rung).
    pub fn ladder(&self) -> Vec<u32> {
        let mut rungs = Vec::new();
        let mut p = self.start_bits.max(8).min(self.cap_bits);
        loop {
            rungs.push(p);
            if p >= self.cap_bits {
                break;
            }
            p = p.saturating_mul(2).min(self.cap_bits);
        }
        rungs
    }
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn add_rational(&self, r: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + r,
            hi: &self.hi + r,
        }
    }

    /// `r - self`.
    pub fn sub_from_rational(&self, r: &BigRational) -> Interval {
        Interval {
            lo: r - &self.hi,
            hi: r - &self.lo,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, r: &BigRational) -> Interval {
        if r.is_negative() {
            Interval {
                lo: &self.hi * r,
                hi: &self.lo * r,
            }
        } else {
            Interval {
                lo: &self.lo * r,
                hi: &self.hi * r,
            }
        }
    }

    /// `1 / self`. Errors when the interval contains zero.
    pub fn recip(&self) -> Result<Interval> {
        if self.contains_zero() {
            return Err(Error::Domain(
                "reciprocal of an interval containing zero".to_string(),
            ));
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        self.lo <= *r && *r <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Certified sign: `Greater` when the whole interval is positive,
    /// `Less` when it is negative, `None` when zero cannot be excluded.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Certified comparison against an exact rational: the answer is the
    /// ordering of the *true* enclosed value relative to `r`, when the
    /// enclosure suffices to determine it.
    pub fn cmp_rational(&self, r: &BigRational) -> Option<Ordering> {
        if self.hi < *r {
            Some(Ordering::Less)
        } else if self.lo > *r {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Round both endpoints outward to the dyadic grid `k / 2^bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }
}

fn dyadic_floor(r: &BigRational, bits: u32) -> BigRational {
    let scaled = (r.numer() << bits).div_floor_ref(r.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

fn dyadic_ceil(r: &BigRational, bits: u32) -> BigRational {
    let scaled = div_ceil_big(&(r.numer() << bits), r.denom());
    BigRational::new(scaled, BigInt::one() << bits)
}

trait DivFloorRef {
    fn div_floor_ref(&self, d: &BigInt) -> BigInt;
}

impl DivFloorRef for BigInt {
    fn div_floor_ref(&self, d: &BigInt) -> BigInt {
        num_integer::Integer::div_floor(self, d)
    }
}

fn div_ceil_big(n: &BigInt, d: &BigInt) -> BigInt {
    -num_integer::Integer::div_floor(&-n.clone(), d)
}

/// Memoized high-precision constants (`log 2`, `e`) keyed by working
/// precision. One cache is threaded through each long-running computation so
/// scans do not re-derive `log 2` per step.
#[derive(Debug, Default)]
pub(crate) struct ConstCache {
    /// Scaled integer bounds `(lo, hi)` of `log 2 * 2^wbits`, keyed by wbits.
    log2: BTreeMap<u32, (BigInt, BigInt)>,
    /// Enclosures of `e`, keyed by precision.
    e: BTreeMap<u32, Interval>,
}

impl ConstCache {
    pub(crate) fn new() -> Self {
        ConstCache::default()
    }

    fn log2_scaled(&mut self, wbits: u32) -> (BigInt, BigInt) {
        if let Some(b) = self.log2.get(&wbits) {
            return b.clone();
        }
        // log 2 = 2 atanh(1/3)
        let (lo, hi) = atanh_scaled(&BigInt::one(), &BigInt::from(3u32), wbits);
        let bounds = (lo << 1u32, hi << 1u32);
        self.log2.insert(wbits, bounds.clone());
        bounds
    }
}

/// Scaled-integer enclosure of `atanh(tn/td)` for `|tn/td| <= 1/3`, `td > 0`:
/// returns `(lo, hi)` with `lo/2^wbits <= atanh(t) <= hi/2^wbits`.
///
/// The series `sum_{odd j} t^j / j` is summed with floor divisions, so the
/// running sum underestimates; an explicit ulp budget (per-term rounding plus
/// the geometric tail) is added back on the upper side.
fn atanh_scaled(tn: &BigInt, td: &BigInt, wbits: u32) -> (BigInt, BigInt) {
    debug_assert!(td.is_positive());
    let (negative, ta) = match tn.sign() {
        Sign::NoSign => return (BigInt::zero(), BigInt::zero()),
        Sign::Plus => (false, tn.clone()),
        Sign::Minus => (true, -tn),
    };
    debug_assert!(&ta * 3u32 <= *td, "atanh argument out of contract");

    let t2n = &ta * &ta;
    let t2d = td * td;
    let mut pw = (ta << wbits) / td; // floor(|t| * 2^w)
    let mut sum = pw.clone(); // j = 1 term
    let mut j: u64 = 1;
    let mut terms: u64 = 1;
    loop {
        j += 2;
        terms += 1;
        pw = &pw * &t2n / &t2d;
        let jbig = BigInt::from(j);
        if pw < jbig {
            // Remaining tail <= t^j / (j (1 - t^2)), evaluated in ulps with
            // the accumulated power-term error folded in.
            let tail = (&pw + BigInt::from(2 * terms)) * &t2d / ((&t2d - &t2n) * jbig)
                + BigInt::from(2u32);
            let err = tail + BigInt::from(3 * terms + 3);
            let hi = &sum + err;
            return if negative { (-hi, -sum) } else { (sum, hi) };
        }
        sum += &pw / jbig;
        debug_assert!(terms < 1_000_000, "atanh series failed to converge");
    }
}

/// Enclosure of `log(p/q * 2^extra_exp)` for positive `p`, `q` of size
/// comparable to the working precision.
fn log_core(
    p: &BigInt,
    q: &BigInt,
    extra_exp: i64,
    prec: u32,
    cache: &mut ConstCache,
) -> Interval {
    debug_assert!(p.is_positive() && q.is_positive());
    let w = prec + 32;

    // Choose s with m = (p/q) * 2^-s in [3/4, 3/2).
    let mut s = p.bits() as i64 - q.bits() as i64;
    let (mut pp, mut qq) = if s >= 0 {
        (p.clone(), q << s as u64)
    } else {
        (p << (-s) as u64, q.clone())
    };
    // m in [1/2, 2) so far; one halving/doubling lands it in [3/4, 3/2).
    if &pp * 4u32 < &qq * 3u32 {
        s -= 1;
        pp <<= 1u32;
    } else if &pp * 2u32 >= &qq * 3u32 {
        s += 1;
        qq <<= 1u32;
    }
    debug_assert!(&pp * 4u32 >= &qq * 3u32 && &pp * 2u32 < &qq * 3u32);

    let tn = &pp - &qq;
    let td = pp + qq;
    let (alo, ahi) = atanh_scaled(&tn, &td, w);
    let mut lo = alo << 1u32;
    let mut hi = ahi << 1u32;

    let s_total = s + extra_exp;
    if s_total != 0 {
        // log2 at 64 guard bits finer, so |s_total| * width(log2) stays
        // below one ulp of the working scale after shifting down.
        let w2 = w + 64;
        let (l2lo, l2hi) = cache.log2_scaled(w2);
        let st = BigInt::from(s_total);
        let (term_lo, term_hi) = if s_total > 0 {
            (&st * l2lo, &st * l2hi)
        } else {
            (&st * l2hi, &st * l2lo)
        };
        lo += shr_floor(&term_lo, 64);
        hi += shr_ceil(&term_hi, 64) + BigInt::one();
    }

    let denom = BigInt::one() << w;
    Interval::new(
        BigRational::new(lo, denom.clone()),
        BigRational::new(hi, denom),
    )
}

fn shr_floor(v: &BigInt, bits: u32) -> BigInt {
    // BigInt's shift-right already rounds toward negative infinity.
    v >> bits
}

fn shr_ceil(v: &BigInt, bits: u32) -> BigInt {
    -((-v) >> bits)
}

/// Enclosure of `log x` for a positive rational `x`, with relative width
/// contract `hi - lo <= 2^(1-prec) * max(1, |log x|)`.
///
/// Operands wider than the working precision are first bracketed between
/// consecutive dyadic mantissas, so the cost is independent of the bit
/// length of `x`.
pub(crate) fn log_rational_cached(
    x: &BigRational,
    prec: u32,
    cache: &mut ConstCache,
) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain("log requires a positive argument".to_string()));
    }
    let p = x.numer();
    let q = x.denom();
    let moderate = (prec as u64) + 96;
    if p.bits() <= moderate && q.bits() <= moderate {
        return Ok(log_core(p, q, 0, prec, cache));
    }

    // Compress: m * 2^e <= x < (m+1) * 2^e with a (prec + 64)-bit mantissa.
    let target = prec as i64 + 64;
    let e = (p.bits() as i64 - q.bits() as i64) - target;
    let m = if e >= 0 {
        p / (q << e as u64)
    } else {
        (p << (-e) as u64) / q
    };
    debug_assert!(m.is_positive());
    let lo = log_core(&m, &BigInt::one(), e, prec, cache);
    let hi = log_core(&(&m + 1u32), &BigInt::one(), e, prec, cache);
    Ok(Interval::new(lo.lo, hi.hi))
}

/// Enclosure of `log` over a positive interval, using monotonicity and the
/// mean-value bound `log hi <= log lo + (hi - lo)/lo` to avoid evaluating the
/// series at both endpoints.
pub(crate) fn log_interval_cached(
    iv: &Interval,
    prec: u32,
    cache: &mut ConstCache,
) -> Result<Interval> {
    if !iv.lo.is_positive() {
        return Err(Error::Domain(
            "log over an interval requires a positive lower bound".to_string(),
        ));
    }
    let base = log_rational_cached(&iv.lo, prec, cache)?;
    let w = iv.width();
    if w.is_zero() {
        return Ok(base);
    }
    let slack = &w / &iv.lo;
    Ok(Interval::new(base.lo, base.hi + slack))
}

/// Enclosure of `exp x` for rational `|x| <= 8` (all this crate needs is
/// `e` and `e^e`; the bound keeps the series' error analysis honest).
pub(crate) fn exp_rational(x: &BigRational, prec: u32) -> Result<Interval> {
    let limit = BigRational::from_integer(BigInt::from(8));
    if x.abs() > limit {
        return Err(Error::Resource(
            "exp argument outside supported range |x| <= 8".to_string(),
        ));
    }
    if x.is_negative() {
        return exp_rational(&-x.clone(), prec)?.recip();
    }

    let w = prec + 32;
    let pn = x.numer().clone();
    let qn = x.denom().clone();
    let mut term = BigInt::one() << w;
    let mut sum = term.clone();
    let mut j: u64 = 0;
    loop {
        j += 1;
        term = &term * &pn / (&qn * BigInt::from(j));
        // Safe to stop once the computed term vanishes and j >= 2x, where the
        // true term ratio x/(j+1) has dropped below 1/2.
        if term.is_zero() && BigInt::from(j) * x.denom() >= x.numer() << 1u32 {
            break;
        }
        sum += &term;
        debug_assert!(j < 1_000_000, "exp series failed to converge");
    }
    // Floor divisions underestimate every term, so `sum` is a sound lower
    // bound. Upward, each of the <= j dropped ulps is amplified by at most
    // prod_{m <= x} x/m <= 8^8/8! < 2^9 while the terms still grow, and the
    // tail beyond the stopping point is below the same budget; 2^10 (j + 2)
    // ulps covers both with room to spare.
    let err = BigInt::from(j + 2) << 10u32;
    let denom = BigInt::one() << w;
    Ok(Interval::new(
        BigRational::new(sum.clone(), denom.clone()),
        BigRational::new(sum + err, denom),
    ))
}

/// Enclosure of `e`.
pub(crate) fn e_cached(prec: u32, cache: &mut ConstCache) -> Interval {
    if let Some(iv) = cache.e.get(&prec) {
        return iv.clone();
    }
    let iv = exp_rational(&BigRational::one(), prec)
        .expect("exp(1) is within the supported range");
    cache.e.insert(prec, iv.clone());
    iv
}

/// Enclosure of `exp` over an interval (monotone, so endpoint images).
pub(crate) fn exp_interval(iv: &Interval, prec: u32) -> Result<Interval> {
    let lo = exp_rational(&iv.lo, prec)?;
    let hi = exp_rational(&iv.hi, prec)?;
    Ok(Interval::new(lo.lo, hi.hi))
}
