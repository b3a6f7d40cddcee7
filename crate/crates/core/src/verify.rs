//! The inequality catalogue: per-index checks, exhaustive range scans, and
//! certified minimal thresholds.
//!
//! Seven predicates over a positive index `n` are served (natural logs,
//! primes 1-indexed):
//!
//! | id           | predicate                                  |
//! |--------------|--------------------------------------------|
//! | `theorem1`   | `n^(n-pi(n)) > c^(p_{n+k})`                |
//! | `corollary1` | `p_1 ... p_n > c^(p_{n+k})`                |
//! | `zhang`      | `p_{n+1}^(n-pi(n)) > 2^(p_{n+1})`          |
//! | `panaitopol` | `p_1 ... p_n > p_{n+1}^(n-pi(n))`          |
//! | `rosser_pi`  | `pi(n) < 1.25506 n / log n`                |
//! | `rosser_pn`  | `p_n < n log(n log n)`                     |
//! | `appendix_a` | `pi(n) < 1.71678 n / log(n log n)`         |
//!
//! `theorem1` and `corollary1` take the parameters `(c, k)`; `zhang` is the
//! fixed instance `c = 2, k = 1` of the stronger base `p_{n+1}`, and the
//! remaining predicates take no parameters.
//!
//! A *minimal threshold* scan combines an exhaustive exact scan up to a cap
//! with the analytic guarantee from the threshold function's zero `x_k`:
//! when the cap reaches `ceil(x_k)`, every index beyond the scan is covered
//! by the guarantee and the report is marked `certified`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::bounds::{
    appendix_constant, default_root_tolerance, find_root, rosser_pi_constant, RootResult,
    ThresholdFunction,
};
use crate::error::{Error, Result};
use crate::exact::{
    compare_bigint_cached, compare_power_cached, CheckVerdict, ExactConstant, Verdict,
};
use crate::interval::{
    log_interval_cached, log_rational_cached, ConstCache, Interval, PrecisionCfg,
};
use crate::prime::PrimeTable;

/// Identifier of one predicate from the catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    Theorem1,
    Corollary1,
    Zhang,
    Panaitopol,
    RosserPi,
    RosserPn,
    AppendixA,
}

impl InequalityId {
    pub const ALL: [InequalityId; 7] = [
        InequalityId::Theorem1,
        InequalityId::Corollary1,
        InequalityId::Zhang,
        InequalityId::Panaitopol,
        InequalityId::RosserPi,
        InequalityId::RosserPn,
        InequalityId::AppendixA,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InequalityId::Theorem1 => "theorem1",
            InequalityId::Corollary1 => "corollary1",
            InequalityId::Zhang => "zhang",
            InequalityId::Panaitopol => "panaitopol",
            InequalityId::RosserPi => "rosser_pi",
            InequalityId::RosserPn => "rosser_pn",
            InequalityId::AppendixA => "appendix_a",
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            InequalityId::Theorem1 => "n^(n-pi(n)) > c^(p_{n+k})",
            InequalityId::Corollary1 => "p_1*...*p_n > c^(p_{n+k})",
            InequalityId::Zhang => "p_{n+1}^(n-pi(n)) > 2^(p_{n+1})",
            InequalityId::Panaitopol => "p_1*...*p_n > p_{n+1}^(n-pi(n))",
            InequalityId::RosserPi => "pi(n) < 1.25506*n/log(n)",
            InequalityId::RosserPn => "p_n < n*log(n*log(n))",
            InequalityId::AppendixA => "pi(n) < 1.71678*n/log(n*log(n))",
        }
    }

    /// Whether the predicate is parameterized by `(c, k)`.
    pub fn takes_ck(&self) -> bool {
        matches!(self, InequalityId::Theorem1 | InequalityId::Corollary1)
    }

    /// Smallest index at which the predicate is meaningful.
    pub fn meaningful_lo(&self) -> u64 {
        match self {
            InequalityId::RosserPn => 1,
            _ => 2,
        }
    }

    /// Largest prime index the predicate reads at index `n` (0 when it only
    /// needs `pi` up to `n`); used for sieve sizing.
    pub fn prime_index_needed(&self, n: u64, k: u64) -> u64 {
        match self {
            InequalityId::Theorem1 | InequalityId::Corollary1 => n + k,
            InequalityId::Zhang | InequalityId::Panaitopol => n + 1,
            InequalityId::RosserPn => n,
            InequalityId::RosserPi | InequalityId::AppendixA => 0,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_lowercase();
        InequalityId::ALL
            .iter()
            .find(|id| id.name() == lower)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown inequality {s:?}")))
    }
}

/// Parameters shared by the checking operations. `c` and `k` must be
/// present exactly for the two parameterized predicates and absent for the
/// rest; `zhang` fixes `c = 2, k = 1` internally.
#[derive(Debug, Clone)]
pub struct InequalityParams<'a> {
    pub table: &'a PrimeTable,
    pub c: Option<ExactConstant>,
    pub k: Option<u64>,
    pub precision: PrecisionCfg,
}

impl<'a> InequalityParams<'a> {
    pub fn new(table: &'a PrimeTable) -> Self {
        InequalityParams {
            table,
            c: None,
            k: None,
            precision: PrecisionCfg::default(),
        }
    }

    pub fn with_ck(mut self, c: ExactConstant, k: u64) -> Self {
        self.c = Some(c);
        self.k = Some(k);
        self
    }

    pub fn with_precision(mut self, precision: PrecisionCfg) -> Self {
        self.precision = precision;
        self
    }

    fn require_ck(&self, id: InequalityId) -> Result<(&ExactConstant, u64)> {
        match (&self.c, self.k) {
            (Some(c), Some(k)) => Ok((c, k)),
            _ => Err(Error::Domain(format!(
                "{id} requires both c and k parameters"
            ))),
        }
    }

    fn validate_for(&self, id: InequalityId) -> Result<()> {
        if id.takes_ck() {
            self.require_ck(id).map(|_| ())
        } else if self.c.is_some() || self.k.is_some() {
            Err(Error::Domain(format!("{id} takes no c or k parameters")))
        } else {
            Ok(())
        }
    }
}

/// Decide one predicate at one index, exactly where the parameters are
/// rational and by certified enclosures otherwise.
pub fn check_inequality(id: InequalityId, n: u64, params: &InequalityParams) -> Result<CheckVerdict> {
    params.validate_for(id)?;
    if n < id.meaningful_lo() {
        return Err(Error::Domain(format!(
            "{id} is meaningful from n = {}, got {n}",
            id.meaningful_lo()
        )));
    }
    let mut cache = ConstCache::new();
    check_core(id, n, params, &mut cache, None)
}

fn check_core(
    id: InequalityId,
    n: u64,
    params: &InequalityParams,
    cache: &mut ConstCache,
    primorial: Option<&BigUint>,
) -> Result<CheckVerdict> {
    let table = params.table;
    let cfg = &params.precision;
    match id {
        InequalityId::Theorem1 => {
            let (c, k) = params.require_ck(id)?;
            let pi = table.prime_count(n)?;
            let pnk = table.nth_prime(n + k)?;
            compare_power_cached(n, n - pi, c, pnk, cfg, cache)
        }
        InequalityId::Corollary1 => {
            let (c, k) = params.require_ck(id)?;
            let pnk = table.nth_prime(n + k)?;
            match primorial {
                Some(prim) => compare_bigint_cached(prim, c, pnk, cfg, cache),
                None => compare_bigint_cached(&table.primorial(n)?, c, pnk, cfg, cache),
            }
        }
        InequalityId::Zhang => {
            let pi = table.prime_count(n)?;
            let pn1 = table.nth_prime(n + 1)?;
            let two = ExactConstant::from_integer(2);
            compare_power_cached(pn1, n - pi, &two, pn1, cfg, cache)
        }
        InequalityId::Panaitopol => {
            let pi = table.prime_count(n)?;
            let pn1 = table.nth_prime(n + 1)?;
            let base = ExactConstant::from_integer(pn1);
            match primorial {
                Some(prim) => compare_bigint_cached(prim, &base, n - pi, cfg, cache),
                None => compare_bigint_cached(&table.primorial(n)?, &base, n - pi, cfg, cache),
            }
        }
        InequalityId::RosserPi => {
            // pi(n) log n < 1.25506 n, an exact-rational right side.
            let pi = table.prime_count(n)?;
            let rhs = rosser_pi_constant() * BigRational::from_integer(BigInt::from(n));
            decide_gap(cfg, cache, |prec, cache| {
                let log_n = log_rational_cached(
                    &BigRational::from_integer(BigInt::from(n)),
                    prec,
                    cache,
                )?;
                let lhs = log_n.scale(&BigRational::from_integer(BigInt::from(pi)));
                Ok(lhs.sub_from_rational(&rhs))
            })
        }
        InequalityId::RosserPn => {
            if n == 1 {
                // n log(n log n) degenerates at n = 1 (log log 1); the bound
                // vacuously fails there.
                return Ok(CheckVerdict {
                    status: Verdict::Fails,
                    precision_used: None,
                    margin: None,
                });
            }
            let pn = table.nth_prime(n)?;
            let pn_rat = BigRational::from_integer(BigInt::from(pn));
            decide_gap(cfg, cache, |prec, cache| {
                let rhs = log_n_log_n(n, prec, cache)?
                    .scale(&BigRational::from_integer(BigInt::from(n)));
                Ok(rhs.add_rational(&-pn_rat.clone()))
            })
        }
        InequalityId::AppendixA => {
            // pi(n) log(n log n) < 1.71678 n.
            let pi = table.prime_count(n)?;
            let rhs = appendix_constant() * BigRational::from_integer(BigInt::from(n));
            decide_gap(cfg, cache, |prec, cache| {
                let lhs = log_n_log_n(n, prec, cache)?
                    .scale(&BigRational::from_integer(BigInt::from(pi)));
                Ok(lhs.sub_from_rational(&rhs))
            })
        }
    }
}

/// Enclosure of `log(n log n) = log n + log log n` for `n >= 2`.
fn log_n_log_n(n: u64, prec: u32, cache: &mut ConstCache) -> Result<Interval> {
    let log_n = log_rational_cached(&BigRational::from_integer(BigInt::from(n)), prec, cache)?;
    if log_n.sign() != Some(Ordering::Greater) {
        return Err(Error::PrecisionExhausted(format!(
            "log {n} not certifiably positive at precision {prec}"
        )));
    }
    let loglog = log_interval_cached(&log_n, prec, cache)?;
    Ok(log_n.add(&loglog))
}

/// Escalating sign decision on a gap enclosure: `Holds` when the gap is
/// certifiably positive, `Fails` when negative, `Undecided` at the cap.
fn decide_gap<F>(cfg: &PrecisionCfg, cache: &mut ConstCache, make: F) -> Result<CheckVerdict>
where
    F: Fn(u32, &mut ConstCache) -> Result<Interval>,
{
    let mut margin = None;
    for prec in cfg.ladder() {
        let gap = match make(prec, cache) {
            Ok(iv) => iv,
            Err(Error::PrecisionExhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        margin = Some(gap.to_f64());
        match gap.sign() {
            Some(Ordering::Greater) => {
                return Ok(CheckVerdict {
                    status: Verdict::Holds,
                    precision_used: Some(prec),
                    margin,
                })
            }
            Some(Ordering::Less) => {
                return Ok(CheckVerdict {
                    status: Verdict::Fails,
                    precision_used: Some(prec),
                    margin,
                })
            }
            _ => {}
        }
    }
    Ok(CheckVerdict {
        status: Verdict::Undecided,
        precision_used: Some(cfg.cap_bits),
        margin,
    })
}

/// Summary of one exhaustive scan.
#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub n_lo: u64,
    pub n_hi: u64,
    pub checked: u64,
    pub failures: Vec<u64>,
    pub undecided: Vec<u64>,
}

impl ScanOutcome {
    pub fn holds_everywhere(&self) -> bool {
        self.failures.is_empty() && self.undecided.is_empty()
    }
}

/// Scan `[n_lo, n_hi]`, collecting every index with a `Fails` or
/// `Undecided` verdict. Ascending order; results are deterministic.
pub fn scan_range(
    id: InequalityId,
    n_lo: u64,
    n_hi: u64,
    params: &InequalityParams,
) -> Result<ScanOutcome> {
    scan_range_with(id, n_lo, n_hi, params, |_, _| {})
}

/// `scan_range`, invoking `visit` with every verdict in index order (used
/// by the CLI's per-row output formats).
pub fn scan_range_with<F>(
    id: InequalityId,
    n_lo: u64,
    n_hi: u64,
    params: &InequalityParams,
    mut visit: F,
) -> Result<ScanOutcome>
where
    F: FnMut(u64, &CheckVerdict),
{
    params.validate_for(id)?;
    if n_lo > n_hi {
        return Err(Error::Domain(format!("empty scan range [{n_lo}, {n_hi}]")));
    }
    if n_lo < id.meaningful_lo() {
        return Err(Error::Domain(format!(
            "{id} is meaningful from n = {}, scan asked for {n_lo}",
            id.meaningful_lo()
        )));
    }
    // Fail fast when the table cannot cover the top of the range.
    let top_index = id.prime_index_needed(n_hi, params.k.unwrap_or(0));
    if top_index > 0 {
        params.table.nth_prime(top_index)?;
    }
    if matches!(id, InequalityId::RosserPi | InequalityId::AppendixA) {
        params.table.prime_count(n_hi)?;
    }

    let mut cache = ConstCache::new();
    let streams_primorial = matches!(
        id,
        InequalityId::Corollary1 | InequalityId::Panaitopol
    );
    let mut running = if streams_primorial {
        Some(params.table.primorial(n_lo)?)
    } else {
        None
    };

    let mut failures = Vec::new();
    let mut undecided = Vec::new();
    for n in n_lo..=n_hi {
        if n > n_lo {
            if let Some(prim) = running.as_mut() {
                *prim *= params.table.nth_prime(n)?;
            }
        }
        let verdict = check_core(id, n, params, &mut cache, running.as_ref())?;
        match verdict.status {
            Verdict::Holds => {}
            Verdict::Fails => failures.push(n),
            Verdict::Undecided => undecided.push(n),
        }
        visit(n, &verdict);
    }
    Ok(ScanOutcome {
        n_lo,
        n_hi,
        checked: n_hi - n_lo + 1,
        failures,
        undecided,
    })
}

/// Certified minimal-threshold report.
///
/// `minimal_n` is the least `N` with the predicate holding on
/// `[N, scan_cap]`, or `None` when even the cap index fails (no stable
/// threshold in range). `certified` is set only when the analytic guarantee
/// covers everything beyond the scan: for `theorem1` once
/// `scan_cap >= ceil(x_k)`, and for `corollary1` additionally requiring a
/// clean `panaitopol` scan over the same range (its proof chain multiplies
/// through that inequality).
#[derive(Debug, Clone)]
pub struct ThresholdReport {
    pub inequality: InequalityId,
    pub c: Option<ExactConstant>,
    pub k: Option<u64>,
    pub scan_cap: u64,
    pub minimal_n: Option<u64>,
    pub failures_below: Vec<u64>,
    pub undecided: Vec<u64>,
    pub analytic: Option<RootResult>,
    pub certified: bool,
    pub diagnostics: Vec<String>,
}

/// Find the minimal threshold of a predicate by exhaustive scan up to
/// `scan_cap`, attaching the analytic root and certification status where
/// the predicate supports it.
pub fn minimal_threshold(
    id: InequalityId,
    params: &InequalityParams,
    scan_cap: u64,
) -> Result<ThresholdReport> {
    params.validate_for(id)?;
    let low = id.meaningful_lo();
    if scan_cap < low {
        return Err(Error::Domain(format!(
            "scan cap {scan_cap} below the smallest meaningful index {low}"
        )));
    }

    let outcome = scan_range(id, low, scan_cap, params)?;
    let worst = outcome
        .failures
        .iter()
        .chain(outcome.undecided.iter())
        .max()
        .copied();
    let minimal_n = match worst {
        None => Some(low),
        Some(w) if w < scan_cap => Some(w + 1),
        Some(_) => None,
    };

    let mut diagnostics = Vec::new();
    if minimal_n.is_none() {
        diagnostics.push(format!(
            "no stable threshold within [{low}, {scan_cap}]: the predicate still fails (or is \
             undecided) at the cap"
        ));
    }

    let mut certified = false;
    let mut analytic = None;
    if id.takes_ck() {
        let (c, k) = params.require_ck(id)?;
        let f = ThresholdFunction::fk(c.clone(), k, &params.precision)?;
        let root = find_root(&f, &default_root_tolerance(), &params.precision)?;
        // The guarantee kicks in strictly beyond the zero x_k, i.e. for
        // every integer n >= floor(x_k) + 1.
        let guarantee_from = &root.analytic_threshold + BigUint::one();
        let cap_reaches_root = BigUint::from(scan_cap) >= guarantee_from;
        if root.monotonicity_violated {
            diagnostics.push(
                "monotonicity spot-check found an earlier sign change; the reported root is the \
                 leftmost crossing"
                    .to_string(),
            );
        }

        let mut chain_ok = true;
        if id == InequalityId::Corollary1 {
            let pan_params = InequalityParams::new(params.table)
                .with_precision(params.precision);
            let pan = scan_range(InequalityId::Panaitopol, 2, scan_cap, &pan_params)?;
            chain_ok = pan.holds_everywhere();
            if chain_ok {
                diagnostics.push(format!(
                    "chain inequality p_1*...*p_n > p_{{n+1}}^(n-pi(n)) verified on [2, {scan_cap}]"
                ));
            } else {
                diagnostics.push(format!(
                    "chain inequality failed within [2, {scan_cap}] at {:?}; certification withheld",
                    pan.failures
                ));
            }
        }

        certified = minimal_n.is_some() && cap_reaches_root && chain_ok;
        if cap_reaches_root {
            diagnostics.push(format!(
                "analytic guarantee: predicate holds for every n >= {guarantee_from} \
                 (= floor(x_k) + 1); the scan covers [{low}, {scan_cap}]"
            ));
            // The guarantee leans on p_m < m log(m log m), which first holds
            // at m = 6; every index it is applied to here is far beyond that.
            let first_valid = first_nth_prime_bound_index(params)?;
            diagnostics.push(format!(
                "nth-prime upper bound valid from index {first_valid} (checked empirically); \
                 guarantee applies it at indices >= {guarantee_from}"
            ));
        } else {
            diagnostics.push(format!(
                "scan cap {scan_cap} does not reach ceil(x_k) = {guarantee_from}; \
                 certification withheld"
            ));
        }
        analytic = Some(root);
    } else {
        diagnostics.push(format!(
            "{id} has no analytic certification path here; the report is scan evidence only"
        ));
    }

    Ok(ThresholdReport {
        inequality: id,
        c: params.c.clone(),
        k: params.k,
        scan_cap,
        minimal_n,
        failures_below: outcome.failures,
        undecided: outcome.undecided,
        analytic,
        certified,
        diagnostics,
    })
}

/// First index from which `p_m < m log(m log m)` holds, determined by a
/// small scan (it fails for m <= 5 and holds from m = 6 on).
fn first_nth_prime_bound_index(params: &InequalityParams) -> Result<u64> {
    let probe = InequalityParams::new(params.table).with_precision(params.precision);
    let hi = 64.min(params.table.num_primes());
    let outcome = scan_range(InequalityId::RosserPn, 1, hi, &probe)?;
    let last_fail = outcome.failures.iter().max().copied().unwrap_or(0);
    Ok(last_fail + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_constant;

    fn table() -> PrimeTable {
        PrimeTable::new(5_000).unwrap()
    }

    fn plain<'a>(t: &'a PrimeTable) -> InequalityParams<'a> {
        InequalityParams::new(t)
    }

    fn with_c2k1<'a>(t: &'a PrimeTable) -> InequalityParams<'a> {
        InequalityParams::new(t).with_ck(parse_constant("2").unwrap(), 1)
    }

    #[test]
    fn zhang_flips_exactly_at_twenty() {
        let t = table();
        let p = plain(&t);
        assert_eq!(
            check_inequality(InequalityId::Zhang, 19, &p).unwrap().status,
            Verdict::Fails
        );
        assert_eq!(
            check_inequality(InequalityId::Zhang, 20, &p).unwrap().status,
            Verdict::Holds
        );
    }

    #[test]
    fn panaitopol_holds_from_two() {
        let t = table();
        let p = plain(&t);
        // 2*3 = 6 > 5^(2-1) = 5
        assert_eq!(
            check_inequality(InequalityId::Panaitopol, 2, &p).unwrap().status,
            Verdict::Holds
        );
    }

    #[test]
    fn corollary_with_c_two_flips_at_ten() {
        let t = table();
        let p = with_c2k1(&t);
        // primorial(9) = 223092870 < 2^29; primorial(10) = 6469693230 > 2^31
        assert_eq!(
            check_inequality(InequalityId::Corollary1, 9, &p).unwrap().status,
            Verdict::Fails
        );
        assert_eq!(
            check_inequality(InequalityId::Corollary1, 10, &p).unwrap().status,
            Verdict::Holds
        );
    }

    #[test]
    fn nth_prime_bound_fails_up_to_five_and_holds_after() {
        let t = table();
        let p = plain(&t);
        let outcome = scan_range(InequalityId::RosserPn, 1, 100, &p).unwrap();
        assert_eq!(outcome.failures, alloc::vec![1, 2, 3, 4, 5]);
        assert!(outcome.undecided.is_empty());
        // n = 2 documented: 3 > 2 log(2 log 2) = 0.653...
        let v = check_inequality(InequalityId::RosserPn, 2, &p).unwrap();
        assert_eq!(v.status, Verdict::Fails);
        assert!(v.margin.unwrap() < 0.0);
    }

    #[test]
    fn pi_bound_holds_everywhere_at_desk_scale_even_at_113() {
        let t = table();
        let p = plain(&t);
        let outcome = scan_range(InequalityId::RosserPi, 2, 2_000, &p).unwrap();
        assert!(outcome.holds_everywhere(), "failures: {:?}", outcome.failures);
        // The famously tight index: pi(113) = 30 vs 1.25506*113/log 113.
        let v = check_inequality(InequalityId::RosserPi, 113, &p).unwrap();
        assert_eq!(v.status, Verdict::Holds);
        assert!(v.margin.unwrap() < 2e-4, "margin {:?}", v.margin);
    }

    #[test]
    fn appendix_bound_holds_on_a_desk_scale_scan() {
        let t = table();
        let p = plain(&t);
        let outcome = scan_range(InequalityId::AppendixA, 2, 2_000, &p).unwrap();
        assert!(outcome.holds_everywhere(), "failures: {:?}", outcome.failures);
    }

    #[test]
    fn zhang_scan_failure_set_is_an_initial_segment() {
        let t = table();
        let p = plain(&t);
        let outcome = scan_range(InequalityId::Zhang, 2, 100, &p).unwrap();
        let expect: Vec<u64> = (2..=19).collect();
        assert_eq!(outcome.failures, expect);
        assert!(outcome.undecided.is_empty());
    }

    #[test]
    fn theorem_dominates_zhang_and_chain_implies_corollary() {
        let t = table();
        let ck = with_c2k1(&t);
        let p = plain(&t);
        for n in 2..=400u64 {
            let th = check_inequality(InequalityId::Theorem1, n, &ck).unwrap().status;
            let zh = check_inequality(InequalityId::Zhang, n, &p).unwrap().status;
            let pan = check_inequality(InequalityId::Panaitopol, n, &p).unwrap().status;
            let cor = check_inequality(InequalityId::Corollary1, n, &ck).unwrap().status;
            if th == Verdict::Holds {
                assert_eq!(zh, Verdict::Holds, "dominance broken at n = {n}");
            }
            if th == Verdict::Holds && pan == Verdict::Holds {
                assert_eq!(cor, Verdict::Holds, "chain broken at n = {n}");
            }
        }
    }

    #[test]
    fn theorem_is_monotone_in_c_and_k() {
        let t = table();
        for n in [30u64, 100, 350, 360, 500] {
            // Smaller c can only help.
            let big = InequalityParams::new(&t).with_ck(parse_constant("2").unwrap(), 1);
            let small = InequalityParams::new(&t).with_ck(parse_constant("3/2").unwrap(), 1);
            let vb = check_inequality(InequalityId::Theorem1, n, &big).unwrap().status;
            let vs = check_inequality(InequalityId::Theorem1, n, &small).unwrap().status;
            if vb == Verdict::Holds {
                assert_eq!(vs, Verdict::Holds, "c-monotonicity broken at n = {n}");
            }
            // Smaller k can only help.
            let k2 = InequalityParams::new(&t).with_ck(parse_constant("2").unwrap(), 2);
            let vk2 = check_inequality(InequalityId::Theorem1, n, &k2).unwrap().status;
            if vk2 == Verdict::Holds {
                assert_eq!(vb, Verdict::Holds, "k-monotonicity broken at n = {n}");
            }
        }
    }

    #[test]
    fn parameter_validation_is_strict_both_ways() {
        let t = table();
        let p = plain(&t);
        assert!(matches!(
            check_inequality(InequalityId::Theorem1, 10, &p),
            Err(Error::Domain(_))
        ));
        let ck = with_c2k1(&t);
        assert!(matches!(
            check_inequality(InequalityId::Zhang, 10, &ck),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            check_inequality(InequalityId::Zhang, 1, &p),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn scans_surface_range_errors_from_small_tables() {
        let t = PrimeTable::new(50).unwrap();
        let p = plain(&t);
        assert!(matches!(
            scan_range(InequalityId::Zhang, 2, 1_000, &p),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn corollary_minimal_threshold_is_ten_and_certified() {
        let t = PrimeTable::new(200_000).unwrap();
        let params = with_c2k1(&t);
        let report = minimal_threshold(InequalityId::Corollary1, &params, 10_000).unwrap();
        assert_eq!(report.minimal_n, Some(10));
        assert!(report.certified);
        assert_eq!(report.failures_below.iter().max(), Some(&9));
        assert!(report.undecided.is_empty());
        let root = report.analytic.as_ref().unwrap();
        assert!(BigUint::from(10_000u32) > root.analytic_threshold.clone());
    }

    #[test]
    fn zhang_minimal_threshold_reports_scan_evidence_only() {
        let t = table();
        let p = plain(&t);
        let report = minimal_threshold(InequalityId::Zhang, &p, 200).unwrap();
        assert_eq!(report.minimal_n, Some(20));
        assert!(!report.certified);
        assert!(report.analytic.is_none());
    }

    #[test]
    fn threshold_without_stable_point_reports_none() {
        // theorem1 with c = 5/2 fails everywhere at desk scale.
        let t = table();
        let params = InequalityParams::new(&t).with_ck(parse_constant("5/2").unwrap(), 1);
        let report = minimal_threshold(InequalityId::Theorem1, &params, 300).unwrap();
        assert_eq!(report.minimal_n, None);
        assert!(!report.certified);
        assert!(report
            .diagnostics
            .iter()
            .any(|d| d.contains("no stable threshold")));
    }

    #[test]
    fn threshold_is_stable_under_larger_caps() {
        let t = PrimeTable::new(60_000).unwrap();
        let params = with_c2k1(&t);
        let small = minimal_threshold(InequalityId::Corollary1, &params, 500).unwrap();
        let large = minimal_threshold(InequalityId::Corollary1, &params, 2_000).unwrap();
        assert_eq!(small.minimal_n, Some(10));
        assert_eq!(large.minimal_n, Some(10));
        // Not yet certified at cap 500 (the analytic root is ~8.7e3).
        assert!(!small.certified);
    }

    #[test]
    fn inequality_ids_round_trip_through_strings() {
        for id in InequalityId::ALL {
            let parsed: InequalityId = id.name().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert!("nonsense".parse::<InequalityId>().is_err());
    }
}
