//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `--nocapture`) and failing the build when its criterion is
//! not met.
//!
//! Three checks document findings rather than passing: the `1.71678`
//! identity tolerance (criterion 5, true gap ~9.23e-6 vs the stated 5e-6),
//! the `f_k(10^12)` limit tolerance (criterion 7, true gap ~0.129 vs the
//! stated 1e-2), and the `c = 5/2` thresholds (criterion 8, whose analytic
//! root ~9e25 puts an exhaustive scan beyond any feasible computation).
//! Each failure message carries the measured values.

use std::cmp::Ordering;
use std::str::FromStr;

use primebound_core::bounds::{
    audit_constants, eval_f_appendix, eval_fk, find_root, ThresholdFunction,
};
use primebound_core::exact::{
    compare_power_vs_power, log_enclosure, parse_constant, ExactConstant,
};
use primebound_core::num_bigint::{BigInt, BigUint};
use primebound_core::num_rational::BigRational;
use primebound_core::num_traits::{One, Signed, ToPrimitive};
use primebound_core::verify::{
    check_inequality, minimal_threshold, scan_range, scan_range_with, InequalityId,
    InequalityParams,
};
use primebound_core::{PrecisionCfg, PrimeTable, Verdict};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Deterministic test RNG (splitmix64).
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn in_range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.next_u64() % (hi - lo + 1)
    }
}

fn conclude(criterion: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("{criterion}: PASS");
    } else {
        println!("{criterion}: FAIL");
        for p in &problems {
            println!("  - {p}");
        }
        panic!("{criterion} failed:\n{}", problems.join("\n"));
    }
}

#[test]
fn criterion_1_zhang_reproduction() {
    let mut problems = Vec::new();
    let table = PrimeTable::new(210_000).expect("sieve");
    let params = InequalityParams::new(&table);
    let outcome = scan_range(InequalityId::Zhang, 2, 10_000, &params).expect("scan");

    if !outcome.undecided.is_empty() {
        problems.push(format!(
            "exact path produced undecided verdicts at {:?}",
            outcome.undecided
        ));
    }
    if !outcome.failures.iter().any(|&n| n < 20) {
        problems.push("expected at least one failure below 20".to_string());
    }
    let late: Vec<u64> = outcome.failures.iter().copied().filter(|&n| n >= 20).collect();
    if !late.is_empty() {
        problems.push(format!("failures at n >= 20: {late:?}"));
    }
    println!(
        "  zhang over [2, 10^4]: failures exactly {:?}",
        outcome.failures
    );
    conclude("criterion 1 (zhang reproduction)", problems);
}

#[test]
fn criterion_2_corollary_reproduction() {
    let mut problems = Vec::new();
    let table = PrimeTable::new(210_000).expect("sieve");
    let params =
        InequalityParams::new(&table).with_ck(parse_constant("2").expect("c"), 1);
    let report =
        minimal_threshold(InequalityId::Corollary1, &params, 10_000).expect("threshold");

    if report.minimal_n != Some(10) {
        problems.push(format!("minimal_n = {:?}, expected Some(10)", report.minimal_n));
    }
    if !report.undecided.is_empty() {
        problems.push(format!("undecided verdicts at {:?}", report.undecided));
    }
    if report.failures_below.iter().any(|&n| n >= 10) {
        problems.push(format!(
            "failures inside [10, 10^4]: {:?}",
            report
                .failures_below
                .iter()
                .filter(|&&n| n >= 10)
                .collect::<Vec<_>>()
        ));
    }
    if !report.certified {
        problems.push("report not certified despite cap beyond the analytic root".to_string());
    }
    conclude("criterion 2 (corollary reproduction)", problems);
}

#[test]
fn criterion_3_panaitopol_desk_scale() {
    let mut problems = Vec::new();
    let table = PrimeTable::new(60_000).expect("sieve");
    let params = InequalityParams::new(&table);
    let outcome = scan_range(InequalityId::Panaitopol, 2, 5_000, &params).expect("scan");
    if !outcome.holds_everywhere() {
        problems.push(format!(
            "failures {:?}, undecided {:?}",
            outcome.failures, outcome.undecided
        ));
    }
    conclude("criterion 3 (panaitopol desk scale)", problems);
}

#[test]
fn criterion_4_appendix_root() {
    let mut problems = Vec::new();
    let cfg = PrecisionCfg::default();
    let tol = rat(1, 1_000_000);
    let root = find_root(&ThresholdFunction::appendix(), &tol, &cfg).expect("root");

    if root.root < rat(7_438, 100) || root.root > rat(7_440, 100) {
        problems.push(format!(
            "root {} outside [74.38, 74.40]",
            root.root_f64()
        ));
    }
    // Rigorous sign change across the returned bracket.
    let at_lo = eval_f_appendix(&root.bracket_lo, 128).expect("eval lo");
    let at_hi = eval_f_appendix(&root.bracket_hi, 128).expect("eval hi");
    if at_lo.sign() != Some(Ordering::Less) {
        problems.push("bracket_lo sign not certifiably negative".to_string());
    }
    if at_hi.sign() != Some(Ordering::Greater) {
        problems.push("bracket_hi sign not certifiably positive".to_string());
    }
    println!(
        "  appendix root = {:.9}, bracket width {:.3e}",
        root.root_f64(),
        root.width_f64()
    );
    conclude("criterion 4 (appendix root)", problems);
}

#[test]
fn criterion_5_constants_audit() {
    let mut problems = Vec::new();
    let audit = audit_constants(&PrecisionCfg::default());

    for finding in &audit.findings {
        println!(
            "  {}: {} — {}",
            finding.name,
            if finding.passed { "pass" } else { "FAIL" },
            finding.detail
        );
        if !finding.passed {
            problems.push(format!("{}: {}", finding.name, finding.detail));
        }
    }
    conclude("criterion 5 (constants audit)", problems);
}

#[test]
fn criterion_6_appendix_bound_scan_to_1e6() {
    let mut problems = Vec::new();
    let table = PrimeTable::new(1_000_000).expect("sieve");
    let params = InequalityParams::new(&table);
    let outcome = scan_range(InequalityId::AppendixA, 2, 1_000_000, &params).expect("scan");
    if !outcome.holds_everywhere() {
        problems.push(format!(
            "failures {:?}, undecided {:?}",
            outcome.failures, outcome.undecided
        ));
    }
    conclude("criterion 6 (appendix inequality to 10^6)", problems);
}

#[test]
fn criterion_7_limit_property_at_1e12() {
    let mut problems = Vec::new();
    let c = parse_constant("2").expect("c");
    let x = BigRational::from_integer(BigInt::from(10u64.pow(12)));
    let limit = log_enclosure(&rat(2, 1), 160)
        .expect("log 2")
        .sub_from_rational(&BigRational::one()); // 1 - log 2
    let tol = rat(1, 100);

    for k in [0u64, 1, 5, 10] {
        let fk = eval_fk(&x, &c, k, 160).expect("eval");
        let diff = fk.sub(&limit);
        let gap_hi = diff.lo().abs().max(diff.hi().abs());
        let within = gap_hi < tol;
        println!(
            "  |f_{k}(10^12) - (1 - log 2)| = {:.6} (required < 0.01)",
            diff.to_f64().abs()
        );
        if !within {
            problems.push(format!(
                "k = {k}: |f_k(10^12) - (1 - log 2)| = {:.6}, not below 0.01; the correction \
                 terms decay like log log x / log x, so closeness of 0.01 first occurs near \
                 x ~ e^565, far beyond 10^12",
                diff.to_f64().abs()
            ));
        }
    }
    conclude("criterion 7 (limit property at 10^12)", problems);
}

/// Scan cap beyond which an exhaustive certification is treated as
/// infeasible on desk hardware (the c = 5/2 analytic roots are ~9e25).
const FEASIBLE_SCAN_CAP: u64 = 1_000_000;

#[test]
fn criterion_8_theorem_end_to_end() {
    let mut problems = Vec::new();
    let cfg = PrecisionCfg::default();
    // Covers p_m for m up to 10 * cap(c=2, k=3) + margin.
    let table = PrimeTable::new(2_600_000).expect("sieve");
    let mut rng = SplitMix64(0x0dd5_eed5);

    for c_text in ["3/2", "2", "5/2"] {
        for k in [0u64, 1, 3] {
            let label = format!("c = {c_text}, k = {k}");
            let c = parse_constant(c_text).expect("c");
            let f = ThresholdFunction::fk(c.clone(), k, &cfg).expect("fk");
            let root = find_root(&f, &rat(1, 1_000), &cfg).expect("root");
            let ceil_root = &root.analytic_threshold + BigUint::one();

            let cap = match ceil_root.to_u64() {
                Some(cap) if cap <= FEASIBLE_SCAN_CAP => cap,
                _ => {
                    problems.push(format!(
                        "{label}: analytic root x_k ~ {:.4e} requires scanning to ceil(x_k) = \
                         {ceil_root} and sieving near p_m for m ~ 1e26; no feasible computation \
                         can certify this combination exhaustively",
                        root.root_f64()
                    ));
                    println!("  {label}: x_k ~ {:.4e} — certification infeasible", root.root_f64());
                    continue;
                }
            };

            let params = InequalityParams::new(&table).with_ck(c.clone(), k);
            let report = match minimal_threshold(InequalityId::Theorem1, &params, cap) {
                Ok(r) => r,
                Err(e) => {
                    problems.push(format!("{label}: minimal_threshold failed: {e}"));
                    continue;
                }
            };
            let minimal = match (report.certified, report.minimal_n) {
                (true, Some(m)) => m,
                _ => {
                    problems.push(format!(
                        "{label}: expected a certified report with a stable threshold, got \
                         certified = {}, minimal_n = {:?}",
                        report.certified, report.minimal_n
                    ));
                    continue;
                }
            };
            println!(
                "  {label}: x_k ~ {:.4}, scan cap {cap}, minimal_n = {minimal}, certified",
                root.root_f64()
            );

            // Post-hoc: theorem holds at 50 random points past the threshold.
            for _ in 0..50 {
                let n = rng.in_range(minimal + 1, 10 * minimal);
                let v = check_inequality(InequalityId::Theorem1, n, &params).expect("check");
                if v.status != Verdict::Holds {
                    problems.push(format!("{label}: post-hoc check fails at n = {n}"));
                }
            }

            // Consistency chain and dominance over the scanned range.
            let mut th1 = Vec::with_capacity(cap as usize);
            scan_range_with(InequalityId::Theorem1, 2, cap, &params, |_, v| {
                th1.push(v.status)
            })
            .expect("theorem1 verdicts");
            let plain = InequalityParams::new(&table);
            let mut pan = Vec::with_capacity(cap as usize);
            scan_range_with(InequalityId::Panaitopol, 2, cap, &plain, |_, v| {
                pan.push(v.status)
            })
            .expect("panaitopol verdicts");
            let mut cor = Vec::with_capacity(cap as usize);
            scan_range_with(InequalityId::Corollary1, 2, cap, &params, |_, v| {
                cor.push(v.status)
            })
            .expect("corollary1 verdicts");
            for (i, ((&t, &p), &co)) in th1.iter().zip(&pan).zip(&cor).enumerate() {
                let n = i as u64 + 2;
                if t == Verdict::Holds && p == Verdict::Holds && co != Verdict::Holds {
                    problems.push(format!("{label}: consistency chain broken at n = {n}"));
                }
            }
            if c_text == "2" && k == 1 {
                let mut zh = Vec::with_capacity(cap as usize);
                scan_range_with(InequalityId::Zhang, 2, cap, &plain, |_, v| {
                    zh.push(v.status)
                })
                .expect("zhang verdicts");
                for (i, (&t, &z)) in th1.iter().zip(&zh).enumerate() {
                    let n = i as u64 + 2;
                    if t == Verdict::Holds && z != Verdict::Holds {
                        problems.push(format!("dominance broken at n = {n}"));
                    }
                }
            }
        }
    }
    conclude("criterion 8 (theorem end to end)", problems);
}

#[test]
fn criterion_9_oracle_equivalence() {
    let mut problems = Vec::new();

    // Prime table vs trial division, exactly, for limit 1e5.
    let limit = 100_000u64;
    let table = PrimeTable::new(limit).expect("sieve");
    let is_prime = |n: u64| {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    };
    let oracle: Vec<u64> = (2..=limit).filter(|&n| is_prime(n)).collect();
    if table.primes() != oracle.as_slice() {
        problems.push("prime list differs from trial division".to_string());
    }
    let mut pi = 0u64;
    let mut oracle_iter = oracle.iter().peekable();
    for x in 1..=limit {
        if oracle_iter.peek() == Some(&&x) {
            pi += 1;
            oracle_iter.next();
        }
        if table.prime_count(x).expect("pi") != pi {
            problems.push(format!("pi({x}) mismatch"));
            break;
        }
    }
    let mut primo = BigUint::one();
    for n in 1..=40u64 {
        primo *= oracle[n as usize - 1];
        if table.primorial(n).expect("primorial") != primo {
            problems.push(format!("primorial({n}) mismatch"));
            break;
        }
    }

    // Comparator vs native integer arithmetic on 1000 random small triples.
    let cfg = PrecisionCfg::default();
    let mut rng = SplitMix64(0xace0_fba5e);
    for trial in 0..1_000 {
        let base = rng.in_range(2, 30);
        let exp = rng.in_range(0, 12);
        let p = rng.in_range(1, 10);
        let q = rng.in_range(1, 10);
        let cexp = rng.in_range(0, 12);
        let lhs = (base as u128).pow(exp as u32) * (q as u128).pow(cexp as u32);
        let rhs = (p as u128).pow(cexp as u32);
        let expect = if lhs > rhs { Verdict::Holds } else { Verdict::Fails };
        let c = ExactConstant::rational(rat(p as i64, q as i64));
        let got = compare_power_vs_power(base, exp, &c, cexp, &cfg).expect("compare");
        if got.status != expect {
            problems.push(format!(
                "comparator disagrees with native arithmetic on trial {trial}: \
                 {base}^{exp} vs ({p}/{q})^{cexp}"
            ));
            break;
        }
    }

    conclude("criterion 9 (oracle equivalence)", problems);
}

// Keep InequalityId::from_str in the public surface exercised.
#[test]
fn inequality_names_parse() {
    for name in [
        "theorem1",
        "corollary1",
        "zhang",
        "panaitopol",
        "rosser_pi",
        "rosser_pn",
        "appendix_a",
    ] {
        InequalityId::from_str(name).expect("known name");
    }
}
