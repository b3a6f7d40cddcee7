//! Property tests for the parsing, enclosure, and comparison invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use primebound_core::exact::{
    compare_power_vs_power, log_enclosure, parse_rational_text, ExactConstant,
};
use primebound_core::{PrecisionCfg, PrimeTable, Verdict};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    /// Finite decimals parse to the exact fraction digits/10^scale.
    #[test]
    fn decimals_parse_exactly(int in 0u64..1_000_000, frac in 0u64..1_000_000, scale in 1u32..6) {
        let frac = frac % 10u64.pow(scale);
        let text = format!("{int}.{frac:0width$}", width = scale as usize);
        let parsed = parse_rational_text(&text).unwrap();
        let expect = BigRational::new(
            BigInt::from(int) * BigInt::from(10u64.pow(scale)) + BigInt::from(frac),
            BigInt::from(10u64.pow(scale)),
        );
        prop_assert_eq!(parsed, expect);
    }

    /// The log enclosure always meets its relative-width contract and is
    /// consistent with monotonicity.
    #[test]
    fn log_enclosure_width_and_order(num in 1i64..2_000_000, den in 1i64..2_000_000, prec in 8u32..160) {
        let x = rat(num, den);
        let iv = log_enclosure(&x, prec).unwrap();
        prop_assert!(iv.lo() <= iv.hi());
        let mag = if iv.lo().abs() > BigRational::one() { iv.lo().abs() } else { BigRational::one() };
        let bound = BigRational::new(BigInt::one(), BigInt::one() << (prec - 1)) * mag;
        prop_assert!(iv.width() <= bound, "width {} over bound at prec {}", iv.width(), prec);

        // log is increasing: the enclosure of log(2x) must sit above ours
        // by exactly log 2 within the two widths.
        let twice = log_enclosure(&(&x * rat(2, 1)), prec).unwrap();
        prop_assert!(twice.hi() > iv.lo());
    }

    /// Exact power verdicts agree with native 128-bit arithmetic.
    #[test]
    fn comparator_matches_native(base in 2u64..30, exp in 0u64..12, p in 1u64..12, q in 1u64..12, cexp in 0u64..12) {
        let lhs = (base as u128).pow(exp as u32) * (q as u128).pow(cexp as u32);
        let rhs = (p as u128).pow(cexp as u32);
        let expect = if lhs > rhs { Verdict::Holds } else { Verdict::Fails };
        let c = ExactConstant::rational(rat(p as i64, q as i64));
        let got = compare_power_vs_power(base, exp, &c, cexp, &PrecisionCfg::default()).unwrap();
        prop_assert_eq!(got.status, expect);
    }

    /// With c > 1, the verdict is monotone (anti-tone) in the right-hand
    /// exponent: once it fails, it fails for every larger cexp.
    #[test]
    fn verdict_monotone_in_cexp(base in 2u64..20, exp in 1u64..10, cexp in 1u64..40) {
        let c = ExactConstant::rational(rat(2, 1));
        let cfg = PrecisionCfg::default();
        let at = |ce: u64| compare_power_vs_power(base, exp, &c, ce, &cfg).unwrap().status;
        if at(cexp) == Verdict::Fails {
            prop_assert_eq!(at(cexp + 1), Verdict::Fails);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// pi and nth_prime form a Galois connection on the covered range.
    #[test]
    fn pi_nth_prime_galois(x in 2u64..20_000) {
        let table = PrimeTable::new(20_000).unwrap();
        let n = table.prime_count(x).unwrap();
        prop_assert!(table.nth_prime(n).unwrap() <= x);
        prop_assert_eq!(table.prime_count(table.nth_prime(n).unwrap()).unwrap(), n);
    }
}
