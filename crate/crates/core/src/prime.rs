//! Sieve-backed prime table: the primes up to a limit, `pi(x)`, `p_n`, and
//! exact primorial prefix products.
//!
//! The table is immutable after construction and safe to share across
//! threads; growing it means building a new table. Primes are 1-indexed
//! (`p_1 = 2`).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};

/// Primorial prefix products are cached at every `PRIMORIAL_CHECKPOINT`-th
/// index; a random access multiplies the nearest checkpoint by at most that
/// many remaining primes. Caching *every* prefix would cost gigabytes at
/// sieve limits in the millions.
const PRIMORIAL_CHECKPOINT: usize = 1024;

/// Default memory budget for table construction: 1 GiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

/// Immutable store of all primes up to `limit`.
#[derive(Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    primorial_checkpoints: OnceBox<Vec<BigUint>>,
}

impl PrimeTable {
    /// Sieve all primes `<= limit` under the default memory budget.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_budget(limit, DEFAULT_MEMORY_BUDGET)
    }

    /// Sieve all primes `<= limit`, refusing up front when the sieve bitmap
    /// plus prime storage would exceed `budget_bytes`.
    pub fn with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Domain(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        let estimate = Self::estimated_bytes(limit);
        if estimate > budget_bytes {
            return Err(Error::Resource(format!(
                "sieve to {limit} needs ~{estimate} bytes, over the {budget_bytes}-byte budget"
            )));
        }
        let primes = sieve_primes(limit);
        Ok(PrimeTable {
            limit,
            primes,
            primorial_checkpoints: OnceBox::new(),
        })
    }

    /// Rough construction footprint: odd bitmap plus the prime vector, using
    /// `pi(x) <= 1.26 x / log x` with `log x` under-approximated from the bit
    /// length (no floating-point transcendentals in a `no_std` build).
    fn estimated_bytes(limit: u64) -> u64 {
        let bitmap = limit / 16 + 16;
        let bits = 64 - limit.leading_zeros() as u64;
        // 1000 * ln(limit) >= 693 * (bits - 1)
        let ln_milli = (693 * bits.saturating_sub(1)).max(693);
        let pi_upper = 1_260u64.saturating_mul(limit / ln_milli) + 1_260 + 16;
        bitmap.saturating_add(pi_upper.saturating_mul(8))
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes in the table, `pi(limit)`.
    pub fn num_primes(&self) -> u64 {
        self.primes.len() as u64
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `pi(x)`: the number of primes `<= x`, for `1 <= x <= limit`.
    pub fn prime_count(&self, x: u64) -> Result<u64> {
        if x < 1 {
            return Err(Error::Domain("pi(x) requires x >= 1".to_string()));
        }
        if x > self.limit {
            return Err(Error::Range(format!(
                "pi({x}) is outside the table limit {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// `p_n`, 1-indexed (`p_1 = 2`).
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Domain("prime indices are 1-based".to_string()));
        }
        self.primes
            .get(n as usize - 1)
            .copied()
            .ok_or_else(|| {
                Error::Range(format!(
                    "p_{n} exceeds the table limit {} (it holds {} primes)",
                    self.limit,
                    self.primes.len()
                ))
            })
    }

    /// Exact product of the first `n` primes.
    pub fn primorial(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::Domain("primorial index must be >= 1".to_string()));
        }
        if n as usize > self.primes.len() {
            return Err(Error::Range(format!(
                "primorial({n}) exceeds the table range ({} primes)",
                self.primes.len()
            )));
        }
        let n = n as usize;
        let checkpoints = self.checkpoints();
        let base_idx = n / PRIMORIAL_CHECKPOINT;
        let base = &checkpoints[base_idx];
        let rest = slice_product(&self.primes[base_idx * PRIMORIAL_CHECKPOINT..n]);
        Ok(base * rest)
    }

    fn checkpoints(&self) -> &Vec<BigUint> {
        self.primorial_checkpoints.get_or_init(|| {
            let mut cps = Vec::with_capacity(self.primes.len() / PRIMORIAL_CHECKPOINT + 1);
            cps.push(BigUint::one());
            let mut acc = BigUint::one();
            for (i, &p) in self.primes.iter().enumerate() {
                acc *= p;
                if (i + 1) % PRIMORIAL_CHECKPOINT == 0 {
                    cps.push(acc.clone());
                }
            }
            Box::new(cps)
        })
    }
}

/// Balanced product of a slice of primes; keeps intermediate operands of
/// similar size so big multiplications stay subquadratic.
fn slice_product(primes: &[u64]) -> BigUint {
    match primes.len() {
        0 => BigUint::one(),
        1..=8 => {
            let mut acc = BigUint::from(primes[0]);
            for &p in &primes[1..] {
                acc *= p;
            }
            acc
        }
        len => {
            let (left, right) = primes.split_at(len / 2);
            slice_product(left) * slice_product(right)
        }
    }
}

/// Odd-only sieve of Eratosthenes.
fn sieve_primes(limit: u64) -> Vec<u64> {
    let mut primes = vec![2u64];
    if limit < 3 {
        return primes;
    }
    // Bit i represents the odd number 2i + 3.
    let n_odd = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![0u64; n_odd / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;

    let mut p = 3u64;
    while p * p <= limit {
        let idx = ((p - 3) / 2) as usize;
        if !is_set(&composite, idx) {
            let mut m = p * p;
            while m <= limit {
                let mi = ((m - 3) / 2) as usize;
                composite[mi / 64] |= 1 << (mi % 64);
                m += 2 * p;
            }
        }
        p += 2;
    }
    for i in 0..n_odd {
        if !is_set(&composite, i) {
            primes.push(2 * i as u64 + 3);
        }
    }
    primes
}
