//! The extended second Chebyshev ladder `e^{ψ(n)}` and its prime radices.
//!
//! Indices are always the reparametrized ones: consecutive ladder values
//! differ by exactly one prime factor, `psi_exp(n + 1) = psi_exp(n) * radix(n)`.
//! For `n >= 0` the ladder runs through the distinct values of
//! `lcm(1, 2, …, m)`; negative indices mirror it, `psi_exp(-n) = 1 / psi_exp(n)`.
//!
//! The radix of index `n >= 0` is the prime underlying the `(n + 1)`-th prime
//! power `2, 3, 4, 5, 7, 8, 9, 11, …`, since `lcm(1..m)` grows exactly when
//! `m` is a prime power.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AdeleError, Result};
use crate::sieve::SegmentedSieve;

/// Default bound on `|n|` for any ladder index.
pub const DEFAULT_CEILING: i64 = 10_000;

#[derive(Debug)]
struct Ladder {
    sieve: SegmentedSieve,
    /// Sorted prime powers up to the sieve bound.
    prime_powers: Vec<u64>,
    /// `radices[n]` is `radix(n)` for `n >= 0`.
    radices: Vec<u64>,
    /// `ln_psi[n] = ln psi_exp(n)` for `0 <= n <= radices.len()`.
    ln_psi: Vec<f64>,
    /// Exact ladder values `psi_exp(n)`, `n >= 0`, grown only on request.
    values: Vec<BigUint>,
}

impl Ladder {
    fn new() -> Self {
        Ladder {
            sieve: SegmentedSieve::new(),
            prime_powers: Vec::new(),
            radices: Vec::new(),
            ln_psi: vec![0.0],
            values: vec![BigUint::one()],
        }
    }

    /// Doubles the sieve bound until at least `count` radices are known.
    fn grow_radices(&mut self, count: usize) {
        while self.radices.len() < count {
            let old = self.sieve.bound();
            let new_bound = (old * 2).max(32);
            let fresh: Vec<u64> = self.sieve.extend_to(new_bound).to_vec();
            let mut powers: Vec<(u64, u64)> = fresh.iter().map(|&p| (p, p)).collect();
            for &p in self.sieve.primes() {
                if p.saturating_mul(p) > new_bound {
                    break;
                }
                let mut q = p;
                while let Some(next) = q.checked_mul(p) {
                    q = next;
                    if q > new_bound {
                        break;
                    }
                    if q > old {
                        powers.push((q, p));
                    }
                }
            }
            powers.sort_unstable();
            for (q, p) in powers {
                self.prime_powers.push(q);
                self.radices.push(p);
                let last = *self.ln_psi.last().unwrap();
                self.ln_psi.push(last + (p as f64).ln());
            }
        }
    }

    fn grow_values(&mut self, n: usize) {
        self.grow_radices(n);
        while self.values.len() <= n {
            let k = self.values.len() - 1;
            let next = &self.values[k] * self.radices[k];
            self.values.push(next);
        }
    }
}

/// Append-only cache of the ladder, shareable across threads.
///
/// Reads of already-grown entries take a shared lock; growth takes the
/// exclusive lock, so it appears atomic to readers.
#[derive(Debug)]
pub struct RadixTable {
    ceiling: i64,
    ladder: RwLock<Ladder>,
}

impl Default for RadixTable {
    fn default() -> Self {
        Self::new()
    }
}

impl RadixTable {
    pub fn new() -> Self {
        Self::with_ceiling(DEFAULT_CEILING)
    }

    pub fn with_ceiling(ceiling: i64) -> Self {
        RadixTable {
            ceiling: ceiling.max(1),
            ladder: RwLock::new(Ladder::new()),
        }
    }

    pub fn ceiling(&self) -> i64 {
        self.ceiling
    }

    /// Largest integer sieved so far.
    pub fn prime_sieve_bound(&self) -> u64 {
        self.ladder.read().unwrap().sieve.bound()
    }

    fn check(&self, index: i64) -> Result<()> {
        if index.abs() > self.ceiling {
            Err(AdeleError::TableCeiling {
                requested: index,
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }

    /// Runs `f` on a ladder that holds at least `count` radices.
    fn with_radices<R>(&self, count: usize, f: impl FnOnce(&Ladder) -> R) -> R {
        {
            let ladder = self.ladder.read().unwrap();
            if ladder.radices.len() >= count {
                return f(&ladder);
            }
        }
        let mut ladder = self.ladder.write().unwrap();
        ladder.grow_radices(count);
        f(&ladder)
    }

    /// `e^{Λ(k+1)} = psi_exp(k + 1) / psi_exp(k)`, always a prime.
    pub fn radix(&self, k: i64) -> Result<u64> {
        self.check(k)?;
        self.check(k + 1)?;
        let idx = if k >= 0 { k } else { -k - 1 } as usize;
        Ok(self.with_radices(idx + 1, |l| l.radices[idx]))
    }

    /// Radices for every index in `lo..hi`.
    pub fn radices(&self, lo: i64, hi: i64) -> Result<Vec<u64>> {
        if hi <= lo {
            return Ok(Vec::new());
        }
        self.check(lo)?;
        self.check(hi)?;
        let need = lo.unsigned_abs().max(hi.unsigned_abs()) as usize + 1;
        Ok(self.with_radices(need, |l| {
            (lo..hi)
                .map(|k| {
                    let idx = if k >= 0 { k } else { -k - 1 } as usize;
                    l.radices[idx]
                })
                .collect()
        }))
    }

    /// `psi_exp(n)` for `n >= 0` as an integer.
    pub fn psi_exp_int(&self, n: u64) -> Result<BigUint> {
        self.check(n as i64)?;
        let n = n as usize;
        {
            let ladder = self.ladder.read().unwrap();
            if let Some(v) = ladder.values.get(n) {
                return Ok(v.clone());
            }
        }
        let mut ladder = self.ladder.write().unwrap();
        ladder.grow_values(n);
        Ok(ladder.values[n].clone())
    }

    /// The ladder value `e^{ψ(n)}` under the reparametrization.
    pub fn psi_exp(&self, n: i64) -> Result<BigRational> {
        let v = BigInt::from(self.psi_exp_int(n.unsigned_abs())?);
        Ok(if n >= 0 {
            BigRational::from_integer(v)
        } else {
            BigRational::new(BigInt::one(), v)
        })
    }

    /// `ln psi_exp(n)` in floating point, accumulated from the radices.
    pub fn ln_psi_exp(&self, n: i64) -> Result<f64> {
        self.check(n)?;
        let idx = n.unsigned_abs() as usize;
        let v = self.with_radices(idx, |l| l.ln_psi[idx]);
        Ok(if n >= 0 { v } else { -v })
    }

    /// The raw Chebyshev index `ρ(n)` whose lcm value equals `psi_exp(n)`:
    /// `ρ(0) = 0`, `ρ(n) = q_{n+1} - 1` and `ρ(-n) = -q_n` for `n > 0`, where
    /// `q_i` is the `i`-th prime power.
    pub fn rho(&self, n: i64) -> Result<i64> {
        self.check(n)?;
        match n.cmp(&0) {
            std::cmp::Ordering::Equal => Ok(0),
            std::cmp::Ordering::Greater => {
                let i = n as usize;
                Ok(self.with_radices(i + 1, |l| l.prime_powers[i] as i64 - 1))
            }
            std::cmp::Ordering::Less => {
                let i = (-n) as usize - 1;
                Ok(self.with_radices(i + 1, |l| -(l.prime_powers[i] as i64)))
            }
        }
    }

    /// The `i`-th prime power (`i >= 1`), i.e. the `i`-th jump point of `lcm(1..m)`.
    pub fn jump_point(&self, i: usize) -> Result<u64> {
        if i == 0 {
            return Err(AdeleError::Domain("jump points are numbered from 1".into()));
        }
        self.check(i as i64)?;
        Ok(self.with_radices(i, |l| l.prime_powers[i - 1]))
    }

    /// Exponent of `p` in `psi_exp(n)` (negative for `n < 0`).
    pub fn valuation(&self, p: u64, n: i64) -> Result<i64> {
        self.check(n)?;
        let idx = n.unsigned_abs() as usize;
        let count = self.with_radices(idx, |l| l.radices[..idx].iter().filter(|&&r| r == p).count());
        Ok(if n >= 0 { count as i64 } else { -(count as i64) })
    }

    /// The largest `γ` with `q ∈ psi_exp(γ)·ℤ`, i.e. the index of the first
    /// nonzero digit of `q`'s series expansion.
    pub fn order_of_rational(&self, q: &BigRational) -> Result<i64> {
        if q.is_zero() {
            return Err(AdeleError::ZeroOrder);
        }
        let numer = q.numer().abs();
        let denom = q.denom().abs();
        let mut n: i64 = 0;
        if denom.is_one() {
            // strip radices from the numerator in ladder order
            let mut rest = numer;
            loop {
                let p = BigInt::from(self.radix(n)?);
                let (quot, rem) = rest.div_rem(&p);
                if !rem.is_zero() {
                    return Ok(n);
                }
                rest = quot;
                n += 1;
            }
        } else {
            // smallest n with denom | psi_exp(n)
            let mut rest = denom;
            while !rest.is_one() {
                let p = BigInt::from(self.radix(n)?);
                let (quot, rem) = rest.div_rem(&p);
                if rem.is_zero() {
                    rest = quot;
                }
                n += 1;
            }
            Ok(-n)
        }
    }
}
