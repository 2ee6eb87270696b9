//! p-adic approximations and the CRT bridge between adeles and their
//! local components.
//!
//! Everything here works with exact integers reduced modulo prime powers and
//! never touches the mixed-radix digit algorithms of [`crate::adele`], so it
//! can serve as an independent check on them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::adele::FiniteAdele;
use crate::error::{AdeleError, Result};
use crate::radix::RadixTable;

/// `x = p^v · Σ d_i p^i`, known modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicApprox {
    prime: u64,
    valuation: i64,
    /// Base-`p` digits, least significant first; `digits[0] != 0` unless empty.
    digits: Vec<u64>,
    precision: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Mul,
    /// Negates the first operand; the second only has its prime checked.
    Neg,
}

fn pow(p: u64, e: i64) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

fn p_power(p: u64, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow(p, e))
    } else {
        BigRational::new(BigInt::one(), pow(p, -e))
    }
}

/// `a^{-1} mod m` for `gcd(a, m) = 1`.
fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Exponent of `p` in the nonzero integer `n`, and the cofactor.
fn split_power(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

impl PadicApprox {
    pub fn zero(prime: u64, precision: i64) -> Self {
        PadicApprox {
            prime,
            valuation: precision,
            digits: Vec::new(),
            precision,
        }
    }

    /// Builds from a unit residue `u` (any integer) at valuation `v`.
    fn from_residue(prime: u64, valuation: i64, residue: BigInt, precision: i64) -> Self {
        if valuation >= precision {
            return Self::zero(prime, precision);
        }
        let len = (precision - valuation) as usize;
        let mut t = residue.mod_floor(&pow(prime, len as i64));
        let p = BigInt::from(prime);
        let mut digits = Vec::with_capacity(len);
        for _ in 0..len {
            let (q, d) = t.div_mod_floor(&p);
            digits.push(d.to_u64().unwrap());
            t = q;
        }
        match digits.iter().position(|&d| d != 0) {
            None => Self::zero(prime, precision),
            Some(i) => {
                digits.drain(..i);
                PadicApprox {
                    prime,
                    valuation: valuation + i as i64,
                    digits,
                    precision,
                }
            }
        }
    }

    /// Image of `q` in `ℚ_p`, known modulo `p^precision`.
    pub fn from_rational(q: &BigRational, prime: u64, precision: i64) -> Self {
        if q.is_zero() {
            return Self::zero(prime, precision);
        }
        let (vn, un) = split_power(q.numer(), prime);
        let (vd, ud) = split_power(q.denom(), prime);
        let v = vn - vd;
        if v >= precision {
            return Self::zero(prime, precision);
        }
        let modulus = pow(prime, precision - v);
        let residue = un * mod_inverse(&ud, &modulus);
        Self::from_residue(prime, v, residue, precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// `Σ d_i p^i`.
    fn residue(&self) -> BigInt {
        let p = BigInt::from(self.prime);
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &p + d)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.residue()) * p_power(self.prime, self.valuation)
    }

    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        Self::from_residue(self.prime, self.valuation, self.residue(), precision)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(AdeleError::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let m = self.precision.min(other.precision);
        let (a, b) = (self.truncate(m), other.truncate(m));
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        let v = a.valuation.min(b.valuation);
        let sum = a.residue() * pow(a.prime, a.valuation - v) + b.residue() * pow(b.prime, b.valuation - v);
        Ok(Self::from_residue(a.prime, v, sum, m))
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_residue(self.prime, self.valuation, -self.residue(), self.precision)
    }

    /// Product with precision `min(v_a + m_b, v_b + m_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let m = (self.valuation + other.precision).min(other.valuation + self.precision);
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.prime, m));
        }
        let v = self.valuation + other.valuation;
        Ok(Self::from_residue(self.prime, v, self.residue() * other.residue(), m))
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-adic ", self.prime)?;
        if self.is_zero() {
            return write!(f, "0 + O({}^{})", self.prime, self.precision);
        }
        write!(f, "p^{} * [", self.valuation)?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "] + O({}^{})", self.prime, self.precision)
    }
}

pub fn padic_arith(op: PadicOp, a: &PadicApprox, b: &PadicApprox) -> Result<PadicApprox> {
    match op {
        PadicOp::Add => a.add(b),
        PadicOp::Mul => a.mul(b),
        PadicOp::Neg => {
            a.same_prime(b)?;
            Ok(a.neg())
        }
    }
}

/// Local components of `x` at each prime of `primes`.
///
/// The component at `p` carries precision `v_p(psi_exp(N))`, which is what
/// the adele's own precision `psi_exp(N)·Ẑ` means at that place.
pub fn crt_decompose(
    x: &FiniteAdele,
    primes: &[u64],
    table: &RadixTable,
) -> Result<BTreeMap<u64, PadicApprox>> {
    let value = x.to_rational(table)?;
    primes
        .iter()
        .map(|&p| {
            let m = table.valuation(p, x.precision())?;
            Ok((p, PadicApprox::from_rational(&value, p, m)))
        })
        .collect()
}

/// Primes dividing `psi_exp(hi) / psi_exp(lo)`, in increasing order.
pub fn window_primes(lo: i64, hi: i64, table: &RadixTable) -> Result<Vec<u64>> {
    let mut primes = table.radices(lo, hi)?;
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// The unique adele with digits on `[lo, hi)` whose local components agree
/// with `components` modulo `psi_exp(hi)`.
pub fn crt_recompose(
    components: &BTreeMap<u64, PadicApprox>,
    lo: i64,
    hi: i64,
    table: &RadixTable,
) -> Result<FiniteAdele> {
    if hi <= lo {
        return Ok(FiniteAdele::zero(hi));
    }
    let base = table.psi_exp(lo)?;
    // solve t ≡ component / psi_exp(lo) (mod p^{e_p}) for each p | L,
    // L = psi_exp(hi) / psi_exp(lo)
    let mut t = BigInt::zero();
    let mut modulus = BigInt::one();
    for p in window_primes(lo, hi, table)? {
        let comp = components.get(&p).ok_or(AdeleError::MissingPrime(p))?;
        let need = table.valuation(p, hi)?;
        if comp.precision() < need {
            return Err(AdeleError::InsufficientComponentPrecision {
                prime: p,
                needed: need,
                available: comp.precision(),
            });
        }
        let comp = comp.truncate(need);
        let v_lo = table.valuation(p, lo)?;
        let e = need - v_lo;
        let pe = pow(p, e);
        let local = if comp.is_zero() {
            BigInt::zero()
        } else {
            if comp.valuation() < v_lo {
                return Err(AdeleError::Domain(format!(
                    "{p}-adic component has valuation {} below the window start {v_lo}",
                    comp.valuation()
                )));
            }
            // psi_exp(lo) = p^{v_lo} · w with w a p-adic unit
            let w = &base / p_power(p, v_lo);
            let w_inv = w.denom() * mod_inverse(w.numer(), &pe);
            comp.residue() * pow(p, comp.valuation() - v_lo) * w_inv
        }
        .mod_floor(&pe);
        // combine with the running solution modulo `modulus`
        let k = ((local - &t) * mod_inverse(&modulus, &pe)).mod_floor(&pe);
        t += &modulus * k;
        modulus *= pe;
    }
    let radices = table.radices(lo, hi)?;
    let mut digits = Vec::with_capacity(radices.len());
    for r in radices {
        let (q, d) = t.div_mod_floor(&BigInt::from(r));
        digits.push(d.to_u64().unwrap());
        t = q;
    }
    debug_assert!(t.is_zero());
    FiniteAdele::from_digits(lo, digits, hi, table)
}
