//! Independent oracles for the integration and acceptance tests.
//!
//! Nothing here calls into the library's digit, ladder or character code:
//! ladder values come from a plain lcm loop, orders from divisibility scans,
//! and sums of roots of unity are evaluated exactly by reduction modulo the
//! cyclotomic polynomial.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The distinct values of `lcm(1, …, m)`, in increasing order.
pub fn lcm_ladder(count: usize) -> Vec<BigUint> {
    let mut values = vec![BigUint::one()];
    let mut l = BigUint::one();
    let mut m = 1u64;
    while values.len() < count {
        m += 1;
        let next = l.lcm(&BigUint::from(m));
        if next != l {
            values.push(next.clone());
            l = next;
        }
    }
    values
}

/// Oracle for the signed ladder with indices in `[-span, span]`.
pub struct Ladder {
    values: Vec<BigUint>,
}

impl Ladder {
    pub fn new(span: usize) -> Self {
        Ladder {
            values: lcm_ladder(span + 2),
        }
    }

    pub fn psi(&self, n: i64) -> BigRational {
        let v = BigInt::from(self.values[n.unsigned_abs() as usize].clone());
        if n >= 0 {
            BigRational::from_integer(v)
        } else {
            BigRational::new(BigInt::one(), v)
        }
    }

    pub fn radix(&self, n: i64) -> u64 {
        (self.psi(n + 1) / self.psi(n)).to_integer().to_u64().unwrap()
    }

    /// Largest `γ` with `q ∈ psi(γ)ℤ`, by scanning outward from 0.
    pub fn ord(&self, q: &BigRational) -> i64 {
        assert!(!q.is_zero());
        let span = self.values.len() as i64 - 2;
        let divides = |g: i64| (q / self.psi(g)).is_integer();
        let mut g = 0;
        if divides(0) {
            while divides(g + 1) {
                g += 1;
                assert!(g < span, "order outside the oracle's span");
            }
        } else {
            while !divides(g) {
                g -= 1;
                assert!(g > -span, "order outside the oracle's span");
            }
        }
        g
    }
}

/// `q - floor(q)` by integer division.
pub fn frac(q: &BigRational) -> BigRational {
    let (_, rem) = q.numer().div_mod_floor(q.denom());
    BigRational::new(rem, q.denom().clone())
}

fn poly_divmod(num: &[i128], den: &[i128]) -> (Vec<i128>, Vec<i128>) {
    // den is monic; coefficients are lowest degree first
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        return (vec![0], rem);
    }
    let mut quot = vec![0i128; rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dd] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i - dd + j] = rem[i - dd + j].checked_sub(c.checked_mul(d).unwrap()).unwrap();
        }
    }
    rem.truncate(dd.max(1));
    (quot, rem)
}

pub struct Cyclotomic {
    cache: HashMap<u64, Vec<i128>>,
}

impl Cyclotomic {
    pub fn new() -> Self {
        Cyclotomic {
            cache: HashMap::new(),
        }
    }

    /// `Φ_d` as `(x^d - 1) / Π_{e | d, e < d} Φ_e`.
    pub fn get(&mut self, d: u64) -> Vec<i128> {
        if let Some(p) = self.cache.get(&d) {
            return p.clone();
        }
        let mut p = vec![0i128; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        for e in (1..d).filter(|e| d % e == 0) {
            let phi = self.get(e);
            let (q, rem) = poly_divmod(&p, &phi);
            assert!(rem.iter().all(|&c| c == 0));
            p = q;
        }
        self.cache.insert(d, p.clone());
        p
    }

    /// Exact `Σ w_i exp(2πi r_i)`, if it is rational.
    pub fn root_sum(&mut self, terms: &[(BigRational, i64)]) -> Option<BigRational> {
        let mut d = BigInt::one();
        for (rot, _) in terms {
            d = d.lcm(rot.denom());
        }
        let d = d.to_u64().unwrap();
        let mut poly = vec![0i128; d as usize];
        for (rot, w) in terms {
            let j = (frac(rot) * BigRational::from_integer(d.into())).to_integer();
            poly[j.to_usize().unwrap()] += *w as i128;
        }
        let (_, rem) = poly_divmod(&poly, &self.get(d));
        if rem.iter().skip(1).all(|&c| c == 0) {
            Some(BigRational::from_integer(rem[0].into()))
        } else {
            None
        }
    }
}

/// Riemann sum of `χ(-ξx)` over the cosets of `𝔞^ℓ` in `𝔞^n`, optionally
/// leaving out those inside `𝔞^{n-1}`, computed exactly.
pub fn riemann_character_sum(
    ladder: &Ladder,
    cyc: &mut Cyclotomic,
    n: i64,
    l: i64,
    xi: &BigRational,
    sphere: bool,
) -> BigRational {
    let step = ladder.psi(-n);
    let count = (ladder.psi(n) / ladder.psi(l)).to_integer().to_u64().unwrap();
    let inner = ladder.psi(-(n - 1));
    let mut terms = Vec::new();
    for j in 0..count {
        let x = &step * BigRational::from_integer(j.into());
        if sphere && (&x / &inner).is_integer() {
            continue;
        }
        terms.push((-(xi * &x), 1));
    }
    let s = cyc.root_sum(&terms).expect("character sum over a subgroup coset union is rational");
    s * ladder.psi(l)
}

/// Nonzero rational whose numerator and denominator are products of primes
/// up to 13, each at most `10^6`. Prime-power factors are capped (at most
/// 169) so that products of two samples stay far below the table ceiling.
pub fn smooth_rational(rng: &mut impl Rng) -> BigRational {
    let n = smooth_integer(rng) as i64;
    let d = smooth_integer(rng) as i64;
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    r(sign * n, d)
}

fn smooth_integer(rng: &mut impl Rng) -> u64 {
    const CAPS: [(u64, u32); 6] = [(2, 5), (3, 3), (5, 2), (7, 2), (11, 2), (13, 2)];
    loop {
        let v: u64 = CAPS
            .iter()
            .map(|&(p, cap)| p.pow(rng.gen_range(0..=cap)))
            .product();
        if v <= 1_000_000 {
            return v;
        }
    }
}

/// Uniform-ish random rational with small numerator and denominator.
pub fn small_rational(rng: &mut impl Rng) -> BigRational {
    r(rng.gen_range(-500..=500), rng.gen_range(1..=400))
}

/// Riemann sum of `K(‖x‖) χ(-ξx)` over the cosets of `𝔞^{-m}` in `𝔞^m`
/// other than `𝔞^{-m}` itself. The kernel is constant on each of these
/// cosets, and so is the character once `ord ξ >= -m`.
pub fn riemann_radial_sum(
    ladder: &Ladder,
    m: i64,
    xi: &BigRational,
    kernel: impl Fn(f64) -> f64,
) -> num_complex::Complex64 {
    assert!(ladder.ord(xi) >= -m);
    let step = ladder.psi(-m);
    let count = (ladder.psi(m) / ladder.psi(-m)).to_integer().to_u64().unwrap();
    let weight = step.to_f64().unwrap();
    let mut sum = num_complex::Complex64::new(0.0, 0.0);
    for j in 1..count {
        let x = &step * BigRational::from_integer(j.into());
        let norm = ladder.psi(-ladder.ord(&x)).to_f64().unwrap();
        let angle = std::f64::consts::TAU * frac(&-(xi * &x)).to_f64().unwrap();
        sum += num_complex::Complex64::from_polar(kernel(norm) * weight, angle);
    }
    sum
}
