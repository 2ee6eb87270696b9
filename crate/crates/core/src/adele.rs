//! Finite adeles as truncated mixed-radix series.
//!
//! A [`FiniteAdele`] stores the digits `a_γ, …, a_{N-1}` of
//! `x = Σ a_k·psi_exp(k)` with `0 <= a_k < radix(k)`, together with the
//! precision index `N`: the value is known modulo `psi_exp(N)·Ẑ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AdeleError, Result};
use crate::radix::RadixTable;
use crate::rational::rgcd;

/// Order of a truncated value: known exactly, or only bounded below by the
/// working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrdResult {
    Known(i64),
    AtLeast(i64),
}

impl fmt::Display for OrdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdResult::Known(g) => write!(f, "{g}"),
            OrdResult::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// A finite adele known to a fixed precision.
///
/// Invariants: `order <= precision`, `digits.len() == precision - order`,
/// `digits[0] != 0` unless `digits` is empty (zero to precision, in which
/// case `order == precision`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAdele {
    order: i64,
    digits: Vec<u64>,
    precision: i64,
}

/// JSON layout of a [`FiniteAdele`]; validated against a table on conversion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdeleJson {
    pub order: i64,
    pub digits: Vec<u64>,
    pub precision: i64,
}

impl FiniteAdele {
    /// The value `0`, known modulo `psi_exp(precision)·Ẑ`.
    pub fn zero(precision: i64) -> Self {
        FiniteAdele {
            order: precision,
            digits: Vec::new(),
            precision,
        }
    }

    /// Builds an adele from raw digits starting at index `order`.
    ///
    /// Leading zero digits are allowed and stripped. The digit count must
    /// equal `precision - order`.
    pub fn from_digits(
        order: i64,
        digits: Vec<u64>,
        precision: i64,
        table: &RadixTable,
    ) -> Result<Self> {
        if precision < order || (precision - order) as usize != digits.len() {
            return Err(AdeleError::Parse(format!(
                "expected {} digits for window [{order}, {precision}), got {}",
                precision - order,
                digits.len()
            )));
        }
        let radices = table.radices(order, precision)?;
        for (i, (&a, &r)) in digits.iter().zip(&radices).enumerate() {
            if a >= r {
                return Err(AdeleError::Parse(format!(
                    "digit {a} at index {} is not below radix {r}",
                    order + i as i64
                )));
            }
        }
        Ok(Self::normalized(order, digits, precision))
    }

    fn normalized(order: i64, mut digits: Vec<u64>, precision: i64) -> Self {
        let lead = digits.iter().position(|&a| a != 0);
        match lead {
            None => Self::zero(precision),
            Some(i) => {
                digits.drain(..i);
                FiniteAdele {
                    order: order + i as i64,
                    digits,
                    precision,
                }
            }
        }
    }

    /// Embeds a rational number, expanding its digits up to index `precision`.
    pub fn from_rational(q: &BigRational, precision: i64, table: &RadixTable) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero(precision));
        }
        let gamma = table.order_of_rational(q)?;
        if gamma >= precision {
            return Ok(Self::zero(precision));
        }
        // t = q / psi_exp(gamma) is an integer; peel off mixed-radix digits
        let scaled = q / table.psi_exp(gamma)?;
        debug_assert!(scaled.is_integer());
        let t = scaled.to_integer();
        let radices = table.radices(gamma, precision)?;
        Ok(Self::normalized(gamma, mixed_radix_digits(t, &radices), precision))
    }

    pub fn from_json(json: &AdeleJson, table: &RadixTable) -> Result<Self> {
        Self::from_digits(json.order, json.digits.clone(), json.precision, table)
    }

    pub fn to_json(&self) -> AdeleJson {
        AdeleJson {
            order: self.order,
            digits: self.digits.clone(),
            precision: self.precision,
        }
    }

    /// Index of the first stored digit (equal to the precision when zero).
    pub fn order(&self) -> i64 {
        self.order
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

    /// Digit at index `k`, or `None` when `k` is beyond the precision.
    pub fn digit(&self, k: i64) -> Option<u64> {
        if k >= self.precision {
            None
        } else if k < self.order {
            Some(0)
        } else {
            Some(self.digits[(k - self.order) as usize])
        }
    }

    pub fn ord(&self) -> OrdResult {
        if self.is_zero() {
            OrdResult::AtLeast(self.precision)
        } else {
            OrdResult::Known(self.order)
        }
    }

    /// Integer `t` with `Σ_{lo <= k < hi} a_k psi_exp(k) = psi_exp(lo)·t`.
    fn horner(&self, lo: i64, hi: i64, table: &RadixTable) -> Result<BigInt> {
        let mut t = BigInt::zero();
        if hi <= lo {
            return Ok(t);
        }
        let radices = table.radices(lo, hi)?;
        for k in (lo..hi).rev() {
            let a = self.digit(k).unwrap_or(0);
            t = t * radices[(k - lo) as usize] + a;
        }
        Ok(t)
    }

    /// The exact rational value of the stored digits.
    pub fn to_rational(&self, table: &RadixTable) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let t = self.horner(self.order, self.precision, table)?;
        Ok(table.psi_exp(self.order)? * BigRational::from_integer(t))
    }

    /// Forgets every digit at index `>= precision`. Never raises precision.
    pub fn truncate(&self, precision: i64) -> Self {
        if precision >= self.precision {
            return self.clone();
        }
        if self.is_zero() || precision <= self.order {
            return Self::zero(precision);
        }
        let keep = (precision - self.order) as usize;
        Self::normalized(self.order, self.digits[..keep].to_vec(), precision)
    }

    /// Digit-wise addition with carries; precision is the smaller of the two.
    pub fn add(&self, other: &Self, table: &RadixTable) -> Result<Self> {
        let precision = self.precision.min(other.precision);
        let x = self.truncate(precision);
        let y = other.truncate(precision);
        if x.is_zero() {
            return Ok(y);
        }
        if y.is_zero() {
            return Ok(x);
        }
        let lo = x.order.min(y.order);
        let radices = table.radices(lo, precision)?;
        let mut digits = Vec::with_capacity(radices.len());
        let mut carry = 0u64;
        for (i, &r) in radices.iter().enumerate() {
            let k = lo + i as i64;
            let mut c = x.digit(k).unwrap() + y.digit(k).unwrap() + carry;
            carry = if c >= r {
                c -= r;
                1
            } else {
                0
            };
            digits.push(c);
        }
        // a carry out of index precision - 1 lands in psi_exp(precision)·Ẑ
        Ok(Self::normalized(lo, digits, precision))
    }

    /// Additive inverse by radix complement.
    pub fn negate(&self, table: &RadixTable) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let radices = table.radices(self.order, self.precision)?;
        let digits = self
            .digits
            .iter()
            .zip(&radices)
            .enumerate()
            .map(|(i, (&a, &r))| if i == 0 { r - a } else { r - 1 - a })
            .collect();
        Ok(FiniteAdele {
            order: self.order,
            digits,
            precision: self.precision,
        })
    }

    pub fn sub(&self, other: &Self, table: &RadixTable) -> Result<Self> {
        self.add(&other.negate(table)?, table)
    }

    /// Product of the truncations, re-expanded to the precision that the
    /// unknown tails still allow.
    ///
    /// With `x = S_x + u_x`, `u_x ∈ M_x·Ẑ` (and likewise for `y`), the error
    /// `S_x u_y + S_y u_x + u_x u_y` lies in `g·Ẑ` where
    /// `g = rgcd(psi_exp(γ_x)·M_y, psi_exp(γ_y)·M_x, M_x·M_y)`; the result
    /// precision is the ladder index of `g`.
    pub fn mul(&self, other: &Self, table: &RadixTable) -> Result<Self> {
        let mx = table.psi_exp(self.precision)?;
        let my = table.psi_exp(other.precision)?;
        let lead_x = table.psi_exp(self.order)?;
        let lead_y = table.psi_exp(other.order)?;
        let g = rgcd(&rgcd(&(&lead_x * &my), &(&lead_y * &mx)), &(&mx * &my));
        let precision = table.order_of_rational(&g)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(precision));
        }
        let product = self.to_rational(table)? * other.to_rational(table)?;
        Self::from_rational(&product, precision, table)
    }

    /// `‖x‖ = psi_exp(-ord x)`.
    pub fn norm(&self, table: &RadixTable) -> Result<BigRational> {
        match self.ord() {
            OrdResult::Known(g) => table.psi_exp(-g),
            OrdResult::AtLeast(n) => Err(AdeleError::IndeterminateNorm {
                precision: n,
                bound: table.psi_exp(-n)?,
            }),
        }
    }

    /// Ultrametric distance `‖x - y‖`.
    pub fn distance(&self, other: &Self, table: &RadixTable) -> Result<BigRational> {
        self.sub(other, table)?.norm(table)
    }

    /// `{x}`: the sum of the negative-index digits, a rational in `[0, 1)`.
    pub fn fractional_part(&self, table: &RadixTable) -> Result<BigRational> {
        if self.precision < 0 {
            return Err(AdeleError::InsufficientPrecision {
                needed: 0,
                available: self.precision,
            });
        }
        if self.is_zero() || self.order >= 0 {
            return Ok(BigRational::zero());
        }
        let t = self.horner(self.order, 0, table)?;
        Ok(table.psi_exp(self.order)? * BigRational::from_integer(t))
    }

    /// Parses the digit-string format `γ:a_γ,…,a_{N-1}|N` or `zero|N`.
    pub fn parse(s: &str, table: &RadixTable) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| AdeleError::Parse(format!("bad digit string {s:?}: {why}"));
        let (head, prec) = s.rsplit_once('|').ok_or_else(|| bad("missing '|N'"))?;
        let precision: i64 = prec.trim().parse().map_err(|_| bad("precision"))?;
        if head.trim() == "zero" {
            return Ok(Self::zero(precision));
        }
        let (ord, body) = head.split_once(':').ok_or_else(|| bad("missing 'γ:'"))?;
        let order: i64 = ord.trim().parse().map_err(|_| bad("order"))?;
        let digits = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|d| d.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("digits"))?
        };
        if digits.first() == Some(&0) {
            return Err(bad("leading digit must be nonzero"));
        }
        if digits.is_empty() {
            return Err(bad("no digits; use zero|N"));
        }
        Self::from_digits(order, digits, precision, table)
    }
}

impl fmt::Display for FiniteAdele {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "zero|{}", self.precision);
        }
        write!(f, "{}:", self.order)?;
        for (i, a) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "|{}", self.precision)
    }
}

/// Least-significant-first mixed-radix digits of `t` (any sign), one per radix.
fn mixed_radix_digits(mut t: BigInt, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&r| {
            let r = BigInt::from(r);
            let (q, a) = t.div_mod_floor(&r);
            t = q;
            a.to_u64().unwrap()
        })
        .collect()
}

impl FiniteAdele {
    /// Convenience for tests and the CLI: `q` as an adele, or its digit string.
    pub fn parse_literal(s: &str, precision: i64, table: &RadixTable) -> Result<Self> {
        if s.contains('|') {
            Self::parse(s, table)
        } else {
            let q = crate::rational::parse_rational(s)?;
            Self::from_rational(&q, precision, table)
        }
    }

    /// `true` when every stored digit agrees with `other` up to the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.precision.min(other.precision);
        self.truncate(n) == other.truncate(n)
    }

    /// The unit `1` to the given precision.
    pub fn one(precision: i64, table: &RadixTable) -> Result<Self> {
        Self::from_rational(&BigRational::one(), precision, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn emb(n: i64, d: i64, prec: i64, t: &RadixTable) -> FiniteAdele {
        FiniteAdele::from_rational(&r(n, d), prec, t).unwrap()
    }

    #[test]
    fn from_rational_examples() {
        let t = RadixTable::new();
        let x = emb(5, 12, 0, &t);
        assert_eq!((x.order(), x.digits()), (-3, &[1u64, 2, 0][..]));
        let m1 = emb(-1, 1, 5, &t);
        assert_eq!((m1.order(), m1.digits()), (0, &[1u64, 2, 1, 4, 6][..]));
        let z = emb(0, 1, 3, &t);
        assert!(z.is_zero());
        assert_eq!(z.precision(), 3);
    }

    #[test]
    fn high_order_rational_is_zero_to_precision() {
        let t = RadixTable::new();
        // 60 = psi_exp(4) vanishes below precision 4
        let x = emb(60, 1, 4, &t);
        assert!(x.is_zero());
        assert_eq!(x.ord(), OrdResult::AtLeast(4));
    }

    #[test]
    fn addition_examples() {
        let t = RadixTable::new();
        let half = emb(1, 2, 4, &t);
        let one = half.add(&half, &t).unwrap();
        assert_eq!(one, emb(1, 1, 4, &t));
        assert_eq!((one.order(), one.digits()[0]), (0, 1));

        let x = emb(5, 12, 3, &t);
        assert_eq!(x.add(&FiniteAdele::zero(3), &t).unwrap(), x);

        let m1 = emb(-1, 1, 6, &t);
        let s = m1.add(&emb(1, 1, 6, &t), &t).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.precision(), 6);
    }

    #[test]
    fn add_takes_min_precision() {
        let t = RadixTable::new();
        let s = emb(1, 3, 2, &t).add(&emb(1, 6, 5, &t), &t).unwrap();
        assert_eq!(s.precision(), 2);
        assert_eq!(s, emb(1, 2, 2, &t));
    }

    #[test]
    fn negate_examples() {
        let t = RadixTable::new();
        let n1 = emb(1, 1, 5, &t).negate(&t).unwrap();
        assert_eq!(n1.digits(), &[1, 2, 1, 4, 6]);
        assert!(FiniteAdele::zero(2).negate(&t).unwrap().is_zero());
        assert_eq!(emb(5, 12, 4, &t).negate(&t).unwrap(), emb(-5, 12, 4, &t));
    }

    #[test]
    fn multiplication_examples() {
        let t = RadixTable::new();
        let six = emb(2, 1, 5, &t).mul(&emb(3, 1, 5, &t), &t).unwrap();
        assert_eq!(six.ord(), OrdResult::Known(2));
        assert_eq!(six.digits()[0], 1);
        assert_eq!(six.to_rational(&t).unwrap(), r(6, 1));

        let x = emb(5, 12, 2, &t);
        let y = x.mul(&emb(1, 1, 6, &t), &t).unwrap();
        assert_eq!(y, x.truncate(y.precision()));
        assert_eq!(y.precision(), 1);

        let p = emb(1, 2, 3, &t).mul(&emb(1, 3, 3, &t), &t).unwrap();
        assert_eq!(p.ord(), OrdResult::Known(-2));
        assert_eq!(p.digits()[0], 1);
        assert_eq!(p.to_rational(&t).unwrap() - r(1, 6), r(0, 1));
    }

    #[test]
    fn mul_precision_from_rgcd() {
        let t = RadixTable::new();
        // x = 1/2 + O(psi_exp(1)), y = 1/3 + O(psi_exp(2)):
        // g = rgcd(psi(-1)·6, psi(-2)·2, 2·6) = rgcd(3, 1/3, 12) = 1/3, and the
        // largest ladder subgroup containing (1/3)Ẑ is psi_exp(-2)·Ẑ
        let x = emb(1, 2, 1, &t);
        let y = emb(1, 3, 2, &t);
        let p = x.mul(&y, &t).unwrap();
        assert_eq!(p.precision(), -2);
        assert!(p.is_zero());
    }

    #[test]
    fn order_and_norm() {
        let t = RadixTable::new();
        assert_eq!(emb(5, 12, 0, &t).ord(), OrdResult::Known(-3));
        assert_eq!(FiniteAdele::zero(4).ord(), OrdResult::AtLeast(4));
        assert_eq!(emb(6, 1, 5, &t).ord(), OrdResult::Known(2));
        assert_eq!(emb(5, 12, 0, &t).norm(&t).unwrap(), r(12, 1));
        assert_eq!(emb(1, 1, 3, &t).norm(&t).unwrap(), r(1, 1));
        let h = emb(1, 2, 3, &t);
        match h.distance(&h, &t) {
            Err(AdeleError::IndeterminateNorm { precision, bound }) => {
                assert_eq!(precision, 3);
                assert_eq!(bound, r(1, 12));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fractional_part_examples() {
        let t = RadixTable::new();
        assert_eq!(emb(5, 12, 0, &t).fractional_part(&t).unwrap(), r(5, 12));
        assert_eq!(emb(7, 1, 3, &t).fractional_part(&t).unwrap(), r(0, 1));
        assert_eq!(emb(-1, 2, 2, &t).fractional_part(&t).unwrap(), r(1, 2));
        assert!(matches!(
            emb(1, 2, -1, &t).fractional_part(&t),
            Err(AdeleError::InsufficientPrecision { needed: 0, available: -1 })
        ));
    }

    #[test]
    fn digit_string_round_trip() {
        let t = RadixTable::new();
        let x = emb(5, 12, 0, &t);
        assert_eq!(x.to_string(), "-3:1,2,0|0");
        assert_eq!(FiniteAdele::parse("-3:1,2,0|0", &t).unwrap(), x);
        assert_eq!(FiniteAdele::zero(3).to_string(), "zero|3");
        assert_eq!(FiniteAdele::parse("zero|3", &t).unwrap(), FiniteAdele::zero(3));
        assert!(FiniteAdele::parse("-3:1,3,0|0", &t).is_err()); // radix(-2) = 3
        assert!(FiniteAdele::parse("-3:1,2|0", &t).is_err());
        assert!(FiniteAdele::parse("-3:0,2,0|0", &t).is_err());
    }

    #[test]
    fn json_form() {
        let t = RadixTable::new();
        let x = emb(5, 12, 0, &t);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":-3,"digits":[1,2,0],"precision":0}"#);
        let back: AdeleJson = serde_json::from_str(&s).unwrap();
        assert_eq!(FiniteAdele::from_json(&back, &t).unwrap(), x);
    }
}
