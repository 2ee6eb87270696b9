//! Characters, Haar measure and closed-form character integrals.
//!
//! The canonical character is `χ(x) = exp(2πi{x})`. Its values are carried
//! as exact rotation numbers `{x} ∈ ℚ/ℤ`; floating point only appears in
//! [`RotationNumber::to_complex`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::adele::{FiniteAdele, OrdResult};
use crate::error::{AdeleError, Result};
use crate::radix::RadixTable;
use crate::rational::{format_rational, frac_mod_one};

/// An element of `ℚ/ℤ`, standing for the root of unity `exp(2πi·r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationNumber(BigRational);

impl RotationNumber {
    /// Reduces `q` into `[0, 1)`.
    pub fn new(q: &BigRational) -> Self {
        RotationNumber(frac_mod_one(q))
    }

    pub fn zero() -> Self {
        RotationNumber(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `exp(2πi·r)`, exact at multiples of a quarter turn.
    pub fn to_complex(&self) -> Complex64 {
        let r = &self.0;
        let four = r * BigRational::from_integer(4.into());
        if four.is_integer() {
            return match four.to_integer().to_u8() {
                Some(0) => Complex64::new(1.0, 0.0),
                Some(1) => Complex64::new(0.0, 1.0),
                Some(2) => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        // fold into (-1/2, 1/2] before rounding to keep the angle small
        let half = BigRational::new(1.into(), 2.into());
        let folded = if r > &half { r - BigRational::one() } else { r.clone() };
        let (s, c) = (std::f64::consts::TAU * folded.to_f64().unwrap()).sin_cos();
        Complex64::new(c, s)
    }
}

impl Add for &RotationNumber {
    type Output = RotationNumber;
    fn add(self, rhs: Self) -> RotationNumber {
        RotationNumber::new(&(&self.0 + &rhs.0))
    }
}

impl Sub for &RotationNumber {
    type Output = RotationNumber;
    fn sub(self, rhs: Self) -> RotationNumber {
        RotationNumber::new(&(&self.0 - &rhs.0))
    }
}

impl Neg for &RotationNumber {
    type Output = RotationNumber;
    fn neg(self) -> RotationNumber {
        RotationNumber::new(&-&self.0)
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// An exact Haar measure.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MeasureValue(BigRational);

impl MeasureValue {
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }
}

impl Add for MeasureValue {
    type Output = MeasureValue;
    fn add(self, rhs: Self) -> MeasureValue {
        MeasureValue(self.0 + rhs.0)
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Region {
    /// `𝔞^n = psi_exp(-n)·Ẑ`.
    Ball(i64),
    /// `𝔞^n \ 𝔞^{n-1}`.
    Sphere(i64),
    /// `q·Ẑ`.
    ScaledUnit(BigRational),
}

/// `χ(x) = exp(2πi{x})` as the rotation number `{x}`.
pub fn canonical_character(x: &FiniteAdele, table: &RadixTable) -> Result<RotationNumber> {
    Ok(RotationNumber(x.fractional_part(table)?))
}

/// `χ_ξ(x) = χ(ξx)`.
pub fn character_at(xi: &FiniteAdele, x: &FiniteAdele, table: &RadixTable) -> Result<RotationNumber> {
    let product = xi.mul(x, table)?;
    if product.precision() < 0 {
        return Err(AdeleError::InsufficientPrecision {
            needed: 0,
            available: product.precision(),
        });
    }
    canonical_character(&product, table)
}

fn known_order(xi: &FiniteAdele, table: &RadixTable) -> Result<i64> {
    match xi.ord() {
        OrdResult::Known(g) => Ok(g),
        OrdResult::AtLeast(n) => Err(AdeleError::IndeterminateNorm {
            precision: n,
            bound: table.psi_exp(-n)?,
        }),
    }
}

/// The threshold `n` with `χ_ξ` trivial on `𝔞^n` and nontrivial on `𝔞^{n+1}`;
/// this is `ord(ξ)`.
pub fn character_rank(xi: &FiniteAdele, table: &RadixTable) -> Result<i64> {
    known_order(xi, table)
}

/// A point of `𝔞^{rank+1}` where `χ_ξ` is nontrivial, namely `psi_exp(-rank-1)`.
pub fn nontrivial_witness(xi: &FiniteAdele, table: &RadixTable) -> Result<FiniteAdele> {
    let rank = character_rank(xi, table)?;
    let point = table.psi_exp(-rank - 1)?;
    FiniteAdele::from_rational(&point, rank.abs() + xi.precision().abs() + 1, table)
}

/// Generator `q^{-1}` of `Ann(qẐ) = q^{-1}Ẑ`.
pub fn annihilator_generator(q: &BigRational) -> Result<BigRational> {
    if q.is_zero() {
        return Err(AdeleError::Domain("the annihilator of {0} is not of the form qẐ".into()));
    }
    Ok(q.recip())
}

pub fn measure(region: &Region, table: &RadixTable) -> Result<MeasureValue> {
    let v = match region {
        Region::Ball(n) => table.psi_exp(*n)?,
        Region::Sphere(n) => table.psi_exp(*n)? - table.psi_exp(n - 1)?,
        Region::ScaledUnit(q) if q.is_zero() => BigRational::zero(),
        Region::ScaledUnit(q) => q.abs().recip(),
    };
    Ok(MeasureValue(v))
}

/// Whether `ord(ξ) >= n`, decided from whatever digits `ξ` carries.
fn order_at_least(xi: &FiniteAdele, n: i64, table: &RadixTable) -> Result<bool> {
    match xi.ord() {
        OrdResult::Known(g) => Ok(g >= n),
        OrdResult::AtLeast(m) if m >= n => Ok(true),
        OrdResult::AtLeast(_) => known_order(xi, table).map(|_| false),
    }
}

/// `∫_{𝔞^n} χ(-ξx) dx`: `psi_exp(n)` when `ord ξ >= n`, else `0`.
pub fn ball_character_integral(n: i64, xi: &FiniteAdele, table: &RadixTable) -> Result<BigRational> {
    if order_at_least(xi, n, table)? {
        table.psi_exp(n)
    } else {
        Ok(BigRational::zero())
    }
}

/// `∫_{𝔞^n \ 𝔞^{n-1}} χ(-ξx) dx`, the difference of two ball integrals.
pub fn sphere_character_integral(n: i64, xi: &FiniteAdele, table: &RadixTable) -> Result<BigRational> {
    if order_at_least(xi, n, table)? {
        return Ok(table.psi_exp(n)? - table.psi_exp(n - 1)?);
    }
    if known_order(xi, table)? == n - 1 {
        Ok(-table.psi_exp(n - 1)?)
    } else {
        Ok(BigRational::zero())
    }
}
