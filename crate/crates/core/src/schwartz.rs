//! Bruhat–Schwartz test functions `D^ℓ_k` and their Fourier transform.
//!
//! A function in `D^ℓ_k` is supported in `𝔞^k` and constant on cosets of
//! `𝔞^ℓ`, so it is a finite table of values indexed by `𝔞^k / 𝔞^ℓ`. Coset
//! representatives are the digit tuples `(a_{-k}, …, a_{-ℓ-1})` in
//! lexicographic order, `a_{-k}` most significant.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::adele::FiniteAdele;
use crate::error::{AdeleError, Result};
use crate::harmonic::RotationNumber;
use crate::radix::RadixTable;

/// Largest coefficient table the dense transform will build.
pub const MAX_DIMENSION: usize = 1 << 16;

/// Coset representatives of `𝔞^k / 𝔞^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBasis {
    k: i64,
    l: i64,
    /// `radix(j)` for `j = -k, …, -ℓ-1`.
    radices: Vec<u64>,
    /// `rep_u · psi_exp(k)`, an integer in `[0, dim)`.
    scaled: Vec<u64>,
}

impl CosetBasis {
    pub fn new(k: i64, l: i64, table: &RadixTable) -> Result<Self> {
        if l > k {
            return Err(AdeleError::Domain(format!(
                "constancy index {l} exceeds support index {k}"
            )));
        }
        let radices = table.radices(-k, -l)?;
        let mut dim: usize = 1;
        for &r in &radices {
            dim = dim
                .checked_mul(r as usize)
                .filter(|&d| d <= MAX_DIMENSION)
                .ok_or_else(|| {
                    AdeleError::Domain(format!(
                        "D^{l}_{k} has dimension above the limit {MAX_DIMENSION}"
                    ))
                })?;
        }
        let mut basis = CosetBasis {
            k,
            l,
            radices,
            scaled: Vec::with_capacity(dim),
        };
        for u in 0..dim {
            let digits = basis.digits(u);
            // least significant digit is a_{-k}
            let a = digits
                .iter()
                .zip(&basis.radices)
                .rev()
                .fold(0u64, |acc, (&d, &r)| acc * r + d);
            basis.scaled.push(a);
        }
        Ok(basis)
    }

    pub fn support(&self) -> i64 {
        self.k
    }

    pub fn constancy(&self) -> i64 {
        self.l
    }

    pub fn dim(&self) -> usize {
        self.scaled.len()
    }

    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    /// Digits `(a_{-k}, …, a_{-ℓ-1})` of the `u`-th representative.
    pub fn digits(&self, mut u: usize) -> Vec<u64> {
        let mut digits = vec![0; self.radices.len()];
        for (slot, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *slot = (u % r as usize) as u64;
            u /= r as usize;
        }
        digits
    }

    /// Lexicographic index of a digit tuple.
    pub fn index(&self, digits: &[u64]) -> Result<usize> {
        if digits.len() != self.radices.len() {
            return Err(AdeleError::Parse(format!(
                "representative of D^{}_{} needs {} digits, got {}",
                self.l,
                self.k,
                self.radices.len(),
                digits.len()
            )));
        }
        let mut u = 0usize;
        for (i, (&d, &r)) in digits.iter().zip(&self.radices).enumerate() {
            if d >= r {
                return Err(AdeleError::Parse(format!(
                    "digit {d} at index {} is not below radix {r}",
                    -self.k + i as i64
                )));
            }
            u = u * r as usize + d as usize;
        }
        Ok(u)
    }

    /// `rep_u · psi_exp(k)`.
    pub fn scaled_rep(&self, u: usize) -> u64 {
        self.scaled[u]
    }
}

/// A function in `D^ℓ_k` given by its values on coset representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    basis: CosetBasis,
    coeffs: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub rep: Vec<u64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionJson {
    pub support_k: i64,
    pub constancy_l: i64,
    pub coeffs: Vec<CoeffJson>,
}

/// `exp(2πi j / d)` for `j = 0..d`.
fn twiddles(d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|j| {
            RotationNumber::new(&num_rational::BigRational::new(j.into(), d.into())).to_complex()
        })
        .collect()
}

fn psi_f64(n: i64, table: &RadixTable) -> Result<f64> {
    Ok(table.psi_exp(n)?.to_f64().unwrap_or(f64::INFINITY))
}

impl TestFunction {
    pub fn new(k: i64, l: i64, coeffs: Vec<Complex64>, table: &RadixTable) -> Result<Self> {
        let basis = CosetBasis::new(k, l, table)?;
        if coeffs.len() != basis.dim() {
            return Err(AdeleError::Domain(format!(
                "D^{l}_{k} has dimension {}, got {} coefficients",
                basis.dim(),
                coeffs.len()
            )));
        }
        Ok(TestFunction { basis, coeffs })
    }

    pub fn zero(k: i64, l: i64, table: &RadixTable) -> Result<Self> {
        let basis = CosetBasis::new(k, l, table)?;
        let coeffs = vec![Complex64::zero(); basis.dim()];
        Ok(TestFunction { basis, coeffs })
    }

    /// `𝟙_ℓ(x - center)`, supported in the smallest ball `𝔞^k ⊇ 𝔞^ℓ ∪ Ẑ`
    /// that contains the center.
    pub fn indicator(l: i64, center: &FiniteAdele, table: &RadixTable) -> Result<Self> {
        let k = match center.ord() {
            crate::OrdResult::Known(g) => (-g).max(0).max(l),
            crate::OrdResult::AtLeast(_) => l.max(0),
        };
        let mut f = Self::zero(k, l, table)?;
        let u = f.coset_of(center)?.expect("center lies in the support");
        f.coeffs[u] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn support(&self) -> i64 {
        self.basis.k
    }

    pub fn constancy(&self) -> i64 {
        self.basis.l
    }

    pub fn basis(&self) -> &CosetBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Index of the coset of `x`, or `None` when `x ∉ 𝔞^k`.
    fn coset_of(&self, x: &FiniteAdele) -> Result<Option<usize>> {
        let (k, l) = (self.basis.k, self.basis.l);
        if x.precision() < -l {
            return Err(AdeleError::InsufficientPrecision {
                needed: -l,
                available: x.precision(),
            });
        }
        if !x.is_zero() && x.order() < -k {
            return Ok(None);
        }
        let digits: Vec<u64> = (-k..-l).map(|j| x.digit(j).unwrap_or(0)).collect();
        self.basis.index(&digits).map(Some)
    }

    pub fn eval(&self, x: &FiniteAdele) -> Result<Complex64> {
        Ok(self
            .coset_of(x)?
            .map_or(Complex64::zero(), |u| self.coeffs[u]))
    }

    /// `∫ φ dx = psi_exp(ℓ) · Σ_u φ(a_u)`.
    pub fn integrate(&self, table: &RadixTable) -> Result<Complex64> {
        let sum: Complex64 = self.coeffs.iter().sum();
        Ok(sum * psi_f64(self.basis.l, table)?)
    }

    /// The same function viewed in `D^{ℓ'}_{k'}` with `ℓ' <= ℓ <= k <= k'`.
    pub fn refine(&self, k: i64, l: i64, table: &RadixTable) -> Result<Self> {
        if k < self.basis.k || l > self.basis.l {
            return Err(AdeleError::Domain(format!(
                "D^{}_{} does not embed in D^{l}_{k}",
                self.basis.l, self.basis.k
            )));
        }
        let mut out = Self::zero(k, l, table)?;
        let outside = (k - self.basis.k) as usize;
        let keep = self.basis.radices.len();
        for u in 0..out.dim() {
            let digits = out.basis.digits(u);
            if digits[..outside].iter().all(|&d| d == 0) {
                let v = self.basis.index(&digits[outside..outside + keep])?;
                out.coeffs[u] = self.coeffs[v];
            }
        }
        Ok(out)
    }

    fn transform(&self, sign: f64, table: &RadixTable) -> Result<Self> {
        let (k, l) = (self.basis.k, self.basis.l);
        let out_basis = CosetBasis::new(-l, -k, table)?;
        let d = self.dim();
        let w = twiddles(d);
        let weight = psi_f64(l, table)?;
        let coeffs = (0..d)
            .map(|v| {
                let x = out_basis.scaled_rep(v) as u128;
                let sum: Complex64 = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(u, c)| {
                        let j = (x * self.basis.scaled_rep(u) as u128 % d as u128) as usize;
                        let e = if sign > 0.0 { w[j] } else { w[j].conj() };
                        c * e
                    })
                    .sum();
                sum * weight
            })
            .collect();
        Ok(TestFunction {
            basis: out_basis,
            coeffs,
        })
    }

    /// `φ̂(ξ) = ∫ φ(x) χ(ξx) dx`, an element of `D^{-k}_{-ℓ}`.
    pub fn fourier(&self, table: &RadixTable) -> Result<Self> {
        self.transform(1.0, table)
    }

    /// `φ(x) = ∫ φ̂(ξ) χ(-ξx) dξ`; undoes [`TestFunction::fourier`].
    pub fn inverse_fourier(&self, table: &RadixTable) -> Result<Self> {
        self.transform(-1.0, table)
    }

    /// `∫ f · conj(g)` over a common refinement.
    pub fn inner_product(&self, other: &Self, table: &RadixTable) -> Result<Complex64> {
        let k = self.basis.k.max(other.basis.k);
        let l = self.basis.l.min(other.basis.l);
        let f = self.refine(k, l, table)?;
        let g = other.refine(k, l, table)?;
        let sum: Complex64 = f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a * b.conj()).sum();
        Ok(sum * psi_f64(l, table)?)
    }

    /// Largest coefficient difference, after refining both to a common space.
    pub fn max_abs_diff(&self, other: &Self, table: &RadixTable) -> Result<f64> {
        let k = self.basis.k.max(other.basis.k);
        let l = self.basis.l.min(other.basis.l);
        let f = self.refine(k, l, table)?;
        let g = other.refine(k, l, table)?;
        Ok(f.coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn to_json(&self) -> TestFunctionJson {
        TestFunctionJson {
            support_k: self.basis.k,
            constancy_l: self.basis.l,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(u, c)| CoeffJson {
                    rep: self.basis.digits(u),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }

    /// Reads the JSON form. Representatives left out have value zero.
    pub fn from_json(json: &TestFunctionJson, table: &RadixTable) -> Result<Self> {
        let mut f = Self::zero(json.support_k, json.constancy_l, table)?;
        let mut seen = vec![false; f.dim()];
        for c in &json.coeffs {
            let u = f.basis.index(&c.rep)?;
            if std::mem::replace(&mut seen[u], true) {
                return Err(AdeleError::Parse(format!("duplicate representative {:?}", c.rep)));
            }
            f.coeffs[u] = Complex64::new(c.re, c.im);
        }
        Ok(f)
    }
}

/// The matrix of `fourier` on `D^ℓ_k`, one row per output coset.
pub fn fourier_matrix(k: i64, l: i64, table: &RadixTable) -> Result<Vec<Vec<Complex64>>> {
    let d = CosetBasis::new(k, l, table)?.dim();
    let mut columns = Vec::with_capacity(d);
    for u in 0..d {
        let mut e = vec![Complex64::zero(); d];
        e[u] = Complex64::new(1.0, 0.0);
        columns.push(TestFunction::new(k, l, e, table)?.fourier(table)?.coeffs);
    }
    Ok((0..d).map(|v| columns.iter().map(|c| c[v]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn emb(n: i64, d: i64, t: &RadixTable) -> FiniteAdele {
        FiniteAdele::from_rational(&BigRational::new(n.into(), d.into()), 6, t).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_layout() {
        let t = RadixTable::new();
        let b = CosetBasis::new(1, -1, &t).unwrap();
        // digits at indices -1, 0 with radices 2, 2
        assert_eq!(b.radices(), &[2, 2]);
        assert_eq!(b.digits(1), vec![0, 1]);
        assert_eq!(b.index(&[1, 0]).unwrap(), 2);
        // rep (a_{-1}, a_0) = (1, 0) is 1/2, scaled by psi_exp(1) = 2
        assert_eq!(b.scaled_rep(2), 1);
        assert_eq!(b.scaled_rep(1), 2);
        assert!(CosetBasis::new(-1, 0, &t).is_err());
    }

    #[test]
    fn indicator_examples() {
        let t = RadixTable::new();
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!((unit.support(), unit.constancy(), unit.coeffs()), (0, 0, &[c(1.0)][..]));

        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!((even.support(), even.constancy()), (0, -1));
        assert_eq!(even.coeffs(), &[c(1.0), c(0.0)]);

        let half = TestFunction::indicator(0, &emb(1, 2, &t), &t).unwrap();
        assert_eq!((half.support(), half.constancy()), (1, 0));
        assert_eq!(half.coeffs(), &[c(0.0), c(1.0)]);
    }

    #[test]
    fn eval_examples() {
        let t = RadixTable::new();
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(unit.eval(&emb(7, 1, &t)).unwrap(), c(1.0));
        assert_eq!(unit.eval(&emb(1, 2, &t)).unwrap(), c(0.0));
        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(even.eval(&emb(5, 12, &t)).unwrap(), c(0.0));
        assert_eq!(even.eval(&emb(4, 1, &t)).unwrap(), c(1.0));
        let coarse = FiniteAdele::from_rational(&BigRational::from_integer(4.into()), 0, &t).unwrap();
        assert!(even.eval(&coarse).is_err());
    }

    #[test]
    fn integrate_examples() {
        let t = RadixTable::new();
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(unit.integrate(&t).unwrap(), c(1.0));
        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(even.integrate(&t).unwrap(), c(0.5));
        let f = TestFunction::new(1, 0, vec![c(1.0), c(-1.0)], &t).unwrap();
        assert_eq!(f.integrate(&t).unwrap(), c(0.0));
    }

    #[test]
    fn fourier_examples() {
        let t = RadixTable::new();
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(unit.fourier(&t).unwrap(), unit);

        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        let fe = even.fourier(&t).unwrap();
        assert_eq!((fe.support(), fe.constancy()), (1, 0));
        assert_eq!(fe.coeffs(), &[c(0.5), c(0.5)]);

        let half = TestFunction::indicator(0, &emb(1, 2, &t), &t).unwrap();
        let fh = half.fourier(&t).unwrap();
        assert_eq!((fh.support(), fh.constancy()), (0, -1));
        // ξ = 0 gives 1, ξ = 1 gives χ(1/2) = -1
        assert_eq!(fh.coeffs(), &[c(1.0), c(-1.0)]);
    }

    #[test]
    fn inverse_round_trip() {
        let t = RadixTable::new();
        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        let back = even.fourier(&t).unwrap().inverse_fourier(&t).unwrap();
        assert!(back.max_abs_diff(&even, &t).unwrap() < 1e-12);
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(unit.inverse_fourier(&t).unwrap(), unit);
    }

    #[test]
    fn inner_product_examples() {
        let t = RadixTable::new();
        let unit = TestFunction::indicator(0, &FiniteAdele::zero(6), &t).unwrap();
        let even = TestFunction::indicator(-1, &FiniteAdele::zero(6), &t).unwrap();
        assert_eq!(unit.inner_product(&unit, &t).unwrap(), c(1.0));
        assert_eq!(even.inner_product(&unit, &t).unwrap(), c(0.5));
    }

    #[test]
    fn refine_keeps_values() {
        let t = RadixTable::new();
        let half = TestFunction::indicator(0, &emb(1, 2, &t), &t).unwrap();
        let fine = half.refine(2, -1, &t).unwrap();
        assert_eq!(fine.dim(), 6 * 2);
        for (n, d) in [(1, 2), (3, 2), (1, 1), (1, 6), (5, 2)] {
            let x = emb(n, d, &t);
            assert_eq!(half.eval(&x).unwrap(), fine.eval(&x).unwrap(), "{n}/{d}");
        }
        assert_eq!(half.integrate(&t).unwrap(), fine.integrate(&t).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let t = RadixTable::new();
        let f = TestFunction::new(1, -1, vec![c(1.0), Complex64::new(0.0, 2.0), c(0.0), c(-3.5)], &t).unwrap();
        let json = serde_json::to_string(&f.to_json()).unwrap();
        let back: TestFunctionJson = serde_json::from_str(&json).unwrap();
        assert_eq!(TestFunction::from_json(&back, &t).unwrap(), f);

        let sparse: TestFunctionJson = serde_json::from_str(
            r#"{"support_k":1,"constancy_l":0,"coeffs":[{"rep":[1],"re":1.0,"im":0.0}]}"#,
        )
        .unwrap();
        assert_eq!(TestFunction::from_json(&sparse, &t).unwrap().coeffs(), &[c(0.0), c(1.0)]);
    }
}
