//! Radial and oscillatory integrals over `𝔸_f` as generalized Dirichlet
//! series with certified tail bounds.
//!
//! With `γ = ord ξ`, the integral of a radial kernel against `χ(-ξx)`
//! collapses sphere by sphere to a series over `m >= -γ` in the ladder
//! values `psi_exp(m)`. Every tail bound below only uses
//! `psi_exp(m + j) >= 2^j psi_exp(m)`.

use num_complex::Complex64;

use crate::adele::{FiniteAdele, OrdResult};
use crate::error::{AdeleError, Result};
use crate::radix::RadixTable;

/// Hard cap on the number of terms any series may use.
pub const MAX_TERMS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    /// Certified bound on `|exact - value|`.
    pub tail_bound: f64,
    pub terms_used: usize,
    pub requested_eps: f64,
}

/// Neumaier's compensated summation, run on real and imaginary parts.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        let (re, cre) = neumaier_step(self.sum.re, self.comp.re, x.re);
        let (im, cim) = neumaier_step(self.sum.im, self.comp.im, x.im);
        self.sum = Complex64::new(re, im);
        self.comp = Complex64::new(cre, cim);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier_step(sum: f64, comp: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() {
        (sum - t) + x
    } else {
        (x - t) + sum
    };
    (t, comp + c)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(AdeleError::Domain(format!("eps must be positive, got {eps}")))
    }
}

/// Sums `term(m)` for `m = start, start + step, …` until `tail(next)` is at
/// most `eps`, where `tail(next)` bounds everything from `next` onwards.
fn sum_series(
    start: i64,
    step: i64,
    eps: f64,
    table: &RadixTable,
    mut term: impl FnMut(i64) -> Result<Complex64>,
    mut tail: impl FnMut(i64) -> Result<f64>,
) -> Result<SeriesResult> {
    check_eps(eps)?;
    let mut acc = CompensatedSum::default();
    let mut m = start;
    let mut terms = 0;
    loop {
        acc.add(term(m)?);
        terms += 1;
        m += step;
        let bound = tail(m)?;
        if bound <= eps {
            return Ok(SeriesResult {
                value: acc.total(),
                tail_bound: bound,
                terms_used: terms,
                requested_eps: eps,
            });
        }
        // the tail may also need index m - 1 or m + 1
        if terms >= MAX_TERMS || m.abs() + 1 >= table.ceiling() {
            return Err(AdeleError::NonConvergence {
                terms,
                tail_bound: bound,
                eps,
            });
        }
    }
}

/// `psi_exp(m)^{-s}`.
fn psi_pow_neg(m: i64, s: Complex64, table: &RadixTable) -> Result<Complex64> {
    Ok((-s * table.ln_psi_exp(m)?).exp())
}

fn known_order(xi: &FiniteAdele) -> Result<i64> {
    match xi.ord() {
        OrdResult::Known(g) => Ok(g),
        OrdResult::AtLeast(n) => Err(AdeleError::Domain(format!(
            "frequency is zero to precision {n}, its order is unknown"
        ))),
    }
}

/// A nonincreasing function `f: (0, ∞) → [0, ∞)` together with the two
/// improper integrals that bound the tails of its ladder sums.
pub trait RadialProfile {
    fn value(&self, r: f64) -> f64;
    /// `∫_0^a f(t) dt`, possibly infinite.
    fn integral_below(&self, a: f64) -> f64;
    /// `∫_b^∞ f(t) dt`, possibly infinite.
    fn integral_above(&self, b: f64) -> f64;
}

/// `f(r) = c`.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl RadialProfile for Constant {
    fn value(&self, _r: f64) -> f64 {
        self.0
    }
    fn integral_below(&self, a: f64) -> f64 {
        self.0 * a
    }
    fn integral_above(&self, _b: f64) -> f64 {
        if self.0 == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// `f(r) = r^a` with `a <= 0`.
#[derive(Debug, Clone, Copy)]
pub struct Power(pub f64);

impl RadialProfile for Power {
    fn value(&self, r: f64) -> f64 {
        r.powf(self.0)
    }
    fn integral_below(&self, a: f64) -> f64 {
        if self.0 > -1.0 {
            a.powf(self.0 + 1.0) / (self.0 + 1.0)
        } else {
            f64::INFINITY
        }
    }
    fn integral_above(&self, b: f64) -> f64 {
        if self.0 < -1.0 {
            -b.powf(self.0 + 1.0) / (self.0 + 1.0)
        } else {
            f64::INFINITY
        }
    }
}

/// `f(r) = max(-ln r, 0)`.
#[derive(Debug, Clone, Copy)]
pub struct NegLog;

impl RadialProfile for NegLog {
    fn value(&self, r: f64) -> f64 {
        (-r.ln()).max(0.0)
    }
    fn integral_below(&self, a: f64) -> f64 {
        let a = a.min(1.0);
        a * (1.0 - a.ln())
    }
    fn integral_above(&self, b: f64) -> f64 {
        if b >= 1.0 {
            0.0
        } else {
            1.0 - self.integral_below(b)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialRegion {
    /// `Ẑ`, the spheres `S_n` with `n <= 0`.
    UnitBall,
    /// All of `𝔸_f`.
    All,
}

/// `∫ f(‖x‖) dx = Σ_n f(psi_exp(n)) (psi_exp(n) - psi_exp(n-1))`.
///
/// The sum over `n <= 0` is bounded by `∫_0 f` and the sum over `n > 0` by
/// `∫^∞ f`, both as in the integral criterion.
pub fn radial_integral(
    profile: &dyn RadialProfile,
    region: RadialRegion,
    eps: f64,
    table: &RadixTable,
) -> Result<SeriesResult> {
    let term = |n: i64| -> Result<Complex64> {
        let r = table.ln_psi_exp(n)?.exp();
        let below = table.ln_psi_exp(n - 1)?.exp();
        Ok(Complex64::new(profile.value(r) * (r - below), 0.0))
    };
    let inner = sum_series(0, -1, eps / 2.0, table, term, |next| {
        Ok(profile.integral_below(table.ln_psi_exp(next)?.exp()))
    })?;
    if region == RadialRegion::UnitBall {
        return Ok(SeriesResult {
            requested_eps: eps,
            ..inner
        });
    }
    let outer = sum_series(1, 1, eps / 2.0, table, term, |next| {
        Ok(profile.integral_above(table.ln_psi_exp(next - 1)?.exp()))
    })?;
    Ok(SeriesResult {
        value: inner.value + outer.value,
        tail_bound: inner.tail_bound + outer.tail_bound,
        terms_used: inner.terms_used + outer.terms_used,
        requested_eps: eps,
    })
}

/// `∫_{𝔸_f} ‖x‖^{s-1} χ(-ξx) dx = Σ_{m >= -γ} psi_exp(m)^{-s} (1 - e^{(s-1)Λ(m)})`
/// with `e^{Λ(m)} = psi_exp(m) / psi_exp(m-1)`, for `Re s > 1`.
pub fn riesz_kernel(s: Complex64, xi: &FiniteAdele, eps: f64, table: &RadixTable) -> Result<SeriesResult> {
    if !(s.re > 1.0) {
        return Err(AdeleError::Domain(format!("Re(s) must exceed 1, got {}", s.re)));
    }
    let gamma = known_order(xi)?;
    let sigma = s.re;
    let ratio = 1.0 - (-sigma).exp2();
    sum_series(
        -gamma,
        1,
        eps,
        table,
        |m| {
            let lambda = (table.radix(m - 1)? as f64).ln();
            let head = psi_pow_neg(m, s, table)?;
            Ok(head * (1.0 - ((s - 1.0) * lambda).exp()))
        },
        |next| {
            // |term| <= psi(m)^{-σ} + psi(m)^{-1} psi(m-1)^{1-σ}; both parts
            // shrink by at least 2^{-σ} per step
            let a = (-sigma * table.ln_psi_exp(next)?).exp();
            let b = (-table.ln_psi_exp(next)? + (1.0 - sigma) * table.ln_psi_exp(next - 1)?).exp();
            Ok((a + b) / ratio)
        },
    )
}

/// `Γ_{𝔸_f}(s) = ∫ ‖x‖^{s-1} χ(x) dx`, the Riesz kernel at `ξ = -1`.
pub fn gamma_af(s: Complex64, eps: f64, table: &RadixTable) -> Result<SeriesResult> {
    let minus_one = FiniteAdele::from_rational(&(-num_rational::BigRational::from_integer(1.into())), 1, table)?;
    riesz_kernel(s, &minus_one, eps, table)
}

/// `∫ log‖x‖ χ(-ξx) dx = -Σ_{m >= -γ} Λ(m) / psi_exp(m)`.
pub fn log_norm_transform(xi: &FiniteAdele, eps: f64, table: &RadixTable) -> Result<SeriesResult> {
    let gamma = known_order(xi)?;
    sum_series(
        -gamma,
        1,
        eps,
        table,
        |m| {
            let lambda = (table.radix(m - 1)? as f64).ln();
            Ok(Complex64::new(-lambda * (-table.ln_psi_exp(m)?).exp(), 0.0))
        },
        |next| {
            // Λ(m) <= ln psi(m), and ln t / t decreases once t >= e
            if next < 2 {
                return Ok(f64::INFINITY);
            }
            let ln_psi = table.ln_psi_exp(next)?;
            Ok(2.0 * (std::f64::consts::LN_2 + ln_psi) * (-ln_psi).exp())
        },
    )
}

/// `∫ χ(-ξx) / (‖x‖² + M²) dx`
/// `= Σ_{m >= -γ} psi_exp(m)^{-1} (1/(psi_exp(m)^{-2} + M²) - 1/(psi_exp(m-1)^{-2} + M²))`.
pub fn cauchy_kernel_transform(m_param: f64, xi: &FiniteAdele, eps: f64, table: &RadixTable) -> Result<SeriesResult> {
    if !(m_param > 0.0 && m_param.is_finite()) {
        return Err(AdeleError::Domain(format!("M must be positive, got {m_param}")));
    }
    let gamma = known_order(xi)?;
    let m2 = m_param * m_param;
    sum_series(
        -gamma,
        1,
        eps,
        table,
        |m| {
            let inv = (-table.ln_psi_exp(m)?).exp();
            let inv_prev = (-table.ln_psi_exp(m - 1)?).exp();
            Ok(Complex64::new(
                inv * (1.0 / (inv * inv + m2) - 1.0 / (inv_prev * inv_prev + m2)),
                0.0,
            ))
        },
        // each bracket lies in [0, 1/M²]
        |next| Ok(2.0 * (-table.ln_psi_exp(next)?).exp() / m2),
    )
}

/// `∫_Ẑ ‖x‖^{s-1} dx = Σ_{n >= 0} (1 - 1/radix(n)) psi_exp(n)^{-s}`, `Re s > 0`.
pub fn unit_ball_zeta(s: Complex64, eps: f64, table: &RadixTable) -> Result<SeriesResult> {
    if !(s.re > 0.0) {
        return Err(AdeleError::Domain(format!("Re(s) must be positive, got {}", s.re)));
    }
    let sigma = s.re;
    let ratio = 1.0 - (-sigma).exp2();
    sum_series(
        0,
        1,
        eps,
        table,
        |n| {
            let weight = 1.0 - 1.0 / table.radix(n)? as f64;
            Ok(psi_pow_neg(n, s, table)? * weight)
        },
        |next| Ok((-sigma * table.ln_psi_exp(next)?).exp() / ratio),
    )
}
