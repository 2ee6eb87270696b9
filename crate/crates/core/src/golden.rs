//! Known values checked by `adele selftest`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::dirichlet::{gamma_af, unit_ball_zeta};
use crate::harmonic::{
    ball_character_integral, canonical_character, measure, sphere_character_integral, Region,
};
use crate::padic::{crt_decompose, crt_recompose, window_primes};
use crate::schwartz::TestFunction;
use crate::{FiniteAdele, RadixTable, Result};

#[derive(Debug, Clone, Serialize)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(bool, String)> {
    let ok = got == want;
    Ok((ok, if ok { format!("{got:?}") } else { format!("got {got:?}, want {want:?}") }))
}

fn ladder(t: &RadixTable) -> Result<(bool, String)> {
    let got = (0..=8).map(|n| t.psi_exp_int(n).map(|v| v.to_string())).collect::<Result<Vec<_>>>()?;
    let want = ["1", "2", "6", "12", "60", "420", "840", "2520", "27720"];
    expect(got.join(","), want.join(","))
}

fn radices(t: &RadixTable) -> Result<(bool, String)> {
    expect(t.radices(0, 10)?, vec![2, 3, 2, 5, 7, 2, 3, 11, 13, 2])
}

fn minus_one(t: &RadixTable) -> Result<(bool, String)> {
    expect(FiniteAdele::from_rational(&r(-1, 1), 4, t)?.to_string(), "0:1,2,1,4|4".into())
}

fn five_twelfths(t: &RadixTable) -> Result<(bool, String)> {
    expect(FiniteAdele::from_rational(&r(5, 12), 0, t)?.to_string(), "-3:1,2,0|0".into())
}

fn scaled_unit_measures(t: &RadixTable) -> Result<(bool, String)> {
    let qs = [r(1, 1), r(2, 1), r(3, 1), r(4, 1), r(6, 1), r(12, 1), r(1, 2), r(5, 1)];
    for q in &qs {
        let m = measure(&Region::ScaledUnit(q.clone()), t)?.into_inner();
        if m != q.recip() {
            return Ok((false, format!("measure({q}Ẑ) = {m}")));
        }
    }
    Ok((true, format!("{} scaled units", qs.len())))
}

fn ball_measures(t: &RadixTable) -> Result<(bool, String)> {
    let got = (-2..=3).map(|n| Ok(measure(&Region::Ball(n), t)?.to_string())).collect::<Result<Vec<_>>>()?;
    expect(got.join(","), "1/6,1/2,1,2,6,12".into())
}

fn character_integrals(t: &RadixTable) -> Result<(bool, String)> {
    let half = FiniteAdele::from_rational(&r(1, 2), 4, t)?;
    let got = vec![
        ball_character_integral(-1, &half, t)?,
        ball_character_integral(0, &half, t)?,
        sphere_character_integral(0, &half, t)?,
        sphere_character_integral(-1, &half, t)?,
        sphere_character_integral(1, &half, t)?,
    ];
    expect(got, vec![r(1, 2), r(0, 1), r(-1, 2), r(1, 3), r(0, 1)])
}

fn character(t: &RadixTable) -> Result<(bool, String)> {
    let x = FiniteAdele::from_rational(&r(29, 12), 3, t)?;
    expect(canonical_character(&x, t)?.value().clone(), r(5, 12))
}

fn crt_round_trip(t: &RadixTable) -> Result<(bool, String)> {
    let x = FiniteAdele::from_rational(&r(5, 12), 6, t)?;
    let primes = window_primes(-3, 6, t)?;
    let back = crt_recompose(&crt_decompose(&x, &primes, t)?, -3, 6, t)?;
    expect(back.to_string(), x.to_string())
}

fn indicator_duality(t: &RadixTable) -> Result<(bool, String)> {
    let f = TestFunction::indicator(1, &FiniteAdele::zero(3), t)?;
    let fh = f.fourier(t)?;
    let want = TestFunction::new(-1, -1, vec![Complex64::new(2.0, 0.0)], t)?;
    let diff = fh.max_abs_diff(&want, t)?;
    Ok((diff < 1e-12, format!("F[1_1] = 2·1_-1 to {diff:.1e}")))
}

fn zeta_one(t: &RadixTable) -> Result<(bool, String)> {
    let z = unit_ball_zeta(Complex64::new(1.0, 0.0), 1e-12, t)?;
    let gap = (z.value - Complex64::one()).norm();
    Ok((gap <= z.tail_bound + 1e-12, format!("{:.12}", z.value.re)))
}

fn gamma_two(t: &RadixTable) -> Result<(bool, String)> {
    let g = gamma_af(Complex64::new(2.0, 0.0), 1e-12, t)?;
    let ok = (g.value.re + 1.3136468700).abs() < 1e-9 && g.value.im.abs() < 1e-12;
    Ok((ok, format!("{:.10}", g.value.re)))
}

fn zero_literal(t: &RadixTable) -> Result<(bool, String)> {
    let z = FiniteAdele::from_rational(&BigRational::zero(), 3, t)?;
    expect(z.to_string(), "zero|3".into())
}

type Check = fn(&RadixTable) -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 13] = [
    ("ladder", ladder),
    ("radices", radices),
    ("expand -1", minus_one),
    ("expand 5/12", five_twelfths),
    ("expand 0", zero_literal),
    ("scaled unit measures", scaled_unit_measures),
    ("ball measures", ball_measures),
    ("character integrals", character_integrals),
    ("canonical character", character),
    ("crt round trip", crt_round_trip),
    ("indicator duality", indicator_duality),
    ("zeta(1)", zeta_one),
    ("gamma(2)", gamma_two),
];

pub fn run_goldens(table: &RadixTable) -> Vec<GoldenCheck> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check(table) {
            Ok((passed, detail)) => GoldenCheck { name, passed, detail },
            Err(e) => GoldenCheck {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}
