//! The finite adele ring of ℚ as a ring of mixed-radix series.
//!
//! Elements of `𝔸_f` are written `x = Σ_{k ≥ γ} a_k psi_exp(k)` with digits
//! `0 <= a_k < radix(k)`, where `psi_exp(n)` runs through the values of
//! `lcm(1, …, m)` and their reciprocals. Truncating at index `N` gives an
//! element known modulo the compact open subgroup `psi_exp(N)·Ẑ`.

pub mod adele;
pub mod dirichlet;
pub mod error;
pub mod golden;
pub mod harmonic;
pub mod padic;
pub mod radix;
pub mod rational;
pub mod schwartz;
pub mod sieve;

pub use adele::{FiniteAdele, OrdResult};
pub use error::{AdeleError, Result};
pub use padic::{crt_decompose, crt_recompose, padic_arith, PadicApprox, PadicOp};
pub use radix::RadixTable;
