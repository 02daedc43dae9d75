//! The moment sequence `{m_n}` of the limit law, the limit moments
//! `E[L₁ⁿ] = n! m_n / Γ(1+an)`, the growth constant `ρ_a` with an
//! independent quadrature cross-check, the per-`a` constants of the tail
//! asymptotics, moment asymptotics and the Hankel-determinant test.

mod asymptotic;
mod constants;
mod hankel;
mod table;

pub use asymptotic::{asymptotic_moment, asymptotic_moment_ln, pochhammer_ratio_asymptote, AsymptoticOrder};
pub use constants::{context, ln_rho, rho, rho_integral, LimitLawContext};
pub use hankel::{hankel_test, DetSign, HankelEntry};
pub use table::{limit_moment, limit_moment_ln, moment_sequence, moment_sequence_unscaled, MomentTable, MIN_A};
