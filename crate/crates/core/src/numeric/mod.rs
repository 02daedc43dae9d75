//! Numerical building blocks shared by the evaluators: adaptive quadrature,
//! bracketed root finding and compensated summation.

pub mod quad;
pub mod root;
pub mod sum;

pub use quad::{integrate, QuadConfig, Quadrature};
pub use root::{bisect, newton_bracketed};
pub use sum::{CompensatedSum, LogSum};
