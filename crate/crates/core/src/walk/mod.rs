//! The elephant random walk at finite time: its exact distribution from the
//! triangular recurrence, shape checks on the rows, scaled densities of
//! `n^{-a} S_n`, and seeded Monte Carlo simulation.

mod density;
mod distribution;
mod params;
mod shape;
mod simulate;

pub use density::{scaled_density, DensityKind, StepDensity};
pub use distribution::{distribution_row, evolve_distribution, mean_position, DistributionEvolver, DistributionRow};
pub use params::ErwParams;
pub use shape::{check_shape, log_concavity_polynomial, log_concavity_root, ShapeReport};
pub use simulate::{ks_distance, simulate_positions, simulate_terminal, simulate_terminal_with, SimConfig};
