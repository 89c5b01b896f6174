//! Radial sinh-Gordon shooting and the assembled tt* solution.

pub mod connection;
mod dopri;
pub mod grid;
pub mod output;
pub mod shooting;
pub mod system;

pub use grid::Grid;
pub use shooting::{radial_ode_rhs, solve_sinh_gordon, PairSolution, ShootingProblem, DEFAULT_TOL};
pub use system::{fit_asymptotics, residual_a, residual_max, solve_system, GridParams, RadialSolution};
pub use connection::{connection_form, interpolate, zero_curvature_residual};
pub use output::{write_csv, SolveSummary};
