//! Pseudo-spectral Navier-Stokes on the periodic box.

pub mod config;
pub mod dynamics;
pub mod reform;
pub mod trajectory;

pub use config::{InitialData, Scheme, SolverConfig};
pub use dynamics::{nonlinear_term, pressure, step, tendency, Integrator};
pub use reform::{f_terms, q_terms, tilde_ns_residual, FTerms, QTerms, TildeNsResidual};
pub use trajectory::{integrate, run, RunStatus, RunSummary, Trajectory};
