//! Scaling-invariant blow-up monitors evaluated along a trajectory.

pub mod gronwall;
pub mod quantities;
pub mod series;
pub mod set;
pub mod spec;

pub use gronwall::{gronwall_envelope, gronwall_report, GronwallReport};
pub use quantities::{criterion_integrand, endpoint_bp, htheta_monitors, vorticity_monitors};
pub use series::MonitorSeries;
pub use set::{MonitorOutput, MonitorSet, MonitorSummary};
pub use spec::{MonitorKind, MonitorSpec};
