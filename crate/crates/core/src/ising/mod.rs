//! Ising objectives, samples, coefficient precision and version schedules.

pub mod io;
mod precision;
mod problem;
mod schedule;

pub use precision::{apply_version, clip_value, quantize_problem, quantize_value, PrecisionSpec, Resolution};
pub use problem::{energies_equal, energy, CoefficientKind, Coupling, Problem, Sample, Spin, ENERGY_REL_TOL};
pub use schedule::{make_schedule, ScaleSchedule, ScheduleParams};
