use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::ising::problem::Problem;

/// Parameters of the geometric version schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleParams {
    /// Number of versions `K`.
    pub versions: usize,
    /// `c_0 = 1 / (divisor · d)`.
    pub divisor: f64,
    /// `c_{k+1} = c_k · step_ratio`.
    pub step_ratio: f64,
}

impl Default for ScheduleParams {
    /// Twenty versions starting at `1/(8d)`, each half a bit above the last.
    fn default() -> Self {
        ScheduleParams {
            versions: 20,
            divisor: 8.0,
            step_ratio: SQRT_2,
        }
    }
}

/// Common scale `d` and the positive version constants `c_0 .. c_{K-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleSchedule {
    d: f64,
    divisor: f64,
    step_ratio: f64,
    constants: Vec<f64>,
}

impl ScaleSchedule {
    /// Schedule for an explicit common scale `d`.
    pub fn from_scale(d: f64, params: ScheduleParams) -> Result<Self> {
        if !(d.is_finite() && d > 0.0) {
            return Err(Error::DegenerateProblem);
        }
        if params.versions == 0 {
            return Err(Error::InvalidSchedule("at least one version is required".into()));
        }
        if !(params.divisor.is_finite() && params.divisor > 0.0) {
            return Err(Error::InvalidSchedule(format!("divisor must be positive, got {}", params.divisor)));
        }
        if !(params.step_ratio.is_finite() && params.step_ratio > 0.0) {
            return Err(Error::InvalidSchedule(format!(
                "step ratio must be positive, got {}",
                params.step_ratio
            )));
        }
        let c0 = 1.0 / (params.divisor * d);
        let constants: Vec<f64> = std::iter::successors(Some(c0), |c| Some(c * params.step_ratio))
            .take(params.versions)
            .collect();
        if let Some(&bad) = constants.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(Error::InvalidSchedule(format!("version constant {bad} is not a positive finite number")));
        }
        Ok(ScaleSchedule {
            d,
            divisor: params.divisor,
            step_ratio: params.step_ratio,
            constants,
        })
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn divisor(&self) -> f64 {
        self.divisor
    }

    pub fn step_ratio(&self) -> f64 {
        self.step_ratio
    }

    pub fn constants(&self) -> &[f64] {
        &self.constants
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }
}

/// Builds the version schedule for `problem`, with `d` the largest
/// coefficient magnitude over both families.
pub fn make_schedule(problem: &Problem, params: ScheduleParams) -> Result<ScaleSchedule> {
    ScaleSchedule::from_scale(problem.max_abs_coefficient(), params)
}
