use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ising::problem::{CoefficientKind, Problem};

/// Fixed-point coefficient precision: one sign bit plus `bits - 1` bits of
/// resolution on the unit interval, i.e. a grid of step `2^-(bits-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionSpec {
    bits: u32,
}

impl PrecisionSpec {
    pub const MIN_BITS: u32 = 2;
    pub const MAX_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::InvalidPrecision(bits));
        }
        Ok(PrecisionSpec { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Grid increment `2^-(bits-1)`; a power of two, so exact.
    pub fn step(self) -> f64 {
        (-f64::from(self.bits - 1)).exp2()
    }

    fn inverse_step(self) -> f64 {
        f64::from(self.bits - 1).exp2()
    }
}

/// Coefficient resolution of a problem or a sampler: a finite bit count, or
/// unquantized double precision (`dbl`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    Bits(PrecisionSpec),
    Unconstrained,
}

impl Resolution {
    pub fn bits(bits: u32) -> Result<Self> {
        PrecisionSpec::new(bits).map(Resolution::Bits)
    }

    /// Grid step, or `None` for unconstrained precision.
    pub fn step(self) -> Option<f64> {
        match self {
            Resolution::Bits(p) => Some(p.step()),
            Resolution::Unconstrained => None,
        }
    }

    /// Table label: the bit count, or `dbl`.
    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resolution::Bits(p) => write!(f, "{}", p.bits()),
            Resolution::Unconstrained => f.write_str("dbl"),
        }
    }
}

impl FromStr for Resolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("dbl") {
            return Ok(Resolution::Unconstrained);
        }
        let bits = s
            .parse::<u32>()
            .map_err(|_| Error::InvalidConfig(format!("precision `{s}` is neither a bit count nor `dbl`")))?;
        Resolution::bits(bits)
    }
}

/// Rounds `x` to the nearest multiple of the grid step (ties away from zero),
/// then clamps to the legal range of `kind`.
pub fn quantize_value(x: f64, spec: PrecisionSpec, kind: CoefficientKind) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    let r = kind.half_range();
    // f64::round rounds half away from zero; both scalings are by powers of two.
    let q = (x * spec.inverse_step()).round() * spec.step();
    Ok(q.clamp(-r, r))
}

/// Truncates `x` to the legal range of `kind` without quantizing.
pub fn clip_value(x: f64, kind: CoefficientKind) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite(x));
    }
    let r = kind.half_range();
    Ok(x.clamp(-r, r))
}

/// Quantizes every coefficient of `problem` at `spec`. The result is hardware-feasible.
pub fn quantize_problem(problem: &Problem, spec: PrecisionSpec) -> Result<Problem> {
    problem.try_map_coefficients(|kind, x| quantize_value(x, spec, kind))
}

/// Builds the hardware view of the version `c · F`: scale, clip to the
/// hardware ranges, and quantize at the hardware resolution. Unconstrained
/// hardware clips but does not quantize.
pub fn apply_version(problem: &Problem, scale: f64, hardware: Resolution) -> Result<Problem> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidSchedule(format!("version constant must be positive, got {scale}")));
    }
    problem.try_map_coefficients(|kind, x| match hardware {
        Resolution::Bits(spec) => quantize_value(scale * x, spec, kind),
        Resolution::Unconstrained => clip_value(scale * x, kind),
    })
}
