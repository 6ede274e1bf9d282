//! Solving high-precision Ising objectives with a low-precision sampler.
//!
//! A sampler that only resolves a few bits of coefficient precision is
//! shown many positively scaled copies of the objective. Scaling does not
//! move the minimum, but clipping and quantization make every copy look
//! different to the sampler. The pooled samples are merged with multi-qubit
//! correction ([`mqc`]), always scored against the full-precision objective.
//!
//! ```
//! use hpe::hpe::{run_hpe, HpeOptions};
//! use hpe::ising::{make_schedule, Problem, Resolution, ScheduleParams};
//! use hpe::samplers::{SamplerConfig, SamplerKind};
//!
//! let base = Problem::new(vec![0.5, -0.25, 0.125], [(0, 1, 0.75), (1, 2, -0.5)])?;
//! let schedule = make_schedule(&base, ScheduleParams::default())?;
//! let sampler = SamplerConfig::new(SamplerKind::Anneal, 42, 50);
//! let result = run_hpe(&base, &schedule, Resolution::bits(3)?, &sampler, &HpeOptions::default())?;
//! assert!(result.final_energy() <= result.intermediate_energies()[0]);
//! # Ok::<(), hpe::Error>(())
//! ```

pub mod error;
pub mod harness;
pub mod hpe;
pub mod ising;
pub mod mqc;
pub mod samplers;
pub mod seed;

pub use error::{Error, Result};

// The guide's code listings run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/objective.md")]
    mod objective {}
    #[doc = include_str!("../../../book/src/precision.md")]
    mod precision {}
    #[doc = include_str!("../../../book/src/versions.md")]
    mod versions {}
    #[doc = include_str!("../../../book/src/samplers.md")]
    mod samplers {}
    #[doc = include_str!("../../../book/src/mqc.md")]
    mod mqc {}
    #[doc = include_str!("../../../book/src/hpe.md")]
    mod hpe {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
