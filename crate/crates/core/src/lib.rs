//! Full-duplex massive-MIMO wireless backhaul with low-resolution ADCs.
//!
//! Closed-form and Monte Carlo spectral efficiency of a two-phase HetNet
//! backhaul (MC BS ↔ S small-cell BSs) under Rician fading, imperfect CSI,
//! residual self-interference and AQNM quantization, plus a receiver energy
//! model and sweep runner.

pub mod analytic;
pub mod channel;
pub mod energy;
pub mod error;
pub mod montecarlo;
pub mod params;
pub mod presets;
pub mod quantizer;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use params::{default_scenario, Bits, Phase, Scenario, ScenarioFile};
