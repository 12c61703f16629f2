//! Additive quantization noise model: `y_q = ρ·y + n_q`.

use num_complex::Complex64;
use rand::Rng;

use crate::channel::complex_normal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedSignal {
    pub y_q: Vec<Complex64>,
    /// Diagonal of the QN covariance, one entry per receive antenna.
    pub qn_covariance: Vec<f64>,
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidDistortion(rho))
    }
}

/// `ρ(1−ρ)·diag`, where `rx_cov_diag` is the diagonal of the received-signal
/// covariance given the channel realization.
pub fn qn_diag(rho: f64, rx_cov_diag: &[f64]) -> Result<Vec<f64>> {
    check_rho(rho)?;
    if let Some(&bad) = rx_cov_diag.iter().find(|&&v| v.is_nan() || v < 0.0) {
        return Err(Error::config(format!(
            "received covariance entry {bad} is negative"
        )));
    }
    let scale = rho * (1.0 - rho);
    Ok(rx_cov_diag.iter().map(|v| scale * v).collect())
}

/// Scalar receiver special case of [`qn_diag`].
pub fn qn_scalar(rho: f64, rx_power: f64) -> Result<f64> {
    Ok(qn_diag(rho, &[rx_power])?[0])
}

/// Applies the AQNM to `y`, drawing independent Gaussian QN.
pub fn quantize<R: Rng + ?Sized>(
    y: &[Complex64],
    rho: f64,
    rx_cov_diag: &[f64],
    rng: &mut R,
) -> Result<QuantizedSignal> {
    if y.len() != rx_cov_diag.len() {
        return Err(Error::DimensionMismatch {
            expected: y.len(),
            got: rx_cov_diag.len(),
        });
    }
    let qn_covariance = qn_diag(rho, rx_cov_diag)?;
    let y_q = y
        .iter()
        .zip(&qn_covariance)
        .map(|(&v, &var)| v * rho + complex_normal(rng, var))
        .collect();
    Ok(QuantizedSignal { y_q, qn_covariance })
}
