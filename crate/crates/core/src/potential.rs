//! Truncated Ginzburg-Landau penalty potential.
//!
//! The quartic well `(|d|^2 - 1)^2 / (4 eps^2)` is kept inside the unit ball
//! and replaced by the quadratic `(|d| - 1)^2 / eps^2` outside it. The two
//! pieces match in value and gradient on `|d| = 1`, so the potential is C1
//! and its Hessian is bounded by `H_F / eps^2` in Frobenius norm.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    pub eps: f64,
    /// Coefficient of the first-order stabilization `hf / (2 eps^2) (d^{n+1} - d^n)`.
    pub hf: f64,
}

impl PotentialParams {
    pub fn new(eps: f64, hf: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::config("eps", "must be positive and finite"));
        }
        if !(hf >= 0.0 && hf.is_finite()) {
            return Err(Error::config("hf", "must be non-negative and finite"));
        }
        Ok(Self { eps, hf })
    }

    /// Scalar in front of the stabilizing mass term.
    pub fn stabilization(&self) -> f64 {
        self.hf / (2.0 * self.eps * self.eps)
    }
}

/// `H_F = (M 3^2 + (M^2 - M) 2^2)^{1/2}` in dimension `M`.
pub fn theoretical_hf(dim: usize) -> Result<f64> {
    match dim {
        2 | 3 => Ok(hf_from_index(dim as f64)),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// The `H_F` formula evaluated at a real index `m >= 0`, the parameter
/// swept by the stability tables. `hf_from_index(2.0) = sqrt(26)`.
pub fn hf_from_index(m: f64) -> f64 {
    (9.0 * m + 4.0 * (m * m - m)).sqrt()
}

fn norm_sq<const M: usize>(d: &[f64; M]) -> f64 {
    d.iter().map(|x| x * x).sum()
}

/// Truncated potential `F~(eps, d)`.
pub fn truncated_potential<const M: usize>(eps: f64, d: &[f64; M]) -> f64 {
    let r2 = norm_sq(d);
    let e2 = eps * eps;
    if r2 <= 1.0 {
        0.25 * (r2 - 1.0).powi(2) / e2
    } else {
        (r2.sqrt() - 1.0).powi(2) / e2
    }
}

/// Gradient `f~(eps, d)` of the truncated potential.
pub fn truncated_penalty<const M: usize>(eps: f64, d: &[f64; M]) -> [f64; M] {
    let r2 = norm_sq(d);
    let e2 = eps * eps;
    let factor = if r2 <= 1.0 {
        (r2 - 1.0) / e2
    } else {
        let r = r2.sqrt();
        2.0 * (r - 1.0) / (r * e2)
    };
    d.map(|x| factor * x)
}

/// Hessian of the truncated potential.
pub fn truncated_hessian<const M: usize>(eps: f64, d: &[f64; M]) -> [[f64; M]; M] {
    let r2 = norm_sq(d);
    let e2 = eps * eps;
    let mut h = [[0.0; M]; M];
    if r2 <= 1.0 {
        for i in 0..M {
            for j in 0..M {
                h[i][j] = (2.0 * d[i] * d[j] + if i == j { r2 - 1.0 } else { 0.0 }) / e2;
            }
        }
    } else {
        let r = r2.sqrt();
        for i in 0..M {
            for j in 0..M {
                h[i][j] = (2.0 * d[i] * d[j] / (r2 * r) + if i == j { 2.0 * (r - 1.0) / r } else { 0.0 }) / e2;
            }
        }
    }
    h
}

pub fn frobenius<const M: usize>(h: &[[f64; M]; M]) -> f64 {
    h.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Untruncated quartic potential `F(eps, d)`; used only for reporting.
pub fn quartic_potential<const M: usize>(eps: f64, d: &[f64; M]) -> f64 {
    0.25 * (norm_sq(d) - 1.0).powi(2) / (eps * eps)
}

/// Largest Hessian Frobenius norm over `samples`.
///
/// Also returns whether every sample respects `||H|| <= H_F / eps^2`.
pub fn hessian_frobenius_bound_check<const M: usize>(eps: f64, samples: &[[f64; M]]) -> Result<(f64, bool)> {
    if samples.is_empty() {
        return Err(Error::config("samples", "need at least one sample"));
    }
    let bound = theoretical_hf(M)? / (eps * eps);
    let worst = samples
        .iter()
        .map(|d| frobenius(&truncated_hessian(eps, d)))
        .fold(0.0, f64::max);
    Ok((worst, worst <= bound * (1.0 + 1e-14)))
}

/// Slack of the stabilized explicit step:
/// `(f~(d0) + hf/(2 eps^2) (d1 - d0)) . (d1 - d0) - (F~(d1) - F~(d0))`,
/// non-negative whenever `hf >= H_F`.
pub fn stabilized_step_slack<const M: usize>(params: PotentialParams, d0: &[f64; M], d1: &[f64; M]) -> f64 {
    let f0 = truncated_penalty(params.eps, d0);
    let c = params.stabilization();
    let mut lhs = 0.0;
    for i in 0..M {
        let delta = d1[i] - d0[i];
        lhs += (f0[i] + c * delta) * delta;
    }
    lhs - (truncated_potential(params.eps, d1) - truncated_potential(params.eps, d0))
}
