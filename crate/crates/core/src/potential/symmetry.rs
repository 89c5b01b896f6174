//! Numerical check of the reality symmetries c, σ, τ on a connection form.

use num_complex::Complex64;
use serde::Serialize;

use crate::cmatrix::CMatrix;
use crate::error::Result;

/// The (t, t̄) coefficient matrices of α at one point.
#[derive(Clone, Debug)]
pub struct ConnectionSample {
    pub alpha_t: CMatrix,
    pub alpha_tbar: CMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub k: usize,
    pub samples: usize,
    /// Max deviations, relative to max(1, |α|).
    pub c_deviation: f64,
    pub sigma_deviation: f64,
    pub tau_deviation: f64,
    pub tol: f64,
    pub passed: bool,
}

impl SymmetryReport {
    pub fn max_deviation(&self) -> f64 {
        self.c_deviation.max(self.sigma_deviation).max(self.tau_deviation)
    }
}

fn rel(diff: &CMatrix, reference: &CMatrix) -> f64 {
    diff.max_abs() / reference.max_abs().max(1.0)
}

/// c(A) = Δ Ā Δ.
pub fn op_c(a: &CMatrix) -> CMatrix {
    let d = CMatrix::exchange(a.size());
    &(&d * &a.conj()) * &d
}

/// σ(A) = −Δ Aᵗ Δ.
pub fn op_sigma(a: &CMatrix) -> CMatrix {
    let d = CMatrix::exchange(a.size());
    (&(&d * &a.transpose()) * &d).scale(Complex64::new(-1.0, 0.0))
}

/// τ(A) = P A P with P = diag((−1)^i).
pub fn op_tau(a: &CMatrix) -> CMatrix {
    let p: Vec<Complex64> = (0..a.size())
        .map(|i| Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        .collect();
    let p = CMatrix::diagonal(&p);
    &(&p * a) * &p
}

/// Evaluate at every (t, λ) in `points`:
///
/// * c: c(α_t(λ)) = α_t̄(1/λ̄) and c(α_t̄(λ)) = α_t(1/λ̄),
/// * σ: σ(α(λ)) = α(−λ) for both coefficients,
/// * τ: τ(α(λ)) = α((−1)^k λ) for both coefficients.
pub fn check_symmetries<F>(
    sampler: F,
    k: usize,
    points: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<SymmetryReport>
where
    F: Fn(Complex64, Complex64) -> Result<ConnectionSample>,
{
    let (mut dc, mut ds, mut dt) = (0.0f64, 0.0f64, 0.0f64);
    let tau_sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    for &(t, lambda) in points {
        let a = sampler(t, lambda)?;
        let inv = sampler(t, Complex64::new(1.0, 0.0) / lambda.conj())?;
        let neg = sampler(t, -lambda)?;
        let tw = sampler(t, lambda * tau_sign)?;

        dc = dc
            .max(rel(&(&op_c(&a.alpha_t) - &inv.alpha_tbar), &inv.alpha_tbar))
            .max(rel(&(&op_c(&a.alpha_tbar) - &inv.alpha_t), &inv.alpha_t));
        ds = ds
            .max(rel(&(&op_sigma(&a.alpha_t) - &neg.alpha_t), &neg.alpha_t))
            .max(rel(&(&op_sigma(&a.alpha_tbar) - &neg.alpha_tbar), &neg.alpha_tbar));
        dt = dt
            .max(rel(&(&op_tau(&a.alpha_t) - &tw.alpha_t), &tw.alpha_t))
            .max(rel(&(&op_tau(&a.alpha_tbar) - &tw.alpha_tbar), &tw.alpha_tbar));
    }
    let passed = dc < tol && ds < tol && dt < tol;
    Ok(SymmetryReport {
        k,
        samples: points.len(),
        c_deviation: dc,
        sigma_deviation: ds,
        tau_deviation: dt,
        tol,
        passed,
    })
}

/// Deterministic sample points: |t| log-spaced in [r_lo, r_hi], arguments
/// and λ ∈ S¹ spread by irrational rotations.
pub fn sample_points(r_lo: f64, r_hi: f64, count: usize) -> Vec<(Complex64, Complex64)> {
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    (0..count)
        .map(|i| {
            let s = if count > 1 { i as f64 / (count - 1) as f64 } else { 0.5 };
            let r = r_lo * (r_hi / r_lo).powf(s);
            let arg = std::f64::consts::TAU * ((i as f64 * golden) % 1.0);
            let phase = std::f64::consts::TAU * ((i as f64 * golden * golden + 0.1) % 1.0);
            (Complex64::from_polar(r, arg), Complex64::from_polar(1.0, phase))
        })
        .collect()
}
