//! The connection form α assembled from a radial solution.

use num_complex::Complex64;

use super::system::RadialSolution;
use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::potential::ConnectionSample;

/// (w_j)_ss from the equation, using the stored components.
fn second_derivative(sol: &RadialSolution, j: usize, i: usize) -> f64 {
    let d = sol.w[j][i] - sol.w[sol.k - j][i];
    let r2 = (2.0 * sol.grid.s(i)).exp();
    4.0 * r2 * (d.exp() - (-d).exp())
}

/// Quintic Hermite interpolation in s of (w_j, ∂_s w_j) at radius r.
pub fn interpolate(sol: &RadialSolution, j: usize, r: f64) -> Result<(f64, f64)> {
    let g = &sol.grid;
    if !(r >= g.r_min * (1.0 - 1e-12) && r <= g.r_max * (1.0 + 1e-12)) {
        return Err(Error::OutsideAnnulus {
            radius: r,
            r_min: g.r_min,
            r_max: g.r_max,
        });
    }
    let (i, x) = g.locate(r.ln());
    let h = g.step();
    let (y0, d0, a0) = (sol.w[j][i], sol.ws[j][i] * h, second_derivative(sol, j, i) * h * h);
    let (y1, d1, a1) = (
        sol.w[j][i + 1],
        sol.ws[j][i + 1] * h,
        second_derivative(sol, j, i + 1) * h * h,
    );
    let (x2, x3) = (x * x, x * x * x);
    let (x4, x5) = (x3 * x, x3 * x2);
    let val = y0 * (1.0 - 10.0 * x3 + 15.0 * x4 - 6.0 * x5)
        + d0 * (x - 6.0 * x3 + 8.0 * x4 - 3.0 * x5)
        + a0 * (0.5 * x2 - 1.5 * x3 + 1.5 * x4 - 0.5 * x5)
        + y1 * (10.0 * x3 - 15.0 * x4 + 6.0 * x5)
        + d1 * (-4.0 * x3 + 7.0 * x4 - 3.0 * x5)
        + a1 * (0.5 * x3 - x4 + 0.5 * x5);
    let der = y0 * (-30.0 * x2 + 60.0 * x3 - 30.0 * x4)
        + d0 * (1.0 - 18.0 * x2 + 32.0 * x3 - 15.0 * x4)
        + a0 * (x - 4.5 * x2 + 6.0 * x3 - 2.5 * x4)
        + y1 * (30.0 * x2 - 60.0 * x3 + 30.0 * x4)
        + d1 * (-12.0 * x2 + 28.0 * x3 - 15.0 * x4)
        + a1 * (1.5 * x2 - 4.0 * x3 + 2.5 * x4);
    Ok((val, der / h))
}

/// Coefficients of dt and dt̄ in α at the point t for spectral parameter λ.
///
/// α_t has diagonal ½(w_j)_t and entry (j, k−j) equal to −λ⁻¹e^{(w_j−w_{k−j})/2};
/// α_t̄ has diagonal −½(w_j)_t̄ and entry (j, k−j) equal to −λe^{(w_{k−j}−w_j)/2}.
pub fn connection_form(sol: &RadialSolution, t: Complex64, lambda: Complex64) -> Result<ConnectionSample> {
    let r = t.norm();
    let k = sol.k;
    let mut w = vec![0.0; k + 1];
    let mut ws = vec![0.0; k + 1];
    for j in 0..=k {
        (w[j], ws[j]) = interpolate(sol, j, r)?;
    }
    let n = k + 1;
    let mut at = CMatrix::zeros(n);
    let mut atb = CMatrix::zeros(n);
    let inv = Complex64::new(1.0, 0.0) / lambda;
    for j in 0..=k {
        // ∂_t w(|t|) = ∂_s w · t̄ / (2|t|²)
        let wt = t.conj() * (ws[j] / (2.0 * r * r));
        let wtb = t * (ws[j] / (2.0 * r * r));
        at.add_at(j, j, wt * 0.5);
        atb.add_at(j, j, -wtb * 0.5);
        let half = 0.5 * (w[j] - w[k - j]);
        at.add_at(j, k - j, -inv * half.exp());
        atb.add_at(j, k - j, -lambda * (-half).exp());
    }
    Ok(ConnectionSample {
        alpha_t: at,
        alpha_tbar: atb,
    })
}

/// Flatness defect ∂_t α_t̄ − ∂_t̄ α_t + [α_t, α_t̄] at t by central
/// differences with step `rel_step·|t|`, relative to max(1, |[α_t, α_t̄]|).
pub fn zero_curvature_residual(sol: &RadialSolution, t: Complex64, lambda: Complex64, rel_step: f64) -> Result<f64> {
    let d = rel_step * t.norm();
    let at = |p: Complex64| connection_form(sol, p, lambda);
    let dx = Complex64::new(d, 0.0);
    let dy = Complex64::new(0.0, d);
    let (xp, xm, yp, ym) = (at(t + dx)?, at(t - dx)?, at(t + dy)?, at(t - dy)?);
    let c = at(t)?;
    let scale = Complex64::new(1.0 / (2.0 * d), 0.0);
    let dx_t = (&xp.alpha_t - &xm.alpha_t).scale(scale);
    let dy_t = (&yp.alpha_t - &ym.alpha_t).scale(scale);
    let dx_tb = (&xp.alpha_tbar - &xm.alpha_tbar).scale(scale);
    let dy_tb = (&yp.alpha_tbar - &ym.alpha_tbar).scale(scale);
    let half = Complex64::new(0.5, 0.0);
    let i = Complex64::new(0.0, 1.0);
    // ∂_t = ½(∂_x − i∂_y), ∂_t̄ = ½(∂_x + i∂_y)
    let d_t_atb = (&dx_tb - &dy_tb.scale(i)).scale(half);
    let d_tb_at = (&dx_t + &dy_t.scale(i)).scale(half);
    let comm = c.alpha_t.commutator(&c.alpha_tbar);
    let defect = &(&d_t_atb - &d_tb_at) + &comm;
    Ok(defect.max_abs() / comm.max_abs().max(1.0))
}
