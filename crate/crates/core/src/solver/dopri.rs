//! Dormand–Prince 5(4) with adaptive steps between fixed stations.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth minus fourth order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

type State = [f64; 2];

fn axpy(y: &State, terms: &[(f64, &State)], h: f64) -> State {
    let mut out = *y;
    for (c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// Adaptive integrator for a planar system y' = f(x, y).
pub struct Dopri5<F> {
    f: F,
    tol: f64,
    h: f64,
}

impl<F: Fn(f64, &State) -> State> Dopri5<F> {
    pub fn new(f: F, tol: f64, h0: f64) -> Self {
        Self { f, tol, h: h0 }
    }

    fn attempt(&self, x: f64, y: &State, h: f64) -> (State, f64) {
        let f = &self.f;
        let k1 = f(x, y);
        let k2 = f(x + C2 * h, &axpy(y, &[(A21, &k1)], h));
        let k3 = f(x + C3 * h, &axpy(y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = f(x + C4 * h, &axpy(y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = f(
            x + C5 * h,
            &axpy(y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h),
        );
        let k6 = f(
            x + h,
            &axpy(y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
        );
        let y5 = axpy(y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
        let k7 = f(x + h, &y5);
        let mut err = 0.0f64;
        for i in 0..2 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = self.tol * (1.0 + y[i].abs().max(y5[i].abs()));
            err = err.max((e / scale).abs());
        }
        (y5, err)
    }

    /// Advance from x to x_end (either direction). `stop` is checked after
    /// every accepted step and ends the advance early when it returns true.
    pub fn advance(
        &mut self,
        x: f64,
        y: State,
        x_end: f64,
        mut stop: impl FnMut(f64, &State) -> bool,
    ) -> Result<(f64, State, bool)> {
        let dir = if x_end >= x { 1.0 } else { -1.0 };
        let span = (x_end - x).abs();
        let floor = 1e-13 * (1.0 + x.abs().max(x_end.abs()));
        let (mut x, mut y) = (x, y);
        let mut rejected = 0u32;
        while (x_end - x) * dir > 0.0 {
            let remaining = (x_end - x).abs();
            let mut h = self.h.min(remaining).max(0.0);
            let last = h >= remaining * (1.0 - 1e-12);
            if last {
                h = remaining;
            }
            let (y_new, err) = self.attempt(x, &y, dir * h);
            if !y_new.iter().all(|v| v.is_finite()) || !err.is_finite() {
                self.h = h * 0.25;
                rejected += 1;
            } else if err <= 1.0 {
                x = if last { x_end } else { x + dir * h };
                y = y_new;
                let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                // keep the stored step when the last step was clipped to the station
                if !last || grow < 1.0 {
                    self.h = h * grow;
                }
                rejected = 0;
                if stop(x, &y) {
                    return Ok((x, y, true));
                }
            } else {
                self.h = h * (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
                rejected += 1;
            }
            if self.h < floor.min(span) || rejected > 60 {
                return Err(Error::Integrator {
                    r: x,
                    reason: format!("step size {:.3e} below floor", self.h),
                });
            }
        }
        Ok((x, y, false))
    }
}
