//! Shooting on the near-origin constant b for one radial sinh-Gordon pair.

use serde::{Deserialize, Serialize};

use super::dopri::Dopri5;
use super::grid::Grid;
use crate::error::{Error, Result};

/// Default integrator tolerance; overridable through `TTSTAR_TOL`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Below this amplitude the solution is continued along the linear decaying mode.
const TAIL_AMPLITUDE: f64 = 1e-5;
/// Largest radius integrated while waiting for the blow-up dichotomy to show.
const EVENT_RADIUS: f64 = 40.0;
const BRACKET_START: f64 = 2.0;
const BRACKET_LIMIT: f64 = 64.0;

/// w″ + w′/r = 4(e^{2w} − e^{−2w}) solved for w″.
pub fn radial_ode_rhs(r: f64, w: f64, wp: f64) -> f64 {
    -wp / r + 4.0 * ((2.0 * w).exp() - (-2.0 * w).exp())
}

/// The same equation in s = log r, for the state (w, w_s).
fn rhs_log(s: f64, y: &[f64; 2]) -> [f64; 2] {
    let r2 = (2.0 * s).exp();
    [y[1], 4.0 * r2 * ((2.0 * y[0]).exp() - (-2.0 * y[0]).exp())]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShootingProblem {
    pub m: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
    pub tol: f64,
}

impl ShootingProblem {
    pub fn new(m: f64, r_min: f64, r_max: f64, n: usize, tol: f64) -> Result<Self> {
        let p = Self { m, r_min, r_max, n, tol };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidProblem(s));
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return bad(format!("need 0 < r_min < r_max, got [{}, {}]", self.r_min, self.r_max));
        }
        if self.n < 100 {
            return bad(format!("grid size {} below 100", self.n));
        }
        if !(self.tol > 0.0 && self.tol < 1e-3) {
            return bad(format!("tolerance {} outside (0, 1e-3)", self.tol));
        }
        if !self.m.is_finite() || self.m.abs() > 1.0 {
            return bad(format!("m = {} outside [-1, 1]", self.m));
        }
        if self.m.abs() == 1.0 {
            return Err(Error::BoundaryAsymptotic {
                index: 0,
                value: self.m,
            });
        }
        Ok(())
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.r_min, self.r_max, self.n)
    }
}

/// Grid solution of one pair: w and r·w′ at every station.
#[derive(Clone, Debug, PartialEq)]
pub struct PairSolution {
    pub m: f64,
    pub b: f64,
    pub w: Vec<f64>,
    pub ws: Vec<f64>,
    /// First station continued along the linear decaying mode, if any.
    pub tail_from: Option<usize>,
}

impl PairSolution {
    fn zero(n: usize) -> Self {
        Self {
            m: 0.0,
            b: 0.0,
            w: vec![0.0; n],
            ws: vec![0.0; n],
            tail_from: None,
        }
    }

    fn negated(mut self) -> Self {
        self.m = -self.m;
        self.b = -self.b;
        self.w.iter_mut().for_each(|v| *v = -*v);
        self.ws.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    /// Overshoots to +∞.
    High,
    /// Turns back to −∞.
    Low,
    Undecided,
}

/// Start values at s = log r from the two leading corrections to m·s + b.
fn initial_state(m: f64, b: f64, s: f64) -> [f64; 2] {
    let up = (2.0 * b + (2.0 + 2.0 * m) * s).exp();
    let down = (-2.0 * b + (2.0 - 2.0 * m) * s).exp();
    [
        m * s + b + up / (1.0 + m).powi(2) - down / (1.0 - m).powi(2),
        m + 2.0 * up / (1.0 + m) - 2.0 * down / (1.0 - m),
    ]
}

fn classify(y: &[f64; 2]) -> Option<Outcome> {
    if y[0] > 0.0 {
        Some(Outcome::High)
    } else if y[1] < 0.0 {
        Some(Outcome::Low)
    } else {
        None
    }
}

fn log_radius_error(e: Error) -> Error {
    match e {
        Error::Integrator { r, reason } => Error::Integrator { r: r.exp(), reason },
        e => e,
    }
}

/// Integrate (m > 0) on the station lattice, past the grid if needed, until
/// the trajectory shows which way it escapes.
fn outcome(p: &ShootingProblem, grid: &Grid, b: f64) -> Result<Outcome> {
    let h = grid.step();
    let mut ig = Dopri5::new(rhs_log, p.tol, h);
    let mut s = grid.s(0);
    let mut y = initial_state(p.m, b, s);
    if let Some(o) = classify(&y) {
        return Ok(o);
    }
    let s_event = EVENT_RADIUS.max(2.0 * p.r_max).ln();
    let mut i = 0usize;
    while s < s_event {
        i += 1;
        let s_next = grid.s_min() + i as f64 * h;
        let (_, y_new, stopped) = ig
            .advance(s, y, s_next, |_, y| classify(y).is_some())
            .map_err(log_radius_error)?;
        if stopped {
            return Ok(classify(&y_new).unwrap_or(Outcome::Undecided));
        }
        (s, y) = (s_next, y_new);
    }
    Ok(Outcome::Undecided)
}

/// States at the grid stations; stops early once the trajectory runs away.
fn trajectory(p: &ShootingProblem, grid: &Grid, b: f64) -> Vec<[f64; 2]> {
    let mut ig = Dopri5::new(rhs_log, p.tol, grid.step());
    let mut s = grid.s(0);
    let mut y = initial_state(p.m, b, s);
    let mut states = Vec::with_capacity(grid.len());
    states.push(y);
    for i in 1..grid.len() {
        match ig.advance(s, y, grid.s(i), |_, _| false) {
            Ok((_, y_new, _)) if y_new[0].abs() <= 20.0 => {
                (s, y) = (grid.s(i), y_new);
                states.push(y);
            }
            _ => break,
        }
    }
    states
}

/// −φ_s/φ for φ = K₀(4r), from the large-argument expansions of K₀, K₁.
fn decay_rate(r: f64) -> f64 {
    let x = 4.0 * r;
    let series = |nu2: f64| {
        let (mut term, mut sum) = (1.0, 1.0);
        for j in 1..=12 {
            let odd = (2 * j - 1) as f64;
            term *= (4.0 * nu2 - odd * odd) / (j as f64 * 8.0 * x);
            sum += term;
        }
        sum
    };
    x * series(1.0) / series(0.0)
}

/// Continue from station `from` along the decaying solution of the linearized
/// equation w_ss = 16 r² w, integrated backward from well beyond the grid.
fn attach_tail(grid: &Grid, tol: f64, from: usize, w: &mut [f64], ws: &mut [f64]) -> Result<()> {
    let last = grid.len() - 1;
    let s_far = grid.s(last).max(10f64.ln());
    // state (ρ, L): ρ = −φ_s/φ, L = log φ
    let riccati = |s: f64, y: &[f64; 2]| [y[0] * y[0] - 16.0 * (2.0 * s).exp(), -y[0]];
    let mut ig = Dopri5::new(riccati, tol, grid.step());
    let mut y = [decay_rate(s_far.exp()), 0.0];
    let mut s = s_far;
    let mut rho = vec![0.0; grid.len()];
    let mut log_phi = vec![0.0; grid.len()];
    for i in (from..=last).rev() {
        let (_, y_new, _) = ig.advance(s, y, grid.s(i), |_, _| false)?;
        y = y_new;
        s = grid.s(i);
        rho[i] = y[0];
        log_phi[i] = y[1];
    }
    let w0 = w[from];
    for i in from + 1..=last {
        w[i] = w0 * (log_phi[i] - log_phi[from]).exp();
        ws[i] = -rho[i] * w[i];
    }
    Ok(())
}

/// Solve the radial pair equation with w ∼ m log r + b near the origin.
pub fn solve_sinh_gordon(p: &ShootingProblem) -> Result<PairSolution> {
    p.validate()?;
    let grid = p.grid();
    if p.m == 0.0 {
        return Ok(PairSolution::zero(grid.len()));
    }
    if p.m < 0.0 {
        let mirrored = ShootingProblem { m: -p.m, ..p.clone() };
        return solve_sinh_gordon(&mirrored).map(PairSolution::negated);
    }

    let outcome = |b: f64| outcome(p, &grid, b);
    let (mut lo, mut hi) = (-BRACKET_START, BRACKET_START);
    loop {
        let (olo, ohi) = (outcome(lo)?, outcome(hi)?);
        if olo == Outcome::Low && ohi == Outcome::High {
            break;
        }
        if lo.abs() >= BRACKET_LIMIT {
            return Err(Error::BracketExhausted {
                m: p.m,
                limit: BRACKET_LIMIT,
            });
        }
        if olo != Outcome::Low {
            lo *= 2.0;
        }
        if ohi != Outcome::High {
            hi *= 2.0;
        }
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match outcome(mid)? {
            Outcome::High => hi = mid,
            Outcome::Low => lo = mid,
            Outcome::Undecided => {
                lo = mid;
                hi = mid;
            }
        }
    }

    let a = trajectory(p, &grid, lo);
    let c = if hi == lo { a.clone() } else { trajectory(p, &grid, hi) };
    let n = grid.len();
    let known = a.len().min(c.len());
    let mut w = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..known {
        w[i] = 0.5 * (a[i][0] + c[i][0]);
        ws[i] = 0.5 * (a[i][1] + c[i][1]);
    }

    // the two bracketing runs separate once the growing mode surfaces
    let decayed = (0..known).find(|&i| w[i].abs() < TAIL_AMPLITUDE);
    let split = (0..known)
        .find(|&i| (a[i][0] - c[i][0]).abs() > 1e-3 * w[i].abs())
        .or((known < n).then_some(known));
    let tail_from = match (decayed, split) {
        (Some(d), Some(s)) => Some(d.min(s.saturating_sub(1))),
        (d, s) => d.or(s.map(|s| s.saturating_sub(1))),
    };
    if let Some(t) = tail_from {
        if w[t].abs() > 1e-3 {
            return Err(Error::Integrator {
                r: grid.r(t),
                reason: format!("shooting lost precision while |w| = {:.3e}", w[t].abs()),
            });
        }
        if t + 1 < n {
            attach_tail(&grid, p.tol, t, &mut w, &mut ws)?;
        }
    }
    Ok(PairSolution {
        m: p.m,
        b: lo,
        w,
        ws,
        tail_from,
    })
}
