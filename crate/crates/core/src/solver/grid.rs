//! Radial grid uniform in s = log r.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(r_min: f64, r_max: f64, n: usize) -> Self {
        Self { r_min, r_max, n }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn s_min(&self) -> f64 {
        self.r_min.ln()
    }

    pub fn s_max(&self) -> f64 {
        self.r_max.ln()
    }

    pub fn step(&self) -> f64 {
        (self.s_max() - self.s_min()) / (self.n - 1) as f64
    }

    pub fn s(&self, i: usize) -> f64 {
        self.s_min() + i as f64 * self.step()
    }

    pub fn r(&self, i: usize) -> f64 {
        if i == 0 {
            self.r_min
        } else if i + 1 == self.n {
            self.r_max
        } else {
            self.s(i).exp()
        }
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.r(i)).collect()
    }

    /// Station index and fractional offset for log-radius s.
    pub fn locate(&self, s: f64) -> (usize, f64) {
        let x = ((s - self.s_min()) / self.step()).clamp(0.0, (self.n - 1) as f64);
        let i = (x.floor() as usize).min(self.n - 2);
        (i, x - i as f64)
    }
}
