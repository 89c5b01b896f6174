//! CSV and JSON renderings of a radial solution.

use std::io::{self, Write};

use serde::Serialize;

use super::system::{fit_asymptotics, residual_max, RadialSolution};

/// Round to 12 significant digits so summaries are stable across platforms.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_all(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| round12(x)).collect()
}

/// Field order is part of the output contract.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveSummary {
    pub k: usize,
    pub l: Vec<f64>,
    pub n: f64,
    pub m: Vec<f64>,
    pub b: Vec<f64>,
    pub residual_max: f64,
    pub slope_fit: Vec<f64>,
}

impl SolveSummary {
    pub fn new(sol: &RadialSolution) -> Self {
        Self {
            k: sol.k,
            l: round_all(&sol.l),
            n: round12(sol.n),
            m: round_all(&sol.m),
            b: round_all(&sol.b),
            residual_max: round12(residual_max(sol)),
            slope_fit: round_all(&fit_asymptotics(sol)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }
}

/// Header `r,w_0,...,w_k`, then one row per station with 17 significant digits.
pub fn write_csv<W: Write>(sol: &RadialSolution, mut out: W) -> io::Result<()> {
    let header: Vec<String> = std::iter::once("r".to_string())
        .chain((0..=sol.k).map(|j| format!("w_{j}")))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for (i, r) in sol.radii().into_iter().enumerate() {
        write!(out, "{r:.16e}")?;
        for w in &sol.w {
            write!(out, ",{:.16e}", w[i])?;
        }
        writeln!(out)?;
    }
    Ok(())
}
