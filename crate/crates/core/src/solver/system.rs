//! Assembly of the (k+1)-component radial solution from independent pairs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::Grid;
use super::shooting::{solve_sinh_gordon, ShootingProblem, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::rep::{asymptotic_data, HolomorphicData};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub r_min: f64,
    pub r_max: f64,
    pub n: usize,
    pub tol: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            r_min: 1e-4,
            r_max: 8.0,
            n: 4000,
            tol: DEFAULT_TOL,
        }
    }
}

impl GridParams {
    pub fn grid(&self) -> Grid {
        Grid::new(self.r_min, self.r_max, self.n)
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    fn problem(&self, m: f64) -> ShootingProblem {
        ShootingProblem {
            m,
            r_min: self.r_min,
            r_max: self.r_max,
            n: self.n,
            tol: self.tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialSolution {
    pub k: usize,
    pub l: Vec<f64>,
    pub n: f64,
    pub m: Vec<f64>,
    /// Near-origin constants, w_j ≈ m_j log r + b_j.
    pub b: Vec<f64>,
    pub grid: Grid,
    /// w[j][i] = w_j(r_i).
    pub w: Vec<Vec<f64>>,
    /// r·w_j′ at the stations.
    pub ws: Vec<Vec<f64>>,
}

impl RadialSolution {
    pub fn radii(&self) -> Vec<f64> {
        self.grid.radii()
    }

    /// Largest |w_j + w_{k−j}| over all stations.
    pub fn antisymmetry_defect(&self) -> f64 {
        let k = self.k;
        (0..=k)
            .flat_map(|j| self.w[j].iter().zip(&self.w[k - j]).map(|(a, b)| (a + b).abs()))
            .fold(0.0, f64::max)
    }
}

/// −v without producing a negative zero.
fn mirror(v: f64) -> f64 {
    0.0 - v
}

/// Solve one shooting problem per pair {j, k−j}, j < k−j, in parallel, and
/// fill the mirror components by anti-symmetry.
pub fn solve_system(d: &HolomorphicData, n: f64, p: &GridParams) -> Result<RadialSolution> {
    let m = asymptotic_data(d, n)?.m;
    let k = d.k;
    for (index, &value) in m.iter().enumerate() {
        if value.abs() >= 1.0 - 1e-12 {
            return Err(Error::BoundaryAsymptotic { index, value });
        }
    }
    let grid = p.grid();
    p.problem(0.0).validate()?;

    let pairs: Vec<usize> = (0..=k).filter(|&j| j < k - j).collect();
    let solved = pairs
        .par_iter()
        .map(|&j| solve_sinh_gordon(&p.problem(m[j])))
        .collect::<Result<Vec<_>>>()?;

    let zeros = vec![0.0; grid.len()];
    let mut w = vec![zeros.clone(); k + 1];
    let mut ws = vec![zeros; k + 1];
    let mut b = vec![0.0; k + 1];
    for (&j, pair) in pairs.iter().zip(solved) {
        w[k - j] = pair.w.iter().map(|&v| mirror(v)).collect();
        ws[k - j] = pair.ws.iter().map(|&v| mirror(v)).collect();
        b[k - j] = mirror(pair.b);
        w[j] = pair.w;
        ws[j] = pair.ws;
        b[j] = pair.b;
    }
    Ok(RadialSolution {
        k,
        l: d.l.clone(),
        n,
        m,
        b,
        grid,
        w,
        ws,
    })
}

/// Per-component maximum over interior stations of
/// |¼ r²(w_j″ + w_j′/r) − r²(e^{w_j−w_{k−j}} − e^{w_{k−j}−w_j})|,
/// with r²(w″ + w′/r) = w_ss taken by central differences in s = log r.
pub fn residual_a(sol: &RadialSolution) -> Vec<f64> {
    let g = &sol.grid;
    let h2 = g.step() * g.step();
    let k = sol.k;
    (0..=k)
        .map(|j| {
            let (w, v) = (&sol.w[j], &sol.w[k - j]);
            (1..g.len() - 1)
                .map(|i| {
                    let wss = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / h2;
                    let r2 = (2.0 * g.s(i)).exp();
                    let d = w[i] - v[i];
                    (0.25 * wss - r2 * (d.exp() - (-d).exp())).abs()
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

pub fn residual_max(sol: &RadialSolution) -> f64 {
    residual_a(sol).into_iter().fold(0.0, f64::max)
}

/// Least squares of y on the given columns via modified Gram–Schmidt.
pub(crate) fn least_squares(cols: &[Vec<f64>], y: &[f64]) -> Vec<f64> {
    let p = cols.len();
    let mut q: Vec<Vec<f64>> = cols.to_vec();
    let mut r = vec![vec![0.0; p]; p];
    for a in 0..p {
        for c in 0..a {
            let d: f64 = q[c].iter().zip(&q[a]).map(|(x, y)| x * y).sum();
            r[c][a] = d;
            let qc = q[c].clone();
            q[a].iter_mut().zip(&qc).for_each(|(x, y)| *x -= d * y);
        }
        let norm = q[a].iter().map(|x| x * x).sum::<f64>().sqrt();
        r[a][a] = norm;
        if norm > 0.0 {
            q[a].iter_mut().for_each(|x| *x /= norm);
        }
    }
    let qty: Vec<f64> = q.iter().map(|c| c.iter().zip(y).map(|(a, b)| a * b).sum()).collect();
    let mut coef = vec![0.0; p];
    for a in (0..p).rev() {
        let tail: f64 = (a + 1..p).map(|c| r[a][c] * coef[c]).sum();
        coef[a] = if r[a][a] > 0.0 { (qty[a] - tail) / r[a][a] } else { 0.0 };
    }
    coef
}

/// Slopes m̂_j from the smallest decade [r_min, 10 r_min].
///
/// Fits w ≈ m̂ s + b̂ + c·r^{2−2|m̂|}; the last column is the leading
/// correction forced by the equation, and m̂ is iterated to self-consistency.
pub fn fit_asymptotics(sol: &RadialSolution) -> Vec<f64> {
    let g = &sol.grid;
    let s_top = (10.0 * g.r_min).ln();
    let idx: Vec<usize> = (0..g.len()).filter(|&i| g.s(i) <= s_top + 1e-12).collect();
    let s: Vec<f64> = idx.iter().map(|&i| g.s(i)).collect();
    let ones = vec![1.0; s.len()];
    sol.w
        .iter()
        .map(|w| {
            let y: Vec<f64> = idx.iter().map(|&i| w[i]).collect();
            if y.iter().all(|&v| v == 0.0) {
                return 0.0;
            }
            let mut slope = least_squares(&[s.clone(), ones.clone()], &y)[0];
            for _ in 0..6 {
                let e = 2.0 - 2.0 * slope.abs().min(1.0);
                let corr: Vec<f64> = s.iter().map(|&x| (e * (x - s_top)).exp()).collect();
                slope = least_squares(&[s.clone(), ones.clone(), corr], &y)[0];
            }
            slope
        })
        .collect()
}
