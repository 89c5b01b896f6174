//! Named consistency checks across all modules.

use num_traits::Zero;
use serde::Serialize;

use crate::chebyshev::{chebyshev_t, chebyshev_u, chebyshev_u_trig};
use crate::error::Result;
use crate::fusion::{
    apply_c, from_polynomial, fusion_product, gram_matrix, pairing, pairing_by_residue, point_c_matrix, reduce_u,
    Basis, FusionElement,
};
use crate::potential::{
    build_gauge_ladder, gauge, is_block_diagonal, ladder_product, permutation_block_split, permutation_matrix,
    sample_points, smyth_equivalent, LadderStep, SmythPotential,
};
use crate::rational::{frac, int, Rational};
use crate::rep::{data_to_rep, irreps_equivalent, projections_equivalent, rep_to_data, HolomorphicData};
use crate::solver::{
    connection_form, fit_asymptotics, residual_a, residual_max, solve_system, zero_curvature_residual, GridParams,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub k: usize,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} (k={}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.k,
            self.detail
        )
    }
}

type Runner = fn(usize, &GridParams) -> Result<(bool, String)>;

pub struct Check {
    pub name: &'static str,
    pub summary: &'static str,
    run: Runner,
}

impl Check {
    pub fn run(&self, k: usize, grid: &GridParams) -> CheckResult {
        let (passed, detail) = match (self.run)(k, grid) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            name: self.name,
            k,
            passed,
            detail,
        }
    }
}

pub const CHECKS: &[Check] = &[
    Check {
        name: "pairing-antidiagonal",
        summary: "U-basis Gram matrix is anti-diagonal with entries 1/(2(k+2))",
        run: pairing_antidiagonal,
    },
    Check {
        name: "monomial-gram",
        summary: "level-2 monomial Gram matrix in the normalized frame",
        run: monomial_gram,
    },
    Check {
        name: "residue-node-sum",
        summary: "node-sum residue agrees with the coordinate pairing",
        run: residue_node_sum,
    },
    Check {
        name: "node-values",
        summary: "node evaluation is a ring homomorphism on basis products",
        run: node_values,
    },
    Check {
        name: "fusion-ring",
        summary: "commutative, associative, unital, Frobenius",
        run: fusion_ring,
    },
    Check {
        name: "c-map",
        summary: "C is multiplication by T_{k+2}; anti-diagonal -1, diagonal in the point basis",
        run: c_map,
    },
    Check {
        name: "reduce-u",
        summary: "reduction of U_n matches trigonometric node values",
        run: reduce_u_nodes,
    },
    Check {
        name: "rep-bijection",
        summary: "representations <-> exponent vectors round trip",
        run: rep_bijection,
    },
    Check {
        name: "equivalence",
        summary: "gauge, weight and projection equivalence agree on 0..10(k+2)",
        run: equivalence,
    },
    Check {
        name: "ladders",
        summary: "C+/C- ladder identities hold symbolically for m in {0,1}",
        run: ladders,
    },
    Check {
        name: "block-split",
        summary: "permutation D splits the potential into 2x2 blocks",
        run: block_split,
    },
    Check {
        name: "special-solution",
        summary: "l_j = j: residual, slopes, anti-symmetry",
        run: special_solution,
    },
    Check {
        name: "connection-symmetries",
        summary: "c, sigma, tau identities and zero curvature of alpha",
        run: connection_symmetries,
    },
    Check {
        name: "grid-convergence",
        summary: "residual falls by about 4 when the step halves (k=1, m=1/3)",
        run: grid_convergence,
    },
];

pub fn find_check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

pub fn run_all(k: usize, grid: &GridParams) -> Vec<CheckResult> {
    CHECKS.iter().map(|c| c.run(k, grid)).collect()
}

fn verdict(ok: bool, detail: impl Into<String>) -> Result<(bool, String)> {
    Ok((ok, detail.into()))
}

fn pairing_antidiagonal(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let g = gram_matrix(k, Basis::U)?;
    let m = g.exact().expect("exact basis");
    let entry = frac(1, 2 * (k as i64 + 2));
    let ok = (0..=k).all(|j| {
        (0..=k).all(|l| {
            let want = if j + l == k { entry.clone() } else { Rational::zero() };
            m[j][l] == want
        })
    });
    verdict(ok, format!("{}x{} exact, off-anti-diagonal entries zero", k + 1, k + 1))
}

fn monomial_gram(_: usize, _: &GridParams) -> Result<(bool, String)> {
    let g = gram_matrix(2, Basis::Monomial)?.frame_normalized();
    let want: Vec<Vec<Rational>> = [[0, 0, 2], [0, 2, 0], [2, 0, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| frac(x, 8)).collect())
        .collect();
    verdict(g.exact() == Some(&want), "(1/8)[[0,0,2],[0,2,0],[2,0,1]]")
}

fn residue_node_sum(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 0..=k {
        for j in 0..=k {
            let node = pairing_by_residue(k, &chebyshev_u(i), &chebyshev_u(j));
            let exact = pairing(&FusionElement::basis(k, i), &FusionElement::basis(k, j))?;
            worst = worst.max((node - crate::rational::to_f64(&exact)).abs());
        }
    }
    verdict(worst < 1e-9, format!("max deviation {worst:.3e}"))
}

fn node_values(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for i in 0..=k {
        for j in 0..=k {
            let (a, b) = (FusionElement::basis(k, i), FusionElement::basis(k, j));
            let ab = fusion_product(&a, &b)?.node_values();
            for ((x, y), z) in a.node_values().iter().zip(b.node_values()).zip(ab) {
                worst = worst.max((x * y - z).abs());
            }
        }
    }
    verdict(worst < 1e-9, format!("max deviation {worst:.3e}"))
}

fn fusion_ring(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let e: Vec<_> = (0..=k).map(|i| FusionElement::basis(k, i)).collect();
    let mut ok = true;
    for a in &e {
        ok &= fusion_product(a, &e[0])? == *a;
        for b in &e {
            let ab = fusion_product(a, b)?;
            ok &= ab == fusion_product(b, a)?;
            for c in &e {
                ok &= fusion_product(&ab, c)? == fusion_product(a, &fusion_product(b, c)?)?;
                ok &= pairing(&ab, c)? == pairing(a, &fusion_product(b, c)?)?;
            }
        }
    }
    verdict(ok, format!("{} basis triples", (k + 1).pow(3)))
}

fn c_map(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let t = from_polynomial(k, &chebyshev_t(k + 2));
    let mut ok = true;
    for i in 0..=k {
        let e = FusionElement::basis(k, i);
        let c = apply_c(&e);
        ok &= c == FusionElement::basis(k, k - i).scale(&int(-1));
        ok &= fusion_product(&t, &e)? == c;
    }
    let p = point_c_matrix(k);
    let mut worst = 0.0f64;
    for (i, row) in p.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let want = if i != j { 0.0 } else if i % 2 == 0 { -1.0 } else { 1.0 };
            worst = worst.max((v - want).abs());
        }
    }
    verdict(ok && worst < 1e-10, format!("point-basis deviation {worst:.3e}"))
}

fn reduce_u_nodes(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let h = (k + 2) as f64;
    let top = 10 * (k as u64 + 2);
    let mut worst = 0.0f64;
    for n in 0..=top {
        let vals = reduce_u(k, n).node_values();
        for (idx, v) in vals.iter().enumerate() {
            let theta = (idx + 1) as f64 * std::f64::consts::PI / h;
            worst = worst.max((v - chebyshev_u_trig(n, theta)).abs());
        }
    }
    verdict(worst < 1e-9, format!("n <= {top}, max deviation {worst:.3e}"))
}

fn rep_bijection(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let bound = if k <= 4 { 4u64 } else { 2 };
    let total = (bound + 1).pow(k as u32 + 1);
    let mut ok = true;
    for code in 0..total {
        let mut c = code;
        let l: Vec<i64> = (0..=k)
            .map(|_| {
                let d = c % (bound + 1);
                c /= bound + 1;
                d as i64
            })
            .collect();
        let d = HolomorphicData::from_integers(k, &l)?;
        let rep = data_to_rep(&d)?;
        ok &= rep_to_data(&rep, k)? == d;
    }
    verdict(ok, format!("{total} vectors with entries <= {bound}"))
}

fn equivalence(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let top = 10 * (k as i64 + 2);
    let mut mismatches = 0usize;
    for a in 0..=top {
        for b in 0..=top {
            let w = irreps_equivalent(k, a as u64, b as u64);
            let s = smyth_equivalent(k, a, b);
            let p = projections_equivalent(k, a as u64, b as u64);
            if s != w || p.is_some_and(|p| p != w) {
                mismatches += 1;
            }
        }
    }
    verdict(mismatches == 0, format!("{} pairs, {mismatches} mismatches", (top + 1) * (top + 1)))
}

/// The four identities as (step word, expected target) for exponent j.
pub fn ladder_identities(k: usize, j: i64, m: usize) -> [(Vec<LadderStep>, i64); 4] {
    use LadderStep::{Minus, Plus};
    let p = k as i64 + 2;
    let mi = m as i64;
    let rep = |a: LadderStep, b: LadderStep| -> Vec<LadderStep> { [a, b].repeat(m) };
    let with = |mut v: Vec<LadderStep>, s: LadderStep| {
        v.push(s);
        v
    };
    [
        (rep(Minus, Plus), j + 2 * mi * p),
        (rep(Plus, Minus), j - 2 * mi * p),
        (with(rep(Minus, Plus), Minus), -j + k as i64 - (2 * mi + 1) * p),
        (with(rep(Plus, Minus), Plus), -j + k as i64 + (2 * mi + 1) * p),
    ]
}

fn ladders(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let mut ok = true;
    let mut count = 0;
    for j in 0..=k as i64 {
        for m in 0..=1 {
            for (steps, target) in ladder_identities(k, j, m) {
                let (_, product, end) = ladder_product(k, j, &steps);
                let gauged = gauge(&SmythPotential::pair(k, j).to_matrix(), &product)?;
                ok &= end == target && gauged.same_entries(&SmythPotential::pair(k, target).to_matrix());
                ok &= build_gauge_ladder(k, j, target).is_ok();
                count += 1;
            }
        }
    }
    verdict(ok, format!("{count} identities verified exactly"))
}

fn block_split(k: usize, _: &GridParams) -> Result<(bool, String)> {
    let d = permutation_matrix(k);
    let mut ok = (0..=k).all(|i| (0..=k).filter(|&j| !d.get(i, j).is_zero()).count() == 1)
        && (0..=k).all(|j| (0..=k).filter(|&i| !d.get(i, j).is_zero()).count() == 1);
    for shift in [0i64, 3] {
        let l: Vec<i64> = (0..=k as i64).map(|j| j * j + shift).collect();
        let split = permutation_block_split(&SmythPotential::full(k, l.clone())?)?;
        ok &= is_block_diagonal(split.conjugated.as_ref().expect("computed"));
        let mut got: Vec<i64> = split.blocks.iter().flat_map(|&(a, b)| [a, b]).chain(split.singleton).collect();
        let expect_blocks: Vec<(i64, i64)> = (0..=k).filter(|&j| j < k - j).map(|j| (l[j], l[k - j])).collect();
        ok &= split.blocks == expect_blocks;
        ok &= split.singleton == (k % 2 == 0).then(|| l[k / 2]);
        let mut want = l.clone();
        got.sort_unstable();
        want.sort_unstable();
        ok &= got == want;
    }
    verdict(ok, format!("{} blocks", (k + 2) / 2))
}

fn solve_special(k: usize, grid: &GridParams) -> Result<crate::solver::RadialSolution> {
    solve_system(&HolomorphicData::special(k), k as f64, grid)
}

fn special_solution(k: usize, grid: &GridParams) -> Result<(bool, String)> {
    let sol = solve_special(k, grid)?;
    let res = residual_max(&sol);
    let fit = fit_asymptotics(&sol);
    let slope_err = (0..=k)
        .map(|j| (fit[j] - (2.0 * j as f64 - k as f64) / (k as f64 + 2.0)).abs())
        .fold(0.0, f64::max);
    let anti = sol.antisymmetry_defect();
    let middle = k % 2 == 1 || sol.w[k / 2].iter().all(|&v| v == 0.0);
    verdict(
        res < 1e-6 && slope_err < 1e-3 && anti == 0.0 && middle,
        format!("residual {res:.3e}, slope error {slope_err:.3e}, anti-symmetry defect {anti:e}"),
    )
}

fn connection_symmetries(k: usize, grid: &GridParams) -> Result<(bool, String)> {
    let sol = solve_special(k, grid)?;
    let pts = sample_points(grid.r_min * 10.0, grid.r_max * 0.9, 20);
    let report = crate::potential::check_symmetries(|t, l| connection_form(&sol, t, l), k, &pts, 1e-8)?;
    let mut flat = 0.0f64;
    for &(t, l) in &pts {
        flat = flat.max(zero_curvature_residual(&sol, t, l, 1e-4)?);
    }
    verdict(
        report.passed && flat < 1e-5,
        format!("symmetry deviation {:.3e}, zero curvature {flat:.3e}", report.max_deviation()),
    )
}

/// Residual at grid size n and at the half step, and their ratio.
pub fn convergence_ratio(grid: &GridParams) -> Result<(f64, f64, f64)> {
    let d = HolomorphicData::from_integers(1, &[0, 1])?;
    let coarse = residual_a(&solve_system(&d, 1.0, grid)?)[1];
    let fine_grid = grid.with_n(2 * grid.n - 1);
    let fine = residual_a(&solve_system(&d, 1.0, &fine_grid)?)[1];
    Ok((coarse, fine, coarse / fine))
}

fn grid_convergence(_: usize, grid: &GridParams) -> Result<(bool, String)> {
    let (coarse, fine, ratio) = convergence_ratio(grid)?;
    verdict(
        (3.5..=4.5).contains(&ratio),
        format!("{coarse:.3e} -> {fine:.3e}, ratio {ratio:.3}"),
    )
}
