use num_complex::Complex64;
use ttstar_core::potential::{check_symmetries, sample_points, ConnectionSample};
use ttstar_core::rep::HolomorphicData;
use ttstar_core::solver::{
    connection_form, fit_asymptotics, interpolate, residual_max, solve_sinh_gordon, solve_system, write_csv,
    GridParams, RadialSolution, ShootingProblem, SolveSummary, DEFAULT_TOL,
};
use ttstar_core::Error;

fn data(l: &[i64]) -> HolomorphicData {
    HolomorphicData::from_integers(l.len() - 1, l).unwrap()
}

fn solve(l: &[i64]) -> RadialSolution {
    let d = data(l);
    let n = d.normalization().unwrap();
    solve_system(&d, n, &GridParams::default()).unwrap()
}

fn pair(m: f64) -> ShootingProblem {
    ShootingProblem::new(m, 1e-4, 8.0, 4000, DEFAULT_TOL).unwrap()
}

#[test]
fn zero_data_gives_zero_solution() {
    let sol = solve(&[1, 1]);
    assert!(sol.w.iter().flatten().all(|&v| v == 0.0));
    assert_eq!(residual_max(&sol), 0.0);
    assert_eq!(fit_asymptotics(&sol), vec![0.0, 0.0]);
}

#[test]
fn positive_m_decays_at_infinity() {
    let s = solve_sinh_gordon(&pair(0.5)).unwrap();
    assert!(s.w.last().unwrap().abs() < 1e-4);
    assert!(s.w[0] < 0.0, "w ~ m log r is negative near 0 for m > 0");
}

#[test]
fn negative_m_is_the_mirror() {
    let a = solve_sinh_gordon(&pair(0.4)).unwrap();
    let b = solve_sinh_gordon(&pair(-0.4)).unwrap();
    assert!(a.w.iter().zip(&b.w).all(|(x, y)| x == &-y));
    assert_eq!(a.b, -b.b);
}

#[test]
fn middle_component_vanishes_for_even_k() {
    let sol = solve(&[0, 1, 2]);
    assert!(sol.w[1].iter().all(|&v| v == 0.0));
    assert_eq!(sol.antisymmetry_defect(), 0.0);
}

#[test]
fn system_equals_independent_pair_solves() {
    let sol = solve(&[0, 1, 2, 3]);
    for (j, l) in [(0usize, [0i64, 3]), (1, [1, 2])] {
        let single = solve(&l);
        let dj = sol.w[j].iter().zip(&single.w[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let dk = sol.w[3 - j].iter().zip(&single.w[1]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dj < 1e-10 && dk < 1e-10, "pair {j}: {dj:e} {dk:e}");
    }
}

#[test]
fn larger_m_lies_below_at_r_min() {
    let ms = [0.1, 0.3, 0.6, 0.9];
    let w0: Vec<f64> = ms.iter().map(|&m| solve_sinh_gordon(&pair(m)).unwrap().w[0]).collect();
    assert!(w0.iter().all(|&v| v < 0.0));
    assert!(w0.windows(2).all(|p| p[1] < p[0]), "{w0:?}");
}

#[test]
fn slopes_depend_only_on_m() {
    // (0,1) with n = 1 and (1,3) with n = 4 both give m_0 = -1/3
    let a = fit_asymptotics(&solve(&[0, 1]));
    let b = fit_asymptotics(&solve(&[1, 3]));
    assert!((a[0] - b[0]).abs() < 2e-3);
    assert!((a[0] + 1.0 / 3.0).abs() < 1e-3);
    assert!((a[0] + a[1]).abs() < 1e-12);
}

#[test]
fn boundary_data_is_rejected() {
    let d = data(&[-1, 3]);
    let err = solve_system(&d, 2.0, &GridParams::default()).unwrap_err();
    assert!(matches!(err, Error::BoundaryAsymptotic { index: 0, .. }), "{err}");
}

#[test]
fn residual_small_for_special_solutions() {
    for k in 1..=3 {
        let sol = solve_system(&HolomorphicData::special(k), k as f64, &GridParams::default()).unwrap();
        assert!(residual_max(&sol) < 1e-6);
    }
}

#[test]
fn interpolation_reproduces_stations() {
    let sol = solve(&[0, 2]);
    for i in [0, 17, 2000, 3999] {
        let (w, _) = interpolate(&sol, 0, sol.grid.r(i)).unwrap();
        assert!((w - sol.w[0][i]).abs() < 1e-12);
    }
    assert!(matches!(interpolate(&sol, 0, 9.0), Err(Error::OutsideAnnulus { .. })));
}

#[test]
fn zero_solution_connection_is_constant() {
    let sol = solve(&[1, 1, 1]);
    let a = connection_form(&sol, Complex64::new(0.3, 0.4), Complex64::new(1.0, 0.0)).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let want = if i + j == 2 { -1.0 } else { 0.0 };
            assert!((a.alpha_t.get(i, j) - Complex64::new(want, 0.0)).norm() < 1e-14);
        }
    }
}

#[test]
fn symmetries_detect_a_corrupted_solution() {
    let sol = solve(&[0, 1, 2, 3]);
    let pts = sample_points(1e-3, 7.0, 20);
    let good = check_symmetries(|t, l| connection_form(&sol, t, l), 3, &pts, 1e-8).unwrap();
    assert!(good.passed, "{good:?}");

    let mut bad = sol.clone();
    bad.w[0].iter_mut().for_each(|v| *v = -*v);
    bad.ws[0].iter_mut().for_each(|v| *v = -*v);
    let report = check_symmetries(
        |t, l| -> ttstar_core::Result<ConnectionSample> { connection_form(&bad, t, l) },
        3,
        &pts,
        1e-8,
    )
    .unwrap();
    assert!(!report.passed);
}

#[test]
fn outputs_are_deterministic() {
    let a = solve(&[0, 1, 2]);
    let b = solve(&[0, 1, 2]);
    assert_eq!(SolveSummary::new(&a).to_json(), SolveSummary::new(&b).to_json());
    let (mut ca, mut cb) = (Vec::new(), Vec::new());
    write_csv(&a, &mut ca).unwrap();
    write_csv(&b, &mut cb).unwrap();
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with("r,w_0,w_1,w_2\n"));
    assert_eq!(text.lines().count(), 4001);
}
