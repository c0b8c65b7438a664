use specgap::catalog::{make_family, FamilySpec};
use specgap::eigen::{discretize, residual_check, spectral_gap, GridSpec, SymTridiagonal};
use specgap::bounds::CandidateFunction;

#[test]
fn tridiagonal_bisection_matches_path_graph_laplacian() {
    // eigenvalues of the Neumann path Laplacian: 2 - 2cos(πk/m)
    let m = 12;
    let mut diag = vec![2.0; m];
    diag[0] = 1.0;
    diag[m - 1] = 1.0;
    let t = SymTridiagonal::new(diag, vec![-1.0; m - 1]).unwrap();
    for k in 0..m {
        let exact = 2.0 - 2.0 * (std::f64::consts::PI * k as f64 / m as f64).cos();
        assert!((t.eigenvalue(k).unwrap() - exact).abs() < 1e-12);
    }
}

#[test]
fn gaussian_gap_and_richardson_error() {
    let m = make_family(&FamilySpec::gaussian(3)).unwrap();
    let g = spectral_gap(&m.measure, &m.weight, &GridSpec::default()).unwrap();
    assert!((g.value - 2.0).abs() < 1e-6);
    assert!(g.error_estimate < 1e-4);
    assert!(g.n_cells_used >= 4096);
}

#[test]
fn ball_gap_is_the_squared_bessel_zero() {
    // j_{3/2,1} = 4.493409457909064
    let m = make_family(&FamilySpec::ball(3)).unwrap();
    let g = spectral_gap(&m.measure, &m.weight, &GridSpec::default()).unwrap();
    let j = 4.493_409_457_909_064_f64;
    assert!((g.value - j * j).abs() < 1e-5 * j * j, "{}", g.value);
    assert!(!g.window_extrapolated);
}

#[test]
fn cauchy_gaps_in_both_regimes() {
    for (beta, exact) in [(2.5, 1.0), (6.0, 14.0)] {
        let m = make_family(&FamilySpec::cauchy(beta, 3)).unwrap();
        let g = spectral_gap(&m.measure, &m.weight, &GridSpec::default()).unwrap();
        assert!((g.value - exact).abs() < 1e-3 * exact, "beta={beta}: {}", g.value);
    }
}

#[test]
fn discretization_rayleigh_quotient_bounds_the_gap() {
    let m = make_family(&FamilySpec::gaussian(2)).unwrap();
    let d = discretize(&m.measure, &m.weight, &GridSpec::with_cells(512)).unwrap();
    let f: Vec<f64> = d.radii().iter().map(|r| r * r).collect();
    assert!(d.rayleigh(&f).unwrap() >= 2.0 - 1e-3);
}

#[test]
fn residual_vanishes_only_at_the_eigenpair() {
    let m = make_family(&FamilySpec::gaussian(5)).unwrap();
    let f = CandidateFunction::shifted_square(5.0);
    assert!(residual_check(&m.measure, &m.weight, &f, 2.0).unwrap() < 1e-10);
    assert!(residual_check(&m.measure, &m.weight, &f, 1.5).unwrap() > 1e-3);
}

#[test]
fn grid_validation() {
    assert!(GridSpec::with_cells(10).validate().is_err());
    assert!(GridSpec::default().validate().is_ok());
}
