use specgap::bounds::{
    bj_lower, bj_radial_lower, bj_weighted_lower, chen_functional, chen_lower, exp_power_explicit, main_theorem_bracket,
    rayleigh_upper, spectral_comparison, weighted_comparison, BoundStatus, CandidateFunction,
};
use specgap::catalog::{make_family, FamilySpec};
use specgap::eigen::GridSpec;

#[test]
fn gaussian_closed_form_bounds() {
    let m = make_family(&FamilySpec::gaussian(3)).unwrap();
    let b = main_theorem_bracket(3, m.measure.moment(2).unwrap()).unwrap();
    assert!((b.lower - 2.0 / 3.0).abs() < 1e-10 && (b.upper - 1.0).abs() < 1e-10);
    assert!((bj_radial_lower(&m.measure).unwrap() - 2.0 / 3.0).abs() < 1e-10);
    // U'' = 1 + (n-1)/r² > 1, so the integrated bound lies in (1, 2]
    let bj = bj_lower(&m.measure).unwrap();
    assert_eq!(bj.status, BoundStatus::Informative);
    assert!(bj.value > 1.0 && bj.value <= 2.0);
}

#[test]
fn chen_functional_is_constant_on_the_gaussian_eigenfunction() {
    let m = make_family(&FamilySpec::gaussian(4)).unwrap();
    for r in [0.1, 1.0, 3.0, 7.0] {
        let v = chen_functional(&m.measure, &m.weight, &m.candidate, r).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "r={r}: {v}");
    }
    let lb = chen_lower(&m.measure, &m.weight, &m.candidate, &GridSpec::with_cells(256)).unwrap();
    assert!((lb.value - 2.0).abs() < 1e-10);
}

#[test]
fn cauchy_low_beta_candidate_infimum() {
    let m = make_family(&FamilySpec::cauchy(2.5, 3)).unwrap();
    let lb = chen_lower(&m.measure, &m.weight, &m.candidate, &GridSpec::default()).unwrap();
    assert!((lb.value - 1.0).abs() < 1e-6, "{}", lb.value);
}

#[test]
fn weighted_curvature_bound_for_cauchy_is_below_the_gap() {
    let m = make_family(&FamilySpec::cauchy(4.0, 3)).unwrap();
    let lb = bj_weighted_lower(&m.measure, &m.weight).unwrap();
    assert!(lb.value > 5.0 && lb.value <= 6.0, "{}", lb.value);
}

#[test]
fn rayleigh_quotient_of_linear_function_on_gaussian() {
    let m = make_family(&FamilySpec::gaussian(3)).unwrap();
    let q = rayleigh_upper(&m.measure, &m.weight, &CandidateFunction::linear()).unwrap();
    // 1/Var(r) with E r = 2√(2/π), E r² = 3
    let mean = 2.0 * (2.0 / std::f64::consts::PI).sqrt();
    assert!((q - 1.0 / (3.0 - mean * mean)).abs() < 1e-10);
}

#[test]
fn comparison_brackets() {
    let b = spectral_comparison(2.0, 3, 3.0).unwrap();
    assert_eq!((b.lower, b.upper), (2.0 / 3.0, 1.0));
    let b = spectral_comparison(0.5, 3, 3.0).unwrap();
    assert_eq!((b.lower, b.upper), (0.5, 0.5));
    let b = weighted_comparison(6.0, 3, 0.5, 2.0, 1.0).unwrap();
    assert_eq!((b.lower, b.upper), (4.0, 6.0));
    assert!(weighted_comparison(-1.0, 3, 1.0, 1.0, 1.0).is_err());
    assert!(spectral_comparison(1.0, 1, 1.0).is_err());
}

#[test]
fn exp_power_brackets_nest_and_hit_one_at_two() {
    let b = exp_power_explicit(5, 2.0).unwrap();
    assert!((b.exact.upper - 1.0).abs() < 1e-12 && (b.exact.lower - 0.8).abs() < 1e-12);
    for alpha in [1.0, 1.5, 3.0, 8.0] {
        for n in [2, 7, 30] {
            let b = exp_power_explicit(n, alpha).unwrap();
            assert!(b.simplified.encloses(&b.exact, 1e-12), "alpha={alpha} n={n}");
        }
    }
    assert!(exp_power_explicit(3, 0.5).is_err());
}

#[test]
fn candidate_checks_catch_wrong_derivatives() {
    let bad = CandidateFunction::new("bad", |r: f64| r * r, |r: f64| r, |_| 1.0, |_| 0.0);
    let grid: Vec<f64> = (1..50).map(|i| 0.1 * f64::from(i)).collect();
    assert!(bad.check(&grid).is_err());
    assert!(CandidateFunction::one_plus_square_power(0.7).check(&grid).is_ok());
}
