use specgap::catalog::{make_family, Family, FamilySpec, WeightChoice};
use specgap::radial::{RadialMeasure, RadialPotential, Weight, WeightedKind};

fn gaussian(n: u32) -> RadialMeasure {
    RadialMeasure::new(n, RadialPotential::new(|r| 0.5 * r * r, |r| r, |_| 1.0, f64::INFINITY), 1e-12).unwrap()
}

#[test]
fn gaussian_moments_match_chi_square() {
    for n in [2, 3, 5, 8] {
        let m = gaussian(n);
        let nf = f64::from(n);
        assert!((m.moment(2).unwrap() - nf).abs() < 1e-10 * nf);
        assert!((m.moment(4).unwrap() - nf * (nf + 2.0)).abs() < 1e-9 * nf * nf);
    }
}

#[test]
fn gaussian_tail_mass_in_two_dimensions() {
    // ν((r, ∞)) = e^(-r²/2) for n = 2
    let m = gaussian(2);
    for r in [0.5_f64, 1.0, 2.0, 4.0, 6.0] {
        let exact = (-0.5 * r * r).exp();
        assert!((m.tail_mass(r) - exact).abs() < 1e-11 * exact.max(1e-3), "r={r}");
    }
    assert_eq!(m.tail_mass(0.0), 1.0);
}

#[test]
fn truncation_radius_leaves_requested_tail() {
    let m = gaussian(4);
    let tail = m.tail_mass(m.r_max());
    assert!(tail <= 1e-12 && tail > 1e-16, "{tail:e}");
}

#[test]
fn ball_normalization_and_cdf() {
    let m = make_family(&FamilySpec::ball(3)).unwrap().measure;
    // ν has density 3r² on (0, 1)
    assert!((m.normalization() - 1.0 / 3.0).abs() < 1e-13);
    for r in [0.1_f64, 0.5, 0.9] {
        assert!((m.cdf(r) - r.powi(3)).abs() < 1e-9);
        assert!((m.quantile(r.powi(3)) - r).abs() < 1e-7);
    }
    assert!((m.moment(2).unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn cauchy_moments_and_nonintegrable_tails() {
    // density ∝ r²(1+r²)^-4 in three dimensions: E r² = 1, E r⁴ = 5
    let m = make_family(&FamilySpec::cauchy(4.0, 3)).unwrap();
    assert!((m.measure.moment(2).unwrap() - 1.0).abs() < 1e-9);
    assert!((m.measure.moment(4).unwrap() - 5.0).abs() < 1e-7);
    assert!(m.measure.moment(6).is_err());
    let s2 = m.measure.weighted_moment(&m.weight, WeightedKind::S2).unwrap();
    assert!((s2 - 2.0).abs() < 1e-9);
}

#[test]
fn drift_matches_hand_derivation() {
    // σ² = 1 + r², V = r²/2: b = n r - r³ + (n-1)/r
    let spec = FamilySpec::new(Family::Gaussian, 4, WeightChoice::OnePlusR2);
    let m = make_family(&spec).unwrap();
    let d = m.measure.drift(&m.weight);
    for r in [0.3_f64, 1.0, 2.5] {
        let b = 4.0 * r - r.powi(3) + 3.0 / r;
        let db = 4.0 - 3.0 * r * r - 3.0 / (r * r);
        assert!((d.value(r).unwrap() - b).abs() < 1e-12 * b.abs().max(1.0));
        assert!((d.derivative(r).unwrap() - db).abs() < 1e-12 * db.abs().max(1.0));
    }
    assert!(d.value(0.0).is_err());
    // σ ≡ 1 and the Gaussian: b = -r + (n-1)/r
    let unit = gaussian(4).drift(&Weight::unit());
    assert!((unit.value(2.0).unwrap() - (-2.0 + 1.5)).abs() < 1e-15);
}

#[test]
fn effective_potential_curvature() {
    let u = gaussian(5).effective_potential();
    for r in [0.2, 1.0, 3.0] {
        assert!((u.second_derivative(r).unwrap() - (1.0 + 4.0 / (r * r))).abs() < 1e-12);
    }
}

#[test]
fn invalid_measures_are_rejected() {
    let p = || RadialPotential::new(|r| r, |_| 1.0, |_| 0.0, f64::INFINITY);
    assert!(RadialMeasure::new(1, p(), 1e-12).is_err());
    assert!(RadialMeasure::new(3, p(), 0.0).is_err());
    assert!(RadialMeasure::new(3, p(), 0.5).is_err());
    // r² e^(+r) is not a finite measure
    let bad = RadialPotential::new(|r| -r, |_| -1.0, |_| 0.0, f64::INFINITY);
    assert!(RadialMeasure::new(3, bad, 1e-12).is_err());
}
