//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Each criterion is a list of claims checked at the pinned tolerances and a
//! list of oracle checks against independently computed values. The process
//! fails when an oracle check fails or when a claim fails that is not a
//! documented deviation. `--strict` makes every failed claim fatal.

use std::time::Instant;

use clap::Parser;
use rayon::prelude::*;
use specgap::bounds::{
    bj_lower, bj_radial_lower, bj_weighted_lower, chen_lower, exp_power_explicit, gamma_ratio_bounds, rayleigh_upper,
    weighted_comparison, weighted_curvature, CandidateFunction,
};
use specgap::catalog::{catalog_grid, make_family, reference_gap, Family, FamilyModel, FamilySpec, Scope, WeightChoice};
use specgap::cli::{execute, render, Cli};
use specgap::eigen::{residual_check, spectral_gap, GridSpec};
use specgap::mc::{rayleigh_estimate, sample_mu};
use specgap::radial::WeightedKind;
use specgap::special::ln_gamma;
use specgap::Error;

struct Check {
    name: String,
    ok: bool,
    detail: String,
    /// Claim known to fail as stated; see the project notes.
    deviation: bool,
}

#[derive(Default)]
struct Criterion {
    claims: Vec<Check>,
    oracles: Vec<Check>,
}

impl Criterion {
    fn claim(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.claims.push(Check { name: name.into(), ok, detail: detail.into(), deviation: false });
    }

    fn deviating_claim(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.claims.push(Check { name: name.into(), ok, detail: detail.into(), deviation: true });
    }

    fn oracle(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.oracles.push(Check { name: name.into(), ok, detail: detail.into(), deviation: false });
    }

    fn rel(&mut self, oracle: bool, name: impl Into<String>, measured: f64, expected: f64, tol: f64) {
        let err = if expected == 0.0 { measured.abs() } else { rel_err(measured, expected) };
        let detail = format!("{measured:.10e} vs {expected:.10e}, rel {err:.2e} (tol {tol:.0e})");
        if oracle {
            self.oracle(name, err <= tol, detail);
        } else {
            self.claim(name, err <= tol, detail);
        }
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn gap(m: &FamilyModel) -> f64 {
    spectral_gap(&m.measure, &m.weight, &GridSpec::default()).expect("solver").value
}

fn model(spec: FamilySpec) -> FamilyModel {
    make_family(&spec).expect("model")
}

/// Least-squares slope of ln y against ln x.
fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Composite Simpson rule on [a, b] with `m` (even) intervals.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let h = (b - a) / m as f64;
    let mut s = f(a) + f(b);
    for i in 1..m {
        s += f(a + h * i as f64) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// ln Γ by recurrence to x ≥ 10 and the Stirling series.
fn ln_gamma_oracle(mut x: f64) -> f64 {
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= x.ln();
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let series = (1.0 / 12.0 - z * (1.0 / 360.0 - z * (1.0 / 1260.0 - z * (1.0 / 1680.0 - z / 1188.0)))) / x;
    shift + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// First positive zero of the Bessel function J_ν, from its power series.
fn bessel_zero(nu: f64) -> f64 {
    // J_ν(x)·Γ(ν+1)(2/x)^ν
    let j = |x: f64| {
        let q = x * x / 4.0;
        let (mut t, mut s) = (1.0, 1.0);
        for k in 0..200 {
            let k = f64::from(k);
            t *= -q / ((k + 1.0) * (k + nu + 1.0));
            s += t;
            if t.abs() < 1e-18 * s.abs().max(1e-300) && k > q.sqrt() {
                break;
            }
        }
        s
    };
    let mut a = nu.max(0.5);
    while j(a + 0.01) > 0.0 {
        a += 0.01;
    }
    let mut b = a + 0.01;
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if j(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn cauchy_closed_form(beta: f64, n: u32) -> f64 {
    let kappa = beta - f64::from(n) / 2.0;
    if kappa <= 2.0 {
        kappa * kappa
    } else {
        4.0 * (kappa - 1.0)
    }
}

fn cauchy_specs() -> Vec<(u32, f64)> {
    let mut out = Vec::new();
    for (n, betas) in [
        (2, vec![1.5, 2.0, 3.0, 4.0, 6.0]),
        (3, vec![1.6, 2.5, 3.5, 4.0, 6.0]),
        (4, vec![2.5, 3.0, 4.0, 5.0, 7.0]),
        (6, vec![3.5, 4.0, 5.0, 6.0, 9.0]),
    ] {
        for b in betas {
            out.push((n, b));
        }
    }
    out
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::default();
    for (n, beta) in cauchy_specs() {
        let start = Instant::now();
        let g = gap(&model(FamilySpec::cauchy(beta, n)));
        let secs = start.elapsed().as_secs_f64();
        c.rel(false, format!("cauchy n={n} beta={beta} radial gap"), g, cauchy_closed_form(beta, n), 1e-3);
        c.claim(format!("cauchy n={n} beta={beta} runtime"), secs <= 10.0, format!("{secs:.2} s"));
    }
    for n in [2u32, 3, 4, 6] {
        let beta = f64::from(n) / 2.0 + 2.0;
        let g = gap(&model(FamilySpec::cauchy(beta, n)));
        c.rel(false, format!("cauchy n={n} continuity, (beta-n/2)^2"), g, 4.0, 1e-3);
        c.rel(false, format!("cauchy n={n} continuity, 4(beta-n/2-1)"), g, 4.0, 1e-3);
    }
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::default();
    for n in 2..=8u32 {
        let m = model(FamilySpec::gaussian(n));
        let g = gap(&m);
        c.claim(format!("gaussian n={n} radial gap"), (g - 2.0).abs() <= 2e-3, format!("{g:.8}"));
        let f = CandidateFunction::shifted_square(f64::from(n));
        let res = residual_check(&m.measure, &m.weight, &f, 2.0).expect("residual");
        c.claim(format!("gaussian n={n} residual"), res <= 1e-10, format!("{res:.2e}"));
    }
    c
}

/// ∫r²dν for the law ∝ exp(-r^α/α), by quadrature.
fn exp_power_m2_oracle(n: u32, alpha: f64) -> f64 {
    let nf = f64::from(n);
    let w = |r: f64, k: f64| if r == 0.0 { 0.0 } else { (k * r.ln() - r.powf(alpha) / alpha).exp() };
    let end = (alpha * 800.0).powf(1.0 / alpha);
    let m = 400_000;
    simpson(|r| w(r, nf + 1.0), 0.0, end, m) / simpson(|r| w(r, nf - 1.0), 0.0, end, m)
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::default();
    let cases: Vec<(f64, u32)> = [1.0, 1.5, 2.0, 4.0].iter().flat_map(|&a| (2..=8u32).map(move |n| (a, n))).collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|&(alpha, n)| (alpha, n, gap(&model(FamilySpec::exp_power(alpha, n)))))
        .collect();
    for (alpha, n, g) in results {
        let nf = f64::from(n);
        let b = exp_power_explicit(n, alpha).expect("bracket");
        let m2 = exp_power_m2_oracle(n, alpha);
        let d = format!("exp-power alpha={alpha} n={n}");
        c.rel(true, format!("{d} lower vs quadrature"), b.exact.lower, (nf - 1.0) / m2, 1e-8);
        c.rel(true, format!("{d} upper vs quadrature"), b.exact.upper, nf / m2, 1e-8);
        let full = g.min(nf / m2);
        let tol = 1e-6 * (1.0 + full);
        c.claim(
            format!("{d} bracket contains min(radial gap, n/m2)"),
            b.exact.lower - tol <= full && full <= b.exact.upper + tol,
            format!("{full:.8} in [{:.8}, {:.8}]", b.exact.lower, b.exact.upper),
        );
        if alpha == 2.0 {
            c.claim(
                format!("{d} bracket contains 1"),
                // rounding of n/m2 at m2 = n
                b.exact.lower <= 1.0 + 1e-12 && 1.0 <= b.exact.upper + 1e-12,
                format!("[{:.12}, {:.12}]", b.exact.lower, b.exact.upper),
            );
        }
        let order = nf.powf(1.0 - 2.0 / alpha);
        let (sl, su) = ((nf - 1.0) / (nf + 1.0) * order, (nf + 2.0) / nf * order);
        c.rel(true, format!("{d} simplified lower"), b.simplified.lower, sl, 1e-12);
        c.rel(true, format!("{d} simplified upper"), b.simplified.upper, su, 1e-12);
        c.claim(
            format!("{d} simplified bracket encloses"),
            b.simplified.lower <= b.exact.lower + 1e-12 && b.exact.upper <= b.simplified.upper + 1e-12,
            format!("[{sl:.8}, {su:.8}] vs [{:.8}, {:.8}]", b.exact.lower, b.exact.upper),
        );
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::default();
    let dims = [2u32, 4, 8, 16, 32];
    let gaps: Vec<f64> = dims.par_iter().map(|&n| gap(&model(FamilySpec::ball(n)))).collect();
    for (&n, &g) in dims.iter().zip(&gaps) {
        let nf = f64::from(n);
        if n <= 16 {
            let floor = (nf * nf - 1.0) / 4.0;
            c.claim(format!("ball n={n} radial gap above (n^2-1)/4"), g >= floor, format!("{g:.6} >= {floor:.6}"));
        }
        let j = bessel_zero(nf / 2.0);
        c.rel(true, format!("ball n={n} radial gap vs squared Bessel zero"), g, j * j, 1e-5);
    }
    let x = [4.0, 8.0, 16.0, 32.0];
    let slope = log_slope(&x, &gaps[1..]);
    c.deviating_claim("ball radial gap slope 2 +- 0.15", (slope - 2.0).abs() <= 0.15, format!("slope {slope:.4}"));
    let bessel: Vec<f64> = x.iter().map(|&n| bessel_zero(n / 2.0).powi(2)).collect();
    let oracle_slope = log_slope(&x, &bessel);
    c.oracle(
        "ball slope matches Bessel oracle slope",
        (slope - oracle_slope).abs() <= 1e-3,
        format!("{slope:.5} vs {oracle_slope:.5}"),
    );
    let out = run_cli(&["specgap", "table", "--id", "ball", "--dims", "2,4,8,16"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("json");
    let cols: Vec<&str> = v["table"]["columns"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    let at = |name: &str| cols.iter().position(|&s| s == name).unwrap();
    for row in v["table"]["rows"].as_array().unwrap() {
        let cell = |name: &str| row["cells"][at(name)].as_f64().unwrap();
        let n = cell("n");
        let (lo, hi) = (cell("full_lower"), cell("full_upper"));
        let ok = lo <= hi && rel_err(lo, (n - 1.0) * (n + 2.0) / n) < 1e-9 && rel_err(hi, n + 2.0) < 1e-9;
        c.claim(format!("ball n={n} full bracket emitted"), ok, format!("[{lo:.6}, {hi:.6}]"));
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::default();
    let dims = [4u32, 8, 16, 32];
    let x: Vec<f64> = dims.iter().map(|&n| f64::from(n)).collect();
    for alpha in [1.0, 2.0, 4.0] {
        let gaps: Vec<f64> = dims.par_iter().map(|&n| gap(&model(FamilySpec::exp_power(alpha, n)))).collect();
        let slope = log_slope(&x, &gaps);
        let target = 1.0 - 2.0 / alpha;
        let name = format!("exp-power alpha={alpha} slope {target} +- 0.15");
        let detail = format!("slope {slope:.4}");
        let ok = (slope - target).abs() <= 0.15;
        if alpha == 1.0 {
            c.deviating_claim(name, ok, detail);
            // hydrogen-like radial problem: gap n/(n+1)²
            for (&n, &g) in x.iter().zip(&gaps) {
                c.rel(true, format!("exp-power alpha=1 n={n} gap vs n/(n+1)^2"), g, n / (n + 1.0).powi(2), 1e-6);
            }
        } else {
            c.claim(name, ok, detail);
        }
        if alpha == 2.0 {
            for (&n, &g) in x.iter().zip(&gaps) {
                c.rel(true, format!("exp-power alpha=2 n={n} gap vs 2"), g, 2.0, 1e-3);
            }
        }
    }
    c
}

fn applicable<T>(r: specgap::Result<T>) -> Option<specgap::Result<T>> {
    match r {
        Err(Error::HypothesisFailed(_) | Error::NonIntegrable(_)) => None,
        other => Some(other),
    }
}

/// Check name and the excess over the allowed side, `None` outside the hypotheses.
type Row = (String, Option<specgap::Result<f64>>);

fn criterion_6() -> Criterion {
    let mut c = Criterion::default();
    let specs = catalog_grid();
    c.claim("catalog grid size", specs.len() >= 60, format!("{} cases", specs.len()));
    let rows: Vec<Vec<Row>> = specs
        .par_iter()
        .map(|spec| {
            let m = model(*spec);
            let g = gap(&m);
            let tol = 1e-6 * (1.0 + g);
            let (mm, w) = (&m.measure, &m.weight);
            let mut out = Vec::new();
            let mut lower = |name: &str, r: Option<specgap::Result<f64>>| {
                let r = r.map(|r| r.map(|v| v - (g + tol)));
                out.push((format!("{} {name}", spec.describe()), r));
            };
            if spec.weight == WeightChoice::Unit {
                lower("bj_radial_lower", applicable(bj_radial_lower(mm)));
                lower("bj_lower", applicable(bj_lower(mm).map(|b| b.value)));
            }
            lower("bj_weighted_lower", applicable(bj_weighted_lower(mm, w).map(|b| b.value)));
            lower("chen_lower", applicable(chen_lower(mm, w, &m.candidate, &GridSpec::default()).map(|b| b.value)));
            let up = applicable(rayleigh_upper(mm, w, &m.test_function)).map(|r| r.map(|v| g - tol - v));
            out.push((format!("{} rayleigh_upper", spec.describe()), up));
            out
        })
        .collect();
    let (mut checked, mut skipped) = (0, 0);
    for (name, r) in rows.into_iter().flatten() {
        match r {
            None => skipped += 1,
            Some(Ok(excess)) => {
                checked += 1;
                c.claim(name, excess <= 0.0, format!("excess {excess:.3e}"));
            }
            Some(Err(e)) => c.claim(name, false, format!("error: {e}")),
        }
    }
    c.oracle("bounds evaluated", checked > 200, format!("{checked} evaluated, {skipped} outside their hypotheses"));
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::default();
    for n in 2..=8u32 {
        let nf = f64::from(n);
        let spec = FamilySpec::new(Family::Gaussian, n, WeightChoice::OnePlusR2);
        let m = model(spec);
        let bj = bj_weighted_lower(&m.measure, &m.weight).expect("bound").value;
        let floor = if n >= 3 { 4.0 * (nf - 2.0) } else { 4.0 };
        let name = format!("gaussian n={n} one-plus-r2 weighted curvature bound >= {floor}");
        let detail = format!("{bj:.6}");
        if n >= 5 {
            c.deviating_claim(name, bj >= floor - 1e-9, detail);
        } else {
            c.claim(name, bj >= floor - 1e-9, detail);
        }
        // curvature of the weighted generator, derived by hand
        let curv = |r: f64| (2.0 * r.powi(4) + 3.0 * r * r) / (1.0 + r * r) + (nf - 1.0) / (r * r);
        for r in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let lib = weighted_curvature(&m.measure, &m.weight, r).expect("curvature");
            c.rel(true, format!("gaussian n={n} curvature at r={r}"), lib, curv(r), 1e-9);
        }
        let dens = |r: f64| if r == 0.0 { 0.0 } else { ((nf - 1.0) * r.ln() - r * r / 2.0).exp() };
        let z = simpson(dens, 0.0, 40.0, 40_000);
        let inv = simpson(|r| if r == 0.0 { 0.0 } else { dens(r) / curv(r) }, 0.0, 40.0, 40_000) / z;
        c.rel(true, format!("gaussian n={n} weighted curvature bound vs quadrature"), bj, 1.0 / inv, 1e-6);
        let g = gap(&m);
        c.oracle(format!("gaussian n={n} solver gap above the bound"), g >= bj, format!("{g:.6} >= {bj:.6}"));
        if n >= 3 {
            c.oracle(format!("gaussian n={n} bound above 2(n-2)"), bj >= 2.0 * (nf - 2.0), format!("{bj:.6}"));
        }

        let full = reference_gap(&spec, Scope::Full).expect("reference");
        c.claim(
            format!("gaussian n={n} one-plus-r2 bracket [n-1, n+1]"),
            full.lower <= full.upper && full.lower == nf - 1.0 && full.upper == nf + 1.0,
            format!("[{}, {}]", full.lower, full.upper),
        );
        let inv_spec = FamilySpec::new(Family::Gaussian, n, WeightChoice::InvOnePlusR2);
        let full = reference_gap(&inv_spec, Scope::Full).expect("reference");
        let upper = if n >= 3 { (1.0 / (nf - 2.0)).min(1.0) } else { 1.0 };
        c.claim(
            format!("gaussian n={n} inv-one-plus-r2 bracket"),
            full.lower <= full.upper && rel_err(full.lower, (nf - 1.0) / (nf * (nf + 3.0))) < 1e-15 && full.upper == upper,
            format!("[{}, {}]", full.lower, full.upper),
        );

        for (choice, s2) in [
            (WeightChoice::OnePlusR2, (|r: f64| 1.0 + r * r) as fn(f64) -> f64),
            (WeightChoice::InvOnePlusR2, |r: f64| 1.0 / (1.0 + r * r)),
        ] {
            let wm = model(FamilySpec::new(Family::Gaussian, n, choice));
            let a = wm.measure.weighted_moment(&wm.weight, WeightedKind::R2OverS2).expect("moment");
            let b = wm.measure.weighted_moment(&wm.weight, WeightedKind::S2).expect("moment");
            let m2 = wm.measure.moment(2).expect("moment");
            let lower = weighted_comparison(1e300, n, a, b, m2).expect("comparison").lower;
            let oracle = simpson(|r| dens(r) * r * r / s2(r), 0.0, 40.0, 40_000) / z;
            c.rel(false, format!("gaussian n={n} {} comparison min-term", choice.key()), lower, (nf - 1.0) / oracle, 1e-8);
        }
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::default();
    for a in [0.25, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0] {
        for k in 0..=8 {
            let b = 0.25 * f64::from(k);
            let g = gamma_ratio_bounds(a, b).expect("bounds");
            c.claim(format!("gamma ratio a={a} b={b}"), g.slack() >= -1e-12, format!("slack {:.3e}", g.slack()));
            let value = (ln_gamma_oracle(a) + b * a.ln() - ln_gamma_oracle(a + b)).exp();
            c.rel(true, format!("gamma ratio a={a} b={b} value"), g.value, value, 1e-12);
        }
    }
    let mut fact = 1.0_f64;
    for k in 1..=30u32 {
        fact *= f64::from(k);
        c.rel(false, format!("ln gamma({})", k + 1), ln_gamma(f64::from(k) + 1.0), fact.ln(), 1e-13);
    }
    let mut half = std::f64::consts::PI.sqrt();
    for k in 0..30u32 {
        c.rel(false, format!("ln gamma({k}.5)"), ln_gamma(f64::from(k) + 0.5), half.ln(), 1e-13);
        half *= f64::from(k) + 0.5;
    }
    c
}

fn run_cli(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(args).expect("arguments");
    let (report, err) = execute(&cli);
    assert!(err.is_none(), "{err:?}");
    render(&report, cli.common.format)
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::default();
    let (count, seed) = (100_000, 7);

    let m = model(FamilySpec::gaussian(3));
    let start = Instant::now();
    let batch = sample_mu(&m.measure, count, seed);
    let r = rayleigh_estimate(&batch, |x| x[0], |_, g| { g.fill(0.0); g[0] = 1.0 }, &m.weight).expect("estimate");
    let secs = start.elapsed().as_secs_f64();
    c.claim("gaussian linear ratio CI contains 1", r.contains(1.0), format!("{:.5} +- {:.5}", r.ratio, r.ci_half_width));
    c.claim("gaussian estimate runtime", secs <= 5.0, format!("{secs:.2} s"));

    let m = model(FamilySpec::cauchy(4.0, 3));
    let start = Instant::now();
    let batch = sample_mu(&m.measure, count, seed);
    let r = rayleigh_estimate(
        &batch,
        |x| x.iter().map(|v| v * v).sum(),
        |x, g| g.iter_mut().zip(x).for_each(|(g, v)| *g = 2.0 * v),
        &m.weight,
    )
    .expect("estimate");
    let secs = start.elapsed().as_secs_f64();
    let detail = format!("{:.5} +- {:.5}", r.ratio, r.ci_half_width);
    c.deviating_claim("cauchy radial-quadratic ratio CI contains 2", r.contains(2.0), detail.clone());
    // E r² = 1 and E r⁴ = 5 under r²(1+r²)^-4, so 4(E r² + E r⁴)/Var r² = 6
    // with r = tan θ, r^k r²(1+r²)^-4 dr = sin^(k+2)θ cos^(4-k)θ dθ
    let mom = |k: i32| simpson(|t: f64| t.sin().powi(k + 2) * t.cos().powi(4 - k), 0.0, std::f64::consts::FRAC_PI_2, 20_000);
    let z = mom(0);
    let (e2, e4) = (mom(2) / z, mom(4) / z);
    let exact = 4.0 * (e2 + e4) / (e4 - e2 * e2);
    c.rel(true, "cauchy quadratic quotient by quadrature", exact, 6.0, 1e-6);
    c.oracle("cauchy radial-quadratic ratio CI contains the exact quotient", r.contains(exact), detail);
    c.claim("cauchy estimate runtime", secs <= 5.0, format!("{secs:.2} s"));

    let args = [
        "specgap", "sample", "--family", "cauchy", "--beta", "4", "--dim", "3", "--weight", "one-plus-r2", "--count", "100000",
        "--seed", "7", "--function", "radial-quadratic",
    ];
    let a = run_cli(&args);
    let b = run_cli(&args);
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool").install(|| run_cli(&args));
    let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("pool").install(|| run_cli(&args));
    c.claim("identical seeds give byte-identical reports", a == b && a == single && a == many, format!("{} bytes", a.len()));
    let other = run_cli(&args.map(|s| if s == "7" { "8" } else { s }));
    c.oracle("different seeds give different reports", a != other, "");
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::default();
    let mut specs: Vec<FamilySpec> = (2..=8).map(FamilySpec::gaussian).collect();
    specs.extend(cauchy_specs().into_iter().map(|(n, b)| FamilySpec::cauchy(b, n)));
    let rows: Vec<_> = specs
        .par_iter()
        .map(|spec| {
            let m = model(*spec);
            let chen = chen_lower(&m.measure, &m.weight, &m.candidate, &GridSpec::default()).expect("chen").value;
            (*spec, chen, gap(&m))
        })
        .collect();
    for (spec, chen, g) in rows {
        let d = spec.describe();
        match spec.family {
            Family::Cauchy { beta } if beta - f64::from(spec.n) / 2.0 <= 2.0 => {
                let kappa = beta - f64::from(spec.n) / 2.0;
                c.rel(false, format!("{d} chen lower vs (beta-n/2)^2"), chen, kappa * kappa, 1e-6);
            }
            _ => c.rel(false, format!("{d} chen lower vs solver"), chen, g, 1e-4),
        }
    }
    c
}

type Runner = fn() -> Criterion;

fn main() {
    let strict = std::env::args().any(|a| a == "--strict");
    let criteria: [(&str, Runner); 10] = [
        ("cauchy exact radial gaps", criterion_1),
        ("gaussian radial gap", criterion_2),
        ("main-theorem bracket containment", criterion_3),
        ("ball radial gap", criterion_4),
        ("exp-power asymptotics", criterion_5),
        ("lower-bound soundness sweep", criterion_6),
        ("weighted gaussian", criterion_7),
        ("gamma inequalities", criterion_8),
        ("monte carlo", criterion_9),
        ("chen equality", criterion_10),
    ];
    let mut fatal = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let c = run();
        let failed: Vec<&Check> = c.claims.iter().filter(|k| !k.ok).collect();
        let broken: Vec<&Check> = c.oracles.iter().filter(|k| !k.ok).collect();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {title}: {verdict} ({}/{} claims, {}/{} oracle checks, {:.1} s)",
            i + 1,
            c.claims.len() - failed.len(),
            c.claims.len(),
            c.oracles.len() - broken.len(),
            c.oracles.len(),
            start.elapsed().as_secs_f64()
        );
        for k in &failed {
            let tag = if k.deviation { "known deviation" } else { "claim" };
            println!("    {tag} failed: {}: {}", k.name, k.detail);
            if strict || !k.deviation {
                fatal += 1;
            }
        }
        for k in &broken {
            println!("    oracle failed: {}: {}", k.name, k.detail);
            fatal += 1;
        }
    }
    if fatal > 0 {
        eprintln!("{fatal} unexpected failures");
        std::process::exit(1);
    }
}
