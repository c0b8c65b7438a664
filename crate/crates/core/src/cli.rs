//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on numerical failure or a failed check, 2 on
//! invalid usage. Reports go to stdout as JSON (default) or CSV.

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{family_bounds, full_comparison, moments};
use crate::bracket::{BoundBracket, Provenance};
use crate::catalog::{make_family_with, reference_gap, Family, FamilySpec, ReferenceKind, Scope, WeightChoice};
use crate::eigen::{spectral_gap, GridSpec};
use crate::error::{Error, Result};
use crate::mc::{rayleigh_estimate, sample_mu};
use crate::radial::MeasureOptions;
use crate::report::{MonteCarloSummary, NamedBracket, NamedValue, ReportInputs, RunReport, Status};
use crate::verify::{self, check_ge, check_le, check_rel, Settings};
use crate::tables;

#[derive(Debug, Parser)]
#[command(name = "specgap", version, about = "Spectral-gap bounds for spherically symmetric measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cells of the coarse solver mesh (64·2^k).
    #[arg(long, global = true, default_value_t = 4096)]
    pub cells: usize,
    /// Tail mass allowed beyond the truncation radius of the measure.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tail_tol: f64,
    /// Seed of the Monte Carlo sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    ExpPower,
    Ball,
    Cauchy,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Unit,
    OnePlusR2,
    InvOnePlusR2,
}

impl From<WeightArg> for WeightChoice {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Unit => WeightChoice::Unit,
            WeightArg::OnePlusR2 => WeightChoice::OnePlusR2,
            WeightArg::InvOnePlusR2 => WeightChoice::InvOnePlusR2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Exponent of exp-power (V = r^α/α).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exponent of cauchy ((1 + r²)^-β).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Dimension n >= 2.
    #[arg(long)]
    pub dim: u32,
    /// Weight σ²; defaults to one-plus-r2 for cauchy and unit otherwise.
    #[arg(long, value_enum)]
    pub weight: Option<WeightArg>,
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let family = match self.family {
            FamilyArg::ExpPower => Family::ExpPower {
                alpha: self.alpha.ok_or_else(|| Error::InvalidInput("exp-power needs --alpha".into()))?,
            },
            FamilyArg::Cauchy => Family::Cauchy {
                beta: self.beta.ok_or_else(|| Error::InvalidInput("cauchy needs --beta".into()))?,
            },
            FamilyArg::Ball => Family::Ball,
            FamilyArg::Gaussian => Family::Gaussian,
        };
        let default = if self.family == FamilyArg::Cauchy { WeightChoice::OnePlusR2 } else { WeightChoice::Unit };
        let spec = FamilySpec::new(family, self.dim, self.weight.map_or(default, Into::into));
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    CauchyExact,
    GaussianRadial,
    GammaInequalities,
    Bracketing,
    ChenEquality,
    ExpPower,
    WeightedGaussian,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableId {
    ExpPowerAsymptotics,
    Ball,
    CauchyN2,
    CauchyN3,
    GaussianWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFunction {
    /// f(x) = x₁ + … + xₙ.
    Linear,
    /// f(x) = ‖x‖².
    RadialQuadratic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds with their provenance.
    Bounds(FamilyArgs),
    /// Radial spectral gap from the Sturm-Liouville solver.
    Eigen(FamilyArgs),
    /// Regression and bracketing suites over the catalog.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyScope::All)]
        scope: VerifyScope,
    },
    /// Reproduce a table of bounds, solver values and closed forms.
    Table {
        #[arg(long, value_enum)]
        id: TableId,
        /// Comma-separated α values (exp-power-asymptotics).
        #[arg(long, default_value = "1,2,4")]
        alphas: String,
        /// Dimensions as a list `4,8,16` or an inclusive range `2..32`.
        #[arg(long, default_value = "4,8,16,32")]
        dims: String,
    },
    /// Monte Carlo Rayleigh quotient of a test function on ℝⁿ.
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, value_enum, default_value_t = TestFunction::Linear)]
        function: TestFunction,
    },
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

/// Parse `4,8,16` or `2..32`.
pub fn parse_dims(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidInput(format!("cannot parse dimensions {s:?}"));
    let dims: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if dims.is_empty() || dims.iter().any(|&n| n < 2) {
        return Err(Error::InvalidInput(format!("dimensions must be >= 2, got {s:?}")));
    }
    Ok(dims)
}

pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("cannot parse number {t:?}"))))
        .collect()
}

fn settings(common: &Common) -> Result<Settings> {
    let grid = GridSpec::with_cells(common.cells);
    grid.validate()?;
    if !(common.tail_tol > 0.0 && common.tail_tol < 1e-3) {
        return Err(Error::InvalidInput(format!("tail tolerance must lie in (0, 1e-3), got {}", common.tail_tol)));
    }
    Ok(Settings { grid, options: MeasureOptions { tail_tol: common.tail_tol, ..MeasureOptions::default() } })
}

fn inputs(cli: &Cli) -> ReportInputs {
    let c = &cli.common;
    let mut inp = ReportInputs { n_cells: c.cells, tail_tol: c.tail_tol, seed: c.seed, ..ReportInputs::default() };
    let fam = |inp: &mut ReportInputs, f: &FamilyArgs| {
        inp.family = Some(value_name(&f.family));
        inp.n = Some(f.dim);
        inp.alpha = f.alpha;
        inp.beta = f.beta;
        let default = if f.family == FamilyArg::Cauchy { WeightArg::OnePlusR2 } else { WeightArg::Unit };
        inp.weight = Some(value_name(&f.weight.unwrap_or(default)));
    };
    match &cli.command {
        Command::Bounds(f) | Command::Eigen(f) => fam(&mut inp, f),
        Command::Verify { scope } => inp.scope = Some(value_name(scope)),
        Command::Table { id, .. } => inp.id = Some(value_name(id)),
        Command::Sample { family, count, function } => {
            fam(&mut inp, family);
            inp.count = Some(*count);
            inp.function = Some(value_name(function));
        }
    }
    inp
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Bounds(_) => "bounds",
        Command::Eigen(_) => "eigen",
        Command::Verify { .. } => "verify",
        Command::Table { .. } => "table",
        Command::Sample { .. } => "sample",
    }
}

fn cmd_bounds(args: &FamilyArgs, s: &Settings, report: &mut RunReport) -> Result<()> {
    let model = make_family_with(&args.spec()?, s.options)?;
    let fb = family_bounds(&model, &s.grid)?;
    report.values = fb.values;
    report.brackets = fb.brackets;
    Ok(())
}

fn cmd_eigen(args: &FamilyArgs, s: &Settings, report: &mut RunReport) -> Result<()> {
    let spec = args.spec()?;
    let model = make_family_with(&spec, s.options)?;
    let gap = spectral_gap(&model.measure, &model.weight, &s.grid)?;
    let radial = BoundBracket::new(gap.value, gap.value, Provenance::Eigensolver, Provenance::Eigensolver)?;
    if let Some(b) = full_comparison(&model, &radial, &moments(&model)?)? {
        let name = if spec.weight == WeightChoice::Unit { "spectral-comparison" } else { "weighted-comparison" };
        report.brackets.push(NamedBracket { name: name.into(), bracket: b });
    }
    let reference = reference_gap(&spec, Scope::Radial)?;
    let tol = 1e-6 * (1.0 + gap.value);
    match reference.kind {
        ReferenceKind::Exact => {
            report.values.push(NamedValue::new("reference-radial", reference.lower, Provenance::ClosedForm));
            report.checks.push(check_rel("solver matches closed form".into(), gap.value, reference.lower, 1e-3));
        }
        ReferenceKind::Bracket | ReferenceKind::OrderOnly => {
            if reference.lower > 0.0 {
                report.values.push(NamedValue::new("reference-radial-lower", reference.lower, Provenance::Reference));
                report.checks.push(check_ge("solver above reference lower bound".into(), gap.value, reference.lower, tol));
            }
            if reference.upper.is_finite() {
                report.values.push(NamedValue::new("reference-radial-upper", reference.upper, Provenance::Reference));
                report.checks.push(check_le("solver below reference upper bound".into(), gap.value, reference.upper, tol));
            }
        }
    }
    for w in &gap.warnings {
        report.warn(w.clone());
    }
    report.solver = Some(gap);
    Ok(())
}

fn cmd_verify(scope: VerifyScope, s: &Settings, report: &mut RunReport) -> Result<()> {
    let all = scope == VerifyScope::All;
    let mut checks = Vec::new();
    if all || scope == VerifyScope::GammaInequalities {
        checks.extend(verify::gamma_inequalities()?);
    }
    if all || scope == VerifyScope::GaussianRadial {
        checks.extend(verify::gaussian_radial(s)?);
    }
    if all || scope == VerifyScope::CauchyExact {
        checks.extend(verify::cauchy_exact(s)?);
    }
    if all || scope == VerifyScope::ChenEquality {
        checks.extend(verify::chen_equality(s)?);
    }
    if all || scope == VerifyScope::ExpPower {
        checks.extend(verify::exp_power(s)?);
    }
    if all || scope == VerifyScope::WeightedGaussian {
        checks.extend(verify::weighted_gaussian(s)?);
    }
    if all || scope == VerifyScope::Bracketing {
        checks.extend(verify::bracketing(s)?);
    }
    report.checks = checks;
    Ok(())
}

fn cmd_table(id: TableId, alphas: &str, dims: &str, s: &Settings, report: &mut RunReport) -> Result<()> {
    let table = match id {
        TableId::ExpPowerAsymptotics => tables::exp_power_asymptotics(&parse_list(alphas)?, &parse_dims(dims)?, s)?,
        TableId::Ball => tables::ball(&parse_dims(dims)?, s)?,
        TableId::CauchyN2 => tables::cauchy(2, s)?,
        TableId::CauchyN3 => tables::cauchy(3, s)?,
        TableId::GaussianWeighted => tables::gaussian_weighted(s)?,
    };
    report.table = Some(table);
    Ok(())
}

fn cmd_sample(
    args: &FamilyArgs,
    count: usize,
    function: TestFunction,
    seed: u64,
    s: &Settings,
    report: &mut RunReport,
) -> Result<()> {
    let model = make_family_with(&args.spec()?, s.options)?;
    let batch = sample_mu(&model.measure, count, seed);
    let res = match function {
        TestFunction::Linear => rayleigh_estimate(&batch, |x| x.iter().sum(), |_, g| g.fill(1.0), &model.weight)?,
        TestFunction::RadialQuadratic => rayleigh_estimate(
            &batch,
            |x| x.iter().map(|v| v * v).sum(),
            |x, g| g.iter_mut().zip(x).for_each(|(g, v)| *g = 2.0 * v),
            &model.weight,
        )?,
    };
    report.monte_carlo = Some(MonteCarloSummary {
        function: value_name(&function),
        count,
        seed,
        ratio: res.ratio,
        ci_half_width: res.ci_half_width,
        batches: res.batches,
    });
    Ok(())
}

/// Run a parsed command. Errors are recorded in the report status.
pub fn execute(cli: &Cli) -> (RunReport, Option<Error>) {
    let mut report = RunReport::new(command_name(&cli.command), inputs(cli));
    let result = settings(&cli.common).and_then(|s| match &cli.command {
        Command::Bounds(f) => cmd_bounds(f, &s, &mut report),
        Command::Eigen(f) => cmd_eigen(f, &s, &mut report),
        Command::Verify { scope } => cmd_verify(*scope, &s, &mut report),
        Command::Table { id, alphas, dims } => cmd_table(*id, alphas, dims, &s, &mut report),
        Command::Sample { family, count, function } => {
            cmd_sample(family, *count, *function, cli.common.seed, &s, &mut report)
        }
    });
    match result {
        Ok(()) => (report, None),
        Err(e) => {
            report.status = Status::Error { message: e.to_string() };
            (report, Some(e))
        }
    }
}

/// Exit code for a finished run.
pub fn exit_code(report: &RunReport, error: Option<&Error>) -> i32 {
    match error {
        Some(e) if e.is_usage() => 2,
        Some(_) => 1,
        None if report.failed_checks() > 0 => 1,
        None => 0,
    }
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}
