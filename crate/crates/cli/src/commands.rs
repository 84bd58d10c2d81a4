use std::f64::consts::PI;
use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pmlab_core::bounds::{
    alpha_exponent, holder_beta, one_norm_constant, optimize_b, prop2_rhs, theorem1_envelope,
    verify_suite, y_range_check, BoundParams, Suite, SuiteGrid,
};
use pmlab_core::meanvalues::{i2_numeric, i_exact, j_exact, pseudomoment_2k_exact, QuadratureSpec};
use pmlab_core::montecarlo::estimate_norm_q;
use pmlab_core::products::{a_beta, DEFAULT_SERIES_CUTOFF};
use pmlab_core::{divisor_coefficient, DivisorOrder, Error, PrimeTable};

use crate::record::{RecordError, RunRecord, Value};

/// Largest `n` accepted by `dcoef`; the sieve holds 4 bytes per integer.
pub const DCOEF_MAX_N: u64 = 100_000_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Record(#[from] RecordError),
    #[error("{0}")]
    Usage(String),
}

/// Process exit status for a failed command.
pub fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Usage(_) | CliError::Core(Error::InvalidArgument(_)) => 2,
        CliError::Core(Error::BudgetExceeded { .. }) => 4,
        CliError::Core(_) => 3,
        CliError::Record(_) => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "pmlab", version, about = "Mean values of Dirichlet polynomials and their mollified relatives")]
pub struct Cli {
    /// Output format; defaults to json for `--out *.json`, csv otherwise.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write the record here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "PMLAB_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn format(&self) -> Format {
        self.format.unwrap_or_else(|| match &self.out {
            Some(p) if p.extension().is_some_and(|e| e == "json") => Format::Json,
            _ => Format::Csv,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized divisor coefficients d_α(n).
    Dcoef(DcoefArgs),
    /// Exact mean values.
    Exact(ExactArgs),
    /// Monte Carlo L^q norms of the partial sum.
    Norm(NormArgs),
    /// The Euler product constant a_β.
    Const(ConstArgs),
    /// Exponents, envelopes and the optimal B.
    Bound(BoundArgs),
    /// Measured-versus-formula report for one suite.
    Verify(VerifyArgs),
}

/// Comma-separated list; the empty string is the empty list.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(List(Vec::new()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<T>().map_err(|e| format!("{x:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(List)
    }
}

impl<T: Display> Display for List<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Args)]
pub struct DcoefArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Comma-separated n values.
    #[arg(long)]
    pub n: List<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactKind {
    /// ‖f‖_{2k}^{2k}, k = 1 or 2.
    L2k,
    /// J(Y, β).
    #[value(name = "J", alias = "j")]
    J,
    /// I(N, Y).
    #[value(name = "I", alias = "i")]
    I,
    /// I₂(Y) by quadrature.
    I2,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long, value_enum)]
    pub kind: ExactKind,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long = "Y")]
    pub y: Option<u64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SERIES_CUTOFF)]
    pub cutoff: u32,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    /// Integrand evaluations allowed in one pass.
    #[arg(long, default_value_t = 1 << 15)]
    pub node_budget: usize,
    #[arg(long, default_value_t = 2)]
    pub refinement: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

impl QuadratureArgs {
    fn spec(&self) -> Result<QuadratureSpec, Error> {
        QuadratureSpec::new(self.node_budget, self.refinement, self.tol)
    }
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long = "N")]
    pub n: u64,
    /// Comma-separated exponents, evaluated on the same samples.
    #[arg(long, default_value = "2")]
    pub q: List<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ConstArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, default_value_t = 100_000)]
    pub prime_limit: u64,
    #[arg(long, default_value_t = DEFAULT_SERIES_CUTOFF)]
    pub cutoff: u32,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long = "Y")]
    pub y: Option<u64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    /// Report the minimizing B and the resulting constant.
    #[arg(long = "optimize-B")]
    pub optimize_b: bool,
    /// Prime limit for a_1.
    #[arg(long, default_value_t = 100_000)]
    pub a1_limit: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// theorem1, prop1, prop2, holder or i2.
    #[arg(long)]
    pub suite: String,
    #[arg(long)]
    pub q: Option<List<f64>>,
    #[arg(long = "N")]
    pub n: Option<List<u64>>,
    #[arg(long = "Y")]
    pub y: Option<List<u64>>,
    #[arg(long)]
    pub beta: Option<List<f64>>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub prime_limit: u64,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

/// Runs one command. The boolean is false when a verification row failed.
pub fn run(command: &Command) -> Result<(RunRecord, bool), CliError> {
    let rec = match command {
        Command::Dcoef(a) => dcoef(a)?,
        Command::Exact(a) => exact(a)?,
        Command::Norm(a) => norm(a)?,
        Command::Const(a) => constant(a)?,
        Command::Bound(a) => bound(a)?,
        Command::Verify(a) => return verify(a),
    };
    Ok((rec, true))
}

fn dcoef(a: &DcoefArgs) -> Result<RunRecord, CliError> {
    let alpha = DivisorOrder::new(a.alpha)?;
    let top = a.n.0.iter().copied().max().unwrap_or(2).max(2);
    if top > DCOEF_MAX_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: top,
            limit: DCOEF_MAX_N,
        }
        .into());
    }
    let table = PrimeTable::new(top)?;
    let mut rec = RunRecord::new("dcoef", &["n", "alpha", "d"]);
    rec.param("alpha", a.alpha).param("n", a.n.to_string());
    for &n in &a.n.0 {
        let f = table.factorize(n)?;
        rec.push_row(vec![n.into(), a.alpha.into(), divisor_coefficient(alpha, &f).into()]);
    }
    Ok(rec)
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --kind {kind}")))
}

const EXACT_COLUMNS: [&str; 12] = [
    "kind",
    "N",
    "Y",
    "k",
    "beta",
    "value",
    "terms_used",
    "truncation_error",
    "certified",
    "previous",
    "nodes",
    "min_integrand",
];

fn exact(a: &ExactArgs) -> Result<RunRecord, CliError> {
    let mut rec = RunRecord::new("exact", &EXACT_COLUMNS);
    let table_for = |top: u64| PrimeTable::new(top.max(2));
    let row = match a.kind {
        ExactKind::L2k => {
            let n = need(a.n, "N", "l2k")?;
            let k = need(a.k, "k", "l2k")?;
            rec.param("kind", "l2k").param("N", n).param("k", k);
            let r = pseudomoment_2k_exact(n, k)?;
            diagonal_row("l2k", &r)
        }
        ExactKind::J => {
            let y = need(a.y, "Y", "J")?;
            let beta = need(a.beta, "beta", "J")?;
            rec.param("kind", "J").param("Y", y).param("beta", beta).param("cutoff", a.cutoff);
            let r = j_exact(y, beta, a.cutoff, &table_for(y)?)?;
            diagonal_row("J", &r)
        }
        ExactKind::I => {
            let n = need(a.n, "N", "I")?;
            let y = need(a.y, "Y", "I")?;
            rec.param("kind", "I").param("N", n).param("Y", y).param("cutoff", a.cutoff);
            let r = i_exact(n, y, &table_for(n.max(y))?, a.cutoff)?;
            diagonal_row("I", &r)
        }
        ExactKind::I2 => {
            let y = need(a.y, "Y", "i2")?;
            let spec = a.quadrature.spec()?;
            rec.param("kind", "i2")
                .param("Y", y)
                .param("node_budget", spec.node_budget)
                .param("refinement", spec.refinement_factor)
                .param("tol", spec.tolerance);
            let r = i2_numeric(y, &spec, &table_for(y)?)?;
            rec.note("error", "truncation_error is the change between the last two passes");
            vec![
                "i2".into(),
                Value::Null,
                y.into(),
                Value::Null,
                Value::Null,
                r.value.into(),
                r.nodes.into(),
                (r.value - r.previous).abs().into(),
                false.into(),
                r.previous.into(),
                r.nodes.into(),
                r.min_integrand.into(),
            ]
        }
    };
    rec.push_row(row);
    Ok(rec)
}

fn diagonal_row(kind: &str, r: &pmlab_core::DiagonalSumResult) -> Vec<Value> {
    vec![
        kind.into(),
        r.params.n.into(),
        r.params.y.into(),
        r.params.k.into(),
        r.params.beta.into(),
        r.value.into(),
        r.terms_used.into(),
        r.truncation_error.into(),
        r.certified.into(),
        Value::Null,
        Value::Null,
        Value::Null,
    ]
}

fn norm(a: &NormArgs) -> Result<RunRecord, CliError> {
    let table = PrimeTable::new(a.n.max(2))?;
    let est = estimate_norm_q(a.n, &a.q.0, a.samples, a.seed, &table)?;
    let mut rec = RunRecord::new(
        "norm",
        &["N", "q", "mean", "stderr", "norm", "samples", "seed", "max_ratio"],
    );
    rec.seed = Some(a.seed);
    rec.param("N", a.n)
        .param("q", a.q.to_string())
        .param("samples", a.samples);
    rec.note("mean", "sample mean of |sum_{n<=N} X(n) n^{-1/2}|^q");
    for e in est {
        rec.push_row(vec![
            e.n.into(),
            e.q.into(),
            e.mean.into(),
            e.stderr.into(),
            e.mean.powf(1.0 / e.q).into(),
            e.samples.into(),
            e.seed.into(),
            e.max_ratio.into(),
        ]);
    }
    Ok(rec)
}

fn constant(a: &ConstArgs) -> Result<RunRecord, CliError> {
    let v = a_beta(a.beta, a.prime_limit, a.cutoff)?;
    let mut rec = RunRecord::new(
        "const",
        &[
            "beta",
            "prime_limit",
            "series_cutoff",
            "value",
            "tail_bound",
            "lower",
            "upper",
            "k_constant",
        ],
    );
    rec.param("beta", a.beta)
        .param("prime_limit", a.prime_limit)
        .param("cutoff", a.cutoff);
    rec.note("tail_bound", "certified bound on |log(true/computed)|");
    let (lo, hi) = v.bounds();
    rec.push_row(vec![
        a.beta.into(),
        v.prime_limit.into(),
        v.series_cutoff.into(),
        v.value.into(),
        v.tail_bound.into(),
        lo.into(),
        hi.into(),
        v.k_constant.into(),
    ]);
    Ok(rec)
}

fn bound(a: &BoundArgs) -> Result<RunRecord, CliError> {
    let a1 = a_beta(1.0, a.a1_limit, DEFAULT_SERIES_CUTOFF)?;
    if a.optimize_b {
        let opt = optimize_b();
        let mut rec = RunRecord::new(
            "bound",
            &["q", "B_star", "constant_factor", "a1", "constant", "below_B_floor"],
        );
        rec.param("q", a.q).param("optimize_B", true).param("a1_limit", a.a1_limit);
        rec.note("B_floor", "the one-norm argument assumes B >= 5");
        rec.push_row(vec![
            a.q.into(),
            opt.b_star.into(),
            opt.constant_factor.into(),
            a1.value.into(),
            one_norm_constant(opt.b_star, a1.value)?.into(),
            opt.below_floor.into(),
        ]);
        return Ok(rec);
    }
    let n = a.n.ok_or_else(|| CliError::Usage("--N is required unless --optimize-B".into()))?;
    let p = BoundParams::new(a.q, n, a.y, a.b)?;
    let (alpha, companion) = alpha_exponent(p.q)?;
    let range = y_range_check(p.n)?;
    let envelope = match p.b {
        Some(b) if p.q == 1.0 => Some(theorem1_envelope(p.q, p.n, one_norm_constant(b, a1.value)?)?),
        _ => None,
    };
    let rhs = match p.y {
        Some(y) => Some(prop2_rhs(p.n, y, a1.value)?),
        None => None,
    };
    let mut rec = RunRecord::new(
        "bound",
        &[
            "q",
            "N",
            "Y",
            "B",
            "alpha",
            "companion",
            "beta",
            "envelope_C1",
            "envelope",
            "log_Y_lower",
            "log_Y_upper",
            "Y_range_nonempty",
            "prop2_rhs",
        ],
    );
    rec.param("q", p.q)
        .param("N", p.n)
        .param("Y", p.y)
        .param("B", p.b)
        .param("a1_limit", a.a1_limit);
    if rhs.is_some() {
        rec.note("prop2_rhs", "principal terms only");
    }
    rec.push_row(vec![
        p.q.into(),
        p.n.into(),
        p.y.into(),
        p.b.into(),
        alpha.into(),
        companion.into(),
        holder_beta(p.q)?.into(),
        theorem1_envelope(p.q, p.n, 1.0)?.into(),
        envelope.into(),
        range.log_lower.into(),
        range.log_upper.into(),
        range.nonempty.into(),
        rhs.into(),
    ]);
    Ok(rec)
}

fn default_grid(suite: Suite) -> SuiteGrid {
    let base = SuiteGrid::default();
    match suite {
        Suite::Theorem1 => SuiteGrid {
            qs: vec![0.5, 1.0],
            ns: vec![100, 1000, 10_000],
            ..base
        },
        Suite::Prop1 => SuiteGrid {
            ys: vec![100, 1000, 10_000, 100_000],
            betas: vec![2.0],
            ..base
        },
        Suite::Prop2 => SuiteGrid {
            ns: vec![100, 1000],
            ys: vec![7, 50],
            ..base
        },
        Suite::Holder => base,
        Suite::I2 => SuiteGrid {
            ys: vec![100, 1000, 10_000],
            ..base
        },
    }
}

fn verify(a: &VerifyArgs) -> Result<(RunRecord, bool), CliError> {
    let suite: Suite = a.suite.parse()?;
    let mut grid = default_grid(suite);
    if let Some(q) = &a.q {
        grid.qs = q.0.clone();
    }
    if let Some(n) = &a.n {
        grid.ns = n.0.clone();
    }
    if let Some(y) = &a.y {
        grid.ys = y.0.clone();
    }
    if let Some(b) = &a.beta {
        grid.betas = b.0.clone();
    }
    grid.samples = a.samples;
    grid.seed = a.seed;
    grid.prime_limit = a.prime_limit;
    grid.quadrature = a.quadrature.spec()?;

    let report = verify_suite(suite, &grid)?;
    let mut rec = RunRecord::new(
        "verify",
        &[
            "suite",
            "q",
            "N",
            "Y",
            "beta",
            "measured",
            "stderr",
            "envelope",
            "bound",
            "I",
            "J",
            "ratio",
            "certificate",
            "seed",
            "pass",
        ],
    );
    rec.seed = Some(a.seed);
    rec.param("suite", suite.name())
        .param("q", List(grid.qs.clone()).to_string())
        .param("N", List(grid.ns.clone()).to_string())
        .param("Y", List(grid.ys.clone()).to_string())
        .param("beta", List(grid.betas.clone()).to_string())
        .param("samples", grid.samples)
        .param("prime_limit", grid.prime_limit);
    for (k, v) in &report.metadata {
        if !matches!(k.as_str(), "suite" | "samples" | "seed") {
            rec.note(k, v.clone());
        }
    }
    if suite == Suite::I2 {
        rec.note("envelope", format!("(a1/{PI:.6}) log log Y"));
    }
    for r in &report.rows {
        rec.push_row(vec![
            suite.name().into(),
            r.q.into(),
            r.n.into(),
            r.y.into(),
            r.beta.into(),
            r.measured.into(),
            r.stderr.into(),
            r.envelope.into(),
            r.bound.into(),
            r.i_value.into(),
            r.j_value.into(),
            r.ratio.into(),
            r.certificate.into(),
            a.seed.into(),
            r.pass.into(),
        ]);
    }
    Ok((rec, report.all_pass()))
}
