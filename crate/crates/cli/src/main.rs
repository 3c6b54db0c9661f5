//! Command-line front end for the mixing-rate toolkit: spectral bounds on
//! walk distance to uniformity, walk simulation, Hoeffding-planned
//! estimation of uniform averages, joint-spectral-radius estimates with
//! independently verifiable certificates, and raw Fourier/character dumps.
//!
//! Every subcommand is deterministic given its full configuration
//! including the seed; machine-readable output (JSON or CSV) goes to
//! `--out` or stdout, human-readable summaries go to stderr. A JSON config
//! file passed via `--config` overrides the corresponding flags; unknown
//! keys are rejected. Thread count is controlled by the RAYON_NUM_THREADS
//! environment variable only.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use mixwalk::fourier::{class_scalar, fourier_transform, GroupDistribution};
use mixwalk::jsr::{
    certify_upper_bound_with, jsr_estimate_with, verify_certificate, JsrBudgets, JsrEstimate,
    MatrixSet, MixVerdict, NormCertificate,
};
use mixwalk::montecarlo::{
    annealing_length_estimate, annealing_plan, EstimationPlan, TourInstance,
};
use mixwalk::perm::{CycleType, Permutation};
use mixwalk::space::{EnumeratedSpace, SpaceKind, DEFAULT_SPACE_CAP};
use mixwalk::symrep::character::character_value;
use mixwalk::symrep::partition::{partitions_of, Partition};
use mixwalk::symrep::yor::{OrthogonalRepresentation, DEFAULT_IRREP_DIM_CAP};
use mixwalk::walks::{
    average_tv_sandwich, curve_csv, empirical_state_distribution, exact_walk_distribution,
    l2_homogeneity_check, per_state_tv, simulate_walk, tabloid_cycle_bound, tv_distance,
    BoundReport, StateDistribution,
};

/// Support-size ceiling when a conjugacy class is enumerated explicitly.
const DEFAULT_SUPPORT_CAP: usize = 100_000;

/// Step ceiling for automatic walk-length planning.
const DEFAULT_PLAN_MAX_STEPS: usize = 1 << 20;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "mixwalk",
    version,
    about = "Mixing-rate bounds, walk simulation, and joint-spectral-radius certificates \
             for random walks on symmetric-group homogeneous spaces",
    after_help = "Thread count: set RAYON_NUM_THREADS (defaults to all cores)."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectral sandwich bounds on walk distance to uniformity (JSON), or a
    /// "N,bound" CSV sweep for cycle-class walks on two-row tabloids.
    Bounds(BoundsArgs),
    /// Joint-spectral-radius estimate for a matrix set or for the Fourier
    /// transforms of step distributions relative to a space.
    Jsr(JsrArgs),
    /// Independently re-verify a norm certificate against its matrix set.
    VerifyCert(VerifyCertArgs),
    /// Simulate walk replicas and compare the empirical law against the
    /// exact distribution.
    Simulate(SimulateArgs),
    /// Estimate the Gibbs-average tour length by walk sampling, with an
    /// explicit accuracy radius and confidence.
    Estimate(EstimateArgs),
    /// Dump the Fourier transforms of a distribution at every irreducible.
    Fourier(FourierArgs),
    /// Dump the character table as CSV.
    Chars(CharsArgs),
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Space selection: a full spec ("tabloids:2+1", "tours:5", "group:3"), a
/// bare kind combined with --n, or one of the shorthands.
#[derive(Args, Clone, Default)]
struct SpaceArgs {
    /// Space spec "group:N", "tabloids:ROWS", "tours:N" (or a bare kind
    /// name, taking the size from --n)
    #[arg(long)]
    space: Option<String>,
    /// Shorthand for --space tabloids:ROWS, e.g. --tabloids 26+26
    #[arg(long, value_name = "ROWS")]
    tabloids: Option<String>,
    /// Shorthand for --space tours:N
    #[arg(long, value_name = "N")]
    tours: Option<usize>,
    /// Group degree for a bare --space group / --space tours
    #[arg(long)]
    n: Option<usize>,
}

impl SpaceArgs {
    fn resolve(&self) -> Result<SpaceKind> {
        if let Some(rows) = &self.tabloids {
            return Ok(format!("tabloids:{rows}").parse::<SpaceKind>()?);
        }
        if let Some(n) = self.tours {
            return Ok(SpaceKind::Tours(n));
        }
        let spec = self
            .space
            .as_deref()
            .context("no space given: use --space, --tabloids, or --tours")?;
        if spec.contains(':') {
            return Ok(spec.parse::<SpaceKind>()?);
        }
        let n = self
            .n
            .with_context(|| format!("bare --space {spec} needs --n"))?;
        match spec {
            "group" => Ok(format!("group:{n}").parse::<SpaceKind>()?),
            "tours" => Ok(SpaceKind::Tours(n)),
            "tabloids" => bail!("--space tabloids needs row sizes; use --tabloids ROWS"),
            other => bail!("unknown space kind {other:?}"),
        }
    }

    /// Overlay config-file values (file wins where present).
    fn overlaid(
        &self,
        space: Option<String>,
        tabloids: Option<String>,
        tours: Option<usize>,
        n: Option<usize>,
    ) -> SpaceArgs {
        SpaceArgs {
            space: space.or_else(|| self.space.clone()),
            tabloids: tabloids.or_else(|| self.tabloids.clone()),
            tours: tours.or(self.tours),
            n: n.or(self.n),
        }
    }
}

/// Builds a step distribution from a spec string:
///   uniform              uniform on all of S_n
///   lazy                 1/2 identity + 1/2 uniform transposition
///   class:K[,K2,...]     uniform on the class with those cycle lengths
///   delta:I0,I1,...      point mass at the permutation with those images
///   file:PATH            JSON {"n": .., "support": [{"perm": [..], "p": ..}]}
fn resolve_dist(spec: &str, n: usize, support_cap: usize) -> Result<GroupDistribution> {
    if spec == "uniform" {
        return Ok(GroupDistribution::uniform(n)?);
    }
    if spec == "lazy" {
        return Ok(GroupDistribution::lazy_transposition(n)?);
    }
    if let Some(arg) = spec.strip_prefix("class:") {
        let lengths = arg
            .split(',')
            .map(|s| s.trim().parse::<usize>().context("bad cycle length"))
            .collect::<Result<Vec<usize>>>()?;
        let t = CycleType::from_cycle_lengths(n, &lengths)?;
        return Ok(GroupDistribution::uniform_class(&t, support_cap)?);
    }
    if let Some(arg) = spec.strip_prefix("delta:") {
        let images = arg
            .split(',')
            .map(|s| s.trim().parse::<usize>().context("bad image"))
            .collect::<Result<Vec<usize>>>()?;
        return Ok(GroupDistribution::delta(Permutation::from_images(&images)?));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let q = GroupDistribution::from_json(&text)?;
        if q.degree() != n {
            bail!("distribution degree {} does not match space degree {n}", q.degree());
        }
        return Ok(q);
    }
    bail!("unknown distribution spec {spec:?} (uniform | lazy | class:K | delta:.. | file:PATH)")
}

fn load_config<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("config {}", p.display()))
        }
        None => Ok(T::default()),
    }
}

/// Machine-readable output goes to --out when given, else stdout.
fn write_output(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn verdict_str(v: &MixVerdict) -> &'static str {
    match v {
        MixVerdict::Mixes => "mixes",
        MixVerdict::DoesNotMix => "does not mix",
        MixVerdict::Undetermined => "undetermined",
    }
}

fn mat_rows(m: &mixwalk::linalg::Mat) -> Vec<Vec<[f64; 2]>> {
    m.data()
        .chunks(m.cols())
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Step distribution spec (see `resolve_dist`)
    #[arg(long)]
    dist: Option<String>,
    /// Uniform walk on the class of a single K-cycle (rest fixed); on
    /// two-row tabloid spaces this enables the exact closed-form route
    #[arg(long, value_name = "K")]
    class_cycle: Option<usize>,
    /// Walk length for a single bound report
    #[arg(long = "N")]
    steps: Option<usize>,
    /// Emit a "N,bound" CSV over an inclusive walk-length range LO:HI
    #[arg(long = "sweep-N", value_name = "LO:HI")]
    sweep_n: Option<String>,
    /// Also enumerate the space, compute the exact average squared TV, and
    /// record whether it falls inside the reported bounds (adds fields,
    /// never alters the bounds)
    #[arg(long)]
    exhaustive_check: bool,
    /// Ceiling on enumerated class sizes
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Ceiling on enumerated space sizes for --exhaustive-check
    #[arg(long, default_value_t = DEFAULT_SPACE_CAP)]
    space_cap: usize,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BoundsConfig {
    space: Option<String>,
    tabloids: Option<String>,
    tours: Option<usize>,
    n: Option<usize>,
    dist: Option<String>,
    class_cycle: Option<usize>,
    #[serde(rename = "N")]
    steps: Option<usize>,
    sweep_n: Option<String>,
    exhaustive_check: Option<bool>,
    support_cap: Option<usize>,
    space_cap: Option<usize>,
    out: Option<PathBuf>,
}

/// Bound report plus optional verification fields. The flattened base
/// report is bit-identical with and without --exhaustive-check.
#[derive(Serialize)]
struct BoundsOutput {
    #[serde(flatten)]
    report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exhaustive_avg_tv_sq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exhaustive_within_bounds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l2_homogeneous: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_state_tv_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_state_tv_max: Option<f64>,
}

fn parse_sweep(spec: &str) -> Result<(usize, usize)> {
    let (lo, hi) = spec
        .split_once(':')
        .with_context(|| format!("sweep range {spec:?} is not LO:HI"))?;
    let lo: usize = lo.parse().context("bad sweep start")?;
    let hi: usize = hi.parse().context("bad sweep end")?;
    if lo == 0 || hi < lo {
        bail!("sweep range must satisfy 1 <= LO <= HI");
    }
    Ok((lo, hi))
}

/// Two-row tabloid shape (a, b) with a >= b >= 1, if the space is one.
fn two_row(kind: &SpaceKind) -> Option<(usize, usize)> {
    match kind {
        SpaceKind::Tabloids(mu) if mu.rows() == 2 => Some((mu.part(0), mu.part(1))),
        _ => None,
    }
}

fn cmd_bounds(args: BoundsArgs) -> Result<i32> {
    let cfg: BoundsConfig = load_config(&args.config)?;
    let space = args
        .space
        .overlaid(cfg.space, cfg.tabloids, cfg.tours, cfg.n);
    let kind = space.resolve()?;
    let n = kind.degree();
    let dist_spec = cfg.dist.or(args.dist);
    let class_cycle = cfg.class_cycle.or(args.class_cycle);
    let steps = cfg.steps.or(args.steps);
    let sweep = cfg.sweep_n.or(args.sweep_n);
    let exhaustive = cfg.exhaustive_check.unwrap_or(args.exhaustive_check);
    let support_cap = cfg.support_cap.unwrap_or(args.support_cap);
    let space_cap = cfg.space_cap.unwrap_or(args.space_cap);
    let out = cfg.out.or(args.out);

    if dist_spec.is_some() && class_cycle.is_some() {
        bail!("--dist and --class-cycle are mutually exclusive");
    }

    if let Some(range) = sweep {
        let (lo, hi) = parse_sweep(&range)?;
        let points = match (class_cycle, two_row(&kind)) {
            (Some(k), Some((a, b))) => {
                // Closed form: exact two-row characters, no class
                // enumeration, viable at deck sizes like 52.
                let mut pts = Vec::with_capacity(hi - lo + 1);
                for s in lo..=hi {
                    pts.push((s, tabloid_cycle_bound(n, a, b, k, s)?.to_f64()));
                }
                pts
            }
            _ => {
                let spec = dist_spec
                    .clone()
                    .or_else(|| class_cycle.map(|k| format!("class:{k}")))
                    .context("sweep needs --class-cycle or --dist")?;
                let q = resolve_dist(&spec, n, support_cap)?;
                let mut pts = Vec::with_capacity(hi - lo + 1);
                for s in lo..=hi {
                    pts.push((s, average_tv_sandwich(&q, &kind, s)?.upper_avg));
                }
                pts
            }
        };
        write_output(&out, &curve_csv(&points))?;
        eprintln!("swept N = {lo}..{hi} on {kind}");
        return Ok(0);
    }

    let steps = steps.context("single report needs --N (or --sweep-N for a curve)")?;
    let spec = dist_spec
        .or_else(|| class_cycle.map(|k| format!("class:{k}")))
        .context("need --dist or --class-cycle")?;
    let q = resolve_dist(&spec, n, support_cap)?;
    let report = average_tv_sandwich(&q, &kind, steps)?;
    let mut output = BoundsOutput {
        report,
        exhaustive_avg_tv_sq: None,
        exhaustive_within_bounds: None,
        l2_homogeneous: None,
        per_state_tv_min: None,
        per_state_tv_max: None,
    };
    if exhaustive {
        let enumerated = EnumeratedSpace::new(kind.clone(), space_cap)?;
        let (tvs, _, _) = per_state_tv(&q, &enumerated, steps)?;
        let avg_sq = tvs.iter().map(|t| t * t).sum::<f64>() / tvs.len() as f64;
        output.exhaustive_avg_tv_sq = Some(avg_sq);
        output.exhaustive_within_bounds = Some(
            avg_sq >= output.report.lower_avg - 1e-9 && avg_sq <= output.report.upper_avg + 1e-9,
        );
        output.l2_homogeneous = Some(l2_homogeneity_check(&q, &kind)?);
        output.per_state_tv_min = Some(tvs.iter().copied().fold(f64::INFINITY, f64::min));
        output.per_state_tv_max = Some(tvs.iter().copied().fold(0.0, f64::max));
    }
    write_output(&out, &to_json_line(&output))?;
    eprintln!(
        "avg TV^2 in [{:.6e}, {:.6e}] after {} steps on {}",
        output.report.lower_avg, output.report.upper_avg, steps, kind
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// jsr
// ---------------------------------------------------------------------------

#[derive(Args)]
struct JsrArgs {
    /// Matrix-set JSON file; estimates the jsr of the raw set
    #[arg(long)]
    matrices: Option<PathBuf>,
    /// Step distribution spec, repeatable; estimates the Fourier jsr of
    /// the family relative to the space
    #[arg(long)]
    dist: Vec<String>,
    #[command(flatten)]
    space: SpaceArgs,
    /// Target interval width before the bisection stops
    #[arg(long, default_value_t = 0.01)]
    tol: f64,
    /// Product-tree depth for the lower-bound search
    #[arg(long)]
    depth: Option<usize>,
    /// Matrix-multiplication budget for the lower-bound search
    #[arg(long)]
    product_budget: Option<u64>,
    /// Alternating-projection iterations per certificate attempt
    #[arg(long)]
    cert_iters: Option<usize>,
    /// Bisection probe budget
    #[arg(long)]
    max_probes: Option<usize>,
    /// Ceiling on lifted matrix dimension
    #[arg(long)]
    lift_cap: Option<usize>,
    /// Skip estimation; attempt one certificate at this level (matrix mode)
    #[arg(long, value_name = "GAMMA")]
    certify_at: Option<f64>,
    /// Half-degree d of the certificate form (degree 2d) for --certify-at;
    /// without it, d = 1, 2, 3 are tried in order
    #[arg(long, value_name = "D")]
    degree: Option<usize>,
    /// Write certificates here: a file path in matrix mode, a path prefix
    /// (suffixed "-SHAPE.json") in Fourier mode
    #[arg(long)]
    cert_out: Option<PathBuf>,
    /// Ceiling on enumerated class sizes for class:K distribution specs
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct JsrConfig {
    matrices: Option<PathBuf>,
    dist: Option<Vec<String>>,
    space: Option<String>,
    tabloids: Option<String>,
    tours: Option<usize>,
    n: Option<usize>,
    tol: Option<f64>,
    depth: Option<usize>,
    product_budget: Option<u64>,
    cert_iters: Option<usize>,
    max_probes: Option<usize>,
    lift_cap: Option<usize>,
    certify_at: Option<f64>,
    degree: Option<usize>,
    cert_out: Option<PathBuf>,
    support_cap: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct EstimateJson {
    lower: f64,
    upper: f64,
    depth: usize,
    certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_upper: Option<f64>,
}

impl EstimateJson {
    fn of(est: &JsrEstimate) -> EstimateJson {
        EstimateJson {
            lower: est.lower,
            upper: est.upper,
            depth: est.depth,
            certified: est.certificate.is_some(),
            certificate_degree: est.certificate.as_ref().map(|c| c.degree),
            certified_upper: est.certificate.as_ref().map(|c| c.certified_upper()),
        }
    }
}

#[derive(Serialize)]
struct MatrixJsrOutput {
    schema_version: u32,
    dim: usize,
    matrices: usize,
    tol: f64,
    #[serde(flatten)]
    estimate: EstimateJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

#[derive(Serialize)]
struct CertifyOutput {
    schema_version: u32,
    gamma: f64,
    feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

#[derive(Serialize)]
struct IrrepRow {
    shape: String,
    multiplicity: u64,
    #[serde(flatten)]
    estimate: EstimateJson,
}

#[derive(Serialize)]
struct FourierJsrOutput {
    schema_version: u32,
    space: String,
    tol: f64,
    per_irrep: Vec<IrrepRow>,
    lower: f64,
    upper: f64,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

/// Filename-safe shape label: "2+1" stays "2+1".
fn shape_label(p: &Partition) -> String {
    p.to_string()
}

fn cmd_jsr(args: JsrArgs) -> Result<i32> {
    let cfg: JsrConfig = load_config(&args.config)?;
    let matrices = cfg.matrices.or(args.matrices);
    let dists = cfg.dist.unwrap_or(args.dist);
    let space = args.space.overlaid(cfg.space, cfg.tabloids, cfg.tours, cfg.n);
    let tol = cfg.tol.unwrap_or(args.tol);
    let certify_at = cfg.certify_at.or(args.certify_at);
    let degree = cfg.degree.or(args.degree);
    let cert_out = cfg.cert_out.or(args.cert_out);
    let support_cap = cfg.support_cap.unwrap_or(args.support_cap);
    let out = cfg.out.or(args.out);
    let mut budgets = JsrBudgets::default();
    if let Some(d) = cfg.depth.or(args.depth) {
        budgets.depth = d;
    }
    if let Some(b) = cfg.product_budget.or(args.product_budget) {
        budgets.product_budget = b;
    }
    if let Some(i) = cfg.cert_iters.or(args.cert_iters) {
        budgets.cert_iters = i;
    }
    if let Some(p) = cfg.max_probes.or(args.max_probes) {
        budgets.max_probes = p;
    }
    if let Some(c) = cfg.lift_cap.or(args.lift_cap) {
        budgets.lift_cap = c;
    }

    if matrices.is_some() && !dists.is_empty() {
        bail!("--matrices and --dist are mutually exclusive");
    }

    if let Some(path) = matrices {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let set = MatrixSet::from_json(&text)?;

        if let Some(gamma) = certify_at {
            let degrees: Vec<usize> = match degree {
                Some(d) => vec![d],
                None => vec![1, 2, 3],
            };
            let mut found = None;
            for d in degrees {
                if let Some(cert) =
                    certify_upper_bound_with(&set, gamma, d, budgets.cert_iters, budgets.lift_cap)?
                {
                    found = Some(cert);
                    break;
                }
            }
            let output = CertifyOutput {
                schema_version: SCHEMA_VERSION,
                gamma,
                feasible: found.is_some(),
                degree: found.as_ref().map(|c| c.degree),
                certified_upper: found.as_ref().map(|c| c.certified_upper()),
                warning: if found.is_some() {
                    None
                } else {
                    Some("no certificate found within the iteration budget".into())
                },
            };
            if let (Some(cert), Some(p)) = (&found, &cert_out) {
                fs::write(p, cert.to_json())
                    .with_context(|| format!("writing {}", p.display()))?;
            }
            write_output(&out, &to_json_line(&output))?;
            return Ok(0);
        }

        let est = jsr_estimate_with(&set, tol, &budgets);
        if let (Some(cert), Some(p)) = (&est.certificate, &cert_out) {
            fs::write(p, cert.to_json()).with_context(|| format!("writing {}", p.display()))?;
        }
        let wide = est.upper - est.lower > tol;
        let output = MatrixJsrOutput {
            schema_version: SCHEMA_VERSION,
            dim: set.dim(),
            matrices: set.len(),
            tol,
            estimate: EstimateJson::of(&est),
            warning: wide
                .then(|| "interval wider than tol: budgets exhausted before convergence".into()),
        };
        write_output(&out, &to_json_line(&output))?;
        eprintln!("jsr in [{:.6}, {:.6}]", est.lower, est.upper);
        return Ok(0);
    }

    if dists.is_empty() {
        bail!("need --matrices FILE or at least one --dist");
    }
    let kind = space.resolve()?;
    let n = kind.degree();
    let qs = dists
        .iter()
        .map(|spec| resolve_dist(spec, n, support_cap))
        .collect::<Result<Vec<GroupDistribution>>>()?;
    let report = mixwalk::jsr::fourier_jsr(&qs, &kind, tol, &budgets)?;

    if let Some(prefix) = &cert_out {
        for (shape, _, est) in &report.per_irrep {
            if let Some(cert) = &est.certificate {
                let path = PathBuf::from(format!(
                    "{}-{}.json",
                    prefix.display(),
                    shape_label(shape)
                ));
                fs::write(&path, cert.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }

    eprintln!("{:<12} {:>5} {:>10} {:>10} cert", "shape", "mult", "lower", "upper");
    for (shape, mult, est) in &report.per_irrep {
        eprintln!(
            "{:<12} {:>5} {:>10.6} {:>10.6} {}",
            shape.to_string(),
            mult,
            est.lower,
            est.upper,
            if est.certificate.is_some() { "yes" } else { "no" }
        );
    }
    eprintln!(
        "overall [{:.6}, {:.6}] -> {}",
        report.lower,
        report.upper,
        verdict_str(&report.verdict)
    );

    let undetermined = matches!(report.verdict, MixVerdict::Undetermined);
    let output = FourierJsrOutput {
        schema_version: SCHEMA_VERSION,
        space: kind.to_string(),
        tol,
        per_irrep: report
            .per_irrep
            .iter()
            .map(|(shape, mult, est)| IrrepRow {
                shape: shape.to_string(),
                multiplicity: *mult,
                estimate: EstimateJson::of(est),
            })
            .collect(),
        lower: report.lower,
        upper: report.upper,
        verdict: verdict_str(&report.verdict).to_string(),
        warning: undetermined
            .then(|| "budgets exhausted before the verdict was determined".into()),
    };
    write_output(&out, &to_json_line(&output))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// verify-cert
// ---------------------------------------------------------------------------

#[derive(Args)]
struct VerifyCertArgs {
    /// Certificate JSON file
    cert: PathBuf,
    /// Matrix-set JSON file the certificate claims to bound
    #[arg(long)]
    matrices: PathBuf,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VerifyOutput {
    schema_version: u32,
    #[serde(flatten)]
    report: mixwalk::jsr::VerificationReport,
}

fn cmd_verify_cert(args: VerifyCertArgs) -> Result<i32> {
    let cert_text = fs::read_to_string(&args.cert)
        .with_context(|| format!("reading {}", args.cert.display()))?;
    let set_text = fs::read_to_string(&args.matrices)
        .with_context(|| format!("reading {}", args.matrices.display()))?;
    let cert = NormCertificate::from_json(&cert_text)?;
    let set = MatrixSet::from_json(&set_text)?;
    let report = verify_certificate(&set, &cert)?;
    let pass = report.pass;
    write_output(
        &args.out,
        &to_json_line(&VerifyOutput {
            schema_version: SCHEMA_VERSION,
            report,
        }),
    )?;
    if pass {
        eprintln!("certificate verified: jsr <= {:.9}", cert.certified_upper());
        Ok(0)
    } else {
        eprintln!("certificate REJECTED");
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    space: SpaceArgs,
    /// Step distribution spec
    #[arg(long)]
    dist: Option<String>,
    /// Walk length
    #[arg(long = "N")]
    steps: Option<usize>,
    /// Replica count
    #[arg(long = "M")]
    replicas: Option<usize>,
    /// Random seed (replica r draws from stream r of this seed)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ceiling on enumerated space sizes
    #[arg(long, default_value_t = DEFAULT_SPACE_CAP)]
    space_cap: usize,
    /// Ceiling on enumerated class sizes
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    space: Option<String>,
    tabloids: Option<String>,
    tours: Option<usize>,
    n: Option<usize>,
    dist: Option<String>,
    #[serde(rename = "N")]
    steps: Option<usize>,
    #[serde(rename = "M")]
    replicas: Option<usize>,
    seed: Option<u64>,
    space_cap: Option<usize>,
    support_cap: Option<usize>,
    out: Option<PathBuf>,
}

/// Histograms larger than this are summarized instead of listed.
const HISTOGRAM_LIMIT: usize = 4096;

#[derive(Serialize)]
struct CountRow {
    point: Vec<u8>,
    count: u64,
}

#[derive(Serialize)]
struct SimulateOutput {
    schema_version: u32,
    space: String,
    #[serde(rename = "N")]
    steps: usize,
    #[serde(rename = "M")]
    replicas: usize,
    seed: u64,
    distinct_states: usize,
    tv_to_exact: f64,
    tv_to_uniform: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<CountRow>>,
}

fn cmd_simulate(args: SimulateArgs) -> Result<i32> {
    let cfg: SimulateConfig = load_config(&args.config)?;
    let space = args.space.overlaid(cfg.space, cfg.tabloids, cfg.tours, cfg.n);
    let kind = space.resolve()?;
    let dist_spec = cfg.dist.or(args.dist).context("need --dist")?;
    let steps = cfg.steps.or(args.steps).context("need --N")?;
    let replicas = cfg.replicas.or(args.replicas).context("need --M")?;
    let seed = cfg.seed.unwrap_or(args.seed);
    let space_cap = cfg.space_cap.unwrap_or(args.space_cap);
    let support_cap = cfg.support_cap.unwrap_or(args.support_cap);
    let out = cfg.out.or(args.out);

    let q = resolve_dist(&dist_spec, kind.degree(), support_cap)?;
    let origin = kind.origin();
    let counts = simulate_walk(&q, &kind, &origin, steps, replicas, seed)?;

    // The comparison target needs the enumerated space; caps guard it.
    let enumerated = EnumeratedSpace::new(kind.clone(), space_cap)?;
    let empirical = empirical_state_distribution(&counts, &enumerated);
    let exact = exact_walk_distribution(&q, &enumerated, &origin, steps)?;
    let uniform = StateDistribution::uniform(&enumerated);
    let tv_to_exact = tv_distance(&empirical, &exact)?;
    let tv_to_uniform = tv_distance(&empirical, &uniform)?;

    let output = SimulateOutput {
        schema_version: SCHEMA_VERSION,
        space: kind.to_string(),
        steps,
        replicas,
        seed,
        distinct_states: counts.len(),
        tv_to_exact,
        tv_to_uniform,
        counts: (counts.len() <= HISTOGRAM_LIMIT).then(|| {
            counts
                .iter()
                .map(|(point, &count)| CountRow {
                    point: point.clone(),
                    count,
                })
                .collect()
        }),
    };
    write_output(&out, &to_json_line(&output))?;
    eprintln!(
        "{replicas} replicas of {steps} steps on {kind}: TV to exact = {tv_to_exact:.6}, \
         TV to uniform = {tv_to_uniform:.6}"
    );
    Ok(0)
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

#[derive(Args)]
struct EstimateArgs {
    /// CSV distance matrix of the tour instance (plain numeric rows)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Inverse temperature of the Gibbs weighting
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Step distribution spec on S_n, n = city count
    #[arg(long, default_value = "uniform")]
    dist: String,
    /// Walk length (direct mode; with --epsilon the planner chooses it)
    #[arg(long = "N")]
    steps: Option<usize>,
    /// Sample count (direct mode; with --epsilon the planner chooses it)
    #[arg(long = "M")]
    samples: Option<u64>,
    /// Target ratio accuracy; enables planning of N and M
    #[arg(long)]
    epsilon: Option<f64>,
    /// Per-mean failure probability (confidence = 1 - 2 eta)
    #[arg(long, default_value_t = 0.05)]
    eta: f64,
    /// Ceiling on planned walk lengths
    #[arg(long, default_value_t = DEFAULT_PLAN_MAX_STEPS)]
    max_steps: usize,
    /// Override the proven walk total-variation bound
    #[arg(long)]
    tv_bound: Option<f64>,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ceiling on enumerated class sizes
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EstimateConfig {
    matrix: Option<PathBuf>,
    beta: Option<f64>,
    dist: Option<String>,
    #[serde(rename = "N")]
    steps: Option<usize>,
    #[serde(rename = "M")]
    samples: Option<u64>,
    epsilon: Option<f64>,
    eta: Option<f64>,
    max_steps: Option<usize>,
    tv_bound: Option<f64>,
    seed: Option<u64>,
    support_cap: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct EstimateOutput {
    schema_version: u32,
    #[serde(flatten)]
    report: mixwalk::montecarlo::AnnealingReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    plan: Option<EstimationPlan>,
}

fn cmd_estimate(args: EstimateArgs) -> Result<i32> {
    let cfg: EstimateConfig = load_config(&args.config)?;
    let matrix = cfg.matrix.or(args.matrix).context("need --matrix FILE.csv")?;
    let beta = cfg.beta.unwrap_or(args.beta);
    let dist_spec = cfg.dist.unwrap_or(args.dist);
    let eta = cfg.eta.unwrap_or(args.eta);
    let max_steps = cfg.max_steps.unwrap_or(args.max_steps);
    let tv_bound = cfg.tv_bound.or(args.tv_bound);
    let seed = cfg.seed.unwrap_or(args.seed);
    let support_cap = cfg.support_cap.unwrap_or(args.support_cap);
    let epsilon = cfg.epsilon.or(args.epsilon);
    let steps = cfg.steps.or(args.steps);
    let samples = cfg.samples.or(args.samples);
    let out = cfg.out.or(args.out);

    let text =
        fs::read_to_string(&matrix).with_context(|| format!("reading {}", matrix.display()))?;
    let inst = TourInstance::from_csv(&text)?;
    let q = resolve_dist(&dist_spec, inst.n(), support_cap)?;

    let (steps, samples, plan) = match epsilon {
        Some(eps) => {
            let plan = annealing_plan(&inst, beta, &q, eps, eta, max_steps)?;
            (plan.steps, plan.samples, Some(plan))
        }
        None => (
            steps.context("need --N (or --epsilon to plan it)")?,
            samples.context("need --M (or --epsilon to plan it)")?,
            None,
        ),
    };
    let report =
        annealing_length_estimate(&inst, beta, &q, steps, samples, eta, seed, tv_bound)?;
    eprintln!(
        "lbar_hat = {:.6} +- {:.3e} at confidence {:.3} ({} walks of {} steps)",
        report.lbar_hat, report.radius, report.confidence, samples, steps
    );
    let output = EstimateOutput {
        schema_version: SCHEMA_VERSION,
        report,
        plan,
    };
    write_output(&out, &to_json_line(&output))?;
    Ok(0)
}

// ---------------------------------------------------------------------------
// fourier
// ---------------------------------------------------------------------------

#[derive(Args)]
struct FourierArgs {
    /// Group degree n
    #[arg(long)]
    n: Option<usize>,
    /// Step distribution spec
    #[arg(long)]
    dist: Option<String>,
    /// Ceiling on irreducible dimensions
    #[arg(long, default_value_t = DEFAULT_IRREP_DIM_CAP)]
    dim_cap: usize,
    /// Ceiling on enumerated class sizes
    #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP)]
    support_cap: usize,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FourierConfig {
    n: Option<usize>,
    dist: Option<String>,
    dim_cap: Option<usize>,
    support_cap: Option<usize>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct TransformJson {
    shape: String,
    dim: usize,
    matrix: Vec<Vec<[f64; 2]>>,
    op_norm: f64,
    frobenius_norm_sq: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalar: Option<f64>,
}

#[derive(Serialize)]
struct FourierOutput {
    schema_version: u32,
    n: usize,
    class_invariant: bool,
    transforms: Vec<TransformJson>,
}

fn cmd_fourier(args: FourierArgs) -> Result<i32> {
    let cfg: FourierConfig = load_config(&args.config)?;
    let n = cfg.n.or(args.n).context("need --n")?;
    let dist_spec = cfg.dist.or(args.dist).context("need --dist")?;
    let dim_cap = cfg.dim_cap.unwrap_or(args.dim_cap);
    let support_cap = cfg.support_cap.unwrap_or(args.support_cap);
    let out = cfg.out.or(args.out);

    let q = resolve_dist(&dist_spec, n, support_cap)?;
    let class_invariant = q.is_class_invariant(1e-12);
    let mut transforms = Vec::new();
    for shape in partitions_of(n) {
        let rep = OrthogonalRepresentation::build(&shape, dim_cap)?;
        let ft = fourier_transform(&q, &rep)?;
        transforms.push(TransformJson {
            shape: shape.to_string(),
            dim: rep.dim(),
            matrix: mat_rows(&ft.mat),
            op_norm: ft.op_norm(),
            frobenius_norm_sq: ft.frobenius_norm_sq(),
            scalar: class_invariant.then(|| class_scalar(&q, &shape)).transpose()?,
        });
    }
    let output = FourierOutput {
        schema_version: SCHEMA_VERSION,
        n,
        class_invariant,
        transforms,
    };
    write_output(&out, &to_json_line(&output))?;
    eprintln!("{} transforms of S_{n} emitted", output.transforms.len());
    Ok(0)
}

// ---------------------------------------------------------------------------
// chars
// ---------------------------------------------------------------------------

#[derive(Args)]
struct CharsArgs {
    /// Group degree n
    #[arg(long)]
    n: Option<usize>,
    /// Output path (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file; its keys override the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CharsConfig {
    n: Option<usize>,
    out: Option<PathBuf>,
}

/// Character tables grow as p(n)^2 entries; beyond this the dump stops
/// being a dump.
const CHARS_DEGREE_CAP: usize = 14;

fn cmd_chars(args: CharsArgs) -> Result<i32> {
    let cfg: CharsConfig = load_config(&args.config)?;
    let n = cfg.n.or(args.n).context("need --n")?;
    let out = cfg.out.or(args.out);
    if n == 0 || n > CHARS_DEGREE_CAP {
        bail!("character table degree must be in 1..={CHARS_DEGREE_CAP}");
    }
    let shapes = partitions_of(n);
    let mut csv = String::from("shape,dim,class,value\n");
    for shape in &shapes {
        let dim = shape.dim();
        for class_shape in &shapes {
            let class = CycleType::from(class_shape);
            let value = character_value(shape, &class);
            csv.push_str(&format!("{shape},{dim},{class_shape},{value}\n"));
        }
    }
    write_output(&out, &csv)?;
    eprintln!("{} x {} character values of S_{n}", shapes.len(), shapes.len());
    Ok(0)
}

// ---------------------------------------------------------------------------

fn main() {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Bounds(args) => cmd_bounds(args),
        Cmd::Jsr(args) => cmd_jsr(args),
        Cmd::VerifyCert(args) => cmd_verify_cert(args),
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Estimate(args) => cmd_estimate(args),
        Cmd::Fourier(args) => cmd_fourier(args),
        Cmd::Chars(args) => cmd_chars(args),
    };
    match result {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
