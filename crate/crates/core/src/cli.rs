//! Command-line front end. The `supertree` binary parses [`Cli`] and hands
//! it to [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::certificates::{
    alpha_normal_radius, classify, propagate, t11m3_certificate, transport_certificate,
    CertificateFile, Propagation, RadiusBound, WeightedIncidence,
};
use crate::constructors::{
    broom, double_star, f_tree, hyperstar, hypertree_base, path, star, tree_power, OrdinaryTree,
};
use crate::error::{Error, Result};
use crate::hypergraph::{non_pendent_count, Hypergraph};
use crate::ordering::{
    format_sig, rank_spectra, verify_collapsed_order_in, verify_hofmeister_in, verify_moving_edges,
    verify_partition_lemma, verify_reductions, verify_sandwich, verify_top_four_in,
    verify_top_three_in, Method, MovingEdgesConfig, Settings, SpectraReport, VerificationRecord,
    DEFAULT_ENUM_LIMIT, DEFAULT_SEED,
};
use crate::spectral::{power_formula_radius, power_iteration, DEFAULT_MAX_ITER, DEFAULT_TOL};

pub const ENUM_LIMIT_VAR: &str = "SUPERTREE_ENUM_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "supertree", version, about = "Spectral radii and orderings of uniform supertrees")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Relative bracket width and residual at which power iteration stops.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[arg(long = "max-iter", global = true, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,

    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Power)]
    pub method: MethodArg,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Power,
    Alpha,
    Formula,
    /// Power iteration and the alpha-normal bisection side by side.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a supertree and write it in the JSON interchange format.
    Gen(GenArgs),
    /// Spectral radius of a hypergraph file.
    Rho { file: PathBuf },
    /// Classify a weighted incidence matrix on a hypergraph file.
    Certify(CertifyArgs),
    /// Check an ordering claim by exhaustive enumeration or seeded trials.
    Verify(VerifyArgs),
    /// Rank every supertree class with m edges.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Hyperstar,
    DoubleStarPower,
    TreePower,
    Broom,
    FTreePower,
    PathPower,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub family: Family,
    #[arg(long)]
    pub k: usize,
    /// Number of edges (hyperstar, f-tree-power, path-power).
    #[arg(long)]
    pub m: Option<usize>,
    /// Branch sizes: `a,b` for double-star-power, `t1,t2,t3` for broom.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<usize>,
    /// Base tree for tree-power: `path:N`, `star:N`, `double-star:A,B`,
    /// `f:N` or `edges:0-1,1-2,...`.
    #[arg(long)]
    pub tree: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construct {
    /// The two-parameter matrix on T(1,1,m-3).
    T11m3,
    /// Leaf-to-root propagation at the given alpha.
    Propagated,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Certificate file: the hypergraph object plus "alpha" and "B".
    #[arg(long, conflicts_with = "construct")]
    pub cert: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub construct: Option<Construct>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Main1,
    Main2,
    Hofmeister,
    MovingEdges,
    Partition,
    Sandwich,
    Reduction,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: Theorem,
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Edge count; for moving-edges, the largest random supertree.
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
}

impl CliConfig {
    pub fn settings(&self) -> Result<Settings> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("--max-iter must be at least 1".into()));
        }
        let enum_limit = match std::env::var(ENUM_LIMIT_VAR) {
            Ok(v) => v
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{ENUM_LIMIT_VAR}={v}")))?,
            Err(_) => DEFAULT_ENUM_LIMIT,
        };
        Ok(Settings {
            tol: self.tol,
            max_iter: self.max_iter,
            enum_limit,
            ..Settings::default()
        })
    }
}

/// Executes `cli`, writing results to `out` (or `--out`) and diagnostics to
/// `err`. An `Err` means a failed command or a refuted claim.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let config = &cli.config;
    let settings = config.settings()?;
    match &cli.command {
        Command::Gen(args) => cmd_gen(args, config, out, err),
        Command::Rho { file } => cmd_rho(file, config, &settings, out),
        Command::Certify(args) => cmd_certify(args, config, &settings, out),
        Command::Verify(args) => cmd_verify(args, config, &settings, out),
        Command::Enumerate { k, m } => cmd_enumerate(*m, *k, config, &settings, out),
    }
}

fn emit(config: &CliConfig, out: &mut dyn Write, body: &str) -> Result<()> {
    match &config.out {
        Some(path) => fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn need_m(m: Option<usize>, family: &str) -> Result<usize> {
    m.ok_or_else(|| Error::InvalidParameter(format!("{family} needs --m")))
}

/// Parses a base tree spec such as `path:5` or `edges:0-1,1-2`.
pub fn parse_tree(spec: &str) -> Result<OrdinaryTree> {
    let bad = || Error::InvalidParameter(format!("unrecognized tree spec {spec:?}"));
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    let numbers = |s: &str| -> Result<Vec<usize>> {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
    };
    match kind {
        "path" | "star" | "f" => {
            let [n] = numbers(rest)?[..] else { return Err(bad()) };
            match kind {
                "path" => path(n),
                "star" => star(n),
                _ => f_tree(n),
            }
        }
        "double-star" => {
            let [a, b] = numbers(rest)?[..] else { return Err(bad()) };
            double_star(a, b)
        }
        "edges" => {
            let mut edges = Vec::new();
            for pair in rest.split(',') {
                let (a, b) = pair.split_once('-').ok_or_else(bad)?;
                edges.push((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
            }
            let n = edges.iter().map(|&(a, b): &(usize, usize)| a.max(b) + 1).max().unwrap_or(1);
            OrdinaryTree::new(n, edges)
        }
        _ => Err(bad()),
    }
}

pub fn build_family(args: &GenArgs) -> Result<Hypergraph> {
    let k = args.k;
    match args.family {
        Family::Hyperstar => hyperstar(need_m(args.m, "hyperstar")?, k),
        Family::DoubleStarPower => {
            let [a, b] = args.t[..] else {
                return Err(Error::InvalidParameter("double-star-power needs --t a,b".into()));
            };
            tree_power(&double_star(a, b)?, k)
        }
        Family::TreePower => {
            let spec = args
                .tree
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("tree-power needs --tree".into()))?;
            tree_power(&parse_tree(spec)?, k)
        }
        Family::Broom => {
            let [t1, t2, t3] = args.t[..] else {
                return Err(Error::InvalidParameter("broom needs --t t1,t2,t3".into()));
            };
            broom(t1, t2, t3, k)
        }
        Family::FTreePower => tree_power(&f_tree(need_m(args.m, "f-tree-power")? + 1)?, k),
        Family::PathPower => tree_power(&path(need_m(args.m, "path-power")? + 1)?, k),
    }
}

fn cmd_gen(args: &GenArgs, config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let h = build_family(args)?;
    let mut body = serde_json::to_string(&h)?;
    body.push('\n');
    emit(config, out, &body)?;
    let summary = format!("n={} m={} k={} N2={}\n", h.n(), h.m(), h.k(), non_pendent_count(&h));
    // keep stdout clean when it carries the hypergraph itself
    if config.out.is_some() {
        out.write_all(summary.as_bytes())?;
    } else {
        err.write_all(summary.as_bytes())?;
    }
    Ok(())
}

struct RadiusLine {
    method: Method,
    rho: f64,
    residual: Option<f64>,
    iterations: Option<usize>,
}

fn radius_line(h: &Hypergraph, method: Method, settings: &Settings) -> Result<RadiusLine> {
    match method {
        Method::Power => {
            let pair = power_iteration(h, settings.tol, settings.max_iter)?;
            Ok(RadiusLine {
                method,
                rho: pair.rho,
                residual: Some(pair.residual),
                iterations: Some(pair.iterations),
            })
        }
        Method::Alpha => Ok(RadiusLine {
            method,
            rho: alpha_normal_radius(h, settings.cert_tol)?,
            residual: None,
            iterations: None,
        }),
        Method::Formula => {
            let tree = hypertree_base(h).ok_or_else(|| {
                Error::InvalidParameter("formula method needs the power of an ordinary tree".into())
            })?;
            Ok(RadiusLine {
                method,
                rho: power_formula_radius(&tree, h.k())?,
                residual: None,
                iterations: None,
            })
        }
    }
}

fn cmd_rho(file: &Path, config: &CliConfig, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let h = read_hypergraph(file)?;
    let methods = match config.method {
        MethodArg::Power => vec![Method::Power],
        MethodArg::Alpha => vec![Method::Alpha],
        MethodArg::Formula => vec![Method::Formula],
        MethodArg::Auto => vec![Method::Power, Method::Alpha],
    };
    let lines: Vec<RadiusLine> = methods
        .into_iter()
        .map(|m| radius_line(&h, m, settings))
        .collect::<Result<_>>()?;
    let gap = (lines.len() == 2).then(|| (lines[0].rho - lines[1].rho).abs());

    let body = match config.output {
        OutputFormat::Human => {
            let mut s = String::new();
            for l in &lines {
                s.push_str(&format!("{:<8} rho={}", l.method, format_sig(l.rho, 9)));
                if let (Some(r), Some(i)) = (l.residual, l.iterations) {
                    s.push_str(&format!(" residual={r:.3e} iterations={i}"));
                }
                s.push('\n');
            }
            if let Some(g) = gap {
                s.push_str(&format!("gap      {g:.3e}\n"));
            }
            s
        }
        OutputFormat::Json => {
            let results: Vec<_> = lines
                .iter()
                .map(|l| {
                    json!({"method": l.method, "rho": l.rho, "residual": l.residual, "iterations": l.iterations})
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({"results": results, "gap": gap}))?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut s = String::from("method,rho,residual,iterations\n");
            for l in &lines {
                s.push_str(&format!(
                    "{},{:?},{},{}\n",
                    l.method,
                    l.rho,
                    l.residual.map(|r| format!("{r:?}")).unwrap_or_default(),
                    l.iterations.map(|i| i.to_string()).unwrap_or_default()
                ));
            }
            s
        }
    };
    emit(config, out, &body)
}

fn certificate_for(args: &CertifyArgs, h: &Hypergraph) -> Result<(WeightedIncidence, f64)> {
    if let Some(path) = &args.cert {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let file: CertificateFile = serde_json::from_str(&text)?;
        let (b, file_alpha) = file.into_certificate()?;
        return Ok((transport_certificate(&b, h)?, args.alpha.unwrap_or(file_alpha)));
    }
    let construct = args
        .construct
        .ok_or_else(|| Error::InvalidParameter("certify needs --cert FILE or --construct".into()))?;
    let alpha = args
        .alpha
        .ok_or_else(|| Error::InvalidParameter("--construct needs --alpha".into()))?;
    let b = match construct {
        Construct::T11m3 => {
            if h.k() < 3 || h.m() < 4 {
                return Err(Error::Precondition("t11m3 needs k >= 3 and m >= 4".into()));
            }
            let b = t11m3_certificate(h.m(), h.k(), alpha)?;
            transport_certificate(&b, h).map_err(|e| match e {
                Error::IncidenceMismatch(_) => {
                    Error::Precondition(format!("input is not T(1,1,{})", h.m() - 3))
                }
                other => other,
            })?
        }
        Construct::Propagated => match propagate(h, alpha)? {
            Propagation::Feasible { certificate, .. } => certificate,
            Propagation::Infeasible { vertex, edge } => {
                return Err(Error::Precondition(format!(
                    "propagation at alpha = {alpha} leaves no positive weight for vertex {vertex} in edge {edge}"
                )))
            }
        },
    };
    Ok((b, alpha))
}

fn cmd_certify(args: &CertifyArgs, config: &CliConfig, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let h = read_hypergraph(&args.file)?;
    let (b, alpha) = certificate_for(args, &h)?;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let verdict = classify(&h, &b, alpha, settings.cert_tol)?;
    let implication = verdict.implication(h.k());
    let body = match config.output {
        OutputFormat::Json => {
            let (relation, bound) = match implication {
                Some(RadiusBound::Below(t)) => (Some("<"), Some(t)),
                Some(RadiusBound::Above(t)) => (Some(">"), Some(t)),
                None => (None, None),
            };
            let mut s = serde_json::to_string_pretty(&json!({
                "alpha": alpha,
                "class": verdict.class,
                "min_slack": verdict.min_slack(),
                "max_slack": verdict.max_slack(),
                "consistent": verdict.consistent,
                "relation": relation,
                "bound": bound,
            }))?;
            s.push('\n');
            s
        }
        OutputFormat::Human | OutputFormat::Csv => {
            let implied = match implication {
                Some(RadiusBound::Below(t)) => format!("rho < {}", format_sig(t, 9)),
                Some(RadiusBound::Above(t)) => format!("rho > {}", format_sig(t, 9)),
                None => "no bound".to_string(),
            };
            format!(
                "class: {}\nalpha: {}\nmin slack: {:.6e}\nmax slack: {:.6e}\nconsistent: {}\nimplies: {implied}\n",
                verdict.class,
                format_sig(alpha, 9),
                verdict.min_slack(),
                verdict.max_slack(),
                verdict.consistent
            )
        }
    };
    emit(config, out, &body)
}

fn render_report(report: &SpectraReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Human => report.to_table(),
        OutputFormat::Json => report.to_json() + "\n",
        OutputFormat::Csv => report.to_csv(),
    }
}

fn cmd_verify(args: &VerifyArgs, config: &CliConfig, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let (m, k) = (args.m, args.k);
    let ranked = |check: fn(&SpectraReport) -> Result<VerificationRecord>,
                  out: &mut dyn Write|
     -> Result<VerificationRecord> {
        let report = rank_spectra(m, k, Method::Power, settings)?;
        emit(config, out, &render_report(&report, config.output))?;
        let check = if m == 4 { verify_collapsed_order_in } else { check };
        check(&report)
    };
    let outcome = match args.theorem {
        Theorem::Main1 => ranked(verify_top_three_in, out),
        Theorem::Main2 => ranked(verify_top_four_in, out),
        Theorem::Hofmeister => ranked(verify_hofmeister_in, out),
        Theorem::MovingEdges => verify_moving_edges(
            &MovingEdgesConfig {
                trials: args.trials,
                seed: config.seed,
                k,
                max_edges: m,
            },
            settings,
        ),
        Theorem::Partition => verify_partition_lemma(m, k, settings),
        Theorem::Sandwich => verify_sandwich(m, k, settings),
        Theorem::Reduction => verify_reductions(m, k, settings),
    };
    match outcome {
        Ok(record) => {
            writeln!(out, "PASS {record}")?;
            Ok(())
        }
        Err(e) => {
            writeln!(out, "FAIL {e}")?;
            Err(e)
        }
    }
}

fn cmd_enumerate(m: usize, k: usize, config: &CliConfig, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let method = match config.method {
        MethodArg::Power => Method::Power,
        MethodArg::Alpha => Method::Alpha,
        MethodArg::Formula => Method::Formula,
        MethodArg::Auto => {
            return Err(Error::InvalidParameter("enumerate takes a single method".into()))
        }
    };
    let report = rank_spectra(m, k, method, settings)?;
    emit(config, out, &render_report(&report, config.output))
}
