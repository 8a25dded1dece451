//! Command-line front end.
//!
//! Six subcommands wrap the library: `capacity` (channel capacities),
//! `link` (BB84 link budget), `connectivity` (algebraic connectivity of a
//! topology), `harm` (node-removal ranking), `recover` (μ-budget recovery
//! plans), and `sweep` (parameter sweeps over mode × group × μ × removal).
//!
//! Reproducibility rules:
//!
//! * All randomness flows from the single `--seed`; omitting it selects
//!   seed 0, never entropy.
//! * Every run prints a provenance header — version, seed, a digest of the
//!   fully resolved configuration, and the resolved configuration itself as
//!   `#` comments — so any output row can be regenerated from its header.
//! * `--output` writes via a temp file renamed into place on success, so a
//!   failing run never leaves a partial file behind.
//!
//! Exit codes: 0 on success (including `--help`), 1 on validation or usage
//! errors, 2 when an iterative algorithm fails to converge.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgAction, Parser, Subcommand};

use crate::channel::CapacityMode;
use crate::config::{self, parse_grid};
use crate::error::{Error, Result};
use crate::qkd::{qber, rate_breakdown, secret_key_fraction};
use crate::resilience::{harm_ranking, recovery_plans, remove_node};
use crate::sim::{
    capacity_curve, preset_collapse_sweep, preset_group_sweep, preset_harm_sweep,
    preset_removal_sweep, render_table, run_sweep, CapacityCurveConfig, ExperimentConfig,
    TopologySpec,
};
use crate::spectral::{algebraic_connectivity, NodeId, WeightedTopology};
use crate::weights::{learn_link, weigh_topology, WeightSource};

const PRESETS: [&str; 4] = ["group-sweep", "removal-sweep", "harm", "collapse"];

#[derive(Debug, Parser)]
#[command(
    name = "qconn",
    version,
    about = "Physically weighted connectivity analysis for QKD networks",
    subcommand_required = true,
    arg_required_else_help = true
)]
struct Cli {
    /// Experiment config file (sectioned key = value document).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Inline config override, section-qualified (repeatable).
    #[arg(long = "set", global = true, value_name = "SECTION.KEY=VALUE")]
    set: Vec<String>,

    /// Master seed for all randomness.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write results here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Print extra diagnostics to standard error (repeatable).
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Channel capacities: product-state and entanglement-assisted.
    Capacity {
        /// identity, rotation:<radians>, or depolarizing:<q>.
        #[arg(long, default_value = "identity")]
        channel: String,
        /// product, entangled, or both.
        #[arg(long, default_value = "both")]
        mode: String,
        /// Optimizer tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also report min/max over this many random-distribution samples.
        #[arg(long, default_value_t = 0, value_name = "N")]
        random_draws: usize,
    },
    /// BB84 link budget: rate chain, QBER, and secret-key fraction.
    Link {
        /// Mean photon number μ (defaults to the config's base μ).
        #[arg(long)]
        mu: Option<f64>,
        /// Transmission probability to evaluate the budget at.
        #[arg(long)]
        t_link: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        p_opt: Option<f64>,
        #[arg(long)]
        p_dark: Option<f64>,
        #[arg(long)]
        n_det: Option<u32>,
        #[arg(long)]
        f_ref: Option<f64>,
        /// Also learn t_link from capacity samples and report the result.
        #[arg(long)]
        learn: bool,
        /// Channel mode the learner samples: product or entangled.
        #[arg(long, default_value = "product")]
        mode: String,
    },
    /// Algebraic connectivity (λ₂) of a topology.
    Connectivity {
        /// Grid shorthand like 3x3 (overrides the config topology).
        #[arg(long, value_name = "RxC")]
        grid: Option<String>,
        /// Give every edge this fixed weight instead of learning weights.
        #[arg(long, value_name = "W")]
        uniform_weight: Option<f64>,
        /// Channel mode for learned weights: product or entangled.
        #[arg(long, default_value = "product")]
        mode: String,
    },
    /// Rank nodes by how much their removal hurts connectivity.
    Harm {
        /// Grid shorthand like 3x3 (overrides the config topology).
        #[arg(long, value_name = "RxC")]
        grid: Option<String>,
        /// Candidate nodes, space-separated (default: every node).
        #[arg(long, value_name = "IDS")]
        candidates: Option<String>,
        /// Give every edge this fixed weight instead of learning weights.
        #[arg(long, value_name = "W")]
        uniform_weight: Option<f64>,
        /// Channel mode for learned weights: product or entangled.
        #[arg(long, default_value = "product")]
        mode: String,
    },
    /// Compare μ-budget plans that restore connectivity after a removal.
    Recover {
        /// Grid shorthand like 3x3 (overrides the config topology).
        #[arg(long, value_name = "RxC")]
        grid: Option<String>,
        /// Node whose removal the plans compensate.
        #[arg(long, default_value_t = 2)]
        removed: NodeId,
        /// Candidate groups: node ids space-separated, groups split by ';'.
        #[arg(long, default_value = "5;4 6 8", value_name = "GROUPS")]
        groups: String,
        /// μ added to every group member per step.
        #[arg(long, default_value_t = 1.0)]
        mu_step: f64,
        /// Per-node μ ceiling.
        #[arg(long, default_value_t = 8.0)]
        mu_cap: f64,
        /// Absolute λ₂ target (default: harmed λ₂ + margin).
        #[arg(long)]
        target: Option<f64>,
        /// Margin above the harmed λ₂ when no explicit target is given.
        #[arg(long, default_value_t = 1e-4)]
        margin: f64,
        /// Give every edge this fixed weight instead of learning weights.
        #[arg(long, value_name = "W")]
        uniform_weight: Option<f64>,
        /// Channel mode for learned weights: product or entangled.
        #[arg(long, default_value = "product")]
        mode: String,
    },
    /// Run a parameter sweep and emit the results table.
    Sweep {
        /// Built-in experiment: group-sweep, removal-sweep, harm, collapse.
        #[arg(long, value_name = "NAME")]
        preset: Option<String>,
    },
}

/// Parses argv from the environment, runs, and returns the process exit
/// code. The thin `qconn` binary is just `std::process::exit(run())`.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// [`run`] with explicit arguments, for tests.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successes; anything else is a usage
            // problem and maps onto the validation exit code.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let (content, destination) = match &cli.command {
        Command::Capacity { channel, mode, tol, random_draws } => {
            (run_capacity(cli, channel, mode, *tol, *random_draws)?, cli.output.clone())
        }
        Command::Link { mu, t_link, eta, p_opt, p_dark, n_det, f_ref, learn, mode } => {
            let flags = LinkFlags {
                mu: *mu,
                t_link: *t_link,
                eta: *eta,
                p_opt: *p_opt,
                p_dark: *p_dark,
                n_det: *n_det,
                f_ref: *f_ref,
            };
            (run_link(cli, &flags, *learn, mode)?, cli.output.clone())
        }
        Command::Connectivity { grid, uniform_weight, mode } => {
            (run_connectivity(cli, grid.as_deref(), *uniform_weight, mode)?, cli.output.clone())
        }
        Command::Harm { grid, candidates, uniform_weight, mode } => (
            run_harm(cli, grid.as_deref(), candidates.as_deref(), *uniform_weight, mode)?,
            cli.output.clone(),
        ),
        Command::Recover {
            grid,
            removed,
            groups,
            mu_step,
            mu_cap,
            target,
            margin,
            uniform_weight,
            mode,
        } => {
            let plan = RecoverArgs {
                removed: *removed,
                groups,
                mu_step: *mu_step,
                mu_cap: *mu_cap,
                target: *target,
                margin: *margin,
                uniform_weight: *uniform_weight,
            };
            (run_recover(cli, grid.as_deref(), &plan, mode)?, cli.output.clone())
        }
        Command::Sweep { preset } => {
            let (content, config_path) = run_sweep_command(cli, preset.as_deref())?;
            (content, cli.output.clone().or(config_path))
        }
    };
    deliver(destination.as_deref(), &content)
}

/// Loads the experiment config: the `--config` file (or an empty document),
/// with `--set` overrides applied, resolved against full defaults.
fn load_experiment(cli: &Cli) -> Result<ExperimentConfig> {
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path).map_err(|e| {
            Error::validation(format!("cannot read config file {}: {e}", path.display()))
        })?,
        None => String::new(),
    };
    config::load_config(&text, &cli.set, cli.seed)
}

/// Applies a `--grid RxC` override on top of the config topology and
/// revalidates, returning the built topology.
fn resolve_topology(cfg: &mut ExperimentConfig, grid: Option<&str>) -> Result<WeightedTopology> {
    if let Some(spec) = grid {
        let (rows, cols) = parse_grid(spec).ok_or_else(|| {
            Error::validation(format!("--grid expects ROWSxCOLS, like 3x3, got {spec:?}"))
        })?;
        cfg.topology = TopologySpec::Grid { rows, cols };
    }
    cfg.validate()
}

fn parse_modes(text: &str) -> Result<Vec<CapacityMode>> {
    if text == "both" {
        return Ok(vec![CapacityMode::Product, CapacityMode::Entangled]);
    }
    Ok(vec![text.parse()?])
}

fn parse_single_mode(text: &str) -> Result<CapacityMode> {
    text.parse()
}

/// Chooses the edge-weight source: fixed uniform when requested, learned
/// from the config's physics otherwise.
fn weight_source(
    cfg: &ExperimentConfig,
    uniform_weight: Option<f64>,
    mode: CapacityMode,
) -> WeightSource {
    match uniform_weight {
        Some(w) => WeightSource::FixedUniform(w),
        None => WeightSource::Learned(cfg.weighting(mode)),
    }
}

/// The provenance header: version, seed, config digest, and the resolved
/// configuration itself as `#` comments.
fn provenance_header(seed: u64, resolved: &str) -> String {
    let digest = config::config_digest(resolved);
    let mut out = format!(
        "# qconn {} seed={seed} config-digest={digest}\n",
        env!("CARGO_PKG_VERSION")
    );
    for line in resolved.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// Prints to stdout, or atomically writes to `path`: the content lands in a
/// temp file first and is renamed into place only once fully written.
fn deliver(path: Option<&Path>, content: &str) -> Result<()> {
    let Some(path) = path else {
        print!("{content}");
        return Ok(());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::validation(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", file_name.to_string_lossy()));
    let write = || -> Result<()> {
        fs::write(&tmp, content)?;
        fs::rename(&tmp, path)?;
        Ok(())
    };
    write().inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

fn run_capacity(
    cli: &Cli,
    channel: &str,
    mode: &str,
    tol: f64,
    random_draws: usize,
) -> Result<String> {
    let model = channel.parse()?;
    let modes = parse_modes(mode)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::validation(format!("--tol must be positive, got {tol}")));
    }
    let resolved = format!(
        "command = capacity\nchannel = {channel}\nmode = {mode}\ntol = {tol:?}\n\
         random_draws = {random_draws}\n"
    );
    let curve = capacity_curve(&CapacityCurveConfig {
        channels: vec![(channel.to_owned(), model)],
        tol,
        random_draws,
        master_seed: cli.seed,
    })?;
    let point = &curve[0];
    let mut out = provenance_header(cli.seed, &resolved);
    for m in &modes {
        match m {
            CapacityMode::Product => {
                writeln!(out, "C = {:?}", point.c_product).expect("string write");
                if let Some((lo, hi)) = point.random_product {
                    writeln!(out, "C_random = [{lo:?}, {hi:?}]").expect("string write");
                }
            }
            CapacityMode::Entangled => {
                writeln!(out, "C_E = {:?}", point.c_entangled).expect("string write");
                if let Some((lo, hi)) = point.random_entangled {
                    writeln!(out, "C_E_random = [{lo:?}, {hi:?}]").expect("string write");
                }
            }
        }
    }
    Ok(out)
}

struct LinkFlags {
    mu: Option<f64>,
    t_link: Option<f64>,
    eta: Option<f64>,
    p_opt: Option<f64>,
    p_dark: Option<f64>,
    n_det: Option<u32>,
    f_ref: Option<f64>,
}

fn run_link(cli: &Cli, flags: &LinkFlags, learn: bool, mode: &str) -> Result<String> {
    let cfg = load_experiment(cli)?;
    let mode = parse_single_mode(mode)?;
    let mut physics = cfg.physics;
    if let Some(v) = flags.mu {
        physics.mu = v;
    }
    if let Some(v) = flags.t_link {
        physics.t_link = v;
    }
    if let Some(v) = flags.eta {
        physics.eta = v;
    }
    if let Some(v) = flags.p_opt {
        physics.p_opt = v;
    }
    if let Some(v) = flags.p_dark {
        physics.p_dark = v;
    }
    if let Some(v) = flags.n_det {
        physics.n_det = v;
    }
    if let Some(v) = flags.f_ref {
        physics.f_ref = v;
    }
    physics.validate()?;

    let resolved = format!(
        "command = link\nf_ref = {:?}\nmu = {:?}\neta = {:?}\np_opt = {:?}\np_dark = {:?}\n\
         n_det = {}\nt_link = {:?}\nlearn = {learn}\nmode = {mode}\n",
        physics.f_ref, physics.mu, physics.eta, physics.p_opt, physics.p_dark, physics.n_det,
        physics.t_link
    );
    let mut out = provenance_header(cli.seed, &resolved);

    let rates = rate_breakdown(&physics)?;
    let q = qber(&physics)?;
    let skf = secret_key_fraction(q)?;
    writeln!(out, "r_s = {:?}", rates.r_s).expect("string write");
    writeln!(out, "r_raw = {:?}", rates.r_raw).expect("string write");
    writeln!(out, "r_sift = {:?}", rates.r_sift).expect("string write");
    writeln!(out, "r_opt = {:?}", rates.r_opt).expect("string write");
    writeln!(out, "r_det = {:?}", rates.r_det).expect("string write");
    writeln!(out, "r_err = {:?}", rates.r_err).expect("string write");
    writeln!(out, "qber = {q:?}").expect("string write");
    writeln!(out, "secret_key_fraction = {skf:?}").expect("string write");

    if learn {
        let link = learn_link(&cfg.weighting(mode), physics.mu)?;
        writeln!(out, "learned_t_link = {:?}", link.t_link).expect("string write");
        writeln!(out, "learned_weight = {:?}", link.weight).expect("string write");
        if cli.verbose > 0 {
            eprintln!(
                "learner: seed {} ran {} EMA updates, window {}",
                link.seed,
                link.trajectory.len().saturating_sub(1),
                cfg.learner.window
            );
        }
    }
    Ok(out)
}

fn run_connectivity(
    cli: &Cli,
    grid: Option<&str>,
    uniform_weight: Option<f64>,
    mode: &str,
) -> Result<String> {
    let mut cfg = load_experiment(cli)?;
    let mode = parse_single_mode(mode)?;
    let topology = resolve_topology(&mut cfg, grid)?;
    let source = weight_source(&cfg, uniform_weight, mode);
    let weighted = weigh_topology(&topology, &source)?;
    let (lambda2, fiedler) = algebraic_connectivity(&weighted)?;

    let resolved = format!(
        "command = connectivity\nmode = {mode}\nuniform_weight = {}\n{}",
        uniform_weight.map_or_else(|| "none".to_owned(), |w| format!("{w:?}")),
        config::render_resolved(&cfg)
    );
    let mut out = provenance_header(cli.seed, &resolved);
    writeln!(out, "lambda2 = {lambda2:?}").expect("string write");
    if cli.verbose > 0 {
        let entries: Vec<String> = fiedler.iter().map(|v| format!("{v:?}")).collect();
        writeln!(out, "fiedler = [{}]", entries.join(", ")).expect("string write");
    }
    Ok(out)
}

fn run_harm(
    cli: &Cli,
    grid: Option<&str>,
    candidates: Option<&str>,
    uniform_weight: Option<f64>,
    mode: &str,
) -> Result<String> {
    let mut cfg = load_experiment(cli)?;
    let mode = parse_single_mode(mode)?;
    let topology = resolve_topology(&mut cfg, grid)?;
    let candidates: Vec<NodeId> = match candidates {
        Some(text) => text
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| {
                    Error::validation(format!("--candidates expects node ids, got {t:?}"))
                })
            })
            .collect::<Result<_>>()?,
        None => topology.node_ids().to_vec(),
    };
    let source = weight_source(&cfg, uniform_weight, mode);
    let ranking = harm_ranking(&topology, &candidates, &source)?;

    let resolved = format!(
        "command = harm\nmode = {mode}\nuniform_weight = {}\ncandidates = {}\n{}",
        uniform_weight.map_or_else(|| "none".to_owned(), |w| format!("{w:?}")),
        candidates.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "),
        config::render_resolved(&cfg)
    );
    let mut out = provenance_header(cli.seed, &resolved);
    writeln!(out, "# baseline lambda2 = {:?}", ranking.baseline_lambda2).expect("string write");
    writeln!(out, "node,lambda2_after,delta").expect("string write");
    for entry in &ranking.entries {
        writeln!(out, "{},{:?},{:?}", entry.node, entry.lambda2_after, entry.delta)
            .expect("string write");
    }
    Ok(out)
}

struct RecoverArgs<'a> {
    removed: NodeId,
    groups: &'a str,
    mu_step: f64,
    mu_cap: f64,
    target: Option<f64>,
    margin: f64,
    uniform_weight: Option<f64>,
}

fn run_recover(cli: &Cli, grid: Option<&str>, args: &RecoverArgs, mode: &str) -> Result<String> {
    let mut cfg = load_experiment(cli)?;
    let mode = parse_single_mode(mode)?;
    let topology = resolve_topology(&mut cfg, grid)?;
    let groups: Vec<Vec<NodeId>> = args
        .groups
        .split(';')
        .map(|part| {
            part.split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| {
                        Error::validation(format!("--groups expects node ids, got {t:?}"))
                    })
                })
                .collect::<Result<Vec<NodeId>>>()
        })
        .collect::<Result<_>>()?;
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::validation(
            "--groups expects ';'-separated groups of space-separated node ids, like \"5;4 6 8\"",
        ));
    }
    let source = weight_source(&cfg, args.uniform_weight, mode);

    let target = match args.target {
        Some(t) => t,
        None => {
            if !(args.margin.is_finite() && args.margin > 0.0) {
                return Err(Error::validation(format!(
                    "--margin must be positive, got {}",
                    args.margin
                )));
            }
            let harmed = weigh_topology(&remove_node(&topology, args.removed)?, &source)?;
            let (harmed_lambda2, _) = algebraic_connectivity(&harmed)?;
            harmed_lambda2 + args.margin
        }
    };
    let plans = recovery_plans(
        &topology,
        Some(args.removed),
        &groups,
        args.mu_step,
        args.mu_cap,
        target,
        &source,
    )?;

    let group_labels: Vec<String> = groups
        .iter()
        .map(|g| g.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("+"))
        .collect();
    let resolved = format!(
        "command = recover\nmode = {mode}\nremoved = {}\ngroups = {}\nmu_step = {:?}\n\
         mu_cap = {:?}\ntarget = {target:?}\nuniform_weight = {}\n{}",
        args.removed,
        group_labels.join(";"),
        args.mu_step,
        args.mu_cap,
        args.uniform_weight.map_or_else(|| "none".to_owned(), |w| format!("{w:?}")),
        config::render_resolved(&cfg)
    );
    let mut out = provenance_header(cli.seed, &resolved);
    writeln!(out, "group,steps,total_mu_spent,achieved_lambda2,target_lambda2,infeasible")
        .expect("string write");
    for (label, plan) in group_labels.iter().zip(&plans) {
        writeln!(
            out,
            "{label},{},{:?},{:?},{:?},{}",
            plan.steps.len(),
            plan.total_mu_spent,
            plan.achieved_lambda2,
            plan.target_lambda2,
            plan.infeasible
        )
        .expect("string write");
    }
    Ok(out)
}

fn preset_by_name(name: &str, seed: u64) -> Result<ExperimentConfig> {
    match name {
        "group-sweep" => Ok(preset_group_sweep(seed)),
        "removal-sweep" => Ok(preset_removal_sweep(seed)),
        "harm" => Ok(preset_harm_sweep(seed)),
        "collapse" => Ok(preset_collapse_sweep(seed)),
        other => Err(Error::validation(format!(
            "unknown preset {other:?} (expected one of {})",
            PRESETS.join(", ")
        ))),
    }
}

/// Runs the sweep and returns (content, output path from the config's
/// `[output]` section, if any). The `--output` flag takes precedence over
/// the config path; both absent means standard output.
fn run_sweep_command(cli: &Cli, preset: Option<&str>) -> Result<(String, Option<PathBuf>)> {
    let base_text = match (preset, &cli.config) {
        (Some(_), Some(_)) => {
            return Err(Error::validation("give either --preset or --config, not both"));
        }
        (Some(name), None) => config::render_resolved(&preset_by_name(name, cli.seed)?),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| {
            Error::validation(format!("cannot read config file {}: {e}", path.display()))
        })?,
        (None, None) => String::new(),
    };
    let cfg = config::load_config(&base_text, &cli.set, cli.seed)?;
    let rows = run_sweep(&cfg)?;
    if cli.verbose > 0 {
        eprintln!("sweep: {} rows from experiment {:?}", rows.len(), cfg.experiment);
    }
    let resolved = config::render_resolved(&cfg);
    let mut out = provenance_header(cli.seed, &resolved);
    out.push_str(&render_table(&rows));
    Ok((out, cfg.output_path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_parses_the_six_subcommands() {
        for args in [
            vec!["qconn", "capacity"],
            vec!["qconn", "link"],
            vec!["qconn", "connectivity"],
            vec!["qconn", "harm"],
            vec!["qconn", "recover"],
            vec!["qconn", "sweep"],
        ] {
            assert!(Cli::try_parse_from(&args).is_ok(), "{args:?}");
        }
    }

    #[test]
    fn global_flags_parse_anywhere() {
        let cli = Cli::try_parse_from([
            "qconn",
            "sweep",
            "--preset",
            "group-sweep",
            "--seed",
            "7",
            "--set",
            "physics.eta=0.2",
            "--output",
            "out.csv",
            "-v",
        ])
        .unwrap();
        assert_eq!(cli.seed, 7);
        assert_eq!(cli.set, vec!["physics.eta=0.2".to_owned()]);
        assert_eq!(cli.output, Some(PathBuf::from("out.csv")));
        assert_eq!(cli.verbose, 1);
    }

    #[test]
    fn seed_defaults_to_zero() {
        let cli = Cli::try_parse_from(["qconn", "capacity"]).unwrap();
        assert_eq!(cli.seed, 0);
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        assert!(Cli::try_parse_from(["qconn", "frobnicate"]).is_err());
    }

    #[test]
    fn preset_names_resolve_and_unknown_names_fail() {
        for name in PRESETS {
            assert!(preset_by_name(name, 0).is_ok(), "{name}");
        }
        let err = preset_by_name("fig-two", 0).unwrap_err();
        assert!(err.to_string().contains("group-sweep"));
    }

    #[test]
    fn recover_group_grammar_rejects_empty_groups() {
        let cli = Cli::try_parse_from(["qconn", "recover", "--groups", "5;;6"]).unwrap();
        let err = execute(&cli).unwrap_err();
        assert!(err.to_string().contains("--groups"), "{err}");
    }

    #[test]
    fn provenance_header_embeds_the_resolved_config() {
        let header = provenance_header(3, "a = 1\nb = 2\n");
        let mut lines = header.lines();
        let first = lines.next().unwrap();
        assert!(first.starts_with("# qconn "));
        assert!(first.contains("seed=3"));
        assert!(first.contains("config-digest="));
        assert_eq!(lines.next(), Some("# a = 1"));
        assert_eq!(lines.next(), Some("# b = 2"));
    }
}
