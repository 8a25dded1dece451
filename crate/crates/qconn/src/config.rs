//! Sectioned key-value experiment configuration.
//!
//! The on-disk format is a flat text document: `[section]` headers, one
//! `key = value` pair per line, `#` comments. Five sections are recognized —
//! `topology`, `physics`, `learning`, `sweep`, and `output` — and every key
//! is optional: an empty document resolves to the default 3×3-grid
//! experiment. Unknown sections, unknown keys, duplicates, and type errors
//! are all rejected, and all problems in a document are reported together
//! rather than first-only.
//!
//! Inline overrides (`section.key=value`, the CLI's `--set`) are applied on
//! top of the parsed document through the same schema checks, replacing any
//! file-provided value.
//!
//! [`render_resolved`] writes the fully defaulted config back out in
//! canonical form; its [`config_digest`] is the fingerprint the CLI prints
//! in every provenance header, so any output row can be traced to the exact
//! configuration that produced it.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::channel::{CapacityMode, ChannelFamily, ChannelModel, ProbMode};
use crate::error::{Error, Result};
use crate::sim::{ExperimentConfig, SweepGroup, TopologySpec};
use crate::spectral::NodeId;

const SECTIONS: [&str; 5] = ["topology", "physics", "learning", "sweep", "output"];

/// Parses a `ROWSxCOLS` grid shorthand like `3x3`.
pub fn parse_grid(text: &str) -> Option<(u32, u32)> {
    let (r, c) = text.split_once(['x', 'X'])?;
    Some((r.trim().parse().ok()?, c.trim().parse().ok()?))
}

/// A parsed but untyped config document: section → key → (value, line).
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    sections: BTreeMap<String, BTreeMap<String, (String, usize)>>,
}

impl RawConfig {
    fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(|(v, _)| v.as_str())
    }

    /// Sets one value, replacing anything the document provided. The
    /// section and key still go through schema validation at resolve time.
    pub fn set(&mut self, section: &str, key: &str, value: &str) {
        self.sections
            .entry(section.to_owned())
            .or_default()
            .insert(key.to_owned(), (value.to_owned(), 0));
    }
}

/// Parses the document syntax: sections, `key = value` lines, comments.
/// Collects every malformed line, unknown section, and duplicate key.
pub fn parse_config(text: &str) -> Result<RawConfig> {
    let mut raw = RawConfig::default();
    let mut problems = Vec::new();
    let mut current: Option<String> = None;
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            match name.strip_suffix(']') {
                Some(name) if SECTIONS.contains(&name) => {
                    current = Some(name.to_owned());
                    raw.sections.entry(name.to_owned()).or_default();
                }
                Some(name) => {
                    problems.push(format!(
                        "line {line_no}: unknown section [{name}] (expected one of {})",
                        SECTIONS.join(", ")
                    ));
                    current = None;
                }
                None => problems.push(format!("line {line_no}: unterminated section header")),
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            problems.push(format!("line {line_no}: expected `key = value`, got {line:?}"));
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            problems.push(format!("line {line_no}: empty key"));
            continue;
        }
        let Some(section) = &current else {
            problems.push(format!(
                "line {line_no}: key {key:?} appears before any [section] header"
            ));
            continue;
        };
        let entries = raw.sections.get_mut(section).expect("section was inserted");
        if entries.contains_key(key) {
            problems.push(format!(
                "line {line_no}: duplicate key {key:?} in section [{section}]"
            ));
        } else {
            entries.insert(key.to_owned(), (value.to_owned(), line_no));
        }
    }
    if problems.is_empty() { Ok(raw) } else { Err(Error::Config(problems)) }
}

/// Applies `section.key=value` override strings on top of a parsed document.
pub fn apply_overrides(raw: &mut RawConfig, overrides: &[String]) -> Result<()> {
    let mut problems = Vec::new();
    for spec in overrides {
        let Some((path, value)) = spec.split_once('=') else {
            problems.push(format!("override {spec:?}: expected section.key=value"));
            continue;
        };
        let Some((section, key)) = path.trim().split_once('.') else {
            problems.push(format!(
                "override {spec:?}: key must be section-qualified, like physics.eta"
            ));
            continue;
        };
        let (section, key) = (section.trim(), key.trim());
        if section.is_empty() || key.is_empty() {
            problems.push(format!("override {spec:?}: empty section or key"));
            continue;
        }
        raw.set(section, key, value.trim());
    }
    if problems.is_empty() { Ok(()) } else { Err(Error::Config(problems)) }
}

struct Resolver<'a> {
    raw: &'a RawConfig,
    problems: Vec<String>,
}

impl Resolver<'_> {
    fn check_schema(&mut self) {
        for (section, entries) in &self.raw.sections {
            let known: &[&str] = match section.as_str() {
                "topology" => &["grid", "nodes", "edges"],
                "physics" => &["f_ref", "eta", "p_opt", "p_dark", "n_det", "mu"],
                "learning" => &["alpha", "iterations", "window", "rate_scale"],
                "sweep" => &[
                    "experiment",
                    "modes",
                    "family",
                    "p_mode",
                    "group",
                    "mu_values",
                    "removals",
                ],
                "output" => &["path"],
                other => {
                    self.problems.push(format!("unknown section [{other}]"));
                    continue;
                }
            };
            for (key, (_, line)) in entries {
                let ok = known.contains(&key.as_str())
                    || (section == "sweep" && key.strip_prefix("group.").is_some());
                if !ok {
                    self.problems.push(format!(
                        "line {line}: unknown key {key:?} in section [{section}] \
                         (expected one of {})",
                        known.join(", ")
                    ));
                }
            }
        }
    }

    fn parse_with<T>(
        &mut self,
        section: &str,
        key: &str,
        what: &str,
        parse: impl Fn(&str) -> Option<T>,
    ) -> Option<T> {
        let value = self.raw.get(section, key)?;
        match parse(value) {
            Some(v) => Some(v),
            None => {
                self.problems.push(format!(
                    "{section}: {key}: expected {what}, got {value:?}"
                ));
                None
            }
        }
    }

    fn f64(&mut self, section: &str, key: &str) -> Option<f64> {
        self.parse_with(section, key, "a number", |v| v.parse().ok())
    }

    fn u32(&mut self, section: &str, key: &str) -> Option<u32> {
        self.parse_with(section, key, "a non-negative integer", |v| v.parse().ok())
    }

    fn node_list(&mut self, section: &str, key: &str) -> Option<Vec<NodeId>> {
        self.parse_with(section, key, "space-separated node ids", |v| {
            v.split_whitespace().map(|t| t.parse().ok()).collect()
        })
    }

    fn f64_list(&mut self, section: &str, key: &str) -> Option<Vec<f64>> {
        self.parse_with(section, key, "space-separated numbers", |v| {
            v.split_whitespace().map(|t| t.parse().ok()).collect()
        })
    }

    fn topology(&mut self) -> Option<TopologySpec> {
        let grid = self.parse_with("topology", "grid", "ROWSxCOLS, like 3x3", parse_grid);
        let nodes = self.node_list("topology", "nodes");
        let edges = self.parse_with(
            "topology",
            "edges",
            "space-separated i-j pairs, like 1-2 2-3",
            |v| {
                v.split_whitespace()
                    .map(|t| {
                        let (i, j) = t.split_once('-')?;
                        Some((i.parse().ok()?, j.parse().ok()?))
                    })
                    .collect::<Option<Vec<(NodeId, NodeId)>>>()
            },
        );
        let explicit = nodes.is_some() || edges.is_some();
        match (grid, explicit) {
            (Some(_), true) => {
                self.problems.push(
                    "topology: give either grid or nodes/edges, not both".to_owned(),
                );
                None
            }
            (Some((rows, cols)), false) => Some(TopologySpec::Grid { rows, cols }),
            (None, true) => match (nodes, edges) {
                (Some(nodes), Some(edges)) => Some(TopologySpec::Explicit { nodes, edges }),
                _ => {
                    if self.raw.get("topology", "grid").is_none() {
                        self.problems.push(
                            "topology: nodes and edges must be given together".to_owned(),
                        );
                    }
                    None
                }
            },
            (None, false) => Some(TopologySpec::Grid { rows: 3, cols: 3 }),
        }
    }

    fn modes(&mut self) -> Option<Vec<CapacityMode>> {
        self.parse_with(
            "sweep",
            "modes",
            "product, entangled, both, or a space-separated list",
            |v| {
                if v == "both" {
                    return Some(vec![CapacityMode::Product, CapacityMode::Entangled]);
                }
                v.split_whitespace()
                    .map(|t| match t {
                        "product" => Some(CapacityMode::Product),
                        "entangled" => Some(CapacityMode::Entangled),
                        _ => None,
                    })
                    .collect()
            },
        )
    }

    fn family(&mut self) -> Option<ChannelFamily> {
        self.parse_with(
            "sweep",
            "family",
            "random-rotation, identity, rotation:<radians>, or depolarizing:<q>",
            |v| match v {
                "random-rotation" => Some(ChannelFamily::RandomRotation),
                other => other.parse::<ChannelModel>().ok().map(ChannelFamily::Fixed),
            },
        )
    }

    fn p_mode(&mut self) -> Option<ProbMode> {
        self.parse_with("sweep", "p_mode", "random or optimized", |v| match v {
            "random" => Some(ProbMode::Random),
            "optimized" => Some(ProbMode::Optimized),
            _ => None,
        })
    }

    fn groups(&mut self) -> Vec<SweepGroup> {
        let Some(entries) = self.raw.sections.get("sweep") else {
            return Vec::new();
        };
        let labeled: Vec<(String, String)> = entries
            .iter()
            .filter(|(key, _)| *key == "group" || key.starts_with("group."))
            .map(|(key, (value, _))| (key.clone(), value.clone()))
            .collect();
        let mut groups = Vec::new();
        for (key, value) in labeled {
            let nodes: Option<Vec<NodeId>> =
                value.split_whitespace().map(|t| t.parse().ok()).collect();
            let Some(nodes) = nodes else {
                self.problems.push(format!(
                    "sweep: {key}: expected space-separated node ids, got {value:?}"
                ));
                continue;
            };
            match key.strip_prefix("group.") {
                Some(label) => groups.push(SweepGroup::labeled(label, nodes)),
                None => groups.push(SweepGroup::new(nodes)),
            }
        }
        groups
    }
}

/// Resolves a parsed document into a fully defaulted [`ExperimentConfig`].
///
/// Schema violations, type errors, and semantic validation failures are all
/// aggregated into one [`Error::Config`]; nothing stops at the first
/// problem. The master seed comes from the caller — the config format
/// deliberately has no seed key, so that all randomness flows from the
/// command line's single `--seed`.
pub fn resolve_config(raw: &RawConfig, master_seed: u64) -> Result<ExperimentConfig> {
    let mut r = Resolver { raw, problems: Vec::new() };
    r.check_schema();

    let mut cfg = ExperimentConfig::grid_default("sweep", master_seed);
    if let Some(topology) = r.topology() {
        cfg.topology = topology;
    }
    if let Some(v) = r.f64("physics", "f_ref") {
        cfg.physics.f_ref = v;
    }
    if let Some(v) = r.f64("physics", "eta") {
        cfg.physics.eta = v;
    }
    if let Some(v) = r.f64("physics", "p_opt") {
        cfg.physics.p_opt = v;
    }
    if let Some(v) = r.f64("physics", "p_dark") {
        cfg.physics.p_dark = v;
    }
    if let Some(v) = r.u32("physics", "n_det") {
        cfg.physics.n_det = v;
    }
    if let Some(v) = r.f64("physics", "mu") {
        cfg.physics.mu = v;
    }
    if let Some(v) = r.f64("learning", "alpha") {
        cfg.learner.alpha = v;
    }
    if let Some(v) = r.u32("learning", "iterations") {
        cfg.learner.iterations = v;
    }
    if let Some(v) = r.u32("learning", "window") {
        cfg.learner.window = v;
    }
    if let Some(v) = r.f64("learning", "rate_scale") {
        cfg.learner.rate_scale = v;
    }
    if let Some(v) = r.parse_with("sweep", "experiment", "a name", |v| {
        (!v.is_empty()).then(|| v.to_owned())
    }) {
        cfg.experiment = v;
    }
    if let Some(v) = r.modes() {
        cfg.modes = v;
    }
    if let Some(v) = r.family() {
        cfg.family = v;
    }
    if let Some(v) = r.p_mode() {
        cfg.p_mode = v;
    }
    let groups = r.groups();
    if !groups.is_empty() {
        cfg.groups = groups;
    }
    if let Some(v) = r.f64_list("sweep", "mu_values") {
        cfg.mu_values = v;
    }
    if let Some(v) = r.node_list("sweep", "removals") {
        cfg.removals = v;
    }
    if let Some(path) = raw.get("output", "path") {
        if !path.is_empty() && path != "-" {
            cfg.output_path = Some(PathBuf::from(path));
        }
    }

    let mut problems = r.problems;
    // Surface semantic problems (ranges, memberships) alongside the schema
    // and type problems so a bad document is reported in one pass.
    match cfg.validate() {
        Ok(_) => {}
        Err(Error::Config(more)) => problems.extend(more),
        Err(other) => problems.push(other.to_string()),
    }
    if problems.is_empty() { Ok(cfg) } else { Err(Error::Config(problems)) }
}

/// Convenience: parse, override, and resolve in one step.
pub fn load_config(text: &str, overrides: &[String], master_seed: u64) -> Result<ExperimentConfig> {
    let mut raw = parse_config(text)?;
    apply_overrides(&mut raw, overrides)?;
    resolve_config(&raw, master_seed)
}

fn render_family(family: &ChannelFamily) -> String {
    match family {
        ChannelFamily::RandomRotation => "random-rotation".to_owned(),
        ChannelFamily::Fixed(ChannelModel::Depolarizing(q)) => format!("depolarizing:{q:?}"),
        ChannelFamily::Fixed(ChannelModel::Unitary(u)) => {
            let c = u.get(0, 0);
            let s = u.get(1, 0);
            let is_real_rotation = u.rows() == 2
                && u.cols() == 2
                && c.im.abs() < 1e-12
                && s.im.abs() < 1e-12
                && (u.get(0, 1).re + s.re).abs() < 1e-12
                && (u.get(1, 1).re - c.re).abs() < 1e-12;
            if !is_real_rotation {
                return "custom-unitary".to_owned();
            }
            let theta = s.re.atan2(c.re);
            if theta == 0.0 { "identity".to_owned() } else { format!("rotation:{theta:?}") }
        }
    }
}

/// Renders the fully resolved config in canonical document form, defaults
/// included — the text the provenance digest is computed over.
pub fn render_resolved(cfg: &ExperimentConfig) -> String {
    let mut out = String::new();
    out.push_str("[topology]\n");
    match &cfg.topology {
        TopologySpec::Grid { rows, cols } => {
            out.push_str(&format!("grid = {rows}x{cols}\n"));
        }
        TopologySpec::Explicit { nodes, edges } => {
            let nodes: Vec<String> = nodes.iter().map(u32::to_string).collect();
            let edges: Vec<String> = edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
            out.push_str(&format!("nodes = {}\n", nodes.join(" ")));
            out.push_str(&format!("edges = {}\n", edges.join(" ")));
        }
    }
    out.push_str("[physics]\n");
    let p = &cfg.physics;
    out.push_str(&format!("f_ref = {:?}\n", p.f_ref));
    out.push_str(&format!("eta = {:?}\n", p.eta));
    out.push_str(&format!("p_opt = {:?}\n", p.p_opt));
    out.push_str(&format!("p_dark = {:?}\n", p.p_dark));
    out.push_str(&format!("n_det = {}\n", p.n_det));
    out.push_str(&format!("mu = {:?}\n", p.mu));
    out.push_str("[learning]\n");
    let l = &cfg.learner;
    out.push_str(&format!("alpha = {:?}\n", l.alpha));
    out.push_str(&format!("iterations = {}\n", l.iterations));
    out.push_str(&format!("window = {}\n", l.window));
    out.push_str(&format!("rate_scale = {:?}\n", l.rate_scale));
    out.push_str("[sweep]\n");
    out.push_str(&format!("experiment = {}\n", cfg.experiment));
    let modes: Vec<&str> = cfg.modes.iter().map(|m| m.as_str()).collect();
    out.push_str(&format!("modes = {}\n", modes.join(" ")));
    out.push_str(&format!("family = {}\n", render_family(&cfg.family)));
    let p_mode = match cfg.p_mode {
        ProbMode::Random => "random",
        ProbMode::Optimized => "optimized",
    };
    out.push_str(&format!("p_mode = {p_mode}\n"));
    for group in &cfg.groups {
        let nodes: Vec<String> = group.nodes.iter().map(u32::to_string).collect();
        out.push_str(&format!("group.{} = {}\n", group.label, nodes.join(" ")));
    }
    let mu: Vec<String> = cfg.mu_values.iter().map(|m| format!("{m:?}")).collect();
    out.push_str(&format!("mu_values = {}\n", mu.join(" ")));
    let removals: Vec<String> = cfg.removals.iter().map(u32::to_string).collect();
    out.push_str(&format!("removals = {}\n", removals.join(" ")));
    out.push_str("[output]\n");
    let path = cfg
        .output_path
        .as_ref()
        .map_or_else(|| "-".to_owned(), |p| p.display().to_string());
    out.push_str(&format!("path = {path}\n"));
    out
}

/// FNV-1a fingerprint of a rendered config, formatted as 16 hex digits.
pub fn config_digest(rendered: &str) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in rendered.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}
