//! Command-line front end for Boolean attribute models.
//!
//! Exit codes: 0 for YES (or a model that holds), 1 for NO, 2 for input
//! errors, 3 when a node or time limit stops the solver.

mod sources;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bam_core::bounds::{cardinality_windows, lower_bound_k, upper_bound_k, Infeasibility};
use bam_core::format::{parse_model, parse_profile, write_model, write_model_parts, write_profile};
use bam_core::partial::{solve_cares_given, solve_has_given};
use bam_core::reductions::{
    coloring_to_bam, rxc3_to_has, sat_to_cares_k6, sat_to_cares_m3, ReductionInstance,
};
use bam_core::search::{
    dfs_solve, oracle_solve_with, solve_auto, solve_min_k, Engine, MinK, SearchConfig,
};
use bam_core::special::uniform_length_solve;
use bam_core::twosat::solve_k_le_2;
use bam_core::twovoter::{min_k_two_voters, value_computation};
use bam_core::{
    verify, AttributeModel, BamError, Decision, PreferenceProfile, SearchStats, SolveOutcome,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "bam",
    version,
    about = "Boolean attribute models for preference profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Limits {
    /// Emit a single JSON object instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "MS")]
    time_limit_ms: Option<u64>,
    #[arg(long, value_name = "N")]
    node_limit: Option<u64>,
    /// Worker threads for the brute-force engine.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Limits {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            node_limit: self.node_limit,
            time_limit_ms: self.time_limit_ms,
            threads: self.threads.max(1),
            ..SearchConfig::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a model explains a profile.
    Verify {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a model with k attributes exists.
    Solve {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SolveEngine::Auto)]
        engine: SolveEngine,
        #[command(flatten)]
        limits: Limits,
    },
    /// Smallest k admitting a model.
    MinK {
        #[arg(long)]
        profile: PathBuf,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Print the per-type values of the two-voter algorithm.
        #[arg(long)]
        explain: bool,
        #[arg(long, value_enum, default_value_t = MinEngine::Auto)]
        engine: MinEngine,
        #[command(flatten)]
        limits: Limits,
    },
    /// Find has sets for the cares sets in a cares-only model file.
    SolveCares {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Find cares sets for the has sets in a has-only model file.
    SolveHas {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Write the witness here instead of printing it.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Lower and upper bounds on k, and the cardinality windows at a given k.
    Bounds {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build an instance from a source problem, or a random profile.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        /// Source instance: edge list, clause list or RXC3 set list.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output path for the profile.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Output path for the partial model of cares- or has-given instances.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        alternatives: usize,
        #[arg(long, default_value_t = 3)]
        voters: usize,
        /// Longest order in a random profile; defaults to all alternatives.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SolveEngine {
    Auto,
    Twovoter,
    Twosat,
    Uniform,
    Search,
    Oracle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MinEngine {
    Auto,
    Twovoter,
    Search,
    Oracle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GenerateKind {
    Coloring,
    SatM3,
    SatK6,
    Rxc3,
    Random,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<BamError> for Failure {
    fn from(e: BamError) -> Self {
        let code = if e.is_resource_limit() {
            EXIT_LIMIT
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path, e: BamError) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn load_profile(path: &Path) -> Result<PreferenceProfile, Failure> {
    parse_profile(&read(path)?).map_err(|e| with_path(path, e))
}

#[derive(Serialize)]
struct Bounds {
    lower: usize,
    upper: usize,
}

impl Bounds {
    fn of(profile: &PreferenceProfile) -> Self {
        Bounds {
            lower: lower_bound_k(profile),
            upper: upper_bound_k(profile),
        }
    }
}

/// The JSON result object; text output is rendered from the same data.
#[derive(Serialize)]
struct Report {
    decision: Decision,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    engine: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    explain: Option<serde_json::Value>,
}

impl Report {
    fn from_outcome(
        profile: &PreferenceProfile,
        k: usize,
        out: SolveOutcome,
        engine: &'static str,
    ) -> Self {
        Report {
            decision: out.decision,
            k,
            witness: out.witness.map(|w| write_model(profile, &w)),
            stats: out.stats,
            bounds: Some(Bounds::of(profile)),
            engine: Some(engine),
            reason: out.reason,
            explain: None,
        }
    }

    fn exit_code(&self) -> i32 {
        match self.decision {
            Decision::Yes => EXIT_YES,
            Decision::No => EXIT_NO,
        }
    }

    /// Writes the witness to `path` when given; it is then left out of the
    /// printed output.
    fn store_witness(&mut self, path: Option<&Path>) -> Result<(), Failure> {
        if let (Some(path), Some(text)) = (path, &self.witness) {
            write_file(path, text)?;
            self.witness = None;
        }
        Ok(())
    }

    fn text(&self) -> String {
        let mut out = match (&self.decision, &self.reason) {
            (Decision::Yes, _) => "YES\n".to_string(),
            (Decision::No, Some(reason)) => format!("NO: {reason}\n"),
            (Decision::No, None) => "NO\n".to_string(),
        };
        out.push_str(&self.stats_line());
        if let Some(w) = &self.witness {
            out.push_str(w);
        }
        out
    }

    fn stats_line(&self) -> String {
        let mut line = String::from("#");
        if let Some(engine) = self.engine {
            line.push_str(&format!(" engine: {engine},"));
        }
        line.push_str(&format!(
            " nodes: {}, elapsed_ms: {}",
            self.stats.nodes, self.stats.elapsed_ms
        ));
        if let Some(b) = &self.bounds {
            line.push_str(&format!(", bounds: [{}, {}]", b.lower, b.upper));
        }
        line.push('\n');
        line
    }
}

fn emit(out: &mut dyn Write, json: bool, value: &impl Serialize, text: impl FnOnce() -> String) {
    let rendered = if json {
        let mut s = serde_json::to_string(value).expect("report serializes");
        s.push('\n');
        s
    } else {
        text()
    };
    let _ = out.write_all(rendered.as_bytes());
}

/// Runs the CLI on `args` (including the program name) against stdout and
/// stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Verify {
            profile,
            model,
            json,
        } => cmd_verify(&profile, &model, json, out),
        Command::Solve {
            profile,
            k,
            model,
            engine,
            limits,
        } => cmd_solve(&profile, k, model.as_deref(), engine, &limits, out),
        Command::MinK {
            profile,
            model,
            explain,
            engine,
            limits,
        } => cmd_min_k(
            &profile,
            model.as_deref(),
            explain,
            engine,
            &limits,
            out,
            err,
        ),
        Command::SolveCares {
            profile,
            model,
            witness,
            json,
        } => cmd_partial(&profile, &model, witness.as_deref(), json, true, out),
        Command::SolveHas {
            profile,
            model,
            witness,
            json,
        } => cmd_partial(&profile, &model, witness.as_deref(), json, false, out),
        Command::Bounds { profile, k, json } => cmd_bounds(&profile, k, json, out),
        Command::Generate {
            kind,
            input,
            profile,
            model,
            seed,
            alternatives,
            voters,
            max_len,
            json,
        } => {
            let random = RandomShape {
                seed,
                alternatives,
                voters,
                max_len,
            };
            cmd_generate(
                kind,
                input.as_deref(),
                profile.as_deref(),
                model.as_deref(),
                &random,
                json,
                out,
            )
        }
    }
}

fn cmd_verify(
    profile_path: &Path,
    model_path: &Path,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let profile = load_profile(profile_path)?;
    let model = parse_model(&read(model_path)?, &profile)
        .map_err(|e| with_path(model_path, e))?
        .into_model();
    let verdict = verify(&profile, &model)?;
    let violation = verdict.violation().map(|v| v.describe(&profile));
    let report = json!({
        "decision": if verdict.holds() { Decision::Yes } else { Decision::No },
        "k": model.k(),
        "stats": SearchStats::default(),
        "violation": violation,
    });
    emit(out, json, &report, || match &violation {
        None => "explained\n".to_string(),
        Some(v) => format!("violated: {v}\n"),
    });
    Ok(if verdict.holds() { EXIT_YES } else { EXIT_NO })
}

fn cmd_solve(
    profile_path: &Path,
    k: usize,
    model_out: Option<&Path>,
    engine: SolveEngine,
    limits: &Limits,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let profile = load_profile(profile_path)?;
    let cfg = limits.config();
    let (outcome, name) = match engine {
        SolveEngine::Auto => {
            let (o, e) = solve_auto(&profile, k, &cfg)?;
            (o, e.name())
        }
        SolveEngine::Twovoter => {
            let (min, witness) = min_k_two_voters(&profile)?;
            let o = if k >= min {
                SolveOutcome::yes(witness.padded(k), SearchStats::default())
            } else {
                SolveOutcome::no_because(
                    format!("two-voter minimum is {min}"),
                    SearchStats::default(),
                )
            };
            (o, Engine::TwoVoter.name())
        }
        SolveEngine::Twosat => {
            if k > 2 {
                return Err(input_error("the twosat engine decides k <= 2 only"));
            }
            (solve_k_le_2(&profile, k)?, Engine::TwoSat.name())
        }
        SolveEngine::Uniform => (
            uniform_length_solve(&profile, k)?,
            Engine::UniformLength.name(),
        ),
        SolveEngine::Search => (dfs_solve(&profile, k, &cfg)?, Engine::Search.name()),
        SolveEngine::Oracle => (oracle_solve_with(&profile, k, &cfg)?, "oracle"),
    };
    let mut report = Report::from_outcome(&profile, k, outcome, name);
    report.store_witness(model_out)?;
    emit(out, limits.json, &report, || report.text());
    Ok(report.exit_code())
}

/// Counts `k` up from the lower bound with a fixed-`k` engine, sharing one
/// node and time budget across all steps.
fn count_up(
    profile: &PreferenceProfile,
    cfg: &SearchConfig,
    mut decide: impl FnMut(usize, &SearchConfig) -> bam_core::Result<SolveOutcome>,
) -> Result<(usize, AttributeModel, SearchStats), Failure> {
    let start = Instant::now();
    let mut nodes = 0u64;
    let mut k = lower_bound_k(profile);
    loop {
        let elapsed = start.elapsed().as_millis() as u64;
        let step = SearchConfig {
            node_limit: cfg.node_limit.map(|n| n.saturating_sub(nodes).max(1)),
            time_limit_ms: cfg.time_limit_ms.map(|t| t.saturating_sub(elapsed).max(1)),
            ..cfg.clone()
        };
        let outcome = match decide(k, &step) {
            Ok(o) => o,
            Err(BamError::ResourceLimit { nodes: n, .. }) => {
                return Err(BamError::ResourceLimitAt {
                    k,
                    nodes: nodes + n,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                }
                .into())
            }
            Err(e) => return Err(e.into()),
        };
        nodes += outcome.stats.nodes;
        if let Some(w) = outcome.witness {
            let stats = SearchStats {
                nodes,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            return Ok((k, w, stats));
        }
        k += 1;
    }
}

fn cmd_min_k(
    profile_path: &Path,
    model_out: Option<&Path>,
    explain: bool,
    engine: MinEngine,
    limits: &Limits,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let profile = load_profile(profile_path)?;
    let cfg = limits.config();
    let result = match engine {
        MinEngine::Auto => solve_min_k(&profile, &cfg)?,
        MinEngine::Twovoter => {
            let (k, witness) = min_k_two_voters(&profile)?;
            MinK {
                k,
                witness,
                stats: SearchStats::default(),
                engine: Engine::TwoVoter,
            }
        }
        MinEngine::Search => {
            let (k, witness, stats) = count_up(&profile, &cfg, |k, c| dfs_solve(&profile, k, c))?;
            MinK {
                k,
                witness,
                stats,
                engine: Engine::Search,
            }
        }
        MinEngine::Oracle => {
            let (k, witness, stats) =
                count_up(&profile, &cfg, |k, c| oracle_solve_with(&profile, k, c))?;
            MinK {
                k,
                witness,
                stats,
                engine: Engine::Search,
            }
        }
    };
    let engine_name = if engine == MinEngine::Oracle {
        "oracle"
    } else {
        result.engine.name()
    };

    let mut table = None;
    let mut explain_json = None;
    if explain {
        if profile.num_voters() == 2 {
            let s = value_computation(&profile)?;
            explain_json = Some(json!({
                "M_u": s.m_u,
                "M_w": s.m_w,
                "M_uw": s.m_uw,
                "k": s.k,
                "S_u": s.s_u,
                "S_w": s.s_w,
                "S_uw": s.s_uw,
            }));
            table = Some(s.table(&profile));
        } else {
            let _ = writeln!(err, "note: --explain applies to two-voter profiles only");
        }
    }

    let mut report = Report {
        decision: Decision::Yes,
        k: result.k,
        witness: Some(write_model(&profile, &result.witness)),
        stats: result.stats,
        bounds: Some(Bounds::of(&profile)),
        engine: Some(engine_name),
        reason: None,
        explain: explain_json,
    };
    report.store_witness(model_out)?;
    emit(out, limits.json, &report, || {
        let mut text = format!("{}\n", report.k);
        text.push_str(&report.stats_line());
        if let Some(t) = &table {
            text.push_str(t);
        }
        if let Some(w) = &report.witness {
            text.push_str(w);
        }
        text
    });
    Ok(EXIT_YES)
}

fn cmd_partial(
    profile_path: &Path,
    model_path: &Path,
    witness_out: Option<&Path>,
    json: bool,
    cares_given: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let profile = load_profile(profile_path)?;
    let parsed = parse_model(&read(model_path)?, &profile).map_err(|e| with_path(model_path, e))?;
    let (outcome, engine) = if cares_given {
        if parsed.any_has() {
            return Err(input_error(format!(
                "{}: expected a cares-only model, found has lines",
                model_path.display()
            )));
        }
        (
            solve_cares_given(&profile, &parsed.cares, parsed.k)?,
            "cares-given",
        )
    } else {
        if parsed.any_cares() {
            return Err(input_error(format!(
                "{}: expected a has-only model, found cares lines",
                model_path.display()
            )));
        }
        (
            solve_has_given(&profile, &parsed.has, parsed.k)?,
            "has-given",
        )
    };
    let mut report = Report::from_outcome(&profile, parsed.k, outcome, engine);
    report.bounds = None;
    report.store_witness(witness_out)?;
    emit(out, json, &report, || report.text());
    Ok(report.exit_code())
}

fn describe_infeasibility(profile: &PreferenceProfile, why: Infeasibility) -> String {
    match why {
        Infeasibility::Voter {
            voter,
            min_cares,
            k,
        } => format!(
            "voter `{}` needs at least {min_cares} cared attributes but k = {k}",
            profile.voter_name(voter)
        ),
        Infeasibility::Alternative { alt, low, high } => format!(
            "alternative `{}` needs at least {low} and at most {high} attributes",
            profile.alternative_name(alt)
        ),
    }
}

fn cmd_bounds(
    profile_path: &Path,
    k: Option<usize>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let profile = load_profile(profile_path)?;
    let bounds = Bounds::of(&profile);
    let mut text = format!("lower: {}\nupper: {}\n", bounds.lower, bounds.upper);
    let mut value = json!({ "bounds": bounds });
    let mut code = EXIT_YES;
    if let Some(k) = k {
        match cardinality_windows(&profile, k) {
            Ok(w) => {
                text.push_str(&format!("windows at k = {k}:\n"));
                for (v, need) in w.min_cares.iter().enumerate() {
                    text.push_str(&format!("  cares {}: >= {need}\n", profile.voter_name(v)));
                }
                for (a, (lo, hi)) in w.has_window.iter().enumerate() {
                    text.push_str(&format!(
                        "  has {}: {lo}..{hi}\n",
                        profile.alternative_name(a)
                    ));
                }
                value["k"] = json!(k);
                value["windows"] = json!({
                    "min_cares": w.min_cares,
                    "has": w.has_window,
                });
            }
            Err(why) => {
                let reason = describe_infeasibility(&profile, why);
                text.push_str(&format!("no model with k = {k}: {reason}\n"));
                value["k"] = json!(k);
                value["decision"] = json!(Decision::No);
                value["reason"] = json!(reason);
                code = EXIT_NO;
            }
        }
    }
    emit(out, json, &value, || text);
    Ok(code)
}

struct RandomShape {
    seed: u64,
    alternatives: usize,
    voters: usize,
    max_len: Option<usize>,
}

fn random_profile(shape: &RandomShape) -> PreferenceProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    let m = shape.alternatives;
    let max_len = shape.max_len.unwrap_or(m).min(m);
    let alternatives: Vec<String> = (1..=m).map(|i| format!("c{i}")).collect();
    let voters: Vec<(String, Vec<String>)> = (1..=shape.voters)
        .map(|v| {
            let mut order: Vec<String> = alternatives.clone();
            order.shuffle(&mut rng);
            order.truncate(rng.gen_range(0..=max_len));
            (format!("v{v}"), order)
        })
        .collect();
    PreferenceProfile::new(&alternatives, &voters).expect("generated profile is well formed")
}

fn cmd_generate(
    kind: GenerateKind,
    input: Option<&Path>,
    profile_out: Option<&Path>,
    model_out: Option<&Path>,
    random: &RandomShape,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let source = |what: &str| -> Result<(String, &Path), Failure> {
        let path = input.ok_or_else(|| input_error(format!("--input with {what} is required")))?;
        Ok((read(path)?, path))
    };
    let instance: Option<ReductionInstance> = match kind {
        GenerateKind::Coloring => {
            let (text, path) = source("an edge list")?;
            Some(coloring_to_bam(
                &sources::parse_edges(&text).map_err(|e| with_path(path, e))?,
            ))
        }
        GenerateKind::SatM3 | GenerateKind::SatK6 => {
            let (text, path) = source("a clause list")?;
            let f = sources::parse_clauses(&text).map_err(|e| with_path(path, e))?;
            Some(if kind == GenerateKind::SatM3 {
                sat_to_cares_m3(&f)
            } else {
                sat_to_cares_k6(&f)
            })
        }
        GenerateKind::Rxc3 => {
            let (text, path) = source("an RXC3 set list")?;
            Some(rxc3_to_has(
                &sources::parse_sets(&text).map_err(|e| with_path(path, e))?,
            ))
        }
        GenerateKind::Random => None,
    };
    let (profile, k, model_text) = match instance {
        Some(inst) => {
            let model = match (&inst.has, &inst.cares) {
                (None, None) => None,
                (has, cares) => Some(write_model_parts(
                    &inst.profile,
                    inst.k,
                    has.as_deref(),
                    cares.as_deref(),
                )),
            };
            (inst.profile, Some(inst.k), model)
        }
        None => (random_profile(random), None, None),
    };
    let mut profile_text = String::new();
    if let Some(k) = k {
        profile_text.push_str(&format!("# k: {k}\n"));
    }
    profile_text.push_str(&write_profile(&profile));

    let mut summary = format!(
        "{} alternatives, {} voters",
        profile.num_alternatives(),
        profile.num_voters()
    );
    if let Some(k) = k {
        summary.push_str(&format!(", k = {k}"));
    }
    let mut text = String::new();
    match profile_out {
        Some(path) => {
            write_file(path, &profile_text)?;
            text.push_str(&format!(
                "wrote profile to {} ({summary})\n",
                path.display()
            ));
        }
        None => text.push_str(&profile_text),
    }
    if let Some(model) = &model_text {
        match model_out {
            Some(path) => {
                write_file(path, model)?;
                text.push_str(&format!("wrote model to {}\n", path.display()));
            }
            None => {
                text.push_str("# model\n");
                text.push_str(model);
            }
        }
    }
    let value = json!({
        "kind": kind.to_possible_value().map(|v| v.get_name().to_string()),
        "k": k,
        "alternatives": profile.num_alternatives(),
        "voters": profile.num_voters(),
        "profile": profile_text,
        "model": model_text,
    });
    emit(out, json, &value, || text);
    Ok(EXIT_YES)
}
