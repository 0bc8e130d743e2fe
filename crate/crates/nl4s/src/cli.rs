//! Command-line experiment runner.
//!
//! Every subcommand resolves one JSON config record: the file given with
//! `--config` (if any) with explicitly passed flags written over it. The
//! record is validated with unknown keys rejected before anything runs, and
//! is embedded verbatim in the run's `summary.json`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::evolution::{
    check_virial_law, concentration_scan, concentration_scan_direct, energy_trapping_check, evolve, fit_blowup,
    gaussian, limiting_profile_compare, make_virial_cutoff, EvolveConfig, Status,
};
use crate::exponents::{critical_exponents, ExponentSet};
use crate::groundstate::{sharp_constants, solve_ground_state, Equation, GroundStateOptions};
use crate::io::{read_field, write_field, write_json, write_trajectory_csv, VERSION};
use crate::profiles::{decompose, synth_sequence, ShiftLaw};
use crate::spectral::{sobolev_norm, Field, Grid};

#[derive(Debug, Parser)]
#[command(name = "nl4s", version, about = "Focusing fourth-order NLS experiments")]
pub struct Cli {
    /// Run directory for all outputs.
    #[arg(long, global = true, default_value = "nl4s-run")]
    pub out: PathBuf,
    /// JSON config for the subcommand; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical exponents of a (d, α) pair.
    Exponents(ExponentsArgs),
    /// Solve for the Sobolev or Lebesgue ground state.
    Groundstate(GroundStateArgs),
    /// Integrate from Gaussian or file initial data.
    Evolve(EvolveArgs),
    /// Check the localized virial law along a run.
    Virial(VirialArgs),
    /// Windowed Ḣ^γ concentration of a snapshot.
    Concentration(ConcentrationArgs),
    /// Align a snapshot with a ground state and measure the distance.
    LimitingProfile(LimitingArgs),
    /// Profile decomposition of snapshot files or a synthetic sequence.
    ProfileDecomp(DecompArgs),
}

#[derive(Debug, Args)]
pub struct ExponentsArgs {
    #[arg(short = 'd')]
    pub d: Option<usize>,
    #[arg(short = 'a', long = "alpha")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(short = 'd')]
    pub d: Option<usize>,
    #[arg(short = 'a', long = "alpha")]
    pub alpha: Option<f64>,
    /// Box side.
    #[arg(short = 'L')]
    pub length: Option<f64>,
    /// Points per axis (a power of two).
    #[arg(short = 'N')]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GroundStateArgs {
    #[arg(long, value_parser = ["sobolev", "lebesgue"])]
    pub equation: Option<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Gaussian initial data: amplitude.
    #[arg(long)]
    pub amplitude: Option<f64>,
    /// Gaussian initial data: width.
    #[arg(long)]
    pub width: Option<f64>,
    /// Initial data from a snapshot file instead of a Gaussian.
    #[arg(long)]
    pub initial: Option<PathBuf>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub dt0: Option<f64>,
    #[arg(long)]
    pub snapshot_every: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub blowup_factor: Option<f64>,
    /// S_gs for the energy-trapping monitor.
    #[arg(long)]
    pub s_gs: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VirialArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Cutoff radius R.
    #[arg(short = 'R', long = "radius")]
    pub r: Option<f64>,
    /// Drop the nonlinearity.
    #[arg(long)]
    pub linear: bool,
}

#[derive(Debug, Args)]
pub struct ConcentrationArgs {
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Window radius.
    #[arg(short = 'r', long = "window")]
    pub a: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LimitingArgs {
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
    #[arg(long)]
    pub ground_state: Option<PathBuf>,
    #[arg(short = 'a', long = "alpha")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DecompArgs {
    #[arg(short = 'a', long = "alpha")]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub l_max: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Snapshot files forming the sequence.
    pub files: Vec<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentsConfig {
    pub d: usize,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundStateConfig {
    #[serde(default = "sobolev")]
    pub equation: Equation,
    pub d: usize,
    pub alpha: f64,
    pub length: f64,
    pub n: usize,
    #[serde(default)]
    pub options: GroundStateOptions,
}

fn sobolev() -> Equation {
    Equation::Sobolev
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianSpec {
    pub amplitude: f64,
    pub width: f64,
    #[serde(default)]
    pub center: Vec<f64>,
    #[serde(default)]
    pub velocity: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialData {
    Gaussian(GaussianSpec),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveRunConfig {
    pub d: usize,
    pub alpha: f64,
    pub length: f64,
    pub n: usize,
    pub initial: InitialData,
    #[serde(default)]
    pub evolve: EvolveConfig,
    /// Enables the energy-trapping monitor.
    #[serde(default)]
    pub s_gs: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirialConfig {
    pub d: usize,
    pub alpha: f64,
    pub length: f64,
    pub n: usize,
    pub initial: InitialData,
    #[serde(default)]
    pub evolve: EvolveConfig,
    pub r: f64,
    #[serde(default)]
    pub linear: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConcentrationConfig {
    pub snapshot: PathBuf,
    pub gamma: f64,
    pub a: f64,
    /// Direct summation instead of the FFT convolution.
    #[serde(default)]
    pub direct: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitingConfig {
    pub snapshot: PathBuf,
    pub ground_state: PathBuf,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthRecipe {
    pub d: usize,
    pub length: f64,
    pub n: usize,
    pub profiles: Vec<GaussianSpec>,
    pub shift_law: ShiftLaw,
    pub noise_amp: f64,
    pub count: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SequenceSource {
    Files(Vec<PathBuf>),
    Synth(SynthRecipe),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompConfig {
    pub alpha: f64,
    #[serde(default = "four")]
    pub l_max: usize,
    /// Defaults to α + 2.
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default = "hundredth")]
    pub tol: f64,
    pub source: SequenceSource,
}

fn four() -> usize {
    4
}

fn hundredth() -> f64 {
    1e-2
}

#[derive(Serialize)]
struct Summary<'a, C: Serialize, R: Serialize> {
    version: &'static str,
    command: &'a str,
    config: &'a C,
    result: R,
}

/// Parses argv, runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    configure_threads();
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn configure_threads() {
    let n = std::env::var("NL4S_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    if n > 0 {
        // a pool already built by the host keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn load_base(path: Option<&Path>) -> Result<Map<String, Value>> {
    let Some(path) = path else {
        return Ok(Map::new());
    };
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(m)) => Ok(m),
        Ok(_) => Err(Error::Config(format!("{} must hold a JSON object", path.display()))),
        Err(e) => Err(Error::Config(format!("{}: {e}", path.display()))),
    }
}

/// Writes `v` at a dotted key path, creating objects on the way.
fn set(map: &mut Map<String, Value>, key: &str, v: Value) {
    match key.split_once('.') {
        None => {
            map.insert(key.to_string(), v);
        }
        Some((head, rest)) => {
            let entry = map.entry(head.to_string()).or_insert_with(|| json!({}));
            if !entry.is_object() {
                *entry = json!({});
            }
            set(entry.as_object_mut().expect("object"), rest, v);
        }
    }
}

struct Overrides(Vec<(&'static str, Value)>);

impl Overrides {
    fn new() -> Self {
        Overrides(Vec::new())
    }

    fn opt<T: Serialize>(&mut self, key: &'static str, v: &Option<T>) -> &mut Self {
        if let Some(v) = v {
            self.0.push((key, serde_json::to_value(v).expect("plain value")));
        }
        self
    }

    fn grid(&mut self, g: &GridArgs) -> &mut Self {
        self.opt("d", &g.d).opt("alpha", &g.alpha).opt("length", &g.length).opt("n", &g.n)
    }

    fn run(&mut self, r: &RunArgs) -> &mut Self {
        self.grid(&r.grid)
            .opt("initial.gaussian.amplitude", &r.amplitude)
            .opt("initial.gaussian.width", &r.width)
            .opt("initial.file", &r.initial)
            .opt("evolve.t_end", &r.t_end)
            .opt("evolve.dt0", &r.dt0)
            .opt("evolve.snapshot_every", &r.snapshot_every)
    }

    fn resolve<C: DeserializeOwned>(&self, config: Option<&Path>) -> Result<C> {
        let mut base = load_base(config)?;
        for (k, v) in &self.0 {
            set(&mut base, k, v.clone());
        }
        serde_json::from_value(Value::Object(base)).map_err(|e| Error::Config(e.to_string()))
    }
}

fn prepare_out(out: &Path) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| Error::io(out, e))
}

fn finish<C: Serialize, R: Serialize>(out: &Path, command: &str, config: &C, result: R) -> Result<()> {
    let summary = Summary {
        version: VERSION,
        command,
        config,
        result,
    };
    write_json(out.join("summary.json"), &summary)?;
    let text = serde_json::to_string_pretty(&summary.result).expect("serializable");
    // a closed stdout (e.g. piped into head) must not fail a finished run
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    Ok(())
}

fn cube(d: usize, n: usize, length: f64) -> Result<Grid> {
    Grid::cube(d, n, length)
}

fn initial_field(grid: &Grid, init: &InitialData) -> Result<Field> {
    match init {
        InitialData::Gaussian(g) => Ok(gaussian(grid, g.amplitude, g.width, &g.center, &g.velocity)),
        InitialData::File(p) => {
            let (f, _) = read_field(p)?;
            if f.grid() != grid {
                return Err(Error::BadShape(format!("{} does not match the configured grid", p.display())));
            }
            Ok(f)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let cfg_path = cli.config.as_deref();
    let out = cli.out.as_path();
    match &cli.command {
        Command::Exponents(a) => {
            let c: ExponentsConfig = Overrides::new().opt("d", &a.d).opt("alpha", &a.alpha).resolve(cfg_path)?;
            let e = critical_exponents(c.d, c.alpha)?;
            prepare_out(out)?;
            finish(out, "exponents", &c, e)
        }
        Command::Groundstate(a) => {
            let c: GroundStateConfig = Overrides::new()
                .opt("equation", &a.equation)
                .grid(&a.grid)
                .opt("options.tol", &a.tol)
                .opt("options.max_iter", &a.max_iter)
                .opt("options.seed", &a.seed)
                .resolve(cfg_path)?;
            run_groundstate(out, &c)
        }
        Command::Evolve(a) => {
            let c: EvolveRunConfig = Overrides::new()
                .run(&a.run)
                .opt("evolve.blowup_norm_factor", &a.blowup_factor)
                .opt("s_gs", &a.s_gs)
                .resolve(cfg_path)?;
            run_evolve(out, &c)
        }
        Command::Virial(a) => {
            let linear = a.linear.then_some(true);
            let c: VirialConfig = Overrides::new()
                .run(&a.run)
                .opt("r", &a.r)
                .opt("linear", &linear)
                .resolve(cfg_path)?;
            run_virial(out, &c)
        }
        Command::Concentration(a) => {
            let c: ConcentrationConfig = Overrides::new()
                .opt("snapshot", &a.snapshot)
                .opt("gamma", &a.gamma)
                .opt("a", &a.a)
                .resolve(cfg_path)?;
            let (f, t) = read_field(&c.snapshot)?;
            let r = if c.direct {
                concentration_scan_direct(&f, c.gamma, c.a)?
            } else {
                concentration_scan(&f, c.gamma, c.a)?
            };
            prepare_out(out)?;
            finish(out, "concentration", &c, json!({ "t": t, "concentration": r }))
        }
        Command::LimitingProfile(a) => {
            let c: LimitingConfig = Overrides::new()
                .opt("snapshot", &a.snapshot)
                .opt("ground_state", &a.ground_state)
                .opt("alpha", &a.alpha)
                .resolve(cfg_path)?;
            let (f, t) = read_field(&c.snapshot)?;
            let (q, _) = read_field(&c.ground_state)?;
            let e = critical_exponents(f.grid().dim(), c.alpha)?;
            let r = limiting_profile_compare(&f, &q, &e)?;
            prepare_out(out)?;
            finish(out, "limiting-profile", &c, json!({ "t": t, "comparison": r }))
        }
        Command::ProfileDecomp(a) => {
            let files = (!a.files.is_empty()).then(|| a.files.clone());
            let c: DecompConfig = Overrides::new()
                .opt("alpha", &a.alpha)
                .opt("l_max", &a.l_max)
                .opt("q", &a.q)
                .opt("tol", &a.tol)
                .opt("source.files", &files)
                .resolve(cfg_path)?;
            run_decomp(out, &c)
        }
    }
}

fn run_groundstate(out: &Path, c: &GroundStateConfig) -> Result<()> {
    let e = critical_exponents(c.d, c.alpha)?;
    let grid = cube(c.d, c.n, c.length)?;
    let gs = solve_ground_state(c.equation, &e, &grid, &c.options)?;
    let a_gn = sharp_constants(&gs, &e);
    prepare_out(out)?;
    let stem = match c.equation {
        Equation::Sobolev => "Q",
        Equation::Lebesgue => "R",
    };
    write_field(out.join(format!("{stem}.nl4s")), &gs.field, 0.0)?;
    let sidecar = json!({
        "version": VERSION,
        "exponents": e,
        "solution": gs,
        "sharp_constant": a_gn,
    });
    write_json(out.join(format!("{stem}.json")), &sidecar)?;
    finish(out, "groundstate", c, json!({ "field": format!("{stem}.nl4s"), "solution": gs }))
}

#[derive(Serialize)]
struct EvolveReport {
    status: Status,
    steps: usize,
    t_final: f64,
    snapshots: Vec<String>,
    rate_exp: f64,
    fit: Option<crate::evolution::BlowupFit>,
    fit_error: Option<String>,
    min_trapping_slack: Option<f64>,
}

fn evolve_and_store(
    out: &Path,
    grid: &Grid,
    init: &InitialData,
    cfg: &EvolveConfig,
    e: &ExponentSet,
) -> Result<crate::evolution::Evolution> {
    let f0 = initial_field(grid, init)?;
    prepare_out(out)?;
    let ev = match evolve(&f0, cfg, e) {
        Ok(ev) => ev,
        Err(Error::NonFinite { t, partial }) => {
            write_trajectory_csv(out.join("trajectory.csv"), &partial)?;
            return Err(Error::NonFinite { t, partial });
        }
        Err(err) => return Err(err),
    };
    write_trajectory_csv(out.join("trajectory.csv"), &ev.trajectory)?;
    for s in &ev.snapshots {
        write_field(out.join(snapshot_name(s.step)), &s.field, s.t)?;
    }
    write_field(out.join("final.nl4s"), &ev.final_field, ev.trajectory.last().map_or(0.0, |r| r.t))?;
    Ok(ev)
}

fn snapshot_name(step: usize) -> String {
    format!("snap_{step:08}.nl4s")
}

fn run_evolve(out: &Path, c: &EvolveRunConfig) -> Result<()> {
    let e = critical_exponents(c.d, c.alpha)?;
    let grid = cube(c.d, c.n, c.length)?;
    let ev = evolve_and_store(out, &grid, &c.initial, &c.evolve, &e)?;
    let (fit, fit_error) = if ev.status == Status::BlowupDetected {
        match fit_blowup(&ev.trajectory, e.rate_exp) {
            Ok(f) => (Some(f), None),
            Err(err) => (None, Some(err.to_string())),
        }
    } else {
        (None, None)
    };
    let slack = c.s_gs.map(|s| {
        ev.trajectory
            .iter()
            .map(|r| energy_trapping_check(r, s, &e))
            .fold(f64::INFINITY, f64::min)
    });
    let last = ev.trajectory.last().expect("initial row");
    let report = EvolveReport {
        status: ev.status,
        steps: ev.trajectory.len() - 1,
        t_final: last.t,
        snapshots: ev.snapshots.iter().map(|s| snapshot_name(s.step)).collect(),
        rate_exp: e.rate_exp,
        fit,
        fit_error,
        min_trapping_slack: slack,
    };
    finish(out, "evolve", c, report)
}

fn run_virial(out: &Path, c: &VirialConfig) -> Result<()> {
    let e = critical_exponents(c.d, c.alpha)?;
    let grid = cube(c.d, c.n, c.length)?;
    let cut = make_virial_cutoff(&grid, c.r)?;
    let cfg = EvolveConfig {
        linear: c.linear,
        ..c.evolve.clone()
    };
    let ev = evolve_and_store(out, &grid, &c.initial, &cfg, &e)?;
    let check = check_virial_law(&ev.snapshots, &e, &cut, c.linear)?;
    finish(out, "virial", c, check)
}

fn run_decomp(out: &Path, c: &DecompConfig) -> Result<()> {
    let seq: Vec<Field> = match &c.source {
        SequenceSource::Files(paths) => paths
            .iter()
            .map(|p| read_field(p).map(|(f, _)| f))
            .collect::<Result<_>>()?,
        SequenceSource::Synth(s) => {
            let grid = cube(s.d, s.n, s.length)?;
            let profiles: Vec<Field> = s
                .profiles
                .iter()
                .map(|g| gaussian(&grid, g.amplitude, g.width, &g.center, &g.velocity))
                .collect();
            synth_sequence(&grid, &profiles, &s.shift_law, s.noise_amp, s.count, s.seed)?
        }
    };
    let first = seq
        .first()
        .ok_or_else(|| Error::Precondition("empty sequence".into()))?;
    let e = critical_exponents(first.grid().dim(), c.alpha)?;
    let q = c.q.unwrap_or(c.alpha + 2.0);
    let dec = decompose(&seq, c.l_max, q, c.tol, &e)?;
    prepare_out(out)?;
    let mut profiles = Vec::new();
    for (j, p) in dec.profiles.iter().enumerate() {
        let name = format!("profile_{j}.nl4s");
        write_field(out.join(&name), p, 0.0)?;
        profiles.push(json!({
            "file": name,
            "h_gamma_c": sobolev_norm(p, e.gamma_c),
            "h_2": sobolev_norm(p, 2.0),
            "shifts": dec.shifts[j],
        }));
    }
    let result = json!({
        "count": dec.profiles.len(),
        "profiles": profiles,
        "tail_start": dec.tail_start,
        "q": q,
        "residual_lq": dec.residual_lq,
        "defect_gamma_c": dec.defect_gamma_c,
        "defect_2": dec.defect_2,
        "min_separations": dec.min_separations(),
    });
    finish(out, "profile-decomp", c, result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve<C: DeserializeOwned>(o: &Overrides, text: &str) -> Result<C> {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        fs::write(&p, text).unwrap();
        o.resolve(Some(&p))
    }

    #[test]
    fn flags_override_config_entries() {
        let mut o = Overrides::new();
        o.opt("alpha", &Some(3.0)).opt("evolve.t_end", &Some(0.5));
        let c: EvolveRunConfig = resolve(
            &o,
            r#"{"d": 1, "alpha": 10, "length": 20, "n": 64,
                "initial": {"gaussian": {"amplitude": 1, "width": 1}},
                "evolve": {"dt0": 1e-3}}"#,
        )
        .unwrap();
        assert_eq!(c.alpha, 3.0);
        assert_eq!(c.evolve.t_end, 0.5);
        assert_eq!(c.evolve.dt0, 1e-3);
        assert_eq!(c.evolve.phase_cap, EvolveConfig::default().phase_cap);
    }

    #[test]
    fn unknown_and_missing_keys_are_config_errors() {
        let o = Overrides::new();
        let r: Result<ExponentsConfig> = resolve(&o, r#"{"d": 5, "alpha": 2, "beta": 1}"#);
        assert!(matches!(r, Err(Error::Config(_))));
        let r: Result<ExponentsConfig> = resolve(&o, r#"{"d": 5}"#);
        assert!(matches!(r, Err(Error::Config(_))));
        let r: Result<EvolveRunConfig> = resolve(
            &o,
            r#"{"d": 1, "alpha": 10, "length": 20, "n": 64,
                "initial": {"gaussian": {"amplitude": 1, "width": 1}},
                "evolve": {"dt_0": 1e-3}}"#,
        );
        assert!(matches!(r, Err(Error::Config(_))));
        let r: Result<ExponentsConfig> = resolve(&o, "[1, 2]");
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn synth_recipe_requires_a_seed() {
        let o = Overrides::new();
        let r: Result<DecompConfig> = resolve(
            &o,
            r#"{"alpha": 10, "source": {"synth": {"d": 1, "length": 40, "n": 128,
                "profiles": [], "shift_law": {"base": [], "velocity": [], "power": 2},
                "noise_amp": 0.001, "count": 8}}}"#,
        );
        assert!(matches!(r, Err(Error::Config(m)) if m.contains("seed")));
    }
}
