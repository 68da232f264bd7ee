use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use compton_kn::report::{
    amplitude_chi2_report, amplitude_report, curves_report, kinematics_table, kn_table,
    parse_angle, summary_text, sweep_report, total_xs_report, Figure, OutputFormat, RunConfig,
    Table,
};
use compton_kn::verify::run_checks;
use compton_kn::{Error, KnVariant, MinimumRule};

#[derive(Parser, Debug)]
#[command(
    name = "compton-kn",
    version,
    about = "Compton kinematics, Klein-Nishina cross sections and chi-square matching tables"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct GlobalOpts {
    /// Comma-separated photon energies in MeV.
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    energies: Option<String>,
    /// Number of midpoint angles on [0, pi].
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    /// Cross-section form: full or no-sin2.
    #[arg(long, global = true)]
    variant: Option<String>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Decimal places in rounded columns.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Which minimum locates the reference angle without the sin^2 term: own or full.
    #[arg(long, global = true)]
    fig3_min_rule: Option<String>,
    /// Read --angle in degrees.
    #[arg(long, global = true)]
    degrees: bool,
    /// File of `key = value` lines mirroring these flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override the electron rest energy in MeV (for negative controls).
    #[arg(long, global = true, hide = true, allow_hyphen_values = true)]
    rest_energy: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Final-state kinematics for one energy and angle.
    Kinematics(PointArgs),
    /// Differential cross section for one energy and angle.
    Kn(PointArgs),
    /// Normalized and matching curves for a figure (1a-1h, 2, 3).
    Curves {
        #[arg(long)]
        figure: String,
    },
    /// Amplitude table (s1), chi-square tables (s2, s3) or amplitude-chi2.
    Table { which: String },
    /// Total cross section per energy.
    TotalXs,
    /// Run the self-check suite.
    Verify,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// Photon energy in MeV.
    #[arg(long, allow_hyphen_values = true)]
    energy: f64,
    /// Scattering angle: radians, `pi`, `pi/N`, `N*pi`, or degrees with --degrees.
    #[arg(long, allow_hyphen_values = true)]
    angle: String,
}

/// Usage and domain problems exit with 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn read_config_file(path: &PathBuf) -> anyhow::Result<BTreeMap<String, String>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "{}:{}: expected `key = value`",
                path.display(),
                n + 1
            ))
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_energies(text: &str) -> anyhow::Result<Vec<f64>> {
    let energies = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("--energies: `{}` is not a number", s.trim())))
        })
        .collect::<anyhow::Result<Vec<f64>>>()?;
    if energies.is_empty() {
        bail!(usage("--energies: list is empty"));
    }
    if let Some(bad) = energies.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        bail!(usage(format!("--energies: {bad} is not a positive energy")));
    }
    Ok(energies)
}

struct Settings {
    config: RunConfig,
    out: Option<PathBuf>,
    degrees: bool,
}

fn build_settings(g: &GlobalOpts) -> anyhow::Result<Settings> {
    let file = match &g.config {
        Some(p) => read_config_file(p)?,
        None => BTreeMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
    let mut config = RunConfig::default();
    if let Some(e) = pick(g.energies.clone(), "energies") {
        config.energies = Some(parse_energies(&e)?);
    }
    if let Some(n) = pick(g.grid_points.map(|n| n.to_string()), "grid-points") {
        let n: usize = n
            .parse()
            .map_err(|_| usage(format!("--grid-points: `{n}` is not an integer")))?;
        if n < 2 {
            bail!(usage(format!("--grid-points: need at least 2, got {n}")));
        }
        config.grid_points = n;
    }
    if let Some(v) = pick(g.variant.clone(), "variant") {
        config.variant = v
            .parse::<KnVariant>()
            .map_err(|e| usage(format!("--variant: {e}")))?;
    }
    if let Some(f) = pick(g.format.clone(), "format") {
        config.output_format = f
            .parse::<OutputFormat>()
            .map_err(|e| usage(format!("--format: {e}")))?;
    }
    if let Some(p) = pick(g.precision.map(|p| p.to_string()), "precision") {
        config.precision = p
            .parse()
            .map_err(|_| usage(format!("--precision: `{p}` is not an integer")))?;
    }
    if let Some(r) = pick(g.fig3_min_rule.clone(), "fig3-min-rule") {
        config.fig3_min_rule = r
            .parse::<MinimumRule>()
            .map_err(|e| usage(format!("--fig3-min-rule: {e}")))?;
    }
    if let Some(m) = pick(g.rest_energy.map(|m| m.to_string()), "rest-energy") {
        config.constants.electron_rest_energy = m
            .parse()
            .map_err(|_| usage(format!("--rest-energy: `{m}` is not a number")))?;
    }
    let out = g.out.clone().or_else(|| file.get("out").map(PathBuf::from));
    let degrees = g.degrees
        || file
            .get("degrees")
            .is_some_and(|v| matches!(v.as_str(), "true" | "yes" | "1"));
    Ok(Settings {
        config,
        out,
        degrees,
    })
}

fn flag_for(param: &str) -> &str {
    match param {
        "energy" => "--energy",
        "angle" => "--angle",
        "kinetic" => "--energy",
        other => other,
    }
}

fn domain(e: Error) -> anyhow::Error {
    match e {
        Error::Domain {
            param,
            value,
            reason,
        } => usage(format!(
            "{}: {value} is invalid ({reason})",
            flag_for(param)
        )),
        Error::Grid(msg) => usage(format!("--grid-points: {msg}")),
        other => anyhow!(other),
    }
}

fn emit(settings: &Settings, text: &str) -> anyhow::Result<()> {
    match &settings.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn emit_table(settings: &Settings, table: &Table) -> anyhow::Result<()> {
    emit(settings, &table.render(&settings.config))?;
    if settings.config.output_format == OutputFormat::Csv && !table.summary.is_empty() {
        eprint!("{}", summary_text(table));
    }
    Ok(())
}

fn point(settings: &Settings, args: &PointArgs) -> anyhow::Result<(f64, f64)> {
    let phi =
        parse_angle(&args.angle, settings.degrees).map_err(|e| usage(format!("--angle: {e}")))?;
    Ok((args.energy, phi))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let settings = build_settings(&cli.global)?;
    let cfg = &settings.config;
    match &cli.command {
        Command::Kinematics(args) => {
            let (e, phi) = point(&settings, args)?;
            emit_table(&settings, &kinematics_table(cfg, e, phi).map_err(domain)?)?;
        }
        Command::Kn(args) => {
            let (e, phi) = point(&settings, args)?;
            emit_table(&settings, &kn_table(cfg, e, phi).map_err(domain)?)?;
        }
        Command::Curves { figure } => {
            let fig: Figure = figure
                .parse()
                .map_err(|e: String| usage(format!("--figure: {e}")))?;
            emit_table(&settings, &curves_report(cfg, fig).map_err(domain)?)?;
        }
        Command::Table { which } => {
            let table = match which.as_str() {
                "s1" => amplitude_report(cfg),
                "s2" => sweep_report(cfg, KnVariant::Full),
                "s3" => sweep_report(cfg, KnVariant::NoInterference),
                "amplitude-chi2" => amplitude_chi2_report(cfg),
                other => bail!(usage(format!(
                    "table: unknown table `{other}` (expected s1, s2, s3 or amplitude-chi2)"
                ))),
            }
            .map_err(domain)?;
            emit_table(&settings, &table)?;
        }
        Command::TotalXs => emit_table(&settings, &total_xs_report(cfg).map_err(domain)?)?,
        Command::Verify => {
            let checks = run_checks(cfg);
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{status} {}", c.name));
                if !c.detail.is_empty() {
                    text.push_str(&format!(" [{}]", c.detail));
                }
                text.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            text.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
            emit(&settings, &text)?;
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
