//! Tabular output: builders for every table and curve bundle, and their
//! CSV/JSON rendering.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constants::PhysicalConstants;
use crate::cross_section::{kn_differential, kn_minimum, kn_total_cross_section, KnVariant};
use crate::error::Result;
use crate::grid::AngleGrid;
use crate::kinematics::ScatterState;
use crate::matching::{amplitude_chi2, chi2_sweep, match_curve, AmplitudeChi2, MatchKind};
use crate::normalization::{
    amplitude_table, reference_angle_with, AmplitudeRow, Curve, MinimumRule, Normalizer,
};
use crate::reference::{
    amplitude_chi2_reference, amplitude_reference, sweep_reference_full,
    sweep_reference_no_interference, AmplitudeReference, Chi2Reference, Printed,
};

/// The 14 energies of the amplitude table, in MeV.
pub const TABLE_ENERGIES: [f64; 14] = [
    1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 5.0, 10.0, 50.0, 100.0, 300.0, 500.0, 1000.0,
];
/// One energy per decade from 1 keV to 1 GeV.
pub const CURVE_ENERGIES: [f64; 7] = [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0];
pub const DEFAULT_GRID_POINTS: usize = 2000;
pub const DEFAULT_PRECISION: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    /// Explicit energy list; each command falls back to its own default.
    pub energies: Option<Vec<f64>>,
    pub grid_points: usize,
    pub variant: KnVariant,
    pub output_format: OutputFormat,
    pub precision: usize,
    pub fig3_min_rule: MinimumRule,
    pub constants: PhysicalConstants,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            energies: None,
            grid_points: DEFAULT_GRID_POINTS,
            variant: KnVariant::Full,
            output_format: OutputFormat::Csv,
            precision: DEFAULT_PRECISION,
            fig3_min_rule: MinimumRule::OwnVariant,
            constants: PhysicalConstants::CODATA_2014,
        }
    }
}

impl RunConfig {
    pub fn energies_or(&self, default: &[f64]) -> Vec<f64> {
        self.energies.clone().unwrap_or_else(|| default.to_vec())
    }

    pub fn grid(&self) -> Result<AngleGrid> {
        AngleGrid::midpoints(self.grid_points)
    }
}

/// Full-precision text for a float: 17 significant digits.
pub fn format_full(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Rounded text: fixed decimals, switching to scientific below 1e-3.
pub fn format_rounded(x: f64, precision: usize) -> String {
    if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:.precision$e}")
    } else {
        format!("{x:.precision$}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Rounded(f64, usize),
    Int(i64),
    Text(String),
    Flag(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_full(*x),
            Cell::Rounded(x, p) => format_rounded(*x, *p),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => if *b { "yes" } else { "no" }.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Rounded(x, p) => Value::String(format_rounded(*x, *p)),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Flag(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Short key/value findings; JSON carries them, CSV callers print them
    /// to stderr.
    pub summary: Vec<(String, String)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| Cell::Text(c.clone()).csv())
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, config: &RunConfig) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let summary: serde_json::Map<String, Value> = self
            .summary
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let doc = json!({
            "config": config,
            "columns": self.columns,
            "rows": rows,
            "summary": summary,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, config: &RunConfig) -> String {
        match config.output_format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(config),
        }
    }
}

fn energy_label(e: f64) -> String {
    format!("{e}MeV")
}

fn same_energy(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Final state for a single `(hnu, phi)`.
pub fn kinematics_table(config: &RunConfig, hnu: f64, phi: f64) -> Result<Table> {
    let st = ScatterState::new(&config.constants, hnu, phi)?;
    let p = config.precision;
    let mut t = Table::new(["quantity", "value", "rounded", "unit"]);
    for (name, v, unit) in [
        ("incident_energy", st.incident_energy, "MeV"),
        ("angle", st.angle, "rad"),
        ("scattered_energy", st.scattered_energy, "MeV"),
        ("electron_momentum", st.electron_momentum, "MeV/c"),
        ("electron_kinetic", st.electron_kinetic, "MeV"),
        ("electron_total", st.electron_total, "MeV"),
    ] {
        t.push(vec![
            Cell::Text(name.into()),
            Cell::Num(v),
            Cell::Rounded(v, p),
            Cell::Text(unit.into()),
        ]);
    }
    Ok(t)
}

/// Cross section at one `(hnu, phi)` plus the angular minimum.
pub fn kn_table(config: &RunConfig, hnu: f64, phi: f64) -> Result<Table> {
    let c = &config.constants;
    let v = kn_differential(c, hnu, phi, config.variant)?;
    let m = kn_minimum(c, hnu, config.variant)?;
    let r = reference_angle_with(c, hnu, config.variant, config.fig3_min_rule)?;
    let p = config.precision;
    let mut t = Table::new(["quantity", "value", "rounded", "unit"]);
    for (name, x, unit) in [
        ("kn", v, "r_e^2/sr"),
        ("kn_barn", v * c.re_squared_barn(), "b/sr"),
        ("kn_min_angle", m.angle, "rad"),
        ("kn_min", m.value, "r_e^2/sr"),
        ("reference_angle", r, "rad"),
    ] {
        t.push(vec![
            Cell::Text(name.into()),
            Cell::Num(x),
            Cell::Rounded(x, p),
            Cell::Text(unit.into()),
        ]);
    }
    Ok(t)
}

const S1_COLUMNS: [&str; 4] = [
    "kn_amplitude",
    "scatter_drop",
    "momentum_ratio",
    "transfer_fraction",
];

fn s1_values(r: &AmplitudeRow) -> [f64; 4] {
    [
        r.kn_amplitude,
        r.scatter_drop,
        r.momentum_ratio,
        r.transfer_fraction,
    ]
}

fn s1_printed(r: &AmplitudeReference) -> [&Printed; 4] {
    [
        &r.kn_amplitude,
        &r.scatter_drop,
        &r.momentum_ratio,
        &r.transfer_fraction,
    ]
}

fn comparison_cells(computed: f64, printed: Option<&Printed>, precision: usize) -> Vec<Cell> {
    let mut cells = vec![Cell::Num(computed), Cell::Rounded(computed, precision)];
    match printed {
        Some(pr) => {
            let delta = computed - pr.value;
            cells.push(Cell::Text(pr.text.clone()));
            cells.push(Cell::Num(delta));
            cells.push(Cell::Num(delta / pr.value));
            cells.push(Cell::Flag(pr.agrees_with(computed)));
        }
        None => cells.extend([Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]),
    }
    cells
}

fn comparison_columns(name: &str) -> [String; 6] {
    [
        name.to_string(),
        format!("{name}_rounded"),
        format!("{name}_published"),
        format!("{name}_abs_delta"),
        format!("{name}_rel_delta"),
        format!("{name}_agrees"),
    ]
}

/// Amplitude table beside the published values.
pub fn amplitude_report(config: &RunConfig) -> Result<Table> {
    let energies = config.energies_or(&TABLE_ENERGIES);
    let rows = amplitude_table(
        &config.constants,
        &energies,
        config.variant,
        config.fig3_min_rule,
    )?;
    let reference = amplitude_reference();
    let mut cols = vec!["energy_mev".to_string()];
    for c in S1_COLUMNS {
        cols.extend(comparison_columns(c));
    }
    let mut t = Table::new(cols);
    let mut disagreements = 0;
    for r in &rows {
        let published = reference
            .iter()
            .find(|p| same_energy(p.energy.value, r.energy))
            .filter(|_| config.variant == KnVariant::Full);
        let mut cells = vec![Cell::Num(r.energy)];
        for (i, v) in s1_values(r).into_iter().enumerate() {
            let pr = published.map(|p| s1_printed(p)[i]);
            if pr.is_some_and(|pr| !pr.agrees_with(v)) {
                disagreements += 1;
            }
            cells.extend(comparison_cells(v, pr, config.precision));
        }
        t.push(cells);
    }
    t.summary
        .push(("cells_outside_last_digit".into(), disagreements.to_string()));
    Ok(t)
}

fn decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

/// Chi-square sweep beside the published values.
pub fn sweep_report(config: &RunConfig, variant: KnVariant) -> Result<Table> {
    let energies = config.energies_or(&TABLE_ENERGIES);
    let grid = config.grid()?;
    let rows = chi2_sweep(
        &config.constants,
        &energies,
        &grid,
        variant,
        config.fig3_min_rule,
        false,
    )?;
    let reference: Vec<Chi2Reference> = match variant {
        KnVariant::Full => sweep_reference_full(),
        KnVariant::NoInterference => sweep_reference_no_interference(),
    };
    let use_published = config.grid_points == DEFAULT_GRID_POINTS
        && config.fig3_min_rule == MinimumRule::OwnVariant;
    let names = ["scattered", "momentum", "kinetic"];
    let mut cols = vec!["energy_mev".to_string(), "dof".to_string()];
    for n in names {
        cols.extend([
            format!("chi2_{n}"),
            format!("chi2_{n}_rounded"),
            format!("chi2_{n}_published"),
            format!("chi2_{n}_abs_delta"),
            format!("chi2_{n}_ratio"),
            format!("chi2_{n}_below_critical"),
        ]);
    }
    let mut t = Table::new(cols);
    for r in &rows {
        let published = reference
            .iter()
            .find(|p| same_energy(p.energy.value, r.energy))
            .filter(|_| use_published);
        let mut cells = vec![Cell::Num(r.energy), Cell::Int(r.scattered.dof as i64)];
        for (i, rep) in [&r.scattered, &r.momentum, &r.kinetic]
            .into_iter()
            .enumerate()
        {
            cells.push(Cell::Num(rep.chi2));
            cells.push(Cell::Rounded(rep.chi2, config.precision));
            match published.map(|p| p.columns()[i]) {
                Some(pr) => {
                    cells.push(Cell::Text(pr.text.clone()));
                    cells.push(Cell::Num(rep.chi2 - pr.value));
                    cells.push(Cell::Num(rep.chi2 / pr.value));
                }
                None => cells.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
            }
            cells.push(rep.below_critical.map_or(Cell::Empty, Cell::Flag));
        }
        t.push(cells);
    }
    for (i, n) in names.iter().enumerate() {
        let col: Vec<f64> = rows.iter().map(|r| r.columns()[i]).collect();
        let flag = if decreasing(&col) { "yes" } else { "no" };
        t.summary.push((format!("decreasing_{n}"), flag.into()));
    }
    Ok(t)
}

/// Energies from 1 MeV upward, in table order.
pub fn amplitude_chi2_energies() -> Vec<f64> {
    TABLE_ENERGIES
        .iter()
        .copied()
        .filter(|&e| e >= 1.0)
        .collect()
}

/// Amplitude rows rebuilt from the printed table, from 1 MeV upward.
pub fn printed_amplitude_rows() -> Vec<AmplitudeRow> {
    amplitude_reference()
        .iter()
        .filter(|r| r.energy.value >= 1.0)
        .map(|r| AmplitudeRow {
            energy: r.energy.value,
            kn_amplitude: r.kn_amplitude.value,
            scatter_drop: r.scatter_drop.value,
            momentum_ratio: r.momentum_ratio.value,
            transfer_fraction: r.transfer_fraction.value,
        })
        .collect()
}

/// Amplitude chi-squares from first principles and from the printed rows.
pub fn amplitude_chi2_pair(config: &RunConfig) -> Result<(AmplitudeChi2, AmplitudeChi2)> {
    let computed_rows = amplitude_table(
        &config.constants,
        &amplitude_chi2_energies(),
        KnVariant::Full,
        MinimumRule::OwnVariant,
    )?;
    Ok((
        amplitude_chi2(&computed_rows)?,
        amplitude_chi2(&printed_amplitude_rows())?,
    ))
}

pub fn amplitude_chi2_report(config: &RunConfig) -> Result<Table> {
    let (computed, printed) = amplitude_chi2_pair(config)?;
    let published = amplitude_chi2_reference();
    let mut t = Table::new([
        "report",
        "source",
        "chi2",
        "chi2_rounded",
        "dof",
        "critical_value",
        "below_critical",
        "chi2_published",
        "ratio_to_published",
    ]);
    for (source, set) in [("computed", &computed), ("printed_rows", &printed)] {
        for (name, rep, pr) in [
            ("transfer", &set.transfer, &published.transfer),
            ("momentum", &set.momentum, &published.momentum),
        ] {
            t.push(vec![
                Cell::Text(name.into()),
                Cell::Text(source.into()),
                Cell::Num(rep.chi2),
                Cell::Rounded(rep.chi2, config.precision),
                Cell::Int(rep.dof as i64),
                rep.critical_value.map_or(Cell::Empty, Cell::Num),
                rep.below_critical.map_or(Cell::Empty, Cell::Flag),
                Cell::Text(pr.text.clone()),
                Cell::Num(rep.chi2 / pr.value),
            ]);
        }
    }
    Ok(t)
}

/// Figure identifiers accepted by [`curves_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Cross section over the 1 GeV amplitude.
    KnGlobal,
    /// Cross-section amplitude against energy.
    KnAmplitude,
    /// Scatter fraction `hnu'/hnu`.
    ScatterFraction,
    /// `(hnu'(0) - hnu'(pi*))/hnu` against energy.
    ScatterDrop,
    /// Electron momentum normalized and scaled by `p_ph/p_e'(pi)`.
    MomentumScaled,
    /// `p_ph/p_e'(pi*)` against energy.
    MomentumRatio,
    /// Energy transfer fraction `K_e'/hnu`.
    TransferFraction,
    /// `K_e'(pi*)/hnu` against energy.
    TransferAmplitude,
    /// Difference and sum curves with the full cross section.
    Matching,
    /// Difference and sum curves without the `sin^2` term.
    MatchingNoInterference,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "1a" => Figure::KnGlobal,
            "1b" => Figure::KnAmplitude,
            "1c" => Figure::ScatterFraction,
            "1d" => Figure::ScatterDrop,
            "1e" => Figure::MomentumScaled,
            "1f" => Figure::MomentumRatio,
            "1g" => Figure::TransferFraction,
            "1h" => Figure::TransferAmplitude,
            "2" => Figure::Matching,
            "3" => Figure::MatchingNoInterference,
            other => return Err(format!("unknown figure `{other}` (expected 1a-1h, 2 or 3)")),
        })
    }
}

fn curve_bundle(grid: &AngleGrid, curves: &[(String, Vec<f64>)]) -> Table {
    let mut cols = vec!["angle_rad".to_string()];
    cols.extend(curves.iter().map(|(name, _)| name.clone()));
    let mut t = Table::new(cols);
    for (i, &phi) in grid.angles().iter().enumerate() {
        let mut row = vec![Cell::Num(phi)];
        row.extend(curves.iter().map(|(_, v)| Cell::Num(v[i])));
        t.push(row);
    }
    t
}

fn named(curve: Curve) -> (String, Vec<f64>) {
    (
        format!("{}@{}", curve.quantity.as_str(), energy_label(curve.energy)),
        curve.values().collect(),
    )
}

/// Curves on the configured grid, or per-energy amplitudes for the
/// panels that plot against energy.
pub fn curves_report(config: &RunConfig, figure: Figure) -> Result<Table> {
    let c = &config.constants;
    let energies = config.energies_or(&CURVE_ENERGIES);
    let grid = config.grid()?;
    let norm = Normalizer::new(c, config.variant).with_minimum_rule(config.fig3_min_rule);
    let per_energy = |f: &(dyn Fn(f64) -> Result<Curve> + Sync)| -> Result<Table> {
        let curves = energies
            .par_iter()
            .map(|&e| f(e).map(named))
            .collect::<Result<Vec<_>>>()?;
        Ok(curve_bundle(&grid, &curves))
    };
    let amplitude = |pick: fn(&AmplitudeRow) -> f64, name: &str| -> Result<Table> {
        let rows = amplitude_table(c, &energies, config.variant, config.fig3_min_rule)?;
        let mut t = Table::new(["energy_mev", name]);
        for r in &rows {
            t.push(vec![Cell::Num(r.energy), Cell::Num(pick(r))]);
        }
        Ok(t)
    };
    match figure {
        Figure::KnGlobal => per_energy(&|e| norm.kn_global_normalized(e, &grid)),
        Figure::ScatterFraction => per_energy(&|e| norm.scatter_fraction(e, &grid)),
        Figure::MomentumScaled => per_energy(&|e| norm.electron_momentum_scaled(e, &grid)),
        Figure::TransferFraction => per_energy(&|e| norm.energy_transfer_fraction(e, &grid)),
        Figure::KnAmplitude => amplitude(|r| r.kn_amplitude, "kn_amplitude"),
        Figure::ScatterDrop => amplitude(|r| r.scatter_drop, "scatter_drop"),
        Figure::MomentumRatio => amplitude(|r| r.momentum_ratio, "momentum_ratio"),
        Figure::TransferAmplitude => amplitude(|r| r.transfer_fraction, "transfer_fraction"),
        Figure::Matching | Figure::MatchingNoInterference => {
            let variant = if figure == Figure::Matching {
                KnVariant::Full
            } else {
                KnVariant::NoInterference
            };
            let curves = energies
                .par_iter()
                .map(|&e| {
                    MatchKind::ALL
                        .iter()
                        .map(|&k| {
                            let m = match_curve(c, e, &grid, k, variant, config.fig3_min_rule)?;
                            Ok((
                                format!("{}@{}", k.as_str(), energy_label(e)),
                                m.samples.iter().map(|s| s.value).collect(),
                            ))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let flat: Vec<_> = curves.into_iter().flatten().collect();
            Ok(curve_bundle(&grid, &flat))
        }
    }
}

/// Total cross section per energy with the doubling ratio.
pub fn total_xs_report(config: &RunConfig) -> Result<Table> {
    let c = &config.constants;
    let energies = config.energies_or(&TABLE_ENERGIES);
    let sigmas = energies
        .par_iter()
        .map(|&e| {
            Ok((
                kn_total_cross_section(c, e)?,
                kn_total_cross_section(c, 2.0 * e)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut t = Table::new([
        "energy_mev",
        "sigma_re2",
        "sigma_re2_rounded",
        "sigma_barn",
        "sigma_2e_over_sigma_e",
    ]);
    let barn = c.re_squared_barn();
    for (&e, &(s, s2)) in energies.iter().zip(&sigmas) {
        t.push(vec![
            Cell::Num(e),
            Cell::Num(s),
            Cell::Rounded(s, config.precision),
            Cell::Num(s * barn),
            Cell::Num(s2 / s),
        ]);
    }
    let strictly = decreasing(&sigmas.iter().map(|s| s.0).collect::<Vec<_>>());
    t.summary.push((
        "decreasing".into(),
        if strictly { "yes" } else { "no" }.into(),
    ));
    Ok(t)
}

/// Parses `pi`, `pi/N`, `N*pi` or a plain number of radians (or degrees).
pub fn parse_angle(text: &str, degrees: bool) -> std::result::Result<f64, String> {
    let t = text.trim().to_ascii_lowercase();
    let value = if t == "pi" {
        PI
    } else if let Some(den) = t.strip_prefix("pi/") {
        let d: f64 = den.parse().map_err(|_| format!("bad angle `{text}`"))?;
        PI / d
    } else if let Some(num) = t.strip_suffix("*pi") {
        let n: f64 = num.parse().map_err(|_| format!("bad angle `{text}`"))?;
        n * PI
    } else {
        let v: f64 = t.parse().map_err(|_| format!("bad angle `{text}`"))?;
        if degrees {
            v.to_radians()
        } else {
            v
        }
    };
    Ok(value)
}

/// Writes `key: value` summary lines.
pub fn summary_text(table: &Table) -> String {
    let mut s = String::new();
    for (k, v) in &table.summary {
        let _ = writeln!(s, "{k}: {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_switches_to_scientific() {
        assert_eq!(format_rounded(0.79649, 4), "0.7965");
        assert_eq!(format_rounded(1.95697e-5, 4), "1.9570e-5");
        assert_eq!(format_rounded(0.0, 4), "0.0000");
    }

    #[test]
    fn full_precision_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt() * 1e-7, 1234.5678] {
            let s = format_full(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("pi", false).unwrap(), PI);
        assert_eq!(parse_angle("pi/2", false).unwrap(), PI / 2.0);
        assert_eq!(parse_angle("0.5", false).unwrap(), 0.5);
        assert_eq!(parse_angle("180", true).unwrap(), PI);
        assert!(parse_angle("x", false).is_err());
    }

    #[test]
    fn csv_quotes_text() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![Cell::Text("x,y".into()), Cell::Flag(true)]);
        assert_eq!(t.to_csv(), "a,b\n\"x,y\",yes\n");
    }

    #[test]
    fn figure_ids() {
        assert_eq!("1a".parse::<Figure>().unwrap(), Figure::KnGlobal);
        assert_eq!(
            "3".parse::<Figure>().unwrap(),
            Figure::MatchingNoInterference
        );
        assert!("4".parse::<Figure>().is_err());
    }
}
