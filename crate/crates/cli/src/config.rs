//! Plain-text scenario configuration.
//!
//! One `key = value` pair per line; `#` starts a comment, blank lines are
//! ignored and keys are case-sensitive. Numbers are plain decimals with an
//! optional exponent (`0.5`, `-3`, `2.5e-3`), lists are whitespace-separated.
//! Every error carries the line it refers to; a missing key is reported on
//! the `mode` line.

use std::collections::BTreeMap;
use std::path::PathBuf;

use tilted_lattice::analytic1d::MAX_SIGMA;
use tilted_lattice::lissajous::{plan, LissajousPlan, LissajousTarget};
use tilted_lattice::observables::MAX_PERIODS;

use crate::format::{float, floats};

/// Largest accepted `samples`.
pub const MAX_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Evolve1d,
    Evolve2d,
    Lissajous,
    Breathing,
    FigurePreset,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Evolve1d,
        Mode::Evolve2d,
        Mode::Lissajous,
        Mode::Breathing,
        Mode::FigurePreset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Evolve1d => "evolve1d",
            Mode::Evolve2d => "evolve2d",
            Mode::Lissajous => "lissajous",
            Mode::Breathing => "breathing",
            Mode::FigurePreset => "figure-preset",
        }
    }

    /// Keys beyond the common ones (`mode`, `J`, `output_dir`, `outputs`).
    fn keys(self) -> &'static [&'static str] {
        match self {
            Mode::Evolve1d => &["t_start", "t_end", "samples", "F_over_J", "sigma", "X", "P"],
            Mode::Evolve2d => &[
                "t_start", "t_end", "samples", "Fx_over_J", "Fy_over_J", "sigma", "X", "Y", "Px", "Py",
            ],
            Mode::Lissajous => &[
                "t_start", "t_end", "samples", "p", "q", "phi", "A", "B", "base_frequency", "sigma",
            ],
            Mode::Breathing => &["t_start", "t_end", "samples", "F_over_J", "x0"],
            Mode::FigurePreset => &["preset", "fig2_F_over_J", "fig2_P"],
        }
    }
}

const COMMON_KEYS: [&str; 4] = ["mode", "J", "output_dir", "outputs"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputKind {
    TrajectoryCsv,
    DensityCsv,
    DensityFrames,
}

impl OutputKind {
    pub const ALL: [OutputKind; 3] = [
        OutputKind::TrajectoryCsv,
        OutputKind::DensityCsv,
        OutputKind::DensityFrames,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OutputKind::TrajectoryCsv => "trajectory-csv",
            OutputKind::DensityCsv => "density-csv",
            OutputKind::DensityFrames => "density-frames",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4, Preset::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// `samples` evenly spaced times from `start` to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub samples: usize,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        let n = self.samples;
        if n == 1 {
            return vec![self.start];
        }
        (0..n)
            .map(|k| {
                if k + 1 == n {
                    self.end
                } else {
                    self.start + (self.end - self.start) * (k as f64 / (n - 1) as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Evolve1d {
        grid: TimeGrid,
        tilt_over_j: f64,
        sigma: f64,
        center: f64,
        momentum: f64,
    },
    Evolve2d {
        grid: TimeGrid,
        tilt_x_over_j: f64,
        tilt_y_over_j: f64,
        sigma: f64,
        center_x: f64,
        center_y: f64,
        momentum_x: f64,
        momentum_y: f64,
    },
    Lissajous {
        grid: TimeGrid,
        /// Base frequency, if any, in units of `J`.
        target: LissajousTarget,
        sigma: f64,
    },
    /// A particle started on site `x0`; zero tilt gives free spreading.
    Breathing {
        grid: TimeGrid,
        tilt_over_j: f64,
        x0: i64,
    },
    FigurePreset {
        preset: Preset,
        fig2_tilts: Vec<f64>,
        fig2_momenta: Vec<f64>,
    },
}

/// A validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// `J`, in the energy unit of the run.
    pub tunneling: f64,
    pub output_dir: PathBuf,
    /// Sorted, without repeats.
    pub outputs: Vec<OutputKind>,
    pub scenario: Scenario,
}

pub const DEFAULT_OUTPUTS: [OutputKind; 2] = [OutputKind::TrajectoryCsv, OutputKind::DensityCsv];

/// Default `fig2` forces.
pub const FIG2_TILTS: [f64; 3] = [0.05, 0.1, 0.2];
/// Default `fig2` momenta.
pub const FIG2_MOMENTA: [f64; 3] = [0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2];

impl ScenarioConfig {
    pub fn mode(&self) -> Mode {
        match self.scenario {
            Scenario::Evolve1d { .. } => Mode::Evolve1d,
            Scenario::Evolve2d { .. } => Mode::Evolve2d,
            Scenario::Lissajous { .. } => Mode::Lissajous,
            Scenario::Breathing { .. } => Mode::Breathing,
            Scenario::FigurePreset { .. } => Mode::FigurePreset,
        }
    }

    pub fn grid(&self) -> Option<TimeGrid> {
        match &self.scenario {
            Scenario::Evolve1d { grid, .. }
            | Scenario::Evolve2d { grid, .. }
            | Scenario::Lissajous { grid, .. }
            | Scenario::Breathing { grid, .. } => Some(*grid),
            Scenario::FigurePreset { .. } => None,
        }
    }

    /// The Lissajous plan of a `lissajous` scenario.
    pub fn plan(&self) -> Option<LissajousPlan> {
        match &self.scenario {
            Scenario::Lissajous { target, .. } => plan(&scaled(target, self.tunneling), self.tunneling).ok(),
            _ => None,
        }
    }

    /// Config text that parses back to `self`; written as the run manifest.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# resolved run parameters\n");
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        put("mode", self.mode().name().into());
        put("J", float(self.tunneling));
        put("output_dir", self.output_dir.display().to_string());
        put(
            "outputs",
            self.outputs.iter().map(|o| o.name()).collect::<Vec<_>>().join(" "),
        );
        if let Some(g) = self.grid() {
            put("t_start", float(g.start));
            put("t_end", float(g.end));
            put("samples", g.samples.to_string());
        }
        match &self.scenario {
            Scenario::Evolve1d {
                tilt_over_j,
                sigma,
                center,
                momentum,
                ..
            } => {
                put("F_over_J", float(*tilt_over_j));
                put("sigma", float(*sigma));
                put("X", float(*center));
                put("P", float(*momentum));
            }
            Scenario::Evolve2d {
                tilt_x_over_j,
                tilt_y_over_j,
                sigma,
                center_x,
                center_y,
                momentum_x,
                momentum_y,
                ..
            } => {
                put("Fx_over_J", float(*tilt_x_over_j));
                put("Fy_over_J", float(*tilt_y_over_j));
                put("sigma", float(*sigma));
                put("X", float(*center_x));
                put("Y", float(*center_y));
                put("Px", float(*momentum_x));
                put("Py", float(*momentum_y));
            }
            Scenario::Lissajous { target, sigma, .. } => {
                put("p", target.ratio_p.to_string());
                put("q", target.ratio_q.to_string());
                put("phi", float(target.phase));
                if let Some((a, b)) = target.amplitudes {
                    put("A", float(a));
                    put("B", float(b));
                }
                if let Some(w) = target.base_frequency {
                    put("base_frequency", float(w));
                }
                put("sigma", float(*sigma));
            }
            Scenario::Breathing { tilt_over_j, x0, .. } => {
                put("F_over_J", float(*tilt_over_j));
                put("x0", x0.to_string());
            }
            Scenario::FigurePreset {
                preset,
                fig2_tilts,
                fig2_momenta,
            } => {
                put("preset", preset.name().into());
                put("fig2_F_over_J", floats(fig2_tilts));
                put("fig2_P", floats(fig2_momenta));
            }
        }
        out
    }
}

/// The target with its base frequency converted from units of `J`.
fn scaled(target: &LissajousTarget, tunneling: f64) -> LissajousTarget {
    LissajousTarget {
        base_frequency: target.base_frequency.map(|w| w * tunneling),
        ..*target
    }
}

/// `[+-]? (d+ (. d*)? | . d+) ([eE] [+-]? d+)?`
fn is_decimal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        *i - start
    };
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let mut mantissa = digits(&mut i);
    if i < b.len() && b[i] == b'.' {
        i += 1;
        mantissa += digits(&mut i);
    }
    if mantissa == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        if digits(&mut i) == 0 {
            return false;
        }
    }
    i == b.len()
}

fn is_integer(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
}

#[derive(Debug)]
struct Entry {
    line: usize,
    value: String,
}

/// Typed access to the entries of one config.
struct Fields {
    entries: BTreeMap<String, Entry>,
    mode: Mode,
    mode_line: usize,
}

impl Fields {
    fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(self.mode_line, |e| e.line)
    }

    fn raw(&self, key: &str) -> Result<&Entry, ConfigError> {
        match self.entries.get(key) {
            Some(e) => Ok(e),
            None => fail(
                self.mode_line,
                format!("mode `{}` requires key `{key}`", self.mode.name()),
            ),
        }
    }

    fn parse_real(key: &str, e: &Entry, text: &str) -> Result<f64, ConfigError> {
        if !is_decimal(text) {
            return fail(e.line, format!("`{key}`: `{text}` is not a decimal number"));
        }
        let v: f64 = text.parse().map_err(|_| ConfigError {
            line: e.line,
            message: format!("`{key}`: `{text}` is not a decimal number"),
        })?;
        if !v.is_finite() {
            return fail(e.line, format!("`{key}`: `{text}` overflows"));
        }
        Ok(v)
    }

    fn real(&self, key: &str) -> Result<f64, ConfigError> {
        let e = self.raw(key)?;
        Self::parse_real(key, e, &e.value)
    }

    fn real_opt(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        if self.entries.contains_key(key) {
            self.real(key).map(Some)
        } else {
            Ok(None)
        }
    }

    fn reals_opt(&self, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
        let Some(e) = self.entries.get(key) else {
            return Ok(None);
        };
        e.value
            .split_whitespace()
            .map(|t| Self::parse_real(key, e, t))
            .collect::<Result<_, _>>()
            .map(Some)
    }

    fn integer(&self, key: &str) -> Result<i64, ConfigError> {
        let e = self.raw(key)?;
        if !is_integer(&e.value) {
            return fail(e.line, format!("`{key}`: `{}` is not an integer", e.value));
        }
        e.value.parse().map_err(|_| ConfigError {
            line: e.line,
            message: format!("`{key}`: `{}` is out of range", e.value),
        })
    }

    fn check(&self, key: &str, value: f64, ok: bool, rule: &str) -> Result<(), ConfigError> {
        if ok {
            Ok(())
        } else {
            fail(
                self.line(key),
                format!("`{key}` = {} is out of range: {rule}", float(value)),
            )
        }
    }

    fn sigma(&self) -> Result<f64, ConfigError> {
        let s = self.real("sigma")?;
        self.check("sigma", s, s > 0.0 && s <= MAX_SIGMA, "must lie in (0, 30]")?;
        Ok(s)
    }

    fn tilt(&self, key: &str, strictly: bool) -> Result<f64, ConfigError> {
        let f = self.real(key)?;
        if strictly {
            self.check(key, f, f > 0.0, "must be positive")?;
        } else {
            self.check(key, f, f >= 0.0, "must be non-negative")?;
        }
        Ok(f)
    }

    fn grid(&self) -> Result<TimeGrid, ConfigError> {
        let start = self.real("t_start")?;
        self.check("t_start", start, start >= 0.0, "must be non-negative")?;
        let end = self.real("t_end")?;
        self.check("t_end", end, end >= start, "must not precede t_start")?;
        let samples = self.integer("samples")?;
        if samples < 1 {
            return fail(self.line("samples"), "empty time grid: `samples` must be at least 1");
        }
        if samples as usize > MAX_SAMPLES {
            return fail(
                self.line("samples"),
                format!("`samples` = {samples} exceeds the limit {MAX_SAMPLES}"),
            );
        }
        Ok(TimeGrid {
            start,
            end,
            samples: samples as usize,
        })
    }

    fn outputs(&self) -> Result<Vec<OutputKind>, ConfigError> {
        let Some(e) = self.entries.get("outputs") else {
            return Ok(DEFAULT_OUTPUTS.to_vec());
        };
        let mut kinds = Vec::new();
        for word in e.value.split_whitespace() {
            let Some(kind) = OutputKind::ALL.into_iter().find(|k| k.name() == word) else {
                return fail(
                    e.line,
                    format!("unknown output `{word}` (expected trajectory-csv, density-csv or density-frames)"),
                );
            };
            if kinds.contains(&kind) {
                return fail(e.line, format!("output `{word}` listed twice"));
            }
            kinds.push(kind);
        }
        kinds.sort();
        Ok(kinds)
    }
}

fn all_keys() -> impl Iterator<Item = &'static str> {
    COMMON_KEYS
        .into_iter()
        .chain(Mode::ALL.into_iter().flat_map(|m| m.keys().iter().copied()))
}

/// Parse and validate a config file's contents.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return fail(line, format!("expected `key = value`, found `{content}`"));
        };
        let (key, value) = (key.trim(), value.trim());
        if !all_keys().any(|k| k == key) {
            return fail(line, format!("unknown key `{key}`"));
        }
        if value.is_empty() {
            return fail(line, format!("key `{key}` has no value"));
        }
        if let Some(first) = entries.get(key) {
            return fail(
                line,
                format!("duplicate key `{key}` (first set on line {})", first.line),
            );
        }
        entries.insert(
            key.to_string(),
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }

    let Some(mode_entry) = entries.get("mode") else {
        return fail(last_line + 1, "missing key `mode`");
    };
    let mode_line = mode_entry.line;
    let Some(mode) = Mode::ALL.into_iter().find(|m| m.name() == mode_entry.value) else {
        return fail(
            mode_line,
            format!(
                "unknown mode `{}` (expected evolve1d, evolve2d, lissajous, breathing or figure-preset)",
                mode_entry.value
            ),
        );
    };
    for (key, e) in &entries {
        if !COMMON_KEYS.contains(&key.as_str()) && !mode.keys().contains(&key.as_str()) {
            return fail(e.line, format!("key `{key}` does not apply to mode `{}`", mode.name()));
        }
    }

    let fields = Fields {
        entries,
        mode,
        mode_line,
    };
    let tunneling = match fields.real_opt("J")? {
        Some(j) => {
            fields.check("J", j, j > 0.0, "must be positive")?;
            j
        }
        None => 1.0,
    };
    let output_dir = PathBuf::from(&fields.raw("output_dir")?.value);
    let outputs = fields.outputs()?;

    let scenario = match mode {
        Mode::Evolve1d => Scenario::Evolve1d {
            grid: fields.grid()?,
            tilt_over_j: fields.tilt("F_over_J", false)?,
            sigma: fields.sigma()?,
            center: fields.real("X")?,
            momentum: fields.real("P")?,
        },
        Mode::Evolve2d => Scenario::Evolve2d {
            grid: fields.grid()?,
            tilt_x_over_j: fields.tilt("Fx_over_J", false)?,
            tilt_y_over_j: fields.tilt("Fy_over_J", false)?,
            sigma: fields.sigma()?,
            center_x: fields.real("X")?,
            center_y: fields.real("Y")?,
            momentum_x: fields.real("Px")?,
            momentum_y: fields.real("Py")?,
        },
        Mode::Lissajous => lissajous(&fields, tunneling)?,
        Mode::Breathing => Scenario::Breathing {
            grid: fields.grid()?,
            tilt_over_j: fields.tilt("F_over_J", false)?,
            x0: fields.integer("x0")?,
        },
        Mode::FigurePreset => {
            let e = fields.raw("preset")?;
            let Some(preset) = Preset::from_name(&e.value) else {
                return fail(
                    e.line,
                    format!("unknown preset `{}` (expected fig1 … fig5)", e.value),
                );
            };
            let fig2_tilts = fields.reals_opt("fig2_F_over_J")?.unwrap_or(FIG2_TILTS.to_vec());
            let fig2_momenta = fields.reals_opt("fig2_P")?.unwrap_or(FIG2_MOMENTA.to_vec());
            if fig2_tilts.is_empty() || fig2_momenta.is_empty() {
                return fail(fields.line("fig2_F_over_J"), "fig2 lists must not be empty");
            }
            for &f in &fig2_tilts {
                fields.check("fig2_F_over_J", f, f > 0.0, "forces must be positive")?;
            }
            Scenario::FigurePreset {
                preset,
                fig2_tilts,
                fig2_momenta,
            }
        }
    };

    Ok(ScenarioConfig {
        tunneling,
        output_dir,
        outputs,
        scenario,
    })
}

fn lissajous(fields: &Fields, tunneling: f64) -> Result<Scenario, ConfigError> {
    let grid = fields.grid()?;
    let mut ratio = [0u32; 2];
    for (slot, key) in ratio.iter_mut().zip(["p", "q"]) {
        let v = fields.integer(key)?;
        if !(1..=i64::from(u16::MAX)).contains(&v) {
            return fail(fields.line(key), format!("`{key}` = {v} is out of range: must lie in 1..=65535"));
        }
        *slot = v as u32;
    }
    let phase = fields.real("phi")?;
    let a = fields.real_opt("A")?;
    let b = fields.real_opt("B")?;
    let amplitudes = match (a, b) {
        (Some(a), Some(b)) => {
            fields.check("A", a, a > 0.0, "must be positive")?;
            fields.check("B", b, b > 0.0, "must be positive")?;
            Some((a, b))
        }
        (None, None) => None,
        (Some(_), None) => return fail(fields.line("A"), "`A` needs `B` as well"),
        (None, Some(_)) => return fail(fields.line("B"), "`B` needs `A` as well"),
    };
    let base_frequency = fields.real_opt("base_frequency")?;
    if let Some(w) = base_frequency {
        fields.check("base_frequency", w, w > 0.0, "must be positive")?;
    }
    if amplitudes.is_none() && base_frequency.is_none() {
        return fail(
            fields.mode_line,
            "mode `lissajous` requires `A` and `B`, or `base_frequency`",
        );
    }
    let target = LissajousTarget {
        ratio_p: ratio[0],
        ratio_q: ratio[1],
        phase,
        amplitudes,
        base_frequency,
    };
    let planned = plan(&scaled(&target, tunneling), tunneling).map_err(|e| {
        let key = match e {
            tilted_lattice::Error::Consistency(_) if amplitudes.is_some() => "A",
            _ => "q",
        };
        ConfigError {
            line: fields.line(key),
            message: e.to_string(),
        }
    })?;
    let limit = MAX_PERIODS * planned.period;
    fields.check(
        "t_end",
        grid.end,
        grid.end <= limit,
        &format!("must not exceed ten curve periods ({})", float(limit)),
    )?;
    Ok(Scenario::Lissajous {
        grid,
        target,
        sigma: fields.sigma()?,
    })
}
