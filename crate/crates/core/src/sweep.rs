//! Parameter sweeps, ray diagrams and wavefield grids, emitted as CSV or JSON
//! tables.
//!
//! Every table has a fixed column order and one row per requested sample;
//! samples outside the valid domain stay in the output with their regime
//! marked `invalid`. Numbers are written with 9 significant digits.

use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::kinematics::{
    critical_angle, derive_kinematics, refraction_angle, unrotate_frame, Regime, ScatteringConfig,
    StepPotential,
};
use crate::scattering::{reflection_complex, reflection_quaternionic, EvanescentMode, WaveField};

pub const INVALID: &str = "invalid";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn opt(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn text(s: &str) -> Self {
        Cell::Text(s.to_string())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Cell::Text(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// `%.9g`-style formatting: 9 significant digits, trailing zeros trimmed,
/// scientific notation outside `1e-5 <= |v| < 1e9`.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{v:.8e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..9).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn rounded(v: f64) -> Value {
    format_sig9(v)
        .parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of a numeric column (`None` for empty cells).
    pub fn numbers(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.column(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    pub fn texts(&self, name: &str) -> Option<Vec<Option<&str>>> {
        let idx = self.column(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_str()).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            let fields = row.iter().map(|c| match c {
                Cell::Num(v) => format_sig9(*v),
                Cell::Text(s) => s.clone(),
                Cell::Empty => String::new(),
            });
            w.write_record(fields).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let v = match cell {
                        Cell::Num(v) => rounded(*v),
                        Cell::Text(s) => Value::String(s.clone()),
                        Cell::Empty => Value::Null,
                    };
                    m.insert(name.clone(), v);
                }
                Value::Object(m)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(records)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Refraction,
    CriticalAngle,
    ReflectionModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `x = V1/E` for the complex series, `x = |V_q|/E` for the quaternionic one.
    PotentialRatio,
    /// Incidence angle in radians.
    IncidenceAngle,
}

/// Half-open grid `start + k (stop - start) / count`, `k = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepRange {
    pub fn new(start: f64, stop: f64, count: usize) -> Self {
        Self { start, stop, count }
    }

    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / self.count as f64;
        (0..self.count)
            .map(|k| self.start + step * k as f64)
            .collect()
    }
}

/// `θ_C(a, ε x)` column for quaternionic perturbations of a complex step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub a: f64,
    pub eps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub axis: Axis,
    pub range: SweepRange,
    pub energy: f64,
    /// Fixed incidence angle (radians) when sweeping the potential ratio.
    pub theta: f64,
    /// Fixed potential ratio when sweeping the incidence angle.
    pub ratio: f64,
    pub d_star: f64,
    pub mode: EvanescentMode,
    pub perturbation: Option<Perturbation>,
}

impl SweepSpec {
    pub fn new(quantity: Quantity, axis: Axis, range: SweepRange) -> Self {
        Self {
            quantity,
            axis,
            range,
            energy: 1.0,
            theta: std::f64::consts::FRAC_PI_4,
            ratio: 1.0 / 3.0,
            d_star: 0.0,
            mode: EvanescentMode::PaperLiteral,
            perturbation: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.range.count < 2 {
            return Err(Error::InvalidSweep(format!(
                "need at least 2 points, got {}",
                self.range.count
            )));
        }
        if !(self.range.start.is_finite() && self.range.stop.is_finite()) {
            return Err(Error::InvalidSweep("range bounds must be finite".into()));
        }
        if !(self.energy.is_finite() && self.energy > 0.0) {
            return Err(Error::NonPositiveEnergy(self.energy));
        }
        if self.quantity == Quantity::CriticalAngle && self.axis != Axis::PotentialRatio {
            return Err(Error::InvalidSweep(
                "critical angles can only be swept over the potential ratio".into(),
            ));
        }
        Ok(())
    }

    pub fn evaluate(&self) -> Result<Table> {
        self.validate()?;
        match self.quantity {
            Quantity::CriticalAngle => Ok(self.critical_table()),
            Quantity::ReflectionModulus | Quantity::Refraction => Ok(self.series_table()),
        }
    }

    fn critical_table(&self) -> Table {
        let mut columns = vec![
            "x",
            "theta_c_complex_rad",
            "theta_c_complex_deg",
            "theta_c_quaternionic_rad",
            "theta_c_quaternionic_deg",
        ];
        if self.perturbation.is_some() {
            columns.extend(["theta_c_perturbed_rad", "theta_c_perturbed_deg"]);
        }
        columns.push("status");
        let mut table = Table::new(columns);
        let perturbation = self.perturbation;
        table.rows = self
            .range
            .values()
            .into_par_iter()
            .map(|x| {
                let complex = critical_angle(x, 0.0);
                let quat = critical_angle(0.0, x);
                let pert = perturbation.map(|p| critical_angle(p.a, p.eps * x));
                let valid =
                    complex.is_ok() && quat.is_ok() && pert.as_ref().is_none_or(|r| r.is_ok());
                let angle = |r: &Result<crate::kinematics::CriticalAngle>| {
                    r.as_ref().ok().and_then(|c| c.angle())
                };
                let mut row = vec![Cell::Num(x)];
                for r in [Some(&complex), Some(&quat), pert.as_ref()]
                    .into_iter()
                    .flatten()
                {
                    let a = angle(r);
                    row.push(Cell::opt(a));
                    row.push(Cell::opt(a.map(f64::to_degrees)));
                }
                row.push(Cell::text(if valid { "ok" } else { INVALID }));
                row
            })
            .collect();
        table
    }

    fn sample(&self, value: f64) -> (f64, f64) {
        match self.axis {
            Axis::PotentialRatio => (value, self.theta),
            Axis::IncidenceAngle => (self.ratio, value),
        }
    }

    fn series_table(&self) -> Table {
        let stem = match self.quantity {
            Quantity::ReflectionModulus => ["abs_r", "arg_r"],
            _ => ["phi_rad", "phi_deg"],
        };
        let mut columns = vec!["x".to_string(), "theta_rad".into(), "theta_deg".into()];
        for series in ["complex", "quaternionic"] {
            for s in stem {
                columns.push(format!("{series}_{s}"));
            }
            columns.push(format!("{series}_regime"));
        }
        let mut table = Table::new(columns);
        table.rows = self
            .range
            .values()
            .into_par_iter()
            .map(|v| {
                let (x, theta) = self.sample(v);
                let mut row = vec![
                    Cell::Num(x),
                    Cell::Num(theta),
                    Cell::Num(theta.to_degrees()),
                ];
                let e = self.energy;
                let complex = StepPotential::complex(x * e).at(self.d_star);
                let quat = StepPotential::quaternionic(x * e, 0.0).at(self.d_star);
                for pot in [complex, quat] {
                    row.extend(self.series_cells(ScatteringConfig::new(e, theta, pot)));
                }
                row
            })
            .collect();
        table
    }

    fn series_cells(&self, config: Result<ScatteringConfig>) -> [Cell; 3] {
        let invalid = || [Cell::Empty, Cell::Empty, Cell::text(INVALID)];
        let Ok(config) = config else {
            return invalid();
        };
        let Ok(kin) = derive_kinematics(&config) else {
            return invalid();
        };
        let regime = Cell::text(kin.regime.as_str());
        match self.quantity {
            Quantity::ReflectionModulus => {
                let r = if config.potential.is_complex() {
                    reflection_complex(&config)
                } else {
                    reflection_quaternionic(&config, self.mode)
                };
                match r {
                    Ok(r) => [Cell::Num(r.norm()), Cell::Num(r.arg()), regime],
                    Err(_) => invalid(),
                }
            }
            _ => {
                let phi = (kin.regime == Regime::Propagating)
                    .then(|| refraction_angle(config.theta, kin.index_sq.sqrt()))
                    .flatten();
                [Cell::opt(phi), Cell::opt(phi.map(f64::to_degrees)), regime]
            }
        }
    }
}

/// Segment between two lab-frame `(y, z)` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: (f64, f64),
    pub end: (f64, f64),
}

/// Incident, reflected and refracted rays of one configuration in the lab
/// frame. The incident ray runs along `+z` and hits the interface at the
/// point `(y*, z*) = (0, d*)`; angles are measured from the `z*` axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayDiagram {
    pub theta: f64,
    pub phi: Option<f64>,
    pub index_sq: f64,
    pub regime: Regime,
    pub incident: Segment,
    pub reflected: Segment,
    pub refracted: Option<Segment>,
}

impl RayDiagram {
    pub fn new(config: &ScatteringConfig, length: f64) -> Result<Self> {
        let kin = derive_kinematics(config)?;
        let theta = config.theta;
        let hit = unrotate_frame(theta, (0.0, config.potential.d_star));
        let ray = |dir_star: (f64, f64)| {
            let (dy, dz) = unrotate_frame(theta, dir_star);
            Segment {
                start: hit,
                end: (hit.0 + length * dy, hit.1 + length * dz),
            }
        };
        let phi = (kin.regime == Regime::Propagating)
            .then(|| refraction_angle(theta, kin.index_sq.sqrt()))
            .flatten();
        let (s, c) = theta.sin_cos();
        Ok(Self {
            theta,
            phi,
            index_sq: kin.index_sq,
            regime: kin.regime,
            incident: Segment {
                start: (hit.0, hit.1 - length),
                end: hit,
            },
            reflected: ray((s, -c)),
            refracted: phi.map(|p| ray(p.sin_cos())),
        })
    }

    pub fn table(&self, config: &ScatteringConfig) -> Table {
        let mut columns = vec![
            "energy",
            "v1",
            "v2",
            "v3",
            "d_star",
            "theta_rad",
            "theta_deg",
            "index_sq",
            "index",
            "phi_rad",
            "phi_deg",
            "regime",
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        for ray in ["incident", "reflected", "refracted"] {
            for c in ["y0", "z0", "y1", "z1"] {
                columns.push(format!("{ray}_{c}"));
            }
        }
        let pot = &config.potential;
        let mut row = vec![
            Cell::Num(config.energy),
            Cell::Num(pot.v1),
            Cell::Num(pot.v2),
            Cell::Num(pot.v3),
            Cell::Num(pot.d_star),
            Cell::Num(self.theta),
            Cell::Num(self.theta.to_degrees()),
            Cell::Num(self.index_sq),
            Cell::opt((self.index_sq >= 0.0).then(|| self.index_sq.sqrt())),
            Cell::opt(self.phi),
            Cell::opt(self.phi.map(f64::to_degrees)),
            Cell::text(self.regime.as_str()),
        ];
        for seg in [Some(self.incident), Some(self.reflected), self.refracted] {
            match seg {
                Some(s) => row.extend([s.start.0, s.start.1, s.end.0, s.end.1].map(Cell::Num)),
                None => row.extend(std::iter::repeat_n(Cell::Empty, 4)),
            }
        }
        Table {
            columns,
            rows: vec![row],
        }
    }
}

/// Rectangular `(y*, z*)` sampling grid, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveGrid {
    pub y_range: (f64, f64),
    pub z_range: (f64, f64),
    pub ny: usize,
    pub nz: usize,
}

fn inclusive(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![range.0];
    }
    let step = (range.1 - range.0) / (n - 1) as f64;
    (0..n).map(|k| range.0 + step * k as f64).collect()
}

/// `Ψ` sampled on `grid`, rows ordered by `y*` then `z*`.
pub fn wavefield_table(
    config: &ScatteringConfig,
    mode: EvanescentMode,
    grid: &WaveGrid,
) -> Result<Table> {
    if grid.ny == 0 || grid.nz == 0 {
        return Err(Error::InvalidSweep(
            "wavefield grid needs at least one point per axis".into(),
        ));
    }
    let bounds = [
        grid.y_range.0,
        grid.y_range.1,
        grid.z_range.0,
        grid.z_range.1,
    ];
    if bounds.iter().any(|b| !b.is_finite()) {
        return Err(Error::InvalidSweep("grid bounds must be finite".into()));
    }
    let field = WaveField::new(config, mode)?;
    let ys = inclusive(grid.y_range, grid.ny);
    let zs = inclusive(grid.z_range, grid.nz);
    let points: Vec<(f64, f64)> = ys
        .iter()
        .flat_map(|&y| zs.iter().map(move |&z| (y, z)))
        .collect();
    let mut table = Table::new([
        "y_star", "z_star", "region", "psi_w", "psi_x", "psi_y", "psi_z", "psi_norm",
    ]);
    table.rows = points
        .into_par_iter()
        .map(|(y, z)| {
            let psi = field.value((y, z));
            let region = if z <= field.d_star() { "I" } else { "II" };
            vec![
                Cell::Num(y),
                Cell::Num(z),
                Cell::text(region),
                Cell::Num(psi.w),
                Cell::Num(psi.x),
                Cell::Num(psi.y),
                Cell::Num(psi.z),
                Cell::Num(psi.norm()),
            ]
        })
        .collect();
    Ok(table)
}
