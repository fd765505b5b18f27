//! `thzprop` command-line front end.
//!
//! Every subcommand produces a [`Table`] that is rendered as CSV (default)
//! or JSON. Numbers are printed with 17 significant digits in scientific
//! notation so identical invocations give byte-identical output. Angles on
//! the command line are degrees; lengths for surface statistics are
//! millimetres.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::constants::free_space_wavelength;
use crate::interface::{self, InterfaceProblem};
use crate::materials::MaterialDb;
use crate::propagation::{OperatingPoint, PropagationState};
use crate::scatter::{self, RoughSurfaceStats, ScatterGeometry, ScatterObservation, SeriesOptions};
use crate::{Error, Result};

pub const DEFAULT_FREQ_HZ: f64 = 293.089e9;
pub const DEFAULT_SIGMA_H_MM: [f64; 2] = [0.09, 0.225];

#[derive(Debug, Parser)]
#[command(name = "thzprop", version, about = "Low-THz plane-wave propagation, Fresnel and rough-surface scattering calculator")]
pub struct Cli {
    /// JSON material file merged over the built-in materials.
    #[arg(long, global = true)]
    pub materials: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output path, or `-`/`stdout`.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,

    /// Relative truncation tolerance of the scattering series.
    #[arg(long, global = true, default_value_t = scatter::DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Attenuation, phase constant, impedance, wavelength and admittance of a material.
    Propagate {
        #[arg(long)]
        material: String,
        /// Frequency in Hz.
        #[arg(long)]
        freq: f64,
    },
    /// Fresnel coefficients of a planar interface.
    Fresnel(PairArgs),
    /// Complex refraction angle, true refracted angle and travel direction.
    Refract(PairArgs),
    /// Rayleigh roughness parameter at the specular direction versus incidence angle.
    Rayleigh(RayleighArgs),
    /// Mean squared scattering coefficient and scattered power over a (θr, θs) grid.
    Scatter(ScatterArgs),
    /// Inspect the material database.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum MaterialsAction {
    /// List every material with its sampled frequency range.
    List,
    /// Load and validate the material file.
    Validate,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Incidence-side material.
    #[arg(long, default_value = "air")]
    pub material1: String,
    /// Transmission-side material.
    #[arg(long)]
    pub material2: String,
    /// Frequency in Hz, or `start:stop:points`.
    #[arg(long)]
    pub freq: Axis,
    /// Incidence angle in degrees, or `start:stop:points`.
    #[arg(long, default_value = "0")]
    pub theta_i: Axis,
}

#[derive(Debug, Args)]
pub struct RayleighArgs {
    /// Frequency in Hz.
    #[arg(long, default_value_t = DEFAULT_FREQ_HZ)]
    pub freq: f64,
    /// Height standard deviations in mm, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_SIGMA_H_MM)]
    pub sigma_h_mm: Vec<f64>,
    /// Incidence angle sweep in degrees.
    #[arg(long, default_value = "0:90:181")]
    pub theta_i: Axis,
    /// Propagation medium; the free-space wavelength c/f is used when omitted.
    #[arg(long)]
    pub material: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    /// Incidence-side (dielectric) material.
    #[arg(long, default_value = "air")]
    pub material: String,
    #[arg(long, default_value_t = DEFAULT_FREQ_HZ)]
    pub freq: f64,
    /// Incidence angle in degrees.
    #[arg(long, default_value_t = 30.0)]
    pub theta_i: f64,
    /// Height standard deviation in mm, or `start:stop:points`.
    #[arg(long, default_value = "0.09")]
    pub sigma_h_mm: Axis,
    /// Correlation distance in mm.
    #[arg(long, default_value_t = 1.0)]
    pub corr_dist_mm: f64,
    /// Patch dimension X in mm.
    #[arg(long, default_value_t = 10.0)]
    pub dim_x_mm: f64,
    /// Patch dimension Y in mm.
    #[arg(long, default_value_t = 10.0)]
    pub dim_y_mm: f64,
    /// Scattered zenith angle in degrees, or `start:stop:points`.
    #[arg(long, default_value = "0:90:10")]
    pub theta_r: Axis,
    /// Scattered azimuth in degrees, or `start:stop:points`.
    #[arg(long, default_value = "0")]
    pub theta_s: Axis,
    /// Observation distance R₀ in m.
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Incident ⊥ field amplitude in V/m.
    #[arg(long, default_value_t = 1.0)]
    pub e_i: f64,
    #[arg(long, default_value_t = scatter::DEFAULT_MAX_TERMS)]
    pub max_terms: usize,
}

/// Quantities that may be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Freq,
    ThetaI,
    ThetaR,
    ThetaS,
    SigmaH,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Freq => "freq",
            SweepVariable::ThetaI => "theta_i",
            SweepVariable::ThetaR => "theta_r",
            SweepVariable::ThetaS => "theta_s",
            SweepVariable::SigmaH => "sigma_h",
        })
    }
}

/// Linearly spaced sweep, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, start: f64, stop: f64, points: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::validation("sweep", format!("{variable}: start must be < stop (got {start}..{stop})")));
        }
        if points < 2 {
            return Err(Error::validation("sweep", format!("{variable}: at least 2 points required")));
        }
        Ok(Self {
            variable,
            start,
            stop,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                let k = k as f64;
                (self.start * (last - k) + self.stop * k) / last
            })
            .collect()
    }
}

/// A command-line axis: a single value or `start:stop:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Fixed(f64),
    Range { start: f64, stop: f64, points: usize },
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        match parts.as_slice() {
            [v] => Ok(Axis::Fixed(num(v)?)),
            [a, b, n] => Ok(Axis::Range {
                start: num(a)?,
                stop: num(b)?,
                points: n.trim().parse().map_err(|e| format!("`{n}`: {e}"))?,
            }),
            _ => Err(format!("expected a value or start:stop:points, got `{s}`")),
        }
    }
}

impl Axis {
    pub fn values(&self, variable: SweepVariable) -> Result<Vec<f64>> {
        match *self {
            Axis::Fixed(v) => Ok(vec![v]),
            Axis::Range { start, stop, points } => Ok(SweepSpec::new(variable, start, stop, points)?.values()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

/// Fixed 17-significant-digit rendering; `-0` prints as `0`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{:.16e}", v + 0.0)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Num(v) if v.is_finite() => format_number(*v),
            Cell::Num(_) | Cell::Missing => "null".into(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => serde_json::to_string(s).expect("string serialization"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }

    pub fn to_json(&self) -> String {
        let keys: Vec<String> = self
            .columns
            .iter()
            .map(|c| serde_json::to_string(c).expect("string serialization"))
            .collect();
        let mut out = String::from("[");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
            for (j, (k, cell)) in keys.iter().zip(row).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(k);
                out.push_str(": ");
                out.push_str(&cell.json());
            }
            out.push('}');
        }
        out.push_str(if self.rows.is_empty() { "]\n" } else { "\n]\n" });
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Output of one command: the table plus any warnings for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub warnings: Vec<String>,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Self {
            table,
            warnings: Vec::new(),
        }
    }
}

fn load_db(cli: &Cli) -> Result<MaterialDb> {
    match &cli.materials {
        Some(path) => MaterialDb::load(path),
        None => Ok(MaterialDb::builtin()),
    }
}

/// Runs the parsed command.
pub fn execute(cli: &Cli) -> Result<Report> {
    let db = load_db(cli)?;
    match &cli.command {
        Command::Propagate { material, freq } => cmd_propagate(&db, material, *freq).map(Report::from),
        Command::Fresnel(args) => cmd_fresnel(&db, args).map(Report::from),
        Command::Refract(args) => cmd_refract(&db, args).map(Report::from),
        Command::Rayleigh(args) => cmd_rayleigh(&db, args).map(Report::from),
        Command::Scatter(args) => cmd_scatter(&db, args, cli.tol),
        Command::Materials { action } => Ok(cmd_materials(&db, action, cli.materials.as_ref()).into()),
    }
}

pub fn cmd_propagate(db: &MaterialDb, material: &str, freq: f64) -> Result<Table> {
    let params = db.params_at(material, freq)?;
    let s = PropagationState::compute(&params, OperatingPoint::from_hz(freq)?)?;
    let mut t = Table::new(&[
        "material",
        "freq_hz",
        "alpha_np_per_m",
        "beta_rad_per_m",
        "eta_re_ohm",
        "eta_im_ohm",
        "lambda_m",
        "admittance_re_s",
        "admittance_im_s",
    ]);
    t.rows.push(vec![
        material.into(),
        freq.into(),
        s.alpha.into(),
        s.beta.into(),
        s.eta.re.into(),
        s.eta.im.into(),
        s.lambda.into(),
        s.admittance.re.into(),
        s.admittance.im.into(),
    ]);
    Ok(t)
}

/// `(freq, theta_i)` pairs, frequency outermost.
fn pair_grid(args: &PairArgs) -> Result<Vec<(f64, f64)>> {
    let freqs = args.freq.values(SweepVariable::Freq)?;
    let thetas = args.theta_i.values(SweepVariable::ThetaI)?;
    Ok(freqs
        .iter()
        .flat_map(|&f| thetas.iter().map(move |&t| (f, t)))
        .collect())
}

fn pair_problem(db: &MaterialDb, args: &PairArgs, freq: f64, theta_deg: f64) -> Result<InterfaceProblem> {
    let m1 = db.params_at(&args.material1, freq)?;
    let m2 = db.params_at(&args.material2, freq)?;
    InterfaceProblem::new(m1, m2, OperatingPoint::from_hz(freq)?, theta_deg.to_radians())
}

fn complex_cells(z: Complex64) -> [Cell; 2] {
    [z.re.into(), z.im.into()]
}

pub fn cmd_fresnel(db: &MaterialDb, args: &PairArgs) -> Result<Table> {
    let mut t = Table::new(&[
        "freq_hz",
        "theta_i_deg",
        "gamma_perp_re",
        "gamma_perp_im",
        "t_perp_re",
        "t_perp_im",
        "gamma_par_re",
        "gamma_par_im",
        "t_par_re",
        "t_par_im",
        "psi_t_deg",
    ]);
    t.rows = pair_grid(args)?
        .par_iter()
        .map(|&(f, theta)| {
            let p = pair_problem(db, args, f, theta)?;
            let c = interface::fresnel(&p)?;
            let refr = interface::true_refraction(&p)?;
            let mut row = vec![Cell::from(f), Cell::from(theta)];
            for z in [c.gamma_perp, c.t_perp, c.gamma_par, c.t_par] {
                row.extend(complex_cells(z));
            }
            row.push(refr.psi_t.to_degrees().into());
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(t)
}

pub fn cmd_refract(db: &MaterialDb, args: &PairArgs) -> Result<Table> {
    let mut t = Table::new(&[
        "freq_hz",
        "theta_i_deg",
        "sin_theta_t_re",
        "sin_theta_t_im",
        "cos_theta_t_re",
        "cos_theta_t_im",
        "psi_t_deg",
        "n_t_x",
        "n_t_y",
        "n_t_z",
    ]);
    t.rows = pair_grid(args)?
        .par_iter()
        .map(|&(f, theta)| {
            let p = pair_problem(db, args, f, theta)?;
            let r = interface::true_refraction(&p)?;
            let mut row = vec![Cell::from(f), Cell::from(theta)];
            row.extend(complex_cells(r.sin_theta_t));
            row.extend(complex_cells(r.cos_theta_t));
            row.push(r.psi_t.to_degrees().into());
            row.extend(r.n_t.map(Cell::from));
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(t)
}

pub fn cmd_rayleigh(db: &MaterialDb, args: &RayleighArgs) -> Result<Table> {
    let lambda = match &args.material {
        Some(name) => {
            let params = db.params_at(name, args.freq)?;
            PropagationState::compute(&params, OperatingPoint::from_hz(args.freq)?)?.lambda
        }
        None => {
            OperatingPoint::from_hz(args.freq)?;
            free_space_wavelength(args.freq)
        }
    };
    if args.sigma_h_mm.is_empty() {
        return Err(Error::validation("rayleigh", "at least one height deviation is required"));
    }
    let mut columns = vec!["theta_i_deg".to_string()];
    columns.extend(args.sigma_h_mm.iter().map(|s| format!("g_sigma_h_{s}mm")));
    let thetas = args.theta_i.values(SweepVariable::ThetaI)?;
    let rows = thetas
        .par_iter()
        .map(|&theta| {
            let mut row = vec![Cell::from(theta)];
            for &s in &args.sigma_h_mm {
                row.push(scatter::specular_g(s * 1e-3, theta.to_radians(), lambda)?.into());
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(Table { columns, rows })
}

pub fn cmd_scatter(db: &MaterialDb, args: &ScatterArgs, tol: f64) -> Result<Report> {
    let opts = SeriesOptions {
        tol,
        max_terms: args.max_terms,
    };
    let params = db.params_at(&args.material, args.freq)?;
    let state = PropagationState::compute(&params, OperatingPoint::from_hz(args.freq)?)?;
    let lambda = state.lambda;
    let y1 = state.admittance.norm();
    let theta_i = args.theta_i.to_radians();
    let specular = ScatterGeometry::specular(theta_i)?;
    let obs = ScatterObservation::new(args.r0, Complex64::new(args.e_i, 0.0))?;

    let sigmas = args.sigma_h_mm.values(SweepVariable::SigmaH)?;
    let theta_rs = args.theta_r.values(SweepVariable::ThetaR)?;
    let theta_ss = args.theta_s.values(SweepVariable::ThetaS)?;
    let mut cells = Vec::with_capacity(sigmas.len() * theta_rs.len() * theta_ss.len());
    for &s in &sigmas {
        let stats = RoughSurfaceStats::new(
            s * 1e-3,
            args.corr_dist_mm * 1e-3,
            args.dim_x_mm * 1e-3,
            args.dim_y_mm * 1e-3,
        )?;
        // Perfectly conducting smooth reference patch: Γ⊥ = −1.
        let e_r = scatter::specular_reflected_field(&obs, &stats, &specular, state.beta, Complex64::new(-1.0, 0.0))?
            .helmholtz
            .norm();
        for &tr in &theta_rs {
            for &ts in &theta_ss {
                let geo = ScatterGeometry::new(theta_i, tr.to_radians(), ts.to_radians())?;
                cells.push((s, tr, ts, stats, geo, e_r));
            }
        }
    }

    let evaluated: Vec<_> = cells
        .par_iter()
        .map(|&(s, tr, ts, stats, geo, e_r)| {
            let k = scatter::scatter_kernel(&stats, &geo, lambda, opts);
            (s, tr, ts, k, e_r)
        })
        .collect();

    let mut t = Table::new(&[
        "sigma_h_mm",
        "theta_r_deg",
        "theta_s_deg",
        "g",
        "rho0",
        "f_factor",
        "mean_rho_sq",
        "terms_used",
        "mean_power_w_per_m2",
    ]);
    let mut warnings = Vec::new();
    let (mut steep, mut deep) = (0usize, 0usize);
    for (s, tr, ts, k, e_r) in evaluated {
        let mut row = vec![Cell::from(s), Cell::from(tr), Cell::from(ts)];
        match k {
            Ok(k) => {
                steep += usize::from(k.steep_slope);
                deep += usize::from(k.deep_rough);
                row.extend([
                    k.g.into(),
                    k.rho0.into(),
                    k.f_factor.into(),
                    k.mean_rho_sq.into(),
                    k.terms_used.into(),
                    scatter::mean_scattered_power(y1, e_r, k.mean_rho_sq).into(),
                ]);
            }
            Err(e @ (Error::Domain { .. } | Error::Convergence { .. })) => {
                warnings.push(format!(
                    "warning: sigma_h={s} mm theta_r={tr} deg theta_s={ts} deg: {e}"
                ));
                row.extend([
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Missing,
                    Cell::Num(f64::NAN),
                ]);
            }
            Err(e) => return Err(e),
        }
        t.rows.push(row);
    }
    if steep > 0 {
        warnings.push(format!(
            "warning: {steep} cell(s) have sigma_h/D > {}; the tangent-plane model may not hold",
            scatter::STEEP_SLOPE_RATIO
        ));
    }
    if deep > 0 {
        warnings.push(format!(
            "warning: {deep} cell(s) have g > {}; deep-rough regime",
            scatter::DEEP_ROUGH_G
        ));
    }
    Ok(Report { table: t, warnings })
}

pub fn cmd_materials(db: &MaterialDb, action: &MaterialsAction, source: Option<&PathBuf>) -> Table {
    match action {
        MaterialsAction::List => {
            let mut t = Table::new(&["name", "mu_r", "samples", "freq_min_hz", "freq_max_hz"]);
            for r in db.iter() {
                let (lo, hi) = match r.freq_range() {
                    Some((lo, hi)) => (Cell::Num(lo), Cell::Num(hi)),
                    None => (Cell::Missing, Cell::Missing),
                };
                t.rows.push(vec![r.name.as_str().into(), r.mu_r.into(), r.samples.len().into(), lo, hi]);
            }
            t
        }
        MaterialsAction::Validate => {
            let mut t = Table::new(&["source", "records", "status"]);
            let source = source.map_or_else(|| "builtin".to_string(), |p| p.display().to_string());
            t.rows.push(vec![Cell::Text(source), db.len().into(), "ok".into()]);
            t
        }
    }
}

/// Exit status for a failed command: 2 for usage/domain errors, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_user_error() {
        2
    } else {
        1
    }
}
