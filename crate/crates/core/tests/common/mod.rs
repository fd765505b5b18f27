#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use thzprop::constants::SPEED_OF_LIGHT;
use thzprop::{Complex64, ConstitutiveParams, InterfaceProblem, OperatingPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

pub fn dielectric(eps_r: f64) -> ConstitutiveParams {
    ConstitutiveParams::from_relative(1.0, eps_r, 0.0).unwrap()
}

pub fn random_lossless(rng: &mut impl Rng) -> ConstitutiveParams {
    ConstitutiveParams::from_relative(rng.gen_range(1.0..3.0), rng.gen_range(1.0..20.0), 0.0).unwrap()
}

/// Lossy medium with loss tangent spread over many decades at `freq_hz`.
pub fn random_lossy(rng: &mut impl Rng) -> ConstitutiveParams {
    ConstitutiveParams::from_relative(rng.gen_range(1.0..3.0), rng.gen_range(1.0..20.0), log_uniform(rng, 1e-4, 1e6))
        .unwrap()
}

/// Medium whose loss tangent at `op` is log-uniform in `[lo, hi]`.
pub fn random_lossy_at(rng: &mut impl Rng, op: OperatingPoint, lo: f64, hi: f64) -> ConstitutiveParams {
    let (mu_r, eps_r) = (rng.gen_range(1.0..3.0), rng.gen_range(1.0..20.0));
    let eps = ConstitutiveParams::from_relative(mu_r, eps_r, 0.0).unwrap().eps();
    let sigma = log_uniform(rng, lo, hi) * op.angular() * eps;
    ConstitutiveParams::from_relative(mu_r, eps_r, sigma).unwrap()
}

pub fn random_freq(rng: &mut impl Rng) -> OperatingPoint {
    OperatingPoint::from_hz(log_uniform(rng, 1e9, 1e13)).unwrap()
}

pub fn problem(m1: ConstitutiveParams, m2: ConstitutiveParams, op: OperatingPoint, theta_deg: f64) -> InterfaceProblem {
    InterfaceProblem::new(m1, m2, op, theta_deg.to_radians()).unwrap()
}

pub fn refractive_index(m: &ConstitutiveParams) -> f64 {
    (m.mu_r() * m.eps_r()).sqrt()
}

/// `|a − b| / |b|`, or `|a − b|` when `b` is zero.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if b.norm() == 0.0 {
        d
    } else {
        d / b.norm()
    }
}

pub fn rel_err_f(a: f64, b: f64) -> f64 {
    rel_err(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
}

/// Rayleigh parameter at the specular direction, written out directly.
pub fn specular_g_oracle(sigma_h: f64, theta_i: f64, lambda: f64) -> f64 {
    let a = 4.0 * std::f64::consts::PI * sigma_h * theta_i.cos() / lambda;
    a * a
}

pub fn free_space_lambda(freq_hz: f64) -> f64 {
    SPEED_OF_LIGHT / freq_hz
}

/// Propagation direction of constant phase, extracted from field samples.
///
/// `field(x, z)` must be a scalar plane-wave component. The phase gradient is
/// taken from central-difference phase ratios (so no unwrapping is needed)
/// and averaged over a `n × n` grid with spacing `h`.
pub fn phase_front_angle(field: impl Fn(f64, f64) -> Complex64, h: f64, n: usize) -> f64 {
    let (mut gx, mut gz) = (0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            let x = (i as f64 - (n / 2) as f64) * h * 4.0;
            let z = (k + 1) as f64 * h * 4.0;
            gx += (field(x + h, z) / field(x - h, z)).arg() / (2.0 * h);
            gz += (field(x, z + h) / field(x, z - h)).arg() / (2.0 * h);
        }
    }
    // Phase decreases along the travel direction under exp(+jωt).
    (-gx).atan2(-gz)
}

#[derive(Debug, Deserialize)]
pub struct SeriesFixture {
    pub terms: usize,
    pub cases: Vec<SeriesCase>,
    pub parts_case: PartsCase,
    pub scatter_default_cells: Vec<ScatterCell>,
}

#[derive(Debug, Deserialize)]
pub struct SeriesCase {
    pub g_target: f64,
    pub sigma_h: f64,
    pub corr_dist: f64,
    pub dim_x: f64,
    pub dim_y: f64,
    pub lambda: f64,
    pub theta_i: f64,
    pub theta_r: f64,
    pub theta_s: f64,
    #[serde(deserialize_with = "decimal")]
    pub g: f64,
    #[serde(deserialize_with = "decimal")]
    pub mean_rho_sq: f64,
}

#[derive(Debug, Deserialize)]
pub struct PartsCase {
    pub g: f64,
    pub rho0: f64,
    pub f_factor: f64,
    pub corr_dist: f64,
    pub area: f64,
    pub v_sq: f64,
    #[serde(deserialize_with = "decimal")]
    pub mean_rho_sq: f64,
}

#[derive(Debug, Deserialize)]
pub struct ScatterCell {
    pub theta_r_deg: f64,
    #[serde(deserialize_with = "decimal")]
    pub g: f64,
    #[serde(deserialize_with = "decimal")]
    pub mean_rho_sq: f64,
}

fn decimal<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn series_fixture() -> SeriesFixture {
    let text = std::fs::read_to_string(crate_dir().join("tests/data/series_oracle.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Runs the `thzprop` binary from the crate directory.
pub fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thzprop"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("failed to launch thzprop")
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(name)
}

/// Parses CSV output into a header and rows of raw fields.
pub fn parse_csv(text: &[u8]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut rdr = csv::Reader::from_reader(text);
    let header = rdr.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = rdr
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}


const MATS: &str = "tests/data/materials.json";

/// One fixed invocation per subcommand, with its golden file name.
pub const GOLDEN: [(&str, &[&str]); 6] = [
    ("propagate.csv", &["--materials", MATS, "propagate", "--material", "lossy4", "--freq", "3e11"]),
    ("fresnel.csv", &["--materials", MATS, "fresnel", "--material2", "glass", "--freq", "3e11", "--theta-i", "0:89:90"]),
    ("refract.csv", &["--materials", MATS, "refract", "--material2", "lossy4", "--freq", "3e11", "--theta-i", "0:85:18"]),
    ("rayleigh.csv", &["rayleigh"]),
    ("scatter.csv", &["scatter", "--theta-s", "0:90:3"]),
    ("materials.csv", &["--materials", MATS, "materials", "list"]),
];
