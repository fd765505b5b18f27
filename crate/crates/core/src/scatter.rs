//! Kirchhoff scattering from a randomly rough boundary.
//!
//! The boundary height `ζ(x, y)` is a stationary Gaussian process with zero
//! mean, standard deviation `ς` and correlation distance `D` over a patch of
//! size `X × Y`. Only those statistics enter the mean squared scattering
//! coefficient
//!
//! ```text
//! ⟨ρρ̄⟩ = e^{−g} ( ρ₀² + (πD²F²/A) Σ_{m≥1} gᵐ/(m!·m) · exp(−(v_x²+v_y²)D²/(4m)) )
//!
//! g   = [ (2πς/λ)(cos θᵢ + cos θᵣ) ]²
//! ρ₀  = sinc(v_x X) · sinc(v_y Y)
//! F   = (1 + cos θᵢ cos θᵣ − sin θᵢ sin θᵣ cos θₛ) / (cos θᵢ (cos θᵢ + cos θᵣ))
//! v_x = (2π/λ)(sin θᵢ − sin θᵣ cos θₛ)
//! v_y = −(2π/λ) sin θᵣ sin θₛ
//! ```
//!
//! where θᵣ is the scattered zenith angle and θₛ the scattered azimuth
//! measured from the plane of incidence. The specular direction is
//! `θᵣ = θᵢ, θₛ = 0`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::{Error, Result};

/// `|arg|` below which `sin(arg)/arg` is taken as exactly 1.
pub const SINC_THRESHOLD: f64 = 1e-12;

/// Lower bound on `cos θᵢ (cos θᵢ + cos θᵣ)` for the Kirchhoff factor.
pub const GRAZING_EPS: f64 = 1e-9;

/// `ς/D` above which the gentle-slope assumption is flagged.
pub const STEEP_SLOPE_RATIO: f64 = 0.5;

/// Rayleigh parameter above which the result is flagged as deep-rough.
pub const DEEP_ROUGH_G: f64 = 100.0;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Height statistics and extent of a rough patch. All lengths in metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoughSurfaceStats {
    sigma_h: f64,
    corr_dist: f64,
    dim_x: f64,
    dim_y: f64,
}

impl RoughSurfaceStats {
    pub fn new(sigma_h: f64, corr_dist: f64, dim_x: f64, dim_y: f64) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(sigma_h.is_finite() && sigma_h >= 0.0) {
            return Err(Error::validation("surface statistics", format!("height deviation must be >= 0, got {sigma_h}")));
        }
        if !positive(corr_dist) {
            return Err(Error::validation("surface statistics", format!("correlation distance must be > 0, got {corr_dist}")));
        }
        if !positive(dim_x) || !positive(dim_y) {
            return Err(Error::validation("surface statistics", format!("patch dimensions must be > 0, got {dim_x} x {dim_y}")));
        }
        Ok(Self {
            sigma_h,
            corr_dist,
            dim_x,
            dim_y,
        })
    }

    /// Height standard deviation ς.
    pub fn sigma_h(&self) -> f64 {
        self.sigma_h
    }

    /// Correlation distance D.
    pub fn corr_dist(&self) -> f64 {
        self.corr_dist
    }

    pub fn dim_x(&self) -> f64 {
        self.dim_x
    }

    pub fn dim_y(&self) -> f64 {
        self.dim_y
    }

    /// A = X·Y.
    pub fn area(&self) -> f64 {
        self.dim_x * self.dim_y
    }
}

/// Incident and scattered directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterGeometry {
    theta_i: f64,
    theta_r: f64,
    theta_s: f64,
}

impl ScatterGeometry {
    /// `theta_i ∈ [0, π/2)`, `theta_r ∈ [0, π/2]`, `theta_s ∈ [0, 2π)`.
    pub fn new(theta_i: f64, theta_r: f64, theta_s: f64) -> Result<Self> {
        if !(theta_i.is_finite() && (0.0..FRAC_PI_2).contains(&theta_i)) {
            return Err(Error::validation("scatter geometry", format!("theta_i must lie in [0, pi/2), got {theta_i}")));
        }
        if !(theta_r.is_finite() && (0.0..=FRAC_PI_2).contains(&theta_r)) {
            return Err(Error::validation("scatter geometry", format!("theta_r must lie in [0, pi/2], got {theta_r}")));
        }
        if !(theta_s.is_finite() && (0.0..TAU).contains(&theta_s)) {
            return Err(Error::validation("scatter geometry", format!("theta_s must lie in [0, 2pi), got {theta_s}")));
        }
        Ok(Self {
            theta_i,
            theta_r,
            theta_s,
        })
    }

    /// The specular direction for incidence at `theta_i`.
    pub fn specular(theta_i: f64) -> Result<Self> {
        Self::new(theta_i, theta_i, 0.0)
    }

    pub fn theta_i(&self) -> f64 {
        self.theta_i
    }

    pub fn theta_r(&self) -> f64 {
        self.theta_r
    }

    pub fn theta_s(&self) -> f64 {
        self.theta_s
    }

    pub fn is_specular(&self) -> bool {
        self.theta_r == self.theta_i && self.theta_s == 0.0
    }
}

/// Observation point for the specular reference field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterObservation {
    r0: f64,
    e_i: Complex64,
}

impl ScatterObservation {
    /// `r0`: distance from the origin (m); `e_i`: incident ⊥ amplitude (V/m).
    pub fn new(r0: f64, e_i: Complex64) -> Result<Self> {
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(Error::domain("r0", format!("observation distance must be > 0, got {r0}")));
        }
        Ok(Self { r0, e_i })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn e_i(&self) -> Complex64 {
        self.e_i
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Relative truncation tolerance, in `(0, 1e-3]`.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl SeriesOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol <= 1e-3) {
            return Err(Error::validation("series options", format!("tol must lie in (0, 1e-3], got {}", self.tol)));
        }
        if self.max_terms < 1 {
            return Err(Error::validation("series options", "max_terms must be >= 1"));
        }
        Ok(())
    }
}

/// Value of ⟨ρρ̄⟩ and the number of series terms summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms_used: usize,
}

/// Every intermediate of one ⟨ρρ̄⟩ evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterKernel {
    pub g: f64,
    pub rho0: f64,
    pub f_factor: f64,
    pub v_x: f64,
    pub v_y: f64,
    pub mean_rho_sq: f64,
    pub terms_used: usize,
    /// ς/D exceeds [`STEEP_SLOPE_RATIO`]; the tangent-plane model is doubtful.
    pub steep_slope: bool,
    /// g exceeds [`DEEP_ROUGH_G`].
    pub deep_rough: bool,
}

/// Both expressions for the specular reference field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecularField {
    /// `Γ⊥ Eⁱ`.
    pub from_coefficient: Complex64,
    /// `j 2β₁ Eⁱ e^{jβ₁R₀} XY cos θᵢ / (π R₀)`.
    pub helmholtz: Complex64,
}

fn check_wavelength(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::domain("lambda", format!("wavelength must be > 0, got {lambda}")))
    }
}

/// Rayleigh roughness parameter g.
pub fn rayleigh_g(stats: &RoughSurfaceStats, geo: &ScatterGeometry, lambda: f64) -> Result<f64> {
    check_wavelength(lambda)?;
    let k = 2.0 * PI * stats.sigma_h / lambda * (geo.theta_i.cos() + geo.theta_r.cos());
    Ok(k * k)
}

/// g at the specular direction, `(4πς cos θᵢ / λ)²`, accepting θᵢ up to and
/// including π/2 where it vanishes.
pub fn specular_g(sigma_h: f64, theta_i: f64, lambda: f64) -> Result<f64> {
    check_wavelength(lambda)?;
    if !(sigma_h.is_finite() && sigma_h >= 0.0) {
        return Err(Error::domain("sigma_h", format!("height deviation must be >= 0, got {sigma_h}")));
    }
    if !(theta_i.is_finite() && (0.0..=FRAC_PI_2).contains(&theta_i)) {
        return Err(Error::domain("theta_i", format!("incidence angle must lie in [0, pi/2], got {theta_i}")));
    }
    let c = theta_i.cos();
    let k = 2.0 * PI * sigma_h / lambda * (c + c);
    Ok(k * k)
}

fn sinc(arg: f64) -> f64 {
    if arg.abs() < SINC_THRESHOLD {
        1.0
    } else {
        arg.sin() / arg
    }
}

/// Scattering coefficient of a smooth patch, ρ₀.
pub fn smooth_coeff_rho0(stats: &RoughSurfaceStats, v_x: f64, v_y: f64) -> f64 {
    sinc(v_x * stats.dim_x) * sinc(v_y * stats.dim_y)
}

/// Kirchhoff factor F. Exactly 1 in the specular direction.
pub fn kirchhoff_factor(geo: &ScatterGeometry) -> Result<f64> {
    let (si, ci) = geo.theta_i.sin_cos();
    let (sr, cr) = geo.theta_r.sin_cos();
    let den = ci * (ci + cr);
    if den.is_nan() || den <= GRAZING_EPS {
        return Err(Error::domain("theta_i", "Kirchhoff factor undefined at grazing incidence"));
    }
    if geo.is_specular() {
        return Ok(1.0);
    }
    Ok((1.0 + ci * cr - si * sr * geo.theta_s.cos()) / den)
}

/// x and y components of `v = βⁱ − βʳ`, rad/m.
pub fn v_components(geo: &ScatterGeometry, lambda: f64) -> Result<(f64, f64)> {
    check_wavelength(lambda)?;
    let k = 2.0 * PI / lambda;
    let (ss, cs) = geo.theta_s.sin_cos();
    let sr = geo.theta_r.sin();
    Ok((k * (geo.theta_i.sin() - sr * cs), -k * (sr * ss)))
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let hi = a.max(b);
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Natural log of an upper bound on `Σ_{k>m} gᵏ/(k!·k)`, given
/// `ln(gᵐ/m!)`. Returns `+∞` while `m + 2 ≤ g` (no geometric bound yet).
pub fn series_tail_bound_ln(g: f64, m: usize, ln_pow_fact: f64) -> f64 {
    let next = (m + 1) as f64;
    let ratio = g / (next + 1.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    // Σ_{k>m} gᵏ/(k!k) ≤ 1/(m+1) · g^{m+1}/(m+1)! · Σ_j (g/(m+2))ʲ
    ln_pow_fact + g.ln() - next.ln() - next.ln() - (-ratio).ln_1p()
}

/// ⟨ρρ̄⟩ from its scalar ingredients.
///
/// The terms are accumulated in log space with the recurrence
/// `ln(g^{m}/m!) = ln(g^{m−1}/(m−1)!) + ln g − ln m`, so neither `gᵐ` nor
/// `m!` is ever formed. Summation stops at the first `m` where the term is
/// below `tol` relative to the bracketed sum and the tail bound from
/// [`series_tail_bound_ln`] is below the same threshold.
pub fn mean_rho_sq_from_parts(
    g: f64,
    rho0: f64,
    f_factor: f64,
    corr_dist: f64,
    area: f64,
    v_sq: f64,
    opts: SeriesOptions,
) -> Result<SeriesSum> {
    opts.validate()?;
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::domain("g", format!("Rayleigh parameter must be finite and >= 0, got {g}")));
    }
    let base = rho0 * rho0;
    let coef = PI * corr_dist * corr_dist * f_factor * f_factor / area;
    if !(coef.is_finite() && v_sq.is_finite() && base.is_finite()) {
        return Err(Error::domain("mean_rho_sq", "non-finite series coefficients"));
    }
    if g == 0.0 || coef == 0.0 {
        return Ok(SeriesSum {
            value: (-g).exp() * base,
            terms_used: 0,
        });
    }

    let ln_base = base.ln();
    let ln_coef = coef.ln();
    let ln_tol = opts.tol.ln();
    let ln_g = g.ln();
    let decay = v_sq * corr_dist * corr_dist / 4.0;

    let mut ln_pow_fact = 0.0;
    let mut ln_sum = f64::NEG_INFINITY;
    let mut ln_bracket = ln_base;
    let mut ln_tail = f64::INFINITY;
    for m in 1..=opts.max_terms {
        let mf = m as f64;
        ln_pow_fact += ln_g - mf.ln();
        let ln_term = ln_pow_fact - mf.ln() - decay / mf;
        ln_sum = log_add_exp(ln_sum, ln_term);
        ln_bracket = log_add_exp(ln_base, ln_coef + ln_sum);

        let threshold = ln_tol + ln_bracket;
        ln_tail = series_tail_bound_ln(g, m, ln_pow_fact);
        if ln_coef + ln_term < threshold && ln_coef + ln_tail <= threshold {
            return Ok(SeriesSum {
                value: (ln_bracket - g).exp(),
                terms_used: m,
            });
        }
    }
    Err(Error::Convergence {
        terms: opts.max_terms,
        partial: (ln_bracket - g).exp(),
        tail_bound: (ln_coef + ln_tail - g).exp(),
    })
}

/// Mean squared scattering coefficient ⟨ρρ̄⟩ for a surface and geometry.
pub fn mean_rho_squared(
    stats: &RoughSurfaceStats,
    geo: &ScatterGeometry,
    lambda: f64,
    opts: SeriesOptions,
) -> Result<SeriesSum> {
    Ok(scatter_kernel(stats, geo, lambda, opts)?.into())
}

impl From<ScatterKernel> for SeriesSum {
    fn from(k: ScatterKernel) -> Self {
        Self {
            value: k.mean_rho_sq,
            terms_used: k.terms_used,
        }
    }
}

/// Evaluates g, ρ₀, F, v and ⟨ρρ̄⟩ together.
pub fn scatter_kernel(
    stats: &RoughSurfaceStats,
    geo: &ScatterGeometry,
    lambda: f64,
    opts: SeriesOptions,
) -> Result<ScatterKernel> {
    let g = rayleigh_g(stats, geo, lambda)?;
    let (v_x, v_y) = v_components(geo, lambda)?;
    let rho0 = smooth_coeff_rho0(stats, v_x, v_y);
    let f_factor = kirchhoff_factor(geo)?;
    let series = mean_rho_sq_from_parts(
        g,
        rho0,
        f_factor,
        stats.corr_dist,
        stats.area(),
        v_x * v_x + v_y * v_y,
        opts,
    )?;
    Ok(ScatterKernel {
        g,
        rho0,
        f_factor,
        v_x,
        v_y,
        mean_rho_sq: series.value,
        terms_used: series.terms_used,
        steep_slope: stats.sigma_h / stats.corr_dist > STEEP_SLOPE_RATIO,
        deep_rough: g > DEEP_ROUGH_G,
    })
}

/// Reflected field in the specular direction from a smooth, perfectly
/// conducting patch, in both its coefficient and Helmholtz-integral forms.
pub fn specular_reflected_field(
    obs: &ScatterObservation,
    stats: &RoughSurfaceStats,
    geo: &ScatterGeometry,
    beta1: f64,
    gamma_perp: Complex64,
) -> Result<SpecularField> {
    if !geo.is_specular() {
        return Err(Error::domain("geometry", "specular reference field requires theta_r == theta_i and theta_s == 0"));
    }
    if !(beta1.is_finite() && beta1 > 0.0) {
        return Err(Error::domain("beta1", format!("phase constant must be > 0, got {beta1}")));
    }
    let r0 = obs.r0;
    let magnitude = 2.0 * beta1 * stats.area() * geo.theta_i.cos() / (PI * r0);
    let phase = Complex64::new(0.0, beta1 * r0).exp();
    Ok(SpecularField {
        from_coefficient: gamma_perp * obs.e_i,
        helmholtz: Complex64::i() * obs.e_i * phase * magnitude,
    })
}

/// Mean scattered power density ½·Y₁·|Eʳ|²·⟨ρρ̄⟩ in W/m². Inputs are
/// non-negative; `admittance_y1` is the (real) admittance magnitude of medium 1.
pub fn mean_scattered_power(admittance_y1: f64, e_r_magnitude: f64, mean_rho_sq: f64) -> f64 {
    debug_assert!(admittance_y1 >= 0.0 && e_r_magnitude >= 0.0 && mean_rho_sq >= 0.0);
    0.5 * admittance_y1 * e_r_magnitude * e_r_magnitude * mean_rho_sq
}

/// Root-mean-square scattered field |Eʳ|·√⟨ρρ̄⟩ in V/m.
pub fn rms_scattered_field(e_r_magnitude: f64, mean_rho_sq: f64) -> f64 {
    debug_assert!(e_r_magnitude >= 0.0 && mean_rho_sq >= 0.0);
    e_r_magnitude * mean_rho_sq.sqrt()
}
