//! Per-medium propagation quantities of a uniform plane wave.
//!
//! A homogeneous, isotropic medium is described by its constitutive
//! parameters μ (H/m), ε (F/m) and σ (S/m). With the time convention
//! `e^{+jωt}` a plane wave travelling along `n̂` varies as `e^{-γ n̂·r}` where
//! `γ = α + jβ`:
//!
//! ```text
//! α = ω√(με) · { ½ [ √(1 + (σ/ωε)²) − 1 ] }^½      (Np/m)
//! β = ω√(με) · { ½ [ √(1 + (σ/ωε)²) + 1 ] }^½      (rad/m)
//! η = √( jωμ / (σ + jωε) )                          (Ω)
//! λ = 2π / β                                        (m)
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{EPS_0, MU_0};
use crate::{Error, Result};

/// Above this loss tangent `√(1+x²) − 1` is evaluated directly; below it via
/// the cancellation-free form `x² / (√(1+x²) + 1)`.
const DIRECT_BRACKET_LOSS_TANGENT: f64 = 1e8;

/// Constitutive parameters μ, ε, σ of a medium at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstitutiveParams {
    mu: f64,
    eps: f64,
    sigma: f64,
}

impl ConstitutiveParams {
    /// Absolute permeability (H/m), permittivity (F/m) and conductivity (S/m).
    pub fn new(mu: f64, eps: f64, sigma: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::validation("permeability", format!("mu must be finite and > 0, got {mu}")));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::validation("permittivity", format!("eps must be finite and > 0, got {eps}")));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::validation("conductivity", format!("sigma must be finite and >= 0, got {sigma}")));
        }
        Ok(Self { mu, eps, sigma })
    }

    /// Parameters from relative permeability and permittivity.
    pub fn from_relative(mu_r: f64, eps_r: f64, sigma: f64) -> Result<Self> {
        Self::new(mu_r * MU_0, eps_r * EPS_0, sigma)
    }

    pub fn vacuum() -> Self {
        Self {
            mu: MU_0,
            eps: EPS_0,
            sigma: 0.0,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mu_r(&self) -> f64 {
        self.mu / MU_0
    }

    pub fn eps_r(&self) -> f64 {
        self.eps / EPS_0
    }

    pub fn is_lossless(&self) -> bool {
        self.sigma == 0.0
    }

    /// Loss tangent σ/(ωε).
    pub fn loss_tangent(&self, op: OperatingPoint) -> f64 {
        self.sigma / (op.angular() * self.eps)
    }
}

/// Angular frequency ω of the time-harmonic field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    w: f64,
}

impl OperatingPoint {
    pub fn from_hz(freq_hz: f64) -> Result<Self> {
        Self::from_angular(2.0 * PI * freq_hz)
    }

    pub fn from_angular(w: f64) -> Result<Self> {
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::validation("operating point", format!("angular frequency must be finite and > 0, got {w}")));
        }
        Ok(Self { w })
    }

    /// ω in rad/s.
    pub fn angular(&self) -> f64 {
        self.w
    }

    /// f = ω/2π in Hz.
    pub fn freq_hz(&self) -> f64 {
        self.w / (2.0 * PI)
    }
}

/// Derived per-medium, per-frequency quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationState {
    /// Attenuation constant α, Np/m.
    pub alpha: f64,
    /// Phase constant (wave number) β, rad/m.
    pub beta: f64,
    /// Propagation constant γ = α + jβ, 1/m.
    pub gamma: Complex64,
    /// Intrinsic impedance η, Ω.
    pub eta: Complex64,
    /// Wavelength in the medium 2π/β, m.
    pub lambda: f64,
    /// Admittance 1/η, S.
    pub admittance: Complex64,
}

impl PropagationState {
    pub fn compute(m: &ConstitutiveParams, op: OperatingPoint) -> Result<Self> {
        let alpha = attenuation_constant(m, op)?;
        let beta = phase_constant(m, op)?;
        let eta = intrinsic_impedance(m, op)?;
        Ok(Self {
            alpha,
            beta,
            gamma: Complex64::new(alpha, beta),
            eta,
            lambda: wavelength(beta)?,
            admittance: medium_admittance(eta)?,
        })
    }
}

/// `√(1+x²) ∓ 1` for x ≥ 0 without overflow, and without cancellation in the
/// minus branch.
fn loss_bracket(x: f64, plus: bool) -> f64 {
    let root = 1.0_f64.hypot(x);
    if plus {
        root + 1.0
    } else if x > DIRECT_BRACKET_LOSS_TANGENT {
        root - 1.0
    } else {
        x * x / (root + 1.0)
    }
}

fn lossy_rate(m: &ConstitutiveParams, op: OperatingPoint, plus: bool) -> Result<f64> {
    let w = op.angular();
    let x = m.loss_tangent(op);
    if !x.is_finite() {
        return Err(Error::domain("sigma", format!("loss tangent sigma/(w*eps) is not finite (sigma = {}, w = {w})", m.sigma)));
    }
    let value = w * (m.mu * m.eps).sqrt() * (0.5 * loss_bracket(x, plus)).sqrt();
    if !value.is_finite() {
        return Err(Error::domain("w", format!("propagation rate overflowed at w = {w}")));
    }
    Ok(value)
}

/// Attenuation constant α in Np/m.
pub fn attenuation_constant(m: &ConstitutiveParams, op: OperatingPoint) -> Result<f64> {
    lossy_rate(m, op, false)
}

/// Phase constant β in rad/m.
pub fn phase_constant(m: &ConstitutiveParams, op: OperatingPoint) -> Result<f64> {
    lossy_rate(m, op, true)
}

/// γ = α + jβ in 1/m.
pub fn propagation_constant(m: &ConstitutiveParams, op: OperatingPoint) -> Result<Complex64> {
    Ok(Complex64::new(attenuation_constant(m, op)?, phase_constant(m, op)?))
}

/// Intrinsic impedance η in Ω, principal branch (Re η > 0).
pub fn intrinsic_impedance(m: &ConstitutiveParams, op: OperatingPoint) -> Result<Complex64> {
    if m.is_lossless() {
        return Ok(Complex64::new((m.mu / m.eps).sqrt(), 0.0));
    }
    let w = op.angular();
    let eta = (Complex64::new(0.0, w * m.mu) / Complex64::new(m.sigma, w * m.eps)).sqrt();
    if !(eta.re.is_finite() && eta.im.is_finite()) {
        return Err(Error::domain("sigma", "intrinsic impedance is not finite"));
    }
    Ok(eta)
}

/// Wavelength 2π/β in metres.
pub fn wavelength(beta: f64) -> Result<f64> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::domain("beta", format!("phase constant must be finite and > 0, got {beta}")));
    }
    Ok(2.0 * PI / beta)
}

/// Admittance Y = 1/η in siemens.
pub fn medium_admittance(eta: Complex64) -> Result<Complex64> {
    if eta.norm_sqr() == 0.0 {
        return Err(Error::domain("eta", "zero impedance has no admittance"));
    }
    Ok(eta.inv())
}
