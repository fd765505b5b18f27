//! Oblique plane-wave incidence on a planar boundary.
//!
//! Geometry: the boundary is the `z = 0` plane, medium 1 fills `z < 0`,
//! medium 2 fills `z > 0` and the plane of incidence is `xz`. The incident
//! wave travels along `(sin θᵢ, 0, cos θᵢ)`.
//!
//! Refraction follows the complex Snell law `γ₁ sin θᵢ = γ₂ sin θₜ`. When
//! medium 2 is lossy θₜ is complex; the direction in which the transmitted
//! constant-phase fronts travel is the *true* refracted angle
//!
//! ```text
//! ψₜ = atan( β₁ sin θᵢ / (α₂ Im cos θₜ + β₂ Re cos θₜ) )
//! ```
//!
//! Fresnel coefficients (time factor `e^{+jωt}`):
//!
//! ```text
//! T⊥ = 2η₂cos θᵢ / (η₂cos θᵢ + η₁cos θₜ)     Γ⊥ = (η₂cos θᵢ − η₁cos θₜ) / (η₂cos θᵢ + η₁cos θₜ)
//! T∥ = 2η₂cos θᵢ / (η₂cos θₜ + η₁cos θᵢ)     Γ∥ = (η₂cos θₜ − η₁cos θᵢ) / (η₂cos θₜ + η₁cos θᵢ)
//! ```
//!
//! Arbitrary polarizations are handled by projecting the incident field onto
//! the ⊥ (`+y`) and ∥ (`k̂ × ŷ`) basis, solving each part, and summing.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::propagation::{ConstitutiveParams, OperatingPoint, PropagationState};
use crate::vector::{self, CVec3, Vec3};
use crate::{Error, Result};

/// Relative tolerance on `|E·k̂| / |E|` accepted as a transverse field.
const TRANSVERSE_TOL: f64 = 1e-9;

const Y_HAT: Vec3 = [0.0, 1.0, 0.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// Electric field normal to the plane of incidence (horizontal, TE).
    Perpendicular,
    /// Electric field in the plane of incidence (vertical, TM).
    Parallel,
}

/// Incidence of a plane wave from `medium1` onto `medium2` at angle `theta_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceProblem {
    medium1: ConstitutiveParams,
    medium2: ConstitutiveParams,
    op: OperatingPoint,
    theta_i: f64,
    state1: PropagationState,
    state2: PropagationState,
}

impl InterfaceProblem {
    /// `theta_i` must lie in `[0, π/2)`; grazing incidence is rejected.
    pub fn new(
        medium1: ConstitutiveParams,
        medium2: ConstitutiveParams,
        op: OperatingPoint,
        theta_i: f64,
    ) -> Result<Self> {
        if !(theta_i.is_finite() && (0.0..FRAC_PI_2).contains(&theta_i)) {
            return Err(Error::validation(
                "incidence angle",
                format!("theta_i must lie in [0, pi/2), got {theta_i} rad"),
            ));
        }
        Ok(Self {
            medium1,
            medium2,
            op,
            theta_i,
            state1: PropagationState::compute(&medium1, op)?,
            state2: PropagationState::compute(&medium2, op)?,
        })
    }

    pub fn medium1(&self) -> &ConstitutiveParams {
        &self.medium1
    }

    pub fn medium2(&self) -> &ConstitutiveParams {
        &self.medium2
    }

    pub fn operating_point(&self) -> OperatingPoint {
        self.op
    }

    pub fn theta_i(&self) -> f64 {
        self.theta_i
    }

    pub fn state1(&self) -> &PropagationState {
        &self.state1
    }

    pub fn state2(&self) -> &PropagationState {
        &self.state2
    }
}

/// Complex sine and cosine of the refraction angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnellRefraction {
    pub sin_theta_t: Complex64,
    pub cos_theta_t: Complex64,
}

/// Complex refraction angle together with the true direction of travel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractionSolution {
    pub sin_theta_t: Complex64,
    pub cos_theta_t: Complex64,
    /// True refracted angle ψₜ in `[0, π/2]`, rad.
    pub psi_t: f64,
    /// Unit travel direction `(sin ψₜ, 0, cos ψₜ)`.
    pub n_t: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelCoefficients {
    pub t_perp: Complex64,
    pub gamma_perp: Complex64,
    pub t_par: Complex64,
    pub gamma_par: Complex64,
}

impl FresnelCoefficients {
    /// `(T, Γ)` for one polarization.
    pub fn for_polarization(&self, pol: Polarization) -> (Complex64, Complex64) {
        match pol {
            Polarization::Perpendicular => (self.t_perp, self.gamma_perp),
            Polarization::Parallel => (self.t_par, self.gamma_par),
        }
    }
}

/// A complex field phasor (V/m) evaluated at a point (m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub value: CVec3,
    pub position: Vec3,
}

/// Complex Snell refraction. The branch of `cos θₜ = √(1 − sin²θₜ)` is the
/// one with `Re(γ₂ cos θₜ) ≥ 0`, i.e. the transmitted wave does not grow
/// into medium 2.
pub fn snell_refraction(p: &InterfaceProblem) -> Result<SnellRefraction> {
    let gamma1 = p.state1.gamma;
    let gamma2 = p.state2.gamma;
    if gamma2.norm_sqr() == 0.0 {
        return Err(Error::domain("gamma2", "medium 2 has zero propagation constant"));
    }
    let sin_t = gamma1 / gamma2 * p.theta_i.sin();
    let one = Complex64::new(1.0, 0.0);
    let mut cos_t = ((one - sin_t) * (one + sin_t)).sqrt();
    if (gamma2 * cos_t).re < 0.0 {
        cos_t = -cos_t;
    }
    Ok(SnellRefraction {
        sin_theta_t: sin_t,
        cos_theta_t: cos_t,
    })
}

fn checked_ratio(num: Complex64, den: Complex64, what: &'static str) -> Result<Complex64> {
    if den.norm_sqr() == 0.0 || !(den.re.is_finite() && den.im.is_finite()) {
        return Err(Error::domain(what, "Fresnel denominator vanishes"));
    }
    Ok(num / den)
}

fn perp_with(p: &InterfaceProblem, cos_t: Complex64) -> Result<(Complex64, Complex64)> {
    let a = p.state2.eta * p.theta_i.cos();
    let b = p.state1.eta * cos_t;
    let den = a + b;
    Ok((
        checked_ratio(2.0 * a, den, "fresnel_perp")?,
        checked_ratio(a - b, den, "fresnel_perp")?,
    ))
}

fn par_with(p: &InterfaceProblem, cos_t: Complex64) -> Result<(Complex64, Complex64)> {
    let cos_i = p.theta_i.cos();
    let a = p.state2.eta * cos_t;
    let b = p.state1.eta * cos_i;
    let den = a + b;
    Ok((
        checked_ratio(2.0 * p.state2.eta * cos_i, den, "fresnel_par")?,
        checked_ratio(a - b, den, "fresnel_par")?,
    ))
}

/// `(T⊥, Γ⊥)` for perpendicular (horizontal) polarization.
pub fn fresnel_perp(p: &InterfaceProblem) -> Result<(Complex64, Complex64)> {
    perp_with(p, snell_refraction(p)?.cos_theta_t)
}

/// `(T∥, Γ∥)` for parallel (vertical) polarization.
pub fn fresnel_par(p: &InterfaceProblem) -> Result<(Complex64, Complex64)> {
    par_with(p, snell_refraction(p)?.cos_theta_t)
}

pub fn fresnel(p: &InterfaceProblem) -> Result<FresnelCoefficients> {
    let cos_t = snell_refraction(p)?.cos_theta_t;
    let (t_perp, gamma_perp) = perp_with(p, cos_t)?;
    let (t_par, gamma_par) = par_with(p, cos_t)?;
    Ok(FresnelCoefficients {
        t_perp,
        gamma_perp,
        t_par,
        gamma_par,
    })
}

/// Complex refraction plus the true refracted angle ψₜ and travel direction.
pub fn true_refraction(p: &InterfaceProblem) -> Result<RefractionSolution> {
    let snell = snell_refraction(p)?;
    let cos_t = snell.cos_theta_t;
    let num = p.state1.beta * p.theta_i.sin();
    let den = p.state2.alpha * cos_t.im + p.state2.beta * cos_t.re;
    if den.is_nan() || den <= 0.0 {
        return Err(Error::domain(
            "psi_t",
            format!("non-physical refraction: phase rate along the normal is {den}"),
        ));
    }
    let psi_t = (num / den).atan();
    Ok(RefractionSolution {
        sin_theta_t: snell.sin_theta_t,
        cos_theta_t: cos_t,
        psi_t,
        n_t: [psi_t.sin(), 0.0, psi_t.cos()],
    })
}

/// Orthonormal ⊥/∥ basis attached to a real propagation direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationBasis {
    pub propagation: Vec3,
    pub perp: Vec3,
    pub par: Vec3,
}

impl PolarizationBasis {
    /// Builds the basis from a propagation direction and the unit normal of
    /// the plane of incidence; the ∥ vector is `propagation × perp`.
    pub fn new(propagation: Vec3, plane_normal: Vec3) -> Result<Self> {
        let unit = |v: Vec3| (vector::norm(v) - 1.0).abs() < 1e-12;
        if !unit(propagation) || !unit(plane_normal) {
            return Err(Error::validation("polarization basis", "vectors must be unit length"));
        }
        if vector::dot(propagation, plane_normal).abs() > 1e-12 {
            return Err(Error::validation(
                "polarization basis",
                "plane normal must be orthogonal to the propagation direction",
            ));
        }
        Ok(Self {
            propagation,
            perp: plane_normal,
            par: vector::cross(propagation, plane_normal),
        })
    }

    /// Basis for a wave travelling at angle `theta` from `+z` in the `xz` plane.
    pub fn in_xz_plane(theta: f64) -> Self {
        Self::from_direction([theta.sin(), 0.0, theta.cos()])
    }

    /// Basis for the incident wave.
    pub fn incident(theta_i: f64) -> Self {
        Self::in_xz_plane(theta_i)
    }

    /// Basis for the reflected wave travelling along `(sin θᵣ, 0, −cos θᵣ)`.
    pub fn reflected(theta_r: f64) -> Self {
        Self::from_direction([theta_r.sin(), 0.0, -theta_r.cos()])
    }

    fn from_direction(k: Vec3) -> Self {
        Self {
            propagation: k,
            perp: Y_HAT,
            par: vector::cross(k, Y_HAT),
        }
    }

    pub fn unit(&self, pol: Polarization) -> Vec3 {
        match pol {
            Polarization::Perpendicular => self.perp,
            Polarization::Parallel => self.par,
        }
    }
}

/// Splits a transverse incident field into its `(E⊥, E∥)` scalar parts.
pub fn decompose_polarization(e: CVec3, basis: &PolarizationBasis) -> Result<(Complex64, Complex64)> {
    let along = vector::project(e, basis.propagation).norm();
    let magnitude = vector::cnorm(e);
    if along > TRANSVERSE_TOL * magnitude {
        return Err(Error::validation(
            "incident field",
            format!("field is not transverse: |E.k| / |E| = {:e}", along / magnitude),
        ));
    }
    Ok((vector::project(e, basis.perp), vector::project(e, basis.par)))
}

/// Vector sum `E⊥ ê⊥ + E∥ ê∥`.
pub fn recompose_fields(e_perp: Complex64, e_par: Complex64, basis: &PolarizationBasis) -> CVec3 {
    vector::add(vector::scale(basis.perp, e_perp), vector::scale(basis.par, e_par))
}

fn check_finite(position: Vec3) -> Result<()> {
    if position.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::domain("r", "position must be finite"))
    }
}

/// Incident field `Eⁱ exp[−γ₁(x sin θᵢ + z cos θᵢ)]` in medium 1 (`z ≤ 0`).
pub fn incident_field(
    p: &InterfaceProblem,
    pol: Polarization,
    e_i: Complex64,
    r: Vec3,
) -> Result<FieldSample> {
    check_finite(r)?;
    if r[2] > 0.0 {
        return Err(Error::domain("r", "incident field is evaluated in medium 1 (z <= 0)"));
    }
    let (s, c) = p.theta_i.sin_cos();
    let phase = (-p.state1.gamma * (r[0] * s + r[2] * c)).exp();
    let basis = PolarizationBasis::incident(p.theta_i);
    Ok(FieldSample {
        value: vector::scale(basis.unit(pol), e_i * phase),
        position: r,
    })
}

/// Transmitted field `T Eⁱ exp[−(α₂ + jβ₂)(x sin θₜ + z cos θₜ)]` for `z ≥ 0`.
///
/// The returned vector is oriented along the ⊥ or ∥ unit vector of the true
/// travel direction `n̂ₜ`.
pub fn transmitted_field(
    p: &InterfaceProblem,
    pol: Polarization,
    e_i: Complex64,
    r: Vec3,
) -> Result<FieldSample> {
    check_finite(r)?;
    if r[2] < 0.0 {
        return Err(Error::domain("r", "transmitted field is evaluated in medium 2 (z >= 0)"));
    }
    let refr = true_refraction(p)?;
    let (t, _) = fresnel(p)?.for_polarization(pol);
    let e2 = t * e_i;
    let exponent = -p.state2.gamma * (refr.sin_theta_t * r[0] + refr.cos_theta_t * r[2]);
    let basis = PolarizationBasis::in_xz_plane(refr.psi_t);
    Ok(FieldSample {
        value: vector::scale(basis.unit(pol), e2 * exponent.exp()),
        position: r,
    })
}

/// Reflected field `Γ Eⁱ exp[−jβ₁(x sin θᵣ − z cos θᵣ)]` for `z ≤ 0`.
///
/// Only the phase constant of medium 1 enters; any small loss in medium 1 is
/// ignored here.
pub fn reflected_field(
    p: &InterfaceProblem,
    pol: Polarization,
    e_i: Complex64,
    r: Vec3,
    theta_r: f64,
) -> Result<FieldSample> {
    check_finite(r)?;
    if r[2] > 0.0 {
        return Err(Error::domain("r", "reflected field is evaluated in medium 1 (z <= 0)"));
    }
    if !(theta_r.is_finite() && (0.0..=FRAC_PI_2).contains(&theta_r)) {
        return Err(Error::validation("reflection angle", format!("theta_r must lie in [0, pi/2], got {theta_r}")));
    }
    let (_, gamma) = fresnel(p)?.for_polarization(pol);
    let e1 = gamma * e_i;
    let (s, c) = theta_r.sin_cos();
    let exponent = Complex64::new(0.0, -p.state1.beta * (r[0] * s - r[2] * c));
    let basis = PolarizationBasis::reflected(theta_r);
    Ok(FieldSample {
        value: vector::scale(basis.unit(pol), e1 * exponent.exp()),
        position: r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::MU_0;
    use approx::assert_relative_eq;

    fn dielectric(eps_r: f64) -> ConstitutiveParams {
        ConstitutiveParams::from_relative(1.0, eps_r, 0.0).unwrap()
    }

    fn problem(m1: ConstitutiveParams, m2: ConstitutiveParams, f: f64, theta_deg: f64) -> InterfaceProblem {
        InterfaceProblem::new(m1, m2, OperatingPoint::from_hz(f).unwrap(), theta_deg.to_radians()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rejects_grazing_and_negative_angles() {
        let op = OperatingPoint::from_hz(1e11).unwrap();
        let m = dielectric(1.0);
        assert!(InterfaceProblem::new(m, m, op, FRAC_PI_2).is_err());
        assert!(InterfaceProblem::new(m, m, op, -0.1).is_err());
        assert!(InterfaceProblem::new(m, m, op, f64::NAN).is_err());
    }

    #[test]
    fn identical_media_pass_straight_through() {
        let m = ConstitutiveParams::from_relative(1.0, 3.0, 0.5).unwrap();
        let p = problem(m, m, 300e9, 37.0);
        let s = snell_refraction(&p).unwrap();
        assert!(close(s.sin_theta_t, Complex64::new(p.theta_i().sin(), 0.0), 1e-15));
        assert!(close(s.cos_theta_t, Complex64::new(p.theta_i().cos(), 0.0), 1e-15));
        let f = fresnel(&p).unwrap();
        assert!(f.gamma_perp.norm() < 1e-15);
        assert!(f.gamma_par.norm() < 1e-15);
        assert!(close(f.t_perp, Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(f.t_par, Complex64::new(1.0, 0.0), 1e-15));
    }

    #[test]
    fn normal_incidence_refraction() {
        let p = problem(dielectric(1.0), ConstitutiveParams::from_relative(1.0, 4.0, 10.0).unwrap(), 3e11, 0.0);
        let s = snell_refraction(&p).unwrap();
        assert_eq!(s.sin_theta_t.norm(), 0.0);
        assert_eq!(s.cos_theta_t, Complex64::new(1.0, 0.0));
        let r = true_refraction(&p).unwrap();
        assert_eq!(r.psi_t, 0.0);
        assert_eq!(r.n_t, [0.0, 0.0, 1.0]);
    }

    #[test]
    fn lossless_snell_matches_refractive_indices() {
        let p = problem(dielectric(1.0), dielectric(4.0), 1e11, 60.0);
        let s = snell_refraction(&p).unwrap();
        // n1 sin θi = n2 sin θt with n = √εr
        let oracle = (60f64).to_radians().sin() / 2.0;
        assert_relative_eq!(s.sin_theta_t.re, oracle, max_relative = 1e-14);
        assert_relative_eq!(oracle, 0.43301, max_relative = 1e-5);
        assert_eq!(s.sin_theta_t.im, 0.0);
        assert_eq!(s.cos_theta_t.im, 0.0);
        let r = true_refraction(&p).unwrap();
        assert_relative_eq!(r.psi_t, oracle.asin(), max_relative = 1e-13);
    }

    #[test]
    fn normal_incidence_one_to_four() {
        // η ∝ 1/√εr, so η₂ = η₁/2 and (η₂ − η₁)/(η₂ + η₁) = −1/3 for both
        // polarizations under the sign convention of the coefficient formulas.
        let p = problem(dielectric(1.0), dielectric(4.0), 1e11, 0.0);
        let (t, g) = fresnel_perp(&p).unwrap();
        assert_relative_eq!(g.re, -1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(t.re, 2.0 / 3.0, max_relative = 1e-14);
        let (t, g) = fresnel_par(&p).unwrap();
        assert_relative_eq!(g.re, -1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(t.re, 2.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn brewster_angle_zeroes_parallel_reflection() {
        let op = OperatingPoint::from_hz(2e11).unwrap();
        let p = InterfaceProblem::new(dielectric(1.0), dielectric(4.0), op, 2f64.atan()).unwrap();
        let (_, g) = fresnel_par(&p).unwrap();
        assert!(g.norm() < 1e-12, "|Γ∥| = {}", g.norm());
        assert_relative_eq!(2f64.atan().to_degrees(), 63.4349, max_relative = 1e-6);
    }

    #[test]
    fn conductor_reflects_with_sign_flip() {
        let pec = ConstitutiveParams::new(MU_0, crate::constants::EPS_0, 1e12).unwrap();
        let p = problem(dielectric(1.0006), pec, 300e9, 0.0);
        let (t, g) = fresnel_perp(&p).unwrap();
        assert!((g + 1.0).norm() < 1e-3);
        assert!(t.norm() < 1e-3);
    }

    #[test]
    fn lossy_branch_decays() {
        let lossy = ConstitutiveParams::from_relative(1.0, 4.0, 10.0).unwrap();
        for deg in [0.0, 10.0, 45.0, 80.0, 89.9] {
            let p = problem(dielectric(1.0), lossy, 300e9, deg);
            let s = snell_refraction(&p).unwrap();
            assert!((p.state2().gamma * s.cos_theta_t).re >= 0.0);
            let r = true_refraction(&p).unwrap();
            assert!((0.0..=FRAC_PI_2).contains(&r.psi_t));
            assert_relative_eq!(vector::norm(r.n_t), 1.0, max_relative = 1e-15);
            let one = s.sin_theta_t * s.sin_theta_t + s.cos_theta_t * s.cos_theta_t;
            assert!(close(one, Complex64::new(1.0, 0.0), 1e-14));
        }
    }

    #[test]
    fn decompose_basis_vectors() {
        let basis = PolarizationBasis::incident(0.3);
        let e = vector::scale(basis.perp, Complex64::new(2.5, 0.0));
        let (a, b) = decompose_polarization(e, &basis).unwrap();
        assert_eq!((a, b), (Complex64::new(2.5, 0.0), Complex64::new(0.0, 0.0)));
        let e = vector::scale(basis.par, Complex64::new(1.5, 0.0));
        let (a, b) = decompose_polarization(e, &basis).unwrap();
        assert!(a.norm() < 1e-16);
        assert_relative_eq!(b.re, 1.5, max_relative = 1e-15);
    }

    #[test]
    fn circular_polarization_has_equal_parts() {
        let basis = PolarizationBasis::incident(1.0);
        let e = recompose_fields(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), &basis);
        let (a, b) = decompose_polarization(e, &basis).unwrap();
        assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-15);
    }

    #[test]
    fn recompose_edges() {
        let basis = PolarizationBasis::reflected(0.7);
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(recompose_fields(zero, zero, &basis), [zero; 3]);
        let v = recompose_fields(one, zero, &basis);
        assert_eq!(v.map(|c| c.re), basis.perp);
    }

    #[test]
    fn longitudinal_field_is_rejected() {
        let basis = PolarizationBasis::incident(0.2);
        let e = vector::scale(basis.propagation, Complex64::new(1.0, 0.0));
        assert!(matches!(decompose_polarization(e, &basis), Err(Error::Validation { .. })));
    }

    #[test]
    fn general_basis_validation() {
        assert!(PolarizationBasis::new([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]).is_ok());
        assert!(PolarizationBasis::new([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).is_err());
        assert!(PolarizationBasis::new([0.0, 0.0, 2.0], [1.0, 0.0, 0.0]).is_err());
        let b = PolarizationBasis::new([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]).unwrap();
        assert_eq!(b, PolarizationBasis::incident(0.0));
    }

    #[test]
    fn transmitted_field_at_origin_and_lossless() {
        let e_i = Complex64::new(0.8, -0.3);
        let p = problem(dielectric(1.0), dielectric(2.5), 3e11, 30.0);
        let f = fresnel(&p).unwrap();
        let origin = transmitted_field(&p, Polarization::Perpendicular, e_i, [0.0; 3]).unwrap();
        assert_eq!(origin.value[1], f.t_perp * e_i);
        for r in [[1e-3, 0.2, 4e-3], [-2e-3, 0.0, 1.0], [5.0, -1.0, 0.0]] {
            let s = transmitted_field(&p, Polarization::Parallel, e_i, r).unwrap();
            assert_relative_eq!(vector::cnorm(s.value), (f.t_par * e_i).norm(), max_relative = 1e-12);
        }
        assert!(transmitted_field(&p, Polarization::Parallel, e_i, [0.0, 0.0, -1e-3]).is_err());
    }

    #[test]
    fn transmitted_field_decays_along_travel_direction() {
        let lossy = ConstitutiveParams::from_relative(1.0, 4.0, 10.0).unwrap();
        let p = problem(dielectric(1.0), lossy, 300e9, 45.0);
        let refr = true_refraction(&p).unwrap();
        let e_i = Complex64::new(1.0, 0.0);
        let mut prev = f64::INFINITY;
        for k in 0..50 {
            let d = k as f64 * 1e-5;
            let r = [d * refr.n_t[0], 0.0, d * refr.n_t[2]];
            let m = vector::cnorm(transmitted_field(&p, Polarization::Perpendicular, e_i, r).unwrap().value);
            assert!(m <= prev);
            prev = m;
        }
    }

    #[test]
    fn reflected_field_has_constant_magnitude() {
        let p = problem(dielectric(1.0), ConstitutiveParams::from_relative(1.0, 6.0, 3.0).unwrap(), 3e11, 20.0);
        let e_i = Complex64::new(1.0, 0.0);
        let origin = reflected_field(&p, Polarization::Perpendicular, e_i, [0.0; 3], p.theta_i()).unwrap();
        let g = fresnel(&p).unwrap().gamma_perp;
        assert_eq!(origin.value[1], g);
        for k in 0..100 {
            let t = k as f64;
            let r = [(t * 0.37).sin() * 1e-2, (t * 0.11).cos(), -(t * 0.73).sin().abs() * 1e-2];
            let s = reflected_field(&p, Polarization::Parallel, e_i, r, p.theta_i()).unwrap();
            let gp = fresnel(&p).unwrap().gamma_par.norm();
            assert_relative_eq!(vector::cnorm(s.value), gp, max_relative = 1e-12);
        }
        assert!(reflected_field(&p, Polarization::Parallel, e_i, [0.0, 0.0, 1e-3], 0.0).is_err());
    }

    #[test]
    fn total_tangential_field_vanishes_on_conductor() {
        let pec = ConstitutiveParams::new(MU_0, crate::constants::EPS_0, 1e12).unwrap();
        let p = problem(dielectric(1.0), pec, 300e9, 35.0);
        let e_i = Complex64::new(1.0, 0.0);
        for k in 0..100 {
            let r = [k as f64 * 1.7e-4 - 8e-3, 0.0, 0.0];
            let inc = incident_field(&p, Polarization::Perpendicular, e_i, r).unwrap();
            let refl = reflected_field(&p, Polarization::Perpendicular, e_i, r, p.theta_i()).unwrap();
            let total = vector::cnorm(vector::add(inc.value, refl.value));
            assert!(total < 1e-3, "|E| = {total} at x = {}", r[0]);
        }
    }
}
