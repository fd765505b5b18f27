//! Plane-wave propagation kernels for the low-THz band.
//!
//! The crate is organised bottom-up:
//!
//! - [`propagation`]: attenuation/phase constants, intrinsic impedance and
//!   wavelength of a homogeneous medium with constitutive parameters μ, ε, σ.
//! - [`interface`]: oblique incidence on a planar boundary between two
//!   (possibly lossy) media: complex Snell refraction, true refracted angle,
//!   Fresnel coefficients for both polarizations and field evaluation.
//! - [`scatter`]: Kirchhoff scattering from a randomly rough boundary with
//!   Gaussian height statistics (Rayleigh parameter, smooth-patch
//!   coefficient, mean squared scattering coefficient, scattered power).
//! - [`materials`]: frequency-sampled constitutive parameters loaded from JSON.
//! - [`cli`]: the `thzprop` command-line front end.
//!
//! Angles are radians and frequencies hertz throughout the library; the CLI
//! speaks degrees.

pub mod cli;
pub mod constants;
mod error;
pub mod interface;
pub mod materials;
pub mod propagation;
pub mod scatter;
pub mod vector;

pub use error::{Error, Result};
pub use interface::{
    FieldSample, FresnelCoefficients, InterfaceProblem, Polarization, PolarizationBasis,
    RefractionSolution, SnellRefraction,
};
pub use materials::{MaterialDb, MaterialRecord, MaterialSample};
pub use propagation::{ConstitutiveParams, OperatingPoint, PropagationState};
pub use scatter::{
    RoughSurfaceStats, ScatterGeometry, ScatterKernel, ScatterObservation, SeriesOptions,
    SeriesSum, SpecularField,
};

pub use num_complex::Complex64;
