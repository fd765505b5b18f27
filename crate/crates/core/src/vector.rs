//! Minimal 3-vector helpers for real directions and complex field phasors.

use num_complex::Complex64;

pub type Vec3 = [f64; 3];
pub type CVec3 = [Complex64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Bilinear projection of a complex vector onto a real direction (no conjugation).
pub fn project(v: CVec3, dir: Vec3) -> Complex64 {
    v[0] * dir[0] + v[1] * dir[1] + v[2] * dir[2]
}

pub fn scale(dir: Vec3, s: Complex64) -> CVec3 {
    [s * dir[0], s * dir[1], s * dir[2]]
}

pub fn add(a: CVec3, b: CVec3) -> CVec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Euclidean norm of a complex vector, √(Σ|vᵢ|²).
pub fn cnorm(v: CVec3) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
