use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("energy must be positive and finite, got {0}")]
    NonPositiveEnergy(f64),

    #[error("incidence angle must lie in [0, pi/2), got {0} rad")]
    AngleOutOfRange(f64),

    #[error("potential component is not finite")]
    NonFinitePotential,

    /// `E <= |V_q|`: the propagating root `sqrt(E^2 - V2^2 - V3^2)` is not real.
    #[error("energy {energy} does not exceed the quaternionic modulus {modulus}")]
    BelowQuaternionicThreshold { energy: f64, modulus: f64 },

    #[error("quaternion has zero norm and no inverse")]
    ZeroNorm,

    #[error("potential has a quaternionic part; use the quaternionic reflection amplitude")]
    QuaternionicPotential,

    #[error(
        "configuration is not in total internal reflection (sin^2 theta = {sin_sq}, n^2 = {n_sq})"
    )]
    NotTotalReflection { sin_sq: f64, n_sq: f64 },

    #[error("point z* = {z_star} is outside region {region} (interface at d* = {d_star})")]
    WrongRegion {
        region: &'static str,
        z_star: f64,
        d_star: f64,
    },

    #[error("stencil at z* = {z_star} with step {h} reaches within 3h of the interface at d* = {d_star}")]
    StencilViolation { z_star: f64, h: f64, d_star: f64 },

    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("continuity system is singular (pivot {pivot:e} in column {column})")]
    SingularSystem { column: usize, pivot: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}
