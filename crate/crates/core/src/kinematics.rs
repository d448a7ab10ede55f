//! Momenta, refractive indices, angles and regime classification for a
//! particle of energy `E` hitting the step `z* = d*` at incidence angle `theta`.
//!
//! The starred frame `(y*, z*)` has `z*` along the stratification axis. In
//! natural units (`hbar = 2m = 1`) the incident momentum is `p = sqrt(E)`,
//! split as `p_y* = p sin(theta)` (conserved across the interface) and
//! `p_z* = p cos(theta)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Step potential `i V1 + j V2 + k V3` switched on for `z* > d*`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepPotential {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub d_star: f64,
}

impl StepPotential {
    pub const FREE: Self = Self::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(v1: f64, v2: f64, v3: f64, d_star: f64) -> Self {
        Self { v1, v2, v3, d_star }
    }

    /// Ordinary (complex quantum mechanics) step of height `v1` at `d* = 0`.
    pub const fn complex(v1: f64) -> Self {
        Self::new(v1, 0.0, 0.0, 0.0)
    }

    /// Pure quaternionic step `j v2 + k v3` at `d* = 0`.
    pub const fn quaternionic(v2: f64, v3: f64) -> Self {
        Self::new(0.0, v2, v3, 0.0)
    }

    pub const fn at(mut self, d_star: f64) -> Self {
        self.d_star = d_star;
        self
    }

    /// `|V_q| = sqrt(V2² + V3²)`.
    pub fn quaternionic_modulus(&self) -> f64 {
        self.v2.hypot(self.v3)
    }

    /// `|V| = sqrt(V1² + V2² + V3²)`.
    pub fn modulus(&self) -> f64 {
        self.v1.hypot(self.quaternionic_modulus())
    }

    pub fn is_complex(&self) -> bool {
        self.v2 == 0.0 && self.v3 == 0.0
    }

    /// The potential term `h·V = i V1 + j V2 + k V3` as a quaternion.
    pub fn as_quaternion(&self) -> Quaternion {
        Quaternion::new(0.0, self.v1, self.v2, self.v3)
    }

    fn is_finite(&self) -> bool {
        self.v1.is_finite() && self.v2.is_finite() && self.v3.is_finite() && self.d_star.is_finite()
    }
}

/// Full problem statement: energy, incidence angle (radians) and step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringConfig {
    pub energy: f64,
    pub theta: f64,
    pub potential: StepPotential,
}

impl ScatteringConfig {
    pub fn new(energy: f64, theta: f64, potential: StepPotential) -> Result<Self> {
        let config = Self {
            energy,
            theta,
            potential,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.energy.is_finite() && self.energy > 0.0) {
            return Err(Error::NonPositiveEnergy(self.energy));
        }
        if !(self.theta.is_finite() && (0.0..FRAC_PI_2).contains(&self.theta)) {
            return Err(Error::AngleOutOfRange(self.theta));
        }
        if !self.potential.is_finite() {
            return Err(Error::NonFinitePotential);
        }
        let modulus = self.potential.quaternionic_modulus();
        if self.energy <= modulus {
            return Err(Error::BelowQuaternionicThreshold {
                energy: self.energy,
                modulus,
            });
        }
        Ok(())
    }
}

/// Squared refractive index; negative values mean an imaginary index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractiveIndex {
    pub n_sq: f64,
}

impl RefractiveIndex {
    /// The real index, or `None` when `n² < 0`.
    pub fn value(&self) -> Option<f64> {
        (self.n_sq >= 0.0).then(|| self.n_sq.sqrt())
    }

    pub fn is_imaginary(&self) -> bool {
        self.n_sq < 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `N² > sin²θ`: a propagating wave is transmitted.
    Propagating,
    /// `0 < N² <= sin²θ`.
    TotalInternalReflection,
    /// `N² <= 0`: `|V| > E` while `E > |V_q|`.
    Tunneling,
}

impl Regime {
    pub fn from_index_sq(index_sq: f64, sin_sq: f64) -> Self {
        if index_sq <= 0.0 {
            Regime::Tunneling
        } else if index_sq <= sin_sq {
            Regime::TotalInternalReflection
        } else {
            Regime::Propagating
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Propagating => "propagating",
            Regime::TotalInternalReflection => "total_internal_reflection",
            Regime::Tunneling => "tunneling",
        }
    }

    pub fn is_totally_reflecting(&self) -> bool {
        !matches!(self, Regime::Propagating)
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalAngle {
    /// Total reflection sets in above this angle (radians).
    Angle(f64),
    /// `N² > 1`: the transmitted wave always propagates.
    NoTotalReflection,
    /// `N² <= 0`: every incidence angle reflects totally.
    AllAnglesReflect,
}

impl CriticalAngle {
    pub fn angle(&self) -> Option<f64> {
        match *self {
            CriticalAngle::Angle(t) => Some(t),
            _ => None,
        }
    }
}

/// Derived momenta, indices and mixing numbers of one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub energy: f64,
    pub theta: f64,
    pub p: f64,
    pub p_y_star: f64,
    pub p_z_star: f64,
    /// Transmitted momentum for the complex part of the step alone.
    pub q_z_complex: Complex64,
    /// Propagating-branch momentum `Q_z*`.
    pub q_z: Complex64,
    /// Evanescent-branch momentum `Q̃_z*`.
    pub q_tilde_z: Complex64,
    /// `n² = 1 - V1/E`.
    pub n_sq: f64,
    /// `N² = sqrt(1 - |V_q|²/E²) - V1/E`.
    pub index_sq: f64,
    /// `sqrt(E² - |V_q|²)`.
    pub reduced_energy: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
    pub regime: Regime,
}

impl Kinematics {
    /// `α β`, real by construction.
    pub fn alpha_beta(&self) -> f64 {
        (self.alpha * self.beta).re
    }

    pub fn sin_sq(&self) -> f64 {
        self.theta.sin().powi(2)
    }
}

/// `p = sqrt(E)` in natural units.
pub fn momentum_magnitude(energy: f64) -> Result<f64> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::NonPositiveEnergy(energy));
    }
    Ok(energy.sqrt())
}

/// `n² = 1 - V1/E`.
pub fn index_complex(v1: f64, energy: f64) -> Result<RefractiveIndex> {
    momentum_magnitude(energy)?;
    Ok(RefractiveIndex {
        n_sq: 1.0 - v1 / energy,
    })
}

/// `sqrt(E² - |V_q|²)`, evaluated as `sqrt((E - |V_q|)(E + |V_q|))`.
fn reduced_energy(potential: &StepPotential, energy: f64) -> Result<f64> {
    momentum_magnitude(energy)?;
    let modulus = potential.quaternionic_modulus();
    if energy <= modulus {
        return Err(Error::BelowQuaternionicThreshold { energy, modulus });
    }
    Ok(((energy - modulus) * (energy + modulus)).sqrt())
}

/// `N² = sqrt(1 - |V_q|²/E²) - V1/E`.
pub fn index_quaternionic(potential: &StepPotential, energy: f64) -> Result<RefractiveIndex> {
    let s = reduced_energy(potential, energy)?;
    Ok(RefractiveIndex {
        n_sq: s / energy - potential.v1 / energy,
    })
}

/// Snell's law `sin θ = index · sin φ`; `None` under total reflection.
pub fn refraction_angle(theta: f64, index: f64) -> Option<f64> {
    if !(index > 0.0 && index.is_finite()) {
        return None;
    }
    let s = theta.sin() / index;
    (s <= 1.0).then(|| s.asin())
}

/// Critical angle for `a = V1/E` and `b = |V_q|/E`.
///
/// Only `b²` enters, so the sign of `b` is irrelevant; `|b| >= 1` is outside
/// the domain where the propagating root is real.
pub fn critical_angle(a: f64, b: f64) -> Result<CriticalAngle> {
    if b.is_nan() || b.abs() >= 1.0 {
        return Err(Error::BelowQuaternionicThreshold {
            energy: 1.0,
            modulus: b.abs(),
        });
    }
    let index_sq = ((1.0 - b) * (1.0 + b)).sqrt() - a;
    Ok(if index_sq <= 0.0 {
        CriticalAngle::AllAnglesReflect
    } else if index_sq > 1.0 {
        CriticalAngle::NoTotalReflection
    } else {
        CriticalAngle::Angle(index_sq.sqrt().asin())
    })
}

/// Small-`ε` expansion of the quaternionic index around the complex one:
/// `N ≈ n - ε²/(4n)` with `ε = |V_q|/E`.
pub fn index_perturbative(n: f64, eps: f64) -> f64 {
    n - eps * eps / (4.0 * n)
}

/// Root of a real number on the branch with `Im >= 0` (and `Re >= 0` when
/// real), so `exp(i k z*)` stays bounded as `z* -> +inf`.
fn upper_sqrt_real(x: f64) -> Complex64 {
    if x >= 0.0 {
        Complex64::new(x.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-x).sqrt())
    }
}

pub fn derive_kinematics(config: &ScatteringConfig) -> Result<Kinematics> {
    config.validate()?;
    let energy = config.energy;
    let pot = &config.potential;
    let p = energy.sqrt();
    let (sin, cos) = config.theta.sin_cos();
    let sin_sq = sin * sin;

    let s = reduced_energy(pot, energy)?;
    let n_sq = 1.0 - pot.v1 / energy;
    let index_sq = s / energy - pot.v1 / energy;

    let q_z_complex = upper_sqrt_real(n_sq - sin_sq) * p;
    let q_z = upper_sqrt_real(index_sq - sin_sq) * p;
    let q_tilde_z = upper_sqrt_real(-(s / energy + pot.v1 / energy + sin_sq)) * p;

    let denom = energy + s;
    let alpha = Complex64::i() * Complex64::new(pot.v2, pot.v3) / denom;
    let beta = -Complex64::i() * Complex64::new(pot.v2, -pot.v3) / denom;

    Ok(Kinematics {
        energy,
        theta: config.theta,
        p,
        p_y_star: p * sin,
        p_z_star: p * cos,
        q_z_complex,
        q_z,
        q_tilde_z,
        n_sq,
        index_sq,
        reduced_energy: s,
        alpha,
        beta,
        regime: Regime::from_index_sq(index_sq, sin_sq),
    })
}

pub fn classify_regime(config: &ScatteringConfig) -> Result<Regime> {
    let index = index_quaternionic(&config.potential, config.energy)?;
    config.validate()?;
    Ok(Regime::from_index_sq(
        index.n_sq,
        config.theta.sin().powi(2),
    ))
}

/// Lab `(y, z)` to starred `(y*, z*)`; `z*` is tilted by `theta` from `z`.
pub fn rotate_frame(theta: f64, point: (f64, f64)) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let (y, z) = point;
    (y * c + z * s, -y * s + z * c)
}

/// Inverse of [`rotate_frame`].
pub fn unrotate_frame(theta: f64, point: (f64, f64)) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let (ys, zs) = point;
    (ys * c - zs * s, ys * s + zs * c)
}
