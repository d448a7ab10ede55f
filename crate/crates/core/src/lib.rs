//! Planar scattering of a quantum particle off a step potential whose
//! strength may carry quaternionic parts `i V1 + j V2 + k V3`.
//!
//! The crate derives the refractive indices, refraction and critical angles,
//! the closed-form reflection/transmission amplitudes and the explicit
//! quaternion-valued wavefunctions on both sides of the interface. The
//! [`oracle`] module re-derives the same quantities by brute force (a direct
//! linear solve of the continuity conditions and finite-difference residuals
//! of the Schrödinger equation) so every closed form can be cross-checked.
//!
//! Units are natural: `hbar = 2m = 1`, so the incident momentum is `p = sqrt(E)`.

pub mod error;
pub mod kinematics;
pub mod oracle;
pub mod quaternion;
pub mod scattering;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use kinematics::{
    classify_regime, critical_angle, derive_kinematics, index_complex, index_perturbative,
    index_quaternionic, momentum_magnitude, refraction_angle, rotate_frame, unrotate_frame,
    CriticalAngle, Kinematics, RefractiveIndex, Regime, ScatteringConfig, StepPotential,
};
pub use num_complex::Complex64;
pub use quaternion::{Quaternion, SymplecticPair};
pub use scattering::{
    reflection_complex, reflection_factors, reflection_quaternionic, solve_amplitudes,
    total_reflection_phase, wave_region_i, wave_region_ii, AmplitudeSet, EvanescentMode, WaveField,
};
