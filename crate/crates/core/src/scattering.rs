//! Closed-form reflection/transmission amplitudes and the explicit
//! quaternionic wavefunctions on both sides of the step.
//!
//! Region I (`z* < d*`):
//! `Ψ_I = {e^{i p_z z} + R e^{-i p_z z} + j R̃ e^{κ z}} e^{i p_y y}`
//!
//! Region II (`z* > d*`):
//! `Ψ_II = {(1 + jβ) T e^{i Q z} + (α + j) T̃ e^{i Q̃ z}} e^{i p_y y}`
//!
//! All amplitudes are complex and sit to the right of `j`. The decay constant
//! `κ` of the region-I `j`-sector depends on [`EvanescentMode`].

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{derive_kinematics, Kinematics, ScatteringConfig};
use crate::quaternion::Quaternion;

/// Choice of decay constant `κ` for the region-I `j`-sector `j R̃ e^{κ z*}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvanescentMode {
    /// `κ = p_z*`.
    #[default]
    PaperLiteral,
    /// `κ = p sqrt(1 + sin²θ)`, the root of the free `j`-sector equation
    /// `κ² = E + p_y*²`.
    DispersionConsistent,
}

impl EvanescentMode {
    pub const ALL: [EvanescentMode; 2] = [
        EvanescentMode::PaperLiteral,
        EvanescentMode::DispersionConsistent,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EvanescentMode::PaperLiteral => "paper-literal",
            EvanescentMode::DispersionConsistent => "dispersion-consistent",
        }
    }
}

impl fmt::Display for EvanescentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EvanescentMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "paper-literal" => Ok(EvanescentMode::PaperLiteral),
            "dispersion-consistent" => Ok(EvanescentMode::DispersionConsistent),
            other => Err(format!(
                "unknown evanescent mode '{other}' (expected paper-literal or dispersion-consistent)"
            )),
        }
    }
}

impl Kinematics {
    /// Region-I `j`-sector decay constant for `mode`.
    pub fn kappa(&self, mode: EvanescentMode) -> f64 {
        match mode {
            EvanescentMode::PaperLiteral => self.p_z_star,
            EvanescentMode::DispersionConsistent => self.p * (1.0 + self.sin_sq()).sqrt(),
        }
    }
}

/// `(R, R̃, T, T̃)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeSet {
    pub r_main: Complex64,
    pub r_tilde: Complex64,
    pub t_main: Complex64,
    pub t_tilde: Complex64,
}

impl AmplitudeSet {
    /// Amplitudes of a transparent interface.
    pub const TRANSPARENT: Self = Self {
        r_main: Complex64::new(0.0, 0.0),
        r_tilde: Complex64::new(0.0, 0.0),
        t_main: Complex64::new(1.0, 0.0),
        t_tilde: Complex64::new(0.0, 0.0),
    };

    pub fn as_array(&self) -> [Complex64; 4] {
        [self.r_main, self.r_tilde, self.t_main, self.t_tilde]
    }

    pub fn from_array(a: [Complex64; 4]) -> Self {
        Self {
            r_main: a[0],
            r_tilde: a[1],
            t_main: a[2],
            t_tilde: a[3],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|c| c.is_finite())
    }
}

/// Numerator and denominator of `R = (A₋/A₊) e^{2 i p_z* d*}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionFactors {
    pub a_minus: Complex64,
    pub a_plus: Complex64,
}

/// Everything the continuity chain needs, with `κ` already resolved.
struct Chain {
    a_minus: Complex64,
    a_plus: Complex64,
    /// `(κ - i Q) / (i Q̃ - κ)`: ratio `T̃ e^{iQ̃d} / (β T e^{iQd})`.
    gamma: Complex64,
    /// `i Q̃ - κ`.
    evanescent_gap: Complex64,
}

fn chain(kin: &Kinematics, kappa: f64) -> Chain {
    let i = Complex64::i();
    let pz = Complex64::from(kin.p_z_star);
    let k = Complex64::from(kappa);
    let (q, qt) = (kin.q_z, kin.q_tilde_z);
    let ab = kin.alpha * kin.beta;

    let evanescent_gap = i * qt - k;
    let cross = k - i * q;
    let a_plus = (pz + q) * evanescent_gap + ab * cross * (pz + qt);
    let a_minus = (pz - q) * evanescent_gap + ab * cross * (pz - qt);
    Chain {
        a_minus,
        a_plus,
        gamma: cross / evanescent_gap,
        evanescent_gap,
    }
}

fn interface_phase(kin: &Kinematics, d_star: f64) -> Complex64 {
    Complex64::new(0.0, 2.0 * kin.p_z_star * d_star).exp()
}

/// Reflection amplitude for a purely complex step,
/// `r = (1 - n²) / (cos θ + sqrt(n² - sin²θ))² · e^{2 i p_z* d*}`.
pub fn reflection_complex(config: &ScatteringConfig) -> Result<Complex64> {
    if !config.potential.is_complex() {
        return Err(Error::QuaternionicPotential);
    }
    let kin = derive_kinematics(config)?;
    let cos = Complex64::from(config.theta.cos());
    let root = kin.q_z_complex / kin.p;
    let r = Complex64::from(1.0 - kin.n_sq) / (cos + root).powi(2);
    Ok(r * interface_phase(&kin, config.potential.d_star))
}

/// Phase of the totally reflected amplitude for a complex step,
/// `2 (p_z* d* - arctan(sqrt(sin²θ - n²) / cos θ))`.
pub fn total_reflection_phase(config: &ScatteringConfig) -> Result<f64> {
    if !config.potential.is_complex() {
        return Err(Error::QuaternionicPotential);
    }
    let kin = derive_kinematics(config)?;
    let sin_sq = kin.sin_sq();
    if sin_sq <= kin.n_sq {
        return Err(Error::NotTotalReflection {
            sin_sq,
            n_sq: kin.n_sq,
        });
    }
    let depth = (sin_sq - kin.n_sq).sqrt();
    Ok(2.0 * (kin.p_z_star * config.potential.d_star - (depth / config.theta.cos()).atan()))
}

/// `A₋` and `A₊` for the given mode.
pub fn reflection_factors(
    config: &ScatteringConfig,
    mode: EvanescentMode,
) -> Result<ReflectionFactors> {
    let kin = derive_kinematics(config)?;
    let c = chain(&kin, kin.kappa(mode));
    Ok(ReflectionFactors {
        a_minus: c.a_minus,
        a_plus: c.a_plus,
    })
}

/// `R = (A₋/A₊) e^{2 i p_z* d*}`.
pub fn reflection_quaternionic(
    config: &ScatteringConfig,
    mode: EvanescentMode,
) -> Result<Complex64> {
    Ok(solve_amplitudes(config, mode)?.r_main)
}

/// All four amplitudes from the closed-form continuity chain.
pub fn solve_amplitudes(config: &ScatteringConfig, mode: EvanescentMode) -> Result<AmplitudeSet> {
    let kin = derive_kinematics(config)?;
    Ok(amplitudes_for(&kin, config.potential.d_star, mode))
}

fn amplitudes_for(kin: &Kinematics, d_star: f64, mode: EvanescentMode) -> AmplitudeSet {
    let kappa = kin.kappa(mode);
    let c = chain(kin, kappa);
    let i = Complex64::i();
    let d = Complex64::from(d_star);

    let incident_at_d = (i * kin.p_z_star * d).exp();
    // T e^{iQd}, from the sum of the two 1-sector equations.
    let x = 2.0 * kin.p_z_star * incident_at_d * c.evanescent_gap / c.a_plus;
    // T̃ e^{iQ̃d}, from the j-sector pair.
    let y = kin.beta * c.gamma * x;

    AmplitudeSet {
        r_main: c.a_minus / c.a_plus * interface_phase(kin, d_star),
        r_tilde: (kin.beta * x + y) * (-kappa * d_star).exp(),
        t_main: x * (-i * kin.q_z * d).exp(),
        t_tilde: y * (-i * kin.q_tilde_z * d).exp(),
    }
}

/// Quaternionic wavefunction of one configuration, evaluated via Hamilton
/// products so the `j`-structure is carried by the algebra itself.
#[derive(Debug, Clone, Copy)]
pub struct WaveField {
    kin: Kinematics,
    amps: AmplitudeSet,
    kappa: f64,
    d_star: f64,
    mode: EvanescentMode,
}

impl WaveField {
    /// Field with amplitudes from [`solve_amplitudes`].
    pub fn new(config: &ScatteringConfig, mode: EvanescentMode) -> Result<Self> {
        let kin = derive_kinematics(config)?;
        let amps = amplitudes_for(&kin, config.potential.d_star, mode);
        Ok(Self::build(kin, amps, config.potential.d_star, mode))
    }

    /// Field with caller-supplied amplitudes.
    pub fn with_amplitudes(
        config: &ScatteringConfig,
        amps: AmplitudeSet,
        mode: EvanescentMode,
    ) -> Result<Self> {
        let kin = derive_kinematics(config)?;
        Ok(Self::build(kin, amps, config.potential.d_star, mode))
    }

    fn build(kin: Kinematics, amps: AmplitudeSet, d_star: f64, mode: EvanescentMode) -> Self {
        Self {
            kappa: kin.kappa(mode),
            kin,
            amps,
            d_star,
            mode,
        }
    }

    pub fn kinematics(&self) -> &Kinematics {
        &self.kin
    }

    pub fn amplitudes(&self) -> &AmplitudeSet {
        &self.amps
    }

    pub fn mode(&self) -> EvanescentMode {
        self.mode
    }

    pub fn d_star(&self) -> f64 {
        self.d_star
    }

    fn transverse(&self, y_star: f64) -> Quaternion {
        Complex64::new(0.0, self.kin.p_y_star * y_star).exp().into()
    }

    fn check_region_i(&self, z_star: f64) -> Result<()> {
        if z_star > self.d_star {
            return Err(Error::WrongRegion {
                region: "I",
                z_star,
                d_star: self.d_star,
            });
        }
        Ok(())
    }

    fn check_region_ii(&self, z_star: f64) -> Result<()> {
        if z_star < self.d_star {
            return Err(Error::WrongRegion {
                region: "II",
                z_star,
                d_star: self.d_star,
            });
        }
        Ok(())
    }

    /// Region-I 1-part and j-part before the transverse factor, and their
    /// `z*`-derivatives.
    fn region_i_parts(&self, z_star: f64) -> ([Complex64; 2], [Complex64; 2]) {
        let i = Complex64::i();
        let pz = self.kin.p_z_star;
        let forward = (i * pz * z_star).exp();
        let backward = self.amps.r_main * (-i * pz * z_star).exp();
        let side = self.amps.r_tilde * (self.kappa * z_star).exp();
        (
            [forward + backward, side],
            [i * pz * (forward - backward), side * self.kappa],
        )
    }

    fn region_ii_parts(&self, z_star: f64) -> ([Complex64; 2], [Complex64; 2]) {
        let i = Complex64::i();
        let main = self.amps.t_main * (i * self.kin.q_z * z_star).exp();
        let side = self.amps.t_tilde * (i * self.kin.q_tilde_z * z_star).exp();
        (
            [main, side],
            [i * self.kin.q_z * main, i * self.kin.q_tilde_z * side],
        )
    }

    fn assemble_i(&self, parts: [Complex64; 2], y_star: f64) -> Quaternion {
        let body = Quaternion::from(parts[0]) + Quaternion::J * Quaternion::from(parts[1]);
        body * self.transverse(y_star)
    }

    fn assemble_ii(&self, parts: [Complex64; 2], y_star: f64) -> Quaternion {
        let one_plus_j_beta = Quaternion::ONE + Quaternion::J * Quaternion::from(self.kin.beta);
        let alpha_plus_j = Quaternion::from(self.kin.alpha) + Quaternion::J;
        let body = one_plus_j_beta * Quaternion::from(parts[0])
            + alpha_plus_j * Quaternion::from(parts[1]);
        body * self.transverse(y_star)
    }

    pub fn region_i(&self, (y_star, z_star): (f64, f64)) -> Result<Quaternion> {
        self.check_region_i(z_star)?;
        Ok(self.assemble_i(self.region_i_parts(z_star).0, y_star))
    }

    pub fn region_i_dz(&self, (y_star, z_star): (f64, f64)) -> Result<Quaternion> {
        self.check_region_i(z_star)?;
        Ok(self.assemble_i(self.region_i_parts(z_star).1, y_star))
    }

    pub fn region_ii(&self, (y_star, z_star): (f64, f64)) -> Result<Quaternion> {
        self.check_region_ii(z_star)?;
        Ok(self.assemble_ii(self.region_ii_parts(z_star).0, y_star))
    }

    pub fn region_ii_dz(&self, (y_star, z_star): (f64, f64)) -> Result<Quaternion> {
        self.check_region_ii(z_star)?;
        Ok(self.assemble_ii(self.region_ii_parts(z_star).1, y_star))
    }

    /// `Ψ` at any point; `z* <= d*` is evaluated in region I.
    pub fn value(&self, (y_star, z_star): (f64, f64)) -> Quaternion {
        if z_star <= self.d_star {
            self.assemble_i(self.region_i_parts(z_star).0, y_star)
        } else {
            self.assemble_ii(self.region_ii_parts(z_star).0, y_star)
        }
    }
}

/// `Ψ_I` at `point = (y*, z*)` with `z* <= d*`.
pub fn wave_region_i(
    config: &ScatteringConfig,
    amps: &AmplitudeSet,
    point: (f64, f64),
    mode: EvanescentMode,
) -> Result<Quaternion> {
    WaveField::with_amplitudes(config, *amps, mode)?.region_i(point)
}

/// `Ψ_II` at `point = (y*, z*)` with `z* >= d*`.
pub fn wave_region_ii(
    config: &ScatteringConfig,
    amps: &AmplitudeSet,
    point: (f64, f64),
) -> Result<Quaternion> {
    // κ only enters region I.
    WaveField::with_amplitudes(config, *amps, EvanescentMode::PaperLiteral)?.region_ii(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{Regime, StepPotential};
    use std::f64::consts::FRAC_PI_4;

    fn cfg(energy: f64, theta: f64, pot: StepPotential) -> ScatteringConfig {
        ScatteringConfig::new(energy, theta, pot).unwrap()
    }

    #[test]
    fn complex_normal_incidence() {
        let c = cfg(3.0, 0.0, StepPotential::complex(1.0));
        let r = reflection_complex(&c).unwrap();
        let n = (2.0f64 / 3.0).sqrt();
        assert!((r.re - (1.0 - n) / (1.0 + n)).abs() < 1e-15);
        assert!(r.im.abs() < 1e-15);
        assert!((r.re - 0.1010205).abs() < 1e-7);

        // (p_z - q_z)/(p_z + q_z) form.
        let kin = derive_kinematics(&c).unwrap();
        let alt = (kin.p_z_star - kin.q_z_complex) / (kin.p_z_star + kin.q_z_complex);
        assert!((r - alt).norm() < 1e-15);
    }

    #[test]
    fn complex_free_is_transparent() {
        let r = reflection_complex(&cfg(2.0, 0.6, StepPotential::FREE)).unwrap();
        assert_eq!(r, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn complex_total_reflection() {
        let c = cfg(3.0, 1.2, StepPotential::complex(1.0));
        let r = reflection_complex(&c).unwrap();
        assert!((r.norm() - 1.0).abs() < 1e-12);
        assert!((r.arg() - (-1.784603)).abs() < 1e-6);
        let phase = total_reflection_phase(&c).unwrap();
        assert!((phase - (-1.784603)).abs() < 1e-6);
        assert!((Complex64::from_polar(1.0, phase) - r).norm() < 1e-12);
    }

    #[test]
    fn total_reflection_phase_shift_and_errors() {
        let d = 0.37;
        let c0 = cfg(3.0, 1.2, StepPotential::complex(1.0));
        let cd = cfg(3.0, 1.2, StepPotential::complex(1.0).at(d));
        let pz = 3f64.sqrt() * 1.2f64.cos();
        let shift = total_reflection_phase(&cd).unwrap() - total_reflection_phase(&c0).unwrap();
        assert!((shift - 2.0 * pz * d).abs() < 1e-14);
        assert!(matches!(
            total_reflection_phase(&cfg(3.0, FRAC_PI_4, StepPotential::complex(1.0))),
            Err(Error::NotTotalReflection { .. })
        ));
        let qc = cfg(3.0, 1.2, StepPotential::quaternionic(1.0, 0.0));
        assert_eq!(reflection_complex(&qc), Err(Error::QuaternionicPotential));
    }

    #[test]
    fn total_reflection_phase_vanishes_at_critical_angle() {
        let theta_c = (2.0f64 / 3.0).sqrt().asin();
        let c = cfg(3.0, theta_c + 1e-10, StepPotential::complex(1.0));
        assert!(total_reflection_phase(&c).unwrap().abs() < 1e-4);
    }

    #[test]
    fn reference_quaternionic_reflection() {
        let c = cfg(1.0, FRAC_PI_4, StepPotential::quaternionic(1.0 / 3.0, 0.0));
        let r = reflection_quaternionic(&c, EvanescentMode::PaperLiteral).unwrap();
        assert!((r - Complex64::new(0.034155996854183, 0.015201723136158)).norm() < 1e-12);
        assert!((r.norm() - 0.0374).abs() < 1e-4);
    }

    #[test]
    fn modes_agree_at_normal_incidence() {
        let c = cfg(1.0, 0.0, StepPotential::new(0.2, 0.3, -0.4, 0.0));
        let a = solve_amplitudes(&c, EvanescentMode::PaperLiteral).unwrap();
        let b = solve_amplitudes(&c, EvanescentMode::DispersionConsistent).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
    }

    #[test]
    fn free_amplitudes() {
        for mode in EvanescentMode::ALL {
            let a = solve_amplitudes(&cfg(1.5, 0.8, StepPotential::FREE), mode).unwrap();
            assert!(a.max_abs_diff(&AmplitudeSet::TRANSPARENT) < 1e-15);
        }
    }

    #[test]
    fn complex_step_has_empty_j_sector() {
        let c = cfg(3.0, 0.5, StepPotential::complex(1.0));
        let r = reflection_complex(&c).unwrap();
        for mode in EvanescentMode::ALL {
            let a = solve_amplitudes(&c, mode).unwrap();
            assert_eq!(a.r_tilde, Complex64::new(0.0, 0.0));
            assert_eq!(a.t_tilde, Complex64::new(0.0, 0.0));
            assert!((a.r_main - r).norm() < 1e-15);
            // 1 + r = t for a complex step.
            assert!((a.t_main - (1.0 + r)).norm() < 1e-14);
        }
    }

    #[test]
    fn unimodular_beyond_critical_angle() {
        for (theta, pot) in [
            (1.35, StepPotential::quaternionic(0.4, 0.2)),
            (0.9, StepPotential::new(0.6, 0.3, 0.1, 0.0)),
            (0.2, StepPotential::new(1.4, 0.5, 0.5, 0.0)),
        ] {
            let c = cfg(1.0, theta, pot);
            assert!(derive_kinematics(&c)
                .unwrap()
                .regime
                .is_totally_reflecting());
            for mode in EvanescentMode::ALL {
                let r = reflection_quaternionic(&c, mode).unwrap();
                assert!((r.norm() - 1.0).abs() < 1e-12, "{theta} {pot:?} {mode}");
            }
        }
    }

    #[test]
    fn degenerate_grazing_boundary_is_finite() {
        // N² = sin²θ: V1/E chosen so sqrt(1 - b²) - a = 1/2 at theta = pi/4.
        let b: f64 = 0.3;
        let a = (1.0 - b * b).sqrt() - 0.5;
        let c = cfg(1.0, FRAC_PI_4, StepPotential::new(a, b, 0.0, 0.0));
        let kin = derive_kinematics(&c).unwrap();
        assert!(kin.q_z.norm() < 1e-7);
        for mode in EvanescentMode::ALL {
            let f = reflection_factors(&c, mode).unwrap();
            assert!(f.a_plus.norm() > 1e-3);
            let amps = solve_amplitudes(&c, mode).unwrap();
            assert!(amps.is_finite());
            assert!((amps.r_main.norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn phase_covariance() {
        let d = 0.8;
        let pot = StepPotential::new(0.1, 0.2, 0.3, 0.0);
        let c0 = cfg(1.2, 0.5, pot);
        let cd = cfg(1.2, 0.5, pot.at(d));
        let pz = 1.2f64.sqrt() * 0.5f64.cos();
        for mode in EvanescentMode::ALL {
            let r0 = reflection_quaternionic(&c0, mode).unwrap();
            let rd = reflection_quaternionic(&cd, mode).unwrap();
            assert!((rd - r0 * Complex64::new(0.0, 2.0 * pz * d).exp()).norm() < 1e-15);
        }
    }

    #[test]
    fn continuity_at_interface() {
        let pot = StepPotential::new(0.25, 0.3, -0.2, 0.4);
        let c = cfg(1.0, 0.7, pot);
        for mode in EvanescentMode::ALL {
            let field = WaveField::new(&c, mode).unwrap();
            let pt = (0.3, pot.d_star);
            let (a, b) = (field.region_i(pt).unwrap(), field.region_ii(pt).unwrap());
            assert!(a.max_abs_diff(b) < 1e-10);
            let (da, db) = (
                field.region_i_dz(pt).unwrap(),
                field.region_ii_dz(pt).unwrap(),
            );
            assert!(da.max_abs_diff(db) < 1e-10);
        }
    }

    #[test]
    fn wrong_region_is_rejected() {
        let c = cfg(1.0, 0.3, StepPotential::complex(0.5));
        let amps = solve_amplitudes(&c, EvanescentMode::PaperLiteral).unwrap();
        assert!(matches!(
            wave_region_i(&c, &amps, (0.0, 0.1), EvanescentMode::PaperLiteral),
            Err(Error::WrongRegion { .. })
        ));
        assert!(matches!(
            wave_region_ii(&c, &amps, (0.0, -0.1)),
            Err(Error::WrongRegion { .. })
        ));
    }

    #[test]
    fn free_plane_wave_has_unit_norm() {
        let c = cfg(1.0, 0.4, StepPotential::FREE);
        let field = WaveField::new(&c, EvanescentMode::PaperLiteral).unwrap();
        for k in 0..20 {
            let pt = (0.37 * k as f64, -2.0 + 0.21 * k as f64);
            assert!((field.value(pt).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn region_i_j_part_follows_kappa() {
        let c = cfg(1.0, 0.6, StepPotential::quaternionic(0.5, 0.1));
        for mode in EvanescentMode::ALL {
            let field = WaveField::new(&c, mode).unwrap();
            let kappa = field.kinematics().kappa(mode);
            let j_part = |z: f64| field.region_i((0.0, z)).unwrap().split().second.norm();
            let ratio = j_part(-3.0) / j_part(-2.0);
            assert!((ratio - (-kappa).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn tunneling_field_decays() {
        let c = cfg(1.0, 0.3, StepPotential::new(1.5, 0.4, 0.2, 0.0));
        assert_eq!(derive_kinematics(&c).unwrap().regime, Regime::Tunneling);
        let field = WaveField::new(&c, EvanescentMode::PaperLiteral).unwrap();
        let far = field.region_ii((0.0, 40.0)).unwrap().norm();
        assert!(far < 1e-10);
        let mut prev = f64::INFINITY;
        for k in 0..50 {
            let v = field.region_ii((0.0, 0.2 * k as f64)).unwrap().norm();
            assert!(v < prev);
            prev = v;
        }
    }
}
