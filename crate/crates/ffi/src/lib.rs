//! C ABI over `quatsnell`.
//!
//! A scattering configuration lives behind an opaque `QsConfig` handle created
//! with [`qs_config_new`] and released with [`qs_config_free`]. Every other
//! call returns a [`QsStatus`] and writes results through out-pointers, which
//! are left untouched on failure. Panics never cross the boundary; they are
//! reported as `QS_STATUS_PANIC`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use quatsnell::{
    critical_angle, derive_kinematics, refraction_angle, solve_amplitudes, CriticalAngle, Error,
    EvanescentMode, Quaternion, Regime, ScatteringConfig, StepPotential, WaveField,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidEnergy = 2,
    InvalidAngle = 3,
    InvalidPotential = 4,
    BelowThreshold = 5,
    Domain = 6,
    NoSolution = 7,
    Panic = 99,
}

impl From<&Error> for QsStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonPositiveEnergy(_) => QsStatus::InvalidEnergy,
            Error::AngleOutOfRange(_) => QsStatus::InvalidAngle,
            Error::NonFinitePotential | Error::QuaternionicPotential => QsStatus::InvalidPotential,
            Error::BelowQuaternionicThreshold { .. } => QsStatus::BelowThreshold,
            Error::NotTotalReflection { .. } | Error::SingularSystem { .. } => QsStatus::NoSolution,
            _ => QsStatus::Domain,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsMode {
    PaperLiteral = 0,
    DispersionConsistent = 1,
}

impl From<QsMode> for EvanescentMode {
    fn from(m: QsMode) -> Self {
        match m {
            QsMode::PaperLiteral => EvanescentMode::PaperLiteral,
            QsMode::DispersionConsistent => EvanescentMode::DispersionConsistent,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QsRegime {
    Propagating = 0,
    TotalInternalReflection = 1,
    Tunneling = 2,
}

impl From<Regime> for QsRegime {
    fn from(r: Regime) -> Self {
        match r {
            Regime::Propagating => QsRegime::Propagating,
            Regime::TotalInternalReflection => QsRegime::TotalInternalReflection,
            Regime::Tunneling => QsRegime::Tunneling,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QsComplex {
    pub re: f64,
    pub im: f64,
}

impl From<quatsnell::Complex64> for QsComplex {
    fn from(c: quatsnell::Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QsQuaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<Quaternion> for QsQuaternion {
    fn from(q: Quaternion) -> Self {
        Self {
            w: q.w,
            x: q.x,
            y: q.y,
            z: q.z,
        }
    }
}

impl From<QsQuaternion> for Quaternion {
    fn from(q: QsQuaternion) -> Self {
        Quaternion::new(q.w, q.x, q.y, q.z)
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QsKinematics {
    pub p: f64,
    pub p_y: f64,
    pub p_z: f64,
    pub q_z: QsComplex,
    pub q_tilde_z: QsComplex,
    /// `n²` of the complex part alone.
    pub n_sq: f64,
    /// `N²` of the full step.
    pub index_sq: f64,
    pub alpha: QsComplex,
    pub beta: QsComplex,
    pub regime: QsRegime,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QsAmplitudes {
    pub r: QsComplex,
    pub r_tilde: QsComplex,
    pub t: QsComplex,
    pub t_tilde: QsComplex,
}

/// Opaque scattering configuration.
pub struct QsConfig {
    inner: ScatteringConfig,
}

fn guard<F: FnOnce() -> QsStatus>(f: F) -> QsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(QsStatus::Panic)
}

macro_rules! try_qs {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return QsStatus::from(&err),
        }
    };
}

unsafe fn config_ref<'a>(cfg: *const QsConfig) -> Option<&'a ScatteringConfig> {
    cfg.as_ref().map(|c| &c.inner)
}

/// Creates a configuration. `theta` is the incidence angle in radians.
///
/// # Safety
/// `out` must be null or valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn qs_config_new(
    energy: f64,
    theta: f64,
    v1: f64,
    v2: f64,
    v3: f64,
    d_star: f64,
    out: *mut *mut QsConfig,
) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return QsStatus::NullPointer;
        }
        let potential = StepPotential::new(v1, v2, v3, d_star);
        let inner = try_qs!(ScatteringConfig::new(energy, theta, potential));
        *out = Box::into_raw(Box::new(QsConfig { inner }));
        QsStatus::Ok
    })
}

/// Releases a configuration. Null is ignored.
///
/// # Safety
/// `cfg` must be null or a handle from [`qs_config_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_config_free(cfg: *mut QsConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_kinematics(cfg: *const QsConfig, out: *mut QsKinematics) -> QsStatus {
    guard(|| {
        let (Some(c), false) = (config_ref(cfg), out.is_null()) else {
            return QsStatus::NullPointer;
        };
        let k = try_qs!(derive_kinematics(c));
        *out = QsKinematics {
            p: k.p,
            p_y: k.p_y_star,
            p_z: k.p_z_star,
            q_z: k.q_z.into(),
            q_tilde_z: k.q_tilde_z.into(),
            n_sq: k.n_sq,
            index_sq: k.index_sq,
            alpha: k.alpha.into(),
            beta: k.beta.into(),
            regime: k.regime.into(),
        };
        QsStatus::Ok
    })
}

/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_amplitudes(
    cfg: *const QsConfig,
    mode: QsMode,
    out: *mut QsAmplitudes,
) -> QsStatus {
    guard(|| {
        let (Some(c), false) = (config_ref(cfg), out.is_null()) else {
            return QsStatus::NullPointer;
        };
        let a = try_qs!(solve_amplitudes(c, mode.into()));
        *out = QsAmplitudes {
            r: a.r_main.into(),
            r_tilde: a.r_tilde.into(),
            t: a.t_main.into(),
            t_tilde: a.t_tilde.into(),
        };
        QsStatus::Ok
    })
}

/// Main reflection amplitude `R`.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_reflection(
    cfg: *const QsConfig,
    mode: QsMode,
    out: *mut QsComplex,
) -> QsStatus {
    guard(|| {
        let mut amps = QsAmplitudes::default();
        let status = qs_amplitudes(cfg, mode, &mut amps);
        if status != QsStatus::Ok {
            return status;
        }
        if out.is_null() {
            return QsStatus::NullPointer;
        }
        *out = amps.r;
        QsStatus::Ok
    })
}

/// Wavefunction at `(y*, z*)` in the rotated frame.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_wavefunction(
    cfg: *const QsConfig,
    mode: QsMode,
    y_star: f64,
    z_star: f64,
    out: *mut QsQuaternion,
) -> QsStatus {
    guard(|| {
        let (Some(c), false) = (config_ref(cfg), out.is_null()) else {
            return QsStatus::NullPointer;
        };
        let field = try_qs!(WaveField::new(c, mode.into()));
        *out = field.value((y_star, z_star)).into();
        QsStatus::Ok
    })
}

/// Critical angle for `a = V1/E`, `b = |V_q|/E`.
///
/// `*has_angle` is 1 when an angle exists, 0 when every angle transmits and
/// 2 when every angle reflects; `*out` is `NaN` in the last two cases.
///
/// # Safety
/// `out` and `has_angle` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_critical_angle(
    a: f64,
    b: f64,
    out: *mut f64,
    has_angle: *mut i32,
) -> QsStatus {
    guard(|| {
        if out.is_null() || has_angle.is_null() {
            return QsStatus::NullPointer;
        }
        if !(a.is_finite() && b.is_finite()) {
            return QsStatus::Domain;
        }
        let (angle, flag) = match try_qs!(critical_angle(a, b)) {
            CriticalAngle::Angle(t) => (t, 1),
            CriticalAngle::NoTotalReflection => (f64::NAN, 0),
            CriticalAngle::AllAnglesReflect => (f64::NAN, 2),
        };
        *out = angle;
        *has_angle = flag;
        QsStatus::Ok
    })
}

/// Refraction angle for incidence `theta` and index `index`; returns
/// `QS_STATUS_NO_SOLUTION` beyond the critical angle.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_refraction_angle(theta: f64, index: f64, out: *mut f64) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return QsStatus::NullPointer;
        }
        match refraction_angle(theta, index) {
            Some(phi) => {
                *out = phi;
                QsStatus::Ok
            }
            None => QsStatus::NoSolution,
        }
    })
}

/// Hamilton product `a b`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_quaternion_mul(
    a: QsQuaternion,
    b: QsQuaternion,
    out: *mut QsQuaternion,
) -> QsStatus {
    guard(|| {
        if out.is_null() {
            return QsStatus::NullPointer;
        }
        *out = (Quaternion::from(a) * Quaternion::from(b)).into();
        QsStatus::Ok
    })
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn qs_status_message(status: QsStatus) -> *const std::os::raw::c_char {
    let s: &'static [u8] = match status {
        QsStatus::Ok => b"ok\0",
        QsStatus::NullPointer => b"null pointer argument\0",
        QsStatus::InvalidEnergy => b"energy must be positive and finite\0",
        QsStatus::InvalidAngle => b"incidence angle must lie in [0, pi/2)\0",
        QsStatus::InvalidPotential => b"invalid potential\0",
        QsStatus::BelowThreshold => b"energy does not exceed the quaternionic modulus\0",
        QsStatus::Domain => b"argument out of domain\0",
        QsStatus::NoSolution => b"no solution for these arguments\0",
        QsStatus::Panic => b"internal error\0",
    };
    s.as_ptr().cast()
}
