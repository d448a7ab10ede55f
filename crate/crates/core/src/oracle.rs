//! Brute-force cross-checks that share no algebra with the closed forms.
//!
//! * [`continuity_linear_solve`] matches `Ψ` and `∂Ψ/∂z*` at the interface by
//!   splitting the quaternionic basis functions into their 1- and j-parts and
//!   solving the resulting 4×4 complex system directly.
//! * [`pde_residual`] plugs any quaternion-valued field into the Schrödinger
//!   equation `-i E Ψ i = -∇²Ψ - i (h·V) Ψ` with central differences.
//! * [`dispersion_residual`] and [`critical_identity_probe`] check the
//!   momentum relations and the critical-angle difference identity.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kinematics::{
    critical_angle, derive_kinematics, Kinematics, ScatteringConfig, StepPotential,
};
use crate::quaternion::Quaternion;
use crate::scattering::{AmplitudeSet, EvanescentMode};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// Pivots are chosen by largest modulus, first index on ties, so results are
/// deterministic. A pivot below `1e-300` or relative to the column scale below
/// `1e-14` is reported as singular.
#[allow(clippy::needless_range_loop)]
pub fn gauss_solve<const N: usize>(
    mut a: [[Complex64; N]; N],
    mut b: [Complex64; N],
) -> Result<[Complex64; N]> {
    let scale = a
        .iter()
        .flat_map(|row| row.iter())
        .map(|c| c.norm())
        .fold(0.0, f64::max);

    for col in 0..N {
        let mut pivot_row = col;
        let mut best = a[col][col].norm();
        for row in col + 1..N {
            let m = a[row][col].norm();
            if m > best {
                best = m;
                pivot_row = row;
            }
        }
        if !(best > 1e-300 && best > 1e-14 * scale) {
            return Err(Error::SingularSystem {
                column: col,
                pivot: best,
            });
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);

        let inv = a[col][col].inv();
        for row in col + 1..N {
            let factor = a[row][col] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in col..N {
                let delta = factor * a[col][k];
                a[row][k] -= delta;
            }
            let delta = factor * b[col];
            b[row] -= delta;
        }
    }

    let mut x = [Complex64::new(0.0, 0.0); N];
    for row in (0..N).rev() {
        let mut acc = b[row];
        for k in row + 1..N {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

/// A quaternionic basis function `B(z*)` and its `z*`-derivative at one point.
struct Basis {
    value: Quaternion,
    dz: Quaternion,
}

impl Basis {
    /// `left · e^{λ z}`, derivative `left · e^{λ z} · λ`.
    fn exponential(left: Quaternion, rate: Complex64, z: f64) -> Self {
        let value = left * Quaternion::from((rate * z).exp());
        Self {
            value,
            dz: value * Quaternion::from(rate),
        }
    }
}

/// Amplitudes from a direct solve of the four continuity conditions
/// (value and derivative, 1-part and j-part) at `z* = d*`.
pub fn continuity_linear_solve(
    config: &ScatteringConfig,
    mode: EvanescentMode,
) -> Result<AmplitudeSet> {
    let kin = derive_kinematics(config)?;
    let d = config.potential.d_star;
    let i = Complex64::i();
    let j = Quaternion::J;
    let one = Quaternion::ONE;

    let incident = Basis::exponential(one, i * kin.p_z_star, d);
    let columns = [
        // R
        Basis::exponential(one, -i * kin.p_z_star, d),
        // R̃
        Basis::exponential(j, Complex64::from(kin.kappa(mode)), d),
        // T
        Basis::exponential(one + j * Quaternion::from(kin.beta), i * kin.q_z, d),
        // T̃
        Basis::exponential(Quaternion::from(kin.alpha) + j, i * kin.q_tilde_z, d),
    ];
    // Region-II columns enter with a minus sign: Ψ_I - Ψ_II = 0.
    let sign = [1.0, 1.0, -1.0, -1.0];

    let zero = Complex64::new(0.0, 0.0);
    let mut a = [[zero; 4]; 4];
    for (col, (basis, s)) in columns.iter().zip(sign).enumerate() {
        let v = basis.value.split();
        let dv = basis.dz.split();
        a[0][col] = v.first * s;
        a[1][col] = v.second * s;
        a[2][col] = dv.first * s;
        a[3][col] = dv.second * s;
    }
    let v = incident.value.split();
    let dv = incident.dz.split();
    let b = [-v.first, -v.second, -dv.first, -dv.second];

    Ok(AmplitudeSet::from_array(gauss_solve(a, b)?))
}

/// The 10×10×10×8 grid of `(V1/E, |V_q|/E, θ, arg(V2 + i V3))` at `E = 1`,
/// `d* = 0`, used for oracle-equivalence sweeps.
pub fn oracle_grid() -> Vec<ScatteringConfig> {
    let mut out = Vec::with_capacity(8000);
    for a in 0..10 {
        let v1 = -0.5 + 0.25 * a as f64;
        for b in 0..10 {
            let vq = 0.095 * b as f64;
            for t in 0..10 {
                let theta = 1.55 * t as f64 / 10.0;
                for ph in 0..8 {
                    let phase = TAU * ph as f64 / 8.0;
                    let pot = StepPotential::new(v1, vq * phase.cos(), vq * phase.sin(), 0.0);
                    out.push(
                        ScatteringConfig::new(1.0, theta, pot)
                            .expect("grid lies in the valid domain"),
                    );
                }
            }
        }
    }
    out
}

/// Finite-difference residual at one point (or the worst of several).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// Quaternion norm of the residual.
    pub max_abs_residual: f64,
    /// Modulus of the residual's 1-part.
    pub one_sector: f64,
    /// Modulus of the residual's j-part.
    pub j_sector: f64,
    pub grid_spacing: f64,
    pub location_of_max: (f64, f64),
    pub mode: Option<EvanescentMode>,
}

/// Step `h = λ_min / 200` with `λ_min = 2π / max(p, |Q|, |Q̃|)`.
pub fn suggested_step(kin: &Kinematics) -> f64 {
    let k_max = kin.p.max(kin.q_z.norm()).max(kin.q_tilde_z.norm());
    2.0 * PI / k_max / 200.0
}

/// Residual of the quaternionic Schrödinger equation for `field` at `point`,
/// using the 5-point Laplacian with spacing `h`.
///
/// The potential is zero for `z* < d*` and `h·V` beyond; the stencil must stay
/// at least `3h` away from the interface.
pub fn pde_residual<F>(
    field: F,
    point: (f64, f64),
    h: f64,
    config: &ScatteringConfig,
    mode: Option<EvanescentMode>,
) -> Result<ResidualReport>
where
    F: Fn((f64, f64)) -> Quaternion,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(h));
    }
    let (y, z) = point;
    let d = config.potential.d_star;
    if (z - d).abs() < 3.0 * h {
        return Err(Error::StencilViolation {
            z_star: z,
            h,
            d_star: d,
        });
    }
    let hv = if z < d {
        Quaternion::ZERO
    } else {
        config.potential.as_quaternion()
    };

    let centre = field(point);
    let neighbours = field((y + h, z)) + field((y - h, z)) + field((y, z + h)) + field((y, z - h));
    let laplacian = (neighbours - centre * 4.0) * (1.0 / (h * h));

    let i = Quaternion::I;
    let lhs = -(i * centre * i) * config.energy;
    let residual = lhs + laplacian + i * hv * centre;
    let split = residual.split();
    Ok(ResidualReport {
        max_abs_residual: residual.norm(),
        one_sector: split.first.norm(),
        j_sector: split.second.norm(),
        grid_spacing: h,
        location_of_max: point,
        mode,
    })
}

/// Worst [`pde_residual`] over `points`.
pub fn pde_residual_over<F>(
    field: F,
    points: &[(f64, f64)],
    h: f64,
    config: &ScatteringConfig,
    mode: Option<EvanescentMode>,
) -> Result<ResidualReport>
where
    F: Fn((f64, f64)) -> Quaternion,
{
    let mut worst: Option<ResidualReport> = None;
    for &pt in points {
        let r = pde_residual(&field, pt, h, config, mode)?;
        if worst.is_none_or(|w| r.max_abs_residual > w.max_abs_residual) {
            worst = Some(r);
        }
    }
    worst.ok_or_else(|| Error::Domain("no sample points".into()))
}

/// Residuals at `h` and `h/2` and the observed orders `log2(r_h / r_{h/2})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceStudy {
    pub coarse: ResidualReport,
    pub fine: ResidualReport,
    pub order: f64,
    pub one_sector_order: f64,
    pub j_sector_order: f64,
}

pub fn pde_convergence<F>(
    field: F,
    point: (f64, f64),
    h: f64,
    config: &ScatteringConfig,
    mode: Option<EvanescentMode>,
) -> Result<ConvergenceStudy>
where
    F: Fn((f64, f64)) -> Quaternion,
{
    let coarse = pde_residual(&field, point, h, config, mode)?;
    let fine = pde_residual(&field, point, h / 2.0, config, mode)?;
    let order = |a: f64, b: f64| (a / b).log2();
    Ok(ConvergenceStudy {
        order: order(coarse.max_abs_residual, fine.max_abs_residual),
        one_sector_order: order(coarse.one_sector, fine.one_sector),
        j_sector_order: order(coarse.j_sector, fine.j_sector),
        coarse,
        fine,
    })
}

/// Largest violation of the two momentum relations
/// `p_y² + Q² = sqrt(E² - |V_q|²) - V1` and `p_y² + Q̃² = -(sqrt(E² - |V_q|²) + V1)`.
pub fn dispersion_residual(kin: &Kinematics, config: &ScatteringConfig) -> f64 {
    let pot = &config.potential;
    let e = config.energy;
    let root = (e * e - pot.v2 * pot.v2 - pot.v3 * pot.v3).sqrt();
    let py_sq = Complex64::from(kin.p_y_star * kin.p_y_star);
    let propagating = (py_sq + kin.q_z * kin.q_z - (root - pot.v1)).norm();
    let evanescent = (py_sq + kin.q_tilde_z * kin.q_tilde_z + (root + pot.v1)).norm();
    propagating.max(evanescent)
}

/// `sin⁴θ_C(0, x) - sin⁴θ_C(x, 0)` next to the two candidate closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityProbe {
    pub x: f64,
    /// Direct evaluation from the critical-angle formula.
    pub direct: f64,
    /// `2x(1 - x)`.
    pub derived_rhs: f64,
    /// `x(2 - x)` as printed in the literature.
    pub paper_rhs: f64,
}

impl IdentityProbe {
    pub fn derived_residual(&self) -> f64 {
        (self.direct - self.derived_rhs).abs()
    }

    pub fn paper_residual(&self) -> f64 {
        (self.direct - self.paper_rhs).abs()
    }
}

pub fn critical_identity_probe(x: f64) -> Result<IdentityProbe> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "identity probe needs 0 <= x < 1, got {x}"
        )));
    }
    let sin4 = |a: f64, b: f64| -> Result<f64> {
        let theta = critical_angle(a, b)?
            .angle()
            .ok_or_else(|| Error::Domain(format!("no critical angle at ({a}, {b})")))?;
        Ok(theta.sin().powi(4))
    };
    Ok(IdentityProbe {
        x,
        direct: sin4(0.0, x)? - sin4(x, 0.0)?,
        derived_rhs: 2.0 * x * (1.0 - x),
        paper_rhs: x * (2.0 - x),
    })
}
