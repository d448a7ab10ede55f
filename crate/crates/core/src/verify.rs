//! Verification suites behind `quatsnell verify`.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::kinematics::{derive_kinematics, ScatteringConfig, StepPotential};
use crate::oracle::{
    continuity_linear_solve, critical_identity_probe, dispersion_residual, oracle_grid,
    pde_convergence, pde_residual, suggested_step,
};
use crate::quaternion::Quaternion;
use crate::scattering::{solve_amplitudes, EvanescentMode, WaveField};

const SEED: u64 = 0x005e_ed0f_5e11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    Algebra,
    Dispersion,
    Oracle,
    Pde,
    Identity,
    All,
}

impl Scope {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scope::Algebra => "algebra",
            Scope::Dispersion => "dispersion",
            Scope::Oracle => "oracle",
            Scope::Pde => "pde",
            Scope::Identity => "identity",
            Scope::All => "all",
        }
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "algebra" => Scope::Algebra,
            "dispersion" => Scope::Dispersion,
            "oracle" => Scope::Oracle,
            "pde" => Scope::Pde,
            "identity" => Scope::Identity,
            "all" => Scope::All,
            other => return Err(format!("unknown scope '{other}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A known discrepancy with the published formulas, reported but not failed.
    Documented,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Documented => "DOCUMENTED",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub scope: Scope,
    pub name: String,
    pub status: Status,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl CheckOutcome {
    fn at_most(scope: Scope, name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self {
            scope,
            name: name.to_string(),
            status: if value <= threshold {
                Status::Pass
            } else {
                Status::Fail
            },
            value,
            threshold,
            detail,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            let _ = writeln!(
                s,
                "{:<10} {:<10} {:<44} value={:.3e} threshold={:.3e} {}",
                o.status.to_string(),
                o.scope.as_str(),
                o.name,
                o.value,
                o.threshold,
                o.detail
            );
        }
        s
    }
}

/// Runs the selected suites; `mode` selects the region-I convention for the
/// PDE suite (the oracle suite always covers both).
pub fn run(scope: Scope, mode: EvanescentMode) -> Report {
    let mut outcomes = Vec::new();
    let all = scope == Scope::All;
    if all || scope == Scope::Algebra {
        outcomes.extend(algebra());
    }
    if all || scope == Scope::Dispersion {
        outcomes.extend(dispersion());
    }
    if all || scope == Scope::Oracle {
        outcomes.extend(oracle());
    }
    if all || scope == Scope::Pde {
        outcomes.extend(pde(mode));
    }
    if all || scope == Scope::Identity {
        outcomes.extend(identity());
    }
    Report { outcomes }
}

fn random_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

pub fn algebra() -> Vec<CheckOutcome> {
    let eps = f64::EPSILON;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut norm_ulps, mut assoc_ulps, mut inv_ulps) = (0.0f64, 0.0f64, 0.0f64);
    let (mut conj_err, mut split_err, mut commute_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (a, b, c) = (
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
            random_quaternion(&mut rng),
        );
        let scale = a.norm() * b.norm();
        norm_ulps = norm_ulps.max(((a * b).norm() - scale).abs() / (eps * scale));

        let scale3 = scale * c.norm();
        assoc_ulps = assoc_ulps.max(((a * b) * c).max_abs_diff(a * (b * c)) / (eps * scale3));

        if let Ok(inv) = a.inverse() {
            inv_ulps = inv_ulps.max((a * inv).max_abs_diff(Quaternion::ONE) / eps);
        }
        conj_err = conj_err.max(
            (a * b)
                .conjugate()
                .max_abs_diff(b.conjugate() * a.conjugate()),
        );
        split_err = split_err.max(Quaternion::join(a.split()).max_abs_diff(a));

        let z = Complex64::new(a.w, a.x);
        let lhs = Quaternion::J * Quaternion::from(z);
        let rhs = Quaternion::from(z.conj()) * Quaternion::J;
        commute_err = commute_err.max(lhs.max_abs_diff(rhs));
    }
    let s = Scope::Algebra;
    vec![
        CheckOutcome::at_most(
            s,
            "norm multiplicativity (ulp)",
            norm_ulps,
            4.0,
            "1000 pairs".into(),
        ),
        CheckOutcome::at_most(
            s,
            "associativity (ulp of |abc|)",
            assoc_ulps,
            8.0,
            "1000 triples".into(),
        ),
        CheckOutcome::at_most(
            s,
            "q * inverse(q) = 1 (ulp)",
            inv_ulps,
            8.0,
            "1000 samples".into(),
        ),
        CheckOutcome::at_most(
            s,
            "conj(ab) = conj(b) conj(a)",
            conj_err,
            8.0 * eps * 16.0,
            "1000 pairs".into(),
        ),
        CheckOutcome::at_most(s, "join(split(q)) = q", split_err, 0.0, "bitwise".into()),
        CheckOutcome::at_most(s, "j c = conj(c) j", commute_err, 0.0, "bitwise".into()),
    ]
}

/// Deterministic random configurations in the domain where the evanescent
/// branch `Q̃` is purely imaginary.
pub fn random_configs(count: usize, seed: u64) -> Vec<ScatteringConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let energy = rng.gen_range(0.2..5.0);
            let theta = rng.gen_range(0.0..1.5);
            let v1 = energy * rng.gen_range(-0.25..2.5);
            let vq = energy * rng.gen_range(0.0..0.95);
            let phase = rng.gen_range(0.0..TAU);
            let d_star = rng.gen_range(-1.0..1.0);
            let pot = StepPotential::new(v1, vq * phase.cos(), vq * phase.sin(), d_star);
            ScatteringConfig::new(energy, theta, pot).expect("sampled inside the valid domain")
        })
        .collect()
}

pub fn dispersion() -> Vec<CheckOutcome> {
    let configs = random_configs(1000, SEED);
    let mut worst = 0.0f64;
    let mut worst_ab = 0.0f64;
    let mut branch_violations = 0usize;
    for cfg in &configs {
        let kin = derive_kinematics(cfg).expect("valid config");
        worst = worst.max(dispersion_residual(&kin, cfg));
        let vq = cfg.potential.quaternionic_modulus();
        let e = cfg.energy;
        let expected = vq * vq / (e + (e * e - vq * vq).sqrt()).powi(2);
        let ab = kin.alpha * kin.beta;
        worst_ab = worst_ab.max((ab - expected).norm());
        if kin.q_z.im < 0.0 || kin.q_tilde_z.im <= 0.0 || kin.q_tilde_z.re != 0.0 {
            branch_violations += 1;
        }
    }
    let s = Scope::Dispersion;
    vec![
        CheckOutcome::at_most(
            s,
            "dispersion residual",
            worst,
            1e-12,
            "1000 random configs".into(),
        ),
        CheckOutcome::at_most(
            s,
            "alpha*beta = |V_q|^2/(E+S)^2",
            worst_ab,
            1e-12,
            "1000 random configs".into(),
        ),
        CheckOutcome::at_most(
            s,
            "decaying branches (Im Q >= 0, Q~ imaginary)",
            branch_violations as f64,
            0.0,
            "violation count".into(),
        ),
    ]
}

/// Largest amplitude difference between the closed-form chain and the
/// continuity linear solve over `configs`, with the worst configuration.
pub fn oracle_max_deviation(
    configs: &[ScatteringConfig],
    mode: EvanescentMode,
) -> (f64, Option<ScatteringConfig>) {
    configs
        .par_iter()
        .map(|cfg| {
            let dev = match (
                solve_amplitudes(cfg, mode),
                continuity_linear_solve(cfg, mode),
            ) {
                (Ok(a), Ok(b)) => a.max_abs_diff(&b),
                _ => f64::INFINITY,
            };
            (if dev.is_nan() { f64::INFINITY } else { dev }, Some(*cfg))
        })
        .reduce(|| (0.0, None), |a, b| if b.0 > a.0 { b } else { a })
}

pub fn oracle() -> Vec<CheckOutcome> {
    let grid = oracle_grid();
    EvanescentMode::ALL
        .iter()
        .map(|&mode| {
            let (dev, worst) = oracle_max_deviation(&grid, mode);
            let detail = match worst {
                Some(c) => format!(
                    "{} configs, worst at E={} theta={:.4} V=({:.4},{:.4},{:.4})",
                    grid.len(),
                    c.energy,
                    c.theta,
                    c.potential.v1,
                    c.potential.v2,
                    c.potential.v3
                ),
                None => format!("{} configs", grid.len()),
            };
            CheckOutcome::at_most(
                Scope::Oracle,
                &format!("closed form vs linear solve [{mode}]"),
                dev,
                1e-10,
                detail,
            )
        })
        .collect()
}

/// The configuration used for the finite-difference studies.
pub fn pde_reference_config() -> ScatteringConfig {
    ScatteringConfig::new(1.0, FRAC_PI_4, StepPotential::new(0.0, 1.0 / 3.0, 0.0, 0.0))
        .expect("reference config is valid")
}

pub const PDE_REGION_I_POINT: (f64, f64) = (0.3, -0.5);
pub const PDE_REGION_II_POINT: (f64, f64) = (0.3, 0.5);
pub const ORDER_BAND: (f64, f64) = (1.9, 2.1);
pub const PLATEAU_STEP: f64 = 1e-4;
pub const PLATEAU_FLOOR: f64 = 1e-3;

fn order_outcome(name: &str, order: f64, detail: String) -> CheckOutcome {
    let ok = (ORDER_BAND.0..=ORDER_BAND.1).contains(&order);
    CheckOutcome {
        scope: Scope::Pde,
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        value: order,
        threshold: 2.0,
        detail,
    }
}

pub fn pde(mode: EvanescentMode) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let s = Scope::Pde;

    let free = ScatteringConfig::new(1.0, 0.0, StepPotential::FREE.at(100.0)).expect("valid");
    let plane = |(_, z): (f64, f64)| Quaternion::from(Complex64::new(0.0, z).exp());
    match pde_residual(plane, (0.2, 0.3), 1e-3, &free, None) {
        Ok(r) => out.push(CheckOutcome::at_most(
            s,
            "free plane wave residual at h=1e-3",
            r.max_abs_residual,
            1e-5,
            String::new(),
        )),
        Err(e) => out.push(failure(s, "free plane wave residual at h=1e-3", e)),
    }

    let cfg = pde_reference_config();
    let field = match WaveField::new(&cfg, mode) {
        Ok(f) => f,
        Err(e) => {
            out.push(failure(s, "reference field", e));
            return out;
        }
    };
    let h = suggested_step(field.kinematics());

    let region_ii = |p: (f64, f64)| field.region_ii(p).unwrap_or(Quaternion::ZERO);
    let region_i = |p: (f64, f64)| field.region_i(p).unwrap_or(Quaternion::ZERO);

    match pde_convergence(region_ii, PDE_REGION_II_POINT, h, &cfg, Some(mode)) {
        Ok(st) => out.push(order_outcome(
            &format!("region II order [{mode}]"),
            st.order,
            format!("h={h:.4e} r(h)={:.3e}", st.coarse.max_abs_residual),
        )),
        Err(e) => out.push(failure(s, "region II order", e)),
    }

    match pde_convergence(region_i, PDE_REGION_I_POINT, h, &cfg, Some(mode)) {
        Ok(st) => {
            out.push(order_outcome(
                &format!("region I 1-sector order [{mode}]"),
                st.one_sector_order,
                format!("h={h:.4e} r(h)={:.3e}", st.coarse.one_sector),
            ));
            match mode {
                EvanescentMode::DispersionConsistent => out.push(order_outcome(
                    &format!("region I j-sector order [{mode}]"),
                    st.j_sector_order,
                    format!("h={h:.4e} r(h)={:.3e}", st.coarse.j_sector),
                )),
                EvanescentMode::PaperLiteral => {
                    out.push(plateau_outcome(&region_i, &cfg, mode));
                }
            }
        }
        Err(e) => out.push(failure(s, "region I order", e)),
    }
    out
}

fn plateau_outcome<F>(field: &F, cfg: &ScatteringConfig, mode: EvanescentMode) -> CheckOutcome
where
    F: Fn((f64, f64)) -> Quaternion,
{
    let name = format!("region I j-sector plateau [{mode}]");
    match pde_residual(field, PDE_REGION_I_POINT, PLATEAU_STEP, cfg, Some(mode)) {
        Ok(r) => {
            let plateau = r.j_sector > PLATEAU_FLOOR;
            CheckOutcome {
                scope: Scope::Pde,
                name,
                status: if plateau { Status::Documented } else { Status::Fail },
                value: r.j_sector,
                threshold: PLATEAU_FLOOR,
                detail: "decay constant p_z* does not solve the free j-sector equation off normal incidence"
                    .into(),
            }
        }
        Err(e) => failure(Scope::Pde, &name, e),
    }
}

fn failure(scope: Scope, name: &str, err: crate::Error) -> CheckOutcome {
    CheckOutcome {
        scope,
        name: name.to_string(),
        status: Status::Fail,
        value: f64::NAN,
        threshold: f64::NAN,
        detail: err.to_string(),
    }
}

pub fn identity() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for k in 1..=9 {
        let x = k as f64 / 10.0;
        match critical_identity_probe(x) {
            Ok(p) => {
                out.push(CheckOutcome::at_most(
                    Scope::Identity,
                    &format!("direct = 2x(1-x) at x={x:.1}"),
                    p.derived_residual(),
                    1e-12,
                    format!("direct={:.9}", p.direct),
                ));
                out.push(CheckOutcome {
                    scope: Scope::Identity,
                    name: format!("printed x(2-x) at x={x:.1}"),
                    status: Status::Documented,
                    value: p.paper_residual(),
                    threshold: 0.0,
                    detail: format!("x(2-x)={:.9} direct={:.9}", p.paper_rhs, p.direct),
                });
            }
            Err(e) => out.push(failure(Scope::Identity, "identity probe", e)),
        }
    }
    out
}
