//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p quatsnell --test acceptance`.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quatsnell::oracle::oracle_grid;
use quatsnell::sweep::{Axis, Quantity, SweepRange, SweepSpec};
use quatsnell::verify::{self, random_configs, Status};
use quatsnell::{
    critical_angle, derive_kinematics, index_complex, index_perturbative, index_quaternionic,
    reflection_complex, reflection_factors, reflection_quaternionic, refraction_angle,
    EvanescentMode, Regime, ScatteringConfig, StepPotential,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn config(e: f64, theta: f64, pot: StepPotential) -> ScatteringConfig {
    ScatteringConfig::new(e, theta, pot).expect("valid configuration")
}

fn refraction() -> Outcome {
    let complex = config(3.0, FRAC_PI_4, StepPotential::complex(1.0));
    let n = index_complex(1.0, 3.0)
        .map_err(|e| e.to_string())?
        .value()
        .unwrap();
    let phi = refraction_angle(complex.theta, n).ok_or("no complex refraction angle")?;
    let phi_err = (phi - PI / 3.0).abs();

    let n_q = index_quaternionic(&StepPotential::quaternionic(1.0, 0.0), 3.0)
        .map_err(|e| e.to_string())?
        .value()
        .unwrap();
    let big_phi = refraction_angle(FRAC_PI_4, n_q).ok_or("no quaternionic refraction angle")?;
    let closed = ((3.0 / (2.0 * 2f64.sqrt())).sqrt() / 2f64.sqrt()).asin();
    let ratio = PI / big_phi;
    check(
        phi_err < 1e-12 && (big_phi - closed).abs() < 1e-12 && (3.84..=3.86).contains(&ratio),
        format!("|phi - pi/3| = {phi_err:.1e}, Phi = {big_phi:.9} (closed form {closed:.9}), pi/Phi = {ratio:.4}"),
    )
}

fn critical_angles() -> Outcome {
    let c = critical_angle(1.0 / 3.0, 0.0)
        .unwrap()
        .angle()
        .ok_or("no complex angle")?;
    let q = critical_angle(0.0, 1.0 / 3.0)
        .unwrap()
        .angle()
        .ok_or("no quaternionic angle")?;
    let c_closed = (2.0f64 / 3.0).sqrt().asin();
    let q_closed = (2.0 * 2f64.sqrt() / 3.0).sqrt().asin();
    let (rc, rq) = (PI / c, PI / q);
    check(
        (c - c_closed).abs() < 1e-12
            && (q - q_closed).abs() < 1e-12
            && (3.28..=3.30).contains(&rc)
            && (2.35..=2.37).contains(&rq),
        format!("pi/theta_c = {rc:.4}, pi/theta_C = {rq:.4}"),
    )
}

fn complex_limit() -> Outcome {
    let mut worst = 0.0f64;
    let mut samples = 0;
    for a in [-0.5, 0.0, 1.0 / 3.0, 0.8, 1.5] {
        for eps in [1e-6, 1e-7, 0.0] {
            for k in 0..20 {
                let theta = 1.5 * k as f64 / 19.0;
                let e = 2.0;
                let reference =
                    reflection_complex(&config(e, theta, StepPotential::complex(a * e)))
                        .map_err(|err| err.to_string())?;
                for mode in EvanescentMode::ALL {
                    let pot = StepPotential::new(a * e, 0.6 * eps * e, 0.8 * eps * e, 0.0);
                    let r = reflection_quaternionic(&config(e, theta, pot), mode)
                        .map_err(|err| err.to_string())?;
                    worst = worst.max((r - reference).norm());
                    samples += 1;
                }
            }
        }
    }
    check(
        worst < 1e-10,
        format!("max |R_quat - r_complex| = {worst:.2e} over {samples} samples"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut configs = oracle_grid();
    configs.extend(random_configs(2000, 0x00ac_ce97));
    let mut parts = Vec::new();
    let mut ok = configs.len() >= 8000;
    for mode in EvanescentMode::ALL {
        let (dev, _) = verify::oracle_max_deviation(&configs, mode);
        ok &= dev <= 1e-10;
        parts.push(format!("{mode}: {dev:.2e}"));
    }
    check(
        ok,
        format!(
            "{} configs, max deviation {}",
            configs.len(),
            parts.join(", ")
        ),
    )
}

fn unimodularity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dd17);
    let (mut tir, mut tunneling) = (0usize, 0usize);
    let (mut worst_r, mut worst_conj) = (0.0f64, 0.0f64);
    while tir < 1000 || tunneling < 1000 {
        let e = rng.gen_range(0.2..5.0);
        let theta = rng.gen_range(0.0..1.55);
        let b = rng.gen_range(0.0..0.95);
        let a = rng.gen_range(-0.5..3.0);
        let phase = rng.gen_range(0.0..TAU);
        let d = rng.gen_range(-1.0..1.0);
        let pot = StepPotential::new(a * e, b * e * phase.cos(), b * e * phase.sin(), d);
        let cfg = config(e, theta, pot);
        let regime = derive_kinematics(&cfg)
            .map_err(|err| err.to_string())?
            .regime;
        match regime {
            Regime::Propagating => continue,
            Regime::TotalInternalReflection => tir += 1,
            Regime::Tunneling => tunneling += 1,
        }
        for mode in EvanescentMode::ALL {
            let r = reflection_quaternionic(&cfg, mode).map_err(|err| err.to_string())?;
            worst_r = worst_r.max((r.norm() - 1.0).abs());
        }
        if regime == Regime::Tunneling {
            let f = reflection_factors(&cfg, EvanescentMode::PaperLiteral)
                .map_err(|err| err.to_string())?;
            let c = f.a_plus.conj();
            let rel = f.a_plus.norm().max(1.0);
            worst_conj = worst_conj
                .max((f.a_minus.re - c.re).abs() / rel)
                .max((f.a_minus.im - c.im).abs() / rel);
        }
    }
    check(
        worst_r < 1e-12 && worst_conj < 1e-12,
        format!(
            "{tir} TIR + {tunneling} tunneling configs, max ||R| - 1| = {worst_r:.2e}, max |A- - conj(A+)| = {worst_conj:.2e}"
        ),
    )
}

fn pde_residuals() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut plateau_seen = false;
    for mode in EvanescentMode::ALL {
        for o in verify::pde(mode) {
            ok &= o.status != Status::Fail;
            if o.status == Status::Documented {
                plateau_seen = o.value > verify::PLATEAU_FLOOR;
                ok &= plateau_seen && mode == EvanescentMode::PaperLiteral;
            }
            lines.push(format!("{} {} = {:.4}", o.status, o.name, o.value));
        }
    }
    ok &= plateau_seen;
    check(ok, lines.join("; "))
}

fn identity_probe() -> Outcome {
    let outcomes = verify::identity();
    let derived_ok = outcomes
        .iter()
        .filter(|o| o.status != Status::Documented)
        .all(|o| o.status == Status::Pass && o.value < 1e-12);
    let printed: Vec<String> = outcomes
        .iter()
        .filter(|o| o.status == Status::Documented)
        .map(|o| format!("{:.3}", o.value))
        .collect();
    check(
        derived_ok && outcomes.len() == 18,
        format!(
            "2x(1-x) holds to 1e-12 at x = 0.1..0.9; printed x(2-x) residuals [{}]",
            printed.join(", ")
        ),
    )
}

fn perturbative_index() -> Outcome {
    let a: f64 = 1.0 / 3.0;
    let n = (1.0 - a).sqrt();
    let err = |eps: f64| {
        let exact = ((1.0 - eps * eps).sqrt() - a).sqrt();
        (exact - index_perturbative(n, eps)).abs()
    };
    let errs = [err(0.2), err(0.1), err(0.05)];
    let ratios = [errs[0] / errs[1], errs[1] / errs[2]];
    check(
        ratios.iter().all(|r| (14.0..=18.0).contains(r)),
        format!("error ratios {:.3}, {:.3}", ratios[0], ratios[1]),
    )
}

fn diffusion_ordering() -> Outcome {
    let mut angle_violations = 0;
    for k in 1..1000 {
        let x = k as f64 / 1000.0;
        let q = critical_angle(0.0, x).unwrap().angle();
        let c = critical_angle(x, 0.0).unwrap().angle();
        if !matches!((q, c), (Some(q), Some(c)) if q > c) {
            angle_violations += 1;
        }
    }

    let mut compared = 0;
    let mut series_violations = 0;
    let mut sweeps = Vec::new();
    for deg in [0.0f64, 15.0, 30.0, 45.0, 60.0, 75.0] {
        let mut s = SweepSpec::new(
            Quantity::ReflectionModulus,
            Axis::PotentialRatio,
            SweepRange::new(0.0, 1.0, 200),
        );
        s.theta = deg.to_radians();
        sweeps.push(s);
    }
    for ratio in [0.1, 0.25, 1.0 / 3.0, 0.5, 0.75, 0.9] {
        let mut s = SweepSpec::new(
            Quantity::ReflectionModulus,
            Axis::IncidenceAngle,
            SweepRange::new(0.0, PI / 2.0, 200),
        );
        s.ratio = ratio;
        sweeps.push(s);
    }
    for base in sweeps {
        for mode in EvanescentMode::ALL {
            let spec = SweepSpec { mode, ..base };
            let table = spec.evaluate().map_err(|e| e.to_string())?;
            let c_abs = table.numbers("complex_abs_r").unwrap();
            let q_abs = table.numbers("quaternionic_abs_r").unwrap();
            let c_reg = table.texts("complex_regime").unwrap();
            let q_reg = table.texts("quaternionic_regime").unwrap();
            for i in 0..table.rows.len() {
                let propagating = Some(Regime::Propagating.as_str());
                if c_reg[i] == propagating && q_reg[i] == propagating {
                    compared += 1;
                    if q_abs[i].unwrap() > c_abs[i].unwrap() + 1e-12 {
                        series_violations += 1;
                    }
                }
            }
        }
    }
    check(
        angle_violations == 0 && series_violations == 0 && compared > 0,
        format!(
            "theta_C(0,x) > theta_C(x,0) at 999 points ({angle_violations} violations); |R|_q <= |R|_c at {compared} propagating samples ({series_violations} violations)"
        ),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_quatsnell");
    let commands: [&[&str]; 5] = [
        &[
            "snell",
            "--theta-deg",
            "45",
            "--e",
            "3",
            "--v2",
            "1",
            "--format",
            "json",
        ],
        &[
            "critical",
            "--points",
            "100",
            "--perturb-a",
            "0.1",
            "--perturb-eps",
            "0.5",
        ],
        &[
            "reflect",
            "--points",
            "100",
            "--mode",
            "dispersion-consistent",
        ],
        &[
            "reflect",
            "--axis",
            "incidence-angle",
            "--points",
            "100",
            "--format",
            "json",
        ],
        &[
            "wavefield",
            "--theta-deg",
            "60",
            "--v1",
            "0.4",
            "--v2",
            "0.3",
            "--points",
            "15",
        ],
    ];
    for args in commands {
        let outputs: Vec<_> = (0..3)
            .map(|_| {
                Command::new(bin)
                    .args(args)
                    .output()
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        if !outputs[0].status.success() {
            return Err(format!("{args:?} exited with {}", outputs[0].status));
        }
        if outputs.iter().any(|o| o.stdout != outputs[0].stdout) {
            return Err(format!("{args:?} output differs between runs"));
        }
    }
    Ok(format!(
        "{} commands, 3 runs each, byte-identical",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("refraction angles", refraction),
        ("critical angles", critical_angles),
        ("complex limit", complex_limit),
        ("oracle equivalence", oracle_equivalence),
        ("unimodularity", unimodularity),
        ("pde residual orders", pde_residuals),
        ("critical-angle identity", identity_probe),
        ("perturbative index", perturbative_index),
        ("diffusion-zone ordering", diffusion_ordering),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {:>2}. {name}: {detail}", k + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
