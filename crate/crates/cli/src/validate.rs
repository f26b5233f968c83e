//! Invariant groups run by `pulseforge validate`.

use std::f64::consts::{PI, SQRT_2};

use pulseforge::analysis::{q_sensitivity, Q_SENSITIVITY_STEP};
use pulseforge::composite::{closed_form_populations, detuning_sequence_population, single_pulse_ck};
use pulseforge::majorana::lift;
use pulseforge::propagate::{propagate_constant_three_level, propagate_numeric_three_level};
use pulseforge::pulses::{invert_sta, StaAngles, DEFAULT_STA_GRID};
use pulseforge::{
    cayley_klein_of, compose, make_case1, make_case2, propagate_numeric, unitarity_defect, Assignment, Case1Kind,
    Case2Kind, ComplexMat, Envelope, ErrorModel, IntegratorConfig, OrderPolicy, PhasePolicy, Pulse, Result,
    SequenceSpec, Window,
};

pub const CASE1_KINDS: [Case1Kind; 6] = [
    Case1Kind::Pi,
    Case1Kind::ChirpedGaussian,
    Case1Kind::AllenEberly,
    Case1Kind::Sta { n: 0.5 },
    Case1Kind::FlatPi,
    Case1Kind::ResonantGaussian,
];

pub const STIRAP_KINDS: [Case2Kind; 4] =
    [Case2Kind::StirapGaussian, Case2Kind::StirapSech, Case2Kind::StirapSin, Case2Kind::StirapSin2];

#[derive(Debug, Clone, PartialEq)]
pub struct GroupOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl GroupOutcome {
    fn bound(name: &'static str, worst: Result<f64>, limit: f64) -> Self {
        match worst {
            Ok(w) => Self { name, passed: w <= limit, detail: format!("max deviation {w:.3e} (limit {limit:.0e})") },
            Err(e) => Self { name, passed: false, detail: e.to_string() },
        }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub fn run_all(cfg: &IntegratorConfig<f64>) -> Vec<GroupOutcome> {
    vec![
        GroupOutcome::bound("unitarity", unitarity(cfg), cfg.unitarity_tolerance),
        GroupOutcome::bound("oracle-equivalence", oracle_equivalence(cfg), 1e-6),
        GroupOutcome::bound("identities", identities(cfg), 1e-7),
        GroupOutcome::bound("expansions", expansions(), 5e-3),
        GroupOutcome::bound("sta-phase", sta_phase(cfg), 1e-6),
        q_s_group(cfg),
    ]
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

/// Constant flat π pulse with untagged envelopes, so it is integrated
/// numerically rather than through the closed form.
pub fn numeric_flat_pi() -> Pulse<f64> {
    Pulse::case1(Window::new(0.0, 1.0).expect("unit window"), Envelope::new(|_| SQRT_2 * PI), Envelope::new(|_| 0.0))
}

pub fn numeric_cds() -> Pulse<f64> {
    let o0 = SQRT_2 * PI;
    Pulse::case2(Window::new(0.0, 1.0).expect("unit window"), Envelope::new(move |_| o0), Envelope::new(move |_| o0))
}

fn unitarity(cfg: &IntegratorConfig<f64>) -> Result<f64> {
    let mut checks = Vec::new();
    for kind in CASE1_KINDS {
        let p = make_case1::<f64>(kind)?;
        for e in [ErrorModel::none(), ErrorModel::RabiGlobal(0.2), ErrorModel::DetuningStatic(-0.3)] {
            checks.push(propagate_numeric(&p, Some(&e), cfg).map(|u| unitarity_defect(&u)));
            checks.push(propagate_numeric_three_level(&p, Some(&e), cfg).map(|u| unitarity_defect(&u)));
        }
    }
    for kind in Case2Kind::ALL {
        let p = make_case2::<f64>(kind)?;
        for e in [ErrorModel::none(), ErrorModel::RabiArm { eta: 0.2, assignment: Assignment::FixedP }] {
            checks.push(propagate_numeric(&p, Some(&e), cfg).map(|u| unitarity_defect(&u)));
        }
    }
    max_of(checks)
}

fn oracle_equivalence(cfg: &IntegratorConfig<f64>) -> Result<f64> {
    let mut checks = Vec::new();
    let flat = numeric_flat_pi();
    let closed = make_case1::<f64>(Case1Kind::FlatPi)?;
    for delta in [-0.7, 0.3, 1.1] {
        let e = ErrorModel::DetuningStatic(delta);
        let ck = single_pulse_ck(&closed, &e, cfg)?;
        for n in [4, 5] {
            for phase in [PhasePolicy::Same, PhasePolicy::Alternating] {
                let spec = SequenceSpec::new(n, phase, OrderPolicy::Fixed)?;
                let num = compose(&flat, &spec, &e, cfg)?.populations_from_1;
                let cf = closed_form_populations(&ck, n, phase);
                checks.push(Ok((0..3).map(|k| (num[k] - cf[k]).abs()).fold(0.0, f64::max)));
            }
        }
    }
    let chirp = make_case1::<f64>(Case1Kind::ChirpedGaussian)?;
    let e = ErrorModel::RabiGlobal(0.1);
    let ck = cayley_klein_of(&propagate_numeric(&chirp, Some(&e), cfg)?)?;
    let full = propagate_numeric_three_level(&chirp, Some(&e), cfg)?;
    checks.push(Ok(lift(&ck)?.dist_max(&full)));
    let cds = propagate_numeric(&numeric_cds(), None, cfg)?;
    checks.push(Ok(cds.dist_max(&propagate_constant_three_level(SQRT_2 * PI, SQRT_2 * PI, 1.0))));
    max_of(checks)
}

fn identity_distance(u: &ComplexMat<f64>) -> f64 {
    u.dist_max(&ComplexMat::identity(u.dim()))
}

fn identities(cfg: &IntegratorConfig<f64>) -> Result<f64> {
    let mut checks = Vec::new();
    for kind in CASE1_KINDS {
        let p = make_case1::<f64>(kind)?;
        for lambda in [-0.5, -0.15, 0.25, 0.5] {
            let r = compose(&p, &SequenceSpec::alternating(2)?, &ErrorModel::RabiGlobal(lambda), cfg)?;
            checks.push(Ok(identity_distance(&r.total)));
        }
    }
    let cds = make_case2::<f64>(Case2Kind::Cds)?;
    for assignment in [Assignment::FixedP, Assignment::FixedS] {
        for eta in [-0.5, -0.1, 0.3, 0.5] {
            let r = compose(&cds, &SequenceSpec::alternating(2)?, &ErrorModel::RabiArm { eta, assignment }, cfg)?;
            checks.push(Ok(identity_distance(&r.total)));
        }
    }
    let spec = SequenceSpec::new(2, PhasePolicy::Alternating, OrderPolicy::AlternateTimeReversal)?;
    for kind in STIRAP_KINDS {
        let r = compose(&make_case2::<f64>(kind)?, &spec, &ErrorModel::none(), cfg)?;
        checks.push(Ok(identity_distance(&r.total)));
    }
    max_of(checks)
}

fn expansions() -> Result<f64> {
    let p = make_case1::<f64>(Case1Kind::FlatPi)?;
    let cfg = IntegratorConfig::default();
    let mut worst = 0.0f64;
    for delta in [-0.05, -0.03, -0.01, 0.01, 0.03, 0.05] {
        let ck = single_pulse_ck(&p, &ErrorModel::DetuningStatic(delta), &cfg)?;
        for n in 1..=9usize {
            let exact = detuning_sequence_population(&ck, n, PhasePolicy::Alternating);
            let approx = 1.0 - 2.0 * (n * n) as f64 * ck.a_i() * ck.a_i();
            worst = worst.max((exact - approx).abs());
        }
    }
    Ok(worst)
}

fn sta_phase(cfg: &IntegratorConfig<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    // LR phase rate integrated by the midpoint rule against the Ansatz
    for n in [0.0, 0.5, 1.0] {
        let s = StaAngles::new(n);
        let steps = 20_000;
        let h = 1.0 / steps as f64;
        let mut eps = 0.0;
        for k in 0..steps {
            let t = (k as f64 + 0.5) * h;
            let g = s.gamma(t);
            eps += h * s.theta_dot() * g.cos() / (2.0 * s.theta(t).sin() * g.sin());
        }
        worst = worst.max((eps - s.epsilon_plus(1.0)).abs());
    }
    // the propagated state follows the invariant eigenstate, phase included
    let s = StaAngles::new(0.5);
    let p = invert_sta::<f64>(0.5, DEFAULT_STA_GRID)?;
    let g0 = s.gamma(0.0);
    for tf in [0.3, 0.7] {
        let u = propagate_numeric(&p.with_window(Window::new(0.0, tf)?), None, cfg)?;
        let (th, g, e) = (s.theta(tf), s.gamma(tf), s.epsilon_plus(tf));
        let want0 = num_complex::Complex64::from_polar((th / 2.0).cos(), e + (g0 - g) / 2.0);
        let want1 = num_complex::Complex64::from_polar((th / 2.0).sin(), e + (g0 + g) / 2.0);
        worst = worst.max((u[(0, 0)] - want0).norm()).max((u[(1, 0)] - want1).norm());
    }
    Ok(worst)
}

fn q_s_group(cfg: &IntegratorConfig<f64>) -> GroupOutcome {
    let run = || -> Result<(f64, f64)> {
        let sta = q_sensitivity(&make_case1(Case1Kind::Sta { n: 0.5 })?, Q_SENSITIVITY_STEP, cfg)?;
        let pi = q_sensitivity(&make_case1(Case1Kind::Pi)?, Q_SENSITIVITY_STEP, cfg)?;
        Ok((sta, pi))
    };
    match run() {
        Ok((sta, pi)) => GroupOutcome {
            name: "q_s",
            passed: (sta - 1.91).abs() <= 0.05 && (pi - PI * PI / 4.0).abs() <= 1e-4,
            detail: format!("sta(n=0.5) {sta:.4} (1.91 +/- 0.05), pi {pi:.6} (pi^2/4 = {:.6})", PI * PI / 4.0),
        },
        Err(e) => GroupOutcome { name: "q_s", passed: false, detail: e.to_string() },
    }
}
