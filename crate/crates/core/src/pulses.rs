//! Pulse families: resonant, chirped and adiabatic case1 pulses, the
//! invariant-engineered shortcut pulse, and the case2 constant and STIRAP
//! pairs. All pulses use the unit width `T = 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pulse::{Drive, Envelope, Pulse, Window};
use crate::scalar::Real;

/// Case1 (off-resonant, Majorana-reducible) pulse families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Case1Kind {
    /// Flat resonant pulse of area `∫Ω/√2 dt = π`.
    Pi,
    /// `Δ = √2·t`, `Ω = 2√2·e^{−t²}` on `[−5, 5]`.
    ChirpedGaussian,
    /// `Δ = √2·tanh t`, `Ω = √6·sech t` on `[−10, 10]`.
    AllenEberly,
    /// Invariant-based shortcut with Ansatz parameter `n`.
    Sta { n: f64 },
    /// `Δ = 0`, `Ω = √2π` on `[0, 1]`.
    FlatPi,
    /// `Δ = 0`, `Ω = √(2π)·e^{−t²}` on `[−2, 2]`.
    ResonantGaussian,
}

impl Case1Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Case1Kind::Pi => "pi",
            Case1Kind::ChirpedGaussian => "chirped-gaussian",
            Case1Kind::AllenEberly => "allen-eberly",
            Case1Kind::Sta { .. } => "sta",
            Case1Kind::FlatPi => "flat-pi",
            Case1Kind::ResonantGaussian => "resonant-gaussian",
        }
    }
}

/// Half-width of the resonant Gaussian window.
pub const RESONANT_GAUSSIAN_HALF_WIDTH: f64 = 2.0;

/// Samples used to screen the invariant-based pulse for singularities.
pub const DEFAULT_STA_GRID: usize = 4096;

pub fn make_case1<S: Real>(kind: Case1Kind) -> Result<Pulse<S>> {
    let sqrt2 = S::SQRT_2();
    let pi = S::PI();
    let pulse = match kind {
        Case1Kind::Pi | Case1Kind::FlatPi => {
            Pulse::case1(Window::new(S::zero(), S::one())?, Envelope::constant(sqrt2 * pi), Envelope::zero())
        }
        Case1Kind::ChirpedGaussian => Pulse::case1(
            Window::new(S::lit(-5.0), S::lit(5.0))?,
            Envelope::new(move |t: S| S::lit(2.0) * sqrt2 * (-t * t).exp()),
            Envelope::new(move |t: S| sqrt2 * t),
        ),
        Case1Kind::AllenEberly => Pulse::case1(
            Window::new(S::lit(-10.0), S::lit(10.0))?,
            Envelope::new(|t: S| S::lit(6.0).sqrt() / t.cosh()),
            Envelope::new(move |t: S| sqrt2 * t.tanh()),
        ),
        Case1Kind::Sta { n } => invert_sta(n, DEFAULT_STA_GRID)?,
        Case1Kind::ResonantGaussian => {
            let w = S::lit(RESONANT_GAUSSIAN_HALF_WIDTH);
            let amp = (S::lit(2.0) * pi).sqrt();
            Pulse::case1(Window::new(-w, w)?, Envelope::new(move |t: S| amp * (-t * t).exp()), Envelope::zero())
        }
    };
    Ok(pulse)
}

/// Angles of the Lewis-Riesenfeld invariant
/// `I = [[cos θ, sin θ·e^{−iγ}], [sin θ·e^{iγ}, −cos θ]]` along the
/// inverse-engineered trajectory `θ = πt`, `ε₊ = −θ − n·sin 2θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaAngles<S: Real> {
    pub n: S,
}

impl<S: Real> StaAngles<S> {
    pub fn new(n: S) -> Self {
        Self { n }
    }

    #[inline]
    pub fn theta(&self, t: S) -> S {
        S::PI() * t
    }

    #[inline]
    pub fn theta_dot(&self) -> S {
        S::PI()
    }

    /// `f(θ) = 2(1 + 2n·cos 2θ)·sin θ`, so that `cot γ = −f`.
    fn f(&self, th: S) -> S {
        S::lit(2.0) * (S::one() + S::lit(2.0) * self.n * (S::lit(2.0) * th).cos()) * th.sin()
    }

    fn f_prime(&self, th: S) -> S {
        let two = S::lit(2.0);
        two * (-S::lit(4.0) * self.n * (two * th).sin() * th.sin()
            + (S::one() + two * self.n * (two * th).cos()) * th.cos())
    }

    /// `γ = −arccot f`, on the continuous branch `arccot ∈ (0, π)`.
    pub fn gamma(&self, t: S) -> S {
        -(S::FRAC_PI_2() - self.f(self.theta(t)).atan())
    }

    /// Closed-form `dγ/dt = θ̇·f'(θ)/(1 + f²)`.
    pub fn gamma_dot(&self, t: S) -> S {
        let th = self.theta(t);
        let f = self.f(th);
        self.theta_dot() * self.f_prime(th) / (S::one() + f * f)
    }

    pub fn epsilon_plus(&self, t: S) -> S {
        let th = self.theta(t);
        -th - self.n * (S::lit(2.0) * th).sin()
    }

    /// `Ω = −√2·θ̇ / sin γ`.
    pub fn omega(&self, t: S) -> S {
        -S::SQRT_2() * self.theta_dot() / self.gamma(t).sin()
    }

    /// `Δ = −Ω·cot θ·cos γ/√2 − γ̇`; with `cot γ = −f` the first term is
    /// `−2θ̇(1 + 2n·cos 2θ)·cos θ`, regular at the endpoints.
    pub fn delta(&self, t: S) -> S {
        let th = self.theta(t);
        let two = S::lit(2.0);
        -two * self.theta_dot() * (S::one() + two * self.n * (two * th).cos()) * th.cos() - self.gamma_dot(t)
    }
}

/// Builds the shortcut pulse for Ansatz parameter `n`, screening `grid`
/// sample points for a vanishing `sin γ`.
pub fn invert_sta<S: Real>(n: f64, grid: usize) -> Result<Pulse<S>> {
    if grid < 1000 {
        return Err(Error::InvalidConfig(format!("STA grid of {grid} samples is below 1000")));
    }
    if !n.is_finite() {
        return Err(Error::SingularSta(n));
    }
    let angles = StaAngles::new(S::lit(n));
    for k in 0..=grid {
        let t = S::from_usize(k).unwrap() / S::from_usize(grid).unwrap();
        let s = angles.gamma(t).sin();
        if !(s.abs() > S::epsilon()) || !angles.omega(t).is_finite() || !angles.delta(t).is_finite() {
            return Err(Error::SingularSta(n));
        }
    }
    Ok(Pulse::case1(
        Window::new(S::zero(), S::one())?,
        Envelope::new(move |t| angles.omega(t)),
        Envelope::new(move |t| angles.delta(t)),
    ))
}

/// Case2 (one-photon resonant) pulse pairs. Peak amplitude `Ω0 = √2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case2Kind {
    /// Constant-driven scheme, `Ω_p = Ω_s = √2π` on `[0, 1]`.
    Cds,
    /// `Ω_p = Ω0·e^{−t²}`, `Ω_s = Ω0·e^{−(t−2)²}` on `[−4, 6]`.
    StirapGaussian,
    /// `Ω_p = Ω0·sech t`, `Ω_s = Ω0·sech(t−5)` on `[−8, 13]`.
    StirapSech,
    /// `Ω_p = Ω0·sin πt`, `Ω_s = Ω0·cos πt` on `[0, 1]`.
    StirapSin,
    /// `Ω_p = Ω0·sin² πt`, `Ω_s = Ω0·cos² πt` on `[0, 1]`.
    StirapSin2,
}

impl Case2Kind {
    pub const ALL: [Case2Kind; 5] =
        [Case2Kind::Cds, Case2Kind::StirapGaussian, Case2Kind::StirapSech, Case2Kind::StirapSin, Case2Kind::StirapSin2];

    pub fn name(&self) -> &'static str {
        match self {
            Case2Kind::Cds => "cds",
            Case2Kind::StirapGaussian => "stirap-gaussian",
            Case2Kind::StirapSech => "stirap-sech",
            Case2Kind::StirapSin => "stirap-sin",
            Case2Kind::StirapSin2 => "stirap-sin2",
        }
    }

    pub fn is_stirap(&self) -> bool {
        !matches!(self, Case2Kind::Cds)
    }
}

pub fn make_case2<S: Real>(kind: Case2Kind) -> Result<Pulse<S>> {
    let o0 = S::SQRT_2() * S::PI();
    let pi = S::PI();
    let pulse = match kind {
        Case2Kind::Cds => {
            Pulse::case2(Window::new(S::zero(), S::one())?, Envelope::constant(o0), Envelope::constant(o0))
        }
        Case2Kind::StirapGaussian => Pulse::case2(
            Window::new(S::lit(-4.0), S::lit(6.0))?,
            Envelope::new(move |t: S| o0 * (-t * t).exp()),
            Envelope::new(move |t: S| {
                let u = t - S::lit(2.0);
                o0 * (-u * u).exp()
            }),
        ),
        Case2Kind::StirapSech => Pulse::case2(
            Window::new(S::lit(-8.0), S::lit(13.0))?,
            Envelope::new(move |t: S| o0 / t.cosh()),
            Envelope::new(move |t: S| o0 / (t - S::lit(5.0)).cosh()),
        ),
        Case2Kind::StirapSin => Pulse::case2(
            Window::new(S::zero(), S::one())?,
            Envelope::new(move |t: S| o0 * (pi * t).sin()),
            Envelope::new(move |t: S| o0 * (pi * t).cos()),
        ),
        Case2Kind::StirapSin2 => Pulse::case2(
            Window::new(S::zero(), S::one())?,
            Envelope::new(move |t: S| {
                let s = (pi * t).sin();
                o0 * s * s
            }),
            Envelope::new(move |t: S| {
                let c = (pi * t).cos();
                o0 * c * c
            }),
        ),
    };
    Ok(pulse)
}

/// Plays a case2 pair backwards in time (`t ↦ t0 + tf − t` on both arms),
/// which exchanges the order in which pump and Stokes act.
pub fn time_reverse_pair<S: Real>(p: &Pulse<S>) -> Result<Pulse<S>> {
    match p.drive() {
        Drive::Case2 { omega_p, omega_s } => {
            let w = p.window();
            let pivot = w.t0() + w.tf();
            Ok(Pulse::case2(w, omega_p.mirrored(pivot), omega_s.mirrored(pivot)))
        }
        Drive::Case1 { .. } => Err(Error::WrongFamily("time reversal of pump/Stokes order needs a case2 pulse")),
    }
}

impl fmt::Display for Case1Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case1Kind::Sta { n } => write!(f, "sta(n={n})"),
            k => f.write_str(k.name()),
        }
    }
}

impl fmt::Display for Case2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case1Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pi" => Case1Kind::Pi,
            "chirped-gaussian" | "gaussian" => Case1Kind::ChirpedGaussian,
            "allen-eberly" | "ae" => Case1Kind::AllenEberly,
            "sta" => Case1Kind::Sta { n: 0.5 },
            "flat-pi" => Case1Kind::FlatPi,
            "resonant-gaussian" => Case1Kind::ResonantGaussian,
            other => return Err(Error::InvalidConfig(format!("unknown case1 pulse '{other}'"))),
        })
    }
}

impl FromStr for Case2Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cds" => Case2Kind::Cds,
            "stirap-gaussian" | "gaussian" => Case2Kind::StirapGaussian,
            "stirap-sech" | "sech" => Case2Kind::StirapSech,
            "stirap-sin" | "sin" => Case2Kind::StirapSin,
            "stirap-sin2" | "sin2" => Case2Kind::StirapSin2,
            other => return Err(Error::InvalidConfig(format!("unknown case2 pulse '{other}'"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_klein::cayley_klein_of;
    use crate::propagate::{propagate, propagate_numeric, IntegratorConfig};
    use crate::pulse::{apply_error, ErrorModel};
    use crate::scalar::C;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{PI, SQRT_2};

    const ALL_CASE1: [Case1Kind; 6] = [
        Case1Kind::Pi,
        Case1Kind::ChirpedGaussian,
        Case1Kind::AllenEberly,
        Case1Kind::Sta { n: 0.5 },
        Case1Kind::FlatPi,
        Case1Kind::ResonantGaussian,
    ];

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for k in 1..n {
            s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn windows() {
        let w = |k| make_case1::<f64>(k).unwrap().window();
        assert_eq!((w(Case1Kind::Pi).t0(), w(Case1Kind::Pi).tf()), (0.0, 1.0));
        assert_eq!(w(Case1Kind::ChirpedGaussian).tf(), 5.0);
        assert_eq!(w(Case1Kind::AllenEberly).t0(), -10.0);
        assert_eq!(w(Case1Kind::ResonantGaussian).tf(), 2.0);
        let w2 = |k| make_case2::<f64>(k).unwrap().window();
        assert_eq!((w2(Case2Kind::StirapGaussian).t0(), w2(Case2Kind::StirapGaussian).tf()), (-4.0, 6.0));
        assert_eq!((w2(Case2Kind::StirapSech).t0(), w2(Case2Kind::StirapSech).tf()), (-8.0, 13.0));
        assert_eq!(w2(Case2Kind::StirapSin).duration(), 1.0);
    }

    #[test]
    fn single_pi_pulse_profile() {
        let cfg = IntegratorConfig::default();
        let pi = make_case1::<f64>(Case1Kind::Pi).unwrap();
        for lam in [-0.3, -0.1, 0.0, 0.05, 0.2] {
            let q = apply_error(&pi, &ErrorModel::RabiGlobal(lam), 1).unwrap();
            let ck = cayley_klein_of(&propagate(&q, &cfg).unwrap()).unwrap();
            let p3 = ck.b.norm_sqr().powi(2);
            assert_abs_diff_eq!(p3, (lam * PI / 2.0).cos().powi(4), epsilon = 1e-14);
        }
    }

    #[test]
    fn pi_pulse_area() {
        let p = make_case1::<f64>(Case1Kind::Pi).unwrap();
        let area = simpson(|t| p.omega_p(t) / SQRT_2, 0.0, 1.0, 10);
        assert_abs_diff_eq!(area, PI, epsilon = 1e-12);
    }

    #[test]
    fn resonant_gaussian_area() {
        let p = make_case1::<f64>(Case1Kind::ResonantGaussian).unwrap();
        // untruncated envelope carries area π
        let full = simpson(|t| p.omega_p(t) / SQRT_2, -8.0, 8.0, 4000);
        assert_abs_diff_eq!(full, PI, epsilon = 1e-6);
        // the [−2, 2] window keeps π·erf(2)
        let w = p.window();
        let kept = simpson(|t| p.omega_p(t) / SQRT_2, w.t0(), w.tf(), 4000);
        assert_abs_diff_eq!(kept, PI * 0.995_322_265_018_952_7, epsilon = 1e-9);
    }

    #[test]
    fn allen_eberly_envelopes() {
        let p = make_case1::<f64>(Case1Kind::AllenEberly).unwrap();
        assert_abs_diff_eq!(p.omega_p(0.0), 6f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.delta_p(1.0), SQRT_2 * 1f64.tanh(), epsilon = 1e-15);
        assert_abs_diff_eq!(p.omega_p(1.0), 6f64.sqrt() / 1f64.cosh(), epsilon = 1e-15);
    }

    #[test]
    fn flat_pi_matches_closed_form_a() {
        let cfg = IntegratorConfig::default();
        let p = make_case1::<f64>(Case1Kind::FlatPi).unwrap();
        for d in [0.0, 0.1, 0.7, 2.0] {
            let q = apply_error(&p, &ErrorModel::DetuningStatic(d), 1).unwrap();
            let ck = cayley_klein_of(&propagate(&q, &cfg).unwrap()).unwrap();
            let g = (PI * PI + d * d).sqrt();
            let a = C::new((g / 2.0).cos(), d / g * (g / 2.0).sin());
            assert!((ck.a - a).norm() < 1e-8);
        }
    }

    #[test]
    fn sta_endpoint_values() {
        let s = StaAngles::new(0.0f64);
        assert_abs_diff_eq!(s.gamma(0.0), -PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.omega(0.0), SQRT_2 * PI, epsilon = 1e-9);
        assert_abs_diff_eq!(s.omega(1.0), SQRT_2 * PI, epsilon = 1e-9);
        // n = 0: γ = −arccot(2 sin θ)
        let t = 0.3;
        let expected = -(PI / 2.0 - (2.0 * (PI * t).sin()).atan());
        assert_abs_diff_eq!(s.gamma(t), expected, epsilon = 1e-15);
    }

    #[test]
    fn sta_delta_matches_raw_constraint() {
        // Δ = −Ω·cot θ·cos γ/√2 − γ̇ away from the endpoints
        for n in [0.0, 0.5, -0.3, 1.2] {
            let s = StaAngles::<f64>::new(n);
            for t in [0.1, 0.33, 0.5, 0.77, 0.95] {
                let th = s.theta(t);
                let g = s.gamma(t);
                let raw = -s.omega(t) * (th.cos() / th.sin()) * g.cos() / SQRT_2 - s.gamma_dot(t);
                assert_abs_diff_eq!(s.delta(t), raw, epsilon = 1e-10);
                // θ̇ = −Ω·sin γ/√2
                assert_abs_diff_eq!(s.theta_dot(), -s.omega(t) * g.sin() / SQRT_2, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn sta_gamma_dot_matches_finite_difference() {
        let s = StaAngles::new(0.5f64);
        let h = 1e-5;
        for t in [0.0, 0.2, 0.5, 0.81, 1.0] {
            let fd = (s.gamma(t + h) - s.gamma(t - h)) / (2.0 * h);
            assert_abs_diff_eq!(s.gamma_dot(t), fd, epsilon = 1e-6);
        }
    }

    #[test]
    fn sta_lr_phase_integrates_to_ansatz() {
        // ε̇₊ = θ̇·cos γ / (2 sin θ sin γ), midpoint rule avoids the 0/0 endpoints
        for n in [0.0, 0.5, 1.0] {
            let s = StaAngles::new(n);
            let steps = 20_000;
            let h = 1.0 / steps as f64;
            let mut eps = 0.0;
            for k in 0..steps {
                let t = (k as f64 + 0.5) * h;
                let g = s.gamma(t);
                eps += h * s.theta_dot() * g.cos() / (2.0 * s.theta(t).sin() * g.sin());
                if (k + 1) % 5000 == 0 {
                    let tk = (k + 1) as f64 * h;
                    assert_abs_diff_eq!(eps, s.epsilon_plus(tk), epsilon = 1e-6);
                }
            }
        }
    }

    #[test]
    fn sta_transports_invariant_eigenstate() {
        // ψ(t) = e^{iε₊(t)}·|φ₊(t)⟩ in the symmetric gauge
        // |φ₊⟩ = (e^{−iγ/2} cos θ/2, e^{iγ/2} sin θ/2), up to the constant e^{iγ(0)/2}
        let n = 0.5;
        let s = StaAngles::new(n);
        let cfg = IntegratorConfig::default();
        let p = invert_sta::<f64>(n, 2000).unwrap();
        let g0 = s.gamma(0.0);
        for tf in [0.25, 0.5, 0.9] {
            let seg = p.with_window(Window::new(0.0, tf).unwrap());
            let u = propagate_numeric(&seg, None, &cfg).unwrap();
            let (th, g, e) = (s.theta(tf), s.gamma(tf), s.epsilon_plus(tf));
            let want0 = C::from_polar((th / 2.0).cos(), e + (g0 - g) / 2.0);
            let want1 = C::from_polar((th / 2.0).sin(), e + (g0 + g) / 2.0);
            assert!((u[(0, 0)] - want0).norm() < 1e-8, "t={tf}");
            assert!((u[(1, 0)] - want1).norm() < 1e-8, "t={tf}");
        }
    }

    #[test]
    fn sta_inverts_exactly() {
        let cfg = IntegratorConfig::default();
        let p = make_case1::<f64>(Case1Kind::Sta { n: 0.5 }).unwrap();
        let ck = cayley_klein_of(&propagate(&p, &cfg).unwrap()).unwrap();
        assert_abs_diff_eq!(ck.b.norm_sqr().powi(2), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn sta_rejects_bad_inputs() {
        assert!(matches!(invert_sta::<f64>(f64::NAN, 2000), Err(Error::SingularSta(_))));
        assert!(invert_sta::<f64>(0.5, 10).is_err());
    }

    #[test]
    fn symmetric_case1_pulses_have_real_a() {
        let cfg = IntegratorConfig::default();
        for kind in ALL_CASE1 {
            let p = make_case1::<f64>(kind).unwrap();
            let w = p.window();
            for t in [0.1, 0.37, 0.5] {
                let t = w.t0() + t * w.duration();
                let m = w.t0() + w.tf() - t;
                assert_abs_diff_eq!(p.omega_p(t), p.omega_p(m), epsilon = 1e-9);
                assert_abs_diff_eq!(p.delta_p(t), -p.delta_p(m), epsilon = 1e-9);
            }
            let ck = cayley_klein_of(&propagate(&p, &cfg).unwrap()).unwrap();
            assert!(ck.a.im.abs() < 1e-7, "{kind}: a = {}", ck.a);
        }
    }

    #[test]
    fn cds_transfers_completely() {
        let u = propagate(&make_case2::<f64>(Case2Kind::Cds).unwrap(), &IntegratorConfig::default()).unwrap();
        assert_abs_diff_eq!(u[(2, 0)].norm_sqr(), 1.0, epsilon = 1e-8);
    }

    #[test]
    fn gaussian_pair_peaks() {
        let p = make_case2::<f64>(Case2Kind::StirapGaussian).unwrap();
        let o0 = SQRT_2 * PI;
        assert_abs_diff_eq!(p.omega_p(0.0), o0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.omega_s(2.0), o0, epsilon = 1e-15);
        assert!(p.omega_p(0.1) < o0 && p.omega_s(1.9) < o0);
    }

    #[test]
    fn time_reversal() {
        let cds = make_case2::<f64>(Case2Kind::Cds).unwrap();
        let r = time_reverse_pair(&cds).unwrap();
        assert!(r.is_constant());
        assert_eq!(r.omega_p(0.2), cds.omega_p(0.2));

        let sin = make_case2::<f64>(Case2Kind::StirapSin).unwrap();
        let r = time_reverse_pair(&sin).unwrap();
        let o0 = SQRT_2 * PI;
        for t in [0.0, 0.1, 0.25, 0.4, 0.5] {
            assert_abs_diff_eq!(r.omega_p(t), o0 * (PI * (1.0 - t)).sin(), epsilon = 1e-12);
            assert_abs_diff_eq!(r.omega_s(t), o0 * (PI * (1.0 - t)).cos(), epsilon = 1e-12);
        }
        for kind in Case2Kind::ALL {
            let p = make_case2::<f64>(kind).unwrap();
            let rr = time_reverse_pair(&time_reverse_pair(&p).unwrap()).unwrap();
            let w = p.window();
            for k in 0..=20 {
                let t = w.t0() + w.duration() * k as f64 / 20.0;
                assert_abs_diff_eq!(rr.omega_p(t), p.omega_p(t), epsilon = 1e-12);
                assert_abs_diff_eq!(rr.omega_s(t), p.omega_s(t), epsilon = 1e-12);
            }
        }
        assert!(time_reverse_pair(&make_case1::<f64>(Case1Kind::Pi).unwrap()).is_err());
    }

    #[test]
    fn names_parse_back() {
        for kind in Case2Kind::ALL {
            assert_eq!(kind.name().parse::<Case2Kind>().unwrap(), kind);
        }
        for kind in ALL_CASE1 {
            assert_eq!(kind.name().parse::<Case1Kind>().unwrap().name(), kind.name());
        }
        assert!("nope".parse::<Case1Kind>().is_err());
    }

    #[test]
    fn single_precision_constructors() {
        let p = make_case2::<f32>(Case2Kind::Cds).unwrap();
        let u = propagate(&p, &IntegratorConfig::default()).unwrap();
        assert!((u[(2, 0)].norm_sqr() - 1.0).abs() < 1e-5);
    }
}
