//! Pulses, error models and sequence policies.
//!
//! Time is measured in units of the global pulse width `T = 1`; Rabi
//! frequencies and detunings are in units of `1/T` and `ħ = 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

type EnvelopeFn<S> = Arc<dyn Fn(S) -> S + Send + Sync>;

/// A real function of time, optionally tagged as constant so propagators
/// can take the closed-form route.
#[derive(Clone)]
pub struct Envelope<S: Real> {
    f: EnvelopeFn<S>,
    constant: Option<S>,
}

impl<S: Real> Envelope<S> {
    pub fn new(f: impl Fn(S) -> S + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f), constant: None }
    }

    pub fn constant(value: S) -> Self {
        Self { f: Arc::new(move |_| value), constant: Some(value) }
    }

    pub fn zero() -> Self {
        Self::constant(S::zero())
    }

    #[inline]
    pub fn eval(&self, t: S) -> S {
        match self.constant {
            Some(v) => v,
            None => (self.f)(t),
        }
    }

    /// `Some(v)` when the envelope is identically `v`.
    pub fn as_constant(&self) -> Option<S> {
        self.constant
    }

    pub fn scaled(&self, k: S) -> Self {
        if let Some(v) = self.constant {
            return Self::constant(v * k);
        }
        let f = Arc::clone(&self.f);
        Self { f: Arc::new(move |t| k * f(t)), constant: None }
    }

    pub fn shifted(&self, c: S) -> Self {
        if let Some(v) = self.constant {
            return Self::constant(v + c);
        }
        let f = Arc::clone(&self.f);
        Self { f: Arc::new(move |t| f(t) + c), constant: None }
    }

    /// `t ↦ f(pivot − t)`; with `pivot = t0 + tf` this mirrors a window.
    pub fn mirrored(&self, pivot: S) -> Self {
        if self.constant.is_some() {
            return self.clone();
        }
        let f = Arc::clone(&self.f);
        Self { f: Arc::new(move |t| f(pivot - t)), constant: None }
    }
}

impl<S: Real> fmt::Debug for Envelope<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constant {
            Some(v) => write!(f, "Envelope::constant({v})"),
            None => write!(f, "Envelope::fn"),
        }
    }
}

/// Closed time interval `[t0, tf]` with `tf > t0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<S: Real> {
    t0: S,
    tf: S,
}

impl<S: Real> Window<S> {
    pub fn new(t0: S, tf: S) -> Result<Self> {
        if !(t0.is_finite() && tf.is_finite() && tf > t0) {
            return Err(Error::InvalidConfig(format!("window [{t0}, {tf}] must be finite with tf > t0")));
        }
        Ok(Self { t0, tf })
    }

    #[inline]
    pub fn t0(&self) -> S {
        self.t0
    }

    #[inline]
    pub fn tf(&self) -> S {
        self.tf
    }

    #[inline]
    pub fn duration(&self) -> S {
        self.tf - self.t0
    }
}

/// Which SU(2)-symmetric Hamiltonian family a pulse drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Off-resonant, Ω_p = Ω_s = Ω and Δ_p = −Δ_s = Δ.
    Case1,
    /// One-photon resonant, Δ_p = Δ_1 = 0.
    Case2,
}

#[derive(Debug, Clone)]
pub enum Drive<S: Real> {
    Case1 { omega: Envelope<S>, delta: Envelope<S> },
    Case2 { omega_p: Envelope<S>, omega_s: Envelope<S> },
}

/// A single control segment of the Λ system.
#[derive(Debug, Clone)]
pub struct Pulse<S: Real> {
    window: Window<S>,
    drive: Drive<S>,
}

impl<S: Real> Pulse<S> {
    pub fn case1(window: Window<S>, omega: Envelope<S>, delta: Envelope<S>) -> Self {
        Self { window, drive: Drive::Case1 { omega, delta } }
    }

    pub fn case2(window: Window<S>, omega_p: Envelope<S>, omega_s: Envelope<S>) -> Self {
        Self { window, drive: Drive::Case2 { omega_p, omega_s } }
    }

    #[inline]
    pub fn window(&self) -> Window<S> {
        self.window
    }

    #[inline]
    pub fn drive(&self) -> &Drive<S> {
        &self.drive
    }

    pub fn family(&self) -> Family {
        match self.drive {
            Drive::Case1 { .. } => Family::Case1,
            Drive::Case2 { .. } => Family::Case2,
        }
    }

    pub fn with_window(&self, window: Window<S>) -> Self {
        Self { window, drive: self.drive.clone() }
    }

    pub fn omega_p(&self, t: S) -> S {
        match &self.drive {
            Drive::Case1 { omega, .. } => omega.eval(t),
            Drive::Case2 { omega_p, .. } => omega_p.eval(t),
        }
    }

    pub fn omega_s(&self, t: S) -> S {
        match &self.drive {
            Drive::Case1 { omega, .. } => omega.eval(t),
            Drive::Case2 { omega_s, .. } => omega_s.eval(t),
        }
    }

    pub fn delta_p(&self, t: S) -> S {
        match &self.drive {
            Drive::Case1 { delta, .. } => delta.eval(t),
            Drive::Case2 { .. } => S::zero(),
        }
    }

    /// Two-photon detuning Δ_1 = Δ_p − Δ_s.
    pub fn delta_1(&self, t: S) -> S {
        match &self.drive {
            Drive::Case1 { delta, .. } => S::lit(2.0) * delta.eval(t),
            Drive::Case2 { .. } => S::zero(),
        }
    }

    pub fn delta_s(&self, t: S) -> S {
        self.delta_p(t) - self.delta_1(t)
    }

    /// Negates both Rabi envelopes (a π carrier-phase jump).
    pub fn phase_flipped(&self) -> Self {
        let m1 = -S::one();
        let drive = match &self.drive {
            Drive::Case1 { omega, delta } => Drive::Case1 { omega: omega.scaled(m1), delta: delta.clone() },
            Drive::Case2 { omega_p, omega_s } => {
                Drive::Case2 { omega_p: omega_p.scaled(m1), omega_s: omega_s.scaled(m1) }
            }
        };
        Self { window: self.window, drive }
    }

    /// True when every envelope is tagged constant.
    pub fn is_constant(&self) -> bool {
        match &self.drive {
            Drive::Case1 { omega, delta } => omega.as_constant().is_some() && delta.as_constant().is_some(),
            Drive::Case2 { omega_p, omega_s } => omega_p.as_constant().is_some() && omega_s.as_constant().is_some(),
        }
    }
}

/// Which arm a single-arm Rabi error hits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assignment {
    FixedP,
    FixedS,
    /// Ω_s on odd pulses, Ω_p on even pulses.
    AlternatingStartS,
}

/// Perturbation channel without its magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorChannel {
    RabiGlobal,
    DetuningStatic,
    RabiArm(Assignment),
}

impl ErrorChannel {
    pub fn with_magnitude<S: Real>(self, magnitude: S) -> ErrorModel<S> {
        match self {
            ErrorChannel::RabiGlobal => ErrorModel::RabiGlobal(magnitude),
            ErrorChannel::DetuningStatic => ErrorModel::DetuningStatic(magnitude),
            ErrorChannel::RabiArm(assignment) => ErrorModel::RabiArm { eta: magnitude, assignment },
        }
    }
}

/// A control error of a given magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorModel<S: Real> {
    /// Ω → (1+λ)Ω on both arms.
    RabiGlobal(S),
    /// Δ → Δ + δ.
    DetuningStatic(S),
    /// Ω_i → (1+η)Ω_i on one arm per pulse.
    RabiArm { eta: S, assignment: Assignment },
}

impl<S: Real> ErrorModel<S> {
    pub fn none() -> Self {
        ErrorModel::RabiGlobal(S::zero())
    }

    pub fn magnitude(&self) -> S {
        match *self {
            ErrorModel::RabiGlobal(x) | ErrorModel::DetuningStatic(x) => x,
            ErrorModel::RabiArm { eta, .. } => eta,
        }
    }

    pub fn channel(&self) -> ErrorChannel {
        match *self {
            ErrorModel::RabiGlobal(_) => ErrorChannel::RabiGlobal,
            ErrorModel::DetuningStatic(_) => ErrorChannel::DetuningStatic,
            ErrorModel::RabiArm { assignment, .. } => ErrorChannel::RabiArm(assignment),
        }
    }
}

/// Arm perturbed by a `RabiArm` error on the `pulse_index`-th pulse (1-based).
pub fn arm_for(assignment: Assignment, pulse_index: usize) -> Arm {
    match assignment {
        Assignment::FixedP => Arm::Pump,
        Assignment::FixedS => Arm::Stokes,
        Assignment::AlternatingStartS if pulse_index % 2 == 1 => Arm::Stokes,
        Assignment::AlternatingStartS => Arm::Pump,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arm {
    Pump,
    Stokes,
}

/// Applies `e` to the `pulse_index`-th pulse of a sequence (1-based).
pub fn apply_error<S: Real>(p: &Pulse<S>, e: &ErrorModel<S>, pulse_index: usize) -> Result<Pulse<S>> {
    if pulse_index == 0 {
        return Err(Error::InvalidConfig("pulse_index is 1-based".into()));
    }
    let window = p.window;
    let drive = match (&p.drive, *e) {
        (Drive::Case1 { omega, delta }, ErrorModel::RabiGlobal(l)) => {
            Drive::Case1 { omega: omega.scaled(S::one() + l), delta: delta.clone() }
        }
        (Drive::Case2 { omega_p, omega_s }, ErrorModel::RabiGlobal(l)) => {
            Drive::Case2 { omega_p: omega_p.scaled(S::one() + l), omega_s: omega_s.scaled(S::one() + l) }
        }
        (Drive::Case1 { omega, delta }, ErrorModel::DetuningStatic(d)) => {
            Drive::Case1 { omega: omega.clone(), delta: delta.shifted(d) }
        }
        (Drive::Case2 { .. }, ErrorModel::DetuningStatic(_)) => {
            return Err(Error::WrongFamily("static detuning is defined for case1 pulses only"))
        }
        (Drive::Case1 { .. }, ErrorModel::RabiArm { .. }) => {
            return Err(Error::WrongFamily("single-arm Rabi error needs separate pump and Stokes envelopes"))
        }
        (Drive::Case2 { omega_p, omega_s }, ErrorModel::RabiArm { eta, assignment }) => {
            let k = S::one() + eta;
            match arm_for(assignment, pulse_index) {
                Arm::Pump => Drive::Case2 { omega_p: omega_p.scaled(k), omega_s: omega_s.clone() },
                Arm::Stokes => Drive::Case2 { omega_p: omega_p.clone(), omega_s: omega_s.scaled(k) },
            }
        }
    };
    Ok(Pulse { window, drive })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhasePolicy {
    Same,
    /// Every even-numbered pulse has both Rabi envelopes negated.
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderPolicy {
    Fixed,
    /// Every even-numbered pulse is played time-reversed.
    AlternateTimeReversal,
}

/// How a base pulse is repeated into a contiguous sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    n_pulses: usize,
    pub phase_policy: PhasePolicy,
    pub order_policy: OrderPolicy,
}

impl SequenceSpec {
    pub fn new(n_pulses: usize, phase_policy: PhasePolicy, order_policy: OrderPolicy) -> Result<Self> {
        if n_pulses == 0 {
            return Err(Error::InvalidConfig("a sequence needs at least one pulse".into()));
        }
        Ok(Self { n_pulses, phase_policy, order_policy })
    }

    pub fn same(n_pulses: usize) -> Result<Self> {
        Self::new(n_pulses, PhasePolicy::Same, OrderPolicy::Fixed)
    }

    pub fn alternating(n_pulses: usize) -> Result<Self> {
        Self::new(n_pulses, PhasePolicy::Alternating, OrderPolicy::Fixed)
    }

    #[inline]
    pub fn n_pulses(&self) -> usize {
        self.n_pulses
    }

    pub fn with_n(&self, n_pulses: usize) -> Result<Self> {
        Self::new(n_pulses, self.phase_policy, self.order_policy)
    }
}
