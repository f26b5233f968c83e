//! Propagators: fixed-step RK4 on the matrix Schrödinger equation
//! `i·dU/dt = H(t)·U`, plus closed forms for constant Hamiltonians.

use crate::cayley_klein::CayleyKlein;
use crate::error::{Error, Result};
use crate::majorana;
use crate::matrix::{unitarity_defect, ComplexMat};
use crate::pulse::{apply_error, Drive, ErrorModel, Pulse};
use crate::scalar::{cplx, re, Real, C};

pub const DEFAULT_STEPS_PER_T: usize = 4000;
pub const MIN_STEPS_PER_T: usize = 100;

/// Fixed-step RK4 settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<S: Real> {
    steps_per_t: usize,
    pub unitarity_tolerance: S,
}

impl<S: Real> IntegratorConfig<S> {
    pub fn new(steps_per_t: usize, unitarity_tolerance: S) -> Result<Self> {
        if steps_per_t < MIN_STEPS_PER_T {
            return Err(Error::InvalidConfig(format!(
                "steps_per_T = {steps_per_t} is below the minimum of {MIN_STEPS_PER_T}"
            )));
        }
        Ok(Self { steps_per_t, unitarity_tolerance })
    }

    /// Same as [`IntegratorConfig::new`] but without the lower bound on the
    /// step count. Only useful for convergence experiments.
    pub fn unchecked(steps_per_t: usize, unitarity_tolerance: S) -> Self {
        Self { steps_per_t: steps_per_t.max(1), unitarity_tolerance }
    }

    #[inline]
    pub fn steps_per_t(&self) -> usize {
        self.steps_per_t
    }

    fn steps_for(&self, duration: S) -> usize {
        let n = (S::from_usize(self.steps_per_t).unwrap() * duration).ceil();
        n.to_usize().unwrap_or(1).max(1)
    }
}

impl<S: Real> Default for IntegratorConfig<S> {
    fn default() -> Self {
        Self { steps_per_t: DEFAULT_STEPS_PER_T, unitarity_tolerance: S::lit(1e-8) }
    }
}

/// Integrates `i·dU/dt = H(t)·U` over `[t0, tf]` starting from the identity.
pub fn integrate<S: Real, H>(dim: usize, t0: S, tf: S, steps: usize, hamiltonian: H) -> ComplexMat<S>
where
    H: Fn(S) -> ComplexMat<S>,
{
    let h = (tf - t0) / S::from_usize(steps).unwrap();
    let half = h * S::lit(0.5);
    let minus_i = cplx(S::zero(), -S::one());
    let rhs = |hm: &ComplexMat<S>, u: &ComplexMat<S>| (*hm * *u).scale(minus_i);
    let mut u = ComplexMat::identity(dim);
    let mut h0 = hamiltonian(t0);
    for k in 0..steps {
        let t = t0 + S::from_usize(k).unwrap() * h;
        let hm = hamiltonian(t + half);
        let h1 = hamiltonian(t0 + S::from_usize(k + 1).unwrap() * h);
        let k1 = rhs(&h0, &u);
        let k2 = rhs(&hm, &(u + k1.scale(re(half))));
        let k3 = rhs(&hm, &(u + k2.scale(re(half))));
        let k4 = rhs(&h1, &(u + k3.scale(re(h))));
        let sixth = h / S::lit(6.0);
        let two = re(S::lit(2.0));
        u = u + (k1 + k2.scale(two) + k3.scale(two) + k4).scale(re(sixth));
        h0 = h1;
    }
    u
}

fn check_unitary<S: Real>(u: ComplexMat<S>, tol: S) -> Result<ComplexMat<S>> {
    let defect = unitarity_defect(&u);
    if !(defect <= tol) {
        return Err(Error::IntegrationFailure { defect: defect.to_f64_lossy(), tolerance: tol.to_f64_lossy() });
    }
    Ok(u)
}

/// The one-photon-resonant Hamiltonian `½[[0,Ωp,0],[Ωp,0,Ωs],[0,Ωs,0]]`.
pub fn case2_hamiltonian<S: Real>(omega_p: S, omega_s: S) -> ComplexMat<S> {
    let z = C::new(S::zero(), S::zero());
    let p = re(omega_p * S::lit(0.5));
    let s = re(omega_s * S::lit(0.5));
    ComplexMat::from_rows3([[z, p, z], [p, z, s], [z, s, z]])
}

/// The off-resonant Hamiltonian `½[[−2Δ,Ω,0],[Ω,0,Ω],[0,Ω,2Δ]]`.
pub fn case1_hamiltonian<S: Real>(omega: S, delta: S) -> ComplexMat<S> {
    let z = C::new(S::zero(), S::zero());
    let o = re(omega * S::lit(0.5));
    ComplexMat::from_rows3([[re(-delta), o, z], [o, z, o], [z, o, re(delta)]])
}

/// Numerically propagates a single pulse (with optional error, applied as
/// pulse 1). Case1 pulses yield the reduced 2×2 propagator, case2 pulses the
/// 3×3 one.
pub fn propagate_numeric<S: Real>(
    p: &Pulse<S>,
    e: Option<&ErrorModel<S>>,
    cfg: &IntegratorConfig<S>,
) -> Result<ComplexMat<S>> {
    let pulse = match e {
        Some(e) => apply_error(p, e, 1)?,
        None => p.clone(),
    };
    let w = pulse.window();
    let steps = cfg.steps_for(w.duration());
    let u = match pulse.drive() {
        Drive::Case1 { omega, delta } => {
            integrate(2, w.t0(), w.tf(), steps, |t| majorana::two_level_hamiltonian(omega.eval(t), delta.eval(t)))
        }
        Drive::Case2 { omega_p, omega_s } => {
            integrate(3, w.t0(), w.tf(), steps, |t| case2_hamiltonian(omega_p.eval(t), omega_s.eval(t)))
        }
    };
    check_unitary(u, cfg.unitarity_tolerance)
}

/// Numerically propagates a pulse with the full 3×3 Hamiltonian of its
/// family (case1 uses the off-resonant form, not the reduced one).
pub fn propagate_numeric_three_level<S: Real>(
    p: &Pulse<S>,
    e: Option<&ErrorModel<S>>,
    cfg: &IntegratorConfig<S>,
) -> Result<ComplexMat<S>> {
    let pulse = match e {
        Some(e) => apply_error(p, e, 1)?,
        None => p.clone(),
    };
    match pulse.drive() {
        Drive::Case2 { .. } => propagate_numeric(&pulse, None, cfg),
        Drive::Case1 { omega, delta } => {
            let w = pulse.window();
            let steps = cfg.steps_for(w.duration());
            let u = integrate(3, w.t0(), w.tf(), steps, |t| case1_hamiltonian(omega.eval(t), delta.eval(t)));
            check_unitary(u, cfg.unitarity_tolerance)
        }
    }
}

/// Propagator of a pulse whose envelopes are already final: the closed form
/// when every envelope is constant, RK4 otherwise.
pub fn propagate<S: Real>(p: &Pulse<S>, cfg: &IntegratorConfig<S>) -> Result<ComplexMat<S>> {
    let d = p.window().duration();
    match p.drive() {
        Drive::Case1 { omega, delta } => match (omega.as_constant(), delta.as_constant()) {
            (Some(o), Some(dl)) => Ok(propagate_constant_two_level(o, dl, d).to_matrix()),
            _ => propagate_numeric(p, None, cfg),
        },
        Drive::Case2 { omega_p, omega_s } => match (omega_p.as_constant(), omega_s.as_constant()) {
            (Some(op), Some(os)) => Ok(propagate_constant_three_level(op, os, d)),
            _ => propagate_numeric(p, None, cfg),
        },
    }
}

/// `sin(x)/x`, with its Taylor series near zero.
pub(crate) fn sinc<S: Real>(x: S) -> S {
    if x.abs() < S::lit(1e-4) {
        let x2 = x * x;
        S::one() - x2 / S::lit(6.0) + x2 * x2 / S::lit(120.0)
    } else {
        x.sin() / x
    }
}

/// Generalised Rabi solution for a constant two-level drive.
pub fn propagate_constant_two_level<S: Real>(omega: S, delta: S, duration: S) -> CayleyKlein<S> {
    let w = omega * duration / S::SQRT_2();
    let d = delta * duration;
    let g = (w * w + d * d).sqrt();
    let half = S::lit(0.5);
    // sin(G/2)/G = ½·sinc(G/2); G = 0 reduces to the identity
    let s = half * sinc(g * half);
    let a = cplx((g * half).cos(), d * s);
    let b = cplx(S::zero(), -w * s);
    CayleyKlein::new_unchecked(a, b)
}

/// `exp(−i·H2·duration)` for constant pump and Stokes amplitudes.
///
/// With `M = 2·H2·duration`, `w² = (Ωp² + Ωs²)·duration²` and `A = w/2`,
/// `M³ = w²·M` gives `U = I + (cos A − 1)·M²/w² − i·sin A·M/w`.
pub fn propagate_constant_three_level<S: Real>(omega_p: S, omega_s: S, duration: S) -> ComplexMat<S> {
    let p = omega_p * duration;
    let s = omega_s * duration;
    let w = (p * p + s * s).sqrt();
    let quarter = w * S::lit(0.25);
    // (cos A − 1)/w² and sin A / w, both regular at w = 0
    let c = -sinc(quarter) * sinc(quarter) / S::lit(8.0);
    let sn = sinc(w * S::lit(0.5)) * S::lit(0.5);
    let one = S::one();
    ComplexMat::from_rows3([
        [re(one + c * p * p), cplx(S::zero(), -sn * p), re(c * p * s)],
        [cplx(S::zero(), -sn * p), re(one + c * w * w), cplx(S::zero(), -sn * s)],
        [re(c * p * s), cplx(S::zero(), -sn * s), re(one + c * s * s)],
    ])
}
