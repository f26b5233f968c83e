//! N-pulse sequences: numeric composition under phase, order and error
//! policies, and closed-form sequence populations for two-level propagators.

use crate::cayley_klein::{cayley_klein_of_tol, CayleyKlein};
use crate::error::{Error, Result};
use crate::majorana::{lift_unchecked, populations_from_transition};
use crate::matrix::ComplexMat;
use crate::propagate::{propagate, IntegratorConfig};
use crate::pulse::{apply_error, arm_for, Arm, ErrorModel, Family, OrderPolicy, PhasePolicy, Pulse, SequenceSpec};
use crate::pulses::time_reverse_pair;
use crate::scalar::Real;

/// Outcome of composing a sequence.
#[derive(Debug, Clone)]
pub struct SequenceResult<S: Real> {
    /// `U_N ··· U_2·U_1`; 2×2 (reduced) for case1 pulses, 3×3 for case2.
    pub total: ComplexMat<S>,
    pub per_pulse: Vec<ComplexMat<S>>,
    /// Three-level populations `(P1, P2, P3)` reached from `|1⟩`.
    pub populations_from_1: [S; 3],
}

impl<S: Real> SequenceResult<S> {
    /// Total propagator on the three-level space (lifted for case1).
    pub fn total_three_level(&self) -> ComplexMat<S> {
        three_level(&self.total)
    }
}

fn three_level<S: Real>(u: &ComplexMat<S>) -> ComplexMat<S> {
    match u.dim() {
        2 => {
            let ck = CayleyKlein::new_unchecked(u[(0, 0)], u[(0, 1)]);
            lift_unchecked(&ck)
        }
        _ => *u,
    }
}

/// Populations from `|1⟩` of a sequence propagator (lifting 2×2 ones).
pub fn populations_from_1<S: Real>(u: &ComplexMat<S>) -> [S; 3] {
    match u.dim() {
        2 => populations_from_transition(u[(1, 0)].norm_sqr()),
        _ => {
            let c = u.column_populations(0);
            [c[0], c[1], c[2]]
        }
    }
}

/// What distinguishes pulse `k` of a sequence from the base pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Variant {
    flipped: bool,
    reversed: bool,
    arm: Option<Arm>,
}

fn variant_of<S: Real>(spec: &SequenceSpec, e: &ErrorModel<S>, k: usize) -> Variant {
    let even = k.is_multiple_of(2);
    Variant {
        flipped: spec.phase_policy == PhasePolicy::Alternating && even,
        reversed: spec.order_policy == OrderPolicy::AlternateTimeReversal && even,
        arm: match e {
            ErrorModel::RabiArm { assignment, .. } => Some(arm_for(*assignment, k)),
            _ => None,
        },
    }
}

/// Builds pulse `k` (1-based) of the sequence: phase flip, then time
/// reversal, then the error.
pub fn sequence_pulse<S: Real>(p: &Pulse<S>, spec: &SequenceSpec, e: &ErrorModel<S>, k: usize) -> Result<Pulse<S>> {
    let v = variant_of(spec, e, k);
    let mut q = if v.flipped { p.phase_flipped() } else { p.clone() };
    if v.reversed {
        q = time_reverse_pair(&q)?;
    }
    apply_error(&q, e, k)
}

/// Single-pulse propagators of the sequence, computing each distinct pulse
/// variant once.
pub fn per_pulse_propagators<S: Real>(
    p: &Pulse<S>,
    spec: &SequenceSpec,
    e: &ErrorModel<S>,
    cfg: &IntegratorConfig<S>,
) -> Result<Vec<ComplexMat<S>>> {
    if spec.order_policy == OrderPolicy::AlternateTimeReversal && p.family() != Family::Case2 {
        return Err(Error::WrongFamily("alternating time order applies to case2 pulses only"));
    }
    let mut cache: Vec<(Variant, ComplexMat<S>)> = Vec::with_capacity(4);
    let mut out = Vec::with_capacity(spec.n_pulses());
    for k in 1..=spec.n_pulses() {
        let v = variant_of(spec, e, k);
        let u = match cache.iter().find(|(cv, _)| *cv == v) {
            Some((_, u)) => *u,
            None => {
                let u = propagate(&sequence_pulse(p, spec, e, k)?, cfg)?;
                cache.push((v, u));
                u
            }
        };
        out.push(u);
    }
    Ok(out)
}

pub fn compose<S: Real>(
    p: &Pulse<S>,
    spec: &SequenceSpec,
    e: &ErrorModel<S>,
    cfg: &IntegratorConfig<S>,
) -> Result<SequenceResult<S>> {
    let per_pulse = per_pulse_propagators(p, spec, e, cfg)?;
    let total = per_pulse.iter().fold(ComplexMat::identity(per_pulse[0].dim()), |acc, u| *u * acc);
    Ok(SequenceResult { populations_from_1: populations_from_1(&total), total, per_pulse })
}

/// Propagators of pulses 1 and 2. Every pulse variant depends only on the
/// parity of its index, so this pair fixes sequences of any length.
pub fn parity_propagators<S: Real>(
    p: &Pulse<S>,
    spec: &SequenceSpec,
    e: &ErrorModel<S>,
    cfg: &IntegratorConfig<S>,
) -> Result<[ComplexMat<S>; 2]> {
    let pair = per_pulse_propagators(p, &spec.with_n(2)?, e, cfg)?;
    Ok([pair[0], pair[1]])
}

/// `U_N ··· U_1` with `U_k = u_odd` for odd `k` and `u_even` for even `k`.
pub fn parity_product<S: Real>(u_odd: &ComplexMat<S>, u_even: &ComplexMat<S>, n_pulses: usize) -> ComplexMat<S> {
    let pairs = (*u_even * *u_odd).powi((n_pulses / 2) as u32);
    if n_pulses % 2 == 1 {
        *u_odd * pairs
    } else {
        pairs
    }
}

/// Totals `U_k ··· U_1` for every prefix length `k = 1..=N`.
pub fn compose_prefixes<S: Real>(
    p: &Pulse<S>,
    spec: &SequenceSpec,
    e: &ErrorModel<S>,
    cfg: &IntegratorConfig<S>,
) -> Result<Vec<ComplexMat<S>>> {
    let per_pulse = per_pulse_propagators(p, spec, e, cfg)?;
    let mut acc = ComplexMat::identity(per_pulse[0].dim());
    Ok(per_pulse
        .iter()
        .map(|u| {
            acc = *u * acc;
            acc
        })
        .collect())
}

/// Same-phase π-pulse sequence: `cos⁴(Nλπ/2)`, which is `P3` for odd `N`
/// and `P1` for even `N`.
pub fn pi_sequence_population<S: Real>(n_pulses: usize, lambda: S) -> S {
    let n = S::from_usize(n_pulses).unwrap();
    (n * lambda * S::PI() / S::lit(2.0)).cos().powi(4)
}

/// Below this, `Θ` and `ϑ` (or `π − ϑ`) are treated by their limits.
const LIMIT_EPS: f64 = 1e-6;

/// Angles and Chebyshev-type ratios of the closed-form sequence propagators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormParams<S: Real> {
    /// `Θ = arccos(1 − 2a_i²)`.
    pub theta: S,
    /// `ϑ = arccos(a_r)`.
    pub vartheta: S,
    /// `sin(nΘ)/sin Θ` with `n = ⌊N/2⌋`.
    pub e: S,
    /// `sin(Nϑ)/sin ϑ`.
    pub d: S,
    /// `cos((n+½)Θ)/cos(Θ/2)`.
    pub f: S,
}

impl<S: Real> ClosedFormParams<S> {
    pub fn new(ck: &CayleyKlein<S>, n_pulses: usize) -> Self {
        let n_total = S::from_usize(n_pulses).unwrap();
        let half_n = S::from_usize(n_pulses / 2).unwrap();
        let half = S::lit(0.5);
        // sin(Θ/2) = |a_i|; the arcsine form keeps precision at small a_i
        let theta = S::lit(2.0) * ck.a_i().abs().min(S::one()).asin();
        // sin ϑ = √(a_i² + |b|²)
        let sin_vt = (ck.a_i() * ck.a_i() + ck.b.norm_sqr()).sqrt();
        let vartheta = sin_vt.atan2(ck.a_r());
        let eps = S::lit(LIMIT_EPS);
        let e = if theta.abs() < eps { half_n } else { (half_n * theta).sin() / theta.sin() };
        let d = if vartheta.abs() < eps {
            n_total
        } else if (S::PI() - vartheta).abs() < eps {
            // sin(Nϑ)/sin ϑ → (−1)^{N+1}·N as ϑ → π
            if n_pulses % 2 == 1 {
                n_total
            } else {
                -n_total
            }
        } else {
            (n_total * vartheta).sin() / vartheta.sin()
        };
        let f = ((half_n + half) * theta).cos() / (half * theta).cos();
        Self { theta, vartheta, e, d, f }
    }
}

/// Two-level transition probability after `N` pulses in closed form.
///
/// Alternating phases (pulse 1 unflipped): `4|b|²a_i²E²` for even `N`,
/// `|b|²F²` for odd `N`. Same phases: `|b|²D²`.
pub fn closed_form_transition<S: Real>(ck: &CayleyKlein<S>, n_pulses: usize, policy: PhasePolicy) -> S {
    let cf = ClosedFormParams::new(ck, n_pulses);
    let b2 = ck.b.norm_sqr();
    let p = match policy {
        PhasePolicy::Alternating if n_pulses.is_multiple_of(2) => S::lit(4.0) * b2 * ck.a_i() * ck.a_i() * cf.e * cf.e,
        PhasePolicy::Alternating => b2 * cf.f * cf.f,
        PhasePolicy::Same => b2 * cf.d * cf.d,
    };
    p.max(S::zero()).min(S::one())
}

/// Closed-form three-level populations `(P1, P2, P3)` from `|1⟩`.
pub fn closed_form_populations<S: Real>(ck: &CayleyKlein<S>, n_pulses: usize, policy: PhasePolicy) -> [S; 3] {
    populations_from_transition(closed_form_transition(ck, n_pulses, policy))
}

/// Detuning-error population of the sequence: `P1` for even `N`, `P3` for
/// odd `N`.
pub fn detuning_sequence_population<S: Real>(ck: &CayleyKlein<S>, n_pulses: usize, policy: PhasePolicy) -> S {
    let pops = closed_form_populations(ck, n_pulses, policy);
    if n_pulses.is_multiple_of(2) {
        pops[0]
    } else {
        pops[2]
    }
}

/// Second-order expansion of [`detuning_sequence_population`] about `a = 0`.
pub fn perturbative_population<S: Real>(ck: &CayleyKlein<S>, n_pulses: usize, policy: PhasePolicy) -> S {
    let n = S::from_usize(n_pulses).unwrap();
    let two = S::lit(2.0);
    let (ar, ai) = (ck.a_r(), ck.a_i());
    let p = match policy {
        PhasePolicy::Alternating => S::one() - two * n * n * ai * ai,
        PhasePolicy::Same if n_pulses.is_multiple_of(2) => S::one() - two * n * n * ar * ar,
        PhasePolicy::Same => S::one() - two * n * n * ar * ar - two * ai * ai,
    };
    p.max(S::zero()).min(S::one())
}

/// Cayley-Klein pair of a single case1 pulse under an error model.
pub fn single_pulse_ck<S: Real>(p: &Pulse<S>, e: &ErrorModel<S>, cfg: &IntegratorConfig<S>) -> Result<CayleyKlein<S>> {
    if p.family() != Family::Case1 {
        return Err(Error::WrongFamily("Cayley-Klein parameters describe case1 pulses"));
    }
    let u = propagate(&apply_error(p, e, 1)?, cfg)?;
    cayley_klein_of_tol(&u, cfg.unitarity_tolerance.max(S::lit(1e-8)))
}
