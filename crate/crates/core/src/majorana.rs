//! Majorana reduction of the off-resonant three-level problem to a two-level
//! one, and the spin-1 lifting of two-level propagators back.
//!
//! With `Ω_p = Ω_s = Ω` and `Δ_p = −Δ_s = Δ` the three-level Hamiltonian is
//! `−Δ·J_z + (Ω/√2)·J_x` for spin 1, so its dynamics are fixed by the spin-½
//! problem `H = ½[[−Δ, Ω/√2], [Ω/√2, Δ]]`.

use crate::cayley_klein::CayleyKlein;
use crate::error::{Error, Result};
use crate::matrix::ComplexMat;
use crate::pulse::{Drive, Envelope, Pulse, Window};
use crate::scalar::{re, Real, C};

/// Effective two-level Hamiltonian `½[[−Δ, Ω/√2], [Ω/√2, Δ]]`.
pub fn two_level_hamiltonian<S: Real>(omega: S, delta: S) -> ComplexMat<S> {
    let half = S::lit(0.5);
    let w = re(half * omega / S::SQRT_2());
    ComplexMat::from_rows2([[re(-half * delta), w], [w, re(half * delta)]])
}

/// Case1 pulse viewed as a two-level drive. The `1/√2` coupling reduction
/// lives in [`two_level_hamiltonian`], not in the envelope.
#[derive(Debug, Clone)]
pub struct ReducedPulse<S: Real> {
    pub omega: Envelope<S>,
    pub delta: Envelope<S>,
    pub window: Window<S>,
}

impl<S: Real> ReducedPulse<S> {
    pub fn hamiltonian(&self, t: S) -> ComplexMat<S> {
        two_level_hamiltonian(self.omega.eval(t), self.delta.eval(t))
    }
}

pub fn reduce<S: Real>(p: &Pulse<S>) -> Result<ReducedPulse<S>> {
    match p.drive() {
        Drive::Case1 { omega, delta } => {
            Ok(ReducedPulse { omega: omega.clone(), delta: delta.clone(), window: p.window() })
        }
        Drive::Case2 { .. } => Err(Error::WrongFamily("only case1 pulses admit the Majorana reduction")),
    }
}

/// Spin-1 image of the SU(2) element `(a, b)`.
///
/// Columns are the images of `|1⟩ = |↑↑⟩`, `|2⟩ = (|↑↓⟩+|↓↑⟩)/√2` and
/// `|3⟩ = |↓↓⟩`; the `(3,1)` entry is `+b*²`.
pub fn lift<S: Real>(ck: &CayleyKlein<S>) -> Result<ComplexMat<S>> {
    let norm = ck.norm_sqr();
    if (norm - S::one()).abs() > S::lit(1e-8) || !norm.is_finite() {
        return Err(Error::NotNormalized(norm.to_f64_lossy()));
    }
    Ok(lift_unchecked(ck))
}

pub(crate) fn lift_unchecked<S: Real>(ck: &CayleyKlein<S>) -> ComplexMat<S> {
    let (a, b) = (ck.a, ck.b);
    let (ac, bc) = (a.conj(), b.conj());
    let r2 = re(S::SQRT_2());
    let mid: C<S> = re(a.norm_sqr() - b.norm_sqr());
    ComplexMat::from_rows3([
        [a * a, r2 * a * b, b * b],
        [-r2 * a * bc, mid, r2 * ac * b],
        [bc * bc, -r2 * ac * bc, ac * ac],
    ])
}

/// Three-level populations `(P1, P2, P3)` starting from `|1⟩`:
/// `P1 = |a|⁴`, `P2 = 2|a|²|b|²`, `P3 = |b|⁴`.
pub fn populations_from_ck<S: Real>(ck: &CayleyKlein<S>) -> [S; 3] {
    populations_from_transition(ck.b.norm_sqr())
}

/// Same as [`populations_from_ck`], in terms of the two-level transition
/// probability `p_e`.
pub fn populations_from_transition<S: Real>(p_e: S) -> [S; 3] {
    let p_g = S::one() - p_e;
    [p_g * p_g, S::lit(2.0) * p_g * p_e, p_e * p_e]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley_klein::cayley_klein_of;
    use crate::matrix::unitarity_defect;
    use crate::propagate::{propagate_numeric, propagate_numeric_three_level, IntegratorConfig};
    use crate::scalar::cplx;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn lift_identity() {
        let u = lift(&CayleyKlein::<f64>::identity()).unwrap();
        assert_eq!(u, ComplexMat::identity(3));
    }

    #[test]
    fn lift_full_inversion() {
        let ck = CayleyKlein::new_unchecked(cplx(0.0, 0.0), cplx(0.0, -1.0));
        let u = lift(&ck).unwrap();
        assert_abs_diff_eq!(u[(2, 0)].norm(), 1.0, epsilon = 1e-15);
        assert_eq!(populations_from_ck(&ck), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn lift_rejects_unnormalised() {
        let ck = CayleyKlein::new_unchecked(cplx(0.7, 0.0), cplx(0.0, 0.8));
        assert!(matches!(lift(&ck), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn reduce_rejects_case2() {
        let p = Pulse::case2(Window::new(0.0, 1.0).unwrap(), Envelope::constant(1.0), Envelope::constant(1.0));
        assert!(reduce(&p).is_err());
        let q = Pulse::case1(Window::new(0.0, 1.0).unwrap(), Envelope::constant(2.0), Envelope::zero());
        let r = reduce(&q).unwrap();
        assert_eq!(r.hamiltonian(0.5)[(0, 1)].re, 1.0 / 2f64.sqrt());
    }

    #[test]
    fn populations_examples() {
        let p = populations_from_ck(&CayleyKlein::<f64>::identity());
        assert_eq!(p, [1.0, 0.0, 0.0]);
        let h = 0.5f64.sqrt();
        let p = populations_from_ck(&CayleyKlein::new_unchecked(cplx(h, 0.0), cplx(0.0, h)));
        assert_abs_diff_eq!(p[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[2], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn lifted_populations_match_numeric_three_level() {
        // a = 0.6, b = 0.8i is reached by a resonant flat pulse with
        // W = −2·asin(0.8) over unit time (Ω = √2·W)
        let ck = CayleyKlein::new_unchecked(cplx(0.6, 0.0), cplx(0.0, 0.8));
        let u = lift(&ck).unwrap();
        let col = u.column_populations(0);
        assert_abs_diff_eq!(col[0], 0.1296, epsilon = 1e-14);
        assert_abs_diff_eq!(col[1], 0.4608, epsilon = 1e-14);
        assert_abs_diff_eq!(col[2], 0.4096, epsilon = 1e-14);
        assert_abs_diff_eq!(col.iter().sum::<f64>(), 1.0, epsilon = 1e-14);

        let omega = -2.0 * 2f64.sqrt() * 0.8f64.asin();
        let p = Pulse::case1(Window::new(0.0, 1.0).unwrap(), Envelope::new(move |_| omega), Envelope::new(|_| 0.0));
        let cfg = IntegratorConfig::default();
        let two = cayley_klein_of(&propagate_numeric(&p, None, &cfg).unwrap()).unwrap();
        assert_abs_diff_eq!(two.a.re, 0.6, epsilon = 1e-9);
        assert_abs_diff_eq!(two.b.im, 0.8, epsilon = 1e-9);
        let three = propagate_numeric_three_level(&p, None, &cfg).unwrap();
        let num = three.column_populations(0);
        for k in 0..3 {
            assert_abs_diff_eq!(num[k], col[k], epsilon = 1e-8);
        }
    }

    #[test]
    fn lift_equals_three_level_propagator_for_detuned_chirp() {
        let p = Pulse::case1(
            Window::new(-2.0, 2.5).unwrap(),
            Envelope::new(|t: f64| 3.0 * (-t * t).exp()),
            Envelope::new(|t: f64| 0.7 * t + 0.2),
        );
        let cfg = IntegratorConfig::default();
        let ck = cayley_klein_of(&propagate_numeric(&p, None, &cfg).unwrap()).unwrap();
        let full = propagate_numeric_three_level(&p, None, &cfg).unwrap();
        assert!(lift(&ck).unwrap().dist_max(&full) < 1e-7);
    }

    proptest! {
        #[test]
        fn lift_is_unitary_and_a_homomorphism(alpha in 0.0f64..std::f64::consts::FRAC_PI_2, pa in -3.1f64..3.1, pb in -3.1f64..3.1,
                                               beta in 0.0f64..std::f64::consts::FRAC_PI_2, qa in -3.1f64..3.1, qb in -3.1f64..3.1) {
            let x = CayleyKlein::new_unchecked(C::from_polar(alpha.cos(), pa), C::from_polar(alpha.sin(), pb));
            let y = CayleyKlein::new_unchecked(C::from_polar(beta.cos(), qa), C::from_polar(beta.sin(), qb));
            let lx = lift(&x).unwrap();
            prop_assert!(unitarity_defect(&lx) < 1e-10);
            let lxy = lift(&x.compose(&y)).unwrap();
            prop_assert!(lxy.dist_max(&(lx * lift(&y).unwrap())) < 1e-12);
            let sq = cayley_klein_of(&(x.to_matrix() * x.to_matrix())).unwrap();
            prop_assert!(lift(&sq).unwrap().dist_max(&(lx * lx)) < 1e-8);
            let pops = populations_from_ck(&x);
            let col = lx.column_populations(0);
            for k in 0..3 {
                prop_assert!((pops[k] - col[k]).abs() < 1e-12);
            }
        }
    }
}
