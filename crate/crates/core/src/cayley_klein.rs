//! Cayley-Klein parametrisation of SU(2) propagators.

use crate::error::{Error, Result};
use crate::matrix::{unitarity_defect, ComplexMat};
use crate::scalar::{Real, C};

/// SU(2) element `[[a, b], [−b*, a*]]`, stored by its first row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CayleyKlein<S: Real> {
    pub a: C<S>,
    pub b: C<S>,
}

impl<S: Real> CayleyKlein<S> {
    /// Builds the pair, rejecting it unless `|a|² + |b|² = 1` within `tol`.
    pub fn new(a: C<S>, b: C<S>, tol: S) -> Result<Self> {
        let ck = Self { a, b };
        let norm = ck.norm_sqr();
        if (norm - S::one()).abs() > tol || !norm.is_finite() {
            return Err(Error::NotNormalized(norm.to_f64_lossy()));
        }
        Ok(ck)
    }

    /// Builds the pair without checking normalisation.
    #[inline]
    pub const fn new_unchecked(a: C<S>, b: C<S>) -> Self {
        Self { a, b }
    }

    pub fn identity() -> Self {
        Self { a: C::new(S::one(), S::zero()), b: C::new(S::zero(), S::zero()) }
    }

    #[inline]
    pub fn a_r(&self) -> S {
        self.a.re
    }

    #[inline]
    pub fn a_i(&self) -> S {
        self.a.im
    }

    #[inline]
    pub fn norm_sqr(&self) -> S {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    pub fn to_matrix(&self) -> ComplexMat<S> {
        ComplexMat::from_rows2([[self.a, self.b], [-self.b.conj(), self.a.conj()]])
    }

    /// Propagator of the same pulse with both Rabi envelopes negated:
    /// `[[a, −b], [b*, a*]]`.
    pub fn phase_flipped(&self) -> Self {
        Self { a: self.a, b: -self.b }
    }

    /// Group product: the pair of `self.to_matrix() * rhs.to_matrix()`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self { a: self.a * rhs.a - self.b * rhs.b.conj(), b: self.a * rhs.b + self.b * rhs.a.conj() }
    }

    /// Transition probability `|b|²` of the two-level system.
    #[inline]
    pub fn transition_probability(&self) -> S {
        self.b.norm_sqr()
    }
}

/// Extracts `(a, b)` from a 2×2 propagator, rejecting anything that is not
/// of the SU(2) form within `1e−8`.
pub fn cayley_klein_of<S: Real>(u: &ComplexMat<S>) -> Result<CayleyKlein<S>> {
    cayley_klein_of_tol(u, S::lit(1e-8))
}

pub fn cayley_klein_of_tol<S: Real>(u: &ComplexMat<S>, tol: S) -> Result<CayleyKlein<S>> {
    if u.dim() != 2 {
        return Err(Error::NotSu2(format!("expected a 2x2 matrix, got {0}x{0}", u.dim())));
    }
    let defect = unitarity_defect(u);
    if !(defect <= tol) {
        return Err(Error::NotSu2(format!("unitarity defect {defect:e}")));
    }
    let a = u[(0, 0)];
    let b = u[(0, 1)];
    let lower_left = (u[(1, 0)] + b.conj()).norm();
    let lower_right = (u[(1, 1)] - a.conj()).norm();
    if lower_left > tol || lower_right > tol {
        return Err(Error::NotSu2(format!("second row deviates from (-b*, a*) by ({lower_left:e}, {lower_right:e})")));
    }
    CayleyKlein::new(a, b, tol)
}
