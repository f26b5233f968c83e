//! Composite-pulse simulation of three-level Λ systems.
//!
//! Two pulse families are covered. Case1 pulses drive both arms with the
//! same coupling and opposite detunings, which reduces to a two-level
//! problem via the Majorana decomposition. Case2 pulses are one-photon
//! resonant with independent pump and Stokes envelopes.
//!
//! Everything is generic over the scalar type (`f32` or `f64`); the aliases
//! at the crate root fix it to `f64`.

pub mod analysis;
pub mod cayley_klein;
pub mod composite;
pub mod error;
pub mod majorana;
pub mod matrix;
pub mod propagate;
pub mod pulse;
pub mod pulses;
pub mod scalar;

pub use cayley_klein::{cayley_klein_of, cayley_klein_of_tol, CayleyKlein};
pub use composite::{compose, compose_prefixes, SequenceResult};
pub use error::{Error, Result};
pub use matrix::{unitarity_defect, ComplexMat};
pub use propagate::{propagate, propagate_numeric, IntegratorConfig, DEFAULT_STEPS_PER_T, MIN_STEPS_PER_T};
pub use pulse::{
    apply_error, Assignment, Drive, Envelope, ErrorChannel, ErrorModel, Family, OrderPolicy, PhasePolicy, Pulse,
    SequenceSpec, Window,
};
pub use pulses::{make_case1, make_case2, time_reverse_pair, Case1Kind, Case2Kind};
pub use scalar::{Real, C};

pub type Complex64 = C<f64>;
pub type Mat = ComplexMat<f64>;
pub type Ck = CayleyKlein<f64>;
pub type PulseF = Pulse<f64>;
pub type EnvelopeF = Envelope<f64>;
pub type WindowF = Window<f64>;
pub type ErrorModelF = ErrorModel<f64>;
pub type IntegratorConfigF = IntegratorConfig<f64>;
pub type SequenceResultF = SequenceResult<f64>;
