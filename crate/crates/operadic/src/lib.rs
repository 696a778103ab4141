//! Numerical endomorphism operads over `R^d` and operadic Lax dynamics.
//!
//! The building block is [`Operation`], a degree-`n` multilinear map
//! `V ⊗ ... ⊗ V → V` for `V = R^d`, stored as a dense coefficient tensor.
//! [`operad`] provides graded partial and total composition and the
//! Gerstenhaber bracket; [`axioms`] holds residual checkers for the operad
//! laws; [`lax`] integrates flows of the form `dL/dt = [M, L]`; and
//! [`oscillator`] instantiates everything for the harmonic oscillator, whose
//! time-dependent bilinear product `μ(t)` obeys an operadic Lax equation.

pub mod axioms;
pub mod error;
pub mod lax;
pub mod operad;
pub mod oscillator;

pub use axioms::{
    check_composition_relations, check_graded_antisymmetry, check_graded_jacobi, check_unit_laws,
    CheckOutcome, RelationCase, RelationCheck,
};
pub use error::Error;
pub use lax::{
    coupled_rhs, hamiltonian_rhs, integrate, lax_rhs, rk4_step, trace_power, FlowDerivative,
    FlowState, InvariantDrift, InvariantReport, LaxPair, Probe, Trajectory, TrajectoryPoint,
    BLOW_UP_LIMIT,
};
pub use operad::{Operation, Vector};
pub use oscillator::{
    ab_auxiliaries, check_jacobi_structure_constants, hamiltonian, lax_l, lax_m, mu_closed_form,
    structure_ode_rhs, explicit_rhs_dim2, verify_cramer_identities, BinaryStructure, CramerReport,
    OscParams, SqrtAuxiliaries,
};
