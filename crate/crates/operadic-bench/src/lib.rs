//! Deterministic sample inputs for the benchmarks.

use operadic::{lax_m, mu_closed_form, FlowState, Operation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_operation(dim: usize, degree: usize, seed: u64) -> Operation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Operation::random(dim, degree, &mut rng).expect("valid shape")
}

/// Oscillator state at a generic phase-space point plus its Lax M and ω.
pub fn oscillator_setup() -> (FlowState, Operation, f64) {
    let omega = 1.3;
    let (q, p) = (0.7, -0.4);
    let mu = mu_closed_form(q, p, omega).expect("finite inputs");
    let state = FlowState::new(0.0, q, p, mu.into_operation()).expect("finite inputs");
    (state, lax_m(omega), omega)
}
