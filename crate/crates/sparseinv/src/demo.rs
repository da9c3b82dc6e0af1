//! Worked systems used by the examples, the command-line demo, and the
//! test suite.

use crate::exactlin::{Rat, RatMatrix};
use crate::sysmodel::LinSystem;

/// A four-state ring with pairwise-exchange inputs and a three-row readout.
///
/// The drift cyclically shifts the state (`e1 → e2 → e3 → e4 → e1`), each
/// input column moves mass between two adjacent states (so `B` has rank 3
/// with kernel spanned by the all-ones vector), and the readout sees states
/// 1 and 3 directly while state 2 is scaled by `alpha`. Varying the single
/// gain `alpha` flips the system between a sparse-observability failure
/// (`alpha = 0`) and clean recovery with one step of delay (`alpha = 1`),
/// which makes the family a compact showcase for every certificate in the
/// crate.
pub fn exchange_ring(alpha: Rat) -> LinSystem {
    let a = RatMatrix::from_int_rows(&[
        &[0, 0, 0, 1],
        &[1, 0, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
    ]);
    let b = RatMatrix::from_int_rows(&[
        &[-1, 0, 0, 1],
        &[1, -1, 0, 0],
        &[0, 1, -1, 0],
        &[0, 0, 1, -1],
    ]);
    let mut c = RatMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]);
    c.set(1, 1, alpha);
    let d = RatMatrix::zeros(3, 4);
    LinSystem::new(a, b, c, d).expect("fixed shapes")
}

/// The ring with the middle sensor muted (`alpha = 0`): pairs of 1-sparse
/// inputs can produce identical outputs forever, so no recovery delay
/// works.
pub fn muted_ring() -> LinSystem {
    exchange_ring(Rat::from_integer(0.into()))
}

/// The ring with the middle sensor live (`alpha = 1`): 1-sparse inputs are
/// recoverable with a single step of delay.
pub fn live_ring() -> LinSystem {
    exchange_ring(Rat::from_integer(1.into()))
}
