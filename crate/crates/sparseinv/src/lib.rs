//! Exact certificates for left invertibility of discrete-time linear
//! systems driven by sparse inputs.
//!
//! Given a system `x_{k+1} = A x_k + B u_k`, `y_k = C x_k + D u_k` whose
//! input is known to be s-sparse at every step (at most `s` active channels,
//! possibly different ones each step), this crate decides — exactly, over
//! the rationals — whether the input sequence can be recovered from the
//! output sequence, and produces machine-checkable certificates either way:
//!
//! * a **geometric** certificate built from two arrangements of subspaces
//!   (the weakly unobservable and strongly reachable families) whose
//!   interaction characterizes invertibility, with a concrete confusable
//!   input pair as witness when inversion fails;
//! * a **rank** certificate giving the inherent recovery delay together
//!   with the block-Toeplitz rank table that proves it, and an online
//!   recovery routine driven by that certificate;
//! * a **spectral** certificate in terms of generalized Rosenbrock pencils
//!   restricted to the components of the strongly reachable arrangement,
//!   with the rank-drop locus polynomial as witness.
//!
//! All three roads are implemented independently and cross-checked in the
//! test suite; none of them ever touches floating point.
//!
//! # Crate layout
//!
//! * [`exactlin`] — rational matrices, canonical subspaces, arrangements.
//! * [`sysmodel`] — system data, supports, block matrices, simulation,
//!   and the JSON interchange formats.
//! * [`geom`] — fixpoint computation of the two arrangements and the
//!   geometric certificate.
//! * [`rankcert`] — delay search, rank tables, and exact input recovery.
//! * [`speccert`] — polynomial matrices, Smith-style invariant factors,
//!   and the pencil certificates.
//! * [`report`] / [`cli`] — deterministic reports and the `sparseinv`
//!   command-line front end.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example exact_subspaces      # arrangement calculus tour
//! cargo run --example geometric_certificate
//! cargo run --example rank_delay           # delay + rank table
//! cargo run --example recover_inputs       # round-trip and ambiguity
//! cargo run --example spectral_zeros       # pencils and drop loci
//! cargo run --example periodic_supports    # periodic support classes
//! ```
//!
//! The thin `sparseinv` binary exposes the same machinery as subcommands
//! (`check`, `invariants`, `recover`, `demo`).

pub mod cli;
pub mod demo;
pub mod error;
pub mod exactlin;
pub mod geom;
pub mod rankcert;
pub mod report;
pub mod speccert;
pub mod sysmodel;

pub use error::{Error, Result};
