//! Simulation of faithful multipartite entanglement sharing over noisy channels.
//!
//! The crate is organised bottom-up:
//!
//! * [`qcore`]: dense complex states, Kraus channels, fidelities, Schmidt
//!   decompositions, partial trace/transpose and Haar sampling.
//! * [`states`]: Bell, generalized Bell, isotropic and GHZ states.
//! * [`twirl`]: the `U ⊗ U*` twirl, exact and sampled.
//! * [`teleport`]: qudit teleportation through an arbitrary resource state.
//! * [`csscode`]: GF(2) linear algebra and CSS code construction/decoding.
//! * [`purify`]: Monte Carlo simulation of CSS-code entanglement purification.
//! * [`bounds`]: closed-form fidelity bounds and a verification harness.
//!
//! Subsystem ordering is fixed crate-wide: in a composite system the leftmost
//! subsystem is the most significant digit of the flat basis index, and a
//! basis state `|j⟩` of a `d`-level system is the `j`-th standard basis vector.

pub mod bounds;
pub mod csscode;
pub mod error;
pub mod purify;
pub mod qcore;
pub mod states;
pub mod teleport;
pub mod twirl;

pub use error::{Error, Result};
