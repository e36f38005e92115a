//! Iterative construction of the lowest odd excited state of a symmetric
//! one-dimensional Schrödinger problem from its known ground state.
//!
//! With `ψ_gd = e^{−S}` and `ψ_ex = e^{−S} χ`, the excitation energy
//! `ε = E_ex − E_gd` and the odd factor `χ` are refined by
//! `−½ (e^{−2S} χ_n')' = ε_n e^{−2S} χ_{n−1}`, pinning `χ_n` at an anchor.

pub mod app;
pub mod error;
pub mod excite;
pub mod grid;
pub mod groundstate;
pub mod io;
pub mod numerics;
pub mod potential;
pub mod reference;
pub mod soluble;

pub use error::{ExciteError, Result};
pub use excite::{
    excited_wavefunction, iterate_once, orthogonality_residual, run, tail_integral, Anchor,
    ConvergenceReport, IterationState, Status, TrialFunction,
};
pub use grid::Grid;
pub use groundstate::{soluble_groundstate, solve_groundstate_numeric, GroundState};
pub use numerics::LogScaledValue;
pub use potential::{eval_quartic, soluble_params, Potential};
