//! The excited-state iteration.
//!
//! Given the ground state `e^{−S}` and the previous iterate `χ_{n−1}`, one
//! step forms
//!
//! ```text
//! χ̂(x) = 2 ∫_0^x e^{2S(y)} I(y) dy,    I(y) = ∫_y^∞ e^{−2S(z)} χ_{n−1}(z) dz
//! ```
//!
//! and separates `χ_n = ε_n χ̂` by pinning `χ_n(x⁰) = χ_0(x⁰)` at the anchor.
//! In the electrostatic reading `κ = e^{−2S}` is the dielectric, `−ε_n I` the
//! displacement field `D_n` and `ε_n e^{2S} I` the field `E_n = −χ_n'/2`.
//!
//! Only `x ≥ 0` is stored; `χ` is odd and `e^{−S}` even, so full-line
//! integrals are assembled from the half line by parity.

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};
use crate::grid::Grid;
use crate::groundstate::{extrapolate_to_last, GroundState};
use crate::numerics::{
    cumulative_simpson, outer_integrand_from_log, scaled_tail_integrals, tail_closure,
    LogScaledValue,
};

/// Default relative stopping tolerance on successive `ε_n`.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default iteration cap.
pub const DEFAULT_MAX_ITERS: usize = 8;
/// Consecutive non-shrinking steps that count as a stall.
const STALL_STEPS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum TrialFunction {
    /// `χ_0(x) = x`.
    Linear,
    /// `χ_0(x) = x(2 − x)` on `[0, 1]`, `1` beyond.
    SaturatingQuadratic,
    /// Grid-aligned samples on `x ≥ 0`.
    Tabulated(Vec<f64>),
}

impl TrialFunction {
    pub fn tag(&self) -> &'static str {
        match self {
            TrialFunction::Linear => "linear",
            TrialFunction::SaturatingQuadratic => "saturating",
            TrialFunction::Tabulated(_) => "tabulated",
        }
    }

    /// Closed-form value, `None` for tabulated trials.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let x_abs = x.abs();
        let v = match self {
            TrialFunction::Linear => x_abs,
            TrialFunction::SaturatingQuadratic => {
                if x_abs < 1.0 {
                    x_abs * (2.0 - x_abs)
                } else {
                    1.0
                }
            }
            TrialFunction::Tabulated(_) => return None,
        };
        Some(v.copysign(x))
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        let chi = match self {
            TrialFunction::Tabulated(v) => {
                if v.len() != grid.n_points() {
                    return Err(ExciteError::InvalidParameter(format!(
                        "tabulated trial has {} samples, grid has {}",
                        v.len(),
                        grid.n_points()
                    )));
                }
                v.clone()
            }
            other => grid.nodes().into_iter().map(|x| other.eval(x).unwrap_or(0.0)).collect(),
        };
        if chi[0] != 0.0 {
            return Err(ExciteError::InvalidParameter(
                "an odd trial function must vanish at x = 0".into(),
            ));
        }
        if chi.iter().any(|v| !v.is_finite()) {
            return Err(ExciteError::InvalidParameter("non-finite trial sample".into()));
        }
        Ok(chi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationState {
    pub n: usize,
    pub chi: Vec<f64>,
    /// `ε_n`; `None` for the trial state.
    pub eps: Option<f64>,
    /// `D_n / (−ε_n) = I(x)`, the inner tail integral of the step that produced `chi`.
    pub d_field: Vec<f64>,
}

impl IterationState {
    pub fn initial(trial: &TrialFunction, grid: &Grid) -> Result<Self> {
        let chi = trial.sample(grid)?;
        Ok(IterationState { n: 0, d_field: vec![0.0; chi.len()], chi, eps: None })
    }
}

/// The pinning point `x⁰` with its grid index and the value `χ_0(x⁰)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    pub x0: f64,
    pub index: usize,
    pub value: f64,
}

impl Anchor {
    pub fn new(grid: &Grid, x0: f64, chi0: &[f64]) -> Result<Self> {
        let index = grid.node_index(x0).ok_or_else(|| {
            ExciteError::InvalidParameter(format!(
                "anchor x0 = {x0} is not a grid node (h = {})",
                grid.h()
            ))
        })?;
        let value = chi0[index];
        if value == 0.0 || !value.is_finite() {
            return Err(ExciteError::InvalidParameter(format!(
                "trial function vanishes at the anchor x0 = {x0}"
            )));
        }
        Ok(Anchor { x0, index, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    MaxIters,
    Stalled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub eps_sequence: Vec<f64>,
    /// `|ε_n − ε_{n−1}|` for `n ≥ 2`.
    pub delta_sequence: Vec<f64>,
    /// Orthogonality residual of each `χ_n`, `n ≥ 1`.
    pub orth_residuals: Vec<f64>,
    pub status: Status,
    pub anchor_x0: f64,
    pub trial: String,
    pub e_gd: f64,
    /// `E_gd + ε`.
    pub e_odd: f64,
    /// `E_gd + ε/2`, the doublet centre.
    pub e_mean: f64,
    /// Every state from the trial (`n = 0`) onward.
    #[serde(skip)]
    pub iterates: Vec<IterationState>,
}

impl ConvergenceReport {
    pub fn final_eps(&self) -> f64 {
        *self.eps_sequence.last().expect("at least one iteration")
    }
}

/// Scaled tail `Ĩ_i = e^{2S_i} I_i` at every node; the wall node, if any,
/// holds the one-sided limit.
fn scaled_tail(gs: &GroundState, chi_prev: &[f64]) -> Result<Vec<f64>> {
    let n = gs.grid().n_points();
    if chi_prev.len() != n {
        return Err(ExciteError::InvalidParameter(format!(
            "iterate has {} samples, grid has {n}",
            chi_prev.len()
        )));
    }
    let closure = tail_closure(gs, chi_prev)?;
    let start = if gs.has_wall() {
        0.0
    } else {
        outer_integrand_from_log(2.0 * gs.s()[n - 1], closure)
            .map_err(|_| ExciteError::Overflow { stage: "tail closure", x: gs.grid().x_max() })?
    };
    let mut scaled = scaled_tail_integrals(gs.s(), chi_prev, gs.grid().h(), start);
    if gs.has_wall() {
        scaled[n - 1] = extrapolate_to_last(&scaled);
    }
    if let Some(i) = scaled.iter().position(|v| !v.is_finite()) {
        return Err(ExciteError::Overflow { stage: "tail integral", x: gs.grid().x(i) });
    }
    Ok(scaled)
}

/// `I(x_i) = ∫_{x_i}^∞ e^{−2S} χ_prev` at every node, log-scaled.
pub fn tail_integrals(gs: &GroundState, chi_prev: &[f64]) -> Result<Vec<LogScaledValue>> {
    let scaled = scaled_tail(gs, chi_prev)?;
    Ok(scaled
        .iter()
        .zip(gs.s())
        .map(|(v, s)| {
            if *s == f64::INFINITY {
                LogScaledValue::ZERO
            } else {
                LogScaledValue::from_f64(*v).scaled(-2.0 * s)
            }
        })
        .collect())
}

/// `I(x)` at the grid node `x`.
pub fn tail_integral(gs: &GroundState, chi_prev: &[f64], x: f64) -> Result<f64> {
    let i = gs
        .grid()
        .node_index(x)
        .ok_or_else(|| ExciteError::InvalidParameter(format!("{x} is not a grid node")))?;
    Ok(tail_integrals(gs, chi_prev)?[i].value())
}

/// Unnormalized profile `χ̂ = 2 ∫_0^x e^{2S} I` and the log-scaled `I` behind it.
pub fn unnormalized_profile(
    gs: &GroundState,
    chi_prev: &[f64],
) -> Result<(Vec<f64>, Vec<LogScaledValue>)> {
    let scaled = scaled_tail(gs, chi_prev)?;
    let s = gs.s();
    let mut i_log = Vec::with_capacity(s.len());
    let mut outer = Vec::with_capacity(s.len());
    for (i, (v, s_i)) in scaled.iter().zip(s).enumerate() {
        if *s_i == f64::INFINITY {
            // wall: I = 0 exactly, e^{2S} I → its one-sided limit
            i_log.push(LogScaledValue::ZERO);
            outer.push(*v);
            continue;
        }
        let log = LogScaledValue::from_f64(*v).scaled(-2.0 * s_i);
        let field = outer_integrand_from_log(2.0 * s_i, log).map_err(|_| ExciteError::Overflow {
            stage: "outer integrand",
            x: gs.grid().x(i),
        })?;
        i_log.push(log);
        outer.push(field);
    }
    let chi_hat: Vec<f64> =
        cumulative_simpson(&outer, gs.grid().h()).into_iter().map(|v| 2.0 * v).collect();
    if let Some(i) = chi_hat.iter().position(|v| !v.is_finite()) {
        return Err(ExciteError::Overflow { stage: "outer integral", x: gs.grid().x(i) });
    }
    Ok((chi_hat, i_log))
}

/// One step `χ_{n−1} → (ε_n, χ_n)`.
pub fn iterate_once(gs: &GroundState, prev: &IterationState, anchor: &Anchor) -> Result<IterationState> {
    let (chi_hat, i_log) = unnormalized_profile(gs, &prev.chi)?;
    let pinned = chi_hat[anchor.index];
    if pinned == 0.0 || !pinned.is_finite() {
        return Err(ExciteError::DegenerateAnchor { x0: anchor.x0 });
    }
    let eps = anchor.value / pinned;
    let mut chi: Vec<f64> = chi_hat.iter().map(|v| eps * v).collect();
    chi[anchor.index] = anchor.value;
    if !eps.is_finite() || chi.iter().any(|v| !v.is_finite()) {
        return Err(ExciteError::Overflow { stage: "normalization", x: anchor.x0 });
    }
    Ok(IterationState {
        n: prev.n + 1,
        chi,
        eps: Some(eps),
        d_field: i_log.iter().map(LogScaledValue::value).collect(),
    })
}

/// Iterate from `trial` until the relative change in `ε` drops to `tol`,
/// `max_iters` steps are done, or the change stops shrinking.
pub fn run(
    gs: &GroundState,
    trial: &TrialFunction,
    anchor_x0: f64,
    max_iters: usize,
    tol: f64,
) -> Result<ConvergenceReport> {
    if max_iters == 0 {
        return Err(ExciteError::InvalidParameter("max_iters must be at least 1".into()));
    }
    if !(tol >= 0.0) {
        return Err(ExciteError::InvalidParameter(format!("tolerance must be non-negative, got {tol}")));
    }
    let initial = IterationState::initial(trial, gs.grid())?;
    let anchor = Anchor::new(gs.grid(), anchor_x0, &initial.chi)?;

    let mut iterates = vec![initial];
    let mut eps_sequence = Vec::new();
    let mut delta_sequence: Vec<f64> = Vec::new();
    let mut orth_residuals = Vec::new();
    let mut status = Status::MaxIters;
    let mut growing = 0;
    for _ in 0..max_iters {
        let next = iterate_once(gs, iterates.last().expect("non-empty"), &anchor)?;
        let eps = next.eps.expect("iterates carry eps");
        orth_residuals.push(orthogonality_residual(gs, &next.chi));
        if let Some(prev) = eps_sequence.last() {
            let delta: f64 = (eps - prev).abs();
            if let Some(last_delta) = delta_sequence.last() {
                growing = if delta >= *last_delta { growing + 1 } else { 0 };
            }
            delta_sequence.push(delta);
            eps_sequence.push(eps);
            iterates.push(next);
            if delta <= tol * eps.abs() {
                status = Status::Converged;
                break;
            }
            if growing >= STALL_STEPS {
                status = Status::Stalled;
                break;
            }
        } else {
            eps_sequence.push(eps);
            iterates.push(next);
        }
    }
    let eps = *eps_sequence.last().expect("max_iters >= 1");
    Ok(ConvergenceReport {
        eps_sequence,
        delta_sequence,
        orth_residuals,
        status,
        anchor_x0,
        trial: trial.tag().to_string(),
        e_gd: gs.e_gd(),
        e_odd: gs.e_gd() + eps,
        e_mean: gs.e_gd() + 0.5 * eps,
        iterates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// `∫ e^{−2S} χ / ∫ e^{−2S} |χ|` over the full line, with `χ` extended from
/// the half line by the given parity.
pub fn orthogonality_residual_with_parity(gs: &GroundState, chi: &[f64], parity: Parity) -> f64 {
    let h = gs.grid().h();
    let n = chi.len();
    let s_min = gs.s().iter().copied().fold(f64::INFINITY, f64::min);
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, (c, s)) in chi.iter().zip(gs.s()).enumerate() {
        let simpson = if i == 0 || i + 1 == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let a = simpson * h / 3.0 * (-2.0 * (s - s_min)).exp() * c;
        let mirrored = match parity {
            Parity::Odd => -a,
            Parity::Even => a,
        };
        num += a + mirrored;
        den += 2.0 * a.abs();
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Orthogonality of an odd `χ` against the even ground-state weight.
pub fn orthogonality_residual(gs: &GroundState, chi: &[f64]) -> f64 {
    orthogonality_residual_with_parity(gs, chi, Parity::Odd)
}

/// `ψ_ex = e^{−S} χ` on the half line.
pub fn excited_wavefunction(gs: &GroundState, chi: &[f64]) -> Vec<f64> {
    gs.s()
        .iter()
        .zip(chi)
        .map(|(s, c)| if *s == f64::INFINITY { 0.0 } else { (-s).exp() * c })
        .collect()
}
