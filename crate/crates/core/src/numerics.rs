//! Quadrature on the uniform half-line grid and the log-domain handling of
//! the `e^{2S(y)} · I(y)` product.
//!
//! The inner tail integral `I(y) = ∫_y^∞ e^{−2S} χ` is never formed raw.
//! It is accumulated right to left in the scaled form `Ĩ(y) = e^{2S(y)} I(y)`,
//! where every exponential is of a difference `S(z) − S(y)` with `z ≥ y`.
//! For decaying tails those differences are non-negative, so nothing can
//! overflow regardless of how large `2S` gets.
//!
//! Cumulative Simpson scheme (fixed, the regression values depend on it):
//! even offsets from the start node accumulate whole Simpson panels
//! `h/3 (f0 + 4 f1 + f2)` (summed, then scaled); an odd offset adds the quadratic half-panel
//! `h/12 (5 f0 + 8 f1 − f2)` on top of the preceding even node. At even
//! offsets the running value is bit-identical to composite Simpson.

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};
use crate::grid::Grid;
use crate::groundstate::GroundState;

/// Largest exponent passed to `exp` before it is treated as an overflow.
pub const EXP_LIMIT: f64 = 700.0;

/// `sign · exp(log_magnitude)`; zero is `sign = 0` with a `−∞` magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogScaledValue {
    pub log_magnitude: f64,
    pub sign: i8,
}

impl LogScaledValue {
    pub const ZERO: LogScaledValue = LogScaledValue { log_magnitude: f64::NEG_INFINITY, sign: 0 };

    pub fn new(log_magnitude: f64, sign: i8) -> Self {
        if sign == 0 || log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogScaledValue { log_magnitude, sign: sign.signum() }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogScaledValue { log_magnitude: v.abs().ln(), sign: if v > 0.0 { 1 } else { -1 } }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Plain value; underflows to zero and overflows to infinity like `exp`.
    pub fn value(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::from(self.sign) * self.log_magnitude.exp()
        }
    }

    /// Multiply by `e^{shift}`.
    pub fn scaled(&self, shift: f64) -> Self {
        if self.is_zero() {
            *self
        } else {
            LogScaledValue { log_magnitude: self.log_magnitude + shift, sign: self.sign }
        }
    }
}

/// Composite Simpson over nodes `a..=b`.
pub fn integrate_panel(values: &[f64], grid: &Grid, a: usize, b: usize) -> Result<f64> {
    let n = grid.n_points();
    if b <= a || b >= n || values.len() != n || (b - a) % 2 != 0 {
        return Err(ExciteError::PanelIndex { a, b, n: values.len().min(n) });
    }
    let h = grid.h();
    let mut acc = 0.0;
    let mut i = a;
    while i < b {
        acc += values[i] + 4.0 * values[i + 1] + values[i + 2];
        i += 2;
    }
    Ok(acc * h / 3.0)
}

/// Running integral `∫_{x_0}^{x_i} f` at every node.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    // running sum of panel brackets, scaled once per node
    let mut panels = 0.0;
    let mut i = 0;
    while i + 2 < n {
        let (f0, f1, f2) = (values[i], values[i + 1], values[i + 2]);
        out[i + 1] = out[i] + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2);
        panels += f0 + 4.0 * f1 + f2;
        out[i + 2] = panels * h / 3.0;
        i += 2;
    }
    out
}

/// Scaled tail integrals `Ĩ_i = ∫_{x_i}^∞ e^{−2(S(z) − S_i)} χ(z) dz`.
///
/// `tail` is `Ĩ` at the last node (the closure beyond the grid). Nodes with
/// `S = +∞` (a hard wall) contribute zero weight. The value at such a node is
/// whatever `tail` says; callers replace it by its one-sided limit.
pub fn scaled_tail_integrals(s: &[f64], chi: &[f64], h: f64, tail: f64) -> Vec<f64> {
    let n = s.len();
    assert_eq!(n, chi.len());
    assert!(n >= 3 && n % 2 == 1);
    let mut out = vec![0.0; n];
    out[n - 1] = tail;
    let decay = |from: usize, to: usize| (-2.0 * (s[to] - s[from])).exp();
    let mut i = n - 1;
    while i >= 2 {
        let (i0, i1, i2) = (i - 2, i - 1, i);
        let w01 = decay(i0, i1);
        let w02 = decay(i0, i2);
        out[i0] = w02 * out[i2] + h / 3.0 * (chi[i0] + 4.0 * w01 * chi[i1] + w02 * chi[i2]);
        // relative to S at x_{i1}: weights of x_{i0}, x_{i2}
        let w10 = decay(i1, i0);
        let w12 = decay(i1, i2);
        out[i1] = w12 * out[i2] + h / 12.0 * (-w10 * chi[i0] + 8.0 * chi[i1] + 5.0 * w12 * chi[i2]);
        i -= 2;
    }
    out
}

/// Value at the node following `f[0..4]` (equally spaced) by cubic extrapolation.
pub fn extrapolate_cubic(f: [f64; 4]) -> f64 {
    4.0 * f[3] - 6.0 * f[2] + 4.0 * f[1] - f[0]
}

/// Cubic Lagrange interpolation through four equally spaced samples at offsets
/// 0, 1, 2, 3 (in units of the spacing), evaluated at offset `t`.
pub fn lagrange_cubic(f: [f64; 4], t: f64) -> f64 {
    let l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    let l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    let l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    let l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    l0 * f[0] + l1 * f[1] + l2 * f[2] + l3 * f[3]
}

/// `sign · exp(2S + log|I|)` with a single exponentiation.
pub fn outer_integrand_from_log(two_s: f64, i_log: LogScaledValue) -> Result<f64> {
    if i_log.is_zero() {
        return Ok(0.0);
    }
    let arg = two_s + i_log.log_magnitude;
    if !(arg.is_finite() && arg <= EXP_LIMIT) {
        return Err(ExciteError::Overflow { stage: "outer integrand", x: f64::NAN });
    }
    Ok(f64::from(i_log.sign) * arg.exp())
}

/// The electric-field analog `e^{2S(y)} I(y)` at coordinate `y`, with `S(y)`
/// taken from the ground-state samples.
pub fn weighted_outer_integrand(gs: &GroundState, i_log: LogScaledValue, y: f64) -> Result<f64> {
    let two_s = -gs.log_weight(y)?.log_magnitude;
    outer_integrand_from_log(two_s, i_log).map_err(|e| match e {
        ExciteError::Overflow { stage, .. } => ExciteError::Overflow { stage, x: y },
        other => other,
    })
}

/// `∫_{x_max}^∞ e^{−2S} χ` from the leading Watson term
/// `e^{−2S(x_max)} χ(x_max) / (2 S'(x_max))`. Zero for a hard wall.
pub fn tail_closure(gs: &GroundState, chi_prev: &[f64]) -> Result<LogScaledValue> {
    if gs.has_wall() {
        return Ok(LogScaledValue::ZERO);
    }
    let last = gs.grid().n_points() - 1;
    let s_prime = gs.s_prime()[last];
    if !(s_prime > 0.0) {
        return Err(ExciteError::NonDecayingTail { x_max: gs.grid().x_max(), s_prime });
    }
    let chi = chi_prev[last];
    Ok(LogScaledValue::from_f64(chi / (2.0 * s_prime)).scaled(-2.0 * gs.s()[last]))
}
