//! Closed forms for the box with a central spike: the exact excited state,
//! the first iterate from `χ_0 = x` pinned at `x⁰ = 1`, and the small-`δ`
//! expansions of `ε_1`, `ε_2`, `ε_3`.

use std::f64::consts::PI;

use crate::error::{ExciteError, Result};
use crate::potential::soluble_params;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolubleCase {
    pub delta: f64,
    pub p: f64,
}

impl SolubleCase {
    pub fn new(delta: f64) -> Result<Self> {
        let (p, _) = soluble_params(delta)?;
        Ok(SolubleCase { delta, p })
    }

    pub fn exact_epsilon(&self) -> f64 {
        exact_epsilon(self.delta)
    }

    pub fn exact_chi(&self, x: f64) -> f64 {
        exact_chi_p(self.p, x)
    }
}

/// `(π² − p²)/2 = πδ − δ²/2`.
pub fn exact_epsilon(delta: f64) -> f64 {
    PI * delta - 0.5 * delta * delta
}

fn exact_chi_p(p: f64, x: f64) -> f64 {
    let u = 1.0 - x;
    if u <= 0.0 {
        PI / p
    } else if x > 0.5 {
        // sin πx = sin π(1 − x); avoids cancellation near the wall
        (PI * u).sin() / (p * u).sin()
    } else {
        (PI * x).sin() / (p * u).sin()
    }
}

/// `χ(x) = sin πx / sin p(1 − x)` on `[0, 1]`, with the limit `π/p` at the wall.
pub fn exact_chi(delta: f64, x: f64) -> Result<f64> {
    let (p, _) = soluble_params(delta)?;
    check_unit(x)?;
    Ok(exact_chi_p(p, x))
}

fn check_unit(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(ExciteError::OutOfDomain { x, edge: 1.0 });
    }
    Ok(())
}

/// `sin px − sin p [ (x/p) sin p(1−x) + x² cos p(1−x) ]`, which equals
/// `2p sin p · χ̂_1(x) · sin p(1 − x)` for the first unnormalized iterate.
pub fn chi1_closed_form(delta: f64, x: f64) -> Result<f64> {
    let (p, _) = soluble_params(delta)?;
    check_unit(x)?;
    let u = p * (1.0 - x);
    Ok((p * x).sin() - p.sin() * (x / p * u.sin() + x * x * u.cos()))
}

/// `ε_1 = 2p² / (1 − p cot p)`.
pub fn epsilon1_closed_form(delta: f64) -> Result<f64> {
    let (p, _) = soluble_params(delta)?;
    Ok(2.0 * p * p / (1.0 - p * p.cos() / p.sin()))
}

/// Small-`δ` expansion of `ε_n` through `δ⁴`.
///
/// The `δ⁴` coefficient of `ε_2` is `1/3 + 2/π²`; that is the value the exact
/// nested integrals converge to, and it reproduces `ε_2(0.1) = 0.31348`.
pub fn epsilon_series(delta: f64, order: u32) -> Result<f64> {
    let d = delta;
    let (d2, d3, d4) = (d * d, d * d * d, d * d * d * d);
    match order {
        1 => Ok(2.0 * PI * d - 4.0 * d2 + 2.0 * (1.0 / PI + PI / 3.0) * d3 - 2.0 * d4),
        2 => Ok(PI * d + (1.0 / PI - PI / 3.0) * d3 + (1.0 / 3.0 + 2.0 / (PI * PI)) * d4),
        3 => Ok(PI * d - 0.5 * d2 + (PI * PI - 6.0) / (12.0 * PI) * d3
            - 15.0 / (8.0 * PI * PI) * d4),
        _ => Err(ExciteError::InvalidParameter(format!(
            "series available for orders 1, 2, 3; got {order}"
        ))),
    }
}
