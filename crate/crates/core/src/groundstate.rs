//! Ground-state profiles `ψ_gd = e^{−S}` on the half-line.
//!
//! The box problem has the closed form `e^{−S} = sin p(1 − x)`. The quartic
//! well is solved by shooting: RK4 on `(ψ, ψ')` outward from the origin with
//! `ψ'(0) = 0` and inward from `x_max` seeded on the decaying WKB branch,
//! matched on the log-derivative near the well minimum. Each step is
//! renormalized to `ψ = 1`, so only `S` and `S' = −ψ'/ψ` are ever stored and
//! nothing overflows however deep the tail.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};
use crate::grid::Grid;
use crate::numerics::{extrapolate_cubic, lagrange_cubic, LogScaledValue};
use crate::potential::{soluble_params, Potential};

/// Spacing of the default quartic grid.
pub const DEFAULT_SPACING: f64 = 2.5e-4;
/// Node count of the default box grid on `[0, 1]`.
pub const DEFAULT_POINTS: usize = 16001;
/// Bisection tolerance (relative, on `E`) for the shooting solver.
pub const DEFAULT_ENERGY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    potential: Potential,
    grid: Grid,
    s: Vec<f64>,
    s_prime: Vec<f64>,
    e_gd: f64,
    gauge: f64,
}

impl GroundState {
    /// Assemble from samples. The box variant must have `S = +∞` at its last
    /// node (the wall at `x = 1`); every other sample must be finite.
    pub fn from_samples(
        potential: Potential,
        grid: Grid,
        s: Vec<f64>,
        s_prime: Vec<f64>,
        e_gd: f64,
    ) -> Result<Self> {
        let n = grid.n_points();
        if s.len() != n || s_prime.len() != n {
            return Err(ExciteError::Malformed(format!(
                "ground state has {} / {} samples for a {n}-point grid",
                s.len(),
                s_prime.len()
            )));
        }
        let wall = matches!(potential, Potential::DeltaBox { .. });
        if wall && (grid.x_max() - 1.0).abs() > 1e-12 {
            return Err(ExciteError::InvalidGrid("box grids must end at the wall x = 1".into()));
        }
        let finite_end = if wall { n - 1 } else { n };
        for i in 0..finite_end {
            if !s[i].is_finite() || !s_prime[i].is_finite() {
                return Err(ExciteError::Malformed(format!("non-finite S sample at node {i}")));
            }
        }
        if wall && s[n - 1] != f64::INFINITY {
            return Err(ExciteError::Malformed("box ground state must vanish at the wall".into()));
        }
        if !e_gd.is_finite() {
            return Err(ExciteError::Malformed("non-finite ground-state energy".into()));
        }
        let gauge = s[0];
        Ok(GroundState { potential, grid, s, s_prime, e_gd, gauge })
    }

    pub fn potential(&self) -> Potential {
        self.potential
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn s_prime(&self) -> &[f64] {
        &self.s_prime
    }

    pub fn e_gd(&self) -> f64 {
        self.e_gd
    }

    /// `S(0)`, the additive normalization of `S`.
    pub fn gauge(&self) -> f64 {
        self.gauge
    }

    /// True when the last node is a hard wall where `e^{−S}` vanishes.
    pub fn has_wall(&self) -> bool {
        matches!(self.potential, Potential::DeltaBox { .. })
    }

    /// Index of the last node with finite `S`.
    pub fn last_finite(&self) -> usize {
        let n = self.grid.n_points();
        if self.has_wall() {
            n - 2
        } else {
            n - 1
        }
    }

    /// `S → S + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut out = self.clone();
        for v in &mut out.s {
            *v += c;
        }
        out.gauge += c;
        out
    }

    /// Same state in the `S(0) = 0` gauge.
    pub fn normalized(&self) -> Self {
        self.shifted(-self.gauge)
    }

    /// `e^{−S}` at every node (zero at a wall).
    pub fn psi(&self) -> Vec<f64> {
        self.s.iter().map(|s| (-s).exp()).collect()
    }

    /// `log κ = −2S(x)` for the dielectric `κ = e^{−2S}`, as a log-scaled
    /// weight. Exact at nodes, cubic in between. At a hard wall the weight is
    /// the zero sentinel.
    pub fn log_weight(&self, x: f64) -> Result<LogScaledValue> {
        let edge = self.grid.x_max();
        if !(x >= 0.0 && x <= edge * (1.0 + 1e-14)) {
            return Err(ExciteError::OutOfDomain { x, edge });
        }
        if let Some(i) = self.grid.node_index(x) {
            let s = self.s[i];
            return Ok(if s == f64::INFINITY {
                LogScaledValue::ZERO
            } else {
                LogScaledValue::new(-2.0 * s, 1)
            });
        }
        let last = self.last_finite();
        if last < 3 {
            return Err(ExciteError::InvalidGrid("too few finite nodes to interpolate".into()));
        }
        let t = x / self.grid.h();
        let left = t.floor() as usize;
        let start = left.saturating_sub(1).min(last - 3);
        let f = [self.s[start], self.s[start + 1], self.s[start + 2], self.s[start + 3]];
        let s = lagrange_cubic(f, t - start as f64);
        Ok(LogScaledValue::new(-2.0 * s, 1))
    }
}

/// Analytic box ground state `e^{−S} = sin p(1 − x)` (unnormalized, so
/// `S(0) = −ln sin δ`), `E_gd = p²/2`.
pub fn soluble_groundstate(delta: f64, grid: Grid) -> Result<GroundState> {
    if (grid.x_max() - 1.0).abs() > 1e-12 {
        return Err(ExciteError::InvalidGrid(format!(
            "the box ground state lives on [0, 1]; got x_max = {}",
            grid.x_max()
        )));
    }
    let (p, _) = soluble_params(delta)?;
    let n = grid.n_points();
    let mut s = Vec::with_capacity(n);
    let mut s_prime = Vec::with_capacity(n);
    for i in 0..n {
        if i + 1 == n {
            s.push(f64::INFINITY);
            s_prime.push(f64::INFINITY);
        } else {
            let u = p * (1.0 - grid.x(i));
            s.push(-u.sin().ln());
            s_prime.push(p * u.cos() / u.sin());
        }
    }
    GroundState::from_samples(Potential::DeltaBox { delta }, grid, s, s_prime, 0.5 * p * p)
}

/// Default `x_max` for the quartic well: smallest multiple of 0.4 (at least 2)
/// where the WKB estimate `2g(x³/3 − x + 2/3)` of `2S(x) − 2S(1)` reaches 80.
/// Multiples of 0.4 keep `x = 0.5` and `x = 1` on the default-spacing grid.
pub fn default_quartic_x_max(g: f64) -> f64 {
    let gap = |x: f64| 2.0 * g * (x * x * x / 3.0 - x + 2.0 / 3.0);
    let mut k = 5u32;
    while gap(0.4 * f64::from(k)) < 80.0 {
        k += 1;
    }
    (f64::from(k) * 0.4 * 1e9).round() / 1e9
}

pub fn default_quartic_grid(g: f64) -> Result<Grid> {
    Grid::with_spacing(default_quartic_x_max(g), DEFAULT_SPACING)
}

/// Energy bracket holding only the even ground state of the quartic well.
pub fn default_quartic_bracket(g: f64) -> (f64, f64) {
    (0.0, 1.25 * g + 0.5)
}

/// Bracket for the box ground state: `p ∈ [π/2, π)` so `E_gd < π²/2`.
pub fn default_box_bracket() -> (f64, f64) {
    (0.0, 0.5 * PI * PI)
}

/// Shooting eigensolver for the even ground state.
///
/// Quartic: log-derivative matching at the node nearest `x = 1`.
/// Box: the spike fixes `ψ'(0⁺) = λ ψ(0)` and the wall demands `ψ(1) = 0`.
/// The result is in the `S(0) = 0` gauge.
pub fn solve_groundstate_numeric(
    potential: Potential,
    grid: Grid,
    bracket: (f64, f64),
    tol: f64,
) -> Result<GroundState> {
    if !(tol >= 1e-12) {
        return Err(ExciteError::InvalidParameter(format!("energy tolerance {tol} below 1e-12")));
    }
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(ExciteError::InvalidParameter(format!("bad energy bracket [{lo}, {hi}]")));
    }
    match potential {
        Potential::Quartic { g } => solve_quartic(g, grid, lo, hi, tol),
        Potential::DeltaBox { delta } => solve_box(delta, grid, lo, hi, tol),
    }
}

fn bisect(mut lo: f64, mut hi: f64, tol: f64, mut above: impl FnMut(f64) -> bool) -> Result<f64> {
    let (lo0, hi0) = (lo, hi);
    if above(lo) || !above(hi) {
        return Err(ExciteError::NoEigenvalue { lo: lo0, hi: hi0 });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= tol * mid.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

struct Sweep {
    s: Vec<f64>,
    y: Vec<f64>,
    node_at: Option<usize>,
}

/// RK4 sweep of `ψ'' = 2(V − E)ψ` between nodes `from` and `to` (either
/// direction), renormalizing to `ψ = 1` after every step. Records `S` (relative
/// to `S[from] = 0`) and `y = S' = −ψ'/ψ` at each visited node, in grid order.
fn sweep(v: &impl Fn(f64) -> f64, e: f64, grid: &Grid, from: usize, to: usize, y0: f64) -> Sweep {
    let len = from.abs_diff(to) + 1;
    let mut s = vec![0.0; len];
    let mut y = vec![0.0; len];
    let forward = to >= from;
    let h = if forward { grid.h() } else { -grid.h() };
    let slot = |k: usize| if forward { k } else { len - 1 - k };
    y[slot(0)] = y0;
    let f = |x: f64, psi: f64, dpsi: f64| (dpsi, 2.0 * (v(x) - e) * psi);
    let mut node_at = None;
    let (mut s_cur, mut y_cur) = (0.0, y0);
    for k in 1..len {
        let idx = if forward { from + k - 1 } else { from - (k - 1) };
        let x = grid.x(idx);
        let (p0, d0) = (1.0, -y_cur);
        let (k1p, k1d) = f(x, p0, d0);
        let (k2p, k2d) = f(x + 0.5 * h, p0 + 0.5 * h * k1p, d0 + 0.5 * h * k1d);
        let (k3p, k3d) = f(x + 0.5 * h, p0 + 0.5 * h * k2p, d0 + 0.5 * h * k2d);
        let (k4p, k4d) = f(x + h, p0 + h * k3p, d0 + h * k3d);
        let p1 = p0 + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        let d1 = d0 + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        if !(p1 > 0.0) {
            node_at.get_or_insert(if forward { idx + 1 } else { idx - 1 });
            // keep going on |ψ| so the sweep stays defined
        }
        s_cur -= p1.abs().ln();
        y_cur = -d1 / p1;
        s[slot(k)] = s_cur;
        y[slot(k)] = y_cur;
    }
    Sweep { s, y, node_at }
}

fn quartic_match_index(grid: &Grid) -> Result<usize> {
    let n = grid.n_points();
    let i = (1.0 / grid.h()).round() as usize;
    if grid.x_max() <= 1.5 || i + 2 >= n {
        return Err(ExciteError::InvalidGrid(format!(
            "quartic domain must extend well past the minimum at x = 1 (x_max = {})",
            grid.x_max()
        )));
    }
    Ok(i.max(1))
}

fn wkb_log_derivative(g: f64, e: f64, x: f64) -> Result<f64> {
    let excess = crate::potential::eval_quartic(g, x) - e;
    if !(excess > 0.0) {
        return Err(ExciteError::InvalidGrid(format!(
            "x_max = {x} is inside the classically allowed region for E = {e}"
        )));
    }
    let dv = 2.0 * g * g * x * (x * x - 1.0);
    Ok((2.0 * excess).sqrt() + dv / (4.0 * excess))
}

struct QuarticShot {
    mismatch: f64,
    outward: Sweep,
    inward: Sweep,
}

fn shoot_quartic(g: f64, e: f64, grid: &Grid, m: usize) -> Result<QuarticShot> {
    let v = move |x: f64| crate::potential::eval_quartic(g, x);
    let last = grid.n_points() - 1;
    let outward = sweep(&v, e, grid, 0, m, 0.0);
    let inward = sweep(&v, e, grid, last, m, wkb_log_derivative(g, e, grid.x_max())?);
    let mismatch = outward.y[outward.y.len() - 1] - inward.y[0];
    Ok(QuarticShot { mismatch, outward, inward })
}

fn solve_quartic(g: f64, grid: Grid, lo: f64, hi: f64, tol: f64) -> Result<GroundState> {
    let m = quartic_match_index(&grid)?;
    // The bracket must sit below V(x_max) for the WKB seed to make sense.
    wkb_log_derivative(g, hi, grid.x_max())?;
    let mut failure = None;
    let e = bisect(lo, hi, tol, |e| match shoot_quartic(g, e, &grid, m) {
        Ok(shot) => shot.outward.node_at.is_some() || shot.mismatch >= 0.0,
        Err(err) => {
            failure.get_or_insert(err);
            true
        }
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    let shot = shoot_quartic(g, e, &grid, m)?;
    let scale = 1.0 + shot.outward.y.iter().fold(0.0f64, |a, y| a.max(y.abs()));
    if !(shot.mismatch.abs() <= 1e-6 * scale) {
        // converged onto a pole of the mismatch, not a root
        return Err(ExciteError::NoEigenvalue { lo, hi });
    }
    if let Some(i) = shot.outward.node_at.or(shot.inward.node_at.map(|k| k + m)) {
        return Err(ExciteError::WrongParity { energy: e, x: grid.x(i) });
    }
    let n = grid.n_points();
    let mut s = shot.outward.s.clone();
    let mut s_prime = shot.outward.y.clone();
    let join = s[m] - shot.inward.s[0];
    s_prime[m] = 0.5 * (s_prime[m] + shot.inward.y[0]);
    s.extend(shot.inward.s[1..].iter().map(|v| v + join));
    s_prime.extend_from_slice(&shot.inward.y[1..]);
    debug_assert_eq!(s.len(), n);
    GroundState::from_samples(Potential::Quartic { g }, grid, s, s_prime, e)
}

/// Plain RK4 for the box: `ψ(0) = 1`, `ψ'(0⁺) = λ`, free motion to the wall.
fn box_sweep(lambda: f64, e: f64, grid: &Grid) -> (Vec<f64>, Vec<f64>) {
    let n = grid.n_points();
    let h = grid.h();
    let k2 = 2.0 * e;
    let mut psi = vec![0.0; n];
    let mut dpsi = vec![0.0; n];
    psi[0] = 1.0;
    dpsi[0] = lambda;
    for i in 1..n {
        let (p0, d0) = (psi[i - 1], dpsi[i - 1]);
        let f = |p: f64, d: f64| (d, -k2 * p);
        let (a1, b1) = f(p0, d0);
        let (a2, b2) = f(p0 + 0.5 * h * a1, d0 + 0.5 * h * b1);
        let (a3, b3) = f(p0 + 0.5 * h * a2, d0 + 0.5 * h * b2);
        let (a4, b4) = f(p0 + h * a3, d0 + h * b3);
        psi[i] = p0 + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        dpsi[i] = d0 + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
    }
    (psi, dpsi)
}

fn solve_box(delta: f64, grid: Grid, lo: f64, hi: f64, tol: f64) -> Result<GroundState> {
    if (grid.x_max() - 1.0).abs() > 1e-12 {
        return Err(ExciteError::InvalidGrid("box grids must end at the wall x = 1".into()));
    }
    let (_, lambda) = soluble_params(delta)?;
    let n = grid.n_points();
    let e = bisect(lo, hi, tol, |e| {
        let (psi, _) = box_sweep(lambda, e, &grid);
        psi.iter().any(|p| *p <= 0.0)
    })?;
    let (psi, dpsi) = box_sweep(lambda, e, &grid);
    if let Some(i) = psi[..n - 1].iter().position(|p| *p <= 0.0) {
        return Err(ExciteError::WrongParity { energy: e, x: grid.x(i) });
    }
    let mut s: Vec<f64> = psi.iter().map(|p| -p.ln()).collect();
    let mut s_prime: Vec<f64> = psi.iter().zip(&dpsi).map(|(p, d)| -d / p).collect();
    s[n - 1] = f64::INFINITY;
    s_prime[n - 1] = f64::INFINITY;
    GroundState::from_samples(Potential::DeltaBox { delta }, grid, s, s_prime, e)
}

/// One-sided cubic extrapolation of interior samples to the last node.
pub(crate) fn extrapolate_to_last(values: &[f64]) -> f64 {
    let n = values.len();
    extrapolate_cubic([values[n - 5], values[n - 4], values[n - 3], values[n - 2]])
}
