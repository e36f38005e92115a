#![allow(dead_code)]

use excite_iter::groundstate::{default_quartic_bracket, default_quartic_grid, DEFAULT_ENERGY_TOL};
use excite_iter::{soluble_groundstate, solve_groundstate_numeric, GroundState, Grid, Potential};
use nalgebra::{DMatrix, SymmetricEigen};

pub fn box_gs(delta: f64) -> GroundState {
    soluble_groundstate(delta, Grid::new(1.0, 16001).unwrap()).unwrap()
}

pub fn quartic_gs_on(g: f64, grid: Grid) -> GroundState {
    solve_groundstate_numeric(Potential::quartic(g).unwrap(), grid, default_quartic_bracket(g), DEFAULT_ENERGY_TOL)
        .unwrap()
}

pub fn quartic_gs(g: f64) -> GroundState {
    quartic_gs_on(g, default_quartic_grid(g).unwrap())
}

/// Lowest two eigenvalues of the quartic well from a dense five-point
/// finite-difference Hamiltonian on `[−l, l]` with Dirichlet ends.
pub fn dense_levels(g: f64, l: f64, h: f64) -> (f64, f64) {
    let n = (2.0 * l / h).round() as usize - 1;
    let c = 1.0 / (24.0 * h * h);
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let x = -l + (i + 1) as f64 * h;
        m[(i, i)] = 30.0 * c + 0.5 * g * g * (x * x - 1.0).powi(2);
        if i + 1 < n {
            m[(i, i + 1)] = -16.0 * c;
            m[(i + 1, i)] = -16.0 * c;
        }
        if i + 2 < n {
            m[(i, i + 2)] = c;
            m[(i + 2, i)] = c;
        }
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    (ev[0], ev[1])
}

/// `dense_levels` at `h` and `h/2`, Richardson-extrapolated for an `h⁴` error.
pub fn dense_levels_extrapolated(g: f64, l: f64, h: f64) -> (f64, f64) {
    let (a0, a1) = dense_levels(g, l, h);
    let (b0, b1) = dense_levels(g, l, 0.5 * h);
    (b0 + (b0 - a0) / 15.0, b1 + (b1 - a1) / 15.0)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
