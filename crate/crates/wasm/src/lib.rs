//! wasm-bindgen entry points for the browser demo. Each returns a JSON string
//! with curves thinned to at most `MAX_SAMPLES` points.

use excite_iter::groundstate::{default_quartic_bracket, default_quartic_x_max};
use excite_iter::soluble::exact_epsilon;
use excite_iter::{
    excited_wavefunction, run, soluble_groundstate, solve_groundstate_numeric, ConvergenceReport,
    GroundState, Grid, Potential, TrialFunction,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_SAMPLES: usize = 400;
const BOX_POINTS: usize = 4001;
const QUARTIC_SPACING: f64 = 1e-3;
const TOL: f64 = 1e-10;

#[derive(Serialize)]
struct Curves {
    x: Vec<f64>,
    chi: Vec<Vec<f64>>,
    eps: Vec<f64>,
    e_gd: f64,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_eps: Option<f64>,
}

#[derive(Serialize)]
struct Wavefunctions {
    x: Vec<f64>,
    psi_gd: Vec<f64>,
    psi_ex: Vec<f64>,
    e_gd: f64,
    e_odd: f64,
}

fn stride(n: usize) -> usize {
    n.div_ceil(MAX_SAMPLES)
}

fn thin(v: &[f64]) -> Vec<f64> {
    let k = stride(v.len());
    let mut out: Vec<f64> = v.iter().step_by(k).copied().collect();
    if (v.len() - 1) % k != 0 {
        out.push(v[v.len() - 1]);
    }
    out
}

fn curves(gs: &GroundState, report: &ConvergenceReport, exact_eps: Option<f64>) -> Curves {
    Curves {
        x: thin(&gs.grid().nodes()),
        chi: report.iterates.iter().map(|s| thin(&s.chi)).collect(),
        eps: report.eps_sequence.clone(),
        e_gd: gs.e_gd(),
        status: format!("{:?}", report.status),
        exact_eps,
    }
}

fn quartic_groundstate(g: f64) -> excite_iter::Result<GroundState> {
    let grid = Grid::with_spacing(default_quartic_x_max(g), QUARTIC_SPACING)?;
    solve_groundstate_numeric(Potential::quartic(g)?, grid, default_quartic_bracket(g), 1e-12)
}

fn trial(linear: bool) -> TrialFunction {
    if linear {
        TrialFunction::Linear
    } else {
        TrialFunction::SaturatingQuadratic
    }
}

fn to_js<T: Serialize>(r: excite_iter::Result<T>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// χ_n curves for the spike-in-a-box case with trial `χ_0 = x`.
#[wasm_bindgen]
pub fn soluble_curves(delta: f64, anchor: f64, iters: usize) -> Result<String, JsError> {
    to_js((|| {
        let gs = soluble_groundstate(delta, Grid::new(1.0, BOX_POINTS)?)?;
        let report = run(&gs, &TrialFunction::Linear, anchor, iters, TOL)?;
        Ok(curves(&gs, &report, Some(exact_epsilon(delta))))
    })())
}

/// χ_n curves for the quartic double well.
#[wasm_bindgen]
pub fn quartic_curves(g: f64, anchor: f64, iters: usize, linear_trial: bool) -> Result<String, JsError> {
    to_js((|| {
        let gs = quartic_groundstate(g)?;
        let report = run(&gs, &trial(linear_trial), anchor, iters, TOL)?;
        Ok(curves(&gs, &report, None))
    })())
}

/// Ground and first excited wavefunctions of the quartic well, both
/// normalized to unit peak.
#[wasm_bindgen]
pub fn quartic_wavefunctions(g: f64, iters: usize) -> Result<String, JsError> {
    to_js((|| {
        let gs = quartic_groundstate(g)?;
        let report = run(&gs, &TrialFunction::SaturatingQuadratic, 1.0, iters, TOL)?;
        let chi = &report.iterates.last().expect("trial is always present").chi;
        let unit_peak = |v: Vec<f64>| {
            let m = v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
            v.into_iter().map(|y| y / m).collect::<Vec<_>>()
        };
        Ok(Wavefunctions {
            x: thin(&gs.grid().nodes()),
            psi_gd: thin(&unit_peak(gs.psi())),
            psi_ex: thin(&unit_peak(excited_wavefunction(&gs, chi))),
            e_gd: report.e_gd,
            e_odd: report.e_odd,
        })
    })())
}
