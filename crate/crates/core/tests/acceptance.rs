//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use excite_iter::app::{run_case, Case, RunConfig, RunOutput};
use excite_iter::numerics::integrate_panel;
use excite_iter::reference::{E_ASYMP_G8, EPS_ASYMP_G8};
use excite_iter::soluble::{epsilon1_closed_form, epsilon_series, exact_chi, exact_epsilon};
use excite_iter::{run, Grid, TrialFunction};
use tempfile::tempdir;

struct Criterion {
    name: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(name: &'static str) -> Self {
        Criterion { name, failures: Vec::new(), notes: Vec::new() }
    }

    fn abs(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let dev = (got - want).abs();
        let line = format!("{label}: {got:.10} vs {want} (|dev| {dev:.2e}, tol {tol:.0e})");
        if dev <= tol {
            self.notes.push(line);
        } else {
            self.failures.push(line);
        }
    }

    fn check(&mut self, label: String, ok: bool) {
        if ok {
            self.notes.push(label);
        } else {
            self.failures.push(label);
        }
    }

    fn runtime(&mut self, took: Duration, limit: f64) {
        let s = took.as_secs_f64();
        self.check(format!("runtime {s:.3} s (limit {limit} s)"), s < limit);
    }

    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn report(&self) {
        println!("{} {}", if self.passed() { "PASS" } else { "FAIL" }, self.name);
        for f in &self.failures {
            println!("    x {f}");
        }
        for n in &self.notes {
            println!("    . {n}");
        }
    }
}

fn timed_run(case: Case, anchor: f64, iters: usize) -> (RunOutput, Duration) {
    let dir = tempdir().unwrap();
    let mut cfg = RunConfig::new(case, dir.path());
    cfg.anchor = anchor;
    cfg.max_iters = iters;
    cfg.tol = 0.0;
    let start = Instant::now();
    let out = run_case(&cfg).unwrap();
    (out, start.elapsed())
}

fn soluble_table() -> Criterion {
    let mut c = Criterion::new("1 soluble delta=0.1 sequence and exact gap");
    let (out, took) = timed_run(Case::Soluble { delta: 0.1 }, 1.0, 3);
    for (k, want) in [0.59086, 0.31348, 0.30924].into_iter().enumerate() {
        c.abs(&format!("eps_{}", k + 1), out.summary.eps_sequence[k], want, 5e-5);
    }
    c.abs("exact eps", out.summary.exact_epsilon.unwrap(), 0.30916, 5e-5);
    c.runtime(took, 1.0);
    c
}

fn quartic_anchor_one() -> (Criterion, f64) {
    let mut c = Criterion::new("2 quartic g=3 anchor 1 sequence and ground-state energy");
    let (out, took) = timed_run(Case::Quartic { g: 3.0 }, 1.0, 4);
    for (k, want) in [0.41776, 0.41367, 0.413568, 0.413568].into_iter().enumerate() {
        c.abs(&format!("eps_{}", k + 1), out.summary.eps_sequence[k], want, 5e-6);
    }
    c.abs("E_gd", out.summary.e_gd, 2.48291, 2e-4);
    c.runtime(took, 10.0);
    (c, out.summary.eps_sequence[3])
}

fn quartic_anchor_half(eps4_anchor_one: f64) -> Criterion {
    let mut c = Criterion::new("3 quartic g=3 anchor 0.5 and anchor agreement");
    let (out, _) = timed_run(Case::Quartic { g: 3.0 }, 0.5, 4);
    let eps4 = out.summary.eps_sequence[3];
    c.abs("eps_4", eps4, 0.413568, 5e-6);
    let r = rel(eps4_anchor_one, eps4);
    c.check(format!("eps_4 anchors 1 / 0.5: {eps4_anchor_one:.10} / {eps4:.10}, rel {r:.2e} (tol 1e-6)"), r <= 1e-6);
    c
}

fn deep_well() -> Criterion {
    let mut c = Criterion::new("4 quartic g=8 energies and doublet");
    let (out, took) = timed_run(Case::Quartic { g: 8.0 }, 1.0, 4);
    let s = &out.summary;
    c.abs("E_gd", s.e_gd, 7.727340, 2e-4);
    c.abs("eps_3", s.eps_sequence[2], 0.003017947, 5e-8);
    c.abs("eps_4", s.eps_sequence[3], 0.003017947, 5e-8);
    c.abs("e_mean", s.e_mean, 7.728849, 5e-7);
    c.abs("eps", s.eps, 0.003018, 5e-7);
    let stored = s.asymptotic_reference.as_ref();
    c.check(
        format!("stored asymptotic values reported: {stored:?}"),
        stored.is_some_and(|a| a.e_asymp == E_ASYMP_G8 && a.eps_asymp == EPS_ASYMP_G8),
    );
    c.runtime(took, 20.0);
    c
}

fn closed_forms() -> Criterion {
    let mut c = Criterion::new("5 closed-form and series agreement on the box");
    for delta in [0.02, 0.05, 0.1] {
        let r = run(&box_gs(delta), &TrialFunction::Linear, 1.0, 3, 0.0).unwrap();
        let closed = epsilon1_closed_form(delta).unwrap();
        let d1 = rel(r.eps_sequence[0], closed);
        c.check(format!("delta {delta}: eps_1 rel {d1:.2e} (tol 1e-7)"), d1 <= 1e-7);
        let bound = delta.powi(5) + 1e-7;
        for n in [2, 3] {
            let series = epsilon_series(delta, n as u32).unwrap();
            let dev = (r.eps_sequence[n - 1] - series).abs();
            c.check(format!("delta {delta}: eps_{n} vs series {dev:.2e} (tol {bound:.2e})"), dev <= bound);
        }
    }
    c
}

fn properties() -> Criterion {
    let mut c = Criterion::new("6 property suite");
    let trial = TrialFunction::SaturatingQuadratic;

    let gs3 = quartic_gs(3.0);
    let base = run(&gs3, &trial, 1.0, 4, 0.0).unwrap();
    let worst_gauge = [-5.0, 5.0]
        .iter()
        .flat_map(|&shift| {
            let r = run(&gs3.shifted(shift), &trial, 1.0, 4, 0.0).unwrap();
            r.eps_sequence.iter().zip(&base.eps_sequence).map(|(a, b)| rel(*a, *b)).collect::<Vec<_>>()
        })
        .fold(0.0, f64::max);
    c.check(format!("gauge shift +-5: max rel change {worst_gauge:.2e} (tol 1e-12)"), worst_gauge <= 1e-12);

    let i = gs3.grid().node_index(1.0).unwrap();
    let pinned = base.iterates.iter().all(|s| s.chi[i] == base.iterates[0].chi[i]);
    c.check("anchor value reproduced exactly by every iterate".into(), pinned);

    let delta = 0.1;
    let bgs = box_gs(delta);
    let exact: Vec<f64> = bgs.grid().nodes().iter().map(|&x| exact_chi(delta, x).unwrap()).collect();
    let fp = run(&bgs, &TrialFunction::Tabulated(exact.clone()), 1.0, 1, 0.0).unwrap();
    let chi_dev = fp.iterates[1].chi.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let eps_dev = (fp.eps_sequence[0] - exact_epsilon(delta)).abs();
    c.check(format!("fixed point: chi {chi_dev:.2e}, eps {eps_dev:.2e} (tol 1e-6)"), chi_dev <= 1e-6 && eps_dev <= 1e-6);

    let p = std::f64::consts::PI - delta;
    let target = 0.25 - p.sin().powi(2) / (4.0 * p * p);
    let err = |n: usize| {
        let grid = Grid::new(1.0, n).unwrap();
        let f: Vec<f64> = grid.nodes().iter().map(|&x| x * (p * (1.0 - x)).sin().powi(2)).collect();
        (integrate_panel(&f, &grid, 0, n - 1).unwrap() - target).abs()
    };
    let ratio = err(33) / err(65);
    c.check(format!("Simpson error ratio {ratio:.3} (range [14, 18])"), (14.0..=18.0).contains(&ratio));

    let finite = (2..=20).all(|k| {
        let g = 0.5 * f64::from(k);
        let gs = quartic_gs(g);
        let r = run(&gs, &trial, 1.0, 4, 0.0).unwrap();
        gs.s().iter().all(|v| v.is_finite())
            && r.eps_sequence.iter().all(|e| e.is_finite())
            && r.iterates.iter().all(|s| s.chi.iter().chain(&s.d_field).all(|v| v.is_finite()))
    });
    c.check("no non-finite values for g = 1, 1.5, ..., 10".into(), finite);

    let fine = run(&quartic_gs_on(3.0, gs3.grid().refined()), &trial, 1.0, 4, 0.0).unwrap();
    let halving = rel(base.eps_sequence[3], fine.eps_sequence[3]);
    c.check(format!("grid halving: eps_4 rel change {halving:.2e} (tol 1e-7)"), halving <= 1e-7);

    let (e0, e1) = dense_levels_extrapolated(3.0, 4.5, 0.02);
    let converged = run(&gs3, &trial, 1.0, 12, 1e-10).unwrap();
    let d0 = (gs3.e_gd() - e0).abs();
    let d1 = (converged.e_odd - e1).abs();
    c.check(format!("dense oracle: E_gd dev {d0:.2e} (tol 1e-6), E_odd dev {d1:.2e} (tol 1e-5)"), d0 <= 1e-6 && d1 <= 1e-5);
    c
}

#[test]
fn acceptance() {
    let (second, eps4) = quartic_anchor_one();
    let criteria = [soluble_table(), second, quartic_anchor_half(eps4), deep_well(), closed_forms(), properties()];
    for c in &criteria {
        c.report();
    }
    let failed: Vec<&str> = criteria.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
