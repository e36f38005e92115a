//! The experiment runner behind the `excite-iter` binary: builds or loads a
//! ground state, iterates, and writes `summary.json`, `chi_curves.csv`,
//! `wavefunctions.csv` and (unless cached) `groundstate.csv` with its sidecar.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{ExciteError, Result};
use crate::excite::{excited_wavefunction, run, ConvergenceReport, Status, TrialFunction};
use crate::grid::Grid;
use crate::groundstate::{
    default_quartic_bracket, default_quartic_x_max, soluble_groundstate, solve_groundstate_numeric,
    GroundState, DEFAULT_ENERGY_TOL, DEFAULT_POINTS, DEFAULT_SPACING,
};
use crate::io::{read_groundstate, write_columns, write_groundstate};
use crate::potential::Potential;
use crate::reference::{self, Quantity, ReferenceTag, Setup};
use crate::soluble::{exact_chi, exact_epsilon};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Case {
    Soluble { delta: f64 },
    Quartic { g: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialTag {
    Linear,
    Saturating,
}

impl TrialTag {
    pub fn trial(self) -> TrialFunction {
        match self {
            TrialTag::Linear => TrialFunction::Linear,
            TrialTag::Saturating => TrialFunction::SaturatingQuadratic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub case: Case,
    pub anchor: f64,
    pub trial: TrialTag,
    pub x_max: Option<f64>,
    pub n_points: Option<usize>,
    pub max_iters: usize,
    pub tol: f64,
    pub out_dir: PathBuf,
    pub gs_cache: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults matching the published runs: anchor 1, linear trial for the
    /// box, saturating trial for the quartic well.
    pub fn new(case: Case, out_dir: impl Into<PathBuf>) -> Self {
        let trial = match case {
            Case::Soluble { .. } => TrialTag::Linear,
            Case::Quartic { .. } => TrialTag::Saturating,
        };
        RunConfig {
            case,
            anchor: 1.0,
            trial,
            x_max: None,
            n_points: None,
            max_iters: crate::excite::DEFAULT_MAX_ITERS,
            tol: crate::excite::DEFAULT_TOL,
            out_dir: out_dir.into(),
            gs_cache: None,
        }
    }

    pub fn potential(&self) -> Result<Potential> {
        match self.case {
            Case::Soluble { delta } => Potential::delta_box(delta),
            Case::Quartic { g } => Potential::quartic(g),
        }
    }

    pub fn grid(&self) -> Result<Grid> {
        match self.case {
            Case::Soluble { .. } => {
                if let Some(x_max) = self.x_max {
                    if (x_max - 1.0).abs() > 1e-12 {
                        return Err(ExciteError::InvalidParameter(format!(
                            "the soluble case lives on [0, 1]; --xmax {x_max} not allowed"
                        )));
                    }
                }
                Grid::new(1.0, self.n_points.unwrap_or(DEFAULT_POINTS))
            }
            Case::Quartic { g } => {
                let x_max = self.x_max.unwrap_or_else(|| default_quartic_x_max(g));
                match self.n_points {
                    Some(n) => Grid::new(x_max, n),
                    None => Grid::with_spacing(x_max, DEFAULT_SPACING),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReference {
    pub e_asymp: f64,
    pub eps_asymp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub reference_table_version: u32,
    pub config: RunConfig,
    pub potential: Potential,
    pub grid: Grid,
    pub e_gd: f64,
    pub gauge: f64,
    pub eps_sequence: Vec<f64>,
    pub delta_sequence: Vec<f64>,
    pub orth_residuals: Vec<f64>,
    pub status: Status,
    pub eps: f64,
    pub e_odd: f64,
    pub e_mean: f64,
    pub anchor_x0: f64,
    pub trial: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotic_reference: Option<AsymptoticReference>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub struct RunOutput {
    pub summary: Summary,
    pub report: ConvergenceReport,
    pub groundstate: GroundState,
    pub files: Vec<PathBuf>,
}

/// Ground state for the configured case, honouring the cache path.
/// Returns the state and whether it was loaded from the cache.
pub fn obtain_groundstate(config: &RunConfig) -> Result<(GroundState, bool)> {
    let potential = config.potential()?;
    let grid = config.grid()?;
    if let Some(cache) = &config.gs_cache {
        if cache.exists() {
            let gs = read_groundstate(cache)?;
            if gs.potential() != potential || gs.grid() != &grid {
                return Err(ExciteError::InvalidParameter(format!(
                    "cached ground state {} was built for {:?} on {:?}",
                    cache.display(),
                    gs.potential(),
                    gs.grid()
                )));
            }
            return Ok((gs, true));
        }
    }
    let gs = match config.case {
        Case::Soluble { delta } => soluble_groundstate(delta, grid)?,
        Case::Quartic { g } => {
            solve_groundstate_numeric(potential, grid, default_quartic_bracket(g), DEFAULT_ENERGY_TOL)?
        }
    };
    Ok((gs, false))
}

pub fn run_case(config: &RunConfig) -> Result<RunOutput> {
    let (gs, cached) = obtain_groundstate(config)?;
    let trial = config.trial.trial();
    let report = run(&gs, &trial, config.anchor, config.max_iters, config.tol)?;

    fs::create_dir_all(&config.out_dir)?;
    let mut files = Vec::new();
    let grid = *gs.grid();
    let x = grid.nodes();

    let mut notes = Vec::new();
    let mut exact_column = None;
    let exact_eps = match config.case {
        Case::Soluble { delta } => {
            let chi0_anchor = report.iterates[0].chi[grid.node_index(config.anchor).expect("checked by run")];
            let raw: Vec<f64> = x.iter().map(|&xi| exact_chi(delta, xi)).collect::<Result<_>>()?;
            let scale = chi0_anchor / exact_chi(delta, config.anchor)?;
            exact_column = Some(raw.iter().map(|v| v * scale).collect::<Vec<f64>>());
            notes.push(format!(
                "chi_exact is rescaled by {scale:.17e} so that chi_exact(x0) = chi_0(x0) at x0 = {}",
                config.anchor
            ));
            Some(exact_epsilon(delta))
        }
        Case::Quartic { .. } => None,
    };
    let asymptotic_reference = match config.case {
        Case::Quartic { g } if g == 8.0 => Some(AsymptoticReference {
            e_asymp: reference::E_ASYMP_G8,
            eps_asymp: reference::EPS_ASYMP_G8,
        }),
        _ => None,
    };
    notes.push(format!("trial function: {}", trial.tag()));

    // chi_curves.csv
    let mut header = vec!["x".to_string()];
    let mut columns: Vec<&[f64]> = vec![&x];
    for st in &report.iterates {
        header.push(format!("chi_{}", st.n));
        columns.push(&st.chi);
    }
    if let Some(col) = &exact_column {
        header.push("chi_exact".into());
        columns.push(col);
    }
    let path = config.out_dir.join("chi_curves.csv");
    write_columns(&path, &header, &columns)?;
    files.push(path);

    // wavefunctions.csv
    let psi_gd = gs.psi();
    let final_chi = &report.iterates.last().expect("non-empty").chi;
    let psi_ex = excited_wavefunction(&gs, final_chi);
    let path = config.out_dir.join("wavefunctions.csv");
    write_columns(&path, &["x", "psi_gd", "psi_ex"].map(String::from), &[&x, &psi_gd, &psi_ex])?;
    files.push(path);

    if !cached {
        let path = config.gs_cache.clone().unwrap_or_else(|| config.out_dir.join("groundstate.csv"));
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent)?;
        }
        write_groundstate(&gs, &path)?;
        files.push(path.clone());
        files.push(crate::io::sidecar_path(&path));
    }

    let summary = Summary {
        reference_table_version: reference::TABLE_VERSION,
        config: config.clone(),
        potential: gs.potential(),
        grid,
        e_gd: gs.e_gd(),
        gauge: gs.gauge(),
        eps_sequence: report.eps_sequence.clone(),
        delta_sequence: report.delta_sequence.clone(),
        orth_residuals: report.orth_residuals.clone(),
        status: report.status,
        eps: report.final_eps(),
        e_odd: report.e_odd,
        e_mean: report.e_mean,
        anchor_x0: report.anchor_x0,
        trial: report.trial.clone(),
        exact_epsilon: exact_eps,
        asymptotic_reference,
        notes,
    };
    let path = config.out_dir.join("summary.json");
    fs::write(&path, serde_json::to_string_pretty(&summary)? + "\n")?;
    files.push(path);

    Ok(RunOutput { summary, report, groundstate: gs, files })
}

pub fn read_summary(path: &Path) -> Result<Summary> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| ExciteError::Malformed(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonLine {
    pub label: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ComparisonLine {
    pub fn abs_dev(&self) -> f64 {
        (self.actual - self.expected).abs()
    }

    pub fn rel_dev(&self) -> f64 {
        self.abs_dev() / self.expected.abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub tag: ReferenceTag,
    pub setup_matches: bool,
    pub lines: Vec<ComparisonLine>,
    /// Stored values shown next to the results without being gated.
    pub context: Vec<(String, f64)>,
}

impl Comparison {
    pub fn all_pass(&self) -> bool {
        self.setup_matches && self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reference {} (table v{})", self.tag, reference::TABLE_VERSION)?;
        if !self.setup_matches {
            writeln!(f, "FAIL  summary does not come from the {:?} setup", self.tag.setup())?;
        }
        for l in &self.lines {
            writeln!(
                f,
                "{}  {:<22} expected {:<12} actual {:<20.12} abs {:.3e} rel {:.3e} tol {:.1e}",
                if l.pass { "PASS" } else { "FAIL" },
                l.label,
                l.expected,
                l.actual,
                l.abs_dev(),
                l.rel_dev(),
                l.tolerance
            )?;
        }
        for (label, v) in &self.context {
            writeln!(f, "INFO  {label:<22} stored {v}")?;
        }
        write!(f, "{}", if self.all_pass() { "overall PASS" } else { "overall FAIL" })
    }
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * b.abs().max(1.0)
}

/// Check a summary against one embedded reference table.
pub fn compare_report(summary: &Summary, tag: ReferenceTag) -> Comparison {
    let setup_matches = match (tag.setup(), summary.config.case) {
        (Setup::Soluble { delta, anchor }, Case::Soluble { delta: d }) => {
            same(delta, d) && same(anchor, summary.anchor_x0)
        }
        (Setup::Quartic { g, anchor }, Case::Quartic { g: gg }) => {
            same(g, gg) && same(anchor, summary.anchor_x0)
        }
        _ => false,
    };
    let lines = tag
        .values()
        .iter()
        .map(|r| {
            let actual = match r.quantity {
                Quantity::Eps(n) => summary.eps_sequence.get(n - 1).copied().unwrap_or(f64::NAN),
                Quantity::EGd => summary.e_gd,
                Quantity::EMean => summary.e_mean,
                Quantity::Epsilon => summary.eps,
                Quantity::ExactEpsilon => summary.exact_epsilon.unwrap_or(f64::NAN),
            };
            ComparisonLine {
                label: r.quantity.to_string(),
                expected: r.value,
                actual,
                tolerance: r.tolerance,
                pass: (actual - r.value).abs() <= r.tolerance,
            }
        })
        .collect();
    let context = match tag {
        ReferenceTag::EqA6 => vec![
            ("E_asymp".to_string(), reference::E_ASYMP_G8),
            ("eps_asymp".to_string(), reference::EPS_ASYMP_G8),
        ],
        _ => Vec::new(),
    };
    Comparison { tag, setup_matches, lines, context }
}
