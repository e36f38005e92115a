use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use excite_iter::app::{compare_report, read_summary, run_case, Case, RunConfig, TrialTag};
use excite_iter::reference::ReferenceTag;
use excite_iter::ExciteError;

#[derive(Parser)]
#[command(name = "excite-iter", version, about = "Iterative lowest odd excited state of symmetric 1D wells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Box on [-1, 1] with a central spike, parameterized by delta.
    Soluble {
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Quartic double well (g^2/2)(x^2 - 1)^2.
    Quartic {
        #[arg(long, default_value_t = 3.0)]
        g: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Check a summary.json against an embedded reference table.
    Compare {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long = "ref", value_enum)]
        reference: RefArg,
    },
}

#[derive(Args)]
struct Common {
    /// Pinning point x0 (must be a grid node).
    #[arg(long, default_value_t = 1.0)]
    anchor: f64,
    /// Trial function (default: linear for soluble, saturating for quartic).
    #[arg(long, value_enum)]
    trial: Option<TrialArg>,
    /// Maximum number of iterations.
    #[arg(long, default_value_t = excite_iter::excite::DEFAULT_MAX_ITERS)]
    iters: usize,
    /// Relative stopping tolerance on successive eps.
    #[arg(long, default_value_t = excite_iter::excite::DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Ground-state CSV to reuse (written there if missing).
    #[arg(long = "gs-cache")]
    gs_cache: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrialArg {
    Linear,
    Saturating,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefArg {
    #[value(name = "eq_3_17")]
    Eq3_17,
    #[value(name = "eq_4_6")]
    Eq4_6,
    #[value(name = "eq_4_8")]
    Eq4_8,
    #[value(name = "eq_A_6")]
    EqA6,
}

impl From<RefArg> for ReferenceTag {
    fn from(r: RefArg) -> Self {
        match r {
            RefArg::Eq3_17 => ReferenceTag::Eq3_17,
            RefArg::Eq4_6 => ReferenceTag::Eq4_6,
            RefArg::Eq4_8 => ReferenceTag::Eq4_8,
            RefArg::EqA6 => ReferenceTag::EqA6,
        }
    }
}

fn config(case: Case, common: Common) -> RunConfig {
    let mut cfg = RunConfig::new(case, common.out);
    cfg.anchor = common.anchor;
    if let Some(t) = common.trial {
        cfg.trial = match t {
            TrialArg::Linear => TrialTag::Linear,
            TrialArg::Saturating => TrialTag::Saturating,
        };
    }
    cfg.max_iters = common.iters;
    cfg.tol = common.tol;
    cfg.x_max = common.xmax;
    cfg.n_points = common.points;
    cfg.gs_cache = common.gs_cache;
    cfg
}

fn fail(err: &ExciteError) -> ExitCode {
    eprintln!("excite-iter: {err}");
    ExitCode::from(if err.is_usage() { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Command::Soluble { delta, common } => config(Case::Soluble { delta }, common),
        Command::Quartic { g, common } => config(Case::Quartic { g }, common),
        Command::Compare { summary, reference } => {
            let summary = match read_summary(&summary) {
                Ok(s) => s,
                Err(e) => return fail(&e),
            };
            let cmp = compare_report(&summary, reference.into());
            println!("{cmp}");
            return if cmp.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run_case(&cfg) {
        Ok(out) => {
            let s = &out.summary;
            println!("e_gd      {:.10}", s.e_gd);
            for (n, e) in s.eps_sequence.iter().enumerate() {
                println!("eps_{:<6}{e:.10}", n + 1);
            }
            println!("status    {:?}", s.status);
            println!("e_odd     {:.10}", s.e_odd);
            println!("e_mean    {:.10}", s.e_mean);
            if let Some(exact) = s.exact_epsilon {
                println!("eps_exact {exact:.10}");
            }
            if let Some(a) = &s.asymptotic_reference {
                println!("E_asymp   {} (stored)", a.e_asymp);
                println!("eps_asymp {} (stored)", a.eps_asymp);
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
