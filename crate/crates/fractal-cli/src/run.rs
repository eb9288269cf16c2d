//! Executes resolved run configurations and formats their outputs.
//!
//! All computation happens first; a single writer then emits files and
//! the stats lines. Exit codes: 0 success, 2 usage, 3 numerical failure,
//! 4 I/O.

use std::fmt::Write as _;
use std::fs;
use std::time::Instant;

use fractal_core::newton::{error_ratio, estimate_order, IterationTrace, SolveStatus};
use fractal_core::recurrence::iterate_to_fixed_point;
use fractal_core::{
    classify_orbit, compare_maps, scan_grid, Complex, GridSpec, MembershipMap, OrbitStatus,
    ScanParams, Tolerances,
};

use crate::config::{
    format_complex, hearth_form, CompareConfig, Expectation, MapJob, OrbitConfig, RenderConfig,
    RunConfig, SolveConfig, SolveMethod,
};
use crate::pgm;
use crate::spec_str::format_recurrence;

/// Failure of a run, carrying the process exit code.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            RunError::Usage(m) | RunError::Numerical(m) | RunError::Io(m) => m,
        }
    }
}

fn write_file(path: &str, bytes: &[u8]) -> Result<(), RunError> {
    fs::write(path, bytes).map_err(|e| RunError::Io(format!("cannot write {path}: {e}")))
}

/// Runs a config; returns the stdout report.
pub fn execute(run: &RunConfig) -> Result<String, RunError> {
    match run {
        RunConfig::Render(cfg) => render(cfg),
        RunConfig::Compare(cfg) => compare(cfg),
        RunConfig::Solve(cfg) => solve(cfg),
        RunConfig::Orbit(cfg) => orbit(cfg),
    }
}

fn scan_job(grid: &GridSpec, job: &MapJob, max_iter: u32, workers: usize) -> MembershipMap {
    let params = ScanParams::new(job.radius, max_iter).with_workers(workers);
    scan_grid(grid, &job.spec, &params)
}

/// File-name tag for a spec, for the default render output path.
fn spec_tag(job: &MapJob) -> String {
    format_recurrence(&job.spec)
        .replace([':', ',', '='], "-")
        .replace(['/', ';'], "_")
}

fn render(cfg: &RenderConfig) -> Result<String, RunError> {
    let started = Instant::now();
    let map = scan_job(&cfg.grid, &cfg.job, cfg.max_iter, cfg.workers);
    let elapsed = started.elapsed();

    let path = cfg
        .out
        .clone()
        .unwrap_or_else(|| format!("{}.pgm", spec_tag(&cfg.job)));
    write_file(&path, &pgm::encode(&map))?;

    let mut report = String::new();
    let _ = writeln!(report, "spec = {}", format_recurrence(&cfg.job.spec));
    let _ = writeln!(report, "bounded_fraction = {:.6}", map.bounded_fraction());
    let _ = writeln!(report, "elapsed_ms = {}", elapsed.as_millis());
    let _ = writeln!(report, "out = {path}");
    Ok(report)
}

fn compare(cfg: &CompareConfig) -> Result<String, RunError> {
    let started = Instant::now();
    let maps: Vec<MembershipMap> = cfg
        .jobs
        .iter()
        .map(|job| scan_job(&cfg.grid, job, cfg.max_iter, cfg.workers))
        .collect();
    let elapsed = started.elapsed();

    let mut report = String::new();
    let _ = writeln!(report, "maps = {}", maps.len());
    let _ = writeln!(report, "iters = {}", cfg.max_iter);
    let _ = writeln!(report, "threshold = {}", cfg.threshold);
    let _ = writeln!(
        report,
        "expect = {}",
        match cfg.expect {
            Expectation::Agree => "agree",
            Expectation::Differ => "differ",
        }
    );
    for (idx, job) in cfg.jobs.iter().enumerate() {
        let _ = writeln!(report, "spec{} = {}", idx + 1, format_recurrence(&job.spec));
        let _ = writeln!(
            report,
            "bounded_fraction{} = {:.6}",
            idx + 1,
            maps[idx].bounded_fraction()
        );
    }

    let mut min_agree = f64::INFINITY;
    let mut all_boundary = true;
    for i in 0..maps.len() {
        for j in (i + 1)..maps.len() {
            let cmp =
                compare_maps(&maps[i], &maps[j]).map_err(|e| RunError::Usage(e.to_string()))?;
            let agree = cmp.agree_fraction();
            min_agree = min_agree.min(agree);
            all_boundary &= cmp.all_disagreements_boundary_adjacent();
            let tag = format!("pair_{}_{}", i + 1, j + 1);
            let _ = writeln!(report, "{tag}_agree = {agree:.6}");
            let _ = writeln!(report, "{tag}_disagree_count = {}", cmp.disagree_count);
            let _ = writeln!(
                report,
                "{tag}_boundary_adjacent_fraction = {:.6}",
                cmp.boundary_adjacent_fraction()
            );
        }
    }

    let pass = match cfg.expect {
        Expectation::Agree => min_agree >= cfg.threshold,
        Expectation::Differ => min_agree < cfg.threshold,
    };
    let _ = writeln!(report, "min_agree = {min_agree:.6}");
    let _ = writeln!(
        report,
        "all_disagreements_boundary_adjacent = {all_boundary}"
    );
    let _ = writeln!(report, "pass = {pass}");
    let _ = writeln!(report, "elapsed_ms = {}", elapsed.as_millis());

    if let Some(path) = &cfg.out {
        write_file(path, report.as_bytes())?;
    }
    if !pass {
        // Show the full report before signalling the failure.
        print!("{report}");
        return Err(RunError::Numerical(match cfg.expect {
            Expectation::Agree => {
                format!(
                    "agreement {min_agree:.6} fell below the threshold {}",
                    cfg.threshold
                )
            }
            Expectation::Differ => {
                format!(
                    "maps agree at {min_agree:.6}; expected disagreement below {}",
                    cfg.threshold
                )
            }
        }));
    }
    Ok(report)
}

fn solve(cfg: &SolveConfig) -> Result<String, RunError> {
    let trace = match &cfg.method {
        SolveMethod::Variant(variant) => fractal_core::solve(
            cfg.x0,
            &cfg.poly,
            *variant,
            cfg.max_iter,
            Tolerances::default(),
        ),
        SolveMethod::Murase(method) => {
            // Normalize x^3 - alpha x^2 + beta to x^3 - x^2 + c with
            // c = beta/alpha^3, iterate, then rescale by alpha.
            let (alpha, beta) = hearth_form(&cfg.poly).map_err(RunError::Usage)?;
            let c = beta / (alpha * alpha * alpha);
            let run = iterate_to_fixed_point(*method, c, cfg.x0.re / alpha, cfg.max_iter, 1e-13)
                .map_err(|e| RunError::Numerical(format!("iteration failed: {e}")))?;
            let iterates: Vec<Complex> = run
                .iterates
                .iter()
                .map(|x| Complex::new(alpha * x, 0.0))
                .collect();
            let status = if run.converged {
                SolveStatus::Converged {
                    root: *iterates.last().expect("nonempty"),
                    steps: (iterates.len() - 1) as u32,
                }
            } else {
                SolveStatus::Stalled {
                    at_iter: cfg.max_iter,
                    error: None,
                }
            };
            IterationTrace { iterates, status }
        }
    };

    let mut report = String::new();
    let _ = writeln!(report, "poly = {}", cfg.poly);
    let header = if cfg.reference_root.is_some() {
        "k,re,im,residual,error"
    } else {
        "k,re,im,residual"
    };
    let _ = writeln!(report, "{header}");
    for (k, x) in trace.iterates.iter().enumerate() {
        let residual = cfg.poly.eval(*x).norm();
        match cfg.reference_root {
            Some(root) => {
                let _ = writeln!(
                    report,
                    "{k},{},{},{:e},{:e}",
                    x.re,
                    x.im,
                    residual,
                    (x - root).norm()
                );
            }
            None => {
                let _ = writeln!(report, "{k},{},{},{residual:e}", x.re, x.im);
            }
        }
    }

    match trace.status {
        SolveStatus::Converged { root, steps } => {
            let _ = writeln!(report, "status = converged");
            let _ = writeln!(report, "root = {}", format_complex(root));
            let _ = writeln!(report, "steps = {steps}");
            if let Some(reference) = cfg.reference_root {
                if let Ok(order) = estimate_order(&trace, reference) {
                    let _ = writeln!(report, "order = {order:.3}");
                }
                if let Ok(ratio) = error_ratio(&trace, reference) {
                    let _ = writeln!(report, "error_ratio = {ratio:.4}");
                }
            }
        }
        SolveStatus::Diverged { at_iter } => {
            print!("{report}");
            return Err(RunError::Numerical(format!(
                "diverged at iteration {at_iter}"
            )));
        }
        SolveStatus::Stalled { at_iter, error } => {
            print!("{report}");
            let detail = match error {
                Some(e) => format!("stalled at iteration {at_iter}: {e}"),
                None => format!("no convergence within {at_iter} iterations"),
            };
            return Err(RunError::Numerical(detail));
        }
    }

    if let Some(path) = &cfg.out {
        write_file(path, report.as_bytes())?;
    }
    Ok(report)
}

fn orbit(cfg: &OrbitConfig) -> Result<String, RunError> {
    let radius = cfg.radius.effective(cfg.c);
    let outcome = classify_orbit(cfg.c, &cfg.spec, radius, cfg.max_iter, true);
    let trace = outcome.trace.expect("requested trace");

    let mut report = String::new();
    let _ = writeln!(report, "k,re,im,abs");
    for (k, z) in trace.iter().enumerate() {
        let _ = writeln!(report, "{k},{},{},{}", z.re, z.im, z.norm());
    }
    match outcome.status {
        OrbitStatus::Bounded => {
            let _ = writeln!(report, "# status=bounded");
        }
        OrbitStatus::Escaped { at_iter } => {
            let _ = writeln!(report, "# status=escaped at_iter={at_iter}");
        }
        OrbitStatus::Invalid { reason, at_iter } => {
            let _ = writeln!(report, "# status=invalid reason={reason} at_iter={at_iter}");
        }
    }
    if let Some(path) = &cfg.out {
        write_file(path, report.as_bytes())?;
    }
    Ok(report)
}
