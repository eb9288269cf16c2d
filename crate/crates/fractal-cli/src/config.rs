//! Run configurations and the flat `key = value` config-file format.
//!
//! A config file is line-oriented: one `key = value` pair per line, `#`
//! starts a comment, blank lines are ignored. Every run — from a preset,
//! a file, or bare flags — resolves to the same [`RunConfig`] shape, and
//! dumping then reloading a config reproduces the identical run.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fractal_core::{
    Complex, EscapeRadius, GridSpec, MuraseMethod, NewtonVariant, Polynomial, Recurrence,
};

use crate::spec_str::{format_recurrence, parse_number, parse_recurrence, with_branch};

/// One membership scan: a recurrence plus its escape radius.
#[derive(Debug, Clone, PartialEq)]
pub struct MapJob {
    pub spec: Recurrence,
    pub radius: EscapeRadius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Pass when every pair agrees at or above the threshold.
    Agree,
    /// Pass when some pair agrees strictly below the threshold.
    Differ,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    pub job: MapJob,
    pub grid: GridSpec,
    pub max_iter: u32,
    pub workers: usize,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    pub jobs: Vec<MapJob>,
    pub grid: GridSpec,
    pub max_iter: u32,
    pub workers: usize,
    pub threshold: f64,
    pub expect: Expectation,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SolveMethod {
    Variant(NewtonVariant),
    /// Historical real methods; restricted to hearth-form cubics
    /// `x^3 - alpha x^2 + beta`.
    Murase(MuraseMethod),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub poly: Polynomial,
    pub method: SolveMethod,
    pub x0: Complex,
    pub reference_root: Option<Complex>,
    pub max_iter: u32,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitConfig {
    pub spec: Recurrence,
    pub c: Complex,
    pub radius: EscapeRadius,
    pub max_iter: u32,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Render(RenderConfig),
    Compare(CompareConfig),
    Solve(SolveConfig),
    Orbit(OrbitConfig),
}

impl RunConfig {
    pub fn command(&self) -> &'static str {
        match self {
            RunConfig::Render(_) => "render",
            RunConfig::Compare(_) => "compare",
            RunConfig::Solve(_) => "solve",
            RunConfig::Orbit(_) => "orbit",
        }
    }
}

pub fn parse_complex(s: &str) -> Result<Complex, String> {
    let s = s.trim();
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_number(re)?, parse_number(im)?)),
        None => Ok(Complex::new(parse_number(s)?, 0.0)),
    }
}

pub fn format_complex(z: Complex) -> String {
    format!("{},{}", z.re, z.im)
}

fn parse_grid(grid: &str, size: &str) -> Result<GridSpec, String> {
    let parts: Vec<f64> = grid
        .split(',')
        .map(parse_number)
        .collect::<Result<_, _>>()?;
    if parts.len() != 4 {
        return Err("grid must be re_min,re_max,im_min,im_max".into());
    }
    let (w, h) = size.split_once(['x', 'X']).ok_or("size must be WxH")?;
    let width: u32 = w.trim().parse().map_err(|_| "bad width")?;
    let height: u32 = h.trim().parse().map_err(|_| "bad height")?;
    GridSpec::new(parts[0], parts[1], parts[2], parts[3], width, height).map_err(|e| e.to_string())
}

fn format_radius(r: EscapeRadius) -> String {
    match r {
        EscapeRadius::Fixed(v) => v.to_string(),
        EscapeRadius::PowerAuto => "auto".into(),
    }
}

fn parse_radius(s: &str) -> Result<EscapeRadius, String> {
    if s.trim() == "auto" {
        return Ok(EscapeRadius::PowerAuto);
    }
    let v = parse_number(s)?;
    let radius = EscapeRadius::Fixed(v);
    radius.validate().map_err(|e| e.to_string())?;
    Ok(radius)
}

/// Key-value settings accumulated from presets, config files, and flags,
/// later sources overriding earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.map.insert(key.to_string(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    pub fn merge_from(&mut self, other: Settings) {
        for (k, v) in other.map {
            self.map.insert(k, v);
        }
    }

    /// Parses config-file text.
    pub fn parse(text: &str) -> Result<Settings, String> {
        let mut settings = Settings::default();
        for (line_no, raw) in text.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", line_no + 1))?;
            settings.set(key.trim(), value.trim().to_string());
        }
        Ok(settings)
    }

    fn keys(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }
}

const COMMON_KEYS: &[&str] = &[
    "command", "grid", "size", "iters", "workers", "out", "branch",
];

fn known_key(command: &str, key: &str) -> bool {
    if COMMON_KEYS.contains(&key) {
        return true;
    }
    match command {
        "render" => matches!(key, "spec" | "radius"),
        "compare" => {
            key == "threshold"
                || key == "expect"
                || key == "radius"
                || key
                    .strip_prefix("spec")
                    .map(|n| n.parse::<usize>().is_ok())
                    .unwrap_or(false)
                || key
                    .strip_prefix("radius")
                    .map(|n| n.parse::<usize>().is_ok())
                    .unwrap_or(false)
        }
        "solve" => matches!(
            key,
            "poly" | "method" | "q" | "lambda" | "r" | "i" | "m" | "x0" | "root"
        ),
        "orbit" => matches!(key, "spec" | "c" | "radius"),
        _ => false,
    }
}

/// Builds the final run from merged settings. Every parameter is
/// validated here, before any computation starts; messages name the
/// violated precondition.
pub fn build_run(settings: &Settings) -> Result<RunConfig, String> {
    let command = settings
        .get("command")
        .ok_or("missing command")?
        .to_string();
    for key in settings.keys() {
        if !known_key(&command, key) {
            return Err(format!("unknown key for {command}: {key}"));
        }
    }

    let grid = parse_grid(
        settings.get("grid").unwrap_or("-2.5,1.5,-2,2"),
        settings.get("size").unwrap_or("256x256"),
    )?;
    let default_iters = if command == "solve" { 200 } else { 100 };
    let max_iter: u32 = match settings.get("iters") {
        Some(v) => v.parse().map_err(|_| "iters must be a positive integer")?,
        None => default_iters,
    };
    if max_iter < 1 {
        return Err("iters must be >= 1".into());
    }
    let workers: usize = match settings.get("workers") {
        Some(v) => v.parse().map_err(|_| "workers must be an integer >= 0")?,
        None => 0,
    };
    let out = settings.get("out").map(String::from);
    let branch: Option<i32> = match settings.get("branch") {
        Some(v) => Some(v.parse().map_err(|_| "branch must be an integer")?),
        None => None,
    };

    match command.as_str() {
        "render" => {
            let mut spec = parse_recurrence(settings.get("spec").ok_or("render needs a spec")?)?;
            if let Some(b) = branch {
                spec = with_branch(spec, b)?;
            }
            spec.validate()?;
            let radius = match settings.get("radius") {
                Some(v) => parse_radius(v)?,
                None => EscapeRadius::default_for(&spec),
            };
            Ok(RunConfig::Render(RenderConfig {
                job: MapJob { spec, radius },
                grid,
                max_iter,
                workers,
                out,
            }))
        }
        "compare" => {
            if branch.is_some() {
                return Err("compare maps carry their own branch indices; \
                     set branch= inside each spec"
                    .into());
            }
            let mut jobs = Vec::new();
            for idx in 1.. {
                let Some(spec_str) = settings.get(&format!("spec{idx}")) else {
                    break;
                };
                let spec = parse_recurrence(spec_str)?;
                spec.validate()?;
                let radius = match settings
                    .get("radius")
                    .or_else(|| settings.get(&format!("radius{idx}")))
                {
                    Some(v) => parse_radius(v)?,
                    None => EscapeRadius::default_for(&spec),
                };
                jobs.push(MapJob { spec, radius });
            }
            if jobs.len() < 2 {
                return Err("compare needs at least two specs (spec1 =, spec2 =, ...)".into());
            }
            let threshold = match settings.get("threshold") {
                Some(v) => parse_number(v)?,
                None => 0.99,
            };
            if !(0.0..=1.0).contains(&threshold) {
                return Err("threshold must lie in [0, 1]".into());
            }
            let expect = match settings.get("expect").unwrap_or("agree") {
                "agree" => Expectation::Agree,
                "differ" => Expectation::Differ,
                other => return Err(format!("expect must be agree or differ, got {other}")),
            };
            Ok(RunConfig::Compare(CompareConfig {
                jobs,
                grid,
                max_iter,
                workers,
                threshold,
                expect,
                out,
            }))
        }
        "solve" => {
            let coeffs: Vec<f64> = settings
                .get("poly")
                .ok_or("solve needs poly = a0,a1,...,ap (leading first)")?
                .split(',')
                .map(parse_number)
                .collect::<Result<_, _>>()?;
            let poly = Polynomial::from_real(&coeffs).map_err(|e| e.to_string())?;
            let method = parse_method(settings, &poly)?;
            let x0 = parse_complex(settings.get("x0").unwrap_or("0"))?;
            let reference_root = match settings.get("root") {
                Some(v) => Some(parse_complex(v)?),
                None => None,
            };
            Ok(RunConfig::Solve(SolveConfig {
                poly,
                method,
                x0,
                reference_root,
                max_iter,
                out,
            }))
        }
        "orbit" => {
            let mut spec = parse_recurrence(settings.get("spec").ok_or("orbit needs a spec")?)?;
            if let Some(b) = branch {
                spec = with_branch(spec, b)?;
            }
            spec.validate()?;
            let c = parse_complex(settings.get("c").ok_or("orbit needs c = re,im")?)?;
            if spec.is_real_only() && c.im != 0.0 {
                return Err("this recurrence family needs a real c".into());
            }
            let radius = match settings.get("radius") {
                Some(v) => parse_radius(v)?,
                None => EscapeRadius::default_for(&spec),
            };
            Ok(RunConfig::Orbit(OrbitConfig {
                spec,
                c,
                radius,
                max_iter,
                out,
            }))
        }
        other => Err(format!("unknown command: {other}")),
    }
}

fn parse_method(settings: &Settings, poly: &Polynomial) -> Result<SolveMethod, String> {
    let get_num = |key: &str, default: Option<f64>| -> Result<f64, String> {
        match settings.get(key) {
            Some(v) => parse_number(v),
            None => default.ok_or_else(|| format!("method needs {key} =")),
        }
    };
    let name = settings.get("method").unwrap_or("newton");
    let method = match name {
        "newton" => SolveMethod::Variant(NewtonVariant::newton()),
        "mn" => SolveMethod::Variant(NewtonVariant::MuraseNewton {
            lambda: get_num("lambda", None)?,
        }),
        "th" => SolveMethod::Variant(NewtonVariant::TsuchikuraHoriguchi {
            q: get_num("q", None)?,
        }),
        "ext1" => SolveMethod::Variant(NewtonVariant::Extended1 {
            q: get_num("q", Some(1.0))?,
            lambda: get_num("lambda", Some(1.0))?,
            r: get_num("r", Some(0.0))?,
            deriv_order: parse_deriv_order(settings)?,
        }),
        "ext2" => SolveMethod::Variant(NewtonVariant::Extended2 {
            q: get_num("q", Some(1.0))?,
            lambda: get_num("lambda", Some(1.0))?,
            r: get_num("r", Some(0.0))?,
            deriv_order: parse_deriv_order(settings)?,
            m: get_num("m", None)?,
        }),
        "murase1" => SolveMethod::Murase(MuraseMethod::First),
        "murase2" => SolveMethod::Murase(MuraseMethod::Second),
        "murase3" => SolveMethod::Murase(MuraseMethod::Third),
        other => return Err(format!("unknown method: {other}")),
    };
    if let SolveMethod::Variant(v) = &method {
        v.validate(poly).map_err(|e| e.to_string())?;
    }
    if let SolveMethod::Murase(_) = &method {
        hearth_form(poly)?;
    }
    Ok(method)
}

fn parse_deriv_order(settings: &Settings) -> Result<usize, String> {
    match settings.get("i") {
        Some(v) => v
            .parse()
            .map_err(|_| "i must be a derivative order >= 1".into()),
        None => Ok(1),
    }
}

/// The Murase methods solve `x^3 - alpha x^2 + beta = 0` with
/// `alpha, beta > 0`; returns `(alpha, beta)`.
pub fn hearth_form(poly: &Polynomial) -> Result<(f64, f64), String> {
    let msg = "Murase methods need a hearth-form cubic: 1,-alpha,0,beta with alpha,beta > 0";
    if poly.degree() != 3 || !poly.is_real() {
        return Err(msg.into());
    }
    let a0 = poly.coeff(0).re;
    let alpha = -poly.coeff(1).re;
    let a2 = poly.coeff(2).re;
    let beta = poly.coeff(3).re;
    if a0 != 1.0 || a2 != 0.0 || alpha <= 0.0 || beta <= 0.0 {
        return Err(msg.into());
    }
    Ok((alpha, beta))
}

/// Serializes a run so that parsing the text rebuilds it exactly.
pub fn dump_config(run: &RunConfig) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# fractal run config");
    let _ = writeln!(s, "command = {}", run.command());
    let grid_line = |s: &mut String, grid: &GridSpec| {
        let _ = writeln!(
            s,
            "grid = {},{},{},{}",
            grid.re_min, grid.re_max, grid.im_min, grid.im_max
        );
        let _ = writeln!(s, "size = {}x{}", grid.width, grid.height);
    };
    match run {
        RunConfig::Render(cfg) => {
            let _ = writeln!(s, "spec = {}", format_recurrence(&cfg.job.spec));
            grid_line(&mut s, &cfg.grid);
            let _ = writeln!(s, "radius = {}", format_radius(cfg.job.radius));
            let _ = writeln!(s, "iters = {}", cfg.max_iter);
            let _ = writeln!(s, "workers = {}", cfg.workers);
            if let Some(out) = &cfg.out {
                let _ = writeln!(s, "out = {out}");
            }
        }
        RunConfig::Compare(cfg) => {
            for (idx, job) in cfg.jobs.iter().enumerate() {
                let _ = writeln!(s, "spec{} = {}", idx + 1, format_recurrence(&job.spec));
                let _ = writeln!(s, "radius{} = {}", idx + 1, format_radius(job.radius));
            }
            grid_line(&mut s, &cfg.grid);
            let _ = writeln!(s, "iters = {}", cfg.max_iter);
            let _ = writeln!(s, "workers = {}", cfg.workers);
            let _ = writeln!(s, "threshold = {}", cfg.threshold);
            let _ = writeln!(
                s,
                "expect = {}",
                match cfg.expect {
                    Expectation::Agree => "agree",
                    Expectation::Differ => "differ",
                }
            );
            if let Some(out) = &cfg.out {
                let _ = writeln!(s, "out = {out}");
            }
        }
        RunConfig::Solve(cfg) => {
            let coeffs: Vec<String> = cfg.poly.coeffs().iter().map(|c| c.re.to_string()).collect();
            let _ = writeln!(s, "poly = {}", coeffs.join(","));
            let _ = write_method(&mut s, &cfg.method);
            let _ = writeln!(s, "x0 = {}", format_complex(cfg.x0));
            if let Some(root) = cfg.reference_root {
                let _ = writeln!(s, "root = {}", format_complex(root));
            }
            let _ = writeln!(s, "iters = {}", cfg.max_iter);
            if let Some(out) = &cfg.out {
                let _ = writeln!(s, "out = {out}");
            }
        }
        RunConfig::Orbit(cfg) => {
            let _ = writeln!(s, "spec = {}", format_recurrence(&cfg.spec));
            let _ = writeln!(s, "c = {}", format_complex(cfg.c));
            let _ = writeln!(s, "radius = {}", format_radius(cfg.radius));
            let _ = writeln!(s, "iters = {}", cfg.max_iter);
            if let Some(out) = &cfg.out {
                let _ = writeln!(s, "out = {out}");
            }
        }
    }
    s
}

fn write_method(s: &mut String, method: &SolveMethod) -> std::fmt::Result {
    match method {
        SolveMethod::Variant(NewtonVariant::MuraseNewton { lambda }) if *lambda == 1.0 => {
            writeln!(s, "method = newton")
        }
        SolveMethod::Variant(NewtonVariant::MuraseNewton { lambda }) => {
            writeln!(s, "method = mn")?;
            writeln!(s, "lambda = {lambda}")
        }
        SolveMethod::Variant(NewtonVariant::TsuchikuraHoriguchi { q }) => {
            writeln!(s, "method = th")?;
            writeln!(s, "q = {q}")
        }
        SolveMethod::Variant(NewtonVariant::Extended1 {
            q,
            lambda,
            r,
            deriv_order,
        }) => {
            writeln!(s, "method = ext1")?;
            writeln!(s, "q = {q}")?;
            writeln!(s, "lambda = {lambda}")?;
            writeln!(s, "r = {r}")?;
            writeln!(s, "i = {deriv_order}")
        }
        SolveMethod::Variant(NewtonVariant::Extended2 {
            q,
            lambda,
            r,
            deriv_order,
            m,
        }) => {
            writeln!(s, "method = ext2")?;
            writeln!(s, "q = {q}")?;
            writeln!(s, "lambda = {lambda}")?;
            writeln!(s, "r = {r}")?;
            writeln!(s, "i = {deriv_order}")?;
            writeln!(s, "m = {m}")
        }
        SolveMethod::Murase(MuraseMethod::First) => writeln!(s, "method = murase1"),
        SolveMethod::Murase(MuraseMethod::Second) => writeln!(s, "method = murase2"),
        SolveMethod::Murase(MuraseMethod::Third) => writeln!(s, "method = murase3"),
    }
}
