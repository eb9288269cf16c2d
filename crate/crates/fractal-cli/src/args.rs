//! Command-line parsing: flags resolve onto the same key-value settings
//! that presets and config files use, so one builder validates them all.
//!
//! Resolution order: preset, then config file, then explicit flags.

use std::fs;

use crate::config::{build_run, dump_config, RunConfig, Settings};
use crate::presets;
use crate::run::RunError;

pub const USAGE: &str = "\
usage: fractal <render|compare|solve|orbit> [options]
       fractal presets

common options:
  --preset NAME          start from a named preset (see `fractal presets`)
  --config FILE          load a saved key=value config
  --dump-config PATH     write the resolved config before running
  --grid A,B,C,D         window re_min,re_max,im_min,im_max (default -2.5,1.5,-2,2)
  --size WxH             resolution (default 256x256)
  --iters N              iteration budget (default 100; solve 200)
  --workers K            scan worker threads, 0 = all cores
  --out PATH             output file (render: PGM image; others: text)

render / orbit / compare:
  --spec S               recurrence, e.g. power:d=2 | mm1:p=1,m=2 |
                         mm2:p=2 | mm3:m=6,n=1/3,branch=1 | murase1 |
                         genp:m=2,poly=1;-1;0.25
                         (repeat --spec for compare)
  --radius R             escape radius >= 1, or `auto` (power-map bailout)
  --branch N             sheet index for the recurrence's fractional power
  --c RE[,IM]            orbit parameter point
  --threshold X          compare pass threshold (default 0.99)
  --expect agree|differ  compare expectation (default agree)

solve:
  --poly A0,A1,...       coefficients, leading first
  --hearth               the 1673 cubic x^3 - 14x^2 + 48, x0 = 1, root 2
  --method M             newton | mn | th | ext1 | ext2 | murase1|2|3
  --q X  --lambda X  --r X  --i N  --m X
  --x0 RE[,IM]           starting point
  --root RE[,IM]         reference root for error/order columns
";

/// Flags that carry a value, mapped to their settings key.
const VALUE_FLAGS: &[(&str, &str)] = &[
    ("--grid", "grid"),
    ("--size", "size"),
    ("--radius", "radius"),
    ("--iters", "iters"),
    ("--branch", "branch"),
    ("--workers", "workers"),
    ("--out", "out"),
    ("--threshold", "threshold"),
    ("--expect", "expect"),
    ("--poly", "poly"),
    ("--method", "method"),
    ("--q", "q"),
    ("--lambda", "lambda"),
    ("--r", "r"),
    ("--i", "i"),
    ("--m", "m"),
    ("--x0", "x0"),
    ("--root", "root"),
    ("--c", "c"),
];

pub struct ParsedCli {
    pub run: RunConfig,
    pub dump_config_path: Option<String>,
}

pub enum CliAction {
    Run(Box<ParsedCli>),
    Help,
    ListPresets,
}

/// Parses argv (without the program name) into a validated action.
pub fn parse_cli(args: &[String]) -> Result<CliAction, RunError> {
    let usage = |msg: String| RunError::Usage(format!("{msg}\n\n{USAGE}"));
    let command = args
        .first()
        .ok_or_else(|| usage("missing command".into()))?;
    if command == "--help" || command == "-h" || command == "help" {
        return Ok(CliAction::Help);
    }
    if command == "presets" {
        return Ok(CliAction::ListPresets);
    }
    if !["render", "compare", "solve", "orbit"].contains(&command.as_str()) {
        return Err(usage(format!("unknown command: {command}")));
    }

    let mut preset_settings: Option<Settings> = None;
    let mut file_settings: Option<Settings> = None;
    let mut flag_settings = Settings::default();
    let mut specs: Vec<String> = Vec::new();
    let mut dump_config_path = None;

    let mut idx = 1;
    let value_of = |i: &mut usize, flag: &str| -> Result<String, RunError> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| usage(format!("{flag} needs a value")))
    };
    while idx < args.len() {
        let flag = args[idx].as_str();
        match flag {
            "--preset" => {
                let name = value_of(&mut idx, flag)?;
                let preset =
                    presets::find(&name).ok_or_else(|| usage(format!("unknown preset: {name}")))?;
                preset_settings = Some(preset.settings());
            }
            "--config" => {
                let path = value_of(&mut idx, flag)?;
                let text = fs::read_to_string(&path)
                    .map_err(|e| RunError::Io(format!("cannot read {path}: {e}")))?;
                file_settings = Some(Settings::parse(&text).map_err(RunError::Usage)?);
            }
            "--dump-config" => {
                dump_config_path = Some(value_of(&mut idx, flag)?);
            }
            "--hearth" => {
                flag_settings.set("poly", "1,-14,0,48");
                flag_settings.set("x0", "1");
                flag_settings.set("root", "2");
            }
            "--spec" => {
                specs.push(value_of(&mut idx, flag)?);
            }
            _ => match VALUE_FLAGS.iter().find(|(f, _)| *f == flag) {
                Some((_, key)) => {
                    let value = value_of(&mut idx, flag)?;
                    flag_settings.set(key, value);
                }
                None => return Err(usage(format!("unknown flag: {flag}"))),
            },
        }
        idx += 1;
    }

    match (command.as_str(), specs.len()) {
        (_, 0) => {}
        ("compare", _) => {
            for (i, spec) in specs.iter().enumerate() {
                flag_settings.set(&format!("spec{}", i + 1), spec.clone());
            }
        }
        ("render" | "orbit", 1) => flag_settings.set("spec", specs[0].clone()),
        ("render" | "orbit", _) => {
            return Err(usage("render and orbit take a single --spec".into()));
        }
        (_, _) => return Err(usage("--spec does not apply to solve".into())),
    }

    let mut settings = Settings::default();
    settings.set("command", command.clone());
    if let Some(preset) = preset_settings {
        check_command_matches(command, &preset)?;
        settings.merge_from(preset);
        settings.set("command", command.clone());
    }
    if let Some(file) = file_settings {
        check_command_matches(command, &file)?;
        settings.merge_from(file);
        settings.set("command", command.clone());
    }
    settings.merge_from(flag_settings);

    let run = build_run(&settings).map_err(usage)?;
    Ok(CliAction::Run(Box::new(ParsedCli {
        run,
        dump_config_path,
    })))
}

fn check_command_matches(command: &str, settings: &Settings) -> Result<(), RunError> {
    match settings.get("command") {
        Some(other) if other != command => Err(RunError::Usage(format!(
            "this configuration is for `{other}`, not `{command}`"
        ))),
        _ => Ok(()),
    }
}

/// Full CLI flow: parse, optionally dump the resolved config, execute.
pub fn run_cli(args: &[String]) -> Result<String, RunError> {
    let parsed = match parse_cli(args)? {
        CliAction::Help => return Ok(USAGE.to_string()),
        CliAction::ListPresets => {
            let mut out = String::new();
            for p in presets::PRESETS {
                out.push_str(&format!("{:<18} v{}  {}\n", p.name, p.version, p.summary));
            }
            return Ok(out);
        }
        CliAction::Run(parsed) => parsed,
    };
    if let Some(path) = &parsed.dump_config_path {
        fs::write(path, dump_config(&parsed.run))
            .map_err(|e| RunError::Io(format!("cannot write {path}: {e}")))?;
    }
    crate::run::execute(&parsed.run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn parse_run(s: &str) -> Result<ParsedCli, RunError> {
        match parse_cli(&argv(s))? {
            CliAction::Run(parsed) => Ok(*parsed),
            _ => panic!("expected a run action"),
        }
    }

    #[test]
    fn preset_with_flag_overrides() {
        let parsed = parse_run("render --preset mandelbrot --size 64x64 --iters 50").unwrap();
        match parsed.run {
            RunConfig::Render(cfg) => {
                assert_eq!(cfg.grid.width, 64);
                assert_eq!(cfg.max_iter, 50);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn branch_flag_reaches_the_spec() {
        let parsed = parse_run("render --preset m6c1-3 --branch 2").unwrap();
        match parsed.run {
            RunConfig::Render(cfg) => match cfg.job.spec {
                fractal_core::Recurrence::Mm3 { branch, .. } => assert_eq!(branch, 2),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn compare_collects_repeated_specs() {
        let parsed =
            parse_run("compare --spec power:d=2 --spec mm1:p=1,m=0 --threshold 0.9").unwrap();
        match parsed.run {
            RunConfig::Compare(cfg) => assert_eq!(cfg.jobs.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hearth_shorthand() {
        let parsed = parse_run("solve --hearth").unwrap();
        match parsed.run {
            RunConfig::Solve(cfg) => {
                assert_eq!(cfg.x0, fractal_core::Complex::new(1.0, 0.0));
                assert_eq!(
                    cfg.reference_root,
                    Some(fractal_core::Complex::new(2.0, 0.0))
                );
                assert_eq!(cfg.poly.degree(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            parse_cli(&argv("paint --preset mandelbrot")),
            Err(RunError::Usage(_))
        ));
        assert!(matches!(
            parse_cli(&argv("render --preset nosuch")),
            Err(RunError::Usage(_))
        ));
        assert!(matches!(
            parse_cli(&argv("solve --preset mandelbrot")),
            Err(RunError::Usage(_))
        ));
        assert!(matches!(
            parse_cli(&argv("render --radius")),
            Err(RunError::Usage(_))
        ));
    }
}
