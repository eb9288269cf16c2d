//! Compact one-line syntax for recurrence families, used by `--spec`
//! flags and config files.
//!
//! ```text
//! power:d=2
//! mm1:p=1,m=-1
//! mm2:p=2,branch=1
//! mm3:m=6,n=1/3,branch=2
//! genp:m=2,poly=1;-1;0.25
//! murase1 | murase2 | murase3
//! ```
//!
//! Numbers accept decimals and `a/b` rationals. Formatting always emits
//! decimals (`f64` display round-trips exactly), so a dumped config
//! reloads to the identical run.

use fractal_core::{Polynomial, Recurrence};

/// Parses a decimal or `a/b` rational.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|_| format!("bad number: {s}"))?;
        let d: f64 = den.trim().parse().map_err(|_| format!("bad number: {s}"))?;
        if d == 0.0 {
            return Err(format!("zero denominator in {s}"));
        }
        return Ok(n / d);
    }
    s.parse().map_err(|_| format!("bad number: {s}"))
}

fn parse_integer(s: &str) -> Result<i64, String> {
    s.trim().parse().map_err(|_| format!("bad integer: {s}"))
}

fn fields(body: &str) -> Result<Vec<(&str, &str)>, String> {
    body.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| format!("expected key=value, got {part}"))
        })
        .collect()
}

/// Parses a recurrence spec string.
pub fn parse_recurrence(s: &str) -> Result<Recurrence, String> {
    let s = s.trim();
    let (family, body) = match s.split_once(':') {
        Some((f, b)) => (f.trim(), b),
        None => (s, ""),
    };
    match family {
        "murase1" => return Ok(Recurrence::MuraseFirst),
        "murase2" => return Ok(Recurrence::MuraseSecond),
        "murase3" => return Ok(Recurrence::MuraseThird),
        _ => {}
    }
    let kv = fields(body)?;
    let lookup = |key: &str| kv.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let spec = match family {
        "power" => {
            let d = parse_integer(lookup("d").ok_or("power needs d=")?)?;
            if d < 1 {
                return Err("power requires d >= 1".into());
            }
            Recurrence::PlainPower { d: d as u32 }
        }
        "mm1" => {
            let p = parse_integer(lookup("p").ok_or("mm1 needs p=")?)?;
            if p < 1 {
                return Err("mm1 requires p >= 1".into());
            }
            let m = parse_number(lookup("m").ok_or("mm1 needs m=")?)?;
            let root_branch = match lookup("branch") {
                Some(v) => parse_integer(v)? as i32,
                None => 0,
            };
            Recurrence::Mm1 {
                p: p as u32,
                m,
                root_branch,
            }
        }
        "mm2" => {
            let p = parse_integer(lookup("p").ok_or("mm2 needs p=")?)?;
            if p < 1 {
                return Err("mm2 requires p >= 1".into());
            }
            let root_branch = match lookup("branch") {
                Some(v) => parse_integer(v)? as i32,
                None => 0,
            };
            Recurrence::Mm2 {
                p: p as u32,
                root_branch,
            }
        }
        "mm3" => {
            let m = parse_number(lookup("m").ok_or("mm3 needs m=")?)?;
            let n = parse_number(lookup("n").ok_or("mm3 needs n=")?)?;
            if !(m > 0.0 && n > 0.0) {
                return Err("mm3 requires m > 0 and n > 0".into());
            }
            let branch = match lookup("branch") {
                Some(v) => parse_integer(v)? as i32,
                None => 0,
            };
            Recurrence::Mm3 { m, n, branch }
        }
        "genp" => {
            let m = parse_number(lookup("m").ok_or("genp needs m=")?)?;
            let coeffs: Result<Vec<f64>, String> = lookup("poly")
                .ok_or("genp needs poly=")?
                .split(';')
                .map(parse_number)
                .collect();
            let poly = Polynomial::from_real(&coeffs?).map_err(|e| e.to_string())?;
            if poly.degree() < 2 {
                return Err("genp requires degree >= 2".into());
            }
            let root_branch = match lookup("branch") {
                Some(v) => parse_integer(v)? as i32,
                None => 0,
            };
            Recurrence::GeneralP {
                poly,
                m,
                root_branch,
            }
        }
        other => return Err(format!("unknown recurrence family: {other}")),
    };
    Ok(spec)
}

/// Formats a recurrence so that `parse_recurrence` reproduces it exactly.
pub fn format_recurrence(spec: &Recurrence) -> String {
    match spec {
        Recurrence::MuraseFirst => "murase1".into(),
        Recurrence::MuraseSecond => "murase2".into(),
        Recurrence::MuraseThird => "murase3".into(),
        Recurrence::PlainPower { d } => format!("power:d={d}"),
        Recurrence::Mm1 { p, m, root_branch } => {
            format!("mm1:p={p},m={m},branch={root_branch}")
        }
        Recurrence::Mm2 { p, root_branch } => format!("mm2:p={p},branch={root_branch}"),
        Recurrence::Mm3 { m, n, branch } => format!("mm3:m={m},n={n},branch={branch}"),
        Recurrence::GeneralP {
            poly,
            m,
            root_branch,
        } => {
            let coeffs: Vec<String> = poly.coeffs().iter().map(|c| c.re.to_string()).collect();
            format!("genp:m={m},branch={root_branch},poly={}", coeffs.join(";"))
        }
    }
}

/// Replaces the branch index of a parsed spec, for the `--branch` flag.
/// Families without a sheet choice reject nonzero indices.
pub fn with_branch(spec: Recurrence, branch: i32) -> Result<Recurrence, String> {
    match spec {
        Recurrence::Mm1 { p, m, .. } => Ok(Recurrence::Mm1 {
            p,
            m,
            root_branch: branch,
        }),
        Recurrence::Mm2 { p, .. } => Ok(Recurrence::Mm2 {
            p,
            root_branch: branch,
        }),
        Recurrence::Mm3 { m, n, .. } => Ok(Recurrence::Mm3 { m, n, branch }),
        Recurrence::GeneralP { poly, m, .. } => Ok(Recurrence::GeneralP {
            poly,
            m,
            root_branch: branch,
        }),
        other if branch == 0 => Ok(other),
        _ => Err("this recurrence family has no branch index".into()),
    }
}
