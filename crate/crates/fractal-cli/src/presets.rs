//! Named, versioned run presets: one per reference figure plus the
//! historical hearth problem.
//!
//! A preset is a config snippet merged below any config file and explicit
//! flags, so `--branch`, `--size`, `--out` etc. refine it. The default
//! framing window [-2.5, 1.5] x [-2, 2] is an artifact choice.

use crate::config::Settings;

pub struct Preset {
    pub name: &'static str,
    pub version: u32,
    pub summary: &'static str,
    config: fn() -> String,
}

/// Rigorous parameter-plane bailout for `z^d + c` scans from `z_0 = 0`:
/// `2^(1/(d-1))`. Maps whose orbits are the `n`-th power of such an orbit
/// use the same bound raised to `n`.
fn power_bailout(d: u32) -> f64 {
    2f64.powf(1.0 / f64::from(d - 1))
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "mandelbrot",
        version: 1,
        summary: "the quadratic map z^2 + c on the default window",
        config: || "command = render\nspec = power:d=2\nradius = 2\niters = 100\n".into(),
    },
    Preset {
        name: "nm-1-neg1",
        version: 1,
        summary: "Newton-Mandelbrot NM_{1,c,-1}: z' = (2z^2 + c)/(z + 1)",
        config: || {
            "command = render\nspec = mm1:p=1,m=-1,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "nm-1-0.1",
        version: 1,
        summary: "NM_{1,c,0.1}, close to the Mandelbrot set",
        config: || {
            "command = render\nspec = mm1:p=1,m=0.1,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "nm-1-0.5",
        version: 1,
        summary: "NM_{1,c,0.5}: z' = (z^2 + 2c)/(2 - z)",
        config: || {
            "command = render\nspec = mm1:p=1,m=0.5,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "nm-1-1",
        version: 1,
        summary: "NM_{1,c,1}: z' = c/(1 - z), wide convergence range",
        config: || {
            "command = render\nspec = mm1:p=1,m=1,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "nm-1-2",
        version: 1,
        summary: "NM_{1,c,2}: Newton's method on z^2 - z + c; bounded almost everywhere",
        config: || {
            "command = render\nspec = mm1:p=1,m=2,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "m3c2",
        version: 1,
        summary: "Murase-Mandelbrot M_{3,c,2}: z' = (z^3 + c)^2",
        config: || {
            format!(
                "command = render\nspec = mm3:m=3,n=2,branch=0\nradius = {}\niters = 100\n",
                power_bailout(6).powi(2)
            )
        },
    },
    Preset {
        name: "m6c1-3",
        version: 1,
        summary: "M_{6,c,1/3}: cube-root branches of z^6 + c (use --branch 0|1|2)",
        config: || {
            format!(
                "command = render\nspec = mm3:m=6,n=0.3333333333333333,branch=0\n\
                 radius = {}\niters = 100\n",
                power_bailout(2).powf(1.0 / 3.0)
            )
        },
    },
    Preset {
        name: "m3c1-2",
        version: 1,
        summary: "M_{3,c,1/2}: square-root branches of z^3 + c (use --branch 0|1)",
        config: || {
            "command = render\nspec = mm3:m=3,n=0.5,branch=0\nradius = 4\niters = 100\n".into()
        },
    },
    Preset {
        name: "m1c-sqrt2",
        version: 1,
        summary: "M_{1,c,sqrt(2)}: z' = (z + c)^sqrt(2) (use --branch 0|1|2|3)",
        config: || {
            format!(
                "command = render\nspec = mm3:m=1,n={},branch=0\nradius = 4\niters = 100\n",
                std::f64::consts::SQRT_2
            )
        },
    },
    Preset {
        name: "thm49-mn6",
        version: 1,
        summary: "quartet equivalence M_{6,c,1} = M_{3,c,2} = M_{2,c,3} = M_{1,c,6}",
        config: || {
            let r = power_bailout(6);
            format!(
                "command = compare\n\
                 spec1 = power:d=6\nradius1 = {}\n\
                 spec2 = mm3:m=3,n=2,branch=0\nradius2 = {}\n\
                 spec3 = mm3:m=2,n=3,branch=0\nradius3 = {}\n\
                 spec4 = mm3:m=1,n=6,branch=0\nradius4 = {}\n\
                 iters = 100\nthreshold = 0.99\nexpect = agree\n",
                r,
                r.powi(2),
                r.powi(3),
                r.powi(6)
            )
        },
    },
    Preset {
        name: "m6-third-roots",
        version: 1,
        summary: "each cube-root branch of M_{6,c,1/3} reproduces the Mandelbrot set",
        config: || {
            let r = 2f64.powf(1.0 / 3.0);
            format!(
                "command = compare\n\
                 spec1 = mm3:m=6,n=0.3333333333333333,branch=0\nradius1 = {r}\n\
                 spec2 = mm3:m=6,n=0.3333333333333333,branch=1\nradius2 = {r}\n\
                 spec3 = mm3:m=6,n=0.3333333333333333,branch=2\nradius3 = {r}\n\
                 spec4 = power:d=2\nradius4 = 2\n\
                 iters = 100\nthreshold = 0.99\nexpect = agree\n"
            )
        },
    },
    Preset {
        name: "m3-half-branches",
        version: 1,
        summary: "even vs odd square-root branches of M_{3,c,1/2} are different pictures",
        config: || {
            "command = compare\n\
             spec1 = mm3:m=3,n=0.5,branch=0\nradius1 = 4\n\
             spec2 = mm3:m=3,n=0.5,branch=1\nradius2 = 4\n\
             iters = 100\nthreshold = 0.95\nexpect = differ\n"
                .into()
        },
    },
    Preset {
        name: "hearth",
        version: 1,
        summary: "the 1673 hearth cubic x^3 - 14x^2 + 48 = 0 (thickness root x = 2)",
        config: || {
            "command = solve\npoly = 1,-14,0,48\nmethod = newton\nx0 = 1\nroot = 2\niters = 200\n"
                .into()
        },
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

impl Preset {
    pub fn settings(&self) -> Settings {
        Settings::parse(&(self.config)()).expect("presets are valid configs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::build_run;

    #[test]
    fn every_preset_builds() {
        for preset in PRESETS {
            let run = build_run(&preset.settings())
                .unwrap_or_else(|e| panic!("preset {}: {e}", preset.name));
            assert_eq!(preset.version, 1);
            // sanity: command matches what the summary promises
            match preset.name {
                "thm49-mn6" | "m6-third-roots" | "m3-half-branches" => {
                    assert_eq!(run.command(), "compare")
                }
                "hearth" => assert_eq!(run.command(), "solve"),
                _ => assert_eq!(run.command(), "render"),
            }
        }
    }

    #[test]
    fn every_preset_round_trips_through_the_config_format() {
        use crate::config::{dump_config, Settings};
        for preset in PRESETS {
            let run = build_run(&preset.settings()).unwrap();
            let dumped = dump_config(&run);
            let reloaded = build_run(&Settings::parse(&dumped).unwrap())
                .unwrap_or_else(|e| panic!("preset {} reload: {e}", preset.name));
            assert_eq!(
                run, reloaded,
                "preset {} changed across dump/reload",
                preset.name
            );
        }
    }

    #[test]
    fn preset_names_match_the_published_set() {
        let names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        for expected in [
            "mandelbrot",
            "nm-1-neg1",
            "nm-1-0.1",
            "nm-1-0.5",
            "nm-1-1",
            "nm-1-2",
            "m3c2",
            "m6c1-3",
            "m3c1-2",
            "m1c-sqrt2",
            "thm49-mn6",
            "m6-third-roots",
            "m3-half-branches",
            "hearth",
        ] {
            assert!(names.contains(&expected), "missing preset {expected}");
        }
    }
}
