//! Command-line surface for the fractal engine: render membership maps
//! to PGM images, compare equivalent maps, run the polynomial solvers,
//! and dump orbits. Every reference figure is reachable through a named
//! preset (`fractal presets`).

pub mod args;
pub mod config;
pub mod pgm;
pub mod presets;
pub mod run;
pub mod spec_str;

pub use args::{parse_cli, run_cli, CliAction, USAGE};
pub use config::{build_run, dump_config, RunConfig, Settings};
pub use run::RunError;
