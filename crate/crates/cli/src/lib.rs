//! Command-line front end for `detscheme-core`: TOML problem files, one
//! structured [`report::Report`] per command, and bundled fixtures replayed
//! against golden files.

pub mod commands;
pub mod fixtures;
pub mod problem;
pub mod report;

pub use commands::{run, Command, KindArg};
pub use problem::{InputError, Problem, ProblemSpec};
pub use report::{Body, Report};

/// Loads a problem from a path, or from a bundled fixture when no such file exists.
pub fn load_problem(arg: &str) -> Result<Problem, InputError> {
    let path = std::path::Path::new(arg);
    if path.exists() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
        return ProblemSpec::load(path)?.build(stem);
    }
    match fixtures::fixture(arg) {
        Some(f) => ProblemSpec::from_toml(f.source)?.build(f.name),
        None => Err(InputError(format!("{arg}: no such file or bundled fixture"))),
    }
}
