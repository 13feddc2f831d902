//! Bundled fixtures and their golden reports.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::commands::{run, Command, KindArg};
use crate::problem::{InputError, Problem, ProblemSpec};
use crate::report::{Body, ExampleLine, Report, REPORT_SCHEMA};

pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "point_square", source: include_str!("../fixtures/point_square.toml") },
    Fixture { name: "hilbert_burch", source: include_str!("../fixtures/hilbert_burch.toml") },
    Fixture { name: "coordinate_axes", source: include_str!("../fixtures/coordinate_axes.toml") },
    Fixture { name: "ci_line", source: include_str!("../fixtures/ci_line.toml") },
    Fixture { name: "ci_point", source: include_str!("../fixtures/ci_point.toml") },
    Fixture { name: "random_good", source: include_str!("../fixtures/random_good.toml") },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// Directory holding `<fixture>.json` golden files in the source tree.
pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("golden")
}

impl Fixture {
    pub fn spec(&self) -> ProblemSpec {
        ProblemSpec::from_toml(self.source).expect("bundled fixtures are valid")
    }

    pub fn problem(&self) -> Problem {
        self.spec().build(self.name).expect("bundled fixtures are valid")
    }

    /// The commands replayed by `examples` for this fixture.
    pub fn commands(&self) -> Vec<Command> {
        use Command::*;
        let en = || Complex { kind: KindArg::En, max_degree: None };
        let br = || Complex { kind: KindArg::Br, max_degree: None };
        let betti = || Betti { kind: KindArg::En };
        let hilbert = || Hilbert { max_degree: None };
        let ann = || Annihilator { max_degree: Some(8) };
        let augment = || Section { row: None, witness: false, max_degree: None };
        let witness = || Section { row: None, witness: true, max_degree: None };
        match self.name {
            "point_square" => vec![
                Classify,
                Minors { size: Some(2) },
                Minors { size: Some(1) },
                en(),
                br(),
                betti(),
                Betti { kind: KindArg::Br },
                CmType,
                ann(),
                augment(),
                hilbert(),
            ],
            "hilbert_burch" | "coordinate_axes" => vec![
                Classify,
                Minors { size: None },
                en(),
                br(),
                betti(),
                CmType,
                ann(),
                Flag,
                augment(),
                witness(),
                Canonical { max_degree: None },
                hilbert(),
            ],
            "ci_line" => vec![Classify, en(), br(), betti(), CmType, ann(), Flag, augment(), Canonical { max_degree: None }, hilbert()],
            "ci_point" => vec![Classify, en(), br(), betti(), CmType, ann(), Flag, augment(), hilbert()],
            _ => vec![Classify, Minors { size: None }, en(), br(), betti(), CmType, Flag, augment(), hilbert()],
        }
    }

    /// Canonical reports of every command, in order.
    pub fn reports(&self) -> Result<Vec<Report>, InputError> {
        let problem = self.problem();
        self.commands().iter().map(|c| run(c, &problem, None).map(|r| r.canonical())).collect()
    }
}

fn golden_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.json"))
}

/// Replays every fixture and compares with (or, when blessing, rewrites) the golden files.
pub fn run_examples(golden_dir: &Path, bless: bool) -> Result<Report, InputError> {
    let start = Instant::now();
    let mut lines = Vec::new();
    for f in FIXTURES {
        let reports = f.reports()?;
        let path = golden_path(golden_dir, f.name);
        if bless {
            let text = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
            std::fs::create_dir_all(golden_dir).map_err(|e| InputError(format!("{}: {e}", golden_dir.display())))?;
            std::fs::write(&path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        }
        let golden: Option<Vec<Report>> =
            std::fs::read_to_string(&path).ok().and_then(|t| serde_json::from_str(&t).ok());
        for r in &reports {
            let status = match golden.as_ref().map(|g| g.iter().find(|o| o.command == r.command)) {
                None => "no golden file",
                Some(None) => "missing",
                Some(Some(g)) if g == r => {
                    if bless {
                        "blessed"
                    } else {
                        "match"
                    }
                }
                Some(Some(_)) => "mismatch",
            };
            lines.push(ExampleLine { fixture: f.name.into(), command: r.command.clone(), status: status.into() });
        }
    }
    let bad: Vec<&ExampleLine> = lines.iter().filter(|l| l.status != "match" && l.status != "blessed").collect();
    let failed_invariant = (!bad.is_empty()).then(|| {
        let first = bad[0];
        format!("golden comparison ({} {}: {})", first.fixture, first.command, first.status)
    });
    Ok(Report {
        schema: REPORT_SCHEMA,
        command: if bless { "examples --bless".into() } else { "examples".into() },
        input: golden_dir.display().to_string(),
        seed: 0,
        ok: failed_invariant.is_none(),
        failed_invariant,
        result: Body::Examples { lines },
        timing_us: Some(start.elapsed().as_micros() as u64),
    })
}
