//! Machine-readable reports. Every subcommand yields one [`Report`]; `--json`
//! prints it verbatim, otherwise [`Report::render`] gives a terse text form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub seed: u64,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_invariant: Option<String>,
    pub result: Body,
    /// Wall-clock time; the only field allowed to differ between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl Report {
    /// The report with timing removed, as used for golden files and determinism checks.
    pub fn canonical(&self) -> Report {
        Report { timing_us: None, ..self.clone() }
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.canonical()).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

/// A height; `None` is the unit ideal.
pub type HeightValue = Option<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: i64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row_combination: Vec<String>,
    pub kept_rows: Vec<Vec<String>>,
    pub literal: bool,
    pub seed: u64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub t: usize,
    pub r: usize,
    pub expected_codim: usize,
    pub required_submaximal_height: usize,
    pub actual_height: HeightValue,
    pub submaximal_height: HeightValue,
    pub is_standard: bool,
    pub is_good: bool,
    pub empty_scheme: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicityLine {
    pub position: usize,
    pub expected_rank: usize,
    pub computed_rank: usize,
    pub minor_height: HeightValue,
    pub rank_ok: bool,
    pub height_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessFailure {
    pub position: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagLine {
    pub t: usize,
    pub r: usize,
    pub codim: usize,
    pub is_good: bool,
    pub seed: Option<u64>,
    pub contained_in_previous: Option<bool>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionLine {
    pub degree: i64,
    pub hf_ms: usize,
    pub hf_shifted_quotient: usize,
    pub hf_mx: usize,
    pub additive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertLine {
    pub degree: i64,
    pub quotient: usize,
    pub standard_monomials: usize,
    pub cokernel: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleLine {
    pub fixture: String,
    pub command: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Classify(Classification),
    Minors {
        size: usize,
        minors: Vec<String>,
        height: HeightValue,
        minimal_generators: Vec<DegreeCount>,
    },
    Complex {
        complex: String,
        ranks: Vec<usize>,
        twists: Vec<Vec<i64>>,
        is_complex: bool,
        acyclicity: Vec<AcyclicityLine>,
        acyclic: bool,
        degrees: (i64, i64),
        exact: bool,
        exactness_failures: Vec<ExactnessFailure>,
    },
    Betti {
        complex: String,
        ranks: Vec<usize>,
        table: Vec<Vec<DegreeCount>>,
    },
    CmType {
        t: usize,
        r: usize,
        cm_type: usize,
        binomial: usize,
    },
    Annihilator {
        d_max: i64,
        minors_checked: usize,
        annihilator_dims: Vec<DegreeCount>,
        failure: Option<String>,
    },
    Flag {
        stages: Vec<FlagLine>,
        codims: Vec<usize>,
        verified: bool,
    },
    Section {
        deleted: String,
        augmented_seed: Option<u64>,
        psi: Vec<Vec<String>>,
        phi: Vec<Vec<String>>,
        twist: i64,
        records: Vec<SectionLine>,
    },
    Canonical {
        presentation: Vec<Vec<String>>,
        target_twists: Vec<i64>,
        source_twists: Vec<i64>,
        shift: i64,
        checked: (i64, i64),
        cyclic: bool,
    },
    Hilbert {
        lines: Vec<HilbertLine>,
    },
    Examples {
        lines: Vec<ExampleLine>,
    },
    Error {
        message: String,
    },
}

fn h(v: HeightValue) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

fn grid(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

impl Report {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let status = if self.ok { "ok" } else { "FAILED" };
        let _ = writeln!(s, "{} on {} (seed {}): {status}", self.command, self.input, self.seed);
        if let Some(inv) = &self.failed_invariant {
            let _ = writeln!(s, "failed invariant: {inv}");
        }
        match &self.result {
            Body::Classify(c) => {
                let _ = writeln!(s, "t={} r={}", c.t, c.r);
                let _ = writeln!(s, "height {} (expected {})", h(c.actual_height), c.expected_codim);
                let _ = writeln!(s, "submaximal height {} (needs {})", h(c.submaximal_height), c.required_submaximal_height);
                let _ = writeln!(s, "standard={} good={} empty={}", c.is_standard, c.is_good, c.empty_scheme);
                if let Some(w) = &c.witness {
                    let _ = writeln!(
                        s,
                        "witness row ({}) literal={} verified={}",
                        w.row_combination.join(", "),
                        w.literal,
                        w.verified
                    );
                }
            }
            Body::Minors { size, minors, height, minimal_generators } => {
                let _ = writeln!(s, "{} nonzero {size}-minors, height {}", minors.len(), h(*height));
                for m in minors {
                    let _ = writeln!(s, "  {m}");
                }
                let gens: Vec<String> =
                    minimal_generators.iter().map(|g| format!("{}x deg {}", g.count, g.degree)).collect();
                let _ = writeln!(s, "minimal generators: {}", gens.join(", "));
            }
            Body::Complex { complex, ranks, twists, is_complex, acyclicity, acyclic, degrees, exact, exactness_failures } => {
                let _ = writeln!(s, "{complex}: ranks {ranks:?}");
                for (i, t) in twists.iter().enumerate() {
                    let _ = writeln!(s, "  F_{i} twists {t:?}");
                }
                let _ = writeln!(s, "d∘d = 0: {is_complex}");
                for a in acyclicity {
                    let _ = writeln!(
                        s,
                        "  d_{}: rank {} (expected {}), minor height {}{}",
                        a.position,
                        a.computed_rank,
                        a.expected_rank,
                        h(a.minor_height),
                        if a.rank_ok && a.height_ok { "" } else { "  <- fails" }
                    );
                }
                let _ = writeln!(s, "acyclic: {acyclic}");
                let _ = writeln!(s, "exact in degrees {}..={}: {exact}", degrees.0, degrees.1);
                for f in exactness_failures {
                    let _ = writeln!(s, "  homology at F_{} in degree {}", f.position, f.degree);
                }
            }
            Body::Betti { complex, ranks, table } => {
                let _ = writeln!(s, "{complex}: ranks {ranks:?}");
                for (i, row) in table.iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|c| format!("{}@{}", c.count, c.degree)).collect();
                    let _ = writeln!(s, "  F_{i}: {}", cells.join(" "));
                }
            }
            Body::CmType { t, r, cm_type, binomial } => {
                let _ = writeln!(s, "t={t} r={r} CM type {cm_type} (binomial {binomial})");
            }
            Body::Annihilator { d_max, minors_checked, annihilator_dims, failure } => {
                let dims: Vec<String> = annihilator_dims.iter().map(|c| c.count.to_string()).collect();
                let _ = writeln!(s, "{minors_checked} minors checked; annihilator dims to degree {d_max}: {}", dims.join(" "));
                if let Some(f) = failure {
                    let _ = writeln!(s, "failure: {f}");
                }
            }
            Body::Flag { stages, codims, verified } => {
                let _ = writeln!(s, "codims {codims:?}, verified {verified}");
                for st in stages {
                    let _ = writeln!(s, "  {}x{} good={} {}", st.t, st.t + st.r, st.is_good, grid(&st.matrix));
                }
            }
            Body::Section { deleted, augmented_seed, psi, phi, twist, records } => {
                if let Some(seed) = augmented_seed {
                    let _ = writeln!(s, "augmented with seed {seed}");
                }
                let _ = writeln!(s, "psi {}", grid(psi));
                let _ = writeln!(s, "deleted {deleted}, twist {twist}");
                let _ = writeln!(s, "phi {}", grid(phi));
                let _ = writeln!(s, "   d  M_S  R/I_S(-a)  M_X");
                for r in records {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>4} {:>10} {:>4}{}",
                        r.degree,
                        r.hf_ms,
                        r.hf_shifted_quotient,
                        r.hf_mx,
                        if r.additive { "" } else { "  <- not additive" }
                    );
                }
            }
            Body::Canonical { presentation, target_twists, source_twists, shift, checked, cyclic } => {
                let _ = writeln!(s, "omega presented by {} ({target_twists:?} <- {source_twists:?})", grid(presentation));
                let _ = writeln!(s, "M_X = omega({shift}) on degrees {}..={}, cyclic={cyclic}", checked.0, checked.1);
            }
            Body::Hilbert { lines } => {
                let _ = writeln!(s, "   d  R/I_X  std-mono  M_X");
                for l in lines {
                    let _ = writeln!(s, "{:>4} {:>6} {:>9} {:>4}", l.degree, l.quotient, l.standard_monomials, l.cokernel);
                }
            }
            Body::Examples { lines } => {
                for l in lines {
                    let _ = writeln!(s, "  {:<16} {:<28} {}", l.fixture, l.command, l.status);
                }
            }
            Body::Error { message } => {
                let _ = writeln!(s, "{message}");
            }
        }
        s
    }
}
