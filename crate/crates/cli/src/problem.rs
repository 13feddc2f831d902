//! Problem files: a TOML document naming a ring and a homogeneous matrix.
//!
//! ```toml
//! schema = 1
//! seed = 0
//! d_max = 10
//!
//! [ring]
//! vars = ["x0", "x1", "x2", "x3"]
//! field = "QQ"          # or "Fp:32003"
//! order = "grevlex"     # or "lex"
//!
//! [matrix]
//! entries = [["x1", "x2", "x3", "0"], ["0", "x1", "x2", "x3"]]
//! row_twists = [0, 0]   # optional
//! col_twists = [1, 1, 1, 1]
//! ```

use std::fmt;
use std::path::Path;

use detscheme_core::{
    DeterminantalPresentation, Field, GradedFreeModule, Homogeneity, HomogeneousMatrix, MonomialOrder, PolyRing,
    Polynomial, Ring,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingSpec,
    pub matrix: MatrixSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row_twists: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_twists: Option<Vec<i64>>,
}

/// Anything wrong with the input; the CLI exits with code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

impl From<detscheme_core::Error> for InputError {
    fn from(e: detscheme_core::Error) -> Self {
        InputError(e.to_string())
    }
}

/// A loaded problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub ring: Ring,
    pub matrix: HomogeneousMatrix,
    pub seed: Option<u64>,
    pub d_max: Option<i64>,
}

impl Problem {
    pub fn presentation(&self) -> Result<DeterminantalPresentation, InputError> {
        Ok(DeterminantalPresentation::new(self.matrix.clone())?)
    }
}

pub fn parse_field(text: &str) -> Result<Field, InputError> {
    match text {
        "QQ" => Ok(Field::Rational),
        _ => {
            let p = text
                .strip_prefix("Fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| InputError(format!("ring.field must be \"QQ\" or \"Fp:<prime>\", got {text:?}")))?;
            Ok(Field::prime(p)?)
        }
    }
}

pub fn parse_order(text: Option<&str>) -> Result<MonomialOrder, InputError> {
    match text.unwrap_or("grevlex") {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(InputError(format!("ring.order must be \"grevlex\" or \"lex\", got {other:?}"))),
    }
}

impl ProblemSpec {
    pub fn from_toml(text: &str) -> Result<ProblemSpec, InputError> {
        let spec: ProblemSpec = toml::from_str(text).map_err(|e| InputError(format!("schema violation: {e}")))?;
        if spec.schema != SCHEMA_VERSION {
            return Err(InputError(format!("unsupported schema version {} (expected {SCHEMA_VERSION})", spec.schema)));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<ProblemSpec, InputError> {
        let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        ProblemSpec::from_toml(&text)
    }

    pub fn build(&self, fallback_name: &str) -> Result<Problem, InputError> {
        let field = parse_field(&self.ring.field)?;
        let order = parse_order(self.ring.order.as_deref())?;
        let ring = PolyRing::new(self.ring.vars.iter().cloned(), field, order)?;
        let rows = self.matrix.entries.len();
        let cols = self.matrix.entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(InputError("matrix.entries must be a nonempty grid".into()));
        }
        if self.matrix.entries.iter().any(|r| r.len() != cols) {
            return Err(InputError("matrix.entries is not rectangular".into()));
        }
        let mut entries = Vec::with_capacity(rows);
        for (i, row) in self.matrix.entries.iter().enumerate() {
            let mut parsed = Vec::with_capacity(cols);
            for (j, text) in row.iter().enumerate() {
                parsed.push(ring.parse(text).map_err(|e| InputError(format!("entry ({i}, {j}): {e}")))?);
            }
            entries.push(parsed);
        }
        let matrix = match (&self.matrix.row_twists, &self.matrix.col_twists) {
            (None, None) => HomogeneousMatrix::from_entries(&ring, entries)?,
            (rt, ct) => {
                let (rt, ct) = complete_twists(&entries, rt.clone(), ct.clone())?;
                if rt.len() != rows || ct.len() != cols {
                    return Err(InputError(format!(
                        "twists have lengths {}/{} for a {rows}x{cols} matrix",
                        rt.len(),
                        ct.len()
                    )));
                }
                HomogeneousMatrix::new(&ring, GradedFreeModule::new(rt), GradedFreeModule::new(ct), entries)?
            }
        };
        if self.d_max == Some(0) {
            return Err(InputError("d_max must be positive".into()));
        }
        Ok(Problem {
            name: self.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            ring,
            matrix,
            seed: self.seed,
            d_max: self.d_max.map(i64::from),
        })
    }
}

fn degree(p: &Polynomial) -> Result<Option<i64>, InputError> {
    match p.homogeneous_degree() {
        Homogeneity::Degree(d) => Ok(Some(d as i64)),
        Homogeneity::Zero => Ok(None),
        Homogeneity::NotHomogeneous => Err(InputError(format!("entry {p} is not homogeneous"))),
    }
}

/// Fills in whichever side is missing from the entry degrees.
fn complete_twists(
    entries: &[Vec<Polynomial>],
    rt: Option<Vec<i64>>,
    ct: Option<Vec<i64>>,
) -> Result<(Vec<i64>, Vec<i64>), InputError> {
    let cols = entries.first().map_or(0, Vec::len);
    match (rt, ct) {
        (Some(rt), Some(ct)) => Ok((rt, ct)),
        (Some(rt), None) => {
            let mut ct = vec![0; cols];
            for (j, c) in ct.iter_mut().enumerate() {
                for (i, row) in entries.iter().enumerate() {
                    if let (Some(d), Some(a)) = (degree(&row[j])?, rt.get(i)) {
                        *c = a + d;
                        break;
                    }
                }
            }
            Ok((rt, ct))
        }
        (None, Some(ct)) => {
            let mut rt = vec![0; entries.len()];
            for (i, row) in entries.iter().enumerate() {
                for (j, e) in row.iter().enumerate() {
                    if let (Some(d), Some(b)) = (degree(e)?, ct.get(j)) {
                        rt[i] = b - d;
                        break;
                    }
                }
            }
            Ok((rt, ct))
        }
        (None, None) => unreachable!("handled by inference"),
    }
}
