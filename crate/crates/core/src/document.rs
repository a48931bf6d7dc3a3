//! JSON description of a fuzzy linear system.
//!
//! ```json
//! {
//!   "n": 2,
//!   "matrix": [[1, -1], [1, 2]],
//!   "rhs": [
//!     {"type": "triangular", "a": 0, "c": 1, "b": 2},
//!     {"type": "crisp", "a": 3},
//!     {"type": "sampled", "grid": [0, 1], "lower": [0, 1], "upper": [2, 1]}
//!   ],
//!   "grid_points": 101
//! }
//! ```
//!
//! Parsing errors name the offending field (`matrix[1][0]`, `rhs[2].upper`).

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::fuzzy::{is_valid_fuzzy, make_triangular, FuzzyNumber, RGrid, Sampled, VALIDITY_TOL};
use crate::linalg::Matrix;
use crate::system::FuzzySystem;

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

impl DocumentError {
    fn field(field: impl Into<String>, message: impl ToString) -> Self {
        DocumentError::Field {
            field: field.into(),
            message: message.to_string(),
        }
    }

    /// The located field, when the error is not a JSON syntax error.
    pub fn field_name(&self) -> Option<&str> {
        match self {
            DocumentError::Field { field, .. } => Some(field),
            DocumentError::Syntax(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RhsEntry {
    Triangular {
        a: f64,
        c: f64,
        b: f64,
    },
    Crisp {
        a: f64,
    },
    Sampled {
        grid: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
}

impl RhsEntry {
    pub fn from_fuzzy(u: &FuzzyNumber) -> Self {
        match u {
            &FuzzyNumber::Triangular { a, c, b } => RhsEntry::Triangular { a, c, b },
            &FuzzyNumber::Crisp(a) => RhsEntry::Crisp { a },
            FuzzyNumber::Sampled(s) => RhsEntry::Sampled {
                grid: s.grid().points().to_vec(),
                lower: s.lower().to_vec(),
                upper: s.upper().to_vec(),
            },
        }
    }

    /// Converts without checking the fuzzy-number axioms; `field` locates
    /// structural errors.
    pub fn to_fuzzy(&self, field: &str) -> Result<FuzzyNumber, DocumentError> {
        match self {
            &RhsEntry::Triangular { a, c, b } => {
                make_triangular(a, c, b).map_err(|e| DocumentError::field(field, e))
            }
            &RhsEntry::Crisp { a } => Ok(FuzzyNumber::crisp(a)),
            RhsEntry::Sampled { grid, lower, upper } => {
                let grid = RGrid::new(grid.clone())
                    .map_err(|e| DocumentError::field(format!("{field}.grid"), e))?;
                Sampled::new(grid, lower.clone(), upper.clone())
                    .map(FuzzyNumber::Sampled)
                    .map_err(|e| DocumentError::field(field, e))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub n: usize,
    pub matrix: Vec<Vec<f64>>,
    pub rhs: Vec<RhsEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
}

const FIELDS: [&str; 4] = ["n", "matrix", "rhs", "grid_points"];

fn take<T: serde::de::DeserializeOwned>(
    obj: &mut Map<String, Value>,
    key: &str,
) -> Result<Option<T>, DocumentError> {
    match obj.remove(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => serde_json::from_value(v)
            .map(Some)
            .map_err(|e| DocumentError::field(key, e)),
    }
}

fn required<T: serde::de::DeserializeOwned>(
    obj: &mut Map<String, Value>,
    key: &str,
) -> Result<T, DocumentError> {
    take(obj, key)?.ok_or_else(|| DocumentError::field(key, "missing required field"))
}

impl SystemDocument {
    /// Parses the JSON text and checks the document shape. Values are only
    /// validated as fuzzy numbers by [`SystemDocument::to_system`].
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let value: Value = serde_json::from_str(text)?;
        let Value::Object(mut obj) = value else {
            return Err(DocumentError::field("<root>", "expected a JSON object"));
        };
        if let Some(unknown) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(DocumentError::field(unknown.clone(), "unknown field"));
        }
        let n: usize = required(&mut obj, "n")?;
        let matrix: Vec<Value> = required(&mut obj, "matrix")?;
        let rhs: Vec<Value> = required(&mut obj, "rhs")?;
        let grid_points: Option<usize> = take(&mut obj, "grid_points")?;

        if n == 0 {
            return Err(DocumentError::field("n", "must be at least 1"));
        }
        if matrix.len() != n {
            return Err(DocumentError::field(
                "matrix",
                format!("expected {n} rows, found {}", matrix.len()),
            ));
        }
        let matrix = matrix
            .into_iter()
            .enumerate()
            .map(|(i, row)| parse_row(i, row, n))
            .collect::<Result<Vec<_>, _>>()?;
        if rhs.len() != n {
            return Err(DocumentError::field(
                "rhs",
                format!("expected {n} entries, found {}", rhs.len()),
            ));
        }
        let rhs = rhs
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                serde_json::from_value::<RhsEntry>(v)
                    .map_err(|e| DocumentError::field(format!("rhs[{i}]"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(g) = grid_points {
            if g < 2 {
                return Err(DocumentError::field("grid_points", "must be at least 2"));
            }
        }
        Ok(Self {
            n,
            matrix,
            rhs,
            grid_points,
        })
    }

    /// Builds the system, checking every right-hand side entry against the
    /// fuzzy-number axioms.
    pub fn to_system(&self) -> Result<FuzzySystem, DocumentError> {
        let a = Matrix::from_rows(&self.matrix).map_err(|e| DocumentError::field("matrix", e))?;
        let rhs = self
            .rhs
            .iter()
            .enumerate()
            .map(|(i, e)| e.to_fuzzy(&format!("rhs[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, b) in rhs.iter().enumerate() {
            let validity = is_valid_fuzzy(b, &b.natural_grid(), VALIDITY_TOL);
            if let Some(v) = validity.violations.first() {
                return Err(DocumentError::field(
                    format!("rhs[{i}]"),
                    format!("not a fuzzy number: {v}"),
                ));
            }
        }
        FuzzySystem::new(a, rhs).map_err(|e| DocumentError::field("rhs", e))
    }

    pub fn from_system(sys: &FuzzySystem, grid_points: Option<usize>) -> Self {
        Self {
            n: sys.n(),
            matrix: sys.matrix().rows(),
            rhs: sys.rhs().iter().map(RhsEntry::from_fuzzy).collect(),
            grid_points,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

fn parse_row(i: usize, row: Value, n: usize) -> Result<Vec<f64>, DocumentError> {
    let Value::Array(items) = row else {
        return Err(DocumentError::field(
            format!("matrix[{i}]"),
            "expected an array",
        ));
    };
    if items.len() != n {
        return Err(DocumentError::field(
            format!("matrix[{i}]"),
            format!("expected {n} entries, found {}", items.len()),
        ));
    }
    items
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| {
                DocumentError::field(format!("matrix[{i}][{j}]"), "expected a number")
            })
        })
        .collect()
}

/// Parses and validates in one step.
pub fn parse_system(text: &str) -> Result<(FuzzySystem, Option<usize>), DocumentError> {
    let doc = SystemDocument::parse(text)?;
    Ok((doc.to_system()?, doc.grid_points))
}
