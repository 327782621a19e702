//! JSON descriptions of algebra inputs.
//!
//! An input file names a coefficient field, a generator count n, and exactly
//! one of three bodies:
//!
//! * `"R"`: a dense n²×n² grid, rows indexed by input pairs and columns by
//!   output pairs in lexicographic code λ·n+μ;
//! * `"builtin"`: `{"name": ..., "params": {...}}` for one of the shipped
//!   R-matrices;
//! * `"relations"`: explicit relation rows over the n² pair coordinates
//!   (enough for the algebra, its dual, and the Koszul complex, but not for
//!   the R-dependent constructions).
//!
//! Scalar entries are exact: JSON integers, rational strings like "-3/4", or
//! (with `"scalar": "gaussian-rational"`) objects {"re": ..., "im": ...}.
//! Floating point literals are rejected so nothing silently loses precision.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{Matrix, Mode, Scalar, SparseVec};
use crate::rmatrix::RMatrix;

/// A parsed and validated input.
#[derive(Debug)]
pub struct AlgebraSpec {
    pub name: Option<String>,
    input: Input,
}

#[derive(Debug)]
enum Input {
    RMatrix {
        r: RMatrix,
        builtin: Option<BuiltinEcho>,
    },
    Relations {
        n: usize,
        mode: Mode,
        rows: Vec<SparseVec>,
    },
}

/// Remembers how a builtin was requested, so reports and emitted files can
/// echo the compact form instead of a dense grid.
#[derive(Clone, Debug)]
struct BuiltinEcho {
    name: String,
    q: Option<String>,
    signs: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: Option<String>,
    scalar: Mode,
    n: usize,
    #[serde(rename = "R")]
    r: Option<Vec<Vec<Value>>>,
    builtin: Option<RawBuiltin>,
    relations: Option<Vec<Vec<Value>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBuiltin {
    name: String,
    params: Option<RawParams>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawParams {
    q: Option<String>,
    signs: Option<Vec<i64>>,
}

fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(num) => num
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "{num} is not an exact integer; write rationals as strings like \"1/2\""
                ))
            }),
        Value::String(s) => Scalar::parse_rational(s),
        other => Err(Error::Parse(format!(
            "expected an integer or a rational string, got {other}"
        ))),
    }
}

fn scalar_from_value(v: &Value, mode: Mode) -> Result<Scalar> {
    match v {
        Value::Object(map) => {
            for key in map.keys() {
                if key != "re" && key != "im" {
                    return Err(Error::Parse(format!(
                        "complex entries take only \"re\" and \"im\", got \"{key}\""
                    )));
                }
            }
            let part = |key: &str| -> Result<BigRational> {
                map.get(key)
                    .map(rational_from_value)
                    .unwrap_or_else(|| Ok(BigRational::zero()))
            };
            let (re, im) = (part("re")?, part("im")?);
            if mode == Mode::Rational {
                if !im.is_zero() {
                    return Err(Error::Parse(
                        "complex entry in a rational-mode file; set \"scalar\": \"gaussian-rational\""
                            .into(),
                    ));
                }
                return Ok(Scalar::from_rational(re, mode));
            }
            Ok(Scalar::gauss(re, im))
        }
        _ => Ok(Scalar::from_rational(rational_from_value(v)?, mode)),
    }
}

/// Canonical wire form of one scalar: a fraction string in rational mode, a
/// {"re", "im"} object of fraction strings in gaussian mode.
pub fn scalar_to_value(s: &Scalar) -> Value {
    match s.mode() {
        Mode::Rational => Value::String(s.parts().0.to_string()),
        Mode::Gaussian => {
            let (re, im) = s.parts();
            json!({"re": re.to_string(), "im": im.to_string()})
        }
    }
}

fn dense_matrix(
    entries: &[Vec<Value>],
    nrows: usize,
    ncols: usize,
    what: &str,
    mode: Mode,
) -> Result<Matrix> {
    if entries.len() != nrows {
        return Err(Error::Dimension(format!(
            "{what} needs {nrows} rows, got {}",
            entries.len()
        )));
    }
    let mut rows = Vec::with_capacity(nrows);
    for (i, raw) in entries.iter().enumerate() {
        if raw.len() != ncols {
            return Err(Error::Dimension(format!(
                "{what} row {} needs {ncols} entries, got {}",
                i + 1,
                raw.len()
            )));
        }
        rows.push(
            raw.iter()
                .map(|v| scalar_from_value(v, mode))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Matrix::from_rows(mode, rows)
}

fn builtin_rmatrix(raw: &RawBuiltin, n: usize, mode: Mode) -> Result<(RMatrix, BuiltinEcho)> {
    let params = raw.params.as_ref();
    let q = params.and_then(|p| p.q.as_deref());
    let signs = params.and_then(|p| p.signs.as_deref());
    let reject = |param: Option<&str>, what: &str| -> Result<()> {
        match param {
            Some(_) => Err(Error::Invalid(format!(
                "builtin \"{}\" takes no parameter {what}",
                raw.name
            ))),
            None => Ok(()),
        }
    };
    let reject_signs = || reject(signs.map(|_| "given"), "signs");
    let reject_q = || reject(q.map(|_| "given"), "q");
    let r = match raw.name.as_str() {
        "flip" => {
            reject_q()?;
            reject_signs()?;
            RMatrix::flip(n, mode)
        }
        "neg_flip" => {
            reject_q()?;
            reject_signs()?;
            RMatrix::neg_flip(n, mode)
        }
        "identity" => {
            reject_q()?;
            reject_signs()?;
            RMatrix::identity(n, mode)
        }
        "neg_identity" => {
            reject_q()?;
            reject_signs()?;
            RMatrix::neg_identity(n, mode)
        }
        "hecke_gl" => {
            reject_signs()?;
            let q = q.ok_or_else(|| {
                Error::Invalid("builtin \"hecke_gl\" needs a rational parameter q".into())
            })?;
            RMatrix::hecke_gl(n, &Scalar::parse_rational(q)?, mode)?
        }
        "diag_signs" => {
            reject_q()?;
            let signs = signs.ok_or_else(|| {
                Error::Invalid(format!(
                    "builtin \"diag_signs\" needs a signs array of length {}",
                    n * n
                ))
            })?;
            RMatrix::diag_signs(n, signs, mode)?
        }
        other => {
            return Err(Error::Invalid(format!(
                "unknown builtin \"{other}\"; known: flip, neg_flip, identity, neg_identity, \
                 diag_signs, hecke_gl"
            )))
        }
    };
    let echo = BuiltinEcho {
        name: raw.name.clone(),
        q: q.map(str::to_owned),
        signs: signs.map(<[i64]>::to_vec),
    };
    Ok((r, echo))
}

impl AlgebraSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.n == 0 {
            return Err(Error::Invalid("n must be at least 1".into()));
        }
        let bodies = [
            raw.r.is_some(),
            raw.builtin.is_some(),
            raw.relations.is_some(),
        ];
        if bodies.iter().filter(|b| **b).count() != 1 {
            return Err(Error::Invalid(
                "give exactly one of R, builtin, relations".into(),
            ));
        }
        let n = raw.n;
        let nn = n * n;
        let input = if let Some(entries) = &raw.r {
            let grid = dense_matrix(entries, nn, nn, "R", raw.scalar)?;
            Input::RMatrix {
                r: RMatrix::new(n, grid)?,
                builtin: None,
            }
        } else if let Some(builtin) = &raw.builtin {
            let (r, echo) = builtin_rmatrix(builtin, n, raw.scalar)?;
            Input::RMatrix {
                r,
                builtin: Some(echo),
            }
        } else {
            let entries = raw.relations.as_ref().expect("one body present");
            let m = dense_matrix(entries, entries.len(), nn, "relations", raw.scalar)?;
            Input::Relations {
                n,
                mode: raw.scalar,
                rows: m.sparse_rows().into_iter().filter(|r| !r.is_empty()).collect(),
            }
        };
        Ok(AlgebraSpec {
            name: raw.name,
            input,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        AlgebraSpec::from_json_str(&text)
    }

    pub fn n(&self) -> usize {
        match &self.input {
            Input::RMatrix { r, .. } => r.n(),
            Input::Relations { n, .. } => *n,
        }
    }

    pub fn mode(&self) -> Mode {
        match &self.input {
            Input::RMatrix { r, .. } => r.mode(),
            Input::Relations { mode, .. } => *mode,
        }
    }

    /// The R-matrix, when the input provides one.
    pub fn rmatrix(&self) -> Option<&RMatrix> {
        match &self.input {
            Input::RMatrix { r, .. } => Some(r),
            Input::Relations { .. } => None,
        }
    }

    /// Relation rows of the base algebra, available for every input kind.
    pub fn relation_rows(&self) -> Vec<SparseVec> {
        match &self.input {
            Input::RMatrix { r, .. } => r.relation_rows(),
            Input::Relations { rows, .. } => rows.clone(),
        }
    }

    /// The input in canonical file form: builtins echo as given, explicit
    /// grids and relation rows as canonical scalar strings.
    pub fn to_value(&self) -> Value {
        let mut obj = serde_json::Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        obj.insert("scalar".into(), json!(self.mode()));
        obj.insert("n".into(), json!(self.n()));
        match &self.input {
            Input::RMatrix {
                builtin: Some(echo),
                ..
            } => {
                let mut b = serde_json::Map::new();
                b.insert("name".into(), Value::String(echo.name.clone()));
                let mut params = serde_json::Map::new();
                if let Some(q) = &echo.q {
                    params.insert("q".into(), Value::String(q.clone()));
                }
                if let Some(signs) = &echo.signs {
                    params.insert("signs".into(), json!(signs));
                }
                if !params.is_empty() {
                    b.insert("params".into(), Value::Object(params));
                }
                obj.insert("builtin".into(), Value::Object(b));
            }
            Input::RMatrix { r, builtin: None } => {
                let grid = r.grid();
                let rows: Vec<Value> = (0..grid.nrows())
                    .map(|i| Value::Array(grid.row(i).iter().map(scalar_to_value).collect()))
                    .collect();
                obj.insert("R".into(), Value::Array(rows));
            }
            Input::Relations { n, mode, rows } => {
                let nn = (n * n) as u32;
                let dense: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        Value::Array(
                            (0..nn)
                                .map(|c| {
                                    let zero = Scalar::zero(*mode);
                                    scalar_to_value(row.get(c).unwrap_or(&zero))
                                })
                                .collect(),
                        )
                    })
                    .collect();
                obj.insert("relations".into(), Value::Array(dense));
            }
        }
        Value::Object(obj)
    }

    /// The input presenting the dual algebra. When the input is an R-matrix
    /// that is symmetric and involutive, the dual is again an R-matrix input,
    /// namely −R (a builtin name when one matches); otherwise the annihilator
    /// of the relation span is written out as an explicit relations body.
    pub fn dual(&self) -> AlgebraSpec {
        let name = self.name.as_ref().map(|n| format!("dual of {n}"));
        let negated_builtin = |echo: &Option<BuiltinEcho>| -> Option<BuiltinEcho> {
            let echo = echo.as_ref()?;
            let negated = match echo.name.as_str() {
                "flip" => "neg_flip",
                "neg_flip" => "flip",
                "identity" => "neg_identity",
                "neg_identity" => "identity",
                "diag_signs" => {
                    return Some(BuiltinEcho {
                        name: "diag_signs".into(),
                        q: None,
                        signs: echo
                            .signs
                            .as_ref()
                            .map(|s| s.iter().map(|v| -v).collect()),
                    })
                }
                _ => return None,
            };
            Some(BuiltinEcho {
                name: negated.into(),
                q: None,
                signs: None,
            })
        };
        match &self.input {
            Input::RMatrix { r, builtin }
                if r.check_symmetric() && r.check_involutive() =>
            {
                let neg = RMatrix::new(r.n(), r.grid().neg()).expect("same shape");
                AlgebraSpec {
                    name,
                    input: Input::RMatrix {
                        r: neg,
                        builtin: negated_builtin(builtin),
                    },
                }
            }
            _ => {
                let n = self.n();
                let mode = self.mode();
                let span =
                    crate::exact::RowBasis::from_rows(mode, (n * n) as u32, self.relation_rows());
                AlgebraSpec {
                    name,
                    input: Input::Relations {
                        n,
                        mode,
                        rows: span.kernel_basis(),
                    },
                }
            }
        }
    }
}
