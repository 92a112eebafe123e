//! JSON model documents.
//!
//! ```json
//! {"kind": "matrix", "objects": {"X": 2},
//!  "generators": {"f": {"rows": 2, "cols": 2,
//!                       "entries": [[{"re": "1/1", "im": "0/1"}, ...], ...]}}}
//! ```
//!
//! FinSet bindings are `{"table": [...]}`, permutation bindings `{"perm": [...]}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use rosetta::kernel::Signature;
use rosetta::models::{ConcreteMor, Func, Matrix, Model, ModelError, ModelKind, Scalar};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed model document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown model kind `{0}` (expected matrix, finset or perm)")]
    Kind(String),
    #[error("malformed rational `{0}`: expected \"p/q\" with q > 0 in lowest terms")]
    Rational(String),
    #[error("binding for `{name}`: {msg}")]
    Binding { name: String, msg: String },
    #[error("object `{0}` has no carrier")]
    MissingObject(String),
    #[error("generator `{0}` has no binding")]
    MissingBinding(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub objects: BTreeMap<String, usize>,
    #[serde(default)]
    pub generators: BTreeMap<String, BindingDoc>,
    /// Replacement cups for basic objects; matrix models only.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cups: BTreeMap<String, BindingDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BindingDoc {
    Matrix {
        rows: usize,
        cols: usize,
        entries: Vec<Vec<EntryDoc>>,
    },
    Table {
        table: Vec<usize>,
    },
    Perm {
        perm: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub re: String,
    pub im: String,
}

/// Parses `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn parse_rational(s: &str) -> Result<BigRational, LoadError> {
    let bad = || LoadError::Rational(s.to_string());
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let ok = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !ok(p) || !ok(q) || q.starts_with('-') {
        return Err(bad());
    }
    let (p, q) = (
        BigInt::from_str(p).map_err(|_| bad())?,
        BigInt::from_str(q).map_err(|_| bad())?,
    );
    if q <= BigInt::from(0) {
        return Err(bad());
    }
    let r = BigRational::new(p.clone(), q.clone());
    if *r.numer() != p || *r.denom() != q {
        return Err(bad());
    }
    Ok(r)
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn scalar(e: &EntryDoc) -> Result<Scalar, LoadError> {
    Ok(Complex::new(parse_rational(&e.re)?, parse_rational(&e.im)?))
}

fn matrix(name: &str, doc: &BindingDoc) -> Result<Matrix, LoadError> {
    let err = |msg: String| LoadError::Binding {
        name: name.to_string(),
        msg,
    };
    match doc {
        BindingDoc::Matrix {
            rows,
            cols,
            entries,
        } => {
            if entries.len() != *rows {
                return Err(err(format!(
                    "{} rows given, {} declared",
                    entries.len(),
                    rows
                )));
            }
            let mut dense = Vec::with_capacity(*rows);
            for (i, row) in entries.iter().enumerate() {
                if row.len() != *cols {
                    return Err(err(format!(
                        "row {} has {} entries, {} declared",
                        i,
                        row.len(),
                        cols
                    )));
                }
                dense.push(row.iter().map(scalar).collect::<Result<Vec<_>, _>>()?);
            }
            Ok(Matrix::from_dense(*rows, *cols, dense))
        }
        _ => Err(err("expected a matrix".into())),
    }
}

fn concrete(
    kind: ModelKind,
    name: &str,
    doc: &BindingDoc,
    cod: usize,
) -> Result<ConcreteMor, LoadError> {
    let err = |msg: &str| LoadError::Binding {
        name: name.to_string(),
        msg: msg.to_string(),
    };
    match (kind, doc) {
        (ModelKind::Matrix, BindingDoc::Matrix { .. }) => {
            Ok(ConcreteMor::Matrix(matrix(name, doc)?))
        }
        (ModelKind::FinSet, BindingDoc::Table { table }) => Ok(ConcreteMor::Table(Func {
            dom: table.len(),
            cod,
            table: table.clone(),
        })),
        (ModelKind::Perm, BindingDoc::Perm { perm }) => Ok(ConcreteMor::Perm(perm.clone())),
        (ModelKind::Matrix, _) => Err(err("matrix models take {rows, cols, entries} bindings")),
        (ModelKind::FinSet, _) => Err(err("finset models take {table} bindings")),
        (ModelKind::Perm, _) => Err(err("perm models take {perm} bindings")),
    }
}

pub fn parse_model_doc(src: &str) -> Result<ModelDoc, LoadError> {
    Ok(serde_json::from_str(src)?)
}

/// Builds a model from a document and checks it against `sig`: every object
/// needs a carrier and every generator a binding of the right shape.
pub fn load_model(doc: &ModelDoc, sig: &Signature, default_name: &str) -> Result<Model, LoadError> {
    let kind = ModelKind::from_name(&doc.kind).ok_or_else(|| LoadError::Kind(doc.kind.clone()))?;
    let mut m = Model::new(doc.name.as_deref().unwrap_or(default_name), kind);
    m.objects = doc.objects.clone();
    if let Some(o) = sig.objects.iter().find(|o| !m.objects.contains_key(*o)) {
        return Err(LoadError::MissingObject(o.clone()));
    }
    for (name, b) in &doc.generators {
        let cod = match sig.generator(name) {
            Some(g) => m.size(&sig.normalize(&g.cod))?,
            None => 0,
        };
        let value = concrete(kind, name, b, cod)?;
        m.bind(name, value, sig)?;
    }
    if let Some(g) = sig
        .generators
        .iter()
        .find(|g| !m.generators.contains_key(&g.name))
    {
        return Err(LoadError::MissingBinding(g.name.clone()));
    }
    for (obj, b) in &doc.cups {
        if kind != ModelKind::Matrix {
            return Err(LoadError::Binding {
                name: obj.clone(),
                msg: "only matrix models take cups".into(),
            });
        }
        let d = *m
            .objects
            .get(obj)
            .ok_or_else(|| LoadError::MissingObject(obj.clone()))?;
        let c = matrix(obj, b)?;
        if (c.rows, c.cols) != (d * d, 1) {
            return Err(LoadError::Binding {
                name: obj.clone(),
                msg: format!("cup has shape {}x{}, expected {}x1", c.rows, c.cols, d * d),
            });
        }
        m.cups.insert(obj.clone(), c);
    }
    Ok(m)
}

/// The document form of a value, as used for bindings.
pub fn binding_doc(c: &ConcreteMor) -> BindingDoc {
    match c {
        ConcreteMor::Matrix(m) => BindingDoc::Matrix {
            rows: m.rows,
            cols: m.cols,
            entries: m
                .to_dense()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| EntryDoc {
                            re: format_rational(&v.re),
                            im: format_rational(&v.im),
                        })
                        .collect()
                })
                .collect(),
        },
        ConcreteMor::Table(f) => BindingDoc::Table {
            table: f.table.clone(),
        },
        ConcreteMor::Perm(p) => BindingDoc::Perm { perm: p.clone() },
    }
}
