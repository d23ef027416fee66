//! JSON formats for algebras, maps and elements. Complex numbers are
//! always `[re, im]` pairs.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{function_algebra, group_algebra, matrix_algebra, product, Algebra, GroupTable, NormKind};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, Tolerance, C64};
use crate::starmap::AlgMap;

type Pair = [f64; 2];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupSpec {
    order: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AlgebraFile {
    Group {
        group: GroupSpec,
        #[serde(default)]
        labels: Option<Vec<String>>,
        #[serde(default)]
        norm: Option<NormKind>,
    },
    Function {
        function: usize,
        #[serde(default)]
        norm: Option<NormKind>,
    },
    Matrix {
        matrix: usize,
        #[serde(default)]
        norm: Option<NormKind>,
    },
    Product {
        product: Vec<Value>,
    },
    Tensor {
        dim: usize,
        #[serde(default)]
        labels: Option<Vec<String>>,
        structure: Vec<Vec<Vec<Pair>>>,
        #[serde(default)]
        identity: Option<Vec<Pair>>,
        #[serde(default)]
        norm: Option<NormKind>,
    },
}

/// An algebra read from a spec file, with its group table when it was
/// given as one.
#[derive(Debug, Clone)]
pub struct LoadedAlgebra {
    pub algebra: Algebra,
    pub group: Option<GroupTable>,
}

fn c(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn input(msg: impl std::fmt::Display) -> Error {
    Error::Input(msg.to_string())
}

pub fn parse_algebra(text: &str, tol: Tolerance) -> Result<LoadedAlgebra> {
    let value: Value = serde_json::from_str(text).map_err(input)?;
    algebra_from_value(value, tol)
}

fn algebra_from_value(value: Value, tol: Tolerance) -> Result<LoadedAlgebra> {
    let file: AlgebraFile = serde_json::from_value(value)
        .map_err(|_| input("unrecognised algebra spec (expected dim/structure, group, function, matrix or product)"))?;
    let retol = |a: Algebra, norm: Option<NormKind>| -> Result<Algebra> {
        let n = a.dim();
        let mut b = Algebra::builder(n, a.structure().to_vec())
            .labels(a.labels().to_vec())
            .norm(norm.unwrap_or_default())
            .tolerance(tol);
        if let Some(e) = a.identity_coords() {
            b = b.identity(e.iter().copied().collect());
        }
        b.build()
    };
    match file {
        AlgebraFile::Group { group, labels, norm } => {
            if group.table.len() != group.order {
                return Err(input(format!(
                    "group order {} but table has {} rows",
                    group.order,
                    group.table.len()
                )));
            }
            let g = GroupTable::new(group.table)?;
            let a = group_algebra(&g, labels)?;
            Ok(LoadedAlgebra {
                algebra: retol(a, norm)?,
                group: Some(g),
            })
        }
        AlgebraFile::Function { function, norm } if function > 0 => Ok(LoadedAlgebra {
            algebra: retol(function_algebra(function), norm)?,
            group: None,
        }),
        AlgebraFile::Matrix { matrix, norm } if matrix > 0 => Ok(LoadedAlgebra {
            algebra: retol(matrix_algebra(matrix), norm)?,
            group: None,
        }),
        AlgebraFile::Function { .. } | AlgebraFile::Matrix { .. } => Err(input("size must be positive")),
        AlgebraFile::Product { product: parts } => {
            let mut acc: Option<Algebra> = None;
            for part in parts {
                let a = algebra_from_value(part, tol)?.algebra;
                acc = Some(match acc {
                    None => a,
                    Some(prev) => product(&prev, &a),
                });
            }
            let a = acc.ok_or_else(|| input("empty product"))?;
            Ok(LoadedAlgebra {
                algebra: retol(a, None)?,
                group: None,
            })
        }
        AlgebraFile::Tensor {
            dim,
            labels,
            structure,
            identity,
            norm,
        } => {
            if structure.len() != dim
                || structure
                    .iter()
                    .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
            {
                return Err(input(format!("structure must be a {dim}×{dim}×{dim} array")));
            }
            let flat: Vec<C64> = structure.iter().flatten().flatten().map(c).collect();
            let mut b = Algebra::builder(dim, flat)
                .norm(norm.unwrap_or_default())
                .tolerance(tol);
            if let Some(l) = labels {
                b = b.labels(l);
            }
            if let Some(e) = identity {
                b = b.identity(e.iter().map(c).collect());
            }
            Ok(LoadedAlgebra {
                algebra: b.build()?,
                group: None,
            })
        }
    }
}

pub fn complex_to_json(z: C64) -> Value {
    // adding 0.0 turns -0.0 into 0.0
    json!([z.re + 0.0, z.im + 0.0])
}

pub fn vector_to_json(v: &CVector) -> Value {
    Value::Array(v.iter().map(|z| complex_to_json(*z)).collect())
}

pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|r| vector_to_json(&m.row(r).transpose())).collect())
}

pub fn complex_list_to_json(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|z| complex_to_json(*z)).collect())
}

pub fn algebra_to_json(a: &Algebra) -> Value {
    let n = a.dim();
    let structure: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..n)
                    .map(|j| Value::Array((0..n).map(|k| complex_to_json(a.c(i, j, k))).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "dim": n,
        "labels": a.labels(),
        "structure": structure,
        "identity": a.identity_coords().map(vector_to_json),
        "norm": a.norm_kind(),
    })
}

#[derive(Debug, Deserialize)]
struct MapFile {
    matrix: Vec<Vec<Pair>>,
    #[serde(default)]
    conjugating: bool,
    #[serde(default)]
    #[allow(dead_code)]
    source: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    target: Option<String>,
}

pub fn parse_map(text: &str, source: &Algebra, target: &Algebra) -> Result<AlgMap> {
    let file: MapFile = serde_json::from_str(text).map_err(input)?;
    let rows = file.matrix.len();
    let cols = file.matrix.first().map_or(0, |r| r.len());
    if file.matrix.iter().any(|r| r.len() != cols) {
        return Err(input("ragged map matrix"));
    }
    let m = CMatrix::from_fn(rows, cols, |r, k| c(&file.matrix[r][k]));
    AlgMap::new(m, file.conjugating, source, target)
}

pub fn map_to_json(m: &AlgMap) -> Value {
    json!({
        "matrix": matrix_to_json(m.matrix()),
        "conjugating": m.is_conjugating(),
        "source": m.source().to_string(),
        "target": m.target().to_string(),
    })
}

/// Element coordinates as `[[re, im], ...]`; bare numbers are read as real.
pub fn parse_vector(text: &str) -> Result<CVector> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Pair(Pair),
        Real(f64),
    }
    let entries: Vec<Entry> = serde_json::from_str(text).map_err(input)?;
    Ok(CVector::from_iterator(
        entries.len(),
        entries.iter().map(|e| match e {
            Entry::Pair(p) => c(p),
            Entry::Real(x) => C64::new(*x, 0.0),
        }),
    ))
}

/// Rows of a matrix given as `[[[re, im], ...], ...]`.
pub fn parse_rows(text: &str) -> Result<Vec<CVector>> {
    let rows: Vec<Vec<Pair>> = serde_json::from_str(text).map_err(input)?;
    Ok(rows
        .iter()
        .map(|r| CVector::from_iterator(r.len(), r.iter().map(c)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn algebra_round_trip() {
        let a = matrix_algebra(2);
        let text = algebra_to_json(&a).to_string();
        let b = parse_algebra(&text, Tolerance::default()).unwrap().algebra;
        assert_eq!(a.id(), b.id());
        assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn group_spec() {
        let text = r#"{"group": {"order": 2, "table": [[0,1],[1,0]]}}"#;
        let l = parse_algebra(text, Tolerance::default()).unwrap();
        assert!(l.group.is_some());
        assert!(l.algebra.is_unital());
    }

    #[test]
    fn opnorm_spelling() {
        let text = r#"{"function": 2, "norm": "opnorm"}"#;
        let a = parse_algebra(text, Tolerance::default()).unwrap().algebra;
        assert_eq!(a.norm_kind(), NormKind::LeftRegularOperator);
        assert_eq!(algebra_to_json(&a)["norm"], "opnorm");
    }

    #[test]
    fn non_associative_rejected() {
        // b0·b0 = b1, everything else 0 except b1·b0 = b0: (b0 b0) b0 = b0, b0 (b0 b0) = 0
        let text = r#"{"dim": 2, "structure": [[[[0,0],[1,0]],[[0,0],[0,0]]],[[[1,0],[0,0]],[[0,0],[0,0]]]]}"#;
        let err = parse_algebra(text, Tolerance::default()).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }));
    }

    #[test]
    fn map_round_trip() {
        let a = function_algebra(2);
        let text = r#"{"matrix": [[[1,0],[0,0]],[[0,0],[0,0]]], "conjugating": true}"#;
        let m = parse_map(text, &a, &a).unwrap();
        assert!(m.is_conjugating());
        let back = parse_map(&map_to_json(&m).to_string(), &a, &a).unwrap();
        assert!(max_abs_diff(back.matrix(), m.matrix()) == 0.0);
        assert!(parse_map(r#"{"matrix": [[[1,0]]]}"#, &a, &a).is_err());
    }

    #[test]
    fn vectors() {
        let v = parse_vector("[[2,1], 5]").unwrap();
        assert_eq!(v[0], C64::new(2.0, 1.0));
        assert_eq!(v[1], C64::new(5.0, 0.0));
    }
}
