//! JSON state files.
//!
//! Mixed states: `{"dims": [m, n], "matrix": [[[re, im], ...], ...]}`, rows in
//! row-major Kronecker order (first subsystem slowest). Pure states replace
//! `matrix` with `"vector": [[re, im], ...]`. Floats are written in shortest
//! round-trip form, so write-then-read is bit-exact.

use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::state::{DensityMatrix, PureState};

/// Contents of a state file.
#[derive(Debug, Clone, PartialEq)]
pub enum StateFile {
    Mixed(DensityMatrix),
    Pure(PureState),
}

impl StateFile {
    pub fn density(&self) -> DensityMatrix {
        match self {
            StateFile::Mixed(rho) => rho.clone(),
            StateFile::Pure(psi) => psi.to_density(),
        }
    }
}

fn parse_error(field: &str, what: impl std::fmt::Display) -> Error {
    Error::Parse(format!("field `{field}`: {what}"))
}

fn parse_dims(root: &Value) -> Result<Vec<usize>> {
    let raw = root.get("dims").ok_or_else(|| parse_error("dims", "missing"))?;
    let items = raw
        .as_array()
        .ok_or_else(|| parse_error("dims", "expected an array of positive integers"))?;
    if items.is_empty() {
        return Err(parse_error("dims", "empty"));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, v)| match v.as_u64() {
            Some(d) if d > 0 => Ok(d as usize),
            _ => Err(parse_error(&format!("dims[{i}]"), format!("expected a positive integer, got {v}"))),
        })
        .collect()
}

fn parse_complex(v: &Value, field: &str) -> Result<Complex64> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| parse_error(field, format!("expected a [re, im] pair, got {v}")))?;
    let part = |x: &Value, name: &str| {
        x.as_f64()
            .ok_or_else(|| parse_error(field, format!("{name} part is not a number: {x}")))
    };
    Ok(Complex64::new(part(&pair[0], "real")?, part(&pair[1], "imaginary")?))
}

fn parse_matrix(raw: &Value, order: usize) -> Result<CMatrix> {
    let rows = raw
        .as_array()
        .ok_or_else(|| parse_error("matrix", "expected an array of rows"))?;
    if rows.len() != order {
        return Err(parse_error("matrix", format!("{} rows, dims require {order}", rows.len())));
    }
    let mut m = CMatrix::zeros(order, order);
    for (i, row) in rows.iter().enumerate() {
        let cells = row
            .as_array()
            .ok_or_else(|| parse_error(&format!("matrix[{i}]"), "expected an array"))?;
        if cells.len() != order {
            return Err(parse_error(
                &format!("matrix[{i}]"),
                format!("{} entries, dims require {order}", cells.len()),
            ));
        }
        for (j, cell) in cells.iter().enumerate() {
            m[(i, j)] = parse_complex(cell, &format!("matrix[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

fn parse_vector(raw: &Value, order: usize) -> Result<DVector<Complex64>> {
    let cells = raw
        .as_array()
        .ok_or_else(|| parse_error("vector", "expected an array of [re, im] pairs"))?;
    if cells.len() != order {
        return Err(parse_error("vector", format!("{} entries, dims require {order}", cells.len())));
    }
    let values = cells
        .iter()
        .enumerate()
        .map(|(i, v)| parse_complex(v, &format!("vector[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(DVector::from_vec(values))
}

pub fn parse_state(text: &str) -> Result<StateFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if !root.is_object() {
        return Err(Error::Parse("top level must be an object".into()));
    }
    let dims = parse_dims(&root)?;
    let order: usize = dims.iter().product();
    match (root.get("matrix"), root.get("vector")) {
        (Some(m), None) => Ok(StateFile::Mixed(DensityMatrix::new(parse_matrix(m, order)?, &dims)?)),
        (None, Some(v)) => Ok(StateFile::Pure(PureState::new(parse_vector(v, order)?, &dims)?)),
        (Some(_), Some(_)) => Err(parse_error("matrix", "both `matrix` and `vector` present")),
        (None, None) => Err(parse_error("matrix", "missing (or give `vector` for a pure state)")),
    }
}

fn pair(z: &Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| pair(&m[(i, j)])).collect()))
        .collect();
    json!({ "dims": rho.dims(), "matrix": rows }).to_string()
}

pub fn pure_to_json(psi: &PureState) -> String {
    let v: Vec<Value> = psi.amplitudes().iter().map(pair).collect();
    json!({ "dims": psi.dims(), "vector": v }).to_string()
}
