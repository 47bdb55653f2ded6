//! JSON encodings of the core types. Rationals are always strings, `"n"` or
//! `"p/q"`, so no precision is lost.

use std::collections::BTreeMap;

use bggx_core::complex::HodgeDatum;
use bggx_core::linalg::SparseMatrix;
use bggx_core::symchern::SymChernTable;
use bggx_core::{GradedSeries, GrassmannianContext, Partition, Rational, SchubertExpr};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().ok();
            let d: Option<num_bigint::BigInt> = d.trim().parse().ok();
            match (n, d) {
                (Some(n), Some(d)) if !d.is_zero() => Some(Rational::new(n, d)),
                _ => None,
            }
        }
        None => s.parse().ok().map(Rational::from_integer),
    };
    parsed.ok_or_else(|| CliError::Data(format!("not an exact rational: {s:?}")))
}

fn rational_value(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(CliError::Data(format!("expected a rational string, got {v}"))),
    }
}

/// Core errors raised while reading a file are input-data errors.
fn data_err(e: bggx_core::Error) -> CliError {
    match e {
        bggx_core::Error::Anticommutation { .. } => CliError::Core(e),
        other => CliError::Data(other.to_string()),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::Data(format!("missing field {key:?}")))
}

fn usize_field(obj: &Value, key: &str) -> Result<usize, CliError> {
    field(obj, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::Data(format!("field {key:?} must be a non-negative integer")))
}

fn usize_list(v: &Value) -> Result<Vec<usize>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Data(format!("expected an integer list, got {v}")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| CliError::Data(format!("expected a non-negative integer, got {x}")))
        })
        .collect()
}

pub fn context_json(ctx: GrassmannianContext) -> Value {
    json!({ "k": ctx.k(), "q": ctx.q() })
}

pub fn schubert_to_json(e: &SchubertExpr<Rational>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(lambda, c)| json!({ "partition": lambda.parts(), "coeff": rational_string(c) }))
        .collect();
    json!({ "context": context_json(e.context()), "terms": terms })
}

pub fn schubert_from_json(v: &Value) -> Result<SchubertExpr<Rational>, CliError> {
    let ctx = field(v, "context")?;
    let k = usize_field(ctx, "k")?;
    let ctx = match field(ctx, "q")? {
        Value::Null => GrassmannianContext::stable(k).map_err(data_err)?,
        q => {
            let q = q
                .as_u64()
                .ok_or_else(|| CliError::Data("context q must be an integer or null".into()))?;
            GrassmannianContext::new(k, q as usize).map_err(data_err)?
        }
    };
    let terms = field(v, "terms")?
        .as_array()
        .ok_or_else(|| CliError::Data("terms must be a list".into()))?;
    let mut out = SchubertExpr::zero(ctx);
    for t in terms {
        let lambda = Partition::new(usize_list(field(t, "partition")?)?).map_err(data_err)?;
        let c = rational_value(field(t, "coeff")?)?;
        out = out
            .add(&SchubertExpr::term(ctx, lambda, c).map_err(data_err)?)
            .map_err(data_err)?;
    }
    Ok(out)
}

pub fn series_to_json(s: &GradedSeries<Rational>) -> Value {
    Value::Array(s.components().iter().map(schubert_to_json).collect())
}

pub fn table_to_json(t: &SymChernTable) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .iter()
        .flat_map(|entry| entry.iter())
        .map(|(mono, c)| json!({ "monomial": mono, "coeff": rational_string(c) }))
        .collect();
    json!({
        "rank": t.rank(),
        "power": t.power(),
        "max_degree": t.max_degree(),
        "entries": entries,
    })
}

pub fn table_from_json(v: &Value) -> Result<SymChernTable, CliError> {
    let rank = usize_field(v, "rank")?;
    let power = usize_field(v, "power")?;
    let max_degree = usize_field(v, "max_degree")?;
    let mut entries = vec![BTreeMap::new(); max_degree + 1];
    for e in field(v, "entries")?
        .as_array()
        .ok_or_else(|| CliError::Data("entries must be a list".into()))?
    {
        let mono: Vec<u32> = usize_list(field(e, "monomial")?)?
            .into_iter()
            .map(|a| a as u32)
            .collect();
        let degree: usize = mono.iter().enumerate().map(|(i, &a)| (i + 1) * a as usize).sum();
        let slot = entries
            .get_mut(degree)
            .ok_or_else(|| CliError::Data(format!("monomial {mono:?} exceeds max_degree")))?;
        slot.insert(mono, rational_value(field(e, "coeff")?)?);
    }
    SymChernTable::from_entries(rank, power, entries).map_err(data_err)
}

fn matrix_to_json(m: &SparseMatrix) -> Value {
    Value::Array(
        m.to_dense()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| Value::String(rational_string(x))).collect()))
            .collect(),
    )
}

fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<SparseMatrix, CliError> {
    let data = v
        .as_array()
        .ok_or_else(|| CliError::Data("matrix must be a list of rows".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| CliError::Data("matrix rows must be lists".into()))?
                .iter()
                .map(rational_value)
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SparseMatrix::from_dense(rows, cols, &data).map_err(data_err)
}

/// `{"d", "q", "dims", "action": [{"a", "i", "j", "matrix"}]}`, with `a`
/// one-based and absent or all-zero matrices omitted.
pub fn datum_to_json(datum: &HodgeDatum) -> Value {
    let mut action = Vec::new();
    for a in 0..datum.q() {
        for i in 0..datum.d() {
            for j in 0..=datum.d() {
                if let Some(m) = datum.action(a, i, j) {
                    if !m.is_zero() {
                        action.push(json!({ "a": a + 1, "i": i, "j": j, "matrix": matrix_to_json(m) }));
                    }
                }
            }
        }
    }
    let mut obj = Map::new();
    obj.insert("d".into(), json!(datum.d()));
    obj.insert("q".into(), json!(datum.q()));
    obj.insert("dims".into(), json!(datum.dims()));
    obj.insert("action".into(), Value::Array(action));
    if !datum.metadata.is_empty() {
        obj.insert("metadata".into(), json!(datum.metadata));
    }
    Value::Object(obj)
}

pub fn datum_from_json(v: &Value) -> Result<HodgeDatum, CliError> {
    let d = usize_field(v, "d")?;
    let q = usize_field(v, "q")?;
    let dims = field(v, "dims")?
        .as_array()
        .ok_or_else(|| CliError::Data("dims must be a list of rows".into()))?
        .iter()
        .map(usize_list)
        .collect::<Result<Vec<_>, _>>()?;
    let mut datum = HodgeDatum::new(d, q, dims).map_err(data_err)?;
    let actions = match v.get("action") {
        None | Some(Value::Null) => &[][..],
        Some(a) => a
            .as_array()
            .ok_or_else(|| CliError::Data("action must be a list".into()))?
            .as_slice(),
    };
    for entry in actions {
        let a = usize_field(entry, "a")?;
        let i = usize_field(entry, "i")?;
        let j = usize_field(entry, "j")?;
        if a == 0 || a > q || i >= d || j > d {
            return Err(CliError::Data(format!("action index out of range: a={a}, i={i}, j={j}")));
        }
        let m = matrix_from_json(field(entry, "matrix")?, datum.h(i + 1, j), datum.h(i, j))?;
        datum.set_action(a - 1, i, j, m).map_err(data_err)?;
    }
    if let Some(Value::Object(meta)) = v.get("metadata") {
        for (key, value) in meta {
            let text = value.as_str().map_or_else(|| value.to_string(), str::to_string);
            datum.metadata.insert(key.clone(), text);
        }
    }
    Ok(datum)
}

/// Parses `"1,0,0;0,1,0"`: one basis vector per `;`-separated group.
pub fn parse_w(s: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    s.split(';')
        .map(|group| group.split(',').map(parse_rational).collect())
        .collect()
}
