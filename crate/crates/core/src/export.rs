//! JSON and CSV serialisation of computed tables.
//!
//! JSON objects are `serde_json::Value` maps, which keep keys sorted, so a
//! table always serialises to the same bytes. CSV uses `\n` line endings and
//! is only produced for integer tables.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{CycInt, PolyQ, QuadraticGamma};
use crate::error::{Error, Result};
use crate::field::{CharSpec, Field};
use crate::recursions::SymbolicMatrix;
use crate::spaces::OrbitLabel;
use crate::symspace::{PsiBlocks, SignBlocks};
use crate::transform::CanonicalMatrix;

fn int(x: &BigInt) -> Value {
    // Arbitrary precision falls back to a decimal string.
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn cyc_json(x: &CycInt) -> Value {
    match x.to_int() {
        Ok(v) => int(&v),
        Err(_) => json!({ "p": x.order(), "coeffs": x.coeffs().iter().map(int).collect::<Vec<_>>() }),
    }
}

pub fn quadratic_json(x: &QuadraticGamma) -> Value {
    json!({ "a": int(x.a()), "b": int(x.b()) })
}

pub fn poly_json(x: &PolyQ) -> Value {
    json!({ "coeffs": x.coeffs().iter().map(int).collect::<Vec<_>>() })
}

pub fn field_json(f: &Field) -> Value {
    json!({ "p": f.p(), "e": f.e(), "modulus": f.modulus() })
}

fn labels_json(ls: &[OrbitLabel]) -> Value {
    Value::from(ls.iter().map(|l| l.to_string()).collect::<Vec<_>>())
}

fn matrix_json<T>(m: &[Vec<T>], f: impl Fn(&T) -> Value) -> Value {
    Value::from(m.iter().map(|r| Value::from(r.iter().map(&f).collect::<Vec<_>>())).collect::<Vec<_>>())
}

pub fn canonical_json(phi: &CanonicalMatrix) -> Value {
    json!({
        "space": phi.space.kind().to_string(),
        "q": phi.space.q(),
        "field": field_json(phi.space.field()),
        "twist": phi.space.field().coeffs(phi.chr.twist()),
        "labels": labels_json(&phi.labels),
        "entries": matrix_json(&phi.entries, cyc_json),
    })
}

fn csv(labels: &[OrbitLabel], rows: &[Vec<BigInt>]) -> String {
    let mut out = String::from("label");
    for l in labels {
        out.push(',');
        out.push_str(&l.to_string());
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(rows) {
        out.push_str(&l.to_string());
        for x in row {
            out.push(',');
            out.push_str(&x.to_string());
        }
        out.push('\n');
    }
    out
}

/// CSV with a label header row; fails on non-integer entries.
pub fn canonical_csv(phi: &CanonicalMatrix) -> Result<String> {
    Ok(csv(&phi.labels, &phi.to_integers()?))
}

pub fn symbolic_json(m: &SymbolicMatrix) -> Value {
    json!({
        "space": m.kind.to_string(),
        "labels": labels_json(&m.labels),
        "entries": matrix_json(&m.entries, poly_json),
    })
}

/// The symbolic table evaluated at `q`.
pub fn symbolic_csv(m: &SymbolicMatrix, q: u64) -> String {
    csv(&m.labels, &m.eval(&BigInt::from(q)))
}

fn blocks_json<T>(b: &SignBlocks<T>, f: impl Fn(&T) -> Value) -> Value {
    let names = ["psi1", "psi2", "psi3", "psi4"];
    let mut out = serde_json::Map::new();
    for (k, name) in names.iter().enumerate() {
        let rows = if k < 2 { &b.row_ranks } else { &b.row_signed };
        let cols = if k % 2 == 0 { &b.col_ranks } else { &b.col_signed };
        out.insert(
            name.to_string(),
            json!({ "rows": rows, "cols": cols, "entries": matrix_json(&b.b[k], &f) }),
        );
    }
    Value::Object(out)
}

/// Blocks with entries `{"a", "b"}` for `a + b gamma`, plus field metadata.
pub fn psi_json(psi: &PsiBlocks<QuadraticGamma>, chr: &CharSpec) -> Result<Value> {
    let f = chr.field();
    Ok(json!({
        "n": psi.n,
        "q": psi.q,
        "epsilon": f.epsilon()?,
        "delta": f.coeffs(f.delta()?),
        "twist": f.coeffs(chr.twist()),
        "field": field_json(f),
        "blocks": blocks_json(&psi.blocks, quadratic_json),
    }))
}

/// Blocks in `Z[zeta_p]`, for fields where `gamma` is rational.
pub fn psi_cyc_json(psi: &PsiBlocks<CycInt>, chr: &CharSpec) -> Result<Value> {
    let f = chr.field();
    Ok(json!({
        "n": psi.n,
        "q": psi.q,
        "epsilon": f.epsilon()?,
        "delta": f.coeffs(f.delta()?),
        "twist": f.coeffs(chr.twist()),
        "field": field_json(f),
        "blocks": blocks_json(&psi.blocks, cyc_json),
    }))
}

/// CSV of the integer blocks, one section per block; fails on any `gamma`.
pub fn psi_csv(psi: &PsiBlocks<CycInt>) -> Result<String> {
    let b = &psi.blocks;
    let mut out = String::new();
    for k in 0..4 {
        let rows = if k < 2 { &b.row_ranks } else { &b.row_signed };
        let cols = if k % 2 == 0 { &b.col_ranks } else { &b.col_signed };
        out.push_str(&format!("psi{}", k + 1));
        for c in cols.iter() {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
        for (s, row) in rows.iter().zip(&b.b[k]) {
            out.push_str(&s.to_string());
            for x in row {
                let v = x.to_int().map_err(|_| Error::NotRationalInteger)?;
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}
