//! JSON codecs for every wire type, over `serde_json::Value`.
//!
//! Conventions: `Q/Z` elements are strings `"num/den"`; integer coefficients
//! are JSON numbers when they fit in an `i64` and decimal strings otherwise;
//! rational coefficients are always strings `"p/q"` (this is what
//! distinguishes the two coefficient modes of a group-ring element).
//! Serialization is canonical — maps iterate in their natural key order —
//! so identical values produce byte-identical JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use bc_core::bc::{BcElem, CrossedElem, RationalBcElem};
use bc_core::cyclo::{CycloFactorization, IntPoly};
use bc_core::dynamical::GradedEndo;
use bc_core::expectation::HodgeTable;
use bc_core::group_ring::{IntElem, RatElem};
use bc_core::matrix::IntMatrix;
use bc_core::orbits::{BoldK0Elem, OrbitSum};
use bc_core::qz::QZ;
use bc_core::scissors::{AssemblerPresentation, CoveringFamily, K0Group, ObjectImages};
use bc_core::witt::{TruncationSet, WittVector};

/// A malformed payload, with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "schema error at {}: {}", self.path, self.message)
    }
}

impl std::error::Error for SchemaError {}

type R<T> = Result<T, SchemaError>;

fn err<T>(path: &str, message: impl Into<String>) -> R<T> {
    Err(SchemaError {
        path: path.to_string(),
        message: message.into(),
    })
}

pub fn parse_value(s: &str, path: &str) -> R<Value> {
    serde_json::from_str(s).or_else(|e| err(path, format!("invalid JSON: {e}")))
}

// ---- scalars ----------------------------------------------------------

pub fn parse_bigint(v: &Value, path: &str) -> R<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                err(path, "expected an integer, not a float")
            }
        }
        Value::String(s) if !s.contains('/') => {
            BigInt::from_str(s.trim()).or_else(|_| err(path, "expected a decimal integer string"))
        }
        _ => err(path, "expected an integer (number or decimal string)"),
    }
}

pub fn bigint_to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

pub fn parse_rational(v: &Value, path: &str) -> R<BigRational> {
    if let Value::String(s) = v {
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .or_else(|_| err::<BigInt>(path, "bad rational numerator"))?;
            let q = BigInt::from_str(q.trim())
                .or_else(|_| err::<BigInt>(path, "bad rational denominator"))?;
            if q == BigInt::from(0) {
                return err(path, "zero denominator");
            }
            return Ok(BigRational::new(p, q));
        }
    }
    Ok(BigRational::from_integer(parse_bigint(v, path)?))
}

pub fn rational_to_value(x: &BigRational) -> Value {
    json!(format!("{}/{}", x.numer(), x.denom()))
}

pub fn parse_qz(v: &Value, path: &str) -> R<QZ> {
    let Value::String(s) = v else {
        return err(path, "expected a fraction string \"num/den\"");
    };
    QZ::from_str(s).or_else(|e| err(path, e.to_string()))
}

pub fn qz_to_value(r: &QZ) -> Value {
    json!(r.to_string())
}

// ---- group-ring elements ----------------------------------------------

/// A group-ring payload in whichever coefficient mode the JSON declares:
/// any `"p/q"` coefficient makes the whole element rational.
pub enum ElemPayload {
    Int(IntElem),
    Rat(RatElem),
}

fn term_objects<'v>(v: &'v Value, path: &str) -> R<Vec<(&'v Map<String, Value>, String)>> {
    let Value::Array(items) = v else {
        return err(path, "expected an array of {\"r\", \"c\"} terms");
    };
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let p = format!("{path}[{i}]");
            match item {
                Value::Object(o) => Ok((o, p)),
                _ => err(&p, "expected an object"),
            }
        })
        .collect()
}

fn is_rational_coeff(v: &Value) -> bool {
    matches!(v, Value::String(s) if s.contains('/'))
}

pub fn parse_elem_auto(v: &Value, path: &str) -> R<ElemPayload> {
    let rational = term_objects(v, path)?
        .iter()
        .any(|(o, _)| o.get("c").is_some_and(is_rational_coeff));
    if rational {
        Ok(ElemPayload::Rat(parse_rat_elem(v, path)?))
    } else {
        Ok(ElemPayload::Int(parse_int_elem(v, path)?))
    }
}

pub fn parse_int_elem(v: &Value, path: &str) -> R<IntElem> {
    let mut terms = Vec::new();
    for (o, p) in term_objects(v, path)? {
        let r = parse_qz(
            o.get("r").ok_or_else(|| SchemaError {
                path: format!("{p}.r"),
                message: "missing field".into(),
            })?,
            &format!("{p}.r"),
        )?;
        let c = parse_bigint(
            o.get("c").ok_or_else(|| SchemaError {
                path: format!("{p}.c"),
                message: "missing field".into(),
            })?,
            &format!("{p}.c"),
        )?;
        terms.push((r, c));
    }
    Ok(IntElem::from_terms(terms))
}

pub fn parse_rat_elem(v: &Value, path: &str) -> R<RatElem> {
    let mut terms = Vec::new();
    for (o, p) in term_objects(v, path)? {
        let r = parse_qz(
            o.get("r").ok_or_else(|| SchemaError {
                path: format!("{p}.r"),
                message: "missing field".into(),
            })?,
            &format!("{p}.r"),
        )?;
        let c = parse_rational(
            o.get("c").ok_or_else(|| SchemaError {
                path: format!("{p}.c"),
                message: "missing field".into(),
            })?,
            &format!("{p}.c"),
        )?;
        terms.push((r, c));
    }
    Ok(RatElem::from_terms(terms))
}

pub fn int_elem_to_value(x: &IntElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(r, c)| json!({"r": qz_to_value(r), "c": bigint_to_value(c)}))
            .collect(),
    )
}

pub fn rat_elem_to_value(x: &RatElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(r, c)| json!({"r": qz_to_value(r), "c": rational_to_value(c)}))
            .collect(),
    )
}

// ---- Bost-Connes elements ----------------------------------------------

pub fn parse_bc_elem(v: &Value, path: &str) -> R<BcElem> {
    let Value::Array(items) = v else {
        return err(path, "expected an array of {\"a\", \"b\", \"x\"} terms");
    };
    let mut terms = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let Value::Object(o) = item else {
            return err(&p, "expected an object");
        };
        let a = parse_index(o.get("a"), &format!("{p}.a"))?;
        let b = parse_index(o.get("b"), &format!("{p}.b"))?;
        let x = parse_int_elem(
            o.get("x").ok_or_else(|| SchemaError {
                path: format!("{p}.x"),
                message: "missing field".into(),
            })?,
            &format!("{p}.x"),
        )?;
        terms.push((a, x, b));
    }
    Ok(BcElem::from_terms(terms))
}

fn parse_index(v: Option<&Value>, path: &str) -> R<u64> {
    let v = v.ok_or_else(|| SchemaError {
        path: path.to_string(),
        message: "missing field".into(),
    })?;
    let n = v.as_u64().ok_or_else(|| SchemaError {
        path: path.to_string(),
        message: "expected a positive integer".into(),
    })?;
    if n == 0 {
        return err(path, "index must be >= 1");
    }
    Ok(n)
}

pub fn bc_elem_to_value(x: &BcElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(&(a, b), e)| json!({"a": a, "b": b, "x": int_elem_to_value(e)}))
            .collect(),
    )
}

pub fn rational_bc_to_value(x: &RationalBcElem) -> Value {
    Value::Array(
        x.terms()
            .map(|(&(a, b), e)| json!({"a": a, "b": b, "x": rat_elem_to_value(e)}))
            .collect(),
    )
}

// ---- orbit sums ---------------------------------------------------------

pub fn parse_orbit_sum(v: &Value, path: &str) -> R<OrbitSum> {
    let Value::Object(o) = v else {
        return err(path, "expected {\"orbits\": {\"d\": mult}}");
    };
    let Some(Value::Object(orbits)) = o.get("orbits") else {
        return err(&format!("{path}.orbits"), "missing or not an object");
    };
    let mut terms = Vec::new();
    for (k, mv) in orbits {
        let p = format!("{path}.orbits.{k}");
        let d: u64 = k
            .parse()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| SchemaError {
                path: p.clone(),
                message: "orbit length must be a positive integer key".into(),
            })?;
        terms.push((d, parse_bigint(mv, &p)?));
    }
    Ok(OrbitSum::from_orbits(terms))
}

pub fn orbit_sum_to_value(x: &OrbitSum) -> Value {
    let mut m = Map::new();
    for (d, mult) in x.orbits() {
        m.insert(d.to_string(), bigint_to_value(mult));
    }
    json!({ "orbits": m })
}

pub fn parse_bold_elem(v: &Value, path: &str) -> R<BoldK0Elem> {
    let Value::Array(items) = v else {
        return err(path, "expected an array of {\"a\", \"b\", \"x\"} terms");
    };
    let mut terms = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let Value::Object(o) = item else {
            return err(&p, "expected an object");
        };
        let a = parse_index(o.get("a"), &format!("{p}.a"))?;
        let b = parse_index(o.get("b"), &format!("{p}.b"))?;
        let x = parse_orbit_sum(
            o.get("x").ok_or_else(|| SchemaError {
                path: format!("{p}.x"),
                message: "missing field".into(),
            })?,
            &format!("{p}.x"),
        )?;
        terms.push((a, x, b));
    }
    Ok(CrossedElem::from_terms(terms))
}

pub fn bold_elem_to_value(x: &BoldK0Elem) -> Value {
    Value::Array(
        x.terms()
            .map(|(&(a, b), e)| json!({"a": a, "b": b, "x": orbit_sum_to_value(e)}))
            .collect(),
    )
}

// ---- Witt vectors --------------------------------------------------------

pub fn parse_trunc_gens(s: &str) -> R<TruncationSet> {
    let mut gens = Vec::new();
    for part in s.split(',') {
        let n: u64 = part
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| SchemaError {
                path: "--trunc".into(),
                message: format!("bad truncation generator {part:?}"),
            })?;
        gens.push(n);
    }
    Ok(TruncationSet::from_gens(gens))
}

pub fn parse_witt(v: &Value, path: &str) -> R<WittVector> {
    let Value::Object(o) = v else {
        return err(path, "expected {\"trunc\": [...], \"coords\": {...}}");
    };
    let Some(Value::Array(ts)) = o.get("trunc") else {
        return err(&format!("{path}.trunc"), "missing or not an array");
    };
    let mut gens = Vec::new();
    for (i, t) in ts.iter().enumerate() {
        let p = format!("{path}.trunc[{i}]");
        let n = t.as_u64().filter(|&n| n >= 1).ok_or_else(|| SchemaError {
            path: p,
            message: "expected a positive integer".into(),
        })?;
        gens.push(n);
    }
    let trunc = TruncationSet::from_gens(gens);
    let Some(Value::Object(cs)) = o.get("coords") else {
        return err(&format!("{path}.coords"), "missing or not an object");
    };
    let mut coords = Vec::new();
    for (k, cv) in cs {
        let p = format!("{path}.coords.{k}");
        let d: u64 = k
            .parse()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| SchemaError {
                path: p.clone(),
                message: "coordinate key must be a positive integer".into(),
            })?;
        coords.push((d, parse_bigint(cv, &p)?));
    }
    WittVector::from_coords(trunc, coords).or_else(|e| err(path, e.to_string()))
}

pub fn witt_to_value(w: &WittVector) -> Value {
    let trunc: Vec<Value> = w.trunc().iter().map(|d| json!(d)).collect();
    let mut coords = Map::new();
    for (d, x) in w.coords() {
        coords.insert(d.to_string(), bigint_to_value(x));
    }
    json!({"trunc": trunc, "coords": coords})
}

pub fn parse_ghosts(v: &Value, path: &str) -> R<BTreeMap<u64, BigInt>> {
    let Value::Object(o) = v else {
        return err(path, "expected {\"m\": ghost} with integer keys");
    };
    let mut out = BTreeMap::new();
    for (k, gv) in o {
        let p = format!("{path}.{k}");
        let m: u64 = k
            .parse()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| SchemaError {
                path: p.clone(),
                message: "ghost key must be a positive integer".into(),
            })?;
        out.insert(m, parse_bigint(gv, &p)?);
    }
    Ok(out)
}

pub fn ghosts_to_value(g: &BTreeMap<u64, BigInt>) -> Value {
    let mut m = Map::new();
    for (d, x) in g {
        m.insert(d.to_string(), bigint_to_value(x));
    }
    Value::Object(m)
}

// ---- polynomials, matrices, graded endomorphisms -------------------------

pub fn parse_int_poly(v: &Value, path: &str) -> R<IntPoly> {
    let Value::Array(items) = v else {
        return err(path, "expected an integer array, constant term first");
    };
    let coeffs: R<Vec<BigInt>> = items
        .iter()
        .enumerate()
        .map(|(i, c)| parse_bigint(c, &format!("{path}[{i}]")))
        .collect();
    Ok(IntPoly::from_coeffs(coeffs?))
}

pub fn int_poly_to_value(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(bigint_to_value).collect())
}

pub fn parse_matrix(v: &Value, path: &str) -> R<IntMatrix> {
    let Value::Array(rows) = v else {
        return err(path, "expected an array of rows");
    };
    let n = rows.len();
    let mut parsed: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let Value::Array(cells) = row else {
            return err(&p, "expected an array row");
        };
        if cells.len() != n {
            return err(
                &p,
                format!(
                    "matrix must be square: row has {} of {n} entries",
                    cells.len()
                ),
            );
        }
        let row: R<Vec<BigInt>> = cells
            .iter()
            .enumerate()
            .map(|(j, c)| parse_bigint(c, &format!("{p}[{j}]")))
            .collect();
        parsed.push(row?);
    }
    Ok(IntMatrix::from_bigint_rows(parsed))
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        m.rows()
            .take(m.size())
            .map(|row| Value::Array(row.iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

pub fn parse_graded_endo(v: &Value, path: &str) -> R<GradedEndo> {
    let Value::Object(o) = v else {
        return err(path, "expected {\"blocks\": [{\"degree\", \"matrix\"}]}");
    };
    let Some(Value::Array(blocks)) = o.get("blocks") else {
        return err(&format!("{path}.blocks"), "missing or not an array");
    };
    let mut parsed = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let p = format!("{path}.blocks[{i}]");
        let Value::Object(bo) = b else {
            return err(&p, "expected an object");
        };
        let degree = bo
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| SchemaError {
                path: format!("{p}.degree"),
                message: "expected a nonnegative integer".into(),
            })?;
        let degree = u32::try_from(degree).map_err(|_| SchemaError {
            path: format!("{p}.degree"),
            message: "degree too large".into(),
        })?;
        let m = parse_matrix(
            bo.get("matrix").ok_or_else(|| SchemaError {
                path: format!("{p}.matrix"),
                message: "missing field".into(),
            })?,
            &format!("{p}.matrix"),
        )?;
        parsed.push((degree, m));
    }
    GradedEndo::new(parsed).or_else(|e| err(path, e.to_string()))
}

pub fn graded_endo_to_value(g: &GradedEndo) -> Value {
    let blocks: Vec<Value> = g
        .blocks()
        .iter()
        .map(|(k, m)| json!({"degree": k, "matrix": matrix_to_value(m)}))
        .collect();
    json!({ "blocks": blocks })
}

pub fn cyclo_factorization_to_value(f: &CycloFactorization) -> Value {
    let mut cyclo = Map::new();
    for (d, m) in &f.cyclo {
        cyclo.insert(d.to_string(), json!(m));
    }
    json!({
        "zero_mult": f.zero_mult,
        "cyclo": cyclo,
        "remainder": int_poly_to_value(&f.remainder),
    })
}

// ---- Hodge tables ---------------------------------------------------------

pub fn parse_hodge_table(v: &Value, path: &str) -> R<HodgeTable> {
    let Value::Array(items) = v else {
        return err(path, "expected an array of {\"p\", \"q\", \"x\"} entries");
    };
    let mut table = HodgeTable::new();
    for (i, item) in items.iter().enumerate() {
        let pth = format!("{path}[{i}]");
        let Value::Object(o) = item else {
            return err(&pth, "expected an object");
        };
        let p = o
            .get("p")
            .and_then(Value::as_u64)
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| SchemaError {
                path: format!("{pth}.p"),
                message: "expected a nonnegative integer".into(),
            })?;
        let q = o
            .get("q")
            .and_then(Value::as_u64)
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| SchemaError {
                path: format!("{pth}.q"),
                message: "expected a nonnegative integer".into(),
            })?;
        let x = parse_int_elem(
            o.get("x").ok_or_else(|| SchemaError {
                path: format!("{pth}.x"),
                message: "missing field".into(),
            })?,
            &format!("{pth}.x"),
        )?;
        table.insert(p, q, x);
    }
    Ok(table)
}

pub fn hodge_table_to_value(t: &HodgeTable) -> Value {
    Value::Array(
        t.entries()
            .map(|(&(p, q), x)| json!({"p": p, "q": q, "x": int_elem_to_value(x)}))
            .collect(),
    )
}

// ---- assembler presentations ----------------------------------------------

pub fn parse_presentation(v: &Value, path: &str) -> R<AssemblerPresentation> {
    let Value::Object(o) = v else {
        return err(path, "expected {\"objects\": [...], \"families\": [...]}");
    };
    let Some(Value::Array(objs)) = o.get("objects") else {
        return err(&format!("{path}.objects"), "missing or not an array");
    };
    let mut objects = Vec::new();
    for (i, ov) in objs.iter().enumerate() {
        let Some(s) = ov.as_str() else {
            return err(&format!("{path}.objects[{i}]"), "expected a string label");
        };
        objects.push(s.to_string());
    }
    let mut families = Vec::new();
    if let Some(fv) = o.get("families") {
        let Value::Array(fams) = fv else {
            return err(&format!("{path}.families"), "expected an array");
        };
        for (i, f) in fams.iter().enumerate() {
            let p = format!("{path}.families[{i}]");
            let Value::Object(fo) = f else {
                return err(&p, "expected an object");
            };
            let Some(target) = fo.get("target").and_then(Value::as_str) else {
                return err(&format!("{p}.target"), "expected a string label");
            };
            let Some(Value::Array(parts)) = fo.get("parts") else {
                return err(&format!("{p}.parts"), "missing or not an array");
            };
            let mut part_labels = Vec::new();
            for (j, pv) in parts.iter().enumerate() {
                let Some(s) = pv.as_str() else {
                    return err(&format!("{p}.parts[{j}]"), "expected a string label");
                };
                part_labels.push(s.to_string());
            }
            families.push(CoveringFamily {
                target: target.to_string(),
                parts: part_labels,
            });
        }
    }
    AssemblerPresentation::new(objects, families).or_else(|e| err(path, e.to_string()))
}

pub fn presentation_to_value(p: &AssemblerPresentation) -> Value {
    json!({
        "objects": p.objects,
        "families": p.families.iter().map(|f| json!({
            "target": f.target,
            "parts": f.parts,
        })).collect::<Vec<_>>(),
    })
}

pub fn parse_object_images(v: &Value, path: &str) -> R<ObjectImages> {
    let Value::Object(o) = v else {
        return err(path, "expected {label: [{\"o\": label, \"c\": int}]}");
    };
    let mut out = ObjectImages::new();
    for (label, imv) in o {
        let p = format!("{path}.{label}");
        let Value::Array(items) = imv else {
            return err(&p, "expected an array of {\"o\", \"c\"}");
        };
        let mut image = Vec::new();
        for (i, item) in items.iter().enumerate() {
            let ip = format!("{p}[{i}]");
            let Value::Object(io) = item else {
                return err(&ip, "expected an object");
            };
            let Some(target) = io.get("o").and_then(Value::as_str) else {
                return err(&format!("{ip}.o"), "expected a string label");
            };
            let c = parse_bigint(
                io.get("c").ok_or_else(|| SchemaError {
                    path: format!("{ip}.c"),
                    message: "missing field".into(),
                })?,
                &format!("{ip}.c"),
            )?;
            image.push((target.to_string(), c));
        }
        out.insert(label.clone(), image);
    }
    Ok(out)
}

pub fn k0_group_to_value(k: &K0Group) -> Value {
    let mut basis = Map::new();
    for (label, class) in k.basis_map() {
        basis.insert(
            label.clone(),
            Value::Array(class.iter().map(bigint_to_value).collect()),
        );
    }
    json!({
        "rank": k.rank,
        "torsion": k.torsion.iter().map(bigint_to_value).collect::<Vec<_>>(),
        "basis_map": basis,
    })
}

// ---- complex formatting ----------------------------------------------------

/// `a+bi` with 12 decimal digits; an imaginary part that rounds to zero
/// collapses to `+0i`, matching the documented output format.
pub fn format_complex(z: Complex64) -> String {
    let re = format_f64(z.re);
    let im_mag = format_f64(z.im.abs());
    if im_mag == "0.000000000000" {
        format!("{re}+0i")
    } else if z.im < 0.0 {
        format!("{re}-{im_mag}i")
    } else {
        format!("{re}+{im_mag}i")
    }
}

pub fn format_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // normalize -0.0
    let mut s = String::new();
    let _ = write!(s, "{x:.12}");
    s
}
