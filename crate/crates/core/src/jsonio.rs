//! JSON codecs for scalars, matrices, groups, analysis reports and assembly
//! data.
//!
//! Scalar: {"conductor": N, "coeffs": ["p/q", ...]} with exactly phi(N)
//! entries. A matrix is a row-major nested array of coefficient arrays, the
//! conductor carried by the surrounding object. Round trips are bit-exact.

use crate::cyclo::{euler_phi, Cyclo};
use crate::error::{Error, Result};
use crate::linalg::CycloMatrix;
use crate::matgroup::MatrixGroup;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::str::FromStr;

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_string(s: &str) -> Result<BigRational> {
    let (n, d) = s
        .split_once('/')
        .ok_or_else(|| Error::InvalidConstruction(format!("bad rational `{s}`")))?;
    let num = BigInt::from_str(n)
        .map_err(|_| Error::InvalidConstruction(format!("bad numerator `{n}`")))?;
    let den = BigInt::from_str(d)
        .map_err(|_| Error::InvalidConstruction(format!("bad denominator `{d}`")))?;
    if den == BigInt::from(0) {
        return Err(Error::InvalidConstruction("zero denominator".into()));
    }
    Ok(BigRational::new(num, den))
}

pub fn cyclo_to_json(c: &Cyclo) -> Value {
    json!({
        "conductor": c.conductor(),
        "coeffs": c.coeffs().iter().map(rational_to_string).collect::<Vec<_>>(),
    })
}

pub fn cyclo_from_json(v: &Value) -> Result<Cyclo> {
    let conductor = v["conductor"]
        .as_u64()
        .ok_or_else(|| Error::InvalidConstruction("missing conductor".into()))? as u32;
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| Error::InvalidConstruction("missing coeffs".into()))?;
    let parsed: Result<Vec<BigRational>> = coeffs
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| Error::InvalidConstruction("coeff must be a string".into()))
                .and_then(rational_from_string)
        })
        .collect();
    Cyclo::from_coeffs(conductor, parsed?)
}

/// Matrix at a known conductor: rows of entries, each entry a coefficient
/// string array of length phi(conductor).
pub fn matrix_to_json(m: &CycloMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| {
            let row: Vec<Value> = (0..m.cols)
                .map(|j| {
                    let e = m.at(i, j);
                    Value::Array(
                        e.coeffs()
                            .iter()
                            .map(|c| Value::String(rational_to_string(c)))
                            .collect(),
                    )
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_json(v: &Value, conductor: u32) -> Result<CycloMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidConstruction("matrix must be an array".into()))?;
    let phi = euler_phi(conductor);
    let mut entries = Vec::new();
    let nrows = rows.len();
    let mut ncols = 0;
    for row in rows {
        let cols = row
            .as_array()
            .ok_or_else(|| Error::InvalidConstruction("matrix row must be an array".into()))?;
        ncols = cols.len();
        for e in cols {
            let coeffs = e
                .as_array()
                .ok_or_else(|| Error::InvalidConstruction("entry must be an array".into()))?;
            if coeffs.len() != phi {
                return Err(Error::InvalidConstruction(format!(
                    "entry needs {phi} coefficients at conductor {conductor}"
                )));
            }
            let parsed: Result<Vec<BigRational>> = coeffs
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| Error::InvalidConstruction("coeff must be a string".into()))
                        .and_then(rational_from_string)
                })
                .collect();
            entries.push(Cyclo::from_coeffs(conductor, parsed?)?);
        }
    }
    Ok(CycloMatrix::from_entries(nrows, ncols, entries))
}

/// A list of matrices in the group-entry encoding.
pub fn matrices_from_json(s: &str, conductor: u32) -> Result<Vec<CycloMatrix>> {
    let v: Value = serde_json::from_str(s)?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidConstruction("expected an array of matrices".into()))?;
    arr.iter().map(|m| matrix_from_json(m, conductor)).collect()
}

pub fn group_to_json(g: &MatrixGroup) -> Value {
    json!({
        "name": g.name,
        "dim": g.dim,
        "conductor": g.conductor,
        "generators": g.generators.iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value) -> Result<MatrixGroup> {
    let dim = v["dim"]
        .as_u64()
        .ok_or_else(|| Error::InvalidConstruction("missing dim".into()))? as usize;
    let conductor = v["conductor"]
        .as_u64()
        .ok_or_else(|| Error::InvalidConstruction("missing conductor".into()))? as u32;
    let gens = v["generators"]
        .as_array()
        .ok_or_else(|| Error::InvalidConstruction("missing generators".into()))?;
    let mats: Result<Vec<CycloMatrix>> =
        gens.iter().map(|m| matrix_from_json(m, conductor)).collect();
    let name = v["name"].as_str().map(|s| s.to_string());
    MatrixGroup::new(dim, mats?, name)
}

/// Assembly data: {"triples":[{"G":spec|object,"H":...,"F":...,"case":tag}],
/// "classes":[[[t,c],...]], "isos":[{"pair":[[t,c],[t,c]],
/// "conductor":N, "images":[matrix...]}]}. Specs are catalog names; "H"/"F"
/// may be null for trivial groups; iso images are given in the target
/// triple's local dimension.
pub fn assembly_from_json(v: &Value) -> Result<crate::assembly::AssemblyData> {
    let triples_json = v["triples"]
        .as_array()
        .ok_or_else(|| Error::InvalidAssembly("missing triples".into()))?;
    let mut parts = Vec::new();
    for t in triples_json {
        let load = |key: &str, dim_hint: Option<usize>| -> Result<Option<MatrixGroup>> {
            let entry = &t[key];
            if entry.is_null() {
                return Ok(dim_hint.map(MatrixGroup::trivial));
            }
            if let Some(s) = entry.as_str() {
                if s == "trivial" {
                    return Ok(dim_hint.map(MatrixGroup::trivial));
                }
                return Ok(Some(crate::catalog::catalog_lookup(s)?));
            }
            Ok(Some(group_from_json(entry)?))
        };
        let g = load("G", None)?
            .ok_or_else(|| Error::InvalidAssembly("triple needs a G entry".into()))?;
        let h = load("H", Some(g.dim))?.unwrap();
        let f = load("F", Some(g.dim))?.unwrap();
        let case_tag = t["case"].as_str().map(|s| s.to_string());
        parts.push(crate::assembly::CatalogTriple { g, h, f, case_tag });
    }
    // a top-level "dim" marks data already realized in one shared ambient
    // space (the decompose output); otherwise triples are standalone factors
    // embedded block-diagonally in listing order
    if let Some(shared) = v["dim"].as_u64() {
        let shared = shared as usize;
        if parts.iter().all(|p| p.g.dim == shared) {
            return assembly_from_shared_json(v, parts, shared);
        }
    }
    let parse_ref = |r: &Value| -> Result<(usize, usize)> {
        let arr = r
            .as_array()
            .ok_or_else(|| Error::InvalidAssembly("component ref must be [t, c]".into()))?;
        Ok((
            arr[0].as_u64().unwrap_or(u64::MAX) as usize,
            arr[1].as_u64().unwrap_or(u64::MAX) as usize,
        ))
    };
    let classes: Result<Vec<Vec<(usize, usize)>>> = v["classes"]
        .as_array()
        .ok_or_else(|| Error::InvalidAssembly("missing classes".into()))?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| Error::InvalidAssembly("class must be an array".into()))?
                .iter()
                .map(parse_ref)
                .collect()
        })
        .collect();
    let mut isos = Vec::new();
    if let Some(arr) = v["isos"].as_array() {
        for iso in arr {
            let pair = iso["pair"]
                .as_array()
                .ok_or_else(|| Error::InvalidAssembly("iso needs a pair".into()))?;
            let a = parse_ref(&pair[0])?;
            let b = parse_ref(&pair[1])?;
            let conductor = iso["conductor"].as_u64().unwrap_or(1) as u32;
            let images: Result<Vec<CycloMatrix>> = iso["images"]
                .as_array()
                .ok_or_else(|| Error::InvalidAssembly("iso needs images".into()))?
                .iter()
                .map(|m| matrix_from_json(m, conductor))
                .collect();
            isos.push(((a, b), images?));
        }
    }
    crate::assembly::assembly_from_parts(parts, classes?, isos)
}

fn parse_ref_value(r: &Value) -> Result<(usize, usize)> {
    let arr = r
        .as_array()
        .ok_or_else(|| Error::InvalidAssembly("component ref must be [t, c]".into()))?;
    Ok((
        arr[0].as_u64().unwrap_or(u64::MAX) as usize,
        arr[1].as_u64().unwrap_or(u64::MAX) as usize,
    ))
}

/// Shared-ambient loader: groups and isomorphism images are used as given.
fn assembly_from_shared_json(
    v: &Value,
    parts: Vec<crate::assembly::CatalogTriple>,
    dim: usize,
) -> Result<crate::assembly::AssemblyData> {
    let mut triples = Vec::new();
    for p in parts {
        let f_simple = if p.f.order()? == 1 {
            Vec::new()
        } else {
            let inv = crate::analysis::inventory(&p.f, crate::matgroup::element_cap())?;
            crate::assembly::simple_reflections(dim, &inv.reflections)?
        };
        triples.push(crate::assembly::TripleDatum {
            g: p.g,
            h: p.h,
            f: p.f,
            f_simple,
            case_tag: p.case_tag,
            expected_diagram: None,
        });
    }
    let classes: Result<Vec<Vec<(usize, usize)>>> = v["classes"]
        .as_array()
        .ok_or_else(|| Error::InvalidAssembly("missing classes".into()))?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| Error::InvalidAssembly("class must be an array".into()))?
                .iter()
                .map(parse_ref_value)
                .collect()
        })
        .collect();
    let mut isos = Vec::new();
    if let Some(arr) = v["isos"].as_array() {
        for iso in arr {
            let pair = iso["pair"]
                .as_array()
                .ok_or_else(|| Error::InvalidAssembly("iso needs a pair".into()))?;
            let a = parse_ref_value(&pair[0])?;
            let b = parse_ref_value(&pair[1])?;
            let conductor = iso["conductor"].as_u64().unwrap_or(1) as u32;
            let images: Result<Vec<CycloMatrix>> = iso["images"]
                .as_array()
                .ok_or_else(|| Error::InvalidAssembly("iso needs images".into()))?
                .iter()
                .map(|m| matrix_from_json(m, conductor))
                .collect();
            isos.push(crate::assembly::IsoDatum { pair: (a, b), images: images? });
        }
    }
    Ok(crate::assembly::AssemblyData { dim, triples, classes: classes?, isos })
}

pub fn assembly_to_json(data: &crate::assembly::AssemblyData) -> Value {
    json!({
        "dim": data.dim,
        "triples": data.triples.iter().map(|t| {
            json!({
                "G": group_to_json(&t.g),
                "H": group_to_json(&t.h),
                "F": group_to_json(&t.f),
                "case": t.case_tag,
            })
        }).collect::<Vec<_>>(),
        "classes": data.classes.iter().map(|c| {
            c.iter().map(|&(t, ci)| json!([t, ci])).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "isos": data.isos.iter().map(|iso| {
            json!({
                "pair": [[iso.pair.0.0, iso.pair.0.1], [iso.pair.1.0, iso.pair.1.1]],
                "conductor": iso.images.first().map(|m| m.conductor).unwrap_or(1),
                "images": iso.images.iter().map(matrix_to_json).collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(r: &crate::analysis::AnalysisReport) -> Value {
    json!({
        "order": r.order.to_string(),
        "reflections": r.reflections,
        "rotations": r.rotations,
        "rotation_orders": r
            .rotation_orders
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect::<std::collections::BTreeMap<String, usize>>(),
        "commutant_dim": r.commutant_dim,
        "components": r.components,
        "checks": r
            .checks
            .iter()
            .map(|(k, v)| (k.clone(), if *v { "pass" } else { "fail" }))
            .collect::<std::collections::BTreeMap<String, &str>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclo_round_trip_bit_exact() {
        let a = Cyclo::zeta(12, 5).add(&Cyclo::ratio(-7, 3));
        let j = cyclo_to_json(&a);
        let b = cyclo_from_json(&j).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.conductor(), b.conductor());
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&cyclo_to_json(&b)).unwrap());
    }

    #[test]
    fn group_round_trip() {
        let g = crate::catalog::catalog_lookup("W(BC3)").unwrap();
        let j = group_to_json(&g);
        let back = group_from_json(&j).unwrap();
        assert_eq!(back.dim, 3);
        assert_eq!(back.order().unwrap(), 48);
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&group_to_json(&back)).unwrap());
    }
}
