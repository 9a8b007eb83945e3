//! JSON input for the `cocubical` report.
//!
//! A matrix is a list of rows; entries are integers or strings such as
//! `"-3/4"`. Index subsets are written as comma-separated indices (`"0,2"`).
//! The document holds exactly one of:
//!
//! - `{"system": {"n": 1, "complexes": {"0": C, "1": C, "0,1": C}, "faces": [{"from": "0", "to": "0,1", "maps": [M, ...]}, ...]}}`
//! - `{"cover": {"complex": [[0, 1], ...], "pieces": [[[0, 1]], ...]}}` (simplices generate
//!   their closures)
//! - `{"chain_map": {"source": C, "target": C, "maps": [M, ...]}}`
//!
//! where a complex `C` is `{"start": 0, "dims": [2, 1], "d": [M], "F": FILT, "W": FILT}`
//! and a filtration is `{"lo": 0, "levels": [[M, ...], ...]}`: per degree,
//! per level, a matrix whose columns span the subspace.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Value};

use super::complex::{quasi_iso_check, ChainMap, DegreeVerdict, FDComplex, Filtration, FiltrationKind, Piece};
use super::cover::{adjunction_system, SimplicialComplex};
use super::system::{simple_complex, CocubicalSystem};
use super::graded_piece;
use crate::linalg::{QMatrix, Subspace, Q};
use crate::strata::ComponentSet;
use crate::Error;

fn syntax<T>(msg: impl Into<String>) -> Result<T, Error> {
    Err(Error::Syntax(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str, ctx: &str) -> Result<&'a Value, Error> {
    v.get(key).ok_or_else(|| Error::Syntax(format!("{ctx}: missing `{key}`")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, Error> {
    v.as_array().ok_or_else(|| Error::Syntax(format!("{ctx}: expected an array")))
}

fn as_usize(v: &Value, ctx: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Syntax(format!("{ctx}: expected a non-negative integer")))
}

fn as_i64(v: &Value, ctx: &str) -> Result<i64, Error> {
    v.as_i64().ok_or_else(|| Error::Syntax(format!("{ctx}: expected an integer")))
}

fn rational(v: &Value, ctx: &str) -> Result<Q, Error> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Q::from_integer(i.into())),
            None => syntax(format!("{ctx}: entries must be integers or rational strings")),
        },
        Value::String(s) => Q::from_str(s.trim()).map_err(|_| Error::Syntax(format!("{ctx}: bad rational `{s}`"))),
        _ => syntax(format!("{ctx}: entries must be integers or rational strings")),
    }
}

/// A `rows x cols` matrix; `cols = None` infers the column count.
fn matrix(v: &Value, rows: usize, cols: Option<usize>, ctx: &str) -> Result<QMatrix, Error> {
    let list = as_array(v, ctx)?;
    if list.is_empty() {
        return Ok(QMatrix::zeros(rows, cols.unwrap_or(0)));
    }
    if list.len() != rows {
        return syntax(format!("{ctx}: expected {rows} rows, got {}", list.len()));
    }
    let parsed: Vec<Vec<Q>> = list
        .iter()
        .map(|row| as_array(row, ctx)?.iter().map(|x| rational(x, ctx)).collect())
        .collect::<Result<_, _>>()?;
    let width = cols.unwrap_or(parsed[0].len());
    if parsed.iter().any(|r| r.len() != width) {
        return syntax(format!("{ctx}: expected {width} columns in every row"));
    }
    Ok(QMatrix::from_rows_with_cols(parsed, width))
}

fn subset(text: &str, ctx: &str) -> Result<ComponentSet, Error> {
    let indices: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Syntax(format!("{ctx}: bad index subset `{text}`")))?;
    if indices.is_empty() || indices.iter().any(|&i| i >= 64) {
        return syntax(format!("{ctx}: bad index subset `{text}`"));
    }
    Ok(ComponentSet::from_indices(indices))
}

fn filtration(v: &Value, kind: FiltrationKind, dims: &[usize], ctx: &str) -> Result<Filtration, Error> {
    let lo = as_i64(field(v, "lo", ctx)?, ctx)?;
    let levels = as_array(field(v, "levels", ctx)?, ctx)?;
    if levels.len() != dims.len() {
        return syntax(format!("{ctx}: expected levels for {} degrees", dims.len()));
    }
    let spaces = levels
        .iter()
        .zip(dims)
        .map(|(per_degree, &dim)| {
            as_array(per_degree, ctx)?
                .iter()
                .map(|m| Ok(Subspace::column_span(&matrix(m, dim, None, ctx)?)))
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<_, _>>()?;
    Ok(Filtration { kind, lo, spaces })
}

pub fn parse_complex(v: &Value, ctx: &str) -> Result<FDComplex, Error> {
    let start = as_i64(field(v, "start", ctx)?, ctx)?;
    let dims: Vec<usize> = as_array(field(v, "dims", ctx)?, ctx)?
        .iter()
        .map(|x| as_usize(x, ctx))
        .collect::<Result<_, _>>()?;
    let empty = Value::Array(Vec::new());
    let d_list = as_array(v.get("d").unwrap_or(&empty), ctx)?;
    if d_list.len() != dims.len().saturating_sub(1) {
        return syntax(format!("{ctx}: expected {} differentials", dims.len().saturating_sub(1)));
    }
    let d = d_list
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(m, dims[k + 1], Some(dims[k]), ctx))
        .collect::<Result<_, _>>()?;
    let mut c = FDComplex::new(start, dims.clone(), d)?;
    if let Some(f) = v.get("F") {
        c = c.with_filtration(filtration(f, FiltrationKind::Decreasing, &dims, ctx)?)?;
    }
    if let Some(w) = v.get("W") {
        c = c.with_filtration(filtration(w, FiltrationKind::Increasing, &dims, ctx)?)?;
    }
    Ok(c)
}

fn parse_maps(v: &Value, src: &FDComplex, tgt: &FDComplex, ctx: &str) -> Result<ChainMap, Error> {
    let list = as_array(v, ctx)?;
    if list.len() != src.len() || src.dims().len() != tgt.dims().len() {
        return syntax(format!("{ctx}: expected one matrix per degree"));
    }
    let maps = list
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(m, tgt.dims()[k], Some(src.dims()[k]), ctx))
        .collect::<Result<_, _>>()?;
    Ok(ChainMap { start: src.start(), maps })
}

pub fn parse_system(v: &Value) -> Result<CocubicalSystem, Error> {
    let n = as_usize(field(v, "n", "system")?, "system")?;
    let raw = field(v, "complexes", "system")?
        .as_object()
        .ok_or_else(|| Error::Syntax("system.complexes: expected an object".into()))?;
    let mut complexes = BTreeMap::new();
    for (key, c) in raw {
        let l = subset(key, "system.complexes")?;
        complexes.insert(l, parse_complex(c, &format!("complex {key}"))?);
    }
    let mut faces = BTreeMap::new();
    for (idx, f) in as_array(field(v, "faces", "system")?, "system.faces")?.iter().enumerate() {
        let ctx = format!("face {idx}");
        let from = subset(field(f, "from", &ctx)?.as_str().unwrap_or(""), &ctx)?;
        let to = subset(field(f, "to", &ctx)?.as_str().unwrap_or(""), &ctx)?;
        let added = to.intersection(ComponentSet(!from.0));
        if !from.is_subset(to) || added.len() != 1 {
            return syntax(format!("{ctx}: `to` must add exactly one index to `from`"));
        }
        let (Some(src), Some(tgt)) = (complexes.get(&from), complexes.get(&to)) else {
            return syntax(format!("{ctx}: unknown subset"));
        };
        let i = added.iter().next().expect("one index");
        faces.insert((from, i), parse_maps(field(f, "maps", &ctx)?, src, tgt, &ctx)?);
    }
    Ok(CocubicalSystem::new(n, complexes, faces)?)
}

fn simplex_list(v: &Value, ctx: &str) -> Result<Vec<Vec<usize>>, Error> {
    as_array(v, ctx)?
        .iter()
        .map(|s| as_array(s, ctx)?.iter().map(|x| as_usize(x, ctx)).collect())
        .collect()
}

fn summary(c: &FDComplex) -> Value {
    json!({
        "start": c.start(),
        "dims": c.dims(),
        "cohomology": c.cohomology(),
        "euler": c.euler_characteristic(),
    })
}

fn verdicts(v: &[DegreeVerdict]) -> Value {
    Value::Array(
        v.iter()
            .map(|d| json!({"degree": d.degree, "source": d.source, "target": d.target, "rank": d.rank, "iso": d.iso}))
            .collect(),
    )
}

fn graded_report(c: &FDComplex, kind: FiltrationKind) -> Result<Option<Value>, Error> {
    let Some(filt) = c.filtration(kind) else {
        return Ok(None);
    };
    // One level beyond the stored range on the open side completes the list.
    let levels = match kind {
        FiltrationKind::Decreasing => filt.lo - 1..=filt.hi(),
        FiltrationKind::Increasing => filt.lo..=filt.hi() + 1,
    };
    let mut out = Vec::new();
    for r in levels {
        let piece = match kind {
            FiltrationKind::Decreasing => Piece::GrF(r),
            FiltrationKind::Increasing => Piece::GrW(r),
        };
        let g = graded_piece(c, piece)?;
        out.push(json!({"level": r, "dims": g.dims(), "cohomology": g.cohomology()}));
    }
    Ok(Some(Value::Array(out)))
}

/// Evaluates a document in any of the accepted forms.
pub fn report(doc: &Value) -> Result<Value, Error> {
    if let Some(v) = doc.get("system") {
        let sys = parse_system(v)?;
        let s = simple_complex(&sys);
        let mut out = json!({"simple": summary(&s)});
        if let Some(g) = graded_report(&s, FiltrationKind::Decreasing)? {
            out["gr_f"] = g;
        }
        if let Some(g) = graded_report(&s, FiltrationKind::Increasing)? {
            out["gr_w"] = g;
        }
        Ok(out)
    } else if let Some(v) = doc.get("cover") {
        let k = SimplicialComplex::closure(simplex_list(field(v, "complex", "cover")?, "cover.complex")?);
        let pieces = as_array(field(v, "pieces", "cover")?, "cover.pieces")?
            .iter()
            .map(|p| Ok(SimplicialComplex::closure(simplex_list(p, "cover.pieces")?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let a = adjunction_system(&k, &pieces)?;
        let v = quasi_iso_check(&a.augmentation, &a.cochains, &a.simple)?;
        Ok(json!({
            "simple": summary(&a.simple),
            "cochains": summary(&a.cochains),
            "augmentation": verdicts(&v),
            "quasi_iso": v.iter().all(|d| d.iso),
        }))
    } else if let Some(v) = doc.get("chain_map") {
        let src = parse_complex(field(v, "source", "chain_map")?, "source")?;
        let tgt = parse_complex(field(v, "target", "chain_map")?, "target")?;
        let f = parse_maps(field(v, "maps", "chain_map")?, &src, &tgt, "chain_map.maps")?;
        let v = quasi_iso_check(&f, &src, &tgt)?;
        Ok(json!({
            "source": summary(&src),
            "target": summary(&tgt),
            "verdicts": verdicts(&v),
            "quasi_iso": v.iter().all(|d| d.iso),
        }))
    } else {
        syntax("expected one of `system`, `cover`, `chain_map`")
    }
}
