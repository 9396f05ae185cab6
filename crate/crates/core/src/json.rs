//! JSON documents for categories, simplices, horns, fillers and MC objects.
//!
//! Rationals are strings `"p/q"` (or `"p"`). Over `ℚ` a ring element is such
//! a string; over `B = ℚ ⊕ I` it is `{"body": "p/q", "ideal": [...]}`.
//!
//! ```text
//! category  {"ring": {"ideal_rank": m}, "objects": [..],
//!            "homs": [{"source", "target", "dims": {"deg": rank}}],
//!            "differential": [{"source", "target", "degree", "matrix": [[..]]}],
//!            "composition": [{"objects": [X, Y, Z], "degrees": [|g|, |f|],
//!                             "entries": [[g, f, out, c], ..]}],
//!            "units": {"X": [..]}}
//! simplex   {"category"?, "n", "objects": [..], "cells": {"0,1": [..], ..}}
//! horn      simplex fields plus "k" and "missing": [face, top]
//! filler    {"n", "k", "cells": {..}}
//! mc        {"object": X, "eta": [..]}
//! ```
//!
//! The optional `"category"` of a simplex or horn is either an embedded
//! category document or a path, resolved relative to the document.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::dgcat::{CompEntry, DgCategory, Morphism};
use crate::glin::{GradedMap, GradedModule, Matrix};
use crate::horn::{face_seq, Filler, HornData};
use crate::mc::MCElement;
use crate::nerve::{format_seq, full_seq, parse_seq, sequences, NerveSimplex, Seq};
use crate::rings::{format_rational, parse_rational, RingElement, SquareZeroRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JsonError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn schema<T>(path: &str, message: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Schema {
        path: path.to_string(),
        message: message.into(),
    })
}

pub fn parse_text(text: &str) -> Result<Value, JsonError> {
    serde_json::from_str(text).map_err(|e| JsonError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Pretty printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, path: &str, key: &str) -> Result<&'a Value, JsonError> {
    match v.get(key) {
        Some(x) => Ok(x),
        None => schema(path, format!("missing field {key:?}")),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().map_or_else(|| schema(path, "expected an array"), Ok)
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().map_or_else(|| schema(path, "expected an object"), Ok)
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, JsonError> {
    v.as_str().map_or_else(|| schema(path, "expected a string"), Ok)
}

fn as_usize(v: &Value, path: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|x| x as usize)
        .map_or_else(|| schema(path, "expected a non-negative integer"), Ok)
}

fn as_i32(v: &Value, path: &str) -> Result<i32, JsonError> {
    v.as_i64()
        .and_then(|x| i32::try_from(x).ok())
        .map_or_else(|| schema(path, "expected an integer"), Ok)
}

pub fn element_to_json(x: &RingElement) -> Value {
    if x.ideal.is_empty() {
        Value::String(format_rational(&x.body))
    } else {
        json!({
            "body": format_rational(&x.body),
            "ideal": x.ideal.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

pub fn element_from_json(v: &Value, ring: SquareZeroRing, path: &str) -> Result<RingElement, JsonError> {
    let rat = |v: &Value, p: &str| {
        let s = as_str(v, p)?;
        parse_rational(s).or_else(|_| schema(p, format!("{s:?} is not a rational")))
    };
    match v {
        Value::String(_) if ring.ideal_rank == 0 => Ok(ring.scalar(rat(v, path)?)),
        Value::String(_) => schema(path, format!("expected {{\"body\", \"ideal\"}} over {ring}")),
        Value::Object(_) => {
            let body = rat(field(v, path, "body")?, &format!("{path}.body"))?;
            let ideal = as_array(field(v, path, "ideal")?, &format!("{path}.ideal"))?
                .iter()
                .enumerate()
                .map(|(i, x)| rat(x, &format!("{path}.ideal[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            ring.element(body, ideal)
                .or_else(|_| schema(path, format!("ideal part must have length {}", ring.ideal_rank)))
        }
        _ => schema(path, "expected a ring element"),
    }
}

fn coords_to_json(coords: &[RingElement]) -> Value {
    Value::Array(coords.iter().map(element_to_json).collect())
}

fn coords_from_json(v: &Value, ring: SquareZeroRing, path: &str) -> Result<Vec<RingElement>, JsonError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| element_from_json(x, ring, &format!("{path}[{i}]")))
        .collect()
}

pub fn category_to_json(c: &DgCategory) -> Value {
    let n = c.num_objects();
    let mut homs = Vec::new();
    let mut diff = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let dims: Map<String, Value> = c.hom(x, y).iter().map(|(d, k)| (d.to_string(), json!(k))).collect();
            if !dims.is_empty() {
                homs.push(json!({"source": c.label(x), "target": c.label(y), "dims": dims}));
            }
            for (deg, m) in c.differential(x, y).blocks() {
                let rows: Vec<Value> = m.to_rows().iter().map(|r| coords_to_json(r)).collect();
                diff.push(json!({"source": c.label(x), "target": c.label(y), "degree": deg, "matrix": rows}));
            }
        }
    }
    let comp: Vec<Value> = c
        .composition()
        .map(|((x, y, z, q, p), t)| {
            let entries: Vec<Value> = t
                .entries()
                .map(|e| json!([e.left, e.right, e.out, element_to_json(&e.coeff)]))
                .collect();
            json!({
                "objects": [c.label(x), c.label(y), c.label(z)],
                "degrees": [q, p],
                "entries": entries,
            })
        })
        .collect();
    let units: Map<String, Value> = (0..n)
        .map(|x| (c.label(x).to_string(), coords_to_json(c.unit_coords(x))))
        .collect();
    json!({
        "ring": {"ideal_rank": c.ring().ideal_rank},
        "objects": c.objects(),
        "homs": homs,
        "differential": diff,
        "composition": comp,
        "units": units,
    })
}

pub fn category_from_json(v: &Value) -> Result<DgCategory, JsonError> {
    let ring_v = field(v, "$", "ring")?;
    let ring = SquareZeroRing::new(as_usize(field(ring_v, "$.ring", "ideal_rank")?, "$.ring.ideal_rank")?);
    let objects: Vec<String> = as_array(field(v, "$", "objects")?, "$.objects")?
        .iter()
        .enumerate()
        .map(|(i, o)| as_str(o, &format!("$.objects[{i}]")).map(str::to_string))
        .collect::<Result<_, _>>()?;
    let n = objects.len();
    let index = |v: &Value, path: &str| -> Result<usize, JsonError> {
        let s = as_str(v, path)?;
        objects
            .iter()
            .position(|o| o == s)
            .map_or_else(|| schema(path, format!("unknown object {s:?}")), Ok)
    };
    let mut homs = vec![vec![GradedModule::zero(); n]; n];
    for (i, h) in as_array(field(v, "$", "homs")?, "$.homs")?.iter().enumerate() {
        let p = format!("$.homs[{i}]");
        let x = index(field(h, &p, "source")?, &format!("{p}.source"))?;
        let y = index(field(h, &p, "target")?, &format!("{p}.target"))?;
        let mut dims = Vec::new();
        for (d, k) in as_object(field(h, &p, "dims")?, &format!("{p}.dims"))? {
            let deg: i32 = d.parse().or_else(|_| schema(&p, format!("degree {d:?} is not an integer")))?;
            dims.push((deg, as_usize(k, &format!("{p}.dims.{d}"))?));
        }
        homs[x][y] = GradedModule::new(dims);
    }
    let mut diff: Vec<Vec<GradedMap>> = (0..n)
        .map(|x| (0..n).map(|y| GradedMap::zero(ring, 1, homs[x][y].clone(), homs[x][y].clone())).collect())
        .collect();
    for (i, b) in as_array(field(v, "$", "differential")?, "$.differential")?.iter().enumerate() {
        let p = format!("$.differential[{i}]");
        let x = index(field(b, &p, "source")?, &format!("{p}.source"))?;
        let y = index(field(b, &p, "target")?, &format!("{p}.target"))?;
        let deg = as_i32(field(b, &p, "degree")?, &format!("{p}.degree"))?;
        let rows = as_array(field(b, &p, "matrix")?, &format!("{p}.matrix"))?
            .iter()
            .enumerate()
            .map(|(r, row)| coords_from_json(row, ring, &format!("{p}.matrix[{r}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let (rs, cs) = (homs[x][y].dim(deg + 1), homs[x][y].dim(deg));
        if rows.len() != rs || rows.iter().any(|r| r.len() != cs) {
            return schema(&p, format!("expected a {rs}×{cs} matrix"));
        }
        let mut m = Matrix::zeros(ring, rs, cs);
        for (r, row) in rows.into_iter().enumerate() {
            for (col, e) in row.into_iter().enumerate() {
                m.set(r, col, e);
            }
        }
        diff[x][y].set_block(deg, m).or_else(|e| schema(&p, e.to_string()))?;
    }
    let mut comp: BTreeMap<_, Vec<CompEntry>> = BTreeMap::new();
    for (i, t) in as_array(field(v, "$", "composition")?, "$.composition")?.iter().enumerate() {
        let p = format!("$.composition[{i}]");
        let objs = as_array(field(t, &p, "objects")?, &format!("{p}.objects"))?;
        let degs = as_array(field(t, &p, "degrees")?, &format!("{p}.degrees"))?;
        if objs.len() != 3 || degs.len() != 2 {
            return schema(&p, "expected three objects and two degrees");
        }
        let key = (
            index(&objs[0], &format!("{p}.objects[0]"))?,
            index(&objs[1], &format!("{p}.objects[1]"))?,
            index(&objs[2], &format!("{p}.objects[2]"))?,
            as_i32(&degs[0], &format!("{p}.degrees[0]"))?,
            as_i32(&degs[1], &format!("{p}.degrees[1]"))?,
        );
        let slot = comp.entry(key).or_default();
        for (j, e) in as_array(field(t, &p, "entries")?, &format!("{p}.entries"))?.iter().enumerate() {
            let ep = format!("{p}.entries[{j}]");
            let e = as_array(e, &ep)?;
            if e.len() != 4 {
                return schema(&ep, "expected [left, right, out, coefficient]");
            }
            slot.push(CompEntry {
                left: as_usize(&e[0], &ep)?,
                right: as_usize(&e[1], &ep)?,
                out: as_usize(&e[2], &ep)?,
                coeff: element_from_json(&e[3], ring, &format!("{ep}[3]"))?,
            });
        }
    }
    let units_v = as_object(field(v, "$", "units")?, "$.units")?;
    let mut units = Vec::with_capacity(n);
    for o in &objects {
        let p = format!("$.units.{o}");
        match units_v.get(o) {
            Some(u) => units.push(coords_from_json(u, ring, &p)?),
            None => return schema(&p, "missing unit"),
        }
    }
    DgCategory::new(ring, objects, homs, diff, comp, units).or_else(|e| schema("$", e.to_string()))
}

fn cells_to_json(cells: impl Iterator<Item = (Seq, Morphism)>) -> Value {
    Value::Object(cells.map(|(s, m)| (format_seq(s), coords_to_json(&m.coords))).collect())
}

fn object_labels(c: &DgCategory, objects: &[usize]) -> Value {
    json!(objects.iter().map(|&x| c.label(x)).collect::<Vec<_>>())
}

/// `category` is embedded verbatim when given.
pub fn simplex_to_json(c: &DgCategory, sigma: &NerveSimplex, category: Option<Value>) -> Value {
    let mut m = Map::new();
    if let Some(cat) = category {
        m.insert("category".into(), cat);
    }
    m.insert("n".into(), json!(sigma.n));
    m.insert("objects".into(), object_labels(c, &sigma.objects));
    let ordered = sequences(sigma.n)
        .into_iter()
        .filter_map(|s| sigma.get(s).map(|m| (s, m.clone())));
    m.insert("cells".into(), cells_to_json(ordered));
    Value::Object(m)
}

/// Reads the cells present in the document; absent cells stay absent.
pub fn simplex_from_json(v: &Value, c: &DgCategory) -> Result<NerveSimplex, JsonError> {
    let n = as_usize(field(v, "$", "n")?, "$.n")?;
    let objects = as_array(field(v, "$", "objects")?, "$.objects")?
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let p = format!("$.objects[{i}]");
            c.object_index(as_str(o, &p)?).or_else(|e| schema(&p, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if objects.len() != n + 1 {
        return schema("$.objects", format!("expected {} objects for n = {n}", n + 1));
    }
    let mut sigma = NerveSimplex::new(objects).or_else(|e| schema("$.n", e.to_string()))?;
    for (key, coords) in as_object(field(v, "$", "cells")?, "$.cells")? {
        let p = format!("$.cells.{key}");
        let s = parse_seq(key).or_else(|e| schema(&p, e.to_string()))?;
        if s >= 1 << (n + 1) || s.count_ones() < 2 {
            return schema(&p, format!("not a sequence of a {n}-simplex"));
        }
        let (x, y, d) = sigma.cell_shape(s);
        let coords = coords_from_json(coords, c.ring(), &p)?;
        let m = c.morphism(x, y, d, coords).or_else(|e| schema(&p, e.to_string()))?;
        sigma.set_cell(s, m);
    }
    Ok(sigma)
}

pub fn horn_to_json(c: &DgCategory, h: &HornData, category: Option<Value>) -> Value {
    let mut v = simplex_to_json(c, &h.simplex, category);
    let m = v.as_object_mut().expect("object");
    m.insert("k".into(), json!(h.k));
    m.insert(
        "missing".into(),
        json!(h.missing().iter().map(|s| format_seq(*s)).collect::<Vec<_>>()),
    );
    v
}

pub fn horn_from_json(v: &Value, c: &DgCategory) -> Result<HornData, JsonError> {
    let sigma = simplex_from_json(v, c)?;
    let k = as_usize(field(v, "$", "k")?, "$.k")?;
    let n = sigma.n;
    if let Some(missing) = v.get("missing") {
        let listed = as_array(missing, "$.missing")?
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let p = format!("$.missing[{i}]");
                parse_seq(as_str(s, &p)?).or_else(|e| schema(&p, e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut expected = vec![face_seq(n, k), full_seq(n)];
        let mut got = listed;
        expected.sort_unstable();
        got.sort_unstable();
        if k <= n && got != expected {
            return schema("$.missing", format!("a Λ^{k}_{n} horn misses ({}) and ({})", format_seq(expected[0]), format_seq(expected[1])));
        }
    }
    HornData::new(sigma, k).or_else(|e| schema("$", e.to_string()))
}

pub fn filler_to_json(f: &Filler) -> Value {
    json!({
        "n": f.n,
        "k": f.k,
        "cells": cells_to_json(f.cells.iter().map(|(s, m)| (*s, m.clone()))),
    })
}

/// Reads a filler for the horn `h`, checking cell shapes against `c`.
pub fn filler_from_json(v: &Value, c: &DgCategory, h: &HornData) -> Result<Filler, JsonError> {
    let n = as_usize(field(v, "$", "n")?, "$.n")?;
    let k = as_usize(field(v, "$", "k")?, "$.k")?;
    if (n, k) != (h.n(), h.k) {
        return schema("$", format!("filler for Λ^{k}_{n} does not match horn Λ^{}_{}", h.k, h.n()));
    }
    let cells_v = as_object(field(v, "$", "cells")?, "$.cells")?;
    let mut cells = BTreeMap::new();
    for s in h.missing() {
        let key = format_seq(s);
        let p = format!("$.cells.{key}");
        let Some(coords) = cells_v.get(&key) else {
            return schema(&p, "missing filler cell");
        };
        let (x, y, d) = h.simplex.cell_shape(s);
        let coords = coords_from_json(coords, c.ring(), &p)?;
        cells.insert(s, c.morphism(x, y, d, coords).or_else(|e| schema(&p, e.to_string()))?);
    }
    if cells_v.len() != 2 {
        return schema("$.cells", "a filler has exactly two cells");
    }
    Ok(Filler { n, k, cells })
}

pub fn mc_to_json(c: &DgCategory, mc: &MCElement) -> Value {
    json!({"object": c.label(mc.object()), "label": mc.label, "eta": coords_to_json(&mc.eta.coords)})
}

pub fn mc_from_json(v: &Value, c: &DgCategory) -> Result<MCElement, JsonError> {
    let x = c
        .object_index(as_str(field(v, "$", "object")?, "$.object")?)
        .or_else(|e| schema("$.object", e.to_string()))?;
    let label = match v.get("label") {
        Some(l) => as_str(l, "$.label")?.to_string(),
        None => c.label(x).to_string(),
    };
    let coords = coords_from_json(field(v, "$", "eta")?, c.ring(), "$.eta")?;
    let eta = c.morphism(x, x, 1, coords).or_else(|e| schema("$.eta", e.to_string()))?;
    Ok(MCElement::new(label, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{all_fixtures, complex_a, twisted};
    use crate::horn::{extract_horn, fill, Sampler};
    use crate::rings::rational;
    use crate::sample::rng_from_seed;

    #[test]
    fn elements() {
        let q = SquareZeroRing::RATIONALS;
        let x = q.scalar(rational(-3, 4));
        assert_eq!(element_to_json(&x), json!("-3/4"));
        assert_eq!(element_from_json(&json!("-3/4"), q, "$").unwrap(), x);
        let b = SquareZeroRing::new(2);
        let y = b.element(rational(1, 1), vec![rational(0, 1), rational(2, 3)]).unwrap();
        let v = element_to_json(&y);
        assert_eq!(v, json!({"body": "1", "ideal": ["0", "2/3"]}));
        assert_eq!(element_from_json(&v, b, "$").unwrap(), y);
        assert!(element_from_json(&json!("1"), b, "$").is_err());
        assert!(element_from_json(&json!("x/2"), q, "$").is_err());
    }

    #[test]
    fn categories_round_trip() {
        for (name, c) in all_fixtures() {
            let text = to_text(&category_to_json(&c));
            let back = category_from_json(&parse_text(&text).unwrap()).unwrap();
            assert_eq!(back, c, "{name}");
            assert_eq!(to_text(&category_to_json(&back)), text);
        }
    }

    #[test]
    fn simplex_horn_filler_round_trip() {
        let c = twisted(1).category;
        let mut rng = rng_from_seed(3);
        let sigma = Sampler::new(&c, true).simplex(&mut rng, 3);
        let v = simplex_to_json(&c, &sigma, None);
        assert_eq!(simplex_from_json(&v, &c).unwrap(), sigma);
        let h = extract_horn(&sigma, 0).unwrap();
        let hv = horn_to_json(&c, &h, Some(json!("cat.json")));
        assert_eq!(horn_from_json(&hv, &c).unwrap(), h);
        let f = fill(&c, &h).unwrap();
        assert_eq!(filler_from_json(&filler_to_json(&f), &c, &h).unwrap(), f);
    }

    #[test]
    fn mc_round_trip() {
        let t = twisted(2);
        for mc in &t.mc_objects {
            assert_eq!(&mc_from_json(&mc_to_json(&t.base, mc), &t.base).unwrap(), mc);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_text("{\n  \"ring\": }"), Err(JsonError::Syntax { line: 2, .. })));
        let mut v = category_to_json(&complex_a());
        v["composition"][0]["entries"][0][3] = json!("1/0");
        let err = category_from_json(&v).unwrap_err();
        assert!(err.to_string().starts_with("$.composition[0].entries[0][3]"), "{err}");
    }

    #[test]
    fn wrong_missing_list_is_rejected() {
        let c = complex_a();
        let sigma = NerveSimplex::identity(&c, 1, 2);
        let h = extract_horn(&sigma, 1).unwrap();
        let mut v = horn_to_json(&c, &h, None);
        v["missing"] = json!(["0,1", "0,1,2"]);
        assert!(horn_from_json(&v, &c).is_err());
    }
}
