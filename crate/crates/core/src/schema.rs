//! JSON instance documents.
//!
//! Syntax errors report a line and column; shape errors report the JSON
//! path of the offending value. Law violations surface as [`Error::Law`] so
//! that callers can report them as failed equations rather than bad input.
//!
//! Rational entries are integers or strings `"p/q"`. Complex bases are
//! ordered by degree, as in [`Complex::from_pieces`].

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::bar::{DgAlgebra, DgModule};
use crate::dg::{q, Complex, GradedMap, Matrix, Q};
use crate::fincat::{FinSet, TableCategory, TableComonad, TableMonad, TableSpec};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum Endofunctor {
    Coreader(FinSet),
    Exception(FinSet),
    Identity,
    TableComonad(TableComonad),
    TableMonad(TableMonad),
}

#[derive(Debug, Clone)]
pub enum Document {
    Category(TableCategory),
    Endofunctor(Endofunctor),
    Complex(Complex),
    GradedMap(GradedMap),
    Algebra(DgAlgebra),
    Module(DgAlgebra, DgModule),
}

fn bad(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("at {}: {msg}", if path.is_empty() { "/" } else { path }))
}

/// Shape errors gain the path; law errors pass through.
fn located(path: &str, e: Error) -> Error {
    match e {
        Error::Law(_) | Error::Parse(_) => e,
        other => bad(path, other),
    }
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let what = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(w, _)| w);
        Error::Parse(format!("line {} column {}: {what}", e.line(), e.column()))
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(path, "expected an object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| bad(path, format!("missing field `{key}`")))
}

fn integer(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad(path, "expected an integer"))
}

fn rational(v: &Value, path: &str) -> Result<Q> {
    match v {
        Value::Number(n) => n.as_i64().map(q).ok_or_else(|| bad(path, "non-integral number; write rationals as \"p/q\"")),
        Value::String(s) => Q::from_str(s.trim()).map_err(|e| bad(path, format!("`{s}` is not a rational: {e}"))),
        _ => Err(bad(path, "expected a number or a \"p/q\" string")),
    }
}

fn vector(v: &Value, len: usize, path: &str) -> Result<Vec<Q>> {
    let items = v.as_array().ok_or_else(|| bad(path, "expected an array"))?;
    if items.len() != len {
        return Err(bad(path, format!("expected {len} entries, found {}", items.len())));
    }
    items.iter().enumerate().map(|(i, x)| rational(x, &format!("{path}/{i}"))).collect()
}

/// A list of `rows` rows of `cols` entries each.
fn matrix(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let items = v.as_array().ok_or_else(|| bad(path, "expected an array of rows"))?;
    if items.len() != rows {
        return Err(bad(path, format!("expected {rows} rows, found {}", items.len())));
    }
    let data = items
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, cols, &format!("{path}/{i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(data, cols).expect("rows checked"))
}

fn degree_key(k: &str, path: &str) -> Result<i32> {
    k.parse().map_err(|_| bad(path, format!("`{k}` is not a degree")))
}

pub fn complex(v: &Value, path: &str) -> Result<Complex> {
    let o = object(v, path)?;
    let mut dims = BTreeMap::new();
    let dpath = format!("{path}/degrees");
    for (k, n) in object(field(o, "degrees", path)?, &dpath)? {
        let p = format!("{dpath}/{k}");
        let n = usize::try_from(integer(n, &p)?).map_err(|_| bad(&p, "negative dimension"))?;
        dims.insert(degree_key(k, &p)?, n);
    }
    let mut boundary = BTreeMap::new();
    if let Some(b) = o.get("boundary") {
        let bpath = format!("{path}/boundary");
        for (k, m) in object(b, &bpath)? {
            let p = format!("{bpath}/{k}");
            let deg = degree_key(k, &p)?;
            let get = |d: i32| dims.get(&d).copied().unwrap_or(0);
            boundary.insert(deg, matrix(m, get(deg - 1), get(deg), &p)?);
        }
    }
    Complex::from_pieces(&dims, &boundary).map_err(|e| located(path, e))
}

pub fn graded_map(v: &Value, path: &str) -> Result<GradedMap> {
    let o = object(v, path)?;
    let src = Arc::new(complex(field(o, "source", path)?, &format!("{path}/source"))?);
    let tgt = Arc::new(complex(field(o, "target", path)?, &format!("{path}/target"))?);
    let dp = format!("{path}/degree");
    let degree = i32::try_from(integer(field(o, "degree", path)?, &dp)?).map_err(|_| bad(&dp, "degree out of range"))?;
    let mp = format!("{path}/matrix");
    let m = matrix(field(o, "matrix", path)?, tgt.dim(), src.dim(), &mp)?;
    GradedMap::new(&src, &tgt, degree, m).map_err(|e| located(&mp, e))
}

pub fn algebra(v: &Value, path: &str) -> Result<DgAlgebra> {
    let o = object(v, path)?;
    if let Some(kind) = o.get("kind") {
        return match kind.as_str() {
            Some("rationals") => Ok(DgAlgebra::rationals()),
            Some("dual_numbers") => Ok(DgAlgebra::dual_numbers()),
            Some("exterior") => {
                let d = match o.get("gen_degree") {
                    Some(g) => integer(g, &format!("{path}/gen_degree"))?,
                    None => 1,
                };
                let d = i32::try_from(d).map_err(|_| bad(&format!("{path}/gen_degree"), "out of range"))?;
                Ok(DgAlgebra::exterior(d))
            }
            _ => Err(bad(&format!("{path}/kind"), format!("unknown algebra kind {kind}"))),
        };
    }
    let a = complex(field(o, "complex", path)?, &format!("{path}/complex"))?;
    let n = a.dim();
    let unit = vector(field(o, "unit", path)?, n, &format!("{path}/unit"))?;
    let unit = Matrix::from_rows(unit.into_iter().map(|x| vec![x]).collect(), 1).expect("one column");
    let mult = matrix(field(o, "mult", path)?, n, n * n, &format!("{path}/mult"))?;
    let name = o.get("name").and_then(Value::as_str).unwrap_or("algebra");
    DgAlgebra::new(name, a, unit, mult).map_err(|e| located(path, e))
}

pub fn module(v: &Value, path: &str) -> Result<(DgAlgebra, DgModule)> {
    let o = object(v, path)?;
    let alg = algebra(field(o, "algebra", path)?, &format!("{path}/algebra"))?;
    let cpath = format!("{path}/complex");
    let m = match o.get("kind").map(|k| (k, k.as_str())) {
        Some((_, Some("regular"))) => DgModule::regular(&alg),
        Some((_, Some("free"))) => DgModule::free(&alg, &complex(field(o, "complex", path)?, &cpath)?),
        Some((_, Some("trivial"))) => {
            DgModule::trivial(&alg, &complex(field(o, "complex", path)?, &cpath)?).map_err(|e| located(path, e))?
        }
        Some((k, _)) => return Err(bad(&format!("{path}/kind"), format!("unknown module kind {k}"))),
        None => {
            let m = Arc::new(complex(field(o, "complex", path)?, &cpath)?);
            let ap = format!("{path}/action");
            let act = matrix(field(o, "action", path)?, m.dim(), alg.dim() * m.dim(), &ap)?;
            DgModule::new(&alg, m, act).map_err(|e| located(&ap, e))?
        }
    };
    Ok((alg, m))
}

fn finite_set(v: &Value, path: &str) -> Result<FinSet> {
    let items = v.as_array().ok_or_else(|| bad(path, "expected a list of element labels"))?;
    let labels = items
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(bad(&format!("{path}/{i}"), "expected a label")),
        })
        .collect::<Result<Vec<_>>>()?;
    FinSet::new(labels).map_err(|e| located(path, e))
}

fn typed<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| bad("", e))
}

pub fn document(v: &Value) -> Result<Document> {
    let o = object(v, "")?;
    let has = |k: &str| o.contains_key(k);
    if has("objects") {
        let spec: TableSpec = typed(v)?;
        return Ok(Document::Category(TableCategory::new(spec).map_err(|e| located("", e))?));
    }
    if has("algebra") {
        let (alg, m) = module(v, "")?;
        return Ok(Document::Module(alg, m));
    }
    if has("source") {
        return Ok(Document::GradedMap(graded_map(v, "")?));
    }
    if has("mult") && has("complex") {
        return Ok(Document::Algebra(algebra(v, "")?));
    }
    if has("degrees") {
        return Ok(Document::Complex(complex(v, "")?));
    }
    if has("functor") {
        return Ok(Document::Endofunctor(if has("counit") {
            Endofunctor::TableComonad(typed(v)?)
        } else {
            Endofunctor::TableMonad(typed(v)?)
        }));
    }
    match o.get("kind").and_then(Value::as_str) {
        Some("coreader") => Ok(Document::Endofunctor(Endofunctor::Coreader(finite_set(field(o, "S", "")?, "/S")?))),
        Some("exception") => Ok(Document::Endofunctor(Endofunctor::Exception(finite_set(field(o, "E", "")?, "/E")?))),
        Some("identity") => Ok(Document::Endofunctor(Endofunctor::Identity)),
        Some(_) => Ok(Document::Algebra(algebra(v, "")?)),
        None => Err(bad("", "unrecognised document")),
    }
}

pub fn parse(text: &str) -> Result<Document> {
    document(&parse_value(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse("{\n  \"degrees\": {\"0\": 1,}\n}").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.starts_with("line 2 column")), "{e}");
    }

    #[test]
    fn shape_errors_have_paths() {
        let e = parse(r#"{"degrees": {"0": 1, "1": 1}, "boundary": {"1": [[1, 2]]}}"#).unwrap_err();
        assert_eq!(e, Error::Parse("at /boundary/1/0: expected 1 entries, found 2".into()));
        let e = parse(r#"{"degrees": {"0": 1, "1": 1}, "boundary": {"1": [["x"]]}}"#).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.starts_with("at /boundary/1/0/0:")), "{e}");
        let e = parse(r#"{"degrees": {"0": 1, "1": 1}, "boundary": {"1": [[0.5]]}}"#).unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("non-integral")), "{e}");
    }

    #[test]
    fn complexes_and_maps() {
        let Document::Complex(c) = parse(r#"{"degrees": {"1": 1, "0": 1}, "boundary": {"1": [["-1/2"]]}}"#).unwrap() else {
            panic!("expected a complex")
        };
        assert_eq!(c.degrees(), &[0, 1]);
        assert_eq!(c.boundary_in(1), Matrix::from_rows(vec![vec![Q::new((-1).into(), 2.into())]], 1).unwrap());
        let e = parse(r#"{"degrees": {"0":1,"1":1,"2":1}, "boundary": {"1": [[1]], "2": [[1]]}}"#).unwrap_err();
        assert!(matches!(e, Error::Law(_)));
        let text = r#"{"source": {"degrees": {"0": 1}}, "target": {"degrees": {"1": 1}}, "degree": 1, "matrix": [[3]]}"#;
        let Document::GradedMap(f) = parse(text).unwrap() else { panic!("expected a map") };
        assert_eq!(f.degree(), 1);
        let text = r#"{"source": {"degrees": {"0": 1}}, "target": {"degrees": {"1": 1}}, "degree": 0, "matrix": [[3]]}"#;
        assert!(matches!(parse(text), Err(Error::Parse(m)) if m.starts_with("at /matrix")));
    }

    #[test]
    fn algebras_and_modules() {
        let Document::Algebra(a) = parse(r#"{"kind": "exterior", "gen_degree": 2}"#).unwrap() else { panic!() };
        assert_eq!(a, DgAlgebra::exterior(2));
        let text = r#"{"complex": {"degrees": {"0": 2}}, "unit": [1, 0], "mult": [[1,0,0,0],[0,1,1,0]]}"#;
        let Document::Algebra(a) = parse(text).unwrap() else { panic!() };
        assert_eq!(a.mult, DgAlgebra::dual_numbers().mult);
        let bad_assoc = r#"{"complex": {"degrees": {"0": 2}}, "unit": [1, 0], "mult": [[1,0,0,0],[0,1,0,1]]}"#;
        assert!(matches!(parse(bad_assoc), Err(Error::Law(_))));
        let text = r#"{"algebra": {"kind": "dual_numbers"}, "complex": {"degrees": {"0": 1}}, "action": [[1, 0]]}"#;
        let Document::Module(_, m) = parse(text).unwrap() else { panic!() };
        assert_eq!(m.m.dim(), 1);
        let text = r#"{"algebra": {"kind": "dual_numbers"}, "complex": {"degrees": {"0": 1}}, "action": [[1, 1]]}"#;
        assert!(matches!(parse(text), Err(Error::Law(_))));
        let text = r#"{"algebra": {"kind": "rationals"}, "kind": "regular"}"#;
        assert!(matches!(parse(text).unwrap(), Document::Module(..)));
    }

    #[test]
    fn endofunctors_and_categories() {
        assert!(matches!(
            parse(r#"{"kind": "coreader", "S": ["a", "b"]}"#).unwrap(),
            Document::Endofunctor(Endofunctor::Coreader(s)) if s.len() == 2
        ));
        let cat = r#"{"objects": ["x"], "arrows": [{"id": "1", "dom": "x", "cod": "x"}], "identities": {"x": "1"}}"#;
        assert!(matches!(parse(cat).unwrap(), Document::Category(_)));
        let cat = r#"{"objects": ["x"], "arrows": [], "identities": {"x": "1"}}"#;
        assert!(matches!(parse(cat), Err(Error::Parse(_))));
        assert!(matches!(parse(r#"{"kind": "monoid"}"#), Err(Error::Parse(_))));
    }
}
