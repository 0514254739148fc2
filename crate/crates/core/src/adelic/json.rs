//! JSON form of points:
//!
//! ```text
//! {"r": {"global": "1+w", "overrides": [{"set": "<prime set>", "local": L}]},
//!  "a": "unit" | "zero" | {"element": "6"} | {"pieces": [{"set": "...", "exp": 3 | "inf"}]}}
//! L := {"exact": "1/2"} | {"generic": {"val": 0, "precise": true, "not_in_k": true}}
//! ```

use serde_json::{json, Map, Value};

use super::{AdeleSketch, LocalValue, OmegaPoint, SuperIdeal, Valuation};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::primesets::PrimeSetExpr;

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::json(path, "expected an object"))
}

fn field_of<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::json(format!("{path}.{key}"), "missing"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::json(path, "expected a string"))
}

pub(crate) fn element_from_json(field: &NumberField, v: &Value, path: &str) -> Result<FieldElement> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::json(path, "expected a field element string")),
    };
    field
        .element(&s)
        .map_err(|e| Error::json(path, e.to_string()))
}

pub(crate) fn prime_set_from_json(v: &Value, path: &str) -> Result<PrimeSetExpr> {
    string(v, path)?
        .parse()
        .map_err(|e: Error| Error::json(path, e.to_string()))
}

impl Valuation {
    pub fn to_json(self) -> Value {
        match self {
            Valuation::Finite(v) => json!(v),
            Valuation::Infinite => json!("inf"),
        }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::String(s) if s == "inf" => Ok(Valuation::Infinite),
            Value::Number(n) => n
                .as_i64()
                .map(Valuation::Finite)
                .ok_or_else(|| Error::json(path, "exponent must be an integer")),
            _ => Err(Error::json(path, "expected an integer or \"inf\"")),
        }
    }
}

impl LocalValue {
    pub fn to_json(&self) -> Value {
        match self {
            LocalValue::Exact(y) => json!({ "exact": y.to_string() }),
            LocalValue::Generic {
                valuation,
                precise,
                not_in_k,
            } => json!({ "generic": { "val": valuation, "precise": precise, "not_in_k": not_in_k } }),
        }
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        let m = obj(v, path)?;
        if let Some(e) = m.get("exact") {
            return Ok(LocalValue::Exact(element_from_json(field, e, &format!("{path}.exact"))?));
        }
        let gpath = format!("{path}.generic");
        let g = obj(
            m.get("generic")
                .ok_or_else(|| Error::json(path, "expected `exact` or `generic`"))?,
            &gpath,
        )?;
        let valuation = field_of(g, "val", &gpath)?
            .as_i64()
            .ok_or_else(|| Error::json(format!("{gpath}.val"), "expected an integer"))?;
        let flag = |key: &str, default: bool| -> Result<bool> {
            match g.get(key) {
                None => Ok(default),
                Some(b) => b
                    .as_bool()
                    .ok_or_else(|| Error::json(format!("{gpath}.{key}"), "expected a boolean")),
            }
        };
        Ok(LocalValue::Generic {
            valuation,
            precise: flag("precise", true)?,
            not_in_k: flag("not_in_k", false)?,
        })
    }
}

impl AdeleSketch {
    pub fn to_json(&self) -> Value {
        let overrides: Vec<Value> = self
            .overrides()
            .iter()
            .map(|(s, v)| json!({ "set": s.to_string(), "local": v.to_json() }))
            .collect();
        json!({ "global": self.global_part().to_string(), "overrides": overrides })
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        if v.is_string() || v.is_number() {
            return Ok(AdeleSketch::global(element_from_json(field, v, path)?));
        }
        let m = obj(v, path)?;
        let global = match m.get("global") {
            Some(g) => element_from_json(field, g, &format!("{path}.global"))?,
            None => FieldElement::zero(),
        };
        let mut overrides = Vec::new();
        if let Some(list) = m.get("overrides") {
            let opath = format!("{path}.overrides");
            let list = list
                .as_array()
                .ok_or_else(|| Error::json(&opath, "expected an array"))?;
            for (i, item) in list.iter().enumerate() {
                let ipath = format!("{opath}[{i}]");
                let im = obj(item, &ipath)?;
                let set = prime_set_from_json(field_of(im, "set", &ipath)?, &format!("{ipath}.set"))?;
                let local = LocalValue::from_json(field, field_of(im, "local", &ipath)?, &format!("{ipath}.local"))?;
                overrides.push((set, local));
            }
        }
        AdeleSketch::new(field, global, overrides)
    }
}

impl SuperIdeal {
    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .pieces()
            .iter()
            .map(|(s, e)| json!({ "set": s.to_string(), "exp": e.to_json() }))
            .collect();
        json!({ "pieces": pieces })
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        match v {
            Value::String(s) if s == "unit" => return Ok(SuperIdeal::unit()),
            Value::String(s) if s == "zero" => return Ok(SuperIdeal::zero()),
            Value::String(_) => return Err(Error::json(path, "expected \"unit\", \"zero\" or an object")),
            _ => {}
        }
        let m = obj(v, path)?;
        if let Some(e) = m.get("element") {
            let k = element_from_json(field, e, &format!("{path}.element"))?;
            return SuperIdeal::of_element(field, &k);
        }
        let ppath = format!("{path}.pieces");
        let list = field_of(m, "pieces", path)?
            .as_array()
            .ok_or_else(|| Error::json(&ppath, "expected an array"))?;
        let mut pieces = Vec::new();
        for (i, item) in list.iter().enumerate() {
            let ipath = format!("{ppath}[{i}]");
            let im = obj(item, &ipath)?;
            let set = prime_set_from_json(field_of(im, "set", &ipath)?, &format!("{ipath}.set"))?;
            let exp = Valuation::from_json(field_of(im, "exp", &ipath)?, &format!("{ipath}.exp"))?;
            pieces.push((set, exp));
        }
        SuperIdeal::new(field, pieces)
    }
}

impl OmegaPoint {
    pub fn to_json(&self) -> Value {
        json!({ "r": self.r.to_json(), "a": self.a.to_json() })
    }

    pub fn from_json(field: &NumberField, v: &Value, path: &str) -> Result<Self> {
        let m = obj(v, path)?;
        let r = match m.get("r") {
            Some(r) => AdeleSketch::from_json(field, r, &format!("{path}.r"))?,
            None => AdeleSketch::global(FieldElement::zero()),
        };
        let a = SuperIdeal::from_json(field, field_of(m, "a", path)?, &format!("{path}.a"))?;
        Ok(OmegaPoint::new(r, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_roundtrip() {
        let k = NumberField::imag_quadratic(-5).unwrap();
        let v: Value = serde_json::from_str(
            r#"{"r":{"global":"1+w","overrides":[{"set":"(finite \"P2\")","local":{"generic":{"val":0,"not_in_k":true}}}]},
                "a":{"pieces":[{"set":"(finite \"P2\")","exp":"inf"},{"set":"(complement (finite \"P2\"))","exp":0}]}}"#,
        )
        .unwrap();
        let w = OmegaPoint::from_json(&k, &v, "point").unwrap();
        let back = OmegaPoint::from_json(&k, &w.to_json(), "point").unwrap();
        assert_eq!(back, w);
        assert_eq!(back.to_json(), w.to_json());
    }

    #[test]
    fn shorthand_forms() {
        let q = NumberField::rational();
        let v: Value = serde_json::from_str(r#"{"r":{"global":"0"},"a":"unit"}"#).unwrap();
        let w = OmegaPoint::from_json(&q, &v, "point").unwrap();
        assert!(w.a.is_unit());
        let v: Value = serde_json::from_str(r#"{"r":"3","a":{"element":"6"}}"#).unwrap();
        let w = OmegaPoint::from_json(&q, &v, "point").unwrap();
        assert_eq!(w, OmegaPoint::exact(&q, FieldElement::from_int(3), &FieldElement::from_int(6)).unwrap());
    }

    #[test]
    fn errors_name_the_field() {
        let q = NumberField::rational();
        let v: Value = serde_json::from_str(r#"{"r":{"global":"x"},"a":"unit"}"#).unwrap();
        match OmegaPoint::from_json(&q, &v, "point") {
            Err(Error::Json { path, .. }) => assert_eq!(path, "point.r.global"),
            other => panic!("unexpected {other:?}"),
        }
        let v: Value = serde_json::from_str(r#"{"r":"0"}"#).unwrap();
        match OmegaPoint::from_json(&q, &v, "point") {
            Err(Error::Json { path, .. }) => assert_eq!(path, "point.a"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
