//! JSON documents for categories and weights.
//!
//! Category: `{"tnorm": str, "grid": [rationals] | null, "names": [str],
//! "hom": [[value, ...], ...]}`. Weight: `{"base": <name or inline
//! category>, "values": [...]}`. Values are `"p/q"` strings (exact) or
//! numbers (float).

use serde::{Deserialize, Serialize};

use crate::cat::{EnrichedCategory, Rel};
use crate::error::{Error, Result};
use crate::grid::ValueGrid;
use crate::presheaf::Weight;
use crate::rational::Rational;
use crate::tnorm::TNorm;
use crate::value::{Mode, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub tnorm: String,
    #[serde(default)]
    pub grid: Option<Vec<Value>>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    pub hom: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Name(String),
    Inline(CategoryDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub base: BaseRef,
    pub values: Vec<Value>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn grid_point(v: &Value) -> Result<Rational> {
    match v {
        Value::Exact(r) => Ok(r.clone()),
        Value::Float(x) => Rational::from_f64(*x)
            .ok_or_else(|| Error::Parse(format!("grid point {x} is not finite"))),
    }
}

impl CategoryDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    /// Validates and builds the category.
    pub fn build(&self) -> Result<EnrichedCategory> {
        let t: TNorm = self.tnorm.parse()?;
        let n = self.hom.len();
        let mode = self.hom.first().and_then(|r| r.first()).map_or(Mode::Exact, Value::mode);
        let data: Vec<Value> = self.hom.iter().flatten().cloned().collect();
        if self.hom.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("hom must be a square matrix".into()));
        }
        let mut cat = EnrichedCategory::new(t.clone(), Rel::new(n, n, mode, data)?)?;
        if let Some(names) = &self.names {
            cat = cat.with_names(names.clone())?;
        }
        if let Some(grid) = &self.grid {
            let pts = grid.iter().map(grid_point).collect::<Result<Vec<_>>>()?;
            cat = cat.with_grid(ValueGrid::validate(pts, &t)?)?;
        }
        Ok(cat)
    }

    pub fn from_category(x: &EnrichedCategory) -> Self {
        CategoryDoc {
            tnorm: x.tnorm().to_string(),
            grid: x.grid().map(|g| g.values().collect()),
            names: Some(x.names().to_vec()),
            hom: x.hom_rel().to_rows(),
        }
    }
}

pub fn load_category(text: &str) -> Result<EnrichedCategory> {
    CategoryDoc::parse(text)?.build()
}

pub fn category_to_json(x: &EnrichedCategory) -> serde_json::Value {
    serde_json::to_value(CategoryDoc::from_category(x)).expect("serializable")
}

impl WeightDoc {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_err)
    }

    /// Validates the values against `x`; an inline base must equal `x`.
    pub fn build(&self, x: &EnrichedCategory) -> Result<Weight> {
        if let BaseRef::Inline(doc) = &self.base {
            let base = doc.build()?;
            if base != *x {
                return Err(Error::BaseMismatch { expected: x.n(), found: base.n() });
            }
        }
        x.weight(self.values.clone())
    }
}

/// The same category with every hom value converted to `mode`; the grid is
/// dropped when converting to float.
pub fn convert_mode(x: &EnrichedCategory, mode: Mode) -> Result<EnrichedCategory> {
    if x.mode() == mode {
        return Ok(x.clone());
    }
    let rows = x
        .hom_rel()
        .to_rows()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match mode {
                    Mode::Float => Ok(v.to_float()),
                    Mode::Exact => Value::exact(grid_point(&v)?),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EnrichedCategory::from_rows(x.tnorm().clone(), rows)?.with_names(x.names().to_vec())
}

/// `1/n` for the uniform grid `{0, 1/n, …, 1}`, or an explicit list
/// `{0, 1/3, 1}`, validated under `t`.
pub fn parse_grid_arg(s: &str, t: &TNorm) -> Result<ValueGrid> {
    let s = s.trim();
    if s.starts_with('{') {
        return ValueGrid::parse(s, t);
    }
    let q: i64 = s
        .strip_prefix("1/")
        .and_then(|d| d.trim().parse().ok())
        .filter(|&q| q >= 1)
        .ok_or_else(|| Error::Parse(format!("grid must be 1/n or {{p, q, …}}: `{s}`")))?;
    ValueGrid::validate((0..=q).map(|k| Rational::new(k, q)), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{"tnorm": "lukasiewicz", "grid": ["0", "1/3", "2/3", "1"],
        "names": ["a", "b"], "hom": [["1", "2/3"], ["0", "1"]]}"#;

    #[test]
    fn round_trip() {
        let x = load_category(A2).unwrap();
        assert_eq!(x.n(), 2);
        assert_eq!(x.grid().unwrap().len(), 4);
        let back = serde_json::to_string(&category_to_json(&x)).unwrap();
        assert_eq!(load_category(&back).unwrap(), x);
    }

    #[test]
    fn errors() {
        assert!(matches!(load_category("{"), Err(Error::Parse(_))));
        let broken = r#"{"tnorm": "godel", "hom": [["1", "1", "0"], ["0", "1", "1"], ["0", "0", "1"]]}"#;
        assert!(matches!(load_category(broken), Err(Error::NotACategory(_))));
        let x = load_category(A2).unwrap();
        let w = WeightDoc::parse(r#"{"base": "a2", "values": ["2/3", "1"]}"#).unwrap();
        assert_eq!(w.build(&x).unwrap(), x.yoneda(1));
        let short = WeightDoc::parse(r#"{"base": "a2", "values": ["1"]}"#).unwrap();
        assert!(matches!(short.build(&x), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn float_documents() {
        let doc = r#"{"tnorm": "product", "hom": [[1, 0.5], [0.25, 1]]}"#;
        let x = load_category(doc).unwrap();
        assert_eq!(x.mode(), Mode::Float);
        let a2 = load_category(A2).unwrap();
        assert_eq!(convert_mode(&a2, Mode::Float).unwrap().mode(), Mode::Float);
    }

    #[test]
    fn grid_args() {
        assert_eq!(parse_grid_arg("1/3", &TNorm::Lukasiewicz).unwrap().len(), 4);
        assert_eq!(parse_grid_arg("{0, 1/2, 1}", &TNorm::Godel).unwrap().len(), 3);
        assert!(parse_grid_arg("2/3", &TNorm::Godel).is_err());
    }
}
